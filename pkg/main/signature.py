import numpy as np
from . import imaging


SIGNATURE_SIZE = 512


def preprocess_signature(img):
    """Binarize a dark-on-light scan, cut it to the ink bounding box and stretch it to 512x512."""

    img = np.asarray(img)
    if img.size == 0:
        raise ValueError('empty input')
    if img.ndim == 3:
        img = imaging.to_gray(img)

    # A boolean raster is already binary with ink = True
    if img.dtype == bool:
        bw = img.astype(np.uint8)
    else:
        bw = imaging.otsu_binarize(img)

    bbox = imaging.ink_bbox(bw)
    if bbox is None:
        raise ValueError('blank signature')

    x_min, x_max, y_min, y_max = bbox
    ink = imaging.crop(bw, x_min, y_min, x_max - x_min + 1, y_max - y_min + 1)

    return imaging.resize_nearest(ink, SIGNATURE_SIZE)
