"""Raster primitives shared by the iris and signature pipelines.

Gray images are 2-D uint8 arrays (rows = y, columns = x), binary images are
2-D uint8 arrays holding only 0 and 1.
"""

from collections import namedtuple
import cv2
import numpy as np
from scipy import ndimage
from PIL import Image


LabelMap = namedtuple('LabelMap', ['labels', 'num'])

EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


def _check_non_empty(img):

    if img is None or np.asarray(img).size == 0:
        raise ValueError('empty input')


def read_image(fn):

    try:
        pil = Image.open(fn)
        pil.load()
    except FileNotFoundError:
        raise IOError('missing file: {}'.format(fn))
    except (IOError, SyntaxError):
        raise IOError('cannot decode image: {}'.format(fn))

    if pil.mode not in ('L', 'RGB'):
        raise ValueError('unsupported image mode {} (8-bit gray or RGB required): {}'.format(pil.mode, fn))

    return np.array(pil, dtype=np.uint8)


def write_pgm(fn, img):

    Image.fromarray(np.ascontiguousarray(img, dtype=np.uint8)).save(fn, format='PPM')


def histogram(img):

    _check_non_empty(img)
    return np.bincount(np.asarray(img, dtype=np.uint8).ravel(), minlength=256)


def histogram_peak(counts):

    # argmax returns the first maximum, i.e. the lowest gray level on ties
    return int(np.argmax(counts))


def threshold_below(img, level):

    return (np.asarray(img) <= level).astype(np.uint8)


def label_components(bw):

    labels, num = ndimage.label(np.asarray(bw) > 0, structure=EIGHT_CONNECTED)
    if num == 0:
        return LabelMap(labels, 0)

    # Renumber so that labels follow first appearance in raster order
    flat = labels.ravel()
    present = flat[flat > 0]
    _, first = np.unique(present, return_index=True)
    remap = np.zeros(num + 1, dtype=labels.dtype)
    remap[np.argsort(first, kind='stable') + 1] = np.arange(1, num + 1)

    return LabelMap(remap[labels], int(num))


def component_areas(lm):

    return np.bincount(lm.labels.ravel(), minlength=lm.num + 1)[1:lm.num + 1]


def largest_component(areas):

    if len(areas) == 0:
        raise ValueError('no components')
    return int(np.argmax(areas)) + 1


def component_bbox(lm, label):

    ys, xs = np.nonzero(lm.labels == label)
    if label < 1 or len(xs) == 0:
        raise ValueError('unknown label: {}'.format(label))
    return int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max())


def crop(img, x, y, width, height):

    if width <= 0 or height <= 0:
        raise ValueError('crop size must be positive ({}x{})'.format(width, height))

    img = np.asarray(img)
    out = np.zeros((height, width), dtype=img.dtype)

    src_x0, src_x1 = max(x, 0), min(x + width, img.shape[1])
    src_y0, src_y1 = max(y, 0), min(y + height, img.shape[0])
    if src_x0 < src_x1 and src_y0 < src_y1:
        out[src_y0 - y:src_y1 - y, src_x0 - x:src_x1 - x] = img[src_y0:src_y1, src_x0:src_x1]

    return out


def _as_uint8(img):

    _check_non_empty(img)
    return np.ascontiguousarray(img, dtype=np.uint8)


def _check_target(target):

    if target <= 0:
        raise ValueError('target size must be positive: {}'.format(target))


def resize(img, target):
    """Bilinear resampling to target x target with pixel-center alignment."""

    _check_target(target)
    return cv2.resize(_as_uint8(img), (target, target), interpolation=cv2.INTER_LINEAR)


def resize_nearest(img, target):

    _check_target(target)
    return cv2.resize(_as_uint8(img), (target, target), interpolation=cv2.INTER_NEAREST)


def to_gray(rgb):

    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError('expected 3 channels, got shape {}'.format(rgb.shape))

    # BT.601 luma
    return cv2.cvtColor(_as_uint8(rgb), cv2.COLOR_RGB2GRAY)


def otsu_threshold(img):
    """Return the last gray level of the dark class, or None for a constant image."""

    img = _as_uint8(img)
    if img.min() == img.max():
        return None
    level, _ = cv2.threshold(img, 0, 1, cv2.THRESH_BINARY + cv2.THRESH_OTSU)
    return int(level)


def otsu_binarize(img):
    """Dark pixels (at or below the Otsu level) become 1, the rest 0."""

    img = _as_uint8(img)
    if img.min() == img.max():
        return np.zeros(img.shape, dtype=np.uint8)
    _, bw = cv2.threshold(img, 0, 1, cv2.THRESH_BINARY_INV + cv2.THRESH_OTSU)
    return bw


def ink_bbox(bw):

    ys, xs = np.nonzero(bw)
    if len(xs) == 0:
        return None
    return int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max())
