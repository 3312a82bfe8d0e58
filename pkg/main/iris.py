from collections import namedtuple
import numpy as np
from . import imaging


PIF_SIZE = 512

# (offset_1, offset_2) per database, selected at d1=128
WINDOW_OFFSETS = {
    'CASIA': (20, 40),
    'ICE': (6, 12),
    'MMU': (20, 40),
    'SYNTHETIC': (80, 160),
}

WindowSpec = namedtuple('WindowSpec', ['offset_1', 'offset_2'])


class PupilGeometry(namedtuple('PupilGeometry', ['x_c', 'y_c', 'radius_1', 'radius_2'])):

    __slots__ = ()

    @property
    def radius(self):
        return max(self.radius_1, self.radius_2)


def window_for(database, offset_1=None, offset_2=None):

    if offset_1 is not None and offset_2 is not None:
        spec = WindowSpec(int(offset_1), int(offset_2))
    elif database is not None and database.upper() in WINDOW_OFFSETS:
        spec = WindowSpec(*WINDOW_OFFSETS[database.upper()])
    else:
        raise ValueError('no window offsets known for database {}; set OFFSET_1 and OFFSET_2'.format(database))

    if spec.offset_1 < 0 or spec.offset_2 < 0:
        raise ValueError('window offsets must be non-negative: {}'.format(tuple(spec)))
    return spec


def detect_pupil(eye):

    if np.asarray(eye).ndim == 3:
        eye = imaging.to_gray(eye)

    counts = imaging.histogram(eye)
    bw = imaging.threshold_below(eye, imaging.histogram_peak(counts))
    lm = imaging.label_components(bw)

    try:
        label = imaging.largest_component(imaging.component_areas(lm))
    except ValueError:
        raise ValueError('pupil not found')

    x_min, x_max, y_min, y_max = imaging.component_bbox(lm, label)

    return PupilGeometry(
        x_c=(x_max + x_min) // 2,
        y_c=(y_max + y_min) // 2,
        radius_1=(x_max - x_min) // 2,
        radius_2=(y_max - y_min) // 2
    )


def window_rect(g, w, swap_axes=True):

    side = 2 * g.radius + w.offset_2

    # The position vector pairs x-value with y_c and y-value with x_c
    if swap_axes:
        return g.y_c - g.radius - w.offset_1, g.x_c - g.radius - w.offset_1, side, side

    return g.x_c - g.radius - w.offset_1, g.y_c - g.radius - w.offset_1, side, side


def extract_pif(eye, w, swap_axes=True):

    if np.asarray(eye).ndim == 3:
        eye = imaging.to_gray(eye)

    x, y, width, height = window_rect(detect_pupil(eye), w, swap_axes)
    return imaging.resize(imaging.crop(eye, x, y, width, height), PIF_SIZE)
