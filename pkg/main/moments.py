"""Raw and central moments and the three Hu-derived invariants.

Row index i and column index j are 0-based. The invariants are

    A = (M20 + M02) / m00^2
    B = ((M20 - M02)^2 + 4 M11^2) / m00^2
    C = (M20 M02 - M11^2) / m00^4

with B normalized by m00^2 exactly as in the published method (it is not
scale invariant).
"""

import numpy as np


MOMENT_KINDS = ('A', 'B', 'C')

MASS_MODES = ('gray', 'binary')


def check_kind(kind):

    kind = str(kind).upper()
    if kind not in MOMENT_KINDS:
        raise ValueError('unknown moment kind: {}'.format(kind))
    return kind


def mass_image(img, mode='gray'):

    img = np.asarray(img)
    if mode == 'binary':
        return (img > 0).astype(np.float64)
    if mode == 'gray':
        return img.astype(np.float64) / 255.0
    raise ValueError('unknown mass mode: {}'.format(mode))


def raw_moment(mass, p, q):

    mass = np.asarray(mass, dtype=np.float64)
    i = np.arange(mass.shape[0], dtype=np.float64)[:, None]
    j = np.arange(mass.shape[1], dtype=np.float64)[None, :]
    return float(np.sum(mass * i ** p * j ** q))


def centroid(mass):

    m00 = raw_moment(mass, 0, 0)
    if m00 == 0:
        raise ValueError('massless region')
    return raw_moment(mass, 1, 0) / m00, raw_moment(mass, 0, 1) / m00


def central_moment(mass, p, q):

    a, b = centroid(mass)
    mass = np.asarray(mass, dtype=np.float64)
    i = np.arange(mass.shape[0], dtype=np.float64)[:, None] - a
    j = np.arange(mass.shape[1], dtype=np.float64)[None, :] - b
    return float(np.sum(mass * i ** p * j ** q))


def _invariant(kind, m00, m20, m02, m11):

    if kind == 'A':
        return (m20 + m02) / m00 ** 2
    if kind == 'B':
        return ((m20 - m02) ** 2 + 4 * m11 ** 2) / m00 ** 2
    return (m20 * m02 - m11 ** 2) / m00 ** 4


def hu_moments_batch(tiles, kind):
    """Invariant `kind` of every tile in a (n, h, w) mass stack; massless tiles give 0."""

    kind = check_kind(kind)
    tiles = np.asarray(tiles, dtype=np.float64)
    n, h, w = tiles.shape

    row_mass = tiles.sum(axis=2)
    col_mass = tiles.sum(axis=1)
    m00 = row_mass.sum(axis=1)

    out = np.zeros(n)
    live = m00 > 0
    if not live.any():
        return out

    m00 = m00[live]
    row_mass = row_mass[live]
    col_mass = col_mass[live]
    i = np.arange(h, dtype=np.float64)
    j = np.arange(w, dtype=np.float64)

    # Row-wise reductions only, so a tile's value does not depend on its neighbours in the stack
    di = i[None, :] - (np.sum(row_mass * i, axis=1) / m00)[:, None]
    dj = j[None, :] - (np.sum(col_mass * j, axis=1) / m00)[:, None]

    m20 = np.sum(row_mass * di ** 2, axis=1)
    m02 = np.sum(col_mass * dj ** 2, axis=1)
    m11 = np.sum(np.sum(tiles[live] * dj[:, None, :], axis=2) * di, axis=1)

    out[live] = _invariant(kind, m00, m20, m02, m11)
    return out


def hu_moment(mass, kind):

    mass = np.asarray(mass, dtype=np.float64)
    if mass.sum() == 0:
        raise ValueError('massless region')
    return float(hu_moments_batch(mass[None, :, :], kind)[0])
