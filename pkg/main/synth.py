"""Seeded synthetic iris and signature corpora.

Each subject owns a set of stable quadtree blocks (compact content that is
the same in every genuine sample) while the remaining blocks hold scattered
content that moves from sample to sample. Genuine samples are perturbed by
speckles on a ring around the content of every stable block; each stable
block draws its speckles from a fixed per-subject order, so a sample with n
speckles holds those of every sample with fewer. The speckle unit grows as
separation falls. Imposter trials are the other subjects' test samples
(random forgeries).
"""

from __future__ import division
import json
import math
import os
import numpy as np
from . import imaging


SEPARATION_LEVELS = {'low': 1.0, 'medium': 4.0, 'high': 16.0}

MODALITIES = ('iris', 'signature')

STABLE_BLOCKS = 6
SAMPLES_PER_SUBJECT = 5
TRAINING_COUNT = 3
DATABASE = 'SYNTHETIC'

# Speckles per noise step: NOISE_SCALE / separation, rounded up
NOISE_SCALE = 16

# Signature layout: 512x512 pattern of 4x4 blocks of 128 pixels
SIG_SIZE = 512
SIG_BLOCK = 128
SIG_PAGE = (560, 640)
SIG_DISK = 40
SIG_RING = (56, 60)

# Iris layout: iris annulus around a centred pupil; the pupil window holds
# 4x4 blocks of 60 pixels
EYE_SIZE = 400
EYE_CENTRE = EYE_SIZE // 2
PUPIL_RADIUS = 40
IRIS_RADIUS = 180
WINDOW_SIZE = 240
WINDOW_ORIGIN = EYE_CENTRE - WINDOW_SIZE // 2
IRIS_BLOCK = 60
IRIS_DISK = 18
IRIS_RING = (30, 38)
EDGE_MARGIN = 2


def parse_separation(separation):

    if isinstance(separation, str) and separation.lower() in SEPARATION_LEVELS:
        return SEPARATION_LEVELS[separation.lower()]
    try:
        value = float(separation)
    except (TypeError, ValueError):
        raise ValueError('separation must be a positive number or one of {}: {}'.format(', '.join(sorted(SEPARATION_LEVELS)), separation))
    if not value > 0:
        raise ValueError('separation must be positive: {}'.format(separation))
    return value


def noise_unit(separation):

    return int(math.ceil(NOISE_SCALE / separation))


def noise_levels(samples, training_count, unit=1):
    """Speckle count of every genuine sample, in manifest order.

    Training samples take 1 .. P-1 units and a last one 2P+2 units; test
    samples alternate P and P+1 units and so fall inside the training range.
    """

    P = training_count
    levels = list(range(1, P)) + [2 * P + 2]
    levels += [P + k % 2 for k in range(samples - P)]
    return [unit * n for n in levels[:samples]]


def choose_stable_sets(rng, subjects, candidates, size=STABLE_BLOCKS):
    """Distinct sorted block sets, one per subject."""

    if subjects > math.comb(len(candidates), size):
        raise ValueError('cannot draw {} distinct block sets of {} from {} blocks'.format(subjects, size, len(candidates)))

    ret, seen = [], set()
    while len(ret) < subjects:
        pick = tuple(sorted(int(x) for x in rng.choice(candidates, size, replace=False)))
        if pick not in seen:
            seen.add(pick)
            ret.append(pick)
    return ret


def ring_pixels(size, radii, margin=0):
    """(y, x) of the pixels of a size x size block whose distance to the centre lies in radii."""

    inner, outer = radii
    centre = size // 2
    yy, xx = np.mgrid[:size, :size]
    r2 = (yy - centre) ** 2 + (xx - centre) ** 2
    keep = (r2 >= inner ** 2) & (r2 <= outer ** 2)
    keep &= (yy >= margin) & (yy < size - margin) & (xx >= margin) & (xx < size - margin)
    return np.column_stack(np.nonzero(keep))


def speckle_orders(rng, stable, ring):

    return dict((idx, rng.permutation(len(ring))) for idx in stable)


def _speckle(block, ring, order, level):

    pts = ring[order[:min(level, len(order))]]
    block[pts[:, 0], pts[:, 1]] = True


def _disk(size, cy, cx, radius):

    yy, xx = np.ogrid[:size, :size]
    return (yy - cy) ** 2 + (xx - cx) ** 2 <= radius ** 2


def _square(mask, cy, cx, side):

    half = side // 2
    mask[cy - half:cy - half + side, cx - half:cx - half + side] = True


def _jitter(rng, amount=4):

    return int(rng.randint(-amount, amount + 1))


def signature_pattern(rng, stable, orders, level):

    pat = np.zeros((SIG_SIZE, SIG_SIZE), dtype=np.uint8)
    centre = SIG_BLOCK // 2
    disk = _disk(SIG_BLOCK, centre, centre, SIG_DISK)
    ring = ring_pixels(SIG_BLOCK, SIG_RING)
    n = SIG_SIZE // SIG_BLOCK

    for r in range(n):
        for c in range(n):
            mask = np.zeros((SIG_BLOCK, SIG_BLOCK), dtype=bool)
            idx = r * n + c
            if idx in stable:
                mask |= disk
                _speckle(mask, ring, orders[idx], level)
            else:
                for dy in (-44, 44):
                    for dx in (-44, 44):
                        _square(mask, centre + dy + _jitter(rng), centre + dx + _jitter(rng), 9)
            pat[r * SIG_BLOCK:(r + 1) * SIG_BLOCK, c * SIG_BLOCK:(c + 1) * SIG_BLOCK][mask] = 1

    # Corner dots pin the ink bounding box to the full pattern
    pat[0, 0] = pat[0, -1] = pat[-1, 0] = pat[-1, -1] = 1
    return pat


def signature_page(rng, pattern):

    h, w = SIG_PAGE
    oy = rng.randint(0, h - SIG_SIZE + 1)
    ox = rng.randint(0, w - SIG_SIZE + 1)

    page = np.full((h, w), 255, dtype=np.uint8)
    page[oy:oy + SIG_SIZE, ox:ox + SIG_SIZE][pattern == 1] = 0
    return page


def iris_outer_blocks():

    n = WINDOW_SIZE // IRIS_BLOCK
    return [r * n + c for r in range(n) for c in range(n) if r in (0, n - 1) or c in (0, n - 1)]


def iris_subject_textures(rng):
    """Fixed per-subject iris texture: dark background and bright pattern levels."""

    baseline = rng.randint(5, 46, size=(EYE_SIZE, EYE_SIZE)).astype(np.uint8)
    bright = rng.randint(200, 251, size=(EYE_SIZE, EYE_SIZE)).astype(np.uint8)
    return baseline, bright


def iris_eye(rng, stable, orders, level, textures):

    baseline, bright = textures
    n = WINDOW_SIZE // IRIS_BLOCK
    centre = IRIS_BLOCK // 2
    disk = _disk(IRIS_BLOCK, centre, centre, IRIS_DISK)
    ring = ring_pixels(IRIS_BLOCK, IRIS_RING, EDGE_MARGIN)
    outer = set(iris_outer_blocks())

    mask = np.zeros((EYE_SIZE, EYE_SIZE), dtype=bool)
    window = mask[WINDOW_ORIGIN:WINDOW_ORIGIN + WINDOW_SIZE, WINDOW_ORIGIN:WINDOW_ORIGIN + WINDOW_SIZE]
    for r in range(n):
        for c in range(n):
            block = window[r * IRIS_BLOCK:(r + 1) * IRIS_BLOCK, c * IRIS_BLOCK:(c + 1) * IRIS_BLOCK]
            idx = r * n + c
            if idx in stable:
                block |= disk
                _speckle(block, ring, orders[idx], level)
            elif idx in outer:
                for dy in (-20, 20):
                    for dx in (-20, 20):
                        _square(block, centre + dy + _jitter(rng), centre + dx + _jitter(rng), 8)
            else:
                # Inner blocks carry moving squares away from the pupil corner
                cy = 14 if r < n // 2 else IRIS_BLOCK - 14
                cx = 14 if c < n // 2 else IRIS_BLOCK - 14
                for y, x in ((cy, cx), (cy, centre), (centre, cx)):
                    _square(block, y + _jitter(rng), x + _jitter(rng), 8)

    yy, xx = np.ogrid[:EYE_SIZE, :EYE_SIZE]
    r2 = (yy - EYE_CENTRE) ** 2 + (xx - EYE_CENTRE) ** 2

    eye = rng.randint(60, 251, size=(EYE_SIZE, EYE_SIZE)).astype(np.uint8)
    iris = r2 <= IRIS_RADIUS ** 2
    eye[iris] = baseline[iris]
    eye[mask] = bright[mask]
    eye[r2 <= PUPIL_RADIUS ** 2] = 0
    return eye


def synth_generate(seed, subjects, modality='signature', separation='high', outdir='.', samples=SAMPLES_PER_SUBJECT, training_count=TRAINING_COUNT):
    """Write a corpus and its manifest under outdir; returns the manifest path."""

    if modality not in MODALITIES:
        raise ValueError('unknown modality: {}'.format(modality))
    if subjects < 1:
        raise ValueError('subjects must be positive: {}'.format(subjects))
    if training_count < 2 or samples < training_count:
        raise ValueError('need samples >= training_count >= 2, got samples={} training_count={}'.format(samples, training_count))

    sep = parse_separation(separation)
    levels = noise_levels(samples, training_count, noise_unit(sep))
    rng = np.random.RandomState(seed)

    if modality == 'signature':
        candidates = list(range((SIG_SIZE // SIG_BLOCK) ** 2))
        ring = ring_pixels(SIG_BLOCK, SIG_RING)
    else:
        candidates = iris_outer_blocks()
        ring = ring_pixels(IRIS_BLOCK, IRIS_RING, EDGE_MARGIN)
    stable_sets = choose_stable_sets(rng, subjects, candidates)

    os.makedirs(outdir, exist_ok=True)

    ids = ['s{:03d}'.format(i + 1) for i in range(subjects)]
    genuine = {}
    for subject_id, stable in zip(ids, stable_sets):

        os.makedirs(os.path.join(outdir, subject_id), exist_ok=True)
        textures = iris_subject_textures(rng) if modality == 'iris' else None
        orders = speckle_orders(rng, stable, ring)

        genuine[subject_id] = []
        for k, level in enumerate(levels):
            if modality == 'signature':
                img = signature_page(rng, signature_pattern(rng, stable, orders, level))
            else:
                img = iris_eye(rng, stable, orders, level, textures)

            rel = '{}/genuine_{:02d}.pgm'.format(subject_id, k + 1)
            imaging.write_pgm(os.path.join(outdir, rel), img)
            genuine[subject_id].append(rel)

    manifest = {
        'modality': modality,
        'database': DATABASE,
        'training_count': training_count,
        'seed': seed,
        'separation': sep,
        'noise_levels': [min(level, len(ring)) for level in levels],
        'subjects': [
            {
                'id': subject_id,
                'stable_blocks': [b + 1 for b in stable],
                'genuine': genuine[subject_id],
                'imposter': [fn for other in ids if other != subject_id for fn in genuine[other][training_count:]]
            }
            for subject_id, stable in zip(ids, stable_sets)
        ]
    }

    fn = os.path.join(outdir, 'manifest.json')
    with open(fn, 'w') as f:
        json.dump(manifest, f, indent=2)
        f.write('\n')
    return fn
