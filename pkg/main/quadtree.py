"""Uniform region quadtree over an M x M image.

Every leaf sits at depth log2(M/d1), so the tree is stored as the list of its
L = (M/d1)^2 leaves. Leaves are numbered 1..L either in Morton order
(recursively NW, NE, SW, SE) or in raster order.
"""

import numpy as np


IMAGE_SIZE = 512

TILE_ORDERS = ('morton', 'raster')


class ComponentGrid(object):


    def __init__(self, d1, size=IMAGE_SIZE, order='morton'):

        if d1 <= 0 or size % d1 != 0 or (size // d1) & (size // d1 - 1) != 0:
            raise ValueError('d1={} does not divide M={} into a quadtree level'.format(d1, size))
        if order not in TILE_ORDERS:
            raise ValueError('unknown tile order: {}'.format(order))

        self.size = size
        self.d1 = d1
        self.order = order
        self.side = size // d1
        self.L = self.side * self.side

        if order == 'morton':
            self.regions = self._morton(0, 0, size)
        else:
            self.regions = [(r * d1, c * d1) for r in range(self.side) for c in range(self.side)]

        # Position of each region in the row-major tile stack
        self._raster_index = np.array([(y // d1) * self.side + x // d1 for (y, x) in self.regions])


    def _morton(self, y, x, size):

        if size == self.d1:
            return [(y, x)]
        half = size // 2
        return (
            self._morton(y, x, half) +
            self._morton(y, x + half, half) +
            self._morton(y + half, x, half) +
            self._morton(y + half, x + half, half)
        )


    def rect(self, i):
        """(y, x, height, width) of component i, 1-based."""

        if not 1 <= i <= self.L:
            raise ValueError('component index {} outside 1..{}'.format(i, self.L))
        y, x = self.regions[i - 1]
        return y, x, self.d1, self.d1


    def tiles(self, img):
        """Stack of all L components, shape (L, d1, d1), in grid order."""

        img = np.asarray(img)
        if img.shape[:2] != (self.size, self.size):
            raise ValueError('expected a {0}x{0} image, got {1}'.format(self.size, img.shape))

        n, d = self.side, self.d1
        stack = img.reshape(n, d, n, d).swapaxes(1, 2).reshape(n * n, d, d)
        return stack[self._raster_index]


def decompose(d1, size=IMAGE_SIZE, order='morton'):

    return ComponentGrid(d1, size, order)


def extract_region(img, grid, i):

    y, x, h, w = grid.rect(i)
    img = np.asarray(img)
    if img.shape[:2] != (grid.size, grid.size):
        raise ValueError('expected a {0}x{0} image, got {1}'.format(grid.size, img.shape))
    return img[y:y + h, x:x + w].copy()
