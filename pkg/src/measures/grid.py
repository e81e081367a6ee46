"""Grids over products of probability simplices.

A point of a product grid is an array of shape (blocks, size) whose rows are
pmfs. One block is a plain pmf (or a flattened joint pmf), several blocks are
the rows of a conditional pmf.
"""

import logging

import numpy as np

import config
from .types import composition_count, simplex_grid_array

LOGGER = logging.getLogger(__name__)


class SimplexProductGrid:
    """Exhaustive and local grids over a product of ``blocks`` simplices of ``size`` symbols"""

    def __init__(self, blocks, size):
        if blocks < 1 or size < 1:
            raise ValueError(f"grid needs blocks >= 1 and size >= 1, got {blocks}, {size}")
        self.blocks = blocks
        self.size = size

    def count(self, resolution) -> int:
        return composition_count(resolution, self.size) ** self.blocks

    def scaled_resolution(self, requested, budget=config.GRID_POINT_BUDGET) -> int:
        """Largest resolution not above ``requested`` whose grid fits the point budget"""
        resolution = max(1, int(requested))
        while resolution > 1 and self.count(resolution) > budget:
            resolution -= 1
        if resolution < requested:
            LOGGER.debug("grid %dx%d scaled from resolution %d to %d",
                         self.blocks, self.size, requested, resolution)
        return resolution

    def points(self, resolution) -> np.ndarray:
        """All grid points, shape (count, blocks, size), in lexicographic block order"""
        base = simplex_grid_array(self.size, resolution)
        return self._product([base] * self.blocks)

    def local_points(self, center, coarse_resolution, factor=config.REFINE_FACTOR,
                     budget=config.LOCAL_GRID_BUDGET) -> np.ndarray:
        """Points at resolution ``factor * coarse_resolution`` within one coarse step of ``center``"""
        center = np.asarray(center, dtype=float).reshape(self.blocks, self.size)
        fine = coarse_resolution * factor
        radius = factor
        while True:
            per_block = [self._window(row, fine, radius) for row in center]
            total = int(np.prod([len(b) for b in per_block], dtype=float))
            if total <= budget or radius == 1:
                break
            radius -= 1
        return self._product(per_block)

    def _window(self, row, fine, radius):
        if self.size == 1:
            return np.ones((1, 1))
        anchor = np.rint(row[:-1] * fine).astype(np.int64)
        offsets = np.arange(-radius, radius + 1, dtype=np.int64)
        mesh = np.meshgrid(*([offsets] * (self.size - 1)), indexing='ij')
        free = anchor[None, :] + np.stack([m.ravel() for m in mesh], axis=1)
        last = fine - free.sum(axis=1)
        counts = np.hstack([free, last[:, None]])
        keep = np.all((counts >= 0) & (counts <= fine), axis=1)
        return counts[keep] / fine

    def _product(self, per_block) -> np.ndarray:
        sizes = [len(b) for b in per_block]
        index = np.indices(sizes).reshape(self.blocks, -1).T
        return np.stack([per_block[j][index[:, j]] for j in range(self.blocks)], axis=1)


def chunk_size(per_point_elements, limit=config.GRID_CHUNK_ELEMENTS) -> int:
    """Number of points whose broadcast blocks stay under ``limit`` elements"""
    return max(1, int(limit // max(1, per_point_elements)))
