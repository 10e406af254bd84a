"""
Find-Smaller strategy.

LA(v, d) for d < depth(v) is the node at the first Euler tour index after
first_pos[v] whose depth is <= d; tour steps are +-1, so that depth is
exactly d. The tour depth sequence E is cut into blocks of b values:

  * every distinct block shape (its +-1 step pattern) has a micro table
    FS[p][t + b] = first offset q >= p whose value relative to the block
    start is <= t, for t in [-b, b], or -1;
  * block minima feed an aligned window table, level k holding the minimum
    of blocks [i * 2^k, (i + 1) * 2^k).

A search probes the starting block, climbs windows until one holds a value
<= d, descends to the first such block and probes it. The climb and descent
are O(log(n / b)) window probes in the worst case.
"""

import logging
import math

import numpy as np

from model import NONE, IndexOutOfRange, id_dtype
from .base import LevelAncestor

logger = logging.getLogger(__name__)

_PAD = np.iinfo(np.int32).max


def block_size(n):
    """b = max(4, ceil(log2(n) / 2))."""
    return max(4, math.ceil(math.log2(n) / 2)) if n > 1 else 4


def block_codes(E, b):
    """
    Shape code of every block of *E*: the up-steps inside the block as bits,
    plus the block length above them so a short last block gets its own code.
    Args:
        E (numpy.ndarray): Euler depth sequence.
        b (int): Block size.
    Returns:
        numpy.ndarray: int64 code per block.
    """
    size = E.shape[0]
    blocks = -(-size // b)
    bits = np.zeros(blocks * b, dtype=np.int64)
    bits[:size - 1] = np.diff(E) > 0
    bits = bits.reshape(blocks, b)[:, :b - 1]
    lengths = np.full(blocks, b, dtype=np.int64)
    lengths[-1] = size - (blocks - 1) * b
    return bits @ (np.int64(1) << np.arange(b - 1, dtype=np.int64)) + (lengths << (b - 1))


def micro_table(values, b):
    """
    Find-smaller table of one block.
    Args:
        values (numpy.ndarray): Block values relative to the block start.
        b (int): Block size; thresholds range over [-b, b].
    Returns:
        numpy.ndarray: int8 matrix [offset][threshold + b] -> first offset, -1 if none.
    """
    length = values.shape[0]
    thresholds = np.arange(-b, b + 1)
    hit = values[:, None] <= thresholds[None, :]
    first = np.where(hit, np.arange(length)[:, None], length)
    first = np.minimum.accumulate(first[::-1], axis=0)[::-1]
    first[first == length] = -1
    return first.astype(np.int8)


def window_levels(minima):
    """
    Aligned window minima above the block minima.
    Args:
        minima (numpy.ndarray): int32 minimum of every block.
    Returns:
        list[numpy.ndarray]: Levels 1, 2, ... up to a single window.
    """
    levels = []
    level = minima
    while level.shape[0] > 1:
        if level.shape[0] % 2:
            level = np.append(level, np.int32(_PAD))
        level = level.reshape(-1, 2).min(axis=1)
        levels.append(level)
    return levels


class FindSmallerLA(LevelAncestor):
    """
    Attributes:
        b (int): Block size.
        E (numpy.ndarray): int32 tour depths, length 2n-1.
        tour_node (numpy.ndarray): Node at every tour index.
        first_pos (numpy.ndarray): First tour index of every node.
        block_shape (numpy.ndarray): uint16 shape index of every block.
        minima (numpy.ndarray): int32 minimum of every block.
        shape_key, shape_offset: The shape dictionary (code and micro pool offset).
        micro_pool (numpy.ndarray): int8 micro tables back to back.
        windows (list[numpy.ndarray]): Window levels k >= 1.
    """
    name = "findsmaller"

    def __init__(self, tree, settings=None):
        super().__init__(tree, settings)
        self.check_budget(self.predict_bytes(tree, self.settings), "find-smaller")
        dtype = id_dtype(self.W)
        tour = tree.euler
        E = tour.E
        size = E.shape[0]
        b = block_size(self._n)
        self.b = b
        self.E = E
        self.tour_node = tour.tour_node
        self.first_pos = tour.first_pos

        codes = block_codes(E, b)
        keys, first_block, shape_of = np.unique(codes, return_index=True, return_inverse=True)
        if keys.shape[0] > np.iinfo(np.uint16).max:
            raise ValueError(f"{keys.shape[0]} block shapes do not fit 16-bit shape ids")
        self.block_shape = shape_of.reshape(-1).astype(np.uint16)
        starts = np.arange(0, size, b)
        self.minima = np.minimum.reduceat(E, starts).astype(np.int32)

        width = 2 * b + 1
        tables = []
        offsets = [0]
        for k in first_block.tolist():
            values = E[k * b:min((k + 1) * b, size)].astype(np.int64)
            table = micro_table(values - values[0], b)
            tables.append(table.ravel())
            offsets.append(offsets[-1] + table.shape[0] * width)
        self.shape_key = keys.astype(dtype)
        self.shape_offset = np.array(offsets[:-1], dtype=dtype)
        self.micro_pool = np.concatenate(tables)
        self.windows = window_levels(self.minima)
        for array in self.stored_arrays().values():
            array.setflags(write=False)
        logger.debug("find-smaller: b=%d blocks=%d shapes=%d levels=%d",
                     b, self.blocks, self.shape_count, len(self.windows) + 1)

        self._size = size
        self._E = E.tolist()
        self._shape = self.block_shape.tolist()
        self._shape_offset = offsets[:-1]
        self._pool = self.micro_pool.tolist()
        self._levels = [self.minima.tolist()] + [w.tolist() for w in self.windows]
        self._first_pos = self.first_pos.tolist()
        self._tour_node = self.tour_node.tolist()

    @classmethod
    def predict_bytes(cls, tree, settings=None):
        n, W = tree.n, tree.id_width
        size = 2 * n - 1
        b = block_size(n)
        blocks = -(-size // b)
        shapes = min(blocks, 2 ** (b - 1) + 1)
        return (
            4 * size + W * size + W * n
            + 6 * blocks + 8 * blocks
            + shapes * (2 * W + b * (2 * b + 1))
        )

    @property
    def blocks(self):
        return int(self.minima.shape[0])

    @property
    def shape_count(self):
        return int(self.shape_key.shape[0])

    def _probe(self, block, p, d):
        """First tour index in *block* at offset >= p with value <= d, or NONE."""
        b = self.b
        start = block * b
        if p >= b or start + p >= self._size:
            return NONE
        t = min(max(d - self._E[start], -b), b)
        if self.counters.enabled:
            self.counters.table_lookups += 1
        q = self._pool[self._shape_offset[self._shape[block]] + p * (2 * b + 1) + t + b]
        return start + q if q >= 0 else NONE

    def _next_block(self, i, d):
        """First block index >= i whose minimum is <= d, or NONE."""
        levels = self._levels
        top = len(levels) - 1
        counters = self.counters
        k = 0
        if i >= len(levels[0]):
            return NONE
        while True:
            if counters.enabled:
                counters.jumps_taken += 1
            if levels[k][i] <= d:
                break
            i += 1
            while i % 2 == 0 and k < top:
                i //= 2
                k += 1
            if i >= len(levels[k]):
                return NONE
        while k:
            k -= 1
            i *= 2
            if counters.enabled:
                counters.jumps_taken += 1
            if levels[k][i] > d:
                i += 1
        return i

    def find_smaller(self, u, d):
        """
        Smallest tour index greater than *u* whose depth is <= *d*.
        Args:
            u (int): Tour index.
            d (int): Depth threshold.
        Returns:
            int: Tour index, or NONE when there is none.
        Raises:
            IndexOutOfRange: if *u* is not in [0, 2n-1).
        """
        if not 0 <= u < self._size:
            raise IndexOutOfRange(u, self._size)
        block, offset = divmod(u, self.b)
        hit = self._probe(block, offset + 1, d)
        if hit != NONE:
            return hit
        block = self._next_block(block + 1, d)
        if block == NONE:
            return NONE
        return self._probe(block, 0, d)

    def _query(self, v, d):
        if d == self._depth[v]:
            return v
        return self._tour_node[self.find_smaller(self._first_pos[v], d)]

    def space_bytes(self):
        W, n = self.W, self._n
        size = int(self.E.shape[0])
        return (
            4 * size
            + W * size
            + W * n
            + 6 * self.blocks
            + 2 * W * self.shape_count
            + int(self.micro_pool.shape[0])
            + 4 * sum(int(w.shape[0]) for w in self.windows)
        )

    def stored_arrays(self):
        arrays = {
            "E": self.E,
            "tour_node": self.tour_node,
            "first_pos": self.first_pos,
            "block_shape": self.block_shape,
            "minima": self.minima,
            "shape_key": self.shape_key,
            "shape_offset": self.shape_offset,
            "micro_pool": self.micro_pool,
        }
        arrays.update({f"window.{k}": w for k, w in enumerate(self.windows, start=1)})
        return arrays


def build_find_smaller(tree, settings=None):
    return FindSmallerLA.build(tree, settings)


def find_smaller(structure, u, d):
    return structure.find_smaller(u, d)


def query_find_smaller(structure, v, d):
    return structure.query(v, d)
