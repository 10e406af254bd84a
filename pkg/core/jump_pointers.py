"""
Jump-Pointer strategy: every node keeps its ancestors at distances 1, 2, 4, ...

jumps[v][i] is the ancestor of v at distance 2^i for 0 <= i <= floor(log2 depth(v)),
built level by level with jumps[v][i] = jumps[jumps[v][i-1]][i-1]. A query
follows the largest pointer that does not overshoot, so it takes
popcount(depth(v) - d) jumps.
"""

import logging

import numpy as np

from model import id_dtype
from .base import LevelAncestor

logger = logging.getLogger(__name__)


def floor_log2(values):
    """
    Elementwise floor(log2(x)) for positive integers, exact below 2^53.
    Args:
        values (numpy.ndarray): Positive integers.
    Returns:
        numpy.ndarray: int64 exponents.
    """
    _, exponent = np.frexp(np.asarray(values, dtype=np.float64))
    return exponent.astype(np.int64) - 1


def pointer_counts(depth):
    """Number of jump pointers of each node: floor(log2 depth) + 1, 0 for the root."""
    depth = np.asarray(depth, dtype=np.int64)
    counts = np.zeros(depth.shape[0], dtype=np.int64)
    deep = depth >= 1
    counts[deep] = floor_log2(depth[deep]) + 1
    return counts


class JumpPointersLA(LevelAncestor):
    """
    Attributes:
        pool (numpy.ndarray): All pointer lists back to back.
        offsets (numpy.ndarray): Pointer list of v starts at offsets[v].
    """
    name = "jump"

    def __init__(self, tree, settings=None):
        super().__init__(tree, settings)
        self.check_budget(self.predict_bytes(tree, self.settings), "jump pointers")
        dtype = id_dtype(self.W)
        depth = tree.depth.astype(np.int64)
        counts = pointer_counts(depth)
        offsets = np.zeros(self._n + 1, dtype=dtype)
        np.cumsum(counts, out=offsets[1:], dtype=dtype)
        pool = np.empty(int(counts.sum()), dtype=dtype)
        starts = offsets[:-1].astype(np.int64)

        ancestor = tree.parent.astype(np.int64)
        level = 0
        while True:
            reach = depth >= (1 << level)
            if not reach.any():
                break
            if level:
                hop = ancestor[np.where(ancestor >= 0, ancestor, 0)]
                ancestor = np.where(reach, hop, -1)
            pool[starts[reach] + level] = ancestor[reach]
            level += 1

        pool.setflags(write=False)
        offsets.setflags(write=False)
        self.pool = pool
        self.offsets = offsets
        self._off = offsets.tolist()

    @classmethod
    def predict_bytes(cls, tree, settings=None):
        pointers = int(pointer_counts(tree.depth).sum())
        return tree.id_width * pointers + tree.id_width * (tree.n + 1)

    def jumps(self, v):
        """Return the jump pointers of *v*, nearest ancestor first."""
        return self.pool[self._off[v]:self._off[v + 1]].tolist()

    def jump(self, v, i):
        """Return the ancestor of *v* at distance 2^i (no range check)."""
        return int(self.pool[self._off[v] + i])

    def _query(self, v, d):
        counters = self.counters
        pool = self.pool
        off = self._off
        dv = self._depth[v]
        while dv > d:
            i = (dv - d).bit_length() - 1
            v = int(pool[off[v] + i])
            dv -= 1 << i
            if counters.enabled:
                counters.jumps_taken += 1
        return v

    @property
    def pointers(self):
        return int(self.pool.shape[0])

    def space_bytes(self):
        return self.W * self.pointers + self.W * (self._n + 1)

    def stored_arrays(self):
        return {"pool": self.pool, "offsets": self.offsets}


def build_jump(tree, settings=None):
    return JumpPointersLA.build(tree, settings)


def query_jump(structure, v, d):
    return structure.query(v, d)
