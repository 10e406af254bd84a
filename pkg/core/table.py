"""
Table strategy: every ancestor of every node, precomputed.

Rows are ragged, row[v][d] = LA(v, d), and live in one flat pool indexed by
an offset array. row[v] is row[parent(v)] followed by v, so a single preorder
pass fills the pool.
"""

import logging

import numpy as np

from model import CapacityExceeded, id_dtype
from .base import LevelAncestor

logger = logging.getLogger(__name__)


def ancestor_rows(parent, depth, dtype=np.int32):
    """
    Build the ragged ancestor rows of a preorder tree.
    Args:
        parent (list[int]): Parent ids, parent[v] < v, root first.
        depth (list[int]): Depth of every node.
        dtype: numpy dtype of the pool and offsets.
    Returns:
        tuple[numpy.ndarray, numpy.ndarray]: (pool, offsets) with
            pool[offsets[v] + d] the ancestor of v at depth d.
    """
    n = len(depth)
    lengths = np.asarray(depth, dtype=np.int64) + 1
    total = int(lengths.sum())
    if total > np.iinfo(dtype).max:
        raise CapacityExceeded(total, int(np.iinfo(dtype).max), "table offsets")
    offsets = np.zeros(n + 1, dtype=dtype)
    np.cumsum(lengths, out=offsets[1:], dtype=dtype)
    pool = np.empty(total, dtype=dtype)
    off = offsets.tolist()
    for v in range(n):
        o = off[v]
        dv = depth[v]
        if dv:
            po = off[parent[v]]
            pool[o:o + dv] = pool[po:po + dv]
        pool[o + dv] = v
    return pool, offsets


class TableLA(LevelAncestor):
    """
    Attributes:
        pool (numpy.ndarray): All rows back to back.
        offsets (numpy.ndarray): Start of row v at offsets[v]; offsets[n] is the pool size.
    """
    name = "table"

    def __init__(self, tree, settings=None):
        super().__init__(tree, settings)
        self.check_budget(self.predict_bytes(tree, self.settings), "table")
        self.pool, self.offsets = ancestor_rows(tree.parent_list, self._depth, id_dtype(self.W))
        self.pool.setflags(write=False)
        self.offsets.setflags(write=False)
        self._off = self.offsets.tolist()

    @classmethod
    def predict_bytes(cls, tree, settings=None):
        entries = int(tree.depth.sum(dtype=np.int64)) + tree.n
        return tree.id_width * entries + tree.id_width * (tree.n + 1)

    def _query(self, v, d):
        if self.counters.enabled:
            self.counters.table_lookups += 1
        return int(self.pool[self._off[v] + d])

    def row(self, v):
        """Return the ancestors of *v* ordered by depth, root first."""
        return self.pool[self._off[v]:self._off[v + 1]].tolist()

    @property
    def entries(self):
        return int(self.pool.shape[0])

    def space_bytes(self):
        return self.W * self.entries + self.W * (self._n + 1)

    def stored_arrays(self):
        return {"pool": self.pool, "offsets": self.offsets}


def build_table(tree, settings=None):
    return TableLA.build(tree, settings)


def query_table(structure, v, d):
    return structure.query(v, d)
