"""
Ladder strategy.

The tree is cut into its longest-path decomposition: from every ladder top,
follow the child of maximum height (lowest id on ties) down to a leaf. Every
ladder of length L is then extended rootward by up to L ancestors. After
extension the ladder of a node of height h reaches an ancestor of height
at least 2h, or the root, so a query climbs O(log n) ladders.

Ladder arrays are stored top (shallowest) first in one pool. pos[v] is the
index of v inside its own extended ladder, so the ancestor k levels above v
on that ladder is pool[start[ladder_of[v]] + pos[v] - k].
"""

import logging

import numpy as np

from model import InvariantViolation, id_dtype
from .base import LevelAncestor

logger = logging.getLogger(__name__)


def heavy_children(tree, height):
    """
    Pick, for every node, the child of maximum height, lowest id on ties.
    Args:
        tree (Tree): A valid tree.
        height (numpy.ndarray): Node heights.
    Returns:
        numpy.ndarray: int64 child id per node, -1 for leaves.
    """
    heavy = np.full(tree.n, -1, dtype=np.int64)
    if tree.n == 1:
        return heavy
    kids = np.arange(1, tree.n, dtype=np.int64)
    parent = tree.parent[1:].astype(np.int64)
    order = np.lexsort((kids, -height[1:].astype(np.int64), parent))
    kids = kids[order]
    parent = parent[order]
    first = np.ones(kids.shape[0], dtype=bool)
    first[1:] = parent[1:] != parent[:-1]
    heavy[parent[first]] = kids[first]
    return heavy


def longest_paths(tree, height):
    """
    Longest-path decomposition.
    Args:
        tree (Tree): A valid tree.
        height (numpy.ndarray): Node heights.
    Returns:
        list[list[int]]: Primary ladders, top first, ordered by top id.
    """
    heavy = heavy_children(tree, height)
    parent = tree.parent.astype(np.int64)
    is_top = np.ones(tree.n, dtype=bool)
    is_top[1:] = heavy[parent[1:]] != np.arange(1, tree.n)
    heavy = heavy.tolist()
    paths = []
    for top in np.flatnonzero(is_top).tolist():
        path = [top]
        v = heavy[top]
        while v != -1:
            path.append(v)
            v = heavy[v]
        paths.append(path)
    return paths


class LadderLA(LevelAncestor):
    """
    Attributes:
        pool (numpy.ndarray): Extended ladders back to back, each top first.
        start (numpy.ndarray): Ladder k occupies pool[start[k]:start[k+1]].
        length (numpy.ndarray): Original (primary) length of every ladder.
        ladder_of (numpy.ndarray): Primary ladder of every node.
        pos (numpy.ndarray): Index of every node inside its extended ladder.
        extended (bool): Whether ladders were extended rootward.
    """
    name = "ladder"

    def __init__(self, tree, settings=None, extend=True, paths=None):
        super().__init__(tree, settings)
        self.check_budget(self.predict_bytes(tree, self.settings), "ladders")
        if paths is None:
            paths = longest_paths(tree, tree.metrics.height)
        self.paths = paths
        self.extended = extend
        dtype = id_dtype(self.W)
        parent = tree.parent_list
        depth = self._depth

        flat = []
        start = [0]
        ladder_of = [0] * self._n
        pos = [0] * self._n
        for k, path in enumerate(paths):
            top = path[0]
            above = []
            if extend:
                u = top
                for _ in range(min(len(path), depth[top])):
                    u = parent[u]
                    above.append(u)
                above.reverse()
            flat.extend(above)
            i = len(above)
            for v in path:
                ladder_of[v] = k
                pos[v] = i
                i += 1
            flat.extend(path)
            start.append(len(flat))

        self.pool = np.array(flat, dtype=dtype)
        self.start = np.array(start, dtype=dtype)
        self.length = np.array([len(p) for p in paths], dtype=dtype)
        self.ladder_of = np.array(ladder_of, dtype=dtype)
        self.pos = np.array(pos, dtype=dtype)
        for array in self.stored_arrays().values():
            array.setflags(write=False)
        self._parent = parent
        self._start = start
        self._ladder_of = ladder_of
        self._pos = pos

    @classmethod
    def predict_bytes(cls, tree, settings=None):
        # extended lengths <= 2n, ladders <= n
        W = tree.id_width
        return W * 2 * tree.n + 2 * W * tree.n + W * (2 * tree.n + 1)

    @property
    def ladders(self):
        return int(self.length.shape[0])

    def ladder(self, k):
        """Return extended ladder *k*, top first."""
        return self.pool[int(self.start[k]):int(self.start[k + 1])].tolist()

    def ladder_containing(self, v):
        """Return the extended primary ladder of *v*, top first."""
        return self.ladder(int(self.ladder_of[v]))

    def climb(self, x, d):
        """
        Read the ancestor of *x* at depth *d* off x's own extended ladder.
        Args:
            x (int): Node id.
            d (int): Target depth, d <= depth(x).
        Returns:
            int: The ancestor.
        Raises:
            InvariantViolation: if the ladder does not reach depth *d*.
        """
        k = self._ladder_of[x]
        index = self._start[k] + self._pos[x] - (self._depth[x] - d)
        if index < self._start[k]:
            raise InvariantViolation(f"ladder {k} of node {x} does not reach depth {d}")
        return int(self.pool[index])

    def _query(self, v, d):
        counters = self.counters
        depth = self._depth
        pool = self.pool
        while True:
            s = self._start[self._ladder_of[v]]
            top = int(pool[s])
            if counters.enabled:
                counters.ladder_hops += 1
            if depth[top] <= d:
                return int(pool[s + self._pos[v] - (depth[v] - d)])
            v = self._parent[top]

    def check_ladder_property(self):
        """
        Count nodes whose extended ladder tops out below min(2 h(v), h(root)).
        Returns:
            int: Number of violating nodes; 0 after extension.
        """
        height = self.tree.metrics.height.astype(np.int64)
        tops = self.pool[self.start[:-1].astype(np.int64)]
        top_height = height[tops][self.ladder_of.astype(np.int64)]
        need = np.minimum(2 * height, height[0])
        return int(np.count_nonzero(top_height < need))

    def space_bytes(self):
        W = self.W
        return W * int(self.pool.shape[0]) + 2 * W * self._n + W * (2 * self.ladders + 1)

    def stored_arrays(self):
        return {
            "pool": self.pool,
            "start": self.start,
            "length": self.length,
            "ladder_of": self.ladder_of,
            "pos": self.pos,
        }


def decompose_ladders(tree, metrics=None, settings=None):
    """
    Longest-path decomposition without extension.
    Args:
        tree (Tree): A valid tree.
        metrics (Metrics, optional): Precomputed metrics; defaults to tree.metrics.
    Returns:
        LadderLA: Structure whose ladders are the primary paths only.
    """
    height = (metrics or tree.metrics).height
    return LadderLA(tree, settings, extend=False, paths=longest_paths(tree, height))


def extend_ladders(structure):
    """
    Extend every ladder of *structure* rootward by up to its own length.
    Returns:
        LadderLA: A new structure over the same primary paths.
    """
    return LadderLA(structure.tree, structure.settings, extend=True, paths=structure.paths)


def build_ladder(tree, settings=None):
    return LadderLA.build(tree, settings)


def query_ladder(structure, v, d):
    return structure.query(v, d)
