"""
Flat, preorder-indexed rooted trees.

Node ids are DFS preorder numbers 0..n-1 with the root at 0, so the subtree
of v is the id range [v, v + weight(v)). Structure lives in parallel numpy
arrays (parent, first_child, next_sibling, depth) using a left-child /
right-sibling layout, which accepts any arity.

All arrays are read-only after construction.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NodeOutOfRange
from .signature import DOWN, UP, TreeSignature

logger = logging.getLogger(__name__)

NONE = -1

_ID_DTYPES = {4: np.int32, 8: np.int64}


def id_dtype(width):
    """
    Return the numpy dtype used for node ids of the given byte width.
    Args:
        width (int): 4 or 8.
    Returns:
        numpy.dtype: int32 or int64.
    """
    try:
        return np.dtype(_ID_DTYPES[width])
    except KeyError:
        raise ValueError(f"id width must be 4 or 8 bytes, got {width}") from None


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Metrics:
    """
    Per-node height and weight.
    Attributes:
        height (numpy.ndarray): Nodes on the path to the deepest descendant (leaves have 1).
        weight (numpy.ndarray): Size of the subtree rooted at each node, itself included.
    """
    height: np.ndarray
    weight: np.ndarray


@dataclass(frozen=True, eq=False)
class EulerTour:
    """
    Depth form of the Euler tour.
    Attributes:
        E (numpy.ndarray): int32 depth at every tour step, length 2n-1.
        tour_node (numpy.ndarray): Node id at every tour step.
        first_pos (numpy.ndarray): First tour index of every node.
    """
    E: np.ndarray
    tour_node: np.ndarray
    first_pos: np.ndarray

    def __len__(self):
        return int(self.E.shape[0])


@dataclass(frozen=True)
class TreeStats:
    n: int
    tree_depth: int
    avg_node_depth: float
    leaves: int

    def to_dict(self):
        return {
            "n": self.n,
            "tree_depth": self.tree_depth,
            "avg_node_depth": self.avg_node_depth,
            "leaves": self.leaves,
        }


class Tree:
    """
    A static rooted tree in DFS preorder.
    Attributes:
        n (int): Number of nodes.
        id_width (int): Bytes per node id (4 or 8).
        parent (numpy.ndarray): Parent id, NONE for the root.
        first_child (numpy.ndarray): First child id or NONE.
        next_sibling (numpy.ndarray): Next sibling id or NONE.
        depth (numpy.ndarray): int32 edge count from the root.
    """

    def __init__(self, parent, first_child, next_sibling, depth, id_width=4):
        dtype = id_dtype(id_width)
        self.id_width = id_width
        self.parent = _frozen(np.asarray(parent, dtype=dtype))
        self.first_child = _frozen(np.asarray(first_child, dtype=dtype))
        self.next_sibling = _frozen(np.asarray(next_sibling, dtype=dtype))
        self.depth = _frozen(np.asarray(depth, dtype=np.int32))
        self.n = int(self.parent.shape[0])
        if self.n < 1:
            raise ValueError("a tree has at least one node")

    @staticmethod
    def from_signature(signature, id_width=4):
        return parse_signature(signature, id_width=id_width)

    def to_signature(self):
        return TreeSignature(emit_signature(self))

    @cached_property
    def parent_list(self):
        """The parent array as a Python list, for scalar-heavy loops."""
        return self.parent.tolist()

    @cached_property
    def depth_list(self):
        """The depth array as a Python list, for scalar-heavy loops."""
        return self.depth.tolist()

    @cached_property
    def metrics(self):
        return compute_metrics(self)

    @cached_property
    def euler(self):
        return euler_tour(self)

    def check_node(self, v):
        if not 0 <= v < self.n:
            raise NodeOutOfRange(v, self.n)

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.parent, other.parent)
            and np.array_equal(self.first_child, other.first_child)
            and np.array_equal(self.next_sibling, other.next_sibling)
            and np.array_equal(self.depth, other.depth)
        )

    __hash__ = None

    def __repr__(self):
        return f"Tree(n={self.n}, depth={int(self.depth.max())})"


def parse_signature(text, id_width=4):
    """
    Build a Tree from a signature in one pass over its digits.
    Args:
        text (str | TreeSignature): The '1'/'0' digits.
        id_width (int): Bytes per node id.
    Returns:
        Tree: Tree with preorder ids, n = len/2 + 1.
    Raises:
        MalformedSignature: if *text* is not a valid signature.
    """
    sig = text if isinstance(text, TreeSignature) else TreeSignature(text)
    n = sig.n
    parent = [NONE] * n
    first_child = [NONE] * n
    next_sibling = [NONE] * n
    last_child = [NONE] * n
    stack = [0]
    new = 1
    for ch in sig.bits:
        if ch == "1":
            p = stack[-1]
            parent[new] = p
            if last_child[p] == NONE:
                first_child[p] = new
            else:
                next_sibling[last_child[p]] = new
            last_child[p] = new
            stack.append(new)
            new += 1
        else:
            stack.pop()
    depth = np.zeros(n, dtype=np.int32)
    if n > 1:
        steps = sig.steps()
        depth[1:] = np.cumsum(steps, dtype=np.int64)[steps > 0]
    return Tree(parent, first_child, next_sibling, depth, id_width=id_width)


def _down_positions(depth):
    """Signature index of the '1' that enters each node 1..n-1."""
    zeros_before = depth[:-1].astype(np.int64) - depth[1:] + 1
    return np.cumsum(zeros_before + 1) - 1


def emit_signature(tree):
    """
    Write the Euler walk of *tree* as '1'/'0' digits.
    Args:
        tree (Tree): A valid tree.
    Returns:
        str: The signature; "" for the single-node tree.
    """
    if tree.n == 1:
        return ""
    out = np.full(2 * (tree.n - 1), UP, dtype=np.uint8)
    out[_down_positions(tree.depth)] = DOWN
    return out.tobytes().decode("ascii")


def compute_metrics(tree):
    """
    Compute heights and weights in one reverse-preorder pass.
    Args:
        tree (Tree): A valid tree.
    Returns:
        Metrics: int32 height and weight arrays.
    """
    parent = tree.parent_list
    height = [1] * tree.n
    weight = [1] * tree.n
    for v in range(tree.n - 1, 0, -1):
        p = parent[v]
        weight[p] += weight[v]
        h = height[v] + 1
        if h > height[p]:
            height[p] = h
    return Metrics(
        height=_frozen(np.array(height, dtype=np.int32)),
        weight=_frozen(np.array(weight, dtype=np.int32)),
    )


def euler_tour(tree):
    """
    Build the depth-form Euler tour of *tree*.
    Args:
        tree (Tree): A valid tree.
    Returns:
        EulerTour: Tour of length exactly 2n-1.
    """
    n = tree.n
    dtype = id_dtype(tree.id_width)
    size = 2 * n - 1
    E = np.zeros(size, dtype=np.int32)
    first_pos = np.zeros(n, dtype=dtype)
    tour_node = [0] * size
    if n > 1:
        down = _down_positions(tree.depth)
        steps = np.full(size - 1, -1, dtype=np.int8)
        steps[down] = 1
        E[1:] = np.cumsum(steps, dtype=np.int64)
        first_pos[1:] = down + 1
        parent = tree.parent_list
        node = 0
        new = 1
        for i, step in enumerate(steps.tolist(), start=1):
            if step > 0:
                node = new
                new += 1
            else:
                node = parent[node]
            tour_node[i] = node
    return EulerTour(
        E=_frozen(E),
        tour_node=_frozen(np.array(tour_node, dtype=dtype)),
        first_pos=_frozen(first_pos),
    )


def naive_la(tree, v, d):
    """
    Level ancestor by walking parent links; the verification oracle.
    Args:
        tree (Tree): A valid tree.
        v (int): Node id.
        d (int): Target depth.
    Returns:
        int | None: The ancestor of *v* at depth *d*, None when undefined.
    Raises:
        NodeOutOfRange: if *v* is not a node of *tree*.
    """
    tree.check_node(v)
    depth = tree.depth_list[v]
    if d < 0 or d > depth:
        return None
    parent = tree.parent_list
    for _ in range(depth - d):
        v = parent[v]
    return v


def tree_stats(tree):
    """
    Summarise the shape of *tree*.
    Args:
        tree (Tree): A valid tree.
    Returns:
        TreeStats: n, maximum depth, mean node depth and leaf count.
    """
    return TreeStats(
        n=tree.n,
        tree_depth=int(tree.depth.max()),
        avg_node_depth=float(tree.depth.sum(dtype=np.int64)) / tree.n,
        leaves=int(np.count_nonzero(tree.first_child == NONE)),
    )
