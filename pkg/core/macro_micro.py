"""
Macro-Micro-Tree strategy, <O(n), O(1)>.

Nodes of weight > B = max(1, ceil(log2(n) / 4)) form the macrotree; the rest
hang off it as microtrees of at most B nodes. Macro nodes with no macro
child are jump nodes and are the only nodes with jump pointers. Every
microtree shape is solved once with the Table algorithm, in local ids
(id - root, valid because subtrees are contiguous in preorder).

Query cases:
  * v micro and d >= depth(micro root): one shape-table lookup;
  * otherwise climb from the macro node u (v, or the parent of v's micro
    root) through the jump node below u: one jump pointer, one ladder.
"""

import logging
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from model import InvariantViolation, emit_signature, id_dtype, parse_signature
from .base import LevelAncestor
from .jump_pointers import floor_log2, pointer_counts
from .ladder import LadderLA
from .table import ancestor_rows

logger = logging.getLogger(__name__)


class NodeClass(IntEnum):
    MACRO = 0
    JUMP = 1
    MICRO_ROOT = 2
    MICRO = 3


def micro_size_bound(n):
    """B = max(1, ceil(log2(n) / 4))."""
    return max(1, math.ceil(math.log2(n) / 4)) if n > 1 else 1


@dataclass(frozen=True, eq=False)
class Classification:
    """
    Attributes:
        B (int): Microtree size bound.
        node_class (numpy.ndarray): uint8 NodeClass of every node.
        micro_root (numpy.ndarray): Microtree root of micro nodes, -1 for macro nodes.
        jump_desc (numpy.ndarray): A jump node in the subtree of each macro node
            (the node itself for jump nodes), -1 for micro nodes.
        jump_nodes (numpy.ndarray): Jump node ids, ascending.
    """
    B: int
    node_class: np.ndarray
    micro_root: np.ndarray
    jump_desc: np.ndarray
    jump_nodes: np.ndarray

    @property
    def micro_roots(self):
        return np.flatnonzero(self.node_class == NodeClass.MICRO_ROOT)


def classify_nodes(tree, metrics=None, B=None):
    """
    Split the tree into macro nodes, jump nodes and microtrees.
    Args:
        tree (Tree): A valid tree.
        metrics (Metrics, optional): Defaults to tree.metrics.
        B (int, optional): Microtree size bound; defaults to micro_size_bound(n).
    Returns:
        Classification: Classes, micro roots and jump descendants.
    """
    weight = (metrics or tree.metrics).weight
    B = micro_size_bound(tree.n) if B is None else B
    n = tree.n
    ids = np.arange(n, dtype=np.int64)
    parent = tree.parent.astype(np.int64)

    micro = weight <= B
    macro = ~micro
    has_macro_child = np.zeros(n, dtype=bool)
    has_macro_child[parent[1:][macro[1:]]] = True
    jump = macro & ~has_macro_child
    is_micro_root = micro.copy()
    is_micro_root[1:] &= macro[parent[1:]]

    node_class = np.full(n, NodeClass.MACRO, dtype=np.uint8)
    node_class[jump] = NodeClass.JUMP
    node_class[micro] = NodeClass.MICRO
    node_class[is_micro_root] = NodeClass.MICRO_ROOT

    # a micro node's root is the last micro root at or before it in preorder
    micro_root = np.maximum.accumulate(np.where(is_micro_root, ids, -1))
    micro_root[macro] = -1

    # reverse preorder: the first jump node at or after a macro node lies on
    # its lowest-id macro child chain
    next_jump = np.minimum.accumulate(np.where(jump, ids, n)[::-1])[::-1]
    jump_desc = np.where(macro, next_jump, -1)

    return Classification(
        B=B,
        node_class=node_class,
        micro_root=micro_root,
        jump_desc=jump_desc,
        jump_nodes=np.flatnonzero(jump),
    )


def shape_table(bits, size):
    """
    Ancestor table of one microtree shape, by the Table algorithm.
    Args:
        bits (str): Signature of the microtree.
        size (int): Its node count.
    Returns:
        numpy.ndarray: int8 matrix [local_index][local_depth] -> local_index, -1 where undefined.
    """
    local = parse_signature(bits)
    pool, offsets = ancestor_rows(local.parent_list, local.depth_list)
    table = np.full((size, size), -1, dtype=np.int8)
    for i in range(size):
        row = pool[offsets[i]:offsets[i + 1]]
        table[i, :row.shape[0]] = row
    return table


def enumerate_micro_shapes(tree, classification):
    """
    Enumerate the distinct microtree shapes and solve each one once.
    Args:
        tree (Tree): A valid tree.
        classification (Classification): Output of classify_nodes().
    Returns:
        tuple[dict, dict]: shape_dict mapping (size, bits) to the shape's
            ancestor table, and micro_shape mapping each micro root to its
            (size, bits) code.
    """
    signature = emit_signature(tree)
    first_pos = tree.euler.first_pos.tolist()
    weight = tree.metrics.weight
    shape_dict = {}
    micro_shape = {}
    for r in classification.micro_roots.tolist():
        w = int(weight[r])
        start = first_pos[r]
        code = (w, signature[start:start + 2 * (w - 1)])
        if code not in shape_dict:
            shape_dict[code] = shape_table(code[1], w)
        micro_shape[r] = code
    return shape_dict, micro_shape


class MacroMicroLA(LevelAncestor):
    """
    Attributes:
        B (int): Microtree size bound.
        node_class (numpy.ndarray): uint8 NodeClass per node.
        micro_root (numpy.ndarray): Microtree root per node, -1 for macro nodes.
        jump_desc (numpy.ndarray): Rank in jump_nodes of a descendant jump node, -1 for micro nodes.
        micro_shape (numpy.ndarray): Shape index at micro roots, -1 elsewhere.
        jump_nodes, jump_offsets, jump_pool: Jump pointer lists of the jump nodes only.
        shape_pool (numpy.ndarray): int8 dense shape tables back to back.
        shape_offset, shape_size: The shape dictionary, one entry per distinct shape.
        ladders (LadderLA): Extended ladders over the whole tree.
    """
    name = "macromicro"

    def __init__(self, tree, settings=None):
        super().__init__(tree, settings)
        self.check_budget(self.predict_bytes(tree, self.settings), "macro-micro")
        n = self._n
        dtype = id_dtype(self.W)
        depth = self._depth
        classes = classify_nodes(tree)
        self.B = classes.B
        self.node_class = classes.node_class

        jump_nodes = classes.jump_nodes
        rank = np.cumsum(classes.node_class == NodeClass.JUMP) - 1
        self.micro_root = classes.micro_root.astype(dtype)
        self.jump_desc = np.where(classes.jump_desc >= 0, rank[np.maximum(classes.jump_desc, 0)], -1).astype(dtype)

        # jump pointers of jump nodes, read off the root path during one preorder pass
        counts = pointer_counts(tree.depth[jump_nodes])
        jump_offsets = np.zeros(jump_nodes.shape[0] + 1, dtype=dtype)
        np.cumsum(counts, out=jump_offsets[1:], dtype=dtype)
        pointers = []
        is_jump = (classes.node_class == NodeClass.JUMP).tolist()
        path = [0] * (max(depth) + 1)
        for v in range(n):
            dv = depth[v]
            path[dv] = v
            if is_jump[v]:
                step = 1
                while step <= dv:
                    pointers.append(path[dv - step])
                    step <<= 1
        self.jump_nodes = jump_nodes.astype(dtype)
        self.jump_offsets = jump_offsets
        self.jump_pool = np.array(pointers, dtype=dtype)

        shape_dict, micro_shape = enumerate_micro_shapes(tree, classes)
        index = {code: k for k, code in enumerate(shape_dict)}
        tables = list(shape_dict.values())
        sizes = [t.shape[0] for t in tables]
        self.shape_size = np.array(sizes, dtype=dtype)
        self.shape_offset = np.zeros(len(tables), dtype=dtype)
        if tables:
            self.shape_offset[1:] = np.cumsum([s * s for s in sizes[:-1]])
            self.shape_pool = np.concatenate([t.ravel() for t in tables])
        else:
            self.shape_pool = np.empty(0, dtype=np.int8)
        self.micro_shape = np.full(n, -1, dtype=dtype)
        if micro_shape:
            roots = np.fromiter(micro_shape.keys(), dtype=np.int64, count=len(micro_shape))
            self.micro_shape[roots] = [index[code] for code in micro_shape.values()]

        self.ladders = LadderLA(tree, self.settings)
        for array in self.stored_arrays().values():
            array.setflags(write=False)
        self._check_bounds(classes)

        self._class = self.node_class.tolist()
        self._micro_root = self.micro_root.tolist()
        self._jump_desc = self.jump_desc.tolist()
        self._parent = tree.parent_list

    def _check_bounds(self, classes):
        n, B = self._n, self.B
        roots = classes.micro_roots
        weight = self.tree.metrics.weight
        largest = int(weight[roots].max()) if roots.size else 0
        if largest > B:
            raise InvariantViolation(f"microtree of {largest} nodes exceeds B={B}")
        jumps = int(self.jump_nodes.shape[0])
        if jumps * (B + 1) > n:
            raise InvariantViolation(f"{jumps} jump nodes exceed n/(B+1) for n={n}, B={B}")
        shapes = int(self.shape_size.shape[0])
        if shapes > min(int(roots.size), 4 ** B):
            raise InvariantViolation(f"{shapes} distinct shapes exceed min({roots.size}, 4^{B})")
        limit = jumps * (int(floor_log2([n])[0]) + 1)
        if int(self.jump_pool.shape[0]) > limit:
            raise InvariantViolation(f"{self.jump_pool.shape[0]} jump pointers exceed {limit}")

    @classmethod
    def predict_bytes(cls, tree, settings=None):
        n, W = tree.n, tree.id_width
        B = micro_size_bound(n)
        jumps = n // (B + 1)
        levels = int(floor_log2([max(n, 1)])[0]) + 1
        shapes = min(n, 4 ** B)
        return (
            n + 3 * W * n
            + W * jumps + W * (jumps + 1) + W * jumps * levels
            + LadderLA.predict_bytes(tree, settings)
            + shapes * (B * B + 2 * W)
        )

    @property
    def jump_count(self):
        return int(self.jump_nodes.shape[0])

    @property
    def shape_count(self):
        return int(self.shape_size.shape[0])

    def _query(self, v, d):
        depth = self._depth
        if d == depth[v]:
            return v
        counters = self.counters
        if self._class[v] >= NodeClass.MICRO_ROOT:
            r = self._micro_root[v]
            dr = depth[r]
            if d >= dr:
                s = int(self.micro_shape[r])
                w = int(self.shape_size[s])
                if counters.enabled:
                    counters.table_lookups += 1
                return r + int(self.shape_pool[int(self.shape_offset[s]) + (v - r) * w + (d - dr)])
            u = self._parent[r]
            if d == depth[u]:
                return u
        else:
            u = v
        j = self._jump_desc[u]
        gap = depth[int(self.jump_nodes[j])] - d
        x = int(self.jump_pool[int(self.jump_offsets[j]) + gap.bit_length() - 1])
        if counters.enabled:
            counters.jumps_taken += 1
        if depth[x] == d:
            return x
        if counters.enabled:
            counters.ladder_hops += 1
        return self.ladders.climb(x, d)

    def check_ladder_property(self):
        return self.ladders.check_ladder_property()

    def space_bytes(self):
        W, n = self.W, self._n
        return (
            n                                   # node_class, 1 byte each
            + W * n                             # micro_root
            + W * n                             # jump_desc
            + W * n                             # micro_shape
            + W * self.jump_count               # jump_nodes
            + W * (self.jump_count + 1)         # jump_offsets
            + W * int(self.jump_pool.shape[0])  # jump pointers
            + self.ladders.space_bytes()
            + int(self.shape_pool.shape[0])     # int8 shape tables
            + 2 * W * self.shape_count          # shape dictionary
        )

    def stored_arrays(self):
        arrays = {
            "node_class": self.node_class,
            "micro_root": self.micro_root,
            "jump_desc": self.jump_desc,
            "micro_shape": self.micro_shape,
            "jump_nodes": self.jump_nodes,
            "jump_offsets": self.jump_offsets,
            "jump_pool": self.jump_pool,
            "shape_pool": self.shape_pool,
            "shape_offset": self.shape_offset,
            "shape_size": self.shape_size,
        }
        arrays.update({f"ladder.{k}": a for k, a in self.ladders.stored_arrays().items()})
        return arrays


def build_macro_micro(tree, settings=None):
    return MacroMicroLA.build(tree, settings)


def query_macro_micro(structure, v, d):
    return structure.query(v, d)
