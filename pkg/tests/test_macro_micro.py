import math

import numpy as np
import pytest

from core import (
    MacroMicroLA,
    NodeClass,
    build_macro_micro,
    classify_nodes,
    enumerate_micro_shapes,
    query_macro_micro,
)
from core.macro_micro import micro_size_bound, shape_table
from helpers import nbytes, oracle_mismatches
from model import parse_signature

M, J, R, U = NodeClass.MACRO, NodeClass.JUMP, NodeClass.MICRO_ROOT, NodeClass.MICRO


class TestClassify:
    @pytest.mark.parametrize("n, B", [(1, 1), (2, 1), (8, 1), (16, 1), (17, 2), (1 << 20, 5), ((1 << 20) + 1, 6)])
    def test_bound(self, n, B):
        assert micro_size_bound(n) == B

    def test_path(self, path8):
        c = classify_nodes(path8)
        assert c.B == 1
        assert c.node_class.tolist() == [M] * 6 + [J, R]
        assert c.jump_desc.tolist() == [6] * 7 + [-1]
        assert c.micro_root.tolist() == [-1] * 7 + [7]

    def test_110010(self, t110010):
        c = classify_nodes(t110010)
        assert c.node_class.tolist() == [M, J, R, R]
        assert c.jump_desc[0] == 1
        assert c.jump_nodes.tolist() == [1]

    def test_two_nodes(self):
        c = classify_nodes(parse_signature("10"))
        assert c.node_class.tolist() == [J, R]

    def test_explicit_bound(self, perfect15):
        c = classify_nodes(perfect15, B=3)
        assert c.jump_nodes.tolist() == [1, 8]
        assert c.micro_roots.tolist() == [2, 5, 9, 12]
        assert c.micro_root[[3, 4, 13, 14]].tolist() == [2, 2, 12, 12]
        assert c.jump_desc[0] == 1

    def test_jump_desc_is_descendant(self, generated):
        for tree in generated:
            c = classify_nodes(tree)
            weight = tree.metrics.weight
            for v in np.flatnonzero(c.jump_desc >= 0).tolist():
                j = int(c.jump_desc[v])
                assert v <= j < v + weight[v]
                assert c.node_class[j] == J


class TestShapes:
    def test_single_node_shape(self):
        assert shape_table("", 1).tolist() == [[0]]

    def test_path_shape(self):
        assert shape_table("1100", 3).tolist() == [[0, -1, -1], [0, 1, -1], [0, 1, 2]]

    def test_shared_shape(self, t110010):
        shapes, micro_shape = enumerate_micro_shapes(t110010, classify_nodes(t110010))
        assert list(shapes) == [(1, "")]
        assert micro_shape == {2: (1, ""), 3: (1, "")}

    def test_codes_read_from_subtrees(self, perfect15):
        shapes, micro_shape = enumerate_micro_shapes(perfect15, classify_nodes(perfect15, B=3))
        assert set(micro_shape.values()) == {(3, "1010")}
        assert shapes[(3, "1010")].tolist() == [[0, -1, -1], [0, 1, -1], [0, 2, -1]]


class TestMacroMicro:
    def test_single(self, single):
        s = build_macro_micro(single)
        assert s.node_class.tolist() == [R]
        assert s.jump_count == 0
        assert s.query(0, 0) == 0

    def test_path(self, path8):
        s = build_macro_micro(path8)
        assert s.jump_count == 1
        assert s.shape_count == 1
        assert query_macro_micro(s, 7, 0) == 0
        assert s.counters.snapshot() == (1, 1, 0)

    def test_micro_root_parent(self, t110010):
        s = build_macro_micro(t110010)
        assert s.query(2, 1) == 1
        assert s.counters.snapshot() == (0, 0, 0)

    def test_identity(self, t110010):
        s = build_macro_micro(t110010)
        assert all(s.query(v, t110010.depth_list[v]) == v for v in range(4))

    def test_space(self, t110010):
        s = build_macro_micro(t110010)
        classes = 4 + 3 * 4 * 4
        jumps = 4 + 4 * 2 + 4
        ladders = 72
        shapes = 1 + 2 * 4
        assert s.space_bytes() == classes + jumps + ladders + shapes == nbytes(s)

    def test_space_matches_arrays(self, generated):
        for tree in generated:
            s = MacroMicroLA(tree)
            assert s.space_bytes() == nbytes(s)
            assert s.space_bytes() <= MacroMicroLA.predict_bytes(tree)

    def test_structural_bounds(self, generated):
        for tree in generated:
            s = MacroMicroLA(tree)
            roots = np.flatnonzero(s.node_class == R)
            assert int(tree.metrics.weight[roots].max()) <= s.B
            assert s.jump_count * (s.B + 1) <= tree.n
            assert s.shape_count <= min(len(roots), 4 ** s.B)
            assert s.jump_pool.shape[0] <= s.jump_count * (int(math.log2(tree.n)) + 1)

    def test_constant_hops(self, generated):
        for tree in generated:
            s = MacroMicroLA(tree)
            for v in range(tree.n):
                for d in range(tree.depth_list[v] + 1):
                    s.counters.reset()
                    s.query(v, d)
                    jumps, ladders, lookups = s.counters.snapshot()
                    if lookups:
                        assert (jumps, ladders, lookups) == (0, 0, 1)
                    else:
                        assert jumps <= 1 and ladders <= 1

    def test_oracle(self, generated):
        for tree in generated:
            assert oracle_mismatches(MacroMicroLA(tree)) == []
