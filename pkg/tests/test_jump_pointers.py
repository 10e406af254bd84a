import pytest

from core import JumpPointersLA, Settings, build_jump, query_jump
from core.jump_pointers import floor_log2, pointer_counts
from helpers import nbytes, oracle_mismatches


class TestHelpers:
    def test_floor_log2(self):
        assert floor_log2([1, 2, 3, 4, 7, 8, 1 << 40]).tolist() == [0, 1, 1, 2, 2, 3, 40]

    def test_pointer_counts(self):
        assert pointer_counts([0, 1, 2, 3, 4, 7]).tolist() == [0, 1, 2, 2, 3, 3]


class TestJumpPointers:
    def test_path_pointers(self, path8):
        s = build_jump(path8)
        assert s.jumps(7) == [6, 5, 3]
        assert s.jumps(0) == []

    def test_110010(self, t110010):
        s = build_jump(t110010)
        assert s.jumps(2) == [1, 0]
        assert s.pointers == 4

    def test_doubling(self, generated):
        for tree in generated[:20]:
            s = JumpPointersLA(tree)
            for v in range(1, tree.n):
                ptr = s.jumps(v)
                assert ptr[0] == tree.parent_list[v]
                for i in range(1, len(ptr)):
                    assert ptr[i] == s.jumps(ptr[i - 1])[i - 1]

    @pytest.mark.parametrize("v, d, jumps", [(7, 0, 3), (7, 6, 1), (7, 7, 0), (5, 0, 2)])
    def test_popcount_jumps(self, path8, v, d, jumps):
        s = build_jump(path8)
        assert query_jump(s, v, d) == d
        assert s.counters.jumps_taken == jumps

    def test_one_jump(self, t110010):
        s = build_jump(t110010)
        assert s.query(2, 0) == 0
        assert s.counters.jumps_taken == 1

    def test_space(self, t110010, path8):
        s = build_jump(t110010)
        assert s.space_bytes() == 4 * 4 + 4 * 5 == nbytes(s)
        s = build_jump(path8)
        assert s.space_bytes() == 4 * 17 + 4 * 9 == nbytes(s)
        assert JumpPointersLA.predict_bytes(path8) == s.space_bytes()

    def test_counters_off(self, path8):
        s = build_jump(path8, Settings(counters=False))
        s.query(7, 0)
        assert s.counters.snapshot() == (0, 0, 0)

    def test_oracle(self, generated):
        for tree in generated:
            assert oracle_mismatches(JumpPointersLA(tree)) == []
