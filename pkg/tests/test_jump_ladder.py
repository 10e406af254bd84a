from core import JumpLadderLA, JumpPointersLA, LadderLA, build_jump_ladder, query_jump_ladder
from helpers import nbytes, oracle_mismatches


class TestJumpLadder:
    def test_path(self, path8):
        s = build_jump_ladder(path8)
        assert query_jump_ladder(s, 7, 0) == 0
        assert s.counters.snapshot() == (1, 1, 0)

    def test_jump_lands_on_target(self, t110010):
        s = build_jump_ladder(t110010)
        assert s.query(2, 0) == 0
        assert s.counters.snapshot() == (1, 0, 0)

    def test_identity(self, t110010):
        s = build_jump_ladder(t110010)
        assert s.query(2, 2) == 2
        assert s.counters.snapshot() == (0, 0, 0)

    def test_constant_hops(self, generated):
        for tree in generated:
            s = JumpLadderLA(tree)
            for v in range(tree.n):
                for d in range(tree.depth_list[v] + 1):
                    s.counters.reset()
                    s.query(v, d)
                    jumps, ladders, _ = s.counters.snapshot()
                    assert jumps <= 1 and ladders <= 1

    def test_space_is_sum(self, perfect15):
        s = build_jump_ladder(perfect15)
        parts = JumpPointersLA(perfect15).space_bytes() + LadderLA(perfect15).space_bytes()
        assert s.space_bytes() == parts == nbytes(s)

    def test_ladder_property(self, perfect15):
        assert build_jump_ladder(perfect15).check_ladder_property() == 0

    def test_oracle(self, generated):
        for tree in generated:
            assert oracle_mismatches(JumpLadderLA(tree)) == []
