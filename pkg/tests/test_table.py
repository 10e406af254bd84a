import pytest

from core import Settings, TableLA, build_table, query_table
from helpers import PATH8, nbytes, oracle_mismatches
from model import CapacityExceeded, NodeOutOfRange, parse_signature


class TestTable:
    def test_rows(self, t110010):
        s = build_table(t110010)
        assert [s.row(v) for v in range(4)] == [[0], [0, 1], [0, 1, 2], [0, 3]]

    def test_single(self, single):
        s = build_table(single)
        assert s.row(0) == [0]
        assert s.query(0, 0) == 0

    def test_path_entries(self, path8):
        assert build_table(path8).entries == 36

    def test_queries(self, t110010):
        s = build_table(t110010)
        assert query_table(s, 2, 1) == 1
        assert query_table(s, 3, 2) is None
        assert query_table(s, 3, -1) is None
        assert all(s.query(v, t110010.depth_list[v]) == v for v in range(4))

    def test_one_lookup_per_query(self, path8):
        s = build_table(path8)
        s.query(7, 0)
        s.query(3, 3)
        assert s.counters.snapshot() == (0, 0, 2)

    def test_node_out_of_range(self, t110010):
        with pytest.raises(NodeOutOfRange):
            build_table(t110010).query(4, 0)

    def test_space(self, t110010, path8):
        s = build_table(t110010)
        assert s.space_bytes() == 4 * 8 + 4 * 5 == nbytes(s)
        s = build_table(path8)
        assert s.space_bytes() == 4 * 36 + 4 * 9 == nbytes(s)
        assert TableLA.predict_bytes(path8) == s.space_bytes()

    def test_wide_ids(self):
        tree = parse_signature(PATH8, id_width=8)
        s = build_table(tree)
        assert s.space_bytes() == 8 * 36 + 8 * 9 == nbytes(s)

    def test_budget(self, path8):
        with pytest.raises(CapacityExceeded) as info:
            build_table(path8, Settings(mem_budget_bytes=100))
        assert info.value.required == 180
        assert isinstance(info.value, MemoryError)

    def test_oracle(self, generated):
        for tree in generated:
            assert oracle_mismatches(TableLA(tree)) == []
