import pytest

from core import FindSmallerLA, LadderLA, LevelAncestor, STRATEGIES, TableLA, get_strategy, parse_strategies
from model import PROFILES, UnknownStrategy


class TestRegistry:
    def test_names(self):
        assert list(STRATEGIES) == ["table", "jump", "ladder", "jumpladder", "macromicro", "findsmaller"]

    def test_lookup(self):
        assert get_strategy("Ladder") is LadderLA

    def test_unknown(self):
        with pytest.raises(UnknownStrategy) as info:
            get_strategy("splay")
        assert str(info.value) == "unknown strategy 'splay'"
        assert isinstance(info.value, KeyError)

    def test_list(self):
        assert parse_strategies("findsmaller, table,table") == [TableLA, FindSmallerLA]

    def test_all(self):
        assert parse_strategies("all") == list(STRATEGIES.values())
        assert parse_strategies(["ladder", "all"]) == list(STRATEGIES.values())

    def test_unknown_in_list(self):
        with pytest.raises(UnknownStrategy):
            parse_strategies("table,bogus")

    def test_empty(self):
        with pytest.raises(UnknownStrategy):
            parse_strategies(" , ")

    def test_every_strategy_has_a_profile(self):
        assert set(PROFILES) == set(STRATEGIES)
        assert PROFILES["macromicro"].to_dict()["query"] == "O(1)"
        assert PROFILES["findsmaller"].note

    def test_predict_bytes_is_abstract(self):
        assert "predict_bytes" in LevelAncestor.__abstractmethods__

        class Partial(LevelAncestor):
            def _query(self, v, d):
                return v

            def space_bytes(self):
                return 0

            def stored_arrays(self):
                return {}

        with pytest.raises(TypeError):
            Partial(None)
