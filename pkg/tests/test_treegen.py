import math

import numpy as np
import pytest

from core import GenConfig, gen_skewed_tree, gen_split_tree, gen_tree, parse_ratio
from model import parse_signature, tree_stats


class TestConfig:
    @pytest.mark.parametrize("text, value", [("1", 1.0), ("1/10", 0.1), ("0.5", 0.5), ("1/100", 0.01)])
    def test_parse_ratio(self, text, value):
        assert parse_ratio(text) == pytest.approx(value)

    @pytest.mark.parametrize("text", ["0", "2", "-1/2", "x"])
    def test_bad_ratio(self, text):
        with pytest.raises(ValueError):
            parse_ratio(text)

    def test_validation(self):
        with pytest.raises(ValueError):
            GenConfig(n=0)
        with pytest.raises(ValueError):
            GenConfig(n=5, ratio=1.5)


class TestSplitTree:
    @pytest.mark.parametrize("seed", range(5))
    def test_tiny(self, seed):
        assert gen_split_tree(GenConfig(n=1, seed=seed)).bits == ""
        assert gen_split_tree(GenConfig(n=2, seed=seed)).bits == "10"
        assert gen_split_tree(GenConfig(n=3, seed=seed)).bits in ("1010", "1100")

    def test_three_node_branches(self):
        shapes = {gen_split_tree(GenConfig(n=3, seed=s)).bits for s in range(64)}
        assert shapes == {"1010", "1100"}

    def test_split_matches_shape(self):
        for seed in range(16):
            splits = []
            sig = gen_split_tree(GenConfig(n=3, seed=seed), on_split=lambda m, left: splits.append((m, left)))
            assert splits[0][0] == 3
            if splits[0][1] == 1:
                assert sig.bits == "1010"
                assert len(splits) == 1
            else:
                # the two remaining nodes form a chain, which splits once more
                assert sig.bits == "1100"
                assert [m for m, _ in splits] == [3, 2]

    @pytest.mark.parametrize("n", [1, 2, 10, 257, 1000])
    def test_node_count(self, n):
        assert parse_signature(gen_split_tree(GenConfig(n=n, seed=3))).n == n

    def test_deterministic(self):
        cfg = GenConfig(n=500, seed=42)
        assert gen_split_tree(cfg) == gen_split_tree(cfg)
        assert gen_split_tree(cfg) != gen_split_tree(GenConfig(n=500, seed=43))

    def test_needs_unit_ratio(self):
        with pytest.raises(ValueError):
            gen_split_tree(GenConfig(n=5, ratio=0.5))


class TestSkewedTree:
    @pytest.mark.parametrize("seed", range(5))
    def test_two_nodes(self, seed):
        assert gen_skewed_tree(GenConfig(n=2, seed=seed, ratio=0.01)).bits == "10"

    @pytest.mark.parametrize("seed", range(10))
    def test_split_limit(self, seed):
        splits = []
        gen_skewed_tree(GenConfig(n=100, seed=seed, ratio=0.5), on_split=lambda m, left: splits.append((m, left)))
        assert splits
        assert all(left <= m // 3 for m, left in splits)

    def test_node_count(self):
        sig = gen_skewed_tree(GenConfig(n=4096, seed=1, ratio=0.01))
        assert parse_signature(sig).n == 4096

    def test_needs_skew(self):
        with pytest.raises(ValueError):
            gen_skewed_tree(GenConfig(n=5))

    def test_dispatch(self):
        cfg = GenConfig(n=300, seed=9, ratio=0.1)
        assert gen_tree(cfg) == gen_skewed_tree(cfg)

    def test_skew_deepens(self):
        balanced = tree_stats(parse_signature(gen_tree(GenConfig(n=4096, seed=0, ratio=0.5))))
        skewed = tree_stats(parse_signature(gen_tree(GenConfig(n=4096, seed=0, ratio=0.01))))
        assert skewed.avg_node_depth > balanced.avg_node_depth


@pytest.mark.slow
class TestGeneratorStatistics:
    N = 1 << 20

    def test_random_bst_depths(self):
        ln = math.log(self.N)
        avg, depth = [], []
        for seed in range(10):
            stats = tree_stats(parse_signature(gen_tree(GenConfig(n=self.N, seed=seed))))
            avg.append(stats.avg_node_depth)
            depth.append(stats.tree_depth)
            assert 2 * ln <= stats.tree_depth <= 6 * ln
        assert abs(np.mean(avg) - 2 * ln) <= 0.25 * 2 * ln

    def test_depth_grows_with_skew(self):
        ratios = [1 / 2, 1 / 5, 1 / 10, 1 / 20, 1 / 50, 1 / 100]
        means = []
        for ratio in ratios:
            depths = [
                tree_stats(parse_signature(gen_tree(GenConfig(n=self.N, seed=seed, ratio=ratio)))).avg_node_depth
                for seed in range(10)
            ]
            means.append(np.mean(depths))
        assert all(a <= b for a, b in zip(means, means[1:]))
