"""Reference trees and brute-force oracles shared by the test modules."""

from core.treegen import GenConfig, gen_tree
from model import naive_la, parse_signature

PATH8 = "1" * 7 + "0" * 7


def perfect_signature(levels):
    """Signature of the perfect binary tree with *levels* levels of nodes."""
    if levels <= 1:
        return ""
    child = perfect_signature(levels - 1)
    return f"1{child}01{child}0"


PERFECT15 = perfect_signature(4)

REFERENCE = {
    "single": "",
    "edge": "10",
    "1010": "1010",
    "110010": "110010",
    "path8": PATH8,
    "perfect15": PERFECT15,
}


def small_trees(count=200, max_n=256, ratios=(1.0, 0.1, 0.01)):
    """Generated trees with 1 <= n <= max_n, cycling through the ratios."""
    trees = []
    for i in range(count):
        n = 1 + (i * 37) % max_n
        cfg = GenConfig(n=n, seed=i, ratio=ratios[i % len(ratios)])
        trees.append(parse_signature(gen_tree(cfg)))
    return trees


def scan_smaller(E, u, d):
    """Linear scan for the first index after u holding a value <= d, or -1."""
    for q in range(u + 1, len(E)):
        if E[q] <= d:
            return q
    return -1


def nbytes(structure):
    return sum(int(a.nbytes) for a in structure.stored_arrays().values())


def oracle_mismatches(structure):
    """Every (v, d, got, want) where *structure* disagrees with naive_la, d in [-1, depth + 1]."""
    tree = structure.tree
    bad = []
    for v in range(tree.n):
        for d in range(-1, tree.depth_list[v] + 2):
            got, want = structure.query(v, d), naive_la(tree, v, d)
            if got != want:
                bad.append((v, d, got, want))
    return bad
