"""
Random split trees written directly as signatures.

A subtree of m nodes spends one node on its root and splits the other m - 1
into a left part of L = floor(x * m) nodes and a right part of R = m - 1 - L.
Its signature is ['1' sig(L) '0'] ['1' sig(R) '0'], each part omitted when
empty, filled into a preallocated window of 2(m - 1) digits. With x uniform
on (0, 1) this is the random binary search tree shape; a skew ratio rho < 1
limits x to (0, rho / (1 + rho)] and flips a fair coin for the side.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from model import TreeSignature
from model.signature import DOWN, UP

logger = logging.getLogger(__name__)

_CHUNK = 1 << 16


def parse_ratio(text):
    """
    Parse a skew ratio given as a fraction ("1/10") or a decimal ("0.1").
    Returns:
        float: ratio in (0, 1].
    Raises:
        ValueError: if the ratio is not in (0, 1].
    """
    ratio = float(Fraction(str(text).strip()))
    if not 0 < ratio <= 1:
        raise ValueError(f"ratio must be in (0, 1], got {text}")
    return ratio


@dataclass(frozen=True)
class GenConfig:
    """
    Attributes:
        n (int): Number of nodes, n >= 1.
        seed (int): Seed of the tree's random stream.
        ratio (float): Skew ratio rho in (0, 1]; 1 draws x uniformly on (0, 1).
    """
    n: int
    seed: int = 0
    ratio: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"a tree has at least one node, got n={self.n}")
        if not 0 < self.ratio <= 1:
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")


class _Uniforms:
    """Uniform draws on the open interval (0, 1), fetched from the generator in chunks."""

    def __init__(self, rng):
        self.rng = rng
        self.buffer = []

    def next(self):
        while True:
            if not self.buffer:
                self.buffer = self.rng.random(_CHUNK).tolist()
                self.buffer.reverse()
            x = self.buffer.pop()
            if x > 0.0:
                return x


def _generate(cfg, on_split=None):
    """
    Fill the signature of one random tree.
    Args:
        cfg (GenConfig): Size, seed and skew ratio.
        on_split (callable, optional): Called as on_split(m, left) for every
            split of m >= 2 nodes, left being the left size before any swap.
    Returns:
        numpy.ndarray: uint8 ASCII digits, length 2(n - 1).
    """
    out = np.empty(2 * (cfg.n - 1), dtype=np.uint8)
    draws = _Uniforms(np.random.default_rng(np.random.SeedSequence(cfg.seed)))
    skewed = cfg.ratio < 1.0
    scale = cfg.ratio / (1.0 + cfg.ratio)

    # (offset, m): subtree of m nodes whose 2(m - 1) digits start at offset
    stack = [(0, cfg.n)]
    while stack:
        offset, m = stack.pop()
        if m == 1:
            continue
        if skewed:
            x = (1.0 - draws.next()) * scale
            left = min(int(x * m), m - 1)
        else:
            left = min(int(draws.next() * m), m - 1)
        if on_split is not None:
            on_split(m, left)
        if skewed and draws.next() < 0.5:
            left = m - 1 - left
        right = m - 1 - left
        pos = offset
        if left:
            out[pos] = DOWN
            out[pos + 2 * left - 1] = UP
            stack.append((pos + 1, left))
            pos += 2 * left
        if right:
            out[pos] = DOWN
            out[pos + 2 * right - 1] = UP
            stack.append((pos + 1, right))
    return out


def gen_split_tree(cfg, on_split=None):
    """
    Random binary split tree with x uniform on (0, 1).
    Args:
        cfg (GenConfig): Configuration; its ratio must be 1.
        on_split (callable, optional): Observer of every split, see _generate().
    Returns:
        TreeSignature: Signature of an n-node tree.
    """
    if cfg.ratio != 1.0:
        raise ValueError("gen_split_tree draws unskewed splits; use gen_skewed_tree for ratio < 1")
    signature = TreeSignature.from_codes(_generate(cfg, on_split))
    logger.debug("generated split tree n=%d seed=%d", cfg.n, cfg.seed)
    return signature


def gen_skewed_tree(cfg, on_split=None):
    """
    Random binary split tree whose smaller side is at most about rho times
    the larger one at every split.
    Args:
        cfg (GenConfig): Configuration with 0 < ratio < 1.
        on_split (callable, optional): Observer of every split, see _generate().
    Returns:
        TreeSignature: Signature of an n-node tree.
    """
    if not cfg.ratio < 1.0:
        raise ValueError("gen_skewed_tree needs a ratio below 1")
    signature = TreeSignature.from_codes(_generate(cfg, on_split))
    logger.debug("generated skewed tree n=%d seed=%d ratio=%g", cfg.n, cfg.seed, cfg.ratio)
    return signature


def gen_tree(cfg, on_split=None):
    """Dispatch to gen_split_tree() or gen_skewed_tree() by the configured ratio."""
    if cfg.ratio < 1.0:
        return gen_skewed_tree(cfg, on_split)
    return gen_split_tree(cfg, on_split)
