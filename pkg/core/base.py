"""
The contract every level-ancestor strategy implements.

A strategy is built once from a Tree and is immutable afterwards; the only
mutable state is its HopCounters, which can be switched off.
"""

import logging
import time
from abc import ABC, abstractmethod

from model import CapacityExceeded, NodeOutOfRange
from .config import Settings

logger = logging.getLogger(__name__)


class HopCounters:
    """
    Cumulative work counters of one structure.
    Attributes:
        jumps_taken (int): Jump pointers followed (window probes for find-smaller).
        ladder_hops (int): Ladders climbed.
        table_lookups (int): Precomputed table probes.
        enabled (bool): When False the counters are left untouched.
    """
    __slots__ = ("jumps_taken", "ladder_hops", "table_lookups", "enabled")

    def __init__(self, enabled=True):
        self.enabled = enabled
        self.reset()

    def reset(self):
        self.jumps_taken = 0
        self.ladder_hops = 0
        self.table_lookups = 0

    def snapshot(self):
        """Return (jumps_taken, ladder_hops, table_lookups)."""
        return (self.jumps_taken, self.ladder_hops, self.table_lookups)

    def __repr__(self):
        return f"HopCounters(jumps={self.jumps_taken}, ladders={self.ladder_hops}, tables={self.table_lookups})"


class LevelAncestor(ABC):
    """
    Base class of the six strategies.

    Subclasses build their structure in __init__, implement _query() for
    0 <= d <= depth(v), space_bytes() with their exact analytic formula and
    stored_arrays() with the numpy arrays that formula charges.
    """
    name = ""

    def __init__(self, tree, settings=None):
        self.tree = tree
        self.settings = settings if settings is not None else Settings.from_env()
        self.counters = HopCounters(enabled=self.settings.counters)
        self.W = tree.id_width
        self._n = tree.n
        self._depth = tree.depth_list

    @classmethod
    def build(cls, tree, settings=None):
        """
        Build the structure for *tree* and log its size and build time.
        Args:
            tree (Tree): Tree to preprocess.
            settings (Settings, optional): Defaults to Settings.from_env().
        Returns:
            LevelAncestor: The built structure.
        """
        start = time.perf_counter()
        structure = cls(tree, settings)
        elapsed = (time.perf_counter() - start) * 1000.0
        logger.info("built %s: n=%d bytes=%d in %.1f ms", cls.name, tree.n, structure.space_bytes(), elapsed)
        return structure

    def query(self, v, d):
        """
        Return the ancestor of *v* at depth *d*.
        Args:
            v (int): Node id.
            d (int): Target depth.
        Returns:
            int | None: Ancestor id, or None when d is not in [0, depth(v)].
        Raises:
            NodeOutOfRange: if *v* is not a node of the tree.
        """
        if not 0 <= v < self._n:
            raise NodeOutOfRange(v, self._n)
        if d < 0 or d > self._depth[v]:
            return None
        return self._query(v, d)

    @abstractmethod
    def _query(self, v, d):
        """Answer a query with 0 <= d <= depth(v)."""

    @abstractmethod
    def space_bytes(self):
        """Analytic size of the structure in bytes."""

    @abstractmethod
    def stored_arrays(self):
        """Return {name: ndarray} of every array charged by space_bytes()."""

    @classmethod
    @abstractmethod
    def predict_bytes(cls, tree, settings=None):
        """
        Predict space_bytes() before building: exact where cheap, otherwise
        an upper bound.
        """

    def check_budget(self, required, what=None):
        if required > self.settings.mem_budget_bytes:
            raise CapacityExceeded(required, self.settings.mem_budget_bytes, what or self.name)

    def __repr__(self):
        return f"{type(self).__name__}(n={self._n}, bytes={self.space_bytes()})"
