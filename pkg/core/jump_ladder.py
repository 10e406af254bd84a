"""
Jump-Ladder strategy: one jump pointer, then one ladder.

A jump of 2^i with i = floor(log2 gap) leaves a residual gap below 2^i, and
the node landed on has height above 2^i, so its own extended ladder always
reaches the target depth.
"""

import logging

from .base import LevelAncestor
from .jump_pointers import JumpPointersLA
from .ladder import LadderLA

logger = logging.getLogger(__name__)


class JumpLadderLA(LevelAncestor):
    """
    Attributes:
        jumps (JumpPointersLA): Jump pointers over the whole tree.
        ladders (LadderLA): Extended ladders over the whole tree.
    """
    name = "jumpladder"

    def __init__(self, tree, settings=None):
        super().__init__(tree, settings)
        self.check_budget(self.predict_bytes(tree, self.settings), "jump-ladder")
        self.jumps = JumpPointersLA(tree, self.settings)
        self.ladders = LadderLA(tree, self.settings)

    @classmethod
    def predict_bytes(cls, tree, settings=None):
        return JumpPointersLA.predict_bytes(tree, settings) + LadderLA.predict_bytes(tree, settings)

    def _query(self, v, d):
        dv = self._depth[v]
        if d == dv:
            return v
        counters = self.counters
        x = self.jumps.jump(v, (dv - d).bit_length() - 1)
        if counters.enabled:
            counters.jumps_taken += 1
        if self._depth[x] == d:
            return x
        if counters.enabled:
            counters.ladder_hops += 1
        return self.ladders.climb(x, d)

    def space_bytes(self):
        return self.jumps.space_bytes() + self.ladders.space_bytes()

    def stored_arrays(self):
        arrays = {f"jump.{k}": a for k, a in self.jumps.stored_arrays().items()}
        arrays.update({f"ladder.{k}": a for k, a in self.ladders.stored_arrays().items()})
        return arrays

    def check_ladder_property(self):
        return self.ladders.check_ladder_property()


def build_jump_ladder(tree, settings=None):
    return JumpLadderLA.build(tree, settings)


def query_jump_ladder(structure, v, d):
    return structure.query(v, d)
