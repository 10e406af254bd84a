"""
Nominal complexity of each level-ancestor strategy, as
<preprocessing time, query time> pairs. Documentation metadata only.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class StrategyProfile:
    """
    Attributes:
        name (str): Strategy token used on the command line.
        title (str): Human readable name.
        preprocessing (str): Nominal preprocessing bound f(n).
        query (str): Nominal query bound g(n).
        note (str): Deviations of this implementation, if any.
    """
    name: str
    title: str
    preprocessing: str
    query: str
    note: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "title": self.title,
            "preprocessing": self.preprocessing,
            "query": self.query,
            "note": self.note,
        }


PROFILES = {
    p.name: p
    for p in (
        StrategyProfile("table", "Table", "O(n^2)", "O(1)"),
        StrategyProfile("jump", "Jump-Pointer", "O(n log n)", "O(log n)"),
        StrategyProfile("ladder", "Ladder", "O(n)", "O(log n)"),
        StrategyProfile("jumpladder", "Jump-Ladder", "O(n log n)", "O(1)"),
        StrategyProfile("macromicro", "Macro-Micro-Tree", "O(n)", "O(1)"),
        StrategyProfile(
            "findsmaller",
            "Find-Smaller",
            "O(n)",
            "O(1)",
            note="cross-block search is O(log(n/b)) worst case here; see jumps_taken",
        ),
    )
}
