"""
Strategy names as used on the command line.
"""

from model import UnknownStrategy
from .find_smaller import FindSmallerLA
from .jump_ladder import JumpLadderLA
from .jump_pointers import JumpPointersLA
from .ladder import LadderLA
from .macro_micro import MacroMicroLA
from .table import TableLA

STRATEGIES = {
    cls.name: cls
    for cls in (TableLA, JumpPointersLA, LadderLA, JumpLadderLA, MacroMicroLA, FindSmallerLA)
}

ALL = "all"


def get_strategy(name):
    """
    Look up a strategy class by name.
    Raises:
        UnknownStrategy: if *name* is not registered.
    """
    try:
        return STRATEGIES[name.strip().lower()]
    except KeyError:
        raise UnknownStrategy(name) from None


def parse_strategies(text):
    """
    Parse a comma separated strategy list; "all" selects every strategy.
    Args:
        text (str | list[str]): e.g. "table,ladder" or ["jump", "all"].
    Returns:
        list[type]: Strategy classes in registry order, without duplicates.
    Raises:
        UnknownStrategy: on the first unknown name, before anything is built.
    """
    parts = text.split(",") if isinstance(text, str) else [p for item in text for p in item.split(",")]
    chosen = set()
    for part in parts:
        part = part.strip().lower()
        if not part:
            continue
        if part == ALL:
            chosen.update(STRATEGIES)
        else:
            chosen.add(get_strategy(part).name)
    if not chosen:
        raise UnknownStrategy(text if isinstance(text, str) else ",".join(text))
    return [cls for name, cls in STRATEGIES.items() if name in chosen]
