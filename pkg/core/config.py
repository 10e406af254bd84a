"""
Runtime settings shared by builders, the benchmark and the command line.
"""

import logging
import os
import re
from dataclasses import dataclass, replace

logger = logging.getLogger(__name__)

GIB = 1024 ** 3
DEFAULT_MEM_BUDGET = 8 * GIB
MEM_BUDGET_ENV = "LA_MEM_BUDGET"

_UNITS = {"": 1, "K": 1024, "M": 1024 ** 2, "G": 1024 ** 3, "T": 1024 ** 4}


def parse_bytes(text):
    """
    Parse a byte count such as "8G", "512M" or "1048576".
    Args:
        text (str): Integer with an optional K/M/G/T suffix (powers of 1024).
    Returns:
        int: Number of bytes.
    Raises:
        ValueError: if *text* is not a byte count.
    """
    match = re.fullmatch(r"\s*(\d+)\s*([KMGT]?)(?:i?B)?\s*", text, flags=re.IGNORECASE)
    if not match:
        raise ValueError(f"not a byte count: {text!r}")
    return int(match.group(1)) * _UNITS[match.group(2).upper()]


@dataclass(frozen=True)
class Settings:
    """
    Attributes:
        mem_budget_bytes (int): Largest structure a build may allocate.
        id_width (int): Bytes per stored node id (4 or 8).
        counters (bool): Whether hop counters are live on built structures.
    """
    mem_budget_bytes: int = DEFAULT_MEM_BUDGET
    id_width: int = 4
    counters: bool = True

    def __post_init__(self):
        if self.id_width not in (4, 8):
            raise ValueError(f"id width must be 4 or 8, got {self.id_width}")
        if self.mem_budget_bytes <= 0:
            raise ValueError("memory budget must be positive")

    def with_(self, **changes):
        return replace(self, **changes)

    @staticmethod
    def from_env(environ=None, **overrides):
        """
        Build settings from defaults, the LA_MEM_BUDGET variable and explicit
        overrides, in that order of precedence (last wins).
        """
        environ = os.environ if environ is None else environ
        values = {}
        raw = environ.get(MEM_BUDGET_ENV)
        if raw:
            values["mem_budget_bytes"] = parse_bytes(raw)
            logger.debug("memory budget %d bytes from %s", values["mem_budget_bytes"], MEM_BUDGET_ENV)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return Settings(**values)
