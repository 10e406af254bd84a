from .config import DEFAULT_MEM_BUDGET, MEM_BUDGET_ENV, Settings, parse_bytes
from .base import HopCounters, LevelAncestor
from .table import TableLA, build_table, query_table
from .jump_pointers import JumpPointersLA, build_jump, query_jump
from .ladder import LadderLA, build_ladder, decompose_ladders, extend_ladders, query_ladder
from .jump_ladder import JumpLadderLA, build_jump_ladder, query_jump_ladder
from .macro_micro import (
    MacroMicroLA,
    NodeClass,
    build_macro_micro,
    classify_nodes,
    enumerate_micro_shapes,
    query_macro_micro,
)
from .find_smaller import FindSmallerLA, build_find_smaller, find_smaller, query_find_smaller
from .registry import STRATEGIES, get_strategy, parse_strategies
from .treegen import GenConfig, gen_skewed_tree, gen_split_tree, gen_tree, parse_ratio
from .bench import (
    BenchInput,
    BenchReport,
    BenchRow,
    QuerySet,
    gen_queries,
    run_benchmark,
    verify,
)
