from .errors import *
from .signature import TreeSignature, read_signature_file, write_signature_file
from .tree import (
    NONE,
    EulerTour,
    Metrics,
    Tree,
    TreeStats,
    compute_metrics,
    emit_signature,
    euler_tour,
    id_dtype,
    naive_la,
    parse_signature,
    tree_stats,
)
from .profile import PROFILES, StrategyProfile
