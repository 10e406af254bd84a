"""
Workloads, verification and timing for the level-ancestor strategies.
"""

import csv
import json
import logging
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from prettytable import PrettyTable

from model import PROFILES, BudgetExceeded, CapacityExceeded, naive_la
from .base import LevelAncestor
from .config import Settings

logger = logging.getLogger(__name__)

try:
    import resource
except ImportError:  # not available on Windows
    resource = None

DEFAULT_SIZES = [1 << k for k in range(17, 23)]
DEFAULT_SEEDS = 10
DEFAULT_QUERIES = 10_000_000
SKEW_RATIOS = ["1/2", "1/5", "1/10", "1/20", "1/50", "1/100"]

QUERY_DISTRIBUTION = "v uniform over nodes, d uniform over [0, depth(v)]"

CSV_FIELDS = [
    "strategy", "n", "seed", "ratio", "build_ms", "query_ms", "queries", "bytes",
    "rss_bytes", "checksum", "avg_jumps", "avg_ladder_hops", "avg_table_lookups",
]

_CHUNK = 1 << 16
_MOD = 1 << 64


class QuerySet:
    """
    A deterministic stream of answerable queries.
    Attributes:
        tree (Tree): Tree the queries refer to.
        count (int): Number of (v, d) pairs.
        seed (int): Seed of the query stream.
    """

    def __init__(self, tree, count, seed=0):
        if count < 1:
            raise ValueError(f"query count must be at least 1, got {count}")
        self.tree = tree
        self.count = count
        self.seed = seed

    def chunks(self, size=_CHUNK):
        """
        Yield the queries in chunks.
        Yields:
            tuple[list[int], list[int]]: Node ids and target depths.
        """
        rng = np.random.default_rng(np.random.SeedSequence(self.seed))
        depth = self.tree.depth.astype(np.int64)
        left = self.count
        while left:
            m = min(size, left)
            v = rng.integers(0, self.tree.n, size=m)
            d = rng.integers(0, depth[v] + 1)
            yield v.tolist(), d.tolist()
            left -= m

    def __iter__(self):
        for vs, ds in self.chunks():
            yield from zip(vs, ds)

    def __len__(self):
        return self.count


def gen_queries(tree, count, seed=0):
    return QuerySet(tree, count, seed)


@dataclass
class BenchInput:
    """A tree to benchmark with the generation parameters it came from, if known."""
    tree: object
    seed: int = None
    ratio: float = None
    label: str = ""


@dataclass
class BenchRow:
    strategy: str
    n: int
    tree: int = 0
    label: str = ""
    seed: int = None
    ratio: float = None
    build_ms: float = None
    query_ms: float = None
    queries: int = 0
    bytes: int = None
    rss_bytes: int = None
    checksum: int = None
    avg_jumps: float = None
    avg_ladder_hops: float = None
    avg_table_lookups: float = None
    skipped: str = ""

    def to_dict(self):
        return {k: ("" if v is None else v) for k, v in asdict(self).items() if k in CSV_FIELDS}


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)
    queries: int = 0
    seed: int = 0
    repetitions: int = 1
    settings: Settings = None

    def completed(self):
        return [row for row in self.rows if not row.skipped]

    def checksums(self):
        """Return {tree index: set of checksums} over completed rows."""
        seen = {}
        for row in self.completed():
            seen.setdefault(row.tree, set()).add(row.checksum)
        return seen

    def write_csv(self, path):
        """
        Write one CSV line per row; skipped rows keep their identity and leave
        the measurement fields empty.
        """
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=CSV_FIELDS, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow(row.to_dict())
        logger.info("wrote %d rows to %s", len(self.rows), path)

    def meta(self):
        settings = self.settings or Settings()
        return {
            "query_distribution": QUERY_DISTRIBUTION,
            "queries": self.queries,
            "seed": self.seed,
            "repetitions": self.repetitions,
            "id_width": settings.id_width,
            "mem_budget_bytes": settings.mem_budget_bytes,
            "counters": settings.counters,
            "profiles": {name: p.to_dict() for name, p in PROFILES.items()},
            "skipped": [
                {"strategy": r.strategy, "tree": r.label, "n": r.n, "reason": r.skipped}
                for r in self.rows if r.skipped
            ],
        }

    def write_meta(self, path):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.meta(), f, indent=2)
            f.write("\n")

    def summary_table(self):
        """
        Min / median / mean timings per (strategy, n, ratio).
        Returns:
            PrettyTable: One line per group.
        """
        groups = {}
        for row in self.completed():
            groups.setdefault((row.strategy, row.n, row.ratio), []).append(row)
        table = PrettyTable()
        table.field_names = [
            "Strategy", "n", "Ratio", "Runs",
            "Build ms (min/med/mean)", "Query ms (min/med/mean)", "Bytes/node",
        ]
        for (strategy, n, ratio), rows in groups.items():
            build = np.array([r.build_ms for r in rows])
            query = np.array([r.query_ms for r in rows])
            per_node = float(np.mean([r.bytes for r in rows])) / n
            table.add_row([
                strategy, n, "" if ratio is None else f"{ratio:g}", len(rows),
                f"{build.min():.1f} / {np.median(build):.1f} / {build.mean():.1f}",
                f"{query.min():.1f} / {np.median(query):.1f} / {query.mean():.1f}",
                f"{per_node:.1f}",
            ])
        return table


def peak_rss_bytes():
    """Peak resident set size of this process, or None where unsupported."""
    if resource is None:
        return None
    # ru_maxrss is in kilobytes on Linux
    return int(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss) * 1024


def _run_queries(structure, queryset):
    query = structure.query
    checksum = 0
    elapsed = 0.0
    for vs, ds in queryset.chunks():
        start = time.perf_counter()
        total = 0
        for v, d in zip(vs, ds):
            total += query(v, d)
        elapsed += time.perf_counter() - start
        checksum = (checksum + total) % _MOD
    return checksum, elapsed * 1000.0


def run_one(inp, cls, queryset, settings, measure_rss=False, index=0):
    """
    Build one strategy on one tree and run the query set against it.
    Returns:
        BenchRow: The measurements, or a skipped row when the budget is too small.
    """
    tree = inp.tree
    row = BenchRow(
        strategy=cls.name, n=tree.n, tree=index, label=inp.label,
        seed=inp.seed, ratio=inp.ratio, queries=queryset.count,
    )
    try:
        predicted = cls.predict_bytes(tree, settings)
        if predicted > settings.mem_budget_bytes:
            raise BudgetExceeded(predicted, settings.mem_budget_bytes, cls.name)
        start = time.perf_counter()
        structure = cls(tree, settings)
        row.build_ms = (time.perf_counter() - start) * 1000.0
    except CapacityExceeded as exc:
        row.skipped = str(exc)
        logger.warning("skipped %s on %s (n=%d): %s", cls.name, row.label, tree.n, exc)
        return row

    structure.counters.reset()
    row.checksum, row.query_ms = _run_queries(structure, queryset)
    row.bytes = structure.space_bytes()
    if measure_rss:
        row.rss_bytes = peak_rss_bytes()
    if structure.counters.enabled:
        jumps, ladders, lookups = structure.counters.snapshot()
        row.avg_jumps = jumps / queryset.count
        row.avg_ladder_hops = ladders / queryset.count
        row.avg_table_lookups = lookups / queryset.count
    logger.info(
        "%s %s n=%d build=%.1fms query=%.1fms bytes=%d",
        row.strategy, row.label, row.n, row.build_ms, row.query_ms, row.bytes,
    )
    return row


def run_benchmark(trees, strategies, queries=DEFAULT_QUERIES, seed=0, repetitions=1,
                  settings=None, measure_rss=False):
    """
    Build and query every strategy on every tree.
    Args:
        trees (list[BenchInput | Tree]): Trees to benchmark.
        strategies (list[type]): LevelAncestor subclasses.
        queries (int): Queries per (tree, strategy).
        seed (int): Seed of the query stream, shared by all strategies.
        repetitions (int): Rows per (tree, strategy).
        settings (Settings, optional): Budget, id width and counters.
        measure_rss (bool): Record peak RSS where the platform allows it.
    Returns:
        BenchReport: One row per (tree, strategy, repetition).
    """
    settings = settings if settings is not None else Settings.from_env()
    report = BenchReport(queries=queries, seed=seed, repetitions=repetitions, settings=settings)
    labels = {}
    for index, inp in enumerate(trees):
        if not isinstance(inp, BenchInput):
            inp = BenchInput(inp)
        if not inp.label:
            inp = replace(inp, label=f"#{index}")
        labels[index] = inp.label
        queryset = QuerySet(inp.tree, queries, seed)
        for cls in strategies:
            for _ in range(repetitions):
                report.rows.append(run_one(inp, cls, queryset, settings, measure_rss, index))
    for index, sums in report.checksums().items():
        if len(sums) > 1:
            logger.warning("checksums differ across strategies on tree %s", labels[index])
    return report


@dataclass(frozen=True)
class Counterexample:
    strategy: str
    v: int
    d: int
    got: object
    want: object

    def __str__(self):
        got = "UNDEFINED" if self.got is None else self.got
        want = "UNDEFINED" if self.want is None else self.want
        return f"{self.strategy}: LA({self.v}, {self.d}) returned {got}, expected {want}"


@dataclass
class VerifyResult:
    ok: bool = True
    checked: int = 0
    counterexample: Counterexample = None

    def __bool__(self):
        return self.ok


def _cases(tree, queries, seed, exhaustive):
    depth = tree.depth_list
    if exhaustive:
        for v in range(tree.n):
            for d in range(-1, depth[v] + 2):
                yield v, d
        return
    yield from QuerySet(tree, queries, seed)
    rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
    sample = range(tree.n) if tree.n <= 1024 else rng.integers(0, tree.n, size=1024).tolist()
    for v in sample:
        dv = depth[v]
        yield v, 0
        yield v, dv
        yield v, dv + 1
        yield v, -1


def verify(tree, strategies, queries=10_000, seed=0, exhaustive=False, settings=None):
    """
    Compare strategies against naive_la.
    Args:
        tree (Tree): Tree to check.
        strategies (list): Strategy classes, or structures already built on *tree*.
        queries (int): Random queries, on top of the adversarial cases
            d = 0, depth(v), depth(v) + 1 and -1.
        seed (int): Seed of the random queries.
        exhaustive (bool): Check every (v, d) with -1 <= d <= depth(v) + 1 instead.
    Returns:
        VerifyResult: The first counterexample, if any.
    """
    settings = settings if settings is not None else Settings.from_env()
    structures = [s if isinstance(s, LevelAncestor) else s(tree, settings) for s in strategies]
    result = VerifyResult()
    for v, d in _cases(tree, queries, seed, exhaustive):
        want = naive_la(tree, v, d)
        for structure in structures:
            try:
                got = structure.query(v, d)
            except Exception as exc:
                got = f"{type(exc).__name__}: {exc}"
            result.checked += 1
            if got != want:
                result.ok = False
                result.counterexample = Counterexample(structure.name, v, d, got, want)
                logger.warning("verification failed: %s", result.counterexample)
                return result
    return result
