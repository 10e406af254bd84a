import argparse
import json
import logging
import sys

from prettytable import PrettyTable

from core import (
    BenchInput,
    GenConfig,
    Settings,
    gen_tree,
    parse_bytes,
    parse_ratio,
    parse_strategies,
    run_benchmark,
    verify,
)
from core.bench import DEFAULT_QUERIES, DEFAULT_SEEDS, DEFAULT_SIZES
from core.registry import STRATEGIES, get_strategy
from model import (
    LevelAncestorError,
    MalformedSignature,
    NodeOutOfRange,
    parse_signature,
    read_signature_file,
    tree_stats,
    write_signature_file,
)

logger = logging.getLogger("main")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

STRATEGY_HELP = "comma separated list of " + ", ".join(STRATEGIES) + ", or 'all'"


class UsageError(Exception):
    pass


def load_tree(path, settings):
    try:
        signature = read_signature_file(path)
    except MalformedSignature as exc:
        raise UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    return parse_signature(signature, id_width=settings.id_width)


def print_stats(stats, fmt="table", out=None):
    out = out or sys.stdout
    record = stats.to_dict()
    if fmt == "json":
        out.write(json.dumps(record) + "\n")
    elif fmt == "csv":
        out.write(",".join(record) + "\n")
        out.write(",".join(str(v) for v in record.values()) + "\n")
    else:
        table = PrettyTable()
        table.field_names = ["Nodes", "Tree depth", "Avg node depth", "Leaves"]
        table.add_row([stats.n, stats.tree_depth, f"{stats.avg_node_depth:.3f}", stats.leaves])
        out.write(f"{table}\n")


def cmd_gen(args, settings):
    cfg = GenConfig(n=args.nodes, seed=args.seed, ratio=args.ratio)
    signature = gen_tree(cfg)
    write_signature_file(args.out, signature)
    logger.info("wrote %d-node tree to %s", cfg.n, args.out)
    if args.stats:
        print_stats(tree_stats(parse_signature(signature, id_width=settings.id_width)))
    return EXIT_OK


def cmd_stats(args, settings):
    fmt = "csv" if args.csv else "json" if args.json else "table"
    print_stats(tree_stats(load_tree(args.tree, settings)), fmt)
    return EXIT_OK


def cmd_verify(args, settings):
    strategies = parse_strategies(args.strategies)
    status = EXIT_OK
    for path in args.tree:
        tree = load_tree(path, settings)
        result = verify(tree, strategies, args.queries, args.seed, exhaustive=args.exhaustive, settings=settings)
        if result:
            print(f"{path}: ok ({result.checked} answers checked)")
        else:
            print(f"{path}: FAILED {result.counterexample}")
            status = EXIT_FAILED
    return status


def bench_inputs(args, settings):
    if args.trees:
        for path in args.trees:
            yield BenchInput(load_tree(path, settings), label=path)
        return
    for n in args.sizes or DEFAULT_SIZES:
        for ratio in args.ratios:
            for seed in range(args.seeds):
                cfg = GenConfig(n=n, seed=seed, ratio=ratio)
                tree = parse_signature(gen_tree(cfg), id_width=settings.id_width)
                yield BenchInput(tree, seed=seed, ratio=ratio, label=f"n={n} seed={seed} ratio={ratio:g}")


def cmd_bench(args, settings):
    strategies = parse_strategies(args.strategies)
    if args.no_counters:
        settings = settings.with_(counters=False)
    report = run_benchmark(
        bench_inputs(args, settings), strategies,
        queries=args.queries, seed=args.seed, repetitions=args.reps,
        settings=settings, measure_rss=args.rss,
    )
    if args.csv:
        report.write_csv(args.csv)
        report.write_meta(f"{args.csv}.meta.json")
    print(report.summary_table())
    for row in report.rows:
        if row.skipped:
            print(f"skipped {row.strategy} on {row.label}: {row.skipped}", file=sys.stderr)
    return EXIT_OK


def read_pairs(stream):
    """
    Yield (v, d) pairs from whitespace separated integers, as they arrive.
    Raises:
        UsageError: on a non-integer token or an unpaired trailing number.
    """
    pending = None
    for line in stream:
        for token in line.split():
            try:
                number = int(token)
            except ValueError as exc:
                raise UsageError(f"query input: {exc}") from None
            if pending is None:
                pending = number
            else:
                yield pending, number
                pending = None
    if pending is not None:
        raise UsageError("query input must hold whitespace separated 'v d' pairs")


def cmd_query(args, settings):
    tree = load_tree(args.tree, settings)
    structure = get_strategy(args.strategy).build(tree, settings.with_(counters=False))
    for v, d in read_pairs(sys.stdin):
        try:
            answer = structure.query(v, d)
        except NodeOutOfRange as exc:
            raise UsageError(str(exc)) from None
        print("UNDEFINED" if answer is None else answer, flush=True)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="main.py", description="Level-ancestor strategies: generate, verify and benchmark.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    parser.add_argument("--mem-budget", type=parse_bytes, default=None,
                        help="largest structure to build, e.g. 512M or 8G (default: LA_MEM_BUDGET or 8G)")
    parser.add_argument("--id-width", type=int, choices=[4, 8], default=None, help="bytes per stored node id (default 4)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random split tree as an LA-SIG v1 file")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ratio", type=parse_ratio, default=1.0, help="skew ratio in (0, 1], e.g. 1/10 (default 1)")
    p.add_argument("--out", required=True)
    p.add_argument("--stats", action="store_true", help="print the statistics of the generated tree")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="print tree depth, average node depth and leaf count")
    p.add_argument("--tree", required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check strategies against the naive parent walk")
    p.add_argument("--tree", nargs="+", required=True)
    p.add_argument("--strategies", default="all", help=STRATEGY_HELP)
    p.add_argument("--queries", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true", help="check every (v, d) pair")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time builds and queries and report analytic space")
    p.add_argument("--trees", nargs="+", help="LA-SIG v1 files (otherwise trees are generated)")
    p.add_argument("--sizes", type=int, nargs="+", help="generated tree sizes (default 2^17 .. 2^22)")
    p.add_argument("--seeds", type=int, default=DEFAULT_SEEDS, help="generated trees per size and ratio")
    p.add_argument("--ratios", type=parse_ratio, nargs="+", default=[1.0], help="skew ratios of generated trees")
    p.add_argument("--strategies", default="all", help=STRATEGY_HELP)
    p.add_argument("--queries", type=int, default=DEFAULT_QUERIES)
    p.add_argument("--seed", type=int, default=0, help="seed of the query stream")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--csv", help="write rows here, with a .meta.json sidecar")
    p.add_argument("--rss", action="store_true", help="record peak resident set size")
    p.add_argument("--no-counters", action="store_true",
                   help="time queries with hop counters off (the avg_* columns stay empty)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("query", help="answer 'v d' pairs read from standard input")
    p.add_argument("--tree", required=True)
    p.add_argument("--strategy", required=True, help=STRATEGY_HELP.replace("list of", "one of").replace(", or 'all'", ""))
    p.set_defaults(func=cmd_query)
    return parser


def configure_logging(verbosity):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run_cli(argv=None):
    """
    Run one subcommand.
    Returns:
        int: 0 on success, 1 when verification fails, 2 on usage or input errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        settings = Settings.from_env(mem_budget_bytes=args.mem_budget, id_width=args.id_width)
        if args.command in ("verify", "bench", "query"):
            names = args.strategy if args.command == "query" else args.strategies
            parse_strategies(names)
        return args.func(args, settings)
    except (UsageError, LevelAncestorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run_cli())
