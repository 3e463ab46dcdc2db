import logging

from benchmark import (
    SyntheticSpec,
    compare_configs,
    compute_signals,
    format_curve,
    format_reports,
    generate,
    learning_curve,
    report_lines,
)
from cbr import Query, RetrievalConfig, retrieve
from commands.common import EXIT_USAGE, CommandResult, failure, open_memory, read_json_file
from config import BENCH_BOOTSTRAP, BENCH_CASES, BENCH_CURVE_SIZES, BENCH_QUERIES, RETRIEVAL_K
from memory import replay_cases
from utils.timeHelper import now_ts

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("cbr", help="Case retrieval: benchmark, learning curve, store queries")
    actions = parser.add_subparsers(dest="cbr_command", required=True)

    bench = actions.add_parser("bench", help="Compare retrieval configurations on the synthetic benchmark")
    bench.add_argument("--cases", type=int, default=BENCH_CASES)
    bench.add_argument("--queries", type=int, default=BENCH_QUERIES)
    bench.add_argument("--bootstrap", type=int, default=BENCH_BOOTSTRAP, help="Bootstrap resamples")
    bench.set_defaults(handler=run_bench)

    curve = actions.add_parser("curve", help="Hybrid P@K against case-base size")
    curve.add_argument("--cases", type=int, default=BENCH_CASES)
    curve.add_argument("--queries", type=int, default=BENCH_QUERIES)
    curve.add_argument("--sizes", default=",".join(str(size) for size in BENCH_CURVE_SIZES),
                       help="Comma-separated case-base sizes")
    curve.set_defaults(handler=run_curve)

    query = actions.add_parser("query", help="Retrieve cases from the state directory's case store")
    query.add_argument("text", help="Query text")
    query.add_argument("--domain", help="Query domain")
    query.add_argument("--k", type=int, default=RETRIEVAL_K)
    query.add_argument("--config", help="Retrieval configuration JSON file")
    query.set_defaults(handler=run_query)
    return parser


def _spec(args):
    return SyntheticSpec.scaled(n_cases=args.cases, n_queries=args.queries, seed=args.seed)


def run_bench(args):
    benchmark = generate(_spec(args))
    reports = compare_configs(benchmark, n_resamples=args.bootstrap, seed=args.seed)
    result = CommandResult()
    if args.json:
        result.lines.extend(report_lines(reports))
    else:
        result.emit(f"N={len(benchmark.cases)}, {len(benchmark.queries)} queries, seed {args.seed}")
        result.emit(format_reports(reports))
    return result


def run_curve(args):
    try:
        sizes = [int(size) for size in args.sizes.split(",") if size.strip()]
    except ValueError:
        return failure(f"--sizes must be comma-separated integers (got {args.sizes!r})", EXIT_USAGE)
    if not sizes or min(sizes) < 1:
        return failure("--sizes needs at least one positive size", EXIT_USAGE)

    benchmark = generate(_spec(args))
    points = learning_curve(benchmark, sizes, table=compute_signals(benchmark), seed=args.seed)
    result = CommandResult()
    if args.json:
        result.lines.extend(report_lines(points))
    else:
        result.emit(format_curve(points))
    return result


def run_query(args):
    memory = open_memory(args)
    cases = replay_cases(memory)
    if args.config:
        config = RetrievalConfig.from_document({**read_json_file(args.config), "k": args.k})
    else:
        config = RetrievalConfig(k=args.k)
    results = retrieve(Query(args.text, args.domain), cases, config, now=now_ts())

    result = CommandResult()
    if args.json:
        for scored in results:
            result.record(scored.to_record())
        return result
    result.emit(f"{len(results)} of {len(cases)} cases (K={config.k})")
    for rank, scored in enumerate(results, start=1):
        signals = " ".join(f"{name}={value:.3f}" for name, value in scored.signals.items())
        flag = " [degraded]" if scored.degraded else ""
        result.emit(f"{rank}. {scored.case_id} fused={scored.fused:.4f} {signals}{flag}")
    return result
