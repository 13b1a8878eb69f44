"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from . import bridge, categorical, diagnostics, scorecard
from .archive import emit, format_archive, format_tables, load_universe, read_archive
from .compare import CompareSettings, compare
from .core import Universe
from .errors import PossibilityError, UnpairedSamples
from .synthgen import SynthConfig, generate

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _read(args) -> list:
    universe = load_universe(args.universe)
    if args.input == "-":
        return read_archive(sys.stdin, universe)
    return read_archive(args.input, universe)


def _label(universe: Universe, index: int) -> str:
    return universe.categories[index]


# -- subcommands ------------------------------------------------------------

def cmd_score(args) -> dict[str, list[dict[str, Any]]]:
    pairs = _read(args)
    universe = pairs[0].forecast.universe
    rows = [scorecard.score_pair(p) for p in pairs]
    table = [
        {"id": r.id, "alpha_star": r.alpha_star, "eta": r.eta, "delta": r.delta,
         "ignorance": r.ignorance, "nc_star": r.nc_star, "m": r.commitment,
         "peak": _label(universe, r.peak), "joint_skill": r.joint_skill}
        for r in rows
    ]
    agg = scorecard.aggregate(rows)
    summary = [{"stratum": "all", "count": agg.count, **agg.means}]
    for c, (count, means) in agg.by_category.items():
        summary.append({"stratum": _label(universe, c), "count": count, **means})
    return {"scorecard": table, "aggregate": summary}


def cmd_bridge(args) -> dict[str, list[dict[str, Any]]]:
    pairs = _read(args)
    universe = pairs[0].forecast.universe
    eps = bridge.check_epsilon(args.epsilon)
    if args.baseline:
        base_pairs = read_archive(args.baseline, universe)
        if len(base_pairs) != len(pairs) or any(
            b.observed != p.observed for b, p in zip(base_pairs, pairs)
        ):
            raise UnpairedSamples("baseline archive must hold the same observations in order")
        baselines = [bridge.convert(b.forecast) for b in base_pairs]
    else:
        baselines = [bridge.climatology_vector(universe)] * len(pairs)

    table = []
    sample = []
    for pair, base in zip(pairs, baselines):
        p = bridge.convert(pair.forecast)
        sample.append((p, pair.observed))
        s = bridge.surprise(p, pair.observed, eps)
        sb = bridge.surprise(base, pair.observed, eps)
        row: dict[str, Any] = {"id": pair.id, "obs": _label(universe, pair.observed)}
        row.update({f"p_{c}": v for c, v in zip(universe.categories, p.p)})
        row["p_ign"] = p.ignorance
        row.update(
            p_obs=p.p[pair.observed], surprise=s.surprise_bits, floored=s.floored,
            baseline_p_obs=base.p[pair.observed], baseline_surprise=sb.surprise_bits,
            ig=sb.surprise_bits - s.surprise_bits,
        )
        table.append(row)
    dec = bridge.decompose(sample, eps)
    decomposition = [{
        "n": dec.count, "groups": dec.groups, "mean_surprise": dec.mean_surprise,
        "unc": dec.unc, "dsc": dec.dsc, "rel": dec.rel, "ig_vs_base_rate": dec.information_gain,
        "epsilon": eps,
    }]
    return {"conversion": table, "decomposition": decomposition}


def _thresholds(args, universe: Universe) -> list[int]:
    if args.threshold is not None:
        t = universe.index(args.threshold)
        return [categorical.check_threshold(t, universe)]
    return list(range(1, universe.size))


def cmd_cat(args) -> dict[str, list[dict[str, Any]]]:
    pairs = _read(args)
    universe = pairs[0].forecast.universe
    rows = []
    for t in _thresholds(args, universe):
        tbl = categorical.contingency(pairs, t)
        rows.append({"threshold": _label(universe, t) + "+", "a": tbl.a, "b": tbl.b,
                     "c": tbl.c, "d": tbl.d, **categorical.binary_scores(tbl).as_dict()})
    cm = categorical.confusion(pairs)
    confusion_rows = [
        {"peak": _label(universe, i), **{c: n for c, n in zip(universe.categories, row)}}
        for i, row in enumerate(cm.counts)
    ]
    summary = [{"n": cm.n, "hss_kxk": categorical.hss_multicategory(cm)}]
    return {"thresholds": rows, "confusion": confusion_rows, "summary": summary}


def _diagram_tables(prefix: str, data: diagnostics.DiagramData, universe: Universe, with_ign: bool):
    points = [{"id": p.pair_id, "x": p.x, "y": p.y, "ignorance": p.ignorance,
               "obs": _label(universe, p.observed)} for p in data.points]
    cells = []
    for c in data.hexbins:
        cell = {"x": c.x, "y": c.y, "count": c.count}
        if with_ign:
            cell["mean_ignorance"] = c.mean_ignorance
        cells.append(cell)
    means = [{"obs": _label(universe, m.observed), "x": m.x, "y": m.y, "count": m.count}
             for m in data.category_means]
    return {f"{prefix}_points": points, f"{prefix}_hexbins": cells, f"{prefix}_means": means}


def cmd_diag(args) -> dict[str, list[dict[str, Any]]]:
    pairs = _read(args)
    universe = pairs[0].forecast.universe
    rows = [scorecard.score_pair(p) for p in pairs]
    tables: dict[str, list[dict[str, Any]]] = {}
    tables.update(_diagram_tables(
        "performance", diagnostics.performance_points(rows, args.gridsize), universe, True))
    tables.update(_diagram_tables(
        "commitment", diagnostics.commitment_points(rows, args.gridsize), universe, False))
    curve = diagnostics.reliability_curve(pairs, diagnostics.tau_grid(args.tau_step))
    tables["reliability"] = [
        {"tau": p.tau, "hit_rate": p.hit_rate, "sample_count": p.sample_count}
        for p in curve.points
    ]
    tables["reliability_baselines"] = [{"chance": curve.chance, "accuracy": curve.accuracy}]
    return tables


def cmd_compare(args) -> dict[str, list[dict[str, Any]]]:
    universe = load_universe(args.universe)
    baseline = _read(args)
    candidate = read_archive(args.candidate, universe)
    threshold = universe.index(args.threshold) if args.threshold is not None else 1
    settings = CompareSettings(
        resamples=args.resamples, confidence=args.confidence, seed=args.seed,
        threshold=threshold, epsilon=args.epsilon, paired=not args.unpaired,
    )
    report = compare(baseline, candidate, settings)
    rows = [
        {"facet": r.facet, "metric": r.metric, "baseline": r.baseline,
         "candidate": r.candidate, "delta": r.delta, "orientation": r.orientation,
         "significant": r.significant, "magnitude": r.magnitude, "verdict": r.verdict,
         "ci_low": r.ci_low, "ci_high": r.ci_high}
        for r in report.rows
    ]
    meta = [{"baseline_n": report.baseline_n, "candidate_n": report.candidate_n,
             "resamples": settings.resamples, "confidence": settings.confidence,
             "seed": settings.seed, "paired": settings.paired,
             "threshold": _label(universe, threshold) + "+", "epsilon": settings.epsilon}]
    return {"comparison": rows, "settings": meta}


def cmd_gen(args) -> str:
    universe = load_universe(args.universe)
    if universe.climatology is None:
        raise PossibilityError("synthetic generation needs a universe with climatology")
    config = SynthConfig(n=args.n, categories=universe.categories,
                         climatology=universe.climatology, seed=args.seed)
    return format_archive(generate(config).pairs)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--universe", help="universe JSON file (default: built-in SPC categories)")
    common.add_argument("--input", default="-", help="forecast archive, '-' for stdin")
    common.add_argument("--output", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--epsilon", type=float, default=bridge.DEFAULT_EPSILON,
                        help="probability floor used when scoring")
    common.add_argument("--seed", type=_u64, default=0)

    parser = _Parser(prog="possverify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("score", parents=[common], help="five-number scorecard per pair and aggregate")

    p = sub.add_parser("bridge", parents=[common], help="probability conversion, surprise, IG")
    p.add_argument("--baseline", help="archive whose forecasts serve as the IG baseline")

    p = sub.add_parser("cat", parents=[common], help="contingency scores and confusion matrix")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--threshold", help="threshold category label (e.g. SLGT for SLGT+)")
    group.add_argument("--all-thresholds", action="store_true", help="every threshold (default)")

    p = sub.add_parser("diag", parents=[common], help="diagram and reliability tables")
    p.add_argument("--tau-step", type=float, default=diagnostics.DEFAULT_TAU_STEP)
    p.add_argument("--gridsize", type=_positive_int, default=diagnostics.DEFAULT_GRIDSIZE)

    p = sub.add_parser("gen", parents=[common], help="write a synthetic forecast archive")
    p.add_argument("--n", type=_positive_int, default=800)

    p = sub.add_parser("compare", parents=[common], help="compare two model versions")
    p.add_argument("--candidate", required=True, help="candidate archive")
    p.add_argument("--resamples", type=_positive_int, default=1000)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--threshold", help="threshold category label for POD/FAR/CSI/PSS")
    p.add_argument("--unpaired", action="store_true", help="resample the two archives independently")
    return parser


COMMANDS = {
    "score": cmd_score, "bridge": cmd_bridge, "cat": cmd_cat,
    "diag": cmd_diag, "compare": cmd_compare, "gen": cmd_gen,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.command](args)
        text = result if isinstance(result, str) else format_tables(result, args.format)
        emit(text, args.output)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PossibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
