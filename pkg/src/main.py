from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.cabling import cable, cable_census
from src.certify import (
    Certificate,
    asymptotic_check,
    bounds_consistent,
    first_condition_indicators,
    good_certificate,
    kauffman_lower_bound,
    verify_certificate,
)
from src.config import (
    CABLE_CROSSING_LIMIT,
    DEFAULT_BRACKET_GUARD,
    DEFAULT_CHUNK,
    DEFAULT_KHOVANOV_GUARD,
    ORACLE_LIMIT,
    RunConfig,
    parse_m_list,
    resolve_threads,
)
from src.diagram import Diagram, build_diagram
from src.errors import AtomcertError, ConfigError, GuardExceeded
from src.gauss import serialize_gauss
from src.khovanov import cube, euler_check, homology, lemma_certificate, thickness
from src.loader import load_corpus, load_gauss
from src import report
from src.sampler import DEFAULT_SEED, random_corpus
from src.statesum import atom, bracket, bracket_oracle, is_good, span_report
from src.validator import validate


logger = logging.getLogger("atomcert")

LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"

# (text, json-able dict) produced by every command handler.
Output = Tuple[str, Dict[str, Any]]


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1 like every other input error."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a JSON report instead of text")
    common.add_argument("--out", default="", help="Also write the JSON report to this path (e.g. out/report.json)")
    common.add_argument("--bracket-guard", type=int, default=DEFAULT_BRACKET_GUARD,
                        help="Refuse bracket enumeration above this many crossings")
    common.add_argument("--khovanov-guard", type=int, default=DEFAULT_KHOVANOV_GUARD,
                        help="Refuse Khovanov complexes above this many crossings")
    common.add_argument("--force", action="store_true", help="Ignore the crossing guards")
    common.add_argument("--threads", type=int, default=None,
                        help="Worker processes (default: ATOMCERT_THREADS, then CPU count)")
    common.add_argument("--chunk", type=int, default=DEFAULT_CHUNK, help="States per numpy batch")
    common.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Diagnostics level on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    """CLI: one subcommand per operation, shared guard/output options on each."""
    parser = _Parser(prog="atomcert", description="Crossing-number certificates for classical and virtual links")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common_options()

    def single(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="Path to a .gauss file")
        return p

    single("validate", "Parse, check invariants, report carter genus and splitness")
    p = single("bracket", "Kauffman bracket polynomial")
    p.add_argument("--oracle", action="store_true", help="Use the recursive skein expansion (small n only)")
    single("atom", "Extreme-state circles, Euler characteristic, genus")
    single("good", "Whether no atom cell touches itself at a crossing")
    single("span", "Span of the bracket against 4n + 2(chi - 2)")

    p = single("cable", "Blackboard m-cable, printed as .gauss")
    p.add_argument("--m", type=int, required=True, help="Number of parallel copies")
    p.add_argument("--census", action="store_true", help="Print the cell census instead of the cabled code")
    p.add_argument("--span", action="store_true", help="With --census, also compute the cable's span")

    single("khovanov", "GF(2) Khovanov homology table (TSV) and thickness")
    single("certify", "Span and good-diagram crossing-number certificates")

    p = single("asymptotic", "Finite-m evidence for the cabling hypothesis on K # mirror K")
    p.add_argument("--eps", default="1", help="Positive rational epsilon, e.g. 1 or 1/2")
    p.add_argument("--m", default="1,2", help="Comma-separated cabling multiplicities")

    p = single("verify", "Re-check a JSON certificate against its diagram")
    p.add_argument("--certificate", required=True, help="Path to a certificate JSON file")

    p = sub.add_parser("corpus", parents=[common], help="Batch summary (TSV) over .gauss files")
    p.add_argument("inputs", nargs="*", help="Directories or .gauss files")
    p.add_argument("--random", type=int, default=0, help="Sweep N generated codes instead of files")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for --random")
    p.add_argument("--max-n", type=int, default=6, help="Largest crossing count for --random")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    if args.command == "corpus":
        inputs = tuple(Path(p) for p in args.inputs)
    else:
        inputs = (Path(args.input),)
    epsilon = Fraction(1)
    ms: Tuple[int, ...] = (1, 2)
    if args.command == "asymptotic":
        try:
            epsilon = Fraction(args.eps)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"--eps expects a rational number, got {args.eps!r}")
        ms = parse_m_list(args.m)
    elif args.command == "cable":
        ms = (args.m,)
    return RunConfig(
        inputs=inputs,
        output_format="json" if args.json else "text",
        bracket_guard=args.bracket_guard,
        khovanov_guard=args.khovanov_guard,
        force=args.force,
        threads=resolve_threads(args.threads),
        epsilon=epsilon,
        ms=ms,
        chunk=args.chunk,
        out=Path(args.out) if args.out else None,
        log_level=args.log_level,
    ).validate()


# ---------- handlers ----------

def _validate(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    issues = validate(d)
    for issue in issues:
        if issue.category == "topology" and "split" in issue.message:
            logger.warning("%s: %s", cfg.inputs[0], issue.message)
    return report.format_validation(d, issues), report.validation_to_dict(d, issues)


def _bracket(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    if args.oracle:
        poly = bracket_oracle(d, limit=d.n if cfg.force else ORACLE_LIMIT)
    else:
        poly = bracket(d, guard=cfg.bracket_limit, threads=cfg.threads, chunk=cfg.chunk)
    return report.format_bracket(poly), report.bracket_to_dict(poly)


def _atom(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    data = atom(d)
    return report.format_atom(data), report.atom_to_dict(data)


def _good(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    result = is_good(d)
    return report.format_good(result), report.good_to_dict(result)


def _span(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    result = span_report(d, guard=cfg.bracket_limit, threads=cfg.threads, chunk=cfg.chunk)
    return report.format_span(result), report.span_to_dict(result)


def _cable(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    m = cfg.ms[0]
    if args.census:
        census = cable_census(d, m, with_span=args.span, guard=cfg.bracket_limit,
                              threads=cfg.threads, chunk=cfg.chunk)
        return report.format_census(census), report.census_to_dict(census)
    cabled = cable(d, m, limit=None if cfg.force else CABLE_CROSSING_LIMIT)
    text = serialize_gauss(cabled.code)
    return text, {"m": m, "crossings": cabled.n, "gauss": text}


def _khovanov(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    complex_ = cube(d, guard=cfg.khovanov_limit)
    table = homology(complex_)
    thick = thickness(table)
    euler = None
    try:
        poly = bracket(d, guard=cfg.bracket_limit, threads=cfg.threads, chunk=cfg.chunk)
        euler = euler_check(d, table, poly)
    except GuardExceeded as exc:
        logger.info("skipping euler check: %s", exc)
    lemma = lemma_certificate(d, complex_=complex_)
    return (report.format_khovanov(table, thick, euler, lemma),
            report.khovanov_to_dict(table, thick, euler, lemma))


def _certify(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    span_result = kauffman_lower_bound(d, guard=cfg.bracket_limit, threads=cfg.threads, chunk=cfg.chunk)
    good_result = good_certificate(d, bracket_guard=cfg.bracket_limit, khovanov_guard=cfg.khovanov_limit,
                                   threads=cfg.threads, chunk=cfg.chunk)
    consistent = bounds_consistent(span_result, good_result)
    indicators = first_condition_indicators(d, guard=cfg.bracket_limit, threads=cfg.threads, chunk=cfg.chunk)
    return (report.format_certify(span_result, good_result, consistent, indicators),
            report.certify_to_dict(span_result, good_result, consistent, indicators))


def _asymptotic(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    result = asymptotic_check(d, epsilon=cfg.epsilon, ms=cfg.ms, guard=cfg.bracket_limit,
                              threads=cfg.threads, chunk=cfg.chunk)
    return report.format_asymptotic(result), report.asymptotic_to_dict(result)


def _verify(d: Diagram, cfg: RunConfig, args: argparse.Namespace) -> Output:
    path = Path(args.certificate)
    if not path.exists():
        raise FileNotFoundError(f"Missing file: {path}")
    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not a JSON certificate ({exc})")
    result = verify_certificate(data, d, guard=cfg.bracket_limit, threads=cfg.threads)
    lines = [f"certificate ok: {str(result.ok).lower()}"]
    lines.extend(f"- {failure}" for failure in result.failures)
    return "\n".join(lines), {"ok": result.ok, "failures": list(result.failures)}


HANDLERS: Dict[str, Callable[[Diagram, RunConfig, argparse.Namespace], Output]] = {
    "validate": _validate,
    "bracket": _bracket,
    "atom": _atom,
    "good": _good,
    "span": _span,
    "cable": _cable,
    "khovanov": _khovanov,
    "certify": _certify,
    "asymptotic": _asymptotic,
    "verify": _verify,
}


# ---------- corpus ----------

def _corpus_row(name: str, d: Diagram, cfg: RunConfig) -> Dict[str, Any]:
    data = atom(d)
    good = is_good(d)
    try:
        span = span_report(d, guard=cfg.bracket_limit, threads=cfg.threads, chunk=cfg.chunk)
    except GuardExceeded as exc:
        logger.info("%s: %s", name, exc)
        return report.corpus_row(name, d, data, good, None, None)

    result = good_certificate(d, bracket_guard=cfg.bracket_limit, khovanov_guard=cfg.khovanov_limit,
                              threads=cfg.threads, chunk=cfg.chunk)
    if not isinstance(result, Certificate):
        result = kauffman_lower_bound(d, report=span)
    return report.corpus_row(name, d, data, good, span, result)


def _corpus_sources(args: argparse.Namespace, cfg: RunConfig) -> List[Tuple[str, Optional[Diagram], Optional[str]]]:
    if args.random > 0:
        codes = random_corpus(seed=args.seed, count=args.random, max_crossings=args.max_n)
        return [(f"random-{k:04d}", build_diagram(code), None) for k, code in enumerate(codes)]
    if not cfg.inputs:
        raise ConfigError("corpus needs input paths or --random N")
    return [(e.path.name, e.diagram, e.error) for e in load_corpus(list(cfg.inputs))]


def _corpus(args: argparse.Namespace, cfg: RunConfig) -> Output:
    rows = []
    for name, d, error in _corpus_sources(args, cfg):
        if d is None:
            rows.append(report.corpus_error_row(name, error or "unreadable"))
            continue
        try:
            rows.append(_corpus_row(name, d, cfg))
        except AtomcertError as exc:
            logger.error("%s: %s", name, exc)
            rows.append(report.corpus_error_row(name, str(exc)))
    return report.corpus_tsv(rows).rstrip("\n"), report.corpus_to_dict(rows)


def _emit(text: str, payload: Dict[str, Any], cfg: RunConfig) -> None:
    if cfg.output_format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)

    # Optional JSON file (for pipelines / regression testing / downstream tooling).
    if cfg.out is not None:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        with cfg.out.open("w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, ensure_ascii=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Returns an exit code suitable for scripts/CI:
    0 = success, 1 = input error, 2 = guard refusal, 3 = internal invariant failure.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr)

    try:
        cfg = _config(args)
        if args.command == "corpus":
            text, payload = _corpus(args, cfg)
        else:
            d = load_gauss(cfg.inputs[0])
            text, payload = HANDLERS[args.command](d, cfg, args)
    except AtomcertError as exc:
        logger.error("%s", exc)
        return exc.exit_code
    except FileNotFoundError as exc:
        logger.error("%s", exc)
        return 1

    _emit(text, payload, cfg)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
