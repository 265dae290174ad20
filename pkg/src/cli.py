"""
Command-line interface for FolnerLab.

Subcommands wrap the library through core.experiments.ExperimentRunner, so
every result is cached and carries its resolved configuration. Reports go
to stdout (text, or the full record with --json); logs never carry result
payloads.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .amen.folner import Mode, default_exclusion
from .amen.freewords import GENERATOR_SETS
from .amen.profile import SAMPLER_KINDS, SAMPLERS
from .config import ConfigManager, RunConfig, get_log_level, parse_exclusion, parse_int_list, parse_int_range
from .core.experiments import ExperimentRunner
from .core.paths import PathManager
from .data.cache import ResultCache, serialize_record
from .errors import BudgetExceeded, CertificateRefused, ConfigError, FolnerLabError, InputError
from .folog.parser import parse, parse_sentence_file
from .folog.sentences import NAMED_SENTENCES, folner_sentence
from .groups.spec import parse_family_spec
from .output.export import class_table
from .utils.helpers import format_fraction
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)

VERSION = "FolnerLab 0.1.0"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUSED = CertificateRefused.exit_code


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Returns:
        Parser with global flags and one subparser per command
    """
    parser = argparse.ArgumentParser(
        prog="folnerlab",
        description="FolnerLab - finite experiments on SL2 over characteristic-2 towers, Følner sets and first-order sentences",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Centralizer of a split torus element, with brute-force cross-check
  python -m src.cli centralizer sl2:gf2_2 "[[2,0],[0,3]]"

  # Least c-Følner set for the generators of SL2(GF(4))
  python -m src.cli cfolner sl2:gf2_2 --epsilon 1/4 --min-size 2

  # Uniformity profile over symmetric groups
  python -m src.cli --config run.ini profile sym:2..5 --mode translation

  # First-order sentences from a file
  python -m src.cli fo sl2:gf2_1..3 input/sentences.fo
        """
    )

    # Configuration file
    parser.add_argument("--config", "-c", type=Path, help="Path to flat key = value configuration file")

    # Run options
    parser.add_argument("--seed", type=int, help="Sampler seed")
    parser.add_argument("--budget", type=int, help="Work budget for enumeration, subset search and evaluation")
    parser.add_argument("--out", type=Path, help="Output directory (records, profiles)")
    parser.add_argument("--json", action="store_true", help="Print the full JSON record instead of text")
    parser.add_argument(
        "--exclude-identity",
        type=parse_exclusion,
        default=None,
        metavar="BOOL",
        help="Forbid the identity in T (auto: on for conjugation, off for translation)",
    )
    parser.add_argument("--no-cache", action="store_true", help="Neither read nor write cached records")

    # Logging options
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=get_log_level(),
        help="Logging level"
    )
    parser.add_argument("--log-file", type=Path, help="Log to file")

    # Utility options
    parser.add_argument("--create-template", type=Path, help="Create template configuration file and exit")
    parser.add_argument("--version", action="version", version=VERSION)

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("centralizer", help="Structural centralizer with brute-force cross-check")
    p.add_argument("group", help="sl2:gf2_k or sl2:gfp_p")
    p.add_argument("element", help="Matrix [[a,b],[c,d]]")

    p = sub.add_parser("ct", help="Commutative-transitivity check")
    p.add_argument("group", help="sl2:gf2_k or sl2:gfp_p")
    p.add_argument("--exhaustive", action="store_true", help="Scan every element, not one per class")

    p = sub.add_parser("icc", help="Explicit conjugates and class growth along a tower")
    p.add_argument("group", help="sl2:gf2_k")
    p.add_argument("element", help="Diagonal or [[1,s],[0,1]] matrix")
    p.add_argument("--count", type=int, default=3, help="Number of conjugates")
    p.add_argument("--degrees", type=parse_int_list, help="Ascending degrees for class growth, e.g. 2,4")

    p = sub.add_parser("classes", help="Conjugacy classes of a finite group")
    p.add_argument("group", help="Group spec")

    for name, help_text in (("folner", "Følner sets (translation)"), ("cfolner", "c-Følner sets (conjugation)")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("group", nargs="?", help="Group or family spec (default: GROUPS)")
        p.add_argument("--epsilon", help="Exact rational p/q (default: every value of EPSILONS)")
        p.add_argument("--S", dest="S", help="Semicolon separated elements (default: generators)")
        p.add_argument("--T", dest="T", help="Certify this set instead of searching")
        p.add_argument("--min-size", type=int, default=1, help="Least admissible |T|")

    p = sub.add_parser("profile", help="Uniformity profile over a family")
    p.add_argument("family", nargs="?", help="Family spec, e.g. sym:2..5 (default: GROUPS)")
    p.add_argument("--mode", type=Mode.parse, default=Mode.CONJUGATION, help="translation or conjugation")
    p.add_argument(
        "--samplers", "--sampler",
        default=",".join(SAMPLERS),
        help=f"Comma separated samplers out of {', '.join(SAMPLER_KINDS)}",
    )
    p.add_argument("--n-range", type=parse_int_range, help="Values of n, e.g. 1..4")

    p = sub.add_parser("fo", help="Evaluate first-order sentences")
    p.add_argument("group", help="Group or family spec")
    p.add_argument("sentences", nargs="?", type=Path, help="Sentence file")
    p.add_argument("--sentence", help="Single sentence text")
    p.add_argument("--named", choices=sorted(NAMED_SENTENCES), help="Built-in sentence")
    p.add_argument("--folner", type=parse_int_list, metavar="N,M", help="Følner sentence with |S| <= N, N <= |T| <= M")
    p.add_argument("--mode", type=Mode.parse, default=Mode.CONJUGATION, help="Mode of the Følner sentence")
    p.add_argument("--non-strict", action="store_true", help="Følner sentence with defect <= 1/N")

    p = sub.add_parser("freewords", help="Relation search among reduced words over GF(2)(t)")
    p.add_argument("--max-len", type=int, help="Longest word length")
    p.add_argument("--generators", choices=GENERATOR_SETS, default="hyperbolic", help="Generator pair")

    p = sub.add_parser("cache", help="Result cache")
    p.add_argument("action", choices=["info", "clear"])

    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
        Parsed arguments
    """
    return build_parser().parse_args(argv)


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "seed": args.seed,
        "out_dir": args.out,
        "exclude_identity": args.exclude_identity,
    }
    if args.budget is not None:
        overrides.update(enum_budget=args.budget, subset_budget=args.budget, eval_budget=args.budget)
    if getattr(args, "n_range", None) is not None:
        overrides["n_range"] = args.n_range
    return overrides


def _fo_sentences(args: argparse.Namespace, config: RunConfig) -> list:
    if args.sentences is not None:
        try:
            text = args.sentences.read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"Cannot read sentence file {args.sentences}: {e}") from e
        return parse_sentence_file(text)
    if args.sentence is not None:
        return [(1, parse(args.sentence))]
    if args.named is not None:
        return [(1, NAMED_SENTENCES[args.named]())]
    if args.folner is not None:
        if len(args.folner) != 2:
            raise ConfigError(f"--folner takes N,M, got {args.folner}")
        n, m = args.folner
        f = folner_sentence(
            n, m, args.mode,
            exclude_identity=default_exclusion(args.mode, config.exclude_identity),
            strict=not args.non_strict,
            cap=config.formula_budget,
        )
        return [(1, f)]
    raise ConfigError("No sentence given (file, --sentence, --named or --folner)")


# -- text reports -------------------------------------------------------------

def _format_centralizer(o: Dict[str, Any]) -> str:
    lines = [f"Centralizer of {o['element']} in {o['group']}"]
    if o.get("kind"):
        lines.append(f"  kind: {o['kind']}, order {o['order']} ({o['order_formula']})")
        lines.append(f"  conjugator: {o['conjugator']}")
        lines.append(f"  brute-force agreement: {'OK' if o['agreement'] else 'MISMATCH'}")
        jordan = o.get("jordan")
        if jordan:
            lines.append(f"  Jordan form: {jordan['form']} via {jordan['conjugator']} (gf2_{jordan['extension_level']})")
    else:
        lines.append(f"  order: {o['bruteforce_order']} (brute force)")
    if o["non_ct_witness"]:
        lines.append("  centralizer is not abelian: non-CT witness")
    return "\n".join(lines)


def _format_ct(o: Dict[str, Any]) -> str:
    verdict = "CT holds" if o["holds"] else "CT fails"
    lines = [f"{o['group']} (order {o['order']}): {verdict} ({o['checked']} centralizers scanned)"]
    if o["witness"]:
        g, h1, h2 = o["witness"]
        lines.append(f"  witness: {h1} and {h2} centralize {g} but do not commute")
    return "\n".join(lines)


def _format_icc(o: Dict[str, Any]) -> str:
    where = f"{o['group']}, escalated to gf2_{o['degree']}" if o.get("escalated") else o["group"]
    lines = [f"Conjugates of {o['element']} in {where}:"]
    lines.extend(f"  {c}" for c in o["conjugates"])
    if o.get("growth"):
        lines.append("Class growth: " + " -> ".join(str(row["class_size"]) for row in o["growth"]))
        lines.extend(f"  gf2_{row['degree']}: {row['class_size']}" for row in o["growth"])
    return "\n".join(lines)


def _format_classes(o: Dict[str, Any]) -> str:
    table = class_table(o["classes"]).to_string(index=False)
    sizes = ", ".join(str(c["size"]) for c in o["classes"])
    return f"{o['group']}: order {o['order']}, {o['count']} classes, sizes {{{sizes}}}\n{table}"


def _format_folner(o: Dict[str, Any]) -> str:
    cert = o.get("certificate")
    if o["status"] == "exhausted":
        return f"No witness: sizes up to {o['lower_bound'] - 1} are ruled out"
    lines = [f"status: {o['status']}"]
    if "lower_bound" in o:
        lines.append(f"|T| = {o['size']} (lower bound {o['lower_bound']}, orbit sizes {o['orbit_sizes']})")
    lines.append(f"defect {cert['defect']} < epsilon {cert['epsilon']} ({cert['mode']})")
    lines.append(f"T = {{{', '.join(cert['T'])}}}")
    return "\n".join(lines)


def _format_sweep(o: Dict[str, Any]) -> str:
    lines = [f"Sweep ({o['mode']}): {len(o['cells'])} cells"]
    for c in o["cells"]:
        size = "-" if c["size"] is None else c["size"]
        defect = "-" if c["defect"] is None else c["defect"]
        lines.append(f"  {c['group']:<16} epsilon={c['epsilon']:<6} {c['status']:<12} |T|={size:<4} defect={defect}")
    return "\n".join(lines)


def _format_profile(o: Dict[str, Any]) -> str:
    lines = [f"Profile ({o['mode']}): {o['rows']} cells"]
    for entry in o["f_hat"]:
        f_hat = "-" if entry["f_hat"] is None else entry["f_hat"]
        lines.append(f"  {entry['level']:<16} n={entry['n']:<3} f_hat={f_hat}{'' if entry['exact'] else ' *'}")
    lines.append(f"CSV: {o['csv']}")
    return "\n".join(lines)


def _format_fo(o: Dict[str, Any]) -> str:
    lines = []
    for r in o["results"]:
        line = f"{r['group']}: line {r['line']}: {'true' if r['value'] else 'false'}"
        if r.get("witness"):
            line += f"  witness {r['witness']}"
        if r.get("counterexample"):
            line += f"  counterexample {r['counterexample']}"
        lines.append(line)
    return "\n".join(lines)


def _format_freewords(o: Dict[str, Any]) -> str:
    lines = [f"{o['words_checked']} reduced words checked: {o['verdict']}"]
    for length, count in o["counts"].items():
        lines.append(f"  length {length}: {count} words, max entry degree {o['max_degree'][length]}")
    if o["relations"]:
        lines.append(f"  relations: {', '.join(o['relations'][:10])}")
    return "\n".join(lines)


FORMATTERS: Dict[str, Callable[[Dict[str, Any]], str]] = {
    "centralizer": _format_centralizer,
    "ct": _format_ct,
    "icc": _format_icc,
    "classes": _format_classes,
    "folner": _format_folner,
    "cfolner": _format_folner,
    "folner_sweep": _format_sweep,
    "cfolner_sweep": _format_sweep,
    "profile": _format_profile,
    "fo": _format_fo,
    "freewords": _format_freewords,
}


def _dispatch(args: argparse.Namespace, runner: ExperimentRunner):
    command = args.command
    if command == "centralizer":
        return runner.centralizer(args.group, args.element)
    if command == "ct":
        return runner.ct(args.group, exhaustive=args.exhaustive)
    if command == "icc":
        return runner.icc(args.group, args.element, count=args.count, degrees=args.degrees)
    if command == "classes":
        return runner.classes(args.group)
    if command in ("folner", "cfolner"):
        mode = Mode.TRANSLATION if command == "folner" else Mode.CONJUGATION
        groups = [G.spec for G in parse_family_spec(args.group or runner.config.groups)]
        epsilons = [args.epsilon] if args.epsilon is not None else [format_fraction(e) for e in runner.config.epsilons]
        options = {"S": args.S, "T": args.T, "min_size": args.min_size}
        if len(groups) == 1 and len(epsilons) == 1:
            return runner.folner(groups[0], mode, epsilons[0], **options)
        return runner.folner_sweep(groups, mode, epsilons, **options)
    if command == "profile":
        samplers = [s.strip() for s in args.samplers.split(",") if s.strip()]
        return runner.profile(args.family or runner.config.groups, args.mode, samplers=samplers)
    if command == "fo":
        return runner.fo(args.group, _fo_sentences(args, runner.config))
    if command == "freewords":
        return runner.freewords(args.max_len, args.generators)
    raise ValueError(f"Unknown command '{command}'")


def _run_cache_command(args: argparse.Namespace, config: RunConfig) -> int:
    cache = ResultCache(PathManager(config.out_dir).get_records_dir())
    if args.action == "clear":
        removed = cache.clear()
        print(f"Removed {removed} cached records")
        return EXIT_OK
    size = cache.size()
    if args.json:
        print(serialize_record({"size": size, "records": cache.list_records()}), end="")
    else:
        print(f"{size['records']} records, {size['total_mb']} MB in {cache.records_dir}")
        for item in cache.list_records():
            print(f"  {item['key']}  {item['command']:<12} {item['finished_at']}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for CLI.

    Returns:
        Exit code: 0 success, 2 refusal, 3 budget exhausted, 4 input error,
        1 unexpected error
    """
    args = parse_arguments(argv)

    # Setup logging; JSON reports keep stdout clean
    setup_logging(level=args.log_level, log_file=args.log_file, stream=sys.stderr if args.json else None)

    try:
        # Handle utility commands
        if args.create_template:
            ConfigManager.create_default_config(args.create_template)
            print(f"Created template configuration: {args.create_template}")
            return EXIT_OK

        if args.command is None:
            build_parser().print_usage()
            return EXIT_ERROR

        config = ConfigManager(config_file=args.config, cli_overrides=_overrides(args)).load_config()

        if args.command == "cache":
            return _run_cache_command(args, config)

        runner = ExperimentRunner(config, use_cache=not args.no_cache)
        record, cached = _dispatch(args, runner)
        if cached:
            logger.info("Result served from cache")

        outputs = record["outputs"]
        if args.json:
            print(serialize_record(record), end="")
        else:
            print(FORMATTERS[record["command"]](outputs))

        if args.command in ("folner", "cfolner") and outputs.get("status") == "exhausted":
            return EXIT_REFUSED
        return EXIT_OK

    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_ERROR

    except BudgetExceeded as e:
        logger.error(f"Budget exhausted: {e}")
        best = getattr(e.best_so_far, "certificate", None)
        if best is not None:
            print(f"Best so far ({e.best_so_far.status.value}): |T| = {best.size}, defect {best.defect}")
        return e.exit_code

    except FolnerLabError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code

    except Exception as e:
        logger.error(f"Error: {e}", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
