from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import SET_KINDS, enumerate_set, unit_inverses
from .classify import (
    DECOMPOSITION_MODES,
    FACTORIZATION_MODES,
    available_predicates,
    classify_ring,
    decomposition_witness,
    factorization_witness,
    verify_witness,
)
from .config import CONFIG_FILENAME, WorkbenchConfig, load_config
from .corpus import available_corpora, build_corpus, get_corpus_preset
from .errors import ConsistencyError, InvalidParameter
from .report import Report, SearchReport, SetListing, WitnessReport, render_report
from .rings import DEFAULT_MAX_ORDER, StarRing
from .specfile import SpecDocument, build_star_ring, parse_spec_document
from .theorems import (
    DEFAULT_MATRIX_SIZE,
    available_claim_ids,
    check_claim,
    run_claim_suite,
    separation_pairs,
    separation_search,
    validate_claim_ids,
)

DEFAULT_CORPUS = "default"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Runtime:
    max_order: int
    corpus: str
    workers: int
    json: bool
    seed: int | None
    sample: int
    timing: bool
    claim_ids: list[str]


def resolve_config_path(explicit_config: str | None, no_config: bool, *, cwd: Path | None = None) -> Path | None:
    if no_config:
        return None
    if explicit_config:
        return Path(explicit_config).expanduser().resolve()
    return (cwd or Path.cwd()) / CONFIG_FILENAME


def resolve_runtime(args: argparse.Namespace, cfg: WorkbenchConfig) -> Runtime:
    corpus = getattr(args, "corpus", None) or cfg.corpus or DEFAULT_CORPUS
    preset = get_corpus_preset(corpus)

    max_order = cfg.max_order or DEFAULT_MAX_ORDER
    if args.max_order is not None:
        max_order = args.max_order

    workers = cfg.workers or 1
    if getattr(args, "workers", None) is not None:
        workers = args.workers

    as_json = bool(cfg.json)
    if args.json is not None:
        as_json = args.json

    seed = cfg.seed
    if getattr(args, "seed", None) is not None:
        seed = args.seed

    sample = cfg.sample or 0
    if getattr(args, "sample", None) is not None:
        sample = args.sample

    timing = bool(cfg.timing)
    if getattr(args, "timing", None) is not None:
        timing = args.timing

    claim_ids = list(getattr(args, "claim", None) or cfg.include or available_claim_ids())
    if cfg.exclude:
        excluded = set(cfg.exclude)
        claim_ids = [claim_id for claim_id in claim_ids if claim_id not in excluded]

    if max_order <= 0:
        raise ValueError("max order must be > 0")
    if workers <= 0:
        raise ValueError("workers must be > 0")
    if sample < 0:
        raise ValueError("sample count must be >= 0")
    if seed is not None and seed < 0:
        raise ValueError("seed must be >= 0")
    if seed is not None and sample == 0:
        logger.debug("seed %s ignored: sampling is off", seed)

    unknown = validate_claim_ids(claim_ids + list(cfg.exclude))
    if unknown:
        raise ValueError(f"Unknown claim ids in resolved config: {', '.join(unknown)}")

    logger.debug("runtime: corpus=%s (%s) max_order=%d workers=%d", corpus, preset.description, max_order, workers)
    return Runtime(
        max_order=max_order,
        corpus=corpus,
        workers=workers,
        json=as_json,
        seed=seed,
        sample=sample,
        timing=timing,
        claim_ids=claim_ids,
    )


def read_spec_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source).expanduser()
    if not path.is_file():
        raise ValueError(f"ring-spec file not found: {path}")
    return path.read_text(encoding="utf-8")


def load_star_ring(args: argparse.Namespace, runtime: Runtime) -> tuple[StarRing, SpecDocument]:
    """Build the ring a spec document names; a document cap applies unless --max-order was given."""
    document = parse_spec_document(read_spec_text(args.spec))
    cap = runtime.max_order
    if args.max_order is None and document.settings.max_order is not None:
        cap = document.settings.max_order
    return build_star_ring(document.ring, max_order=cap), document


def output_mode(args: argparse.Namespace, runtime: Runtime, document: SpecDocument | None = None) -> str:
    if args.json is None and document is not None and document.settings.output is not None:
        return document.settings.output
    return "machine" if runtime.json else "human"


def emit(report: Report, mode: str) -> None:
    sys.stdout.write(render_report(report, mode))


def _error(message: str) -> int:
    print(f"Error: {message}", file=sys.stderr)
    return 2


def _prepare(args: argparse.Namespace) -> Runtime:
    config_path = resolve_config_path(args.config, args.no_config)
    cfg = load_config(config_path) if config_path is not None else WorkbenchConfig()
    return resolve_runtime(args, cfg)


def _run(args: argparse.Namespace, body) -> int:
    try:
        runtime = _prepare(args)
        return body(runtime)
    except ValueError as err:
        return _error(str(err))
    except ConsistencyError as err:
        print(f"Error: internal cross-check failed: {err}", file=sys.stderr)
        return 1


def cmd_classify(args: argparse.Namespace) -> int:
    def body(runtime: Runtime) -> int:
        s, document = load_star_ring(args, runtime)
        emit(classify_ring(s), output_mode(args, runtime, document))
        return 0

    return _run(args, body)


def cmd_sets(args: argparse.Namespace) -> int:
    def body(runtime: Runtime) -> int:
        s, document = load_star_ring(args, runtime)
        elements = enumerate_set(s, args.kind)
        inverses = None
        if args.kind == "units":
            table = unit_inverses(s.ring)
            inverses = [(u, table[u]) for u in elements]
        emit(SetListing(ring=s.label, kind=args.kind, elements=elements, inverses=inverses), output_mode(args, runtime, document))
        return 0

    return _run(args, body)


def _witness_command(args: argparse.Namespace, search) -> int:
    def body(runtime: Runtime) -> int:
        s, document = load_star_ring(args, runtime)
        witness = search(s, args.element, args.mode)
        verified = witness.parts is not None and verify_witness(s, witness)
        emit(WitnessReport(ring=s.label, witness=witness, verified=verified), output_mode(args, runtime, document))
        if witness.parts is not None and not verified:
            raise ConsistencyError(f"{s.label}: witness {witness.parts} for {args.element} fails re-verification")
        return 0

    return _run(args, body)


def cmd_decompose(args: argparse.Namespace) -> int:
    return _witness_command(args, decomposition_witness)


def cmd_factor(args: argparse.Namespace) -> int:
    return _witness_command(args, factorization_witness)


def cmd_verify(args: argparse.Namespace) -> int:
    def body(runtime: Runtime) -> int:
        s, document = load_star_ring(args, runtime)
        verdict = check_claim(s, args.claim_id, n=args.n, projection=args.projection, max_order=runtime.max_order)
        emit(verdict, output_mode(args, runtime, document))
        return 1 if verdict.status == "violated" else 0

    return _run(args, body)


def cmd_suite(args: argparse.Namespace) -> int:
    def body(runtime: Runtime) -> int:
        corpus = build_corpus(runtime.corpus, max_order=runtime.max_order, sample=runtime.sample, seed=runtime.seed)
        report = run_claim_suite(
            corpus,
            corpus_name=runtime.corpus,
            claims=runtime.claim_ids,
            workers=runtime.workers,
            max_order=runtime.max_order,
            timing=runtime.timing,
        )
        emit(report, output_mode(args, runtime))
        return report.exit_code()

    return _run(args, body)


def cmd_search(args: argparse.Namespace) -> int:
    def body(runtime: Runtime) -> int:
        if (args.stronger is None) != (args.weaker is None):
            raise InvalidParameter("--stronger and --weaker must be given together")
        pairs = [(args.stronger, args.weaker)] if args.stronger else separation_pairs()
        corpus = build_corpus(runtime.corpus, max_order=runtime.max_order, sample=runtime.sample, seed=runtime.seed)
        results = [separation_search(corpus, stronger, weaker) for stronger, weaker in pairs]
        emit(SearchReport(corpus=runtime.corpus, results=results), output_mode(args, runtime))
        return 0

    return _run(args, body)


def cmd_list_claims(_: argparse.Namespace) -> int:
    for claim_id in available_claim_ids():
        print(claim_id)
    return 0


def cmd_list_corpora(_: argparse.Namespace) -> int:
    for name in available_corpora():
        print(f"{name}: {get_corpus_preset(name).description}")
    return 0


def cmd_list_predicates(_: argparse.Namespace) -> int:
    for name in available_predicates():
        print(name)
    return 0


def _add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--json",
        dest="json",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Emit canonical machine-readable JSON output",
    )
    parser.add_argument("--max-order", type=int, help=f"Refuse to build rings larger than this (default: {DEFAULT_MAX_ORDER})")
    parser.add_argument("--config", help=f"Path to config file (default: ./{CONFIG_FILENAME})")
    parser.add_argument("--no-config", action="store_true", help="Ignore local config file")
    parser.add_argument("--seed", type=int, help="Sampler seed (default: 0; only affects commands that sample a corpus)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug records to stderr")


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", choices=available_corpora(), help=f"Corpus preset (default: {DEFAULT_CORPUS})")
    parser.add_argument("--sample", type=int, help="Append this many seeded random rings to the corpus")


def _add_element_args(parser: argparse.ArgumentParser, modes: tuple[str, ...]) -> None:
    parser.add_argument("spec", help="Ring-spec JSON file, or - for stdin")
    parser.add_argument("--element", type=int, required=True, help="Element id")
    parser.add_argument("--mode", choices=modes, required=True, help="Witness mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starclean", description="Finite *-ring workbench for clean-type decompositions")
    parser.add_argument("--version", action="version", version=f"starclean {__version__}")

    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="Evaluate every predicate on one ring")
    classify.add_argument("spec", help="Ring-spec JSON file, or - for stdin")
    _add_common_args(classify)
    classify.set_defaults(func=cmd_classify)

    sets = sub.add_parser("sets", help="List a structure set of one ring")
    sets.add_argument("spec", help="Ring-spec JSON file, or - for stdin")
    sets.add_argument("--kind", choices=SET_KINDS, required=True, help="Which set to list")
    _add_common_args(sets)
    sets.set_defaults(func=cmd_sets)

    decompose = sub.add_parser("decompose", help="Find a clean-type decomposition a = e + u")
    _add_element_args(decompose, DECOMPOSITION_MODES)
    _add_common_args(decompose)
    decompose.set_defaults(func=cmd_decompose)

    factor = sub.add_parser("factor", help="Find a factorization a = pu / up")
    _add_element_args(factor, FACTORIZATION_MODES)
    _add_common_args(factor)
    factor.set_defaults(func=cmd_factor)

    verify = sub.add_parser("verify", help="Check one claim on one ring")
    verify.add_argument("spec", help="Ring-spec JSON file, or - for stdin")
    verify.add_argument("--claim", dest="claim_id", choices=available_claim_ids(), required=True, help="Claim id")
    verify.add_argument("--n", type=int, default=DEFAULT_MATRIX_SIZE, help="Matrix size for matrix claims (default: 2)")
    verify.add_argument("--projection", type=int, help="Restrict corner claims to this projection")
    _add_common_args(verify)
    verify.set_defaults(func=cmd_verify)

    suite = sub.add_parser("suite", help="Run the claim suite over a corpus")
    _add_corpus_args(suite)
    suite.add_argument(
        "--claim",
        dest="claim",
        action="append",
        choices=available_claim_ids(),
        help="Run only this claim (repeatable)",
    )
    suite.add_argument("--workers", type=int, help="Worker threads (default: 1)")
    suite.add_argument(
        "--timing",
        dest="timing",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Record per-cell wall time",
    )
    _add_common_args(suite)
    suite.set_defaults(func=cmd_suite)

    search = sub.add_parser("search", help="Search the corpus for a ring separating two predicates")
    search.add_argument("--stronger", choices=available_predicates(), help="Predicate that should fail")
    search.add_argument("--weaker", choices=available_predicates(), help="Predicate that should hold")
    _add_corpus_args(search)
    _add_common_args(search)
    search.set_defaults(func=cmd_search)

    list_claims = sub.add_parser("list-claims", help="List available claim ids")
    list_claims.set_defaults(func=cmd_list_claims)

    list_corpora = sub.add_parser("list-corpora", help="List corpus presets")
    list_corpora.set_defaults(func=cmd_list_corpora)

    list_predicates = sub.add_parser("list-predicates", help="List predicate names")
    list_predicates.set_defaults(func=cmd_list_predicates)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
