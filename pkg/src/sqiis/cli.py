"""Command-line front end.

One binary with subcommands wiring configuration loading, tagging,
classification, rule generation, evaluation, and the HTTP service. Exit
codes are a stable contract: 0 success, 1 configuration/validation failure,
2 bad query input, 3 no domain identified.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .engine import DEFAULT_CANDIDATE_CAP, Engine
from .errors import EmptyQueryError, MalformedConfigError, SqiisError
from .evaluation import render_report, report_as_dict, run_evaluation
from .lexicon import load_lexicons
from .refconfig import (
    CONFIG_DIR_ENV,
    DEFAULT_RULEBASE_FILENAME,
    LABELS_FILENAME,
    LEXICONS_FILENAME,
    REGISTRY_FILENAME,
    WEIGHTS_FILENAME,
    seed_config,
)
from .registry import load_registries
from .rulebase import format_combination, load_rulebase, serialize_rulebase
from .rulegen import (
    compile_handcrafted,
    enumerate_combinations,
    generate_rulebase,
    load_exclusions,
    load_weights,
    parse_labelsheet,
    scaffold_labelsheet,
)
from .tagger import tokenize_and_tag
from .tagset import ExclusionSet

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BAD_QUERY = 2
EXIT_NO_DOMAIN = 3


class _Parser(argparse.ArgumentParser):
    # Usage errors are configuration failures (exit 1); exit code 2 is
    # reserved for bad query input.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _resolve_path(explicit: str | None, flag: str, filename: str) -> Path:
    if explicit:
        return Path(explicit)
    root = os.environ.get(CONFIG_DIR_ENV)
    if root:
        return Path(root) / filename
    raise MalformedConfigError(f"{flag} not given and {CONFIG_DIR_ENV} is unset")


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _load_registries(args):
    return load_registries(_read(_resolve_path(args.registry, "--registry", REGISTRY_FILENAME)))


def _load_engine(args) -> Engine:
    tags, domains = _load_registries(args)
    lexicons = load_lexicons(
        tags, _read(_resolve_path(args.lexicons, "--lexicons", LEXICONS_FILENAME))
    )
    rulebase = load_rulebase(
        tags,
        domains,
        _read(_resolve_path(args.rulebase, "--rulebase", DEFAULT_RULEBASE_FILENAME)),
    )
    return Engine(tags, domains, lexicons, rulebase, cap=args.cap)


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_tag(args) -> int:
    tags, _ = _load_registries(args)
    lexicons = load_lexicons(
        tags, _read(_resolve_path(args.lexicons, "--lexicons", LEXICONS_FILENAME))
    )
    tq = tokenize_and_tag(args.query, lexicons)
    if args.format == "structured":
        payload = {
            "query": tq.raw,
            "tokens": [
                {
                    "surface": t.surface,
                    "start": t.start,
                    "word_count": t.word_count,
                    "tags": [tags.id_at(p) for p in sorted(t.tags)],
                }
                for t in tq.tokens
            ],
        }
        _emit(args, _dump_json(payload))
    else:
        lines = []
        for t in tq.tokens:
            tag_ids = ",".join(tags.id_at(p) for p in sorted(t.tags)) or "-"
            lines.append(f"{t.surface}\t{t.start}\t{t.word_count}\t{tag_ids}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    engine = _load_engine(args)
    result = engine.classify(args.query)
    if args.format == "structured":
        payload = {
            "query": args.query,
            "outcome": "domain" if result.is_domain else "no_domain",
            "domain": engine.domains.id_at(result.domain) if result.is_domain else None,
            "confidence": result.confidence,
            "combination": (
                list(result.fired_combination.ids(engine.tags))
                if result.fired_combination is not None
                else None
            ),
            "reason": result.reason,
            "tokens": [
                {
                    "surface": t.surface,
                    "start": t.start,
                    "word_count": t.word_count,
                    "tags": [engine.tags.id_at(p) for p in sorted(t.tags)],
                }
                for t in result.tagged.tokens
            ],
            "candidates": [
                {
                    "combination": list(ts.ids(engine.tags)),
                    "confidences": list(vec.values) if vec is not None else None,
                }
                for ts, vec in result.candidates
            ],
        }
        _emit(args, _dump_json(payload))
    elif result.is_domain:
        _emit(
            args,
            f"domain\t{engine.domains.id_at(result.domain)}\n"
            f"confidence\t{result.confidence:.12f}\n"
            f"combination\t{format_combination(engine.tags, result.fired_combination)}\n",
        )
    else:
        _emit(args, f"no_domain\t{result.reason}\n")
    return EXIT_OK if result.is_domain else EXIT_NO_DOMAIN


def cmd_enumerate(args) -> int:
    tags, _ = _load_registries(args)
    combos = enumerate_combinations(len(tags))
    if args.format == "structured":
        _emit(args, _dump_json([list(c.ids(tags)) for c in combos]))
    else:
        _emit(args, "\n".join(format_combination(tags, c) for c in combos) + "\n")
    return EXIT_OK


def _gen_rules_content(args) -> str:
    tags, domains = _load_registries(args)
    exclusions = ExclusionSet.empty()
    if args.exclusions:
        exclusions = load_exclusions(tags, _read(Path(args.exclusions)))

    if args.mode == "system-generated":
        weights, file_exclusions = load_weights(
            tags,
            domains,
            _read(_resolve_path(args.weights, "--weights", WEIGHTS_FILENAME)),
        )
        merged = ExclusionSet.from_pairs(list(exclusions) + list(file_exclusions))
        return serialize_rulebase(tags, domains, generate_rulebase(weights, merged))
    if args.mode == "scaffold":
        return scaffold_labelsheet(tags, domains, exclusions)
    # compile
    sheet = parse_labelsheet(
        tags,
        domains,
        _read(_resolve_path(args.labels, "--labels", LABELS_FILENAME)),
    )
    return serialize_rulebase(tags, domains, compile_handcrafted(sheet))


def cmd_gen_rules(args) -> int:
    # Content is built (and validated) fully before the file is opened, so a
    # failure leaves no partial output behind.
    content = _gen_rules_content(args)
    Path(args.out).write_text(content, encoding="utf-8")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    engine = _load_engine(args)
    n = len(engine.tags)
    if args.sizes:
        size_min, _, size_max = args.sizes.partition("..")
        try:
            lo, hi = int(size_min), int(size_max)
        except ValueError:
            raise MalformedConfigError(f"--sizes expects MIN..MAX, got {args.sizes!r}") from None
    else:
        lo, hi = 1, min(6, n)
    taus = [float(t) for t in args.tau.split(",")] if args.tau else [0.6]
    report = run_evaluation(engine.rulebase, n, lo, hi, workers=args.workers)
    if args.format == "structured":
        _emit(args, _dump_json(report_as_dict(report, taus)))
    else:
        _emit(args, render_report(report, taus))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_load_engine(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="sqiis", description="Short-query intent identification engine.")
    parser.add_argument(
        "--seed-config",
        metavar="DIR",
        help="write the reference configuration into DIR and exit",
    )
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", help=f"registry file (default: ${CONFIG_DIR_ENV}/{REGISTRY_FILENAME})")
    common.add_argument("--lexicons", help=f"lexicon file (default: ${CONFIG_DIR_ENV}/{LEXICONS_FILENAME})")
    common.add_argument("--rulebase", help=f"rule-base file (default: ${CONFIG_DIR_ENV}/{DEFAULT_RULEBASE_FILENAME})")
    common.add_argument("--weights", help=f"weight-matrix file (default: ${CONFIG_DIR_ENV}/{WEIGHTS_FILENAME})")
    common.add_argument("--exclusions", help="exclusion-pairs file")
    common.add_argument("--labels", help=f"label-sheet file (default: ${CONFIG_DIR_ENV}/{LABELS_FILENAME})")
    common.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP, help="candidate combination cap")
    common.add_argument("--format", choices=("table", "structured"), default="table")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("tag", parents=[common], help="tokenize a query and show tags")
    p.add_argument("query")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("classify", parents=[common], help="identify the domain of a query")
    p.add_argument("query")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", parents=[common], help="list every tag combination")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gen-rules", parents=[common], help="build a rule base or label sheet")
    p.add_argument("--mode", choices=("system-generated", "scaffold", "compile"), required=True)
    p.set_defaults(func=cmd_gen_rules)

    p = sub.add_parser("evaluate", parents=[common], help="run the error-injection evaluation")
    p.add_argument("--sizes", metavar="MIN..MAX", help="combination size band (default 1..min(6, tag count))")
    p.add_argument("--tau", metavar="LIST", help="comma-separated thresholds (default 0.6)")
    p.add_argument("--workers", type=int, default=1, help="parallel workers over baselines")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.seed_config:
            for path in seed_config(args.seed_config):
                print(path)
            return EXIT_OK
        if not args.command:
            parser.print_usage(sys.stderr)
            return EXIT_CONFIG
        if args.command == "gen-rules" and not args.out:
            raise MalformedConfigError("gen-rules requires --out")
        return args.func(args)
    except EmptyQueryError as exc:
        print(f"sqiis: {exc}", file=sys.stderr)
        return EXIT_BAD_QUERY
    except (SqiisError, OSError) as exc:
        print(f"sqiis: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
