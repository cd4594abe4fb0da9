"""``mathlod`` command line: translate, check, parse, verbalize, match and validate.

Data goes to standard output (or ``--output``); diagnostics go to standard
error.  Exit codes: 0 success, 1 semantic failure, 2 input parse error,
3 mapping or configuration error, 4 ambiguous phrase.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import MathLodError, SizeError
from .fol import ArityError, FolSyntaxError, UnknownSymbolError, load_theory, parse_sentence
from .lexicon import AmbiguityError, Lexicon, LexiconError, PhraseError, load_llod, parse_phrase, verbalize
from .ontology import OntologyError, OntologyGraph, errors_only, from_schema_graph, validate
from .rdf import Graph, IRI
from .replenish import DEFAULT_THRESHOLD, PreprocessConfig, ReplenishError, format_report, match_terms, read_term_list
from .translator import MappingError, Mode, SymbolMapping, TranslationError, check_semantic_condition, translate
from .turtle import TurtleError, parse_turtle, serialize_turtle

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_CONFIG = 3
EXIT_AMBIGUOUS = 4

BUNDLED_ONTOLOGY = "divisibility.ttl"
BUNDLED_MAPPING = "divisibility-mapping.json"
BUNDLED_LEXICON = "divisibility-lexicon.ttl"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class CliConfig:
    ontology_path: Optional[Path]
    lexicon_path: Optional[Path]
    mapping_path: Optional[Path]
    output_path: Optional[Path]
    mode: Optional[Mode]
    domain_size: int
    threshold: float


def _bundled(name: str) -> str:
    return resources.files("mathlod").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def _read(path: Optional[Path], bundled: Optional[str], what: str) -> str:
    if path is None:
        if bundled is None:
            raise CliError(f"no {what} given", EXIT_CONFIG)
        return _bundled(bundled)
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {what} {path}: {exc.strerror}", EXIT_CONFIG) from None


class Session:
    """Inputs shared by the subcommands, loaded lazily from the config."""

    def __init__(self, cfg: CliConfig):
        self.cfg = cfg
        self._ontology: Optional[tuple[OntologyGraph, Graph]] = None
        self._mapping: Optional[SymbolMapping] = None
        self._lexicon: Optional[Lexicon] = None

    def ontology(self) -> tuple[OntologyGraph, Graph]:
        """The lifted ontology and the ontology graph it came from."""
        if self._ontology is None:
            text = _read(self.cfg.ontology_path, BUNDLED_ONTOLOGY, "ontology")
            graph = parse_turtle(text)
            self._ontology = (from_schema_graph(graph), graph)
        return self._ontology

    def mapping(self) -> SymbolMapping:
        if self._mapping is None:
            self._mapping = SymbolMapping.from_json(_read(self.cfg.mapping_path, BUNDLED_MAPPING, "mapping"))
        return self._mapping

    def lexicon(self) -> Lexicon:
        if self._lexicon is None:
            self._lexicon = load_llod(_read(self.cfg.lexicon_path, BUNDLED_LEXICON, "lexicon"))
        return self._lexicon

    def mode(self) -> Mode:
        return self.cfg.mode or self.mapping().mode


def _load_json_map(path: Path, what: str) -> dict:
    try:
        data = json.loads(_read(path, None, what))
    except json.JSONDecodeError as exc:
        raise CliError(f"{what} {path} is not valid JSON: {exc}", EXIT_PARSE) from None
    if not isinstance(data, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in data.items()):
        raise CliError(f"{what} {path} must be a JSON object of strings", EXIT_CONFIG)
    return data


# --------------------------------------------------------------------------
# commands

def cmd_translate(args, session: Session) -> tuple[str, int]:
    onto, _ = session.ontology()
    mapping = session.mapping()
    s = parse_sentence(args.sentence, mapping.signature(onto))
    result = translate(s, mapping, onto, session.mode())
    return serialize_turtle(result.graph), EXIT_OK


def _resource_name(r) -> str:
    if isinstance(r, IRI):
        return r.local_name
    if isinstance(r, tuple) and len(r) == 3 and r[0] == "rel":
        return f"{r[1]}({','.join(map(str, r[2]))})"
    return str(r)


def cmd_check_condition(args, session: Session) -> tuple[str, int]:
    onto, schema = session.ontology()
    mapping = session.mapping()
    theory = load_theory(_read(Path(args.theory), None, "theory"), base=mapping.signature(onto))
    s = parse_sentence(args.sentence, theory.signature)
    report = check_semantic_condition(theory, s, mapping, onto, session.cfg.domain_size, session.mode(),
                                      schema=schema)
    lines = [report.summary(), f"domain_size={report.domain_size} mode={report.mode.value}"]
    if report.rdf_models is not None:
        lines.append(f"candidates={report.candidates_checked} rdf_models={report.rdf_models}")
    if not report.passed:
        lines.append(f"counterexample: {report.counterexample.describe()}")
        lines.append("image:")
        lines.extend("  " + ln for ln in report.counterexample_image.describe(_resource_name).splitlines())
        lines.append("translation:")
        lines.extend("  " + ln for ln in serialize_turtle(report.graph).splitlines())
    return "\n".join(lines) + "\n", EXIT_OK if report.passed else EXIT_FAIL


def cmd_parse_phrase(args, session: Session) -> tuple[str, int]:
    onto, _ = session.ontology()
    if args.entities:
        entities = {k: IRI(v) for k, v in _load_json_map(Path(args.entities), "entity map").items()}
    else:
        entities = dict(session.mapping().cmap)
    graph = parse_phrase(session.lexicon(), onto, args.phrase, entities)
    return serialize_turtle(graph), EXIT_OK


def cmd_verbalize(args, session: Session) -> tuple[str, int]:
    onto, _ = session.ontology()
    instance = parse_turtle(_read(Path(args.instance), None, "instance"))
    if args.labels:
        labels = {IRI(k): v for k, v in _load_json_map(Path(args.labels), "label map").items()}
    else:
        labels = {iri: token for token, iri in session.mapping().cmap.items()}
    return verbalize(session.lexicon(), onto, instance, labels) + "\n", EXIT_OK


def cmd_match_terms(args, session: Session) -> tuple[str, int]:
    cfg = PreprocessConfig()
    ontology_terms = read_term_list(_read(Path(args.ontology_terms), None, "term list"), "ontology", cfg)
    external_terms = read_term_list(_read(Path(args.external_terms), None, "term list"), "external", cfg)
    results = match_terms(ontology_terms, external_terms, session.cfg.threshold)
    return format_report(results, external_terms), EXIT_OK


def cmd_validate(args, session: Session) -> tuple[str, int]:
    onto, _ = session.ontology()
    violations = validate(onto)
    rows = [f"{v.severity}\t{v.code}\t{v.subject}\t{v.message}" for v in violations]
    errors = len(errors_only(violations))
    rows.append(f"# violations={len(violations)} errors={errors} warnings={len(violations) - errors}")
    return "\n".join(rows) + "\n", EXIT_FAIL if errors else EXIT_OK


# --------------------------------------------------------------------------
# argument handling

def _mode(value: str) -> Mode:
    try:
        return Mode.parse(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown mode {value!r}") from None


def _threshold(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not 0.0 < x <= 1.0:
        raise argparse.ArgumentTypeError("threshold must lie in (0, 1]")
    return x


def _domain_size(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("domain size must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ontology", type=Path, help="ontology graph (Turtle); default: bundled divisibility ontology")
    common.add_argument("--mapping", type=Path, help="symbol mapping (JSON); default: bundled mapping")
    common.add_argument("--lexicon", type=Path, help="LLOD lexicon (Turtle); default: bundled lexicon")
    common.add_argument("--mode", type=_mode, help="translation mode: generic or role-properties (default: mapping's)")
    common.add_argument("--domain-size", type=_domain_size, default=2, help="FOL domain size (default 2)")
    common.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD,
                        help="similarity threshold (default 0.7)")
    common.add_argument("--output", type=Path, help="write data here instead of standard output")

    parser = argparse.ArgumentParser(prog="mathlod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", parents=[common], help="translate a ground atomic sentence to Turtle")
    p.add_argument("sentence")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("check-condition", parents=[common], help="check the translation against finite models")
    p.add_argument("theory", help="theory file (one sentence per line, pred/const declarations)")
    p.add_argument("sentence")
    p.set_defaults(func=cmd_check_condition)

    p = sub.add_parser("parse-phrase", parents=[common], help="parse a controlled phrase into an instance graph")
    p.add_argument("phrase")
    p.add_argument("--entities", help="JSON object token -> IRI (default: the mapping's constants)")
    p.set_defaults(func=cmd_parse_phrase)

    p = sub.add_parser("verbalize", parents=[common], help="render an instance graph as a phrase")
    p.add_argument("instance", help="instance graph (Turtle)")
    p.add_argument("--labels", help="JSON object IRI -> token (default: the mapping's constants)")
    p.set_defaults(func=cmd_verbalize)

    p = sub.add_parser("match-terms", parents=[common], help="align two term lists by cosine similarity")
    p.add_argument("ontology_terms")
    p.add_argument("external_terms")
    p.set_defaults(func=cmd_match_terms)

    p = sub.add_parser("validate", parents=[common], help="check ontology invariants")
    p.set_defaults(func=cmd_validate)
    return parser


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, AmbiguityError):
        return EXIT_AMBIGUOUS
    if isinstance(exc, UnknownSymbolError):
        return EXIT_CONFIG
    if isinstance(exc, (FolSyntaxError, ArityError, TurtleError, PhraseError)):
        return EXIT_PARSE
    if isinstance(exc, (MappingError, OntologyError, TranslationError, SizeError, ReplenishError)):
        return EXIT_CONFIG
    if isinstance(exc, LexiconError):
        return EXIT_CONFIG
    return EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CliConfig(
        ontology_path=args.ontology,
        lexicon_path=args.lexicon,
        mapping_path=args.mapping,
        output_path=args.output,
        mode=args.mode,
        domain_size=args.domain_size,
        threshold=args.threshold,
    )
    try:
        text, code = args.func(args, Session(cfg))
    except CliError as exc:
        print(f"mathlod: {exc}", file=sys.stderr)
        return exc.code
    except MathLodError as exc:
        if isinstance(exc, AmbiguityError):
            print("mathlod: ambiguous phrase; candidate senses:", file=sys.stderr)
            for sense in exc.candidates:
                print(f"  {sense}", file=sys.stderr)
        else:
            print(f"mathlod: {exc}", file=sys.stderr)
        return _exit_code(exc)

    if cfg.output_path is not None:
        try:
            cfg.output_path.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"mathlod: cannot write {cfg.output_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
