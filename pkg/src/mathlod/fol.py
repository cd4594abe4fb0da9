"""Ground first-order atoms, theories and their finite models.

Only the function-free, variable-free fragment is modelled: a theory is a
finite set of ground atoms ``R(c1, ..., cn)``.  Interpretations live over the
domain ``{0, ..., k-1}`` and constants may share a denotation.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import ContractViolation, MathLodError, SizeError

__all__ = [
    "FolError",
    "FolSyntaxError",
    "SignatureError",
    "UnknownSymbolError",
    "ArityError",
    "Signature",
    "AtomicSentence",
    "Theory",
    "FolInterpretation",
    "parse_sentence",
    "format_sentence",
    "load_theory",
    "format_theory",
    "fol_satisfies",
    "enumerate_fol_models",
    "enumerate_fol_interpretations",
]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class FolError(MathLodError, ValueError):
    pass


class FolSyntaxError(FolError):
    def __init__(self, message: str, position: int, line: int | None = None):
        where = f"column {position + 1}" if line is None else f"line {line}, column {position + 1}"
        super().__init__(f"{message} ({where})")
        self.position = position
        self.line = line


class SignatureError(FolError):
    pass


class UnknownSymbolError(SignatureError):
    pass


class ArityError(SignatureError):
    pass


@dataclass(frozen=True)
class Signature:
    predicates: Mapping[str, int] = field(default_factory=dict)
    constants: frozenset = frozenset()

    def __post_init__(self) -> None:
        preds = dict(self.predicates)
        for name, arity in preds.items():
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid predicate name {name!r}")
            if not isinstance(arity, int) or arity < 1:
                raise ValueError(f"predicate {name} needs arity >= 1, got {arity!r}")
        consts = frozenset(self.constants)
        for c in consts:
            if not _NAME.fullmatch(c):
                raise ValueError(f"invalid constant name {c!r}")
        object.__setattr__(self, "predicates", MappingProxyType(preds))
        object.__setattr__(self, "constants", consts)

    def __hash__(self) -> int:
        return hash((frozenset(self.predicates.items()), self.constants))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return dict(self.predicates) == dict(other.predicates) and self.constants == other.constants

    def merge(self, other: "Signature") -> "Signature":
        preds = dict(self.predicates)
        for name, arity in other.predicates.items():
            if preds.get(name, arity) != arity:
                raise ArityError(f"predicate {name} declared with arities {preds[name]} and {arity}")
            preds[name] = arity
        return Signature(preds, self.constants | other.constants)

    def check(self, s: "AtomicSentence") -> None:
        if s.predicate not in self.predicates:
            raise UnknownSymbolError(f"unknown predicate {s.predicate!r}")
        arity = self.predicates[s.predicate]
        if len(s.args) != arity:
            raise ArityError(f"{s.predicate} expects {arity} argument(s), got {len(s.args)}")
        for c in s.args:
            if c not in self.constants:
                raise UnknownSymbolError(f"unknown constant {c!r}")


@dataclass(frozen=True)
class AtomicSentence:
    predicate: str
    args: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        return format_sentence(self)


@dataclass(frozen=True)
class Theory:
    signature: Signature
    axioms: tuple = ()

    def __post_init__(self) -> None:
        axioms = tuple(dict.fromkeys(self.axioms))
        for a in axioms:
            self.signature.check(a)
        object.__setattr__(self, "axioms", axioms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Theory):
            return NotImplemented
        return self.signature == other.signature and set(self.axioms) == set(other.axioms)

    def __hash__(self) -> int:
        return hash((self.signature, frozenset(self.axioms)))

    def with_axiom(self, s: AtomicSentence) -> "Theory":
        return Theory(self.signature, (*self.axioms, s))


@dataclass(frozen=True, eq=False)
class FolInterpretation:
    domain: tuple
    const_map: Mapping[str, int]
    pred_map: Mapping[str, frozenset]

    def __post_init__(self) -> None:
        domain = tuple(self.domain)
        consts = dict(self.const_map)
        preds = {p: frozenset(tuple(t) for t in ext) for p, ext in self.pred_map.items()}
        elems = set(domain)
        for c, e in consts.items():
            if e not in elems:
                raise ContractViolation(f"constant {c} denotes {e!r} outside the domain")
        for p, ext in preds.items():
            lengths = {len(t) for t in ext}
            if len(lengths) > 1:
                raise ContractViolation(f"extension of {p} mixes tuple lengths {sorted(lengths)}")
            if any(x not in elems for t in ext for x in t):
                raise ContractViolation(f"extension of {p} leaves the domain")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "const_map", MappingProxyType(consts))
        object.__setattr__(self, "pred_map", MappingProxyType(preds))

    def key(self) -> tuple:
        return (self.domain, frozenset(self.const_map.items()), frozenset(self.pred_map.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FolInterpretation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def describe(self) -> str:
        consts = ", ".join(f"{c}->{e}" for c, e in sorted(self.const_map.items()))
        preds = "; ".join(
            f"{p}={{{', '.join('(' + ','.join(map(str, t)) + ')' for t in sorted(ext))}}}"
            for p, ext in sorted(self.pred_map.items())
        )
        return f"domain={{{', '.join(map(str, self.domain))}}} consts: {consts} preds: {preds}"


# --------------------------------------------------------------------------
# surface syntax

def parse_sentence(text: str, sig: Signature) -> AtomicSentence:
    """Parse ``Name(arg1, arg2, ...)`` and check it against ``sig``."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def name(what: str) -> str:
        nonlocal pos
        skip_ws()
        m = _NAME.match(text, pos)
        if not m:
            found = repr(text[pos]) if pos < n else "end of input"
            raise FolSyntaxError(f"expected {what}, found {found}", pos)
        pos = m.end()
        return m.group(0)

    def expect(ch: str):
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != ch:
            found = repr(text[pos]) if pos < n else "end of input"
            raise FolSyntaxError(f"expected {ch!r}, found {found}", pos)
        pos += 1

    pred = name("predicate name")
    expect("(")
    args = [name("constant")]
    while True:
        skip_ws()
        if pos < n and text[pos] == ",":
            pos += 1
            args.append(name("constant"))
            continue
        break
    expect(")")
    skip_ws()
    if pos != n:
        raise FolSyntaxError(f"unexpected trailing input {text[pos:]!r}", pos)
    s = AtomicSentence(pred, tuple(args))
    sig.check(s)
    return s


def format_sentence(s: AtomicSentence) -> str:
    return f"{s.predicate}({', '.join(s.args)})"


def load_theory(text: str, base: Signature | None = None) -> Theory:
    """Read the line-oriented theory format.

    Declarations ``pred Name/arity ...`` and ``const a b ...`` may appear
    anywhere; every other non-blank line is one sentence.  ``#`` starts a
    comment.  ``base`` contributes additional declarations.
    """
    preds: dict[str, int] = {}
    consts: set[str] = set()
    sentences: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        line = body.strip()
        if not line:
            continue
        offset = len(body) - len(body.lstrip())
        head, _, rest = line.partition(" ")
        if head == "pred":
            for decl in rest.split():
                m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)/(\d+)", decl)
                if not m:
                    raise FolSyntaxError(f"bad predicate declaration {decl!r}", raw.find(decl), lineno)
                pname, arity = m.group(1), int(m.group(2))
                if preds.get(pname, arity) != arity:
                    raise ArityError(f"line {lineno}: {pname} redeclared with arity {arity}")
                preds[pname] = arity
        elif head == "const":
            for c in rest.split():
                if not _NAME.fullmatch(c):
                    raise FolSyntaxError(f"bad constant name {c!r}", raw.find(c), lineno)
                consts.add(c)
        else:
            sentences.append((lineno, offset, line))
    try:
        sig = Signature(preds, consts)
    except ValueError as exc:
        raise SignatureError(str(exc)) from None
    if base is not None:
        sig = sig.merge(base)
    axioms = []
    for lineno, offset, line in sentences:
        try:
            axioms.append(parse_sentence(line, sig))
        except FolSyntaxError as exc:
            raise FolSyntaxError(str(exc).rsplit(" (", 1)[0], exc.position + offset, lineno) from None
        except SignatureError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return Theory(sig, tuple(axioms))


def format_theory(theory: Theory) -> str:
    lines = []
    if theory.signature.predicates:
        decls = " ".join(f"{p}/{a}" for p, a in sorted(theory.signature.predicates.items()))
        lines.append(f"pred {decls}")
    if theory.signature.constants:
        lines.append("const " + " ".join(sorted(theory.signature.constants)))
    lines.extend(format_sentence(a) for a in theory.axioms)
    return "\n".join(lines) + ("\n" if lines else "")


# --------------------------------------------------------------------------
# semantics

def fol_satisfies(interp: FolInterpretation, s: AtomicSentence) -> bool:
    if s.predicate not in interp.pred_map:
        raise ContractViolation(f"interpretation has no extension for {s.predicate}")
    try:
        image = tuple(interp.const_map[c] for c in s.args)
    except KeyError as exc:
        raise ContractViolation(f"interpretation does not interpret constant {exc.args[0]}") from None
    return image in interp.pred_map[s.predicate]


def _check_caps(sig: Signature, domain_size: int, max_domain: int, max_constants: int, max_ground_atoms: int) -> None:
    if domain_size < 1:
        raise ValueError("domain_size must be positive")
    if domain_size > max_domain:
        raise SizeError(f"domain_size {domain_size} exceeds cap {max_domain}")
    if len(sig.constants) > max_constants:
        raise SizeError(f"{len(sig.constants)} constants exceed cap {max_constants}")
    atoms = sum(domain_size ** a for a in sig.predicates.values())
    if atoms > max_ground_atoms:
        raise SizeError(f"{atoms} ground atoms exceed cap {max_ground_atoms}")


def _space(sig: Signature, domain_size: int, required: Iterable[AtomicSentence]) -> Iterator[FolInterpretation]:
    domain = tuple(range(domain_size))
    consts = sorted(sig.constants)
    preds = sorted(sig.predicates.items())
    tuples = {p: list(itertools.product(domain, repeat=a)) for p, a in preds}
    required = list(required)
    for images in itertools.product(domain, repeat=len(consts)):
        cmap = dict(zip(consts, images))
        forced = {p: set() for p, _ in preds}
        for s in required:
            forced[s.predicate].add(tuple(cmap[c] for c in s.args))
        free = [(p, t) for p, _ in preds for t in tuples[p] if t not in forced[p]]
        for mask in range(1 << len(free)):
            ext = {p: set(f) for p, f in forced.items()}
            for j, (p, t) in enumerate(free):
                if mask >> j & 1:
                    ext[p].add(t)
            yield FolInterpretation(domain, cmap, ext)


def enumerate_fol_models(
    theory: Theory,
    extra: AtomicSentence | None,
    domain_size: int,
    *,
    max_domain: int = 3,
    max_constants: int = 4,
    max_ground_atoms: int = 64,
) -> Iterator[FolInterpretation]:
    """All interpretations over ``{0..domain_size-1}`` satisfying ``theory`` and ``extra``.

    Ground atoms required by the sentences are fixed per constant assignment
    and only the remaining atoms are varied, so no candidate is rejected.
    Order: constant assignments lexicographically (constants sorted by
    name), then the free atoms as a binary counter.
    """
    sig = theory.signature
    sentences = list(theory.axioms)
    if extra is not None:
        sig.check(extra)
        sentences.append(extra)
    _check_caps(sig, domain_size, max_domain, max_constants, max_ground_atoms)
    return _space(sig, domain_size, sentences)


def enumerate_fol_interpretations(
    sig: Signature,
    domain_size: int,
    *,
    max_domain: int = 3,
    max_constants: int = 4,
    max_ground_atoms: int = 64,
) -> Iterator[FolInterpretation]:
    """Every interpretation of ``sig`` over ``{0..domain_size-1}``."""
    _check_caps(sig, domain_size, max_domain, max_constants, max_ground_atoms)
    return _space(sig, domain_size, ())
