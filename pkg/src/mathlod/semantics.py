"""Finite RDF/RDFS interpretations, satisfaction and model enumeration.

Satisfaction reads blank nodes existentially.  Schema graphs contribute only
their RDFS conditions (``subClassOf``, ``subPropertyOf``, ``domain``,
``range``); every other schema triple is inert.  OWL vocabulary is treated as
ordinary IRIs.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Hashable, Iterator, Mapping, Optional

from .errors import ContractViolation, SizeError
from .rdf import RDF, RDFS, BNode, Graph, IRI, Literal

__all__ = [
    "RdfInterpretation",
    "SatisfactionCheck",
    "STRUCTURAL_VOCABULARY",
    "rdf_satisfies",
    "required_iris",
    "enumerate_rdf_models",
    "rdf_model_space",
]

# Interpreted by the satisfaction relation itself, so they need no denotation.
STRUCTURAL_VOCABULARY = frozenset({RDF.type, RDFS.subClassOf, RDFS.subPropertyOf, RDFS.domain, RDFS.range})
_CONDITIONS = (RDFS.subClassOf, RDFS.subPropertyOf, RDFS.domain, RDFS.range)

_EMPTY: frozenset = frozenset()
_TYPE = RDF.type


@dataclass(frozen=True, eq=False)
class RdfInterpretation:
    """A finite interpretation: resources, IRI denotations and extensions.

    Resources are arbitrary hashable ids.  Resources absent from
    ``property_ext``/``class_ext`` have empty extensions.
    """

    resources: frozenset
    iri_denotation: Mapping[IRI, Hashable]
    property_ext: Mapping[Hashable, frozenset]
    class_ext: Mapping[Hashable, frozenset]

    def __post_init__(self) -> None:
        res = frozenset(self.resources)
        den = dict(self.iri_denotation)
        prop = {r: frozenset(ext) for r, ext in self.property_ext.items() if ext}
        cls = {r: frozenset(ext) for r, ext in self.class_ext.items() if ext}
        for iri, r in den.items():
            if r not in res:
                raise ContractViolation(f"{iri} denotes {r!r}, which is not a resource")
        for r, ext in prop.items():
            if r not in res or any(x not in res or y not in res for x, y in ext):
                raise ContractViolation(f"property extension of {r!r} leaves the resource set")
        for r, ext in cls.items():
            if r not in res or not ext <= res:
                raise ContractViolation(f"class extension of {r!r} leaves the resource set")
        object.__setattr__(self, "resources", res)
        object.__setattr__(self, "iri_denotation", MappingProxyType(den))
        object.__setattr__(self, "property_ext", MappingProxyType(prop))
        object.__setattr__(self, "class_ext", MappingProxyType(cls))

    def key(self) -> tuple:
        return (
            self.resources,
            frozenset(self.iri_denotation.items()),
            frozenset(self.property_ext.items()),
            frozenset(self.class_ext.items()),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RdfInterpretation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def denote(self, iri: IRI):
        try:
            return self.iri_denotation[iri]
        except KeyError:
            raise ContractViolation(f"IRI {iri} has no denotation") from None

    def prop(self, resource) -> frozenset:
        return self.property_ext.get(resource, _EMPTY)

    def cls(self, resource) -> frozenset:
        return self.class_ext.get(resource, _EMPTY)

    def describe(self, namer: Optional[Callable[[Hashable], str]] = None) -> str:
        """Non-empty extensions, one per line, in a stable order.

        ``namer`` renders resources; IRIs default to their local name.
        """
        name = namer or (lambda r: r.local_name if isinstance(r, IRI) else repr(r))  # noqa: E731
        lines = []
        for r, ext in sorted(self.class_ext.items(), key=lambda kv: repr(kv[0])):
            members = ", ".join(sorted(name(x) for x in ext))
            lines.append(f"class {name(r)} = {{{members}}}")
        for r, ext in sorted(self.property_ext.items(), key=lambda kv: repr(kv[0])):
            pairs = ", ".join(sorted(f"({name(x)},{name(y)})" for x, y in ext))
            lines.append(f"property {name(r)} = {{{pairs}}}")
        return "\n".join(lines)


def required_iris(graph: Graph, schema: Graph) -> set[IRI]:
    """IRIs that must have a denotation to evaluate ``graph`` under ``schema``."""
    return (graph.iris() | schema.iris()) - STRUCTURAL_VOCABULARY


class SatisfactionCheck:
    """``rdf_satisfies`` with the graph and schema analysed once.

    Instances are callables taking an :class:`RdfInterpretation`; use one when
    the same graph is checked against many interpretations.
    """

    def __init__(self, graph: Graph, schema: Graph):
        self.required = required_iris(graph, schema)
        conds = {p: [] for p in _CONDITIONS}
        facts = []
        for t in (*schema, *graph):
            if t.predicate in conds:
                if not isinstance(t.subject, IRI) or not isinstance(t.object, IRI):
                    raise ContractViolation(f"RDFS condition with a non-IRI term: {t}")
                conds[t.predicate].append((t.subject, t.object))
        for t in graph:
            if t.predicate not in conds:
                facts.append(t)
        self.subclass = conds[RDFS.subClassOf]
        self.subproperty = conds[RDFS.subPropertyOf]
        self.domain = conds[RDFS.domain]
        self.range = conds[RDFS.range]

        order: list[BNode] = []
        for s, _, o in facts:
            for term in (s, o):
                if isinstance(term, BNode) and term not in order:
                    order.append(term)
        self.bnodes = order
        self.ground = [t for t in facts if not isinstance(t.subject, BNode) and not isinstance(t.object, BNode)]
        # Unary triples filter one blank node's candidates; the rest are checked
        # as soon as all their blank nodes are bound.
        self.unary: dict[BNode, list] = {b: [] for b in order}
        self.by_depth: list[list] = [[] for _ in order]
        for t in facts:
            bs = [x for x in (t.subject, t.object) if isinstance(x, BNode)]
            if not bs:
                continue
            if len(set(bs)) == 1:
                self.unary[bs[0]].append(t)
            else:
                depth = max(order.index(b) for b in bs)
                self.by_depth[depth].append(t)

    @staticmethod
    def _holds(interp: RdfInterpretation, s, p: IRI, o) -> bool:
        """Truth of one triple whose terms are already mapped to resources (``p`` stays an IRI)."""
        if p == _TYPE:
            if isinstance(o, Literal):
                return False
            return s in interp.cls(o)
        return (s, o) in interp.prop(interp.iri_denotation[p])

    @staticmethod
    def _candidates(interp: RdfInterpretation, b: BNode, t) -> set:
        """Resources that can stand for ``b`` in a triple whose only blank node is ``b``."""
        den = interp.iri_denotation
        s, p, o = t
        value = (lambda term: den[term] if isinstance(term, IRI) else term)
        if p == _TYPE:
            if isinstance(o, Literal):
                return set()
            if o == b:
                return {x for x in interp.resources if x in interp.cls(x)}
            return set(interp.cls(value(o)))
        ext = interp.prop(den[p])
        if s == b and o == b:
            return {x for x, y in ext if x == y}
        if s == b:
            target = value(o)
            return {x for x, y in ext if y == target}
        source = value(s)
        return {y for x, y in ext if x == source}

    def __call__(self, interp: RdfInterpretation) -> bool:
        den = interp.iri_denotation
        missing = [i for i in self.required if i not in den]
        if missing:
            names = ", ".join(sorted(str(i) for i in missing))
            raise ContractViolation(f"IRIs without denotation: {names}")

        for c1, c2 in self.subclass:
            if not interp.cls(den[c1]) <= interp.cls(den[c2]):
                return False
        for p1, p2 in self.subproperty:
            if not interp.prop(den[p1]) <= interp.prop(den[p2]):
                return False
        for p, c in self.domain:
            members = interp.cls(den[c])
            if any(x not in members for x, _ in interp.prop(den[p])):
                return False
        for p, c in self.range:
            members = interp.cls(den[c])
            if any(y not in members for _, y in interp.prop(den[p])):
                return False

        def value(term, assignment):
            if isinstance(term, IRI):
                return den[term]
            if isinstance(term, BNode):
                return assignment[term]
            return term

        for s, p, o in self.ground:
            if not self._holds(interp, value(s, None), p, value(o, None)):
                return False
        if not self.bnodes:
            return True

        candidates = []
        for b in self.bnodes:
            cands = None
            for t in self.unary[b]:
                found = self._candidates(interp, b, t)
                cands = found if cands is None else cands & found
                if not cands:
                    return False
            candidates.append(interp.resources if cands is None else cands)

        assignment: dict = {}

        def search(depth: int) -> bool:
            if depth == len(self.bnodes):
                return True
            b = self.bnodes[depth]
            for r in candidates[depth]:
                assignment[b] = r
                if all(self._holds(interp, value(s, assignment), p, value(o, assignment))
                       for s, p, o in self.by_depth[depth]) and search(depth + 1):
                    return True
            assignment.pop(b, None)
            return False

        return search(0)


def rdf_satisfies(interp: RdfInterpretation, graph: Graph, schema: Graph) -> bool:
    """Whether ``interp`` is a model of ``graph`` under the RDFS conditions of ``schema``.

    Raises :class:`ContractViolation` if an IRI of either graph lacks a denotation.
    """
    return SatisfactionCheck(graph, schema)(interp)


@dataclass(frozen=True)
class RdfModelSpace:
    """The candidate family searched by :func:`enumerate_rdf_models`."""

    resources: tuple
    iris: tuple
    class_slots: tuple
    property_slots: tuple

    @property
    def bits(self) -> int:
        n = len(self.resources)
        return len(self.class_slots) * n + len(self.property_slots) * n * n

    def decode(self, mask: int) -> RdfInterpretation:
        res = self.resources
        cls, prop = {}, {}
        bit = 0
        for c in self.class_slots:
            members = []
            for r in res:
                if mask >> bit & 1:
                    members.append(r)
                bit += 1
            cls[c] = members
        for p in self.property_slots:
            pairs = []
            for x in res:
                for y in res:
                    if mask >> bit & 1:
                        pairs.append((x, y))
                    bit += 1
            prop[p] = pairs
        return RdfInterpretation(frozenset(res), {i: i for i in self.iris}, prop, cls)


def rdf_model_space(graph: Graph, schema: Graph, domain_size: int) -> RdfModelSpace:
    """Resources and extension slots of the finite candidate family.

    Each required IRI denotes itself; ``domain_size`` anonymous resources
    (the integers ``0..domain_size-1``) follow.  Only IRIs used as classes get
    a class extension slot and only IRIs used as properties get a property
    extension slot; all other extensions are empty.
    """
    iris = tuple(sorted(required_iris(graph, schema), key=lambda i: i.value))
    classes, props = set(), set()
    for s, p, o in graph:
        if p == RDF.type:
            if isinstance(o, IRI):
                classes.add(o)
        elif p not in STRUCTURAL_VOCABULARY:
            props.add(p)
    for s, p, o in (*schema, *graph):
        if p == RDFS.subClassOf:
            classes.update(x for x in (s, o) if isinstance(x, IRI))
        elif p == RDFS.subPropertyOf:
            props.update(x for x in (s, o) if isinstance(x, IRI))
        elif p in (RDFS.domain, RDFS.range):
            if isinstance(s, IRI):
                props.add(s)
            if isinstance(o, IRI):
                classes.add(o)
    key = lambda i: i.value  # noqa: E731
    return RdfModelSpace(
        resources=iris + tuple(range(domain_size)),
        iris=iris,
        class_slots=tuple(sorted(classes, key=key)),
        property_slots=tuple(sorted(props, key=key)),
    )


def enumerate_rdf_models(
    graph: Graph,
    schema: Graph,
    domain_size: int,
    *,
    max_domain: int = 4,
    max_iris: int = 12,
    max_bits: int = 20,
) -> Iterator[RdfInterpretation]:
    """Yield every candidate interpretation that satisfies ``graph`` under ``schema``.

    Candidates are decoded from bit masks in increasing order, so the stream
    is deterministic.  Raises :class:`SizeError` when ``domain_size``, the IRI
    count or the number of extension bits exceeds its cap.
    """
    if domain_size < 0:
        raise ValueError("domain_size must be non-negative")
    if domain_size > max_domain:
        raise SizeError(f"domain_size {domain_size} exceeds cap {max_domain}")
    space = rdf_model_space(graph, schema, domain_size)
    if len(space.iris) > max_iris:
        raise SizeError(f"{len(space.iris)} IRIs exceed cap {max_iris}")
    if space.bits > max_bits:
        raise SizeError(f"candidate space of 2^{space.bits} interpretations exceeds 2^{max_bits}")
    check = SatisfactionCheck(graph, schema)

    def stream():
        for mask in range(1 << space.bits):
            interp = space.decode(mask)
            if check(interp):
                yield interp

    return stream()
