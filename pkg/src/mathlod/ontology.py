"""Domain ontology: kinds and roles, reified relationship classes, validation.

An :class:`OntologyGraph` holds two disjoint hierarchies, one of object
concepts (each annotated Kind or Role) and one of reified relationship
classes whose arguments are sub-properties of ``omp:hasArgument``.  It
projects to an RDF schema graph and can be lifted back from one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import MathLodError
from .rdf import OMP, OWL, RDF, RDFS, XSD, Graph, IRI, Literal, Triple

__all__ = [
    "MetaType",
    "Concept",
    "ArgumentRole",
    "ReifiedRelationshipClass",
    "OntologyGraph",
    "Violation",
    "OntologyError",
    "OntologyValidationError",
    "SCHEMA_PREFIXES",
    "validate",
    "to_schema_graph",
    "from_schema_graph",
    "lookup_relationship",
]

HAS_ARGUMENT = OMP.hasArgument
META_TYPE = OMP.metaOntologicalType
ARGUMENT_POSITION = OMP.argumentPosition

SCHEMA_PREFIXES: Mapping[str, str] = MappingProxyType({
    "rdf": str(RDF),
    "rdfs": str(RDFS),
    "owl": str(OWL),
    "omp": str(OMP),
    "xsd": str(XSD),
})


class OntologyError(MathLodError, ValueError):
    pass


class OntologyValidationError(OntologyError):
    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class MetaType(enum.Enum):
    KIND = "Kind"
    ROLE = "Role"

    @property
    def iri(self) -> IRI:
        return OMP.term(self.value)


@dataclass(frozen=True)
class Concept:
    id: IRI
    meta: MetaType
    parents: frozenset = frozenset()
    labels: Mapping[str, tuple] = field(default_factory=dict)
    definition: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", frozenset(self.parents))
        object.__setattr__(self, "labels", {lang: tuple(v) for lang, v in self.labels.items()})


@dataclass(frozen=True)
class ArgumentRole:
    property_iri: IRI
    role_concept: IRI
    position: int
    label: str = ""


@dataclass(frozen=True)
class ReifiedRelationshipClass:
    id: IRI
    arguments: tuple
    parents: frozenset = frozenset()
    labels: Mapping[str, tuple] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "arguments", tuple(sorted(self.arguments, key=lambda a: a.position)))
        object.__setattr__(self, "parents", frozenset(self.parents))
        object.__setattr__(self, "labels", {lang: tuple(v) for lang, v in self.labels.items()})

    @property
    def arity(self) -> int:
        return len(self.arguments)

    def argument_properties(self) -> tuple:
        return tuple(a.property_iri for a in self.arguments)

    def argument_at(self, position: int) -> ArgumentRole:
        for a in self.arguments:
            if a.position == position:
                return a
        raise KeyError(position)


@dataclass(frozen=True)
class Violation:
    code: str
    subject: IRI
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.code}({self.subject.local_name})"


@dataclass(frozen=True)
class OntologyGraph:
    """Concepts and relationship classes keyed by IRI, plus opaque extra triples."""

    concepts: Mapping[IRI, Concept] = field(default_factory=dict)
    relationships: Mapping[IRI, ReifiedRelationshipClass] = field(default_factory=dict)
    base_namespace: str = str(OMP)
    extras: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "concepts", MappingProxyType(dict(self.concepts)))
        object.__setattr__(self, "relationships", MappingProxyType(dict(self.relationships)))
        object.__setattr__(self, "extras", tuple(Triple(*t) for t in self.extras))

    @classmethod
    def build(cls, concepts: Iterable[Concept] = (), relationships: Iterable[ReifiedRelationshipClass] = (),
              **kwargs) -> "OntologyGraph":
        return cls({c.id: c for c in concepts}, {r.id: r for r in relationships}, **kwargs)

    def add_concept(self, concept: Concept) -> "OntologyGraph":
        return replace(self, concepts={**self.concepts, concept.id: concept})

    def add_relationship(self, rel: ReifiedRelationshipClass) -> "OntologyGraph":
        return replace(self, relationships={**self.relationships, rel.id: rel})

    def remove(self, iri: IRI) -> "OntologyGraph":
        return replace(
            self,
            concepts={k: v for k, v in self.concepts.items() if k != iri},
            relationships={k: v for k, v in self.relationships.items() if k != iri},
        )

    def ancestors(self, iri: IRI) -> set[IRI]:
        """Transitive parents within the hierarchy ``iri`` belongs to (dangling ids skipped)."""
        table = self.concepts if iri in self.concepts else self.relationships
        seen: set[IRI] = set()
        stack = list(table[iri].parents) if iri in table else []
        while stack:
            p = stack.pop()
            if p in seen or p not in table:
                continue
            seen.add(p)
            stack.extend(table[p].parents)
        return seen

    def role_concept_of(self, relationship: IRI, position: int) -> IRI:
        return self.relationships[relationship].argument_at(position).role_concept


def lookup_relationship(onto: OntologyGraph, iri: IRI) -> Optional[ReifiedRelationshipClass]:
    """The relationship class ``iri`` or None when the ontology has no such class."""
    return onto.relationships.get(iri)


# --------------------------------------------------------------------------
# validation

def _cycles(table: Mapping[IRI, object]) -> list[list[IRI]]:
    """Elementary cycles found by DFS, one per back edge, each rotated to its smallest id."""
    white, grey, black = 0, 1, 2
    colour = {k: white for k in table}
    found: list[list[IRI]] = []
    path: list[IRI] = []

    def visit(n: IRI) -> None:
        colour[n] = grey
        path.append(n)
        for p in sorted(table[n].parents, key=lambda i: i.value):
            if p not in table:
                continue
            if colour[p] == grey:
                cyc = path[path.index(p):]
                k = cyc.index(min(cyc, key=lambda i: i.value))
                found.append(cyc[k:] + cyc[:k])
            elif colour[p] == white:
                visit(p)
        path.pop()
        colour[n] = black

    for n in sorted(table, key=lambda i: i.value):
        if colour[n] == white:
            visit(n)
    return found


def validate(onto: OntologyGraph) -> list[Violation]:
    """Every structural problem of ``onto``; an empty list means valid.

    Relationship classes with fewer than two arguments are reported with
    ``warning`` severity, everything else with ``error``.
    """
    out: list[Violation] = []
    key = lambda i: i.value  # noqa: E731

    for iri in sorted(set(onto.concepts) & set(onto.relationships), key=key):
        out.append(Violation("HierarchyOverlap", iri, f"{iri} is both an object concept and a relationship class"))

    for iri in sorted(onto.concepts, key=key):
        for p in sorted(onto.concepts[iri].parents, key=key):
            if p not in onto.concepts:
                out.append(Violation("DanglingParent", iri, f"parent {p} of {iri} is not an object concept"))
    for iri in sorted(onto.relationships, key=key):
        for p in sorted(onto.relationships[iri].parents, key=key):
            if p not in onto.relationships:
                out.append(Violation("DanglingParent", iri, f"parent {p} of {iri} is not a relationship class"))

    for table in (onto.concepts, onto.relationships):
        seen_cycles = set()
        for cyc in _cycles(table):
            if tuple(cyc) in seen_cycles:
                continue
            seen_cycles.add(tuple(cyc))
            names = " -> ".join(c.local_name for c in (*cyc, cyc[0]))
            out.append(Violation("SubclassCycle", cyc[0], f"subclass cycle {names}"))

    for iri in sorted(onto.concepts, key=key):
        c = onto.concepts[iri]
        if c.meta is MetaType.ROLE:
            if not any(onto.concepts[a].meta is MetaType.KIND for a in onto.ancestors(iri)):
                out.append(Violation("RoleWithoutKindAncestor", iri, f"role {iri} has no kind among its ancestors"))

    owners: dict[IRI, IRI] = {}
    for iri in sorted(onto.relationships, key=key):
        rel = onto.relationships[iri]
        if not rel.arguments:
            out.append(Violation("NoArguments", iri, f"relationship {iri} has no arguments"))
            continue
        if len(rel.arguments) < 2:
            out.append(Violation("UnaryRelationship", iri, f"relationship {iri} has a single argument", "warning"))
        positions = [a.position for a in rel.arguments]
        if positions != list(range(1, len(positions) + 1)):
            out.append(Violation("ArgumentPositionGap", iri, f"argument positions {positions} are not 1..{len(positions)}"))
        props = set()
        for a in rel.arguments:
            if a.property_iri in props:
                out.append(Violation("DuplicateArgumentProperty", iri, f"{a.property_iri} used twice in {iri}"))
            props.add(a.property_iri)
            if a.property_iri in owners and owners[a.property_iri] != iri:
                out.append(Violation("SharedArgumentProperty", iri,
                                     f"{a.property_iri} is already an argument of {owners[a.property_iri]}"))
            owners.setdefault(a.property_iri, iri)
            role = onto.concepts.get(a.role_concept)
            if role is None:
                out.append(Violation("DanglingRoleConcept", iri, f"argument role {a.role_concept} is not a concept"))
            elif role.meta is not MetaType.ROLE:
                out.append(Violation("ArgumentNotRole", iri, f"argument concept {a.role_concept} is not a role"))
    return out


def errors_only(violations: Iterable[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == "error"]


# --------------------------------------------------------------------------
# RDF projection

def _label_triples(subject: IRI, labels: Mapping[str, tuple]) -> list[Triple]:
    return [Triple(subject, RDFS.label, Literal(text, language=lang))
            for lang in sorted(labels) for text in labels[lang]]


def to_schema_graph(onto: OntologyGraph) -> Graph:
    """Project ``onto`` to RDF; raises :class:`OntologyValidationError` on error-severity violations."""
    errors = errors_only(validate(onto))
    if errors:
        raise OntologyValidationError(errors)
    key = lambda i: i.value  # noqa: E731
    triples: list[Triple] = []
    for c in onto.concepts.values():
        triples.append(Triple(c.id, RDF.type, OWL.Class))
        triples.extend(Triple(c.id, RDFS.subClassOf, p) for p in sorted(c.parents, key=key))
        triples.append(Triple(c.id, META_TYPE, c.meta.iri))
        triples.extend(_label_triples(c.id, c.labels))
        if c.definition:
            triples.append(Triple(c.id, RDFS.comment, Literal(c.definition, language="en")))
    for r in onto.relationships.values():
        triples.append(Triple(r.id, RDF.type, OWL.Class))
        triples.extend(Triple(r.id, RDFS.subClassOf, p) for p in sorted(r.parents, key=key))
        triples.extend(_label_triples(r.id, r.labels))
        for a in r.arguments:
            p = a.property_iri
            triples.append(Triple(p, RDFS.subPropertyOf, HAS_ARGUMENT))
            triples.append(Triple(p, RDFS.domain, r.id))
            triples.append(Triple(p, RDFS.range, a.role_concept))
            triples.append(Triple(p, ARGUMENT_POSITION, Literal(str(a.position), datatype=XSD.integer)))
            if a.label:
                triples.append(Triple(p, RDFS.label, Literal(a.label)))
    triples.extend(onto.extras)
    prefixes = dict(SCHEMA_PREFIXES)
    if onto.base_namespace not in prefixes.values():
        prefixes["onto"] = onto.base_namespace
    return Graph(triples, prefixes)


def from_schema_graph(graph: Graph, base_namespace: str = str(OMP)) -> OntologyGraph:
    """Lift an ontology graph; triples outside the projection vocabulary become ``extras``.

    Argument properties are recognised by an ``rdfs:domain`` on a declared
    class together with ``rdfs:range`` and either ``rdfs:subPropertyOf
    omp:hasArgument`` or ``omp:argumentPosition``.  Missing positions default
    to declaration order.
    """
    classes = [s for s in graph.subjects(RDF.type, OWL.Class) if isinstance(s, IRI)]
    class_set = set(classes)
    used: set[Triple] = set()

    args_by_rel: dict[IRI, list] = {}
    for p in graph.subjects(RDFS.domain):
        if not isinstance(p, IRI):
            continue
        domains = [d for d in graph.objects(p, RDFS.domain) if d in class_set]
        ranges = graph.objects(p, RDFS.range)
        positions = graph.objects(p, ARGUMENT_POSITION)
        is_arg = (p, RDFS.subPropertyOf, HAS_ARGUMENT) in graph or positions
        if len(domains) != 1 or len(ranges) != 1 or not is_arg:
            continue
        rel = domains[0]
        if len(positions) > 1:
            raise OntologyError(f"{p} has {len(positions)} argument positions")
        position = None
        if positions:
            lit = positions[0]
            if not isinstance(lit, Literal) or not lit.lexical.isdigit():
                raise OntologyError(f"bad argument position {lit!r} for {p}")
            position = int(lit.lexical)
            used.add(Triple(p, ARGUMENT_POSITION, lit))
        labels = [o for o in graph.objects(p, RDFS.label) if isinstance(o, Literal) and not o.language]
        label = labels[0].lexical if labels else ""
        if labels:
            used.add(Triple(p, RDFS.label, labels[0]))
        used.update({Triple(p, RDFS.domain, rel), Triple(p, RDFS.range, ranges[0])})
        if (p, RDFS.subPropertyOf, HAS_ARGUMENT) in graph:
            used.add(Triple(p, RDFS.subPropertyOf, HAS_ARGUMENT))
        args_by_rel.setdefault(rel, []).append((position, p, ranges[0], label))

    def labels_of(iri: IRI) -> dict:
        out: dict[str, list] = {}
        for o in graph.objects(iri, RDFS.label):
            if isinstance(o, Literal) and o.language:
                out.setdefault(o.language, []).append(o.lexical)
                used.add(Triple(iri, RDFS.label, o))
        return out

    concepts, relationships = [], []
    for c in classes:
        used.add(Triple(c, RDF.type, OWL.Class))
        parents = [p for p in graph.objects(c, RDFS.subClassOf) if isinstance(p, IRI)]
        used.update(Triple(c, RDFS.subClassOf, p) for p in parents)
        metas = graph.objects(c, META_TYPE)
        if c in args_by_rel:
            entries = args_by_rel[c]
            args = []
            for k, (pos, p, role, label) in enumerate(entries, start=1):
                args.append(ArgumentRole(p, role, pos if pos is not None else k, label))
            relationships.append(ReifiedRelationshipClass(c, tuple(args), frozenset(parents), labels_of(c)))
            continue
        if len(metas) != 1 or metas[0] not in (OMP.Kind, OMP.Role):
            raise OntologyError(f"concept {c} needs exactly one meta-ontological type (omp:Kind or omp:Role)")
        used.add(Triple(c, META_TYPE, metas[0]))
        definition = None
        comments = [o for o in graph.objects(c, RDFS.comment) if isinstance(o, Literal) and o.language == "en"]
        if len(comments) == 1:
            definition = comments[0].lexical
            used.add(Triple(c, RDFS.comment, comments[0]))
        meta = MetaType.KIND if metas[0] == OMP.Kind else MetaType.ROLE
        concepts.append(Concept(c, meta, frozenset(parents), labels_of(c), definition))

    extras = tuple(t for t in graph if t not in used)
    return OntologyGraph.build(concepts, relationships, base_namespace=base_namespace, extras=extras)
