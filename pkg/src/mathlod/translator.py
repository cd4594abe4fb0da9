"""FOL-to-RDF translation of atomic sentences and the model-preservation check.

``translate`` maps ``R(c1, ..., cn)`` to a reified relationship: a fresh
blank node typed by ``pmap(R)`` with one argument triple per ``ci``.
``map_interpretation`` carries a finite FOL interpretation over to an RDF
interpretation, and ``check_semantic_condition`` verifies that the image of
every FOL model of ``T ∪ {s}`` is an RDF model of the translation of ``s``
together with the ontology graph.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import MathLodError
from .fol import (
    AtomicSentence,
    FolInterpretation,
    Signature,
    Theory,
    enumerate_fol_interpretations,
    enumerate_fol_models,
)
from .ontology import HAS_ARGUMENT, OntologyGraph, lookup_relationship, to_schema_graph
from .rdf import RDF, RDFS, BNode, Graph, IRI, TRANSLATION_PREFIXES, Triple
from .semantics import STRUCTURAL_VOCABULARY, RdfInterpretation, SatisfactionCheck

__all__ = [
    "Mode",
    "SymbolMapping",
    "TranslationResult",
    "TranslationError",
    "MappingError",
    "ArgumentCountError",
    "ConditionReport",
    "InterpretationMapper",
    "translate",
    "translate_theory",
    "map_interpretation",
    "check_semantic_condition",
]


class TranslationError(MathLodError, ValueError):
    pass


class MappingError(TranslationError):
    """A symbol has no mapping, or a mapping target is not in the ontology."""


class ArgumentCountError(TranslationError):
    pass


class Mode(str, enum.Enum):
    GENERIC = "generic"
    ROLE_PROPERTIES = "role_properties"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, Mode):
            return value
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError:
            raise ValueError(f"unknown translation mode {value!r}") from None


def _namespace_of(iri: IRI) -> str:
    cut = max(iri.value.rfind("#"), iri.value.rfind("/"))
    return iri.value[:cut + 1]


@dataclass(frozen=True)
class SymbolMapping:
    """Predicate and constant tables from FOL symbols to ontology IRIs.

    ``argument_order`` optionally fixes the argument properties of a
    relationship class by position; otherwise the ontology's declared
    positions are used.
    """

    pmap: Mapping[str, IRI]
    cmap: Mapping[str, IRI]
    data_namespace: Optional[str] = None
    argument_order: Mapping[IRI, tuple] = field(default_factory=dict)
    mode: Mode = Mode.GENERIC

    def __post_init__(self) -> None:
        object.__setattr__(self, "pmap", MappingProxyType({k: IRI(str(v)) for k, v in self.pmap.items()}))
        object.__setattr__(self, "cmap", MappingProxyType({k: IRI(str(v)) for k, v in self.cmap.items()}))
        object.__setattr__(self, "argument_order", MappingProxyType(
            {IRI(str(k)): tuple(IRI(str(p)) for p in v) for k, v in self.argument_order.items()}))
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        if self.data_namespace is None:
            spaces = {_namespace_of(i) for i in self.cmap.values()}
            if len(spaces) == 1:
                object.__setattr__(self, "data_namespace", spaces.pop())

    @classmethod
    def from_dict(cls, data: Mapping) -> "SymbolMapping":
        unknown = set(data) - {"pmap", "cmap", "argument_order", "mode", "data_namespace"}
        if unknown:
            raise MappingError(f"unknown mapping fields: {', '.join(sorted(unknown))}")
        try:
            return cls(
                pmap=dict(data.get("pmap", {})),
                cmap=dict(data.get("cmap", {})),
                data_namespace=data.get("data_namespace"),
                argument_order=dict(data.get("argument_order", {})),
                mode=data.get("mode", "generic"),
            )
        except (TypeError, ValueError) as exc:
            raise MappingError(f"invalid mapping: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "SymbolMapping":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MappingError(f"mapping is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise MappingError("mapping document must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {
            "pmap": {k: v.value for k, v in self.pmap.items()},
            "cmap": {k: v.value for k, v in self.cmap.items()},
            "mode": self.mode.value,
        }
        if self.data_namespace:
            out["data_namespace"] = self.data_namespace
        if self.argument_order:
            out["argument_order"] = {k.value: [p.value for p in v] for k, v in self.argument_order.items()}
        return out

    def signature(self, onto: OntologyGraph) -> Signature:
        """The signature the mapping covers; arities come from the relationship classes."""
        preds = {}
        for name, rel in self.pmap.items():
            if rel in self.argument_order:
                preds[name] = len(self.argument_order[rel])
            elif (cls := lookup_relationship(onto, rel)) is not None:
                preds[name] = cls.arity
            else:
                raise MappingError(f"{name} maps to {rel}, which is not a relationship class")
        return Signature(preds, frozenset(self.cmap))

    def prefixes(self) -> dict[str, str]:
        pm = dict(TRANSLATION_PREFIXES)
        if self.data_namespace:
            pm[""] = self.data_namespace
        extra = sorted({_namespace_of(i) for i in self.cmap.values()} - set(pm.values()))
        for k, ns in enumerate(extra, start=1):
            pm[f"ns{k}"] = ns
        return pm


def argument_properties(mapping: SymbolMapping, onto: OntologyGraph, rel: IRI) -> tuple:
    """Argument properties of ``rel`` in position order."""
    if rel in mapping.argument_order:
        return mapping.argument_order[rel]
    cls = lookup_relationship(onto, rel)
    if cls is None:
        raise MappingError(f"{rel} is not a relationship class of the ontology")
    return cls.argument_properties()


@dataclass(frozen=True)
class TranslationResult:
    graph: Graph
    relationship_node: BNode


def _relationship(s: AtomicSentence, mapping: SymbolMapping, onto: OntologyGraph) -> IRI:
    try:
        rel = mapping.pmap[s.predicate]
    except KeyError:
        raise MappingError(f"no pmap entry for predicate {s.predicate!r}") from None
    if lookup_relationship(onto, rel) is None and rel not in mapping.argument_order:
        raise MappingError(f"{s.predicate} maps to {rel}, which is not a relationship class")
    return rel


def _sentence_triples(s, mapping, onto, mode, node) -> list[Triple]:
    rel = _relationship(s, mapping, onto)
    try:
        objects = [mapping.cmap[c] for c in s.args]
    except KeyError as exc:
        raise MappingError(f"no cmap entry for constant {exc.args[0]!r}") from None
    if mode is Mode.GENERIC:
        props = [HAS_ARGUMENT] * len(objects)
    else:
        props = list(argument_properties(mapping, onto, rel))
        if len(props) != len(objects):
            raise ArgumentCountError(
                f"{rel.local_name} has {len(props)} argument properties but {s} has {len(objects)} arguments")
    triples = [Triple(node, RDF.type, rel)]
    triples.extend(Triple(node, p, o) for p, o in zip(props, objects))
    return triples


def translate(
    s: AtomicSentence,
    mapping: SymbolMapping,
    onto: OntologyGraph,
    mode: Mode | str | None = None,
    node_label: str = "rel",
) -> TranslationResult:
    """Translate one ground atom into its reified-relationship graph.

    ``generic`` links every argument with ``omp:hasArgument``;
    ``role_properties`` uses the relationship's position-i argument property
    for argument i.  ``mode`` defaults to the mapping's own mode.
    """
    mode = Mode.parse(mode if mode is not None else mapping.mode)
    node = BNode(node_label)
    return TranslationResult(Graph(_sentence_triples(s, mapping, onto, mode, node), mapping.prefixes()), node)


def translate_theory(
    sentences: Iterable[AtomicSentence],
    mapping: SymbolMapping,
    onto: OntologyGraph,
    mode: Mode | str | None = None,
) -> Graph:
    """Union of the translations, with blank nodes ``rel1``, ``rel2``, ... in sentence order."""
    mode = Mode.parse(mode if mode is not None else mapping.mode)
    triples: list[Triple] = []
    for k, s in enumerate(sentences, start=1):
        triples.extend(_sentence_triples(s, mapping, onto, mode, BNode(f"rel{k}")))
    return Graph(triples, mapping.prefixes())


# --------------------------------------------------------------------------
# interpretations

def _up_closure(pairs: Iterable[tuple]) -> dict:
    """Reflexive-transitive successors for a binary relation given as pairs."""
    succ: dict = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closure: dict = {}
    for start in set(succ) | {b for bs in succ.values() for b in bs}:
        seen = {start}
        stack = [start]
        while stack:
            for nxt in succ.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closure[start] = seen
    return closure


class InterpretationMapper:
    """The mapping ``t`` from FOL to RDF interpretations, prepared for one setting.

    ``t(i)`` has one resource per domain element, one per ground atom of
    ``i`` (the reified relationship instance) and one per vocabulary IRI.
    Base facts type each relationship resource by ``pmap(R)`` and link it to
    its arguments; the result is then closed under the RDFS conditions of
    ``schema`` (sub-class, sub-property, domain, range).  In ``role_properties``
    mode arguments are linked by the ontology's argument properties, in
    ``generic`` mode by ``omp:hasArgument``.
    """

    def __init__(self, mapping: SymbolMapping, onto: OntologyGraph, mode: Mode | str = Mode.ROLE_PROPERTIES,
                 schema: Optional[Graph] = None, extra_vocabulary: Iterable[IRI] = ()):
        self.mapping = mapping
        self.onto = onto
        self.mode = Mode.parse(mode)
        self.schema = schema if schema is not None else to_schema_graph(onto)
        self.props: dict[str, tuple] = {}
        for name, rel in mapping.pmap.items():
            if self.mode is Mode.ROLE_PROPERTIES:
                self.props[name] = argument_properties(mapping, onto, rel)
        cmap_iris = set(mapping.cmap.values())
        vocab = set(self.schema.iris()) | set(mapping.pmap.values()) | {HAS_ARGUMENT} | set(extra_vocabulary)
        for props in self.props.values():
            vocab.update(props)
        self.vocabulary = frozenset(vocab - STRUCTURAL_VOCABULARY - cmap_iris)

        sub_class, sub_prop, self.domain, self.range = [], [], {}, {}
        for s, p, o in self.schema:
            if p == RDFS.subClassOf:
                sub_class.append((s, o))
            elif p == RDFS.subPropertyOf:
                sub_prop.append((s, o))
            elif p == RDFS.domain:
                self.domain.setdefault(s, set()).add(o)
            elif p == RDFS.range:
                self.range.setdefault(s, set()).add(o)
        self.class_up = _up_closure(sub_class)
        self.prop_up = _up_closure(sub_prop)

    def __call__(self, interp: FolInterpretation) -> RdfInterpretation:
        mapping = self.mapping
        den: dict = {iri: iri for iri in self.vocabulary}
        for c, iri in mapping.cmap.items():
            if c in interp.const_map:
                den[iri] = interp.const_map[c]
        resources = set(interp.domain) | set(self.vocabulary)
        prop_ext: dict = {}
        class_ext: dict = {}

        def add_class(c, x):
            for sup in self.class_up.get(c, (c,)):
                class_ext.setdefault(sup, set()).add(x)

        for pred in sorted(interp.pred_map):
            ext = interp.pred_map[pred]
            if not ext:
                continue
            if pred not in mapping.pmap:
                raise MappingError(f"no pmap entry for predicate {pred!r}")
            rel_class = mapping.pmap[pred]
            for tup in sorted(ext):
                r = ("rel", pred, tup)
                resources.add(r)
                add_class(rel_class, r)
                if self.mode is Mode.ROLE_PROPERTIES:
                    props = self.props[pred]
                    if len(props) != len(tup):
                        raise ArgumentCountError(f"{rel_class.local_name} expects {len(props)} arguments")
                else:
                    props = [HAS_ARGUMENT] * len(tup)
                for p, x in zip(props, tup):
                    for q in self.prop_up.get(p, (p,)):
                        prop_ext.setdefault(q, set()).add((r, x))
                        for c in self.domain.get(q, ()):
                            add_class(c, r)
                        for c in self.range.get(q, ()):
                            add_class(c, x)
        return RdfInterpretation(frozenset(resources), den, prop_ext, class_ext)


def map_interpretation(
    interp: FolInterpretation,
    mapping: SymbolMapping,
    onto: OntologyGraph,
    mode: Mode | str = Mode.ROLE_PROPERTIES,
    schema: Optional[Graph] = None,
) -> RdfInterpretation:
    """``t(interp)``; see :class:`InterpretationMapper`."""
    return InterpretationMapper(mapping, onto, mode, schema)(interp)


# --------------------------------------------------------------------------
# the condition

@dataclass(frozen=True)
class ConditionReport:
    passed: bool
    fol_models_checked: int
    graph: Graph
    domain_size: int
    mode: Mode
    t_mode: Mode
    counterexample: Optional[FolInterpretation] = None
    counterexample_image: Optional[RdfInterpretation] = None
    candidates_checked: Optional[int] = None
    rdf_models: Optional[int] = None
    strict: Optional[bool] = None

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        strict = {True: "yes", False: "no", None: "unknown"}[self.strict]
        return f"{verdict} checked={self.fol_models_checked} strict={strict}"


def check_semantic_condition(
    theory: Theory,
    s: AtomicSentence,
    mapping: SymbolMapping,
    onto: OntologyGraph,
    domain_size: int,
    mode: Mode | str | None = None,
    *,
    t_mode: Mode | str = Mode.ROLE_PROPERTIES,
    schema: Optional[Graph] = None,
    strictness_limit: int = 1 << 16,
    **caps,
) -> ConditionReport:
    """Check ``t(M_FOL(T ∪ {s})) ⊆ M_RDF(*(s) ∪ o)`` at one domain size.

    ``mode`` selects the translation, ``t_mode`` the interpretation mapping.
    ``schema`` overrides the ontology graph ``o`` (defaults to the projection
    of ``onto``).  The inclusion is over the finite family of images of FOL
    interpretations of the given size; strictness asks whether some image
    of a non-model is nevertheless an RDF model.  It is computed only when
    the full interpretation space has at most ``strictness_limit`` members.
    """
    mode = Mode.parse(mode if mode is not None else mapping.mode)
    t_mode = Mode.parse(t_mode)
    graph = translate(s, mapping, onto, mode).graph
    schema = schema if schema is not None else to_schema_graph(onto)
    check = SatisfactionCheck(graph, schema)
    mapper = InterpretationMapper(mapping, onto, t_mode, schema, extra_vocabulary=graph.iris())

    checked = 0
    images = set()
    for interp in enumerate_fol_models(theory, s, domain_size, **caps):
        checked += 1
        image = mapper(interp)
        if not check(image):
            return ConditionReport(False, checked, graph, domain_size, mode, t_mode,
                                   counterexample=interp, counterexample_image=image)
        images.add(image)

    sig = theory.signature
    space = domain_size ** len(sig.constants) * 2 ** sum(domain_size ** a for a in sig.predicates.values())
    if space > strictness_limit:
        return ConditionReport(True, checked, graph, domain_size, mode, t_mode)
    candidates = rdf_models = 0
    strict = False
    for interp in enumerate_fol_interpretations(sig, domain_size, **caps):
        candidates += 1
        image = mapper(interp)
        if check(image):
            rdf_models += 1
            if image not in images:
                strict = True
    return ConditionReport(True, checked, graph, domain_size, mode, t_mode,
                           candidates_checked=candidates, rdf_models=rdf_models, strict=strict)
