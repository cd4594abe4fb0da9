"""Minimal RDF data model: terms, graphs, namespaces and graph isomorphism.

Graphs keep insertion order (the Turtle serializer relies on it) but compare
as triple sets.  Blank nodes are plain labelled terms; isomorphism is
decided modulo a bijective relabelling of blank nodes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union

__all__ = [
    "IRI",
    "BNode",
    "Literal",
    "Triple",
    "Graph",
    "Namespace",
    "RDF",
    "RDFS",
    "OWL",
    "XSD",
    "OMP",
    "ONTOLEX",
    "SYNSEM",
    "LEXINFO",
    "LEXICONS",
    "TRANSLATION_PREFIXES",
    "LEXICON_PREFIXES",
    "graphs_isomorphic",
    "find_bnode_bijection",
]

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_WS = re.compile(r"\s")
_BNODE_LABEL = re.compile(r"^[A-Za-z0-9_]+$")
_PREFIX_NAME = re.compile(r"^(?:[A-Za-z](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$")


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.value, str) or not self.value:
            raise ValueError("IRI must be a non-empty string")
        if _WS.search(self.value):
            raise ValueError(f"IRI contains whitespace: {self.value!r}")
        if not _SCHEME.match(self.value):
            raise ValueError(f"IRI has no scheme: {self.value!r}")

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"IRI({self.value!r})"

    @property
    def local_name(self) -> str:
        """Fragment after the last ``#`` or ``/``."""
        cut = max(self.value.rfind("#"), self.value.rfind("/"))
        return self.value[cut + 1:] if cut >= 0 else self.value


@dataclass(frozen=True, slots=True)
class BNode:
    label: str

    def __post_init__(self) -> None:
        if not isinstance(self.label, str) or not _BNODE_LABEL.match(self.label):
            raise ValueError(f"invalid blank node label: {self.label!r}")

    def __str__(self) -> str:
        return f"_:{self.label}"

    def __repr__(self) -> str:
        return f"BNode({self.label!r})"


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    language: Optional[str] = None
    datatype: Optional[IRI] = None

    def __post_init__(self) -> None:
        if self.language is not None and self.datatype is not None:
            raise ValueError("a literal cannot carry both a language tag and a datatype")
        if self.language is not None and not re.match(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$", self.language):
            raise ValueError(f"invalid language tag: {self.language!r}")

    def __str__(self) -> str:
        return self.lexical


Subject = Union[IRI, BNode]
Node = Union[IRI, BNode, Literal]


class Triple(NamedTuple):
    subject: Subject
    predicate: IRI
    object: Node


def _check_triple(t) -> Triple:
    s, p, o = t
    if not isinstance(s, (IRI, BNode)):
        raise TypeError(f"triple subject must be IRI or BNode, got {s!r}")
    if not isinstance(p, IRI):
        raise TypeError(f"triple predicate must be an IRI, got {p!r}")
    if not isinstance(o, (IRI, BNode, Literal)):
        raise TypeError(f"triple object must be an RDF term, got {o!r}")
    return t if isinstance(t, Triple) else Triple(s, p, o)


class Graph:
    """An immutable set of triples with an ordered prefix map.

    Iteration yields triples in first-insertion order.  Equality and hashing
    consider the triple set only; prefixes are presentation.
    """

    __slots__ = ("_triples", "_set", "prefixes")

    def __init__(self, triples: Iterable = (), prefixes: Optional[Mapping[str, str]] = None):
        ordered = dict.fromkeys(_check_triple(t) for t in triples)
        self._triples: tuple[Triple, ...] = tuple(ordered)
        self._set = frozenset(ordered)
        pm = {}
        for name, ns in (prefixes or {}).items():
            if not _PREFIX_NAME.match(name):
                raise ValueError(f"invalid Turtle prefix name: {name!r}")
            pm[name] = str(IRI(str(ns)))
        self.prefixes: Mapping[str, str] = MappingProxyType(pm)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple) -> bool:
        return tuple(triple) in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"<Graph with {len(self)} triples>"

    @property
    def triple_set(self) -> frozenset:
        return self._set

    def union(self, other: Iterable, prefixes: Optional[Mapping[str, str]] = None) -> "Graph":
        """Union of triples; prefixes of ``self`` first, then the extra ones."""
        pm = dict(self.prefixes)
        extra = prefixes if prefixes is not None else getattr(other, "prefixes", {})
        for k, v in extra.items():
            pm.setdefault(k, v)
        return Graph((*self._triples, *other), pm)

    def without(self, *triples) -> "Graph":
        drop = {tuple(t) for t in triples}
        return Graph((t for t in self._triples if t not in drop), self.prefixes)

    def with_prefixes(self, prefixes: Mapping[str, str]) -> "Graph":
        return Graph(self._triples, prefixes)

    def match(self, s=None, p=None, o=None) -> Iterator[Triple]:
        for t in self._triples:
            if (s is None or t.subject == s) and (p is None or t.predicate == p) and (o is None or t.object == o):
                yield t

    def objects(self, s, p) -> list:
        return [t.object for t in self.match(s, p)]

    def value(self, s, p):
        """The single object of ``(s, p, ?)``, or None; ValueError if several."""
        objs = self.objects(s, p)
        if len(objs) > 1:
            raise ValueError(f"{s} has {len(objs)} values for {p}")
        return objs[0] if objs else None

    def subjects(self, p=None, o=None) -> list:
        return list(dict.fromkeys(t.subject for t in self.match(None, p, o)))

    def bnodes(self) -> set[BNode]:
        out = set()
        for s, _, o in self._triples:
            if isinstance(s, BNode):
                out.add(s)
            if isinstance(o, BNode):
                out.add(o)
        return out

    def iris(self) -> set[IRI]:
        out = set()
        for t in self._triples:
            for term in t:
                if isinstance(term, IRI):
                    out.add(term)
        return out


class Namespace(str):
    """An IRI prefix; attribute access and :meth:`term` mint IRIs."""

    def term(self, name: str) -> IRI:
        return IRI(str(self) + name)

    def __getattr__(self, name: str) -> IRI:
        if name.startswith("__"):
            raise AttributeError(name)
        iri = self.__dict__[name] = self.term(name)
        return iri


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
OMP = Namespace("http://ontomathpro.org/omp2#")
ONTOLEX = Namespace("http://www.w3.org/ns/lemon/ontolex#")
SYNSEM = Namespace("http://www.w3.org/ns/lemon/synsem#")
LEXINFO = Namespace("http://www.lexinfo.net/ontology/2.0/lexinfo#")
LEXICONS = Namespace("http://ontomathpro.org/lexicons/")

# Prefix block of a translated statement, in emission order.
TRANSLATION_PREFIXES: Mapping[str, str] = MappingProxyType({
    "rdf": str(RDF),
    "rdfs": str(RDFS),
    "owl": str(OWL),
    "omp": str(OMP),
})

# Prefix block of an LLOD lexicon, in emission order.
LEXICON_PREFIXES: Mapping[str, str] = MappingProxyType({
    "": str(LEXICONS),
    "omp": str(OMP),
    "ontolex": str(ONTOLEX),
    "synsem": str(SYNSEM),
    "lexinfo": str(LEXINFO),
})


# --------------------------------------------------------------------------
# isomorphism

def find_bnode_bijection(a: Graph, b: Graph) -> Optional[dict[BNode, BNode]]:
    """Return a blank node bijection mapping ``a`` onto ``b``, or None."""
    if len(a) != len(b):
        return None
    ga = {t for t in a if not isinstance(t.subject, BNode) and not isinstance(t.object, BNode)}
    gb = {t for t in b if not isinstance(t.subject, BNode) and not isinstance(t.object, BNode)}
    if ga != gb:
        return None
    ta = [t for t in a if t not in ga]
    tb_set = {t for t in b if t not in gb}
    ba, bb = sorted(a.bnodes(), key=lambda n: n.label), sorted(b.bnodes(), key=lambda n: n.label)
    if len(ba) != len(bb):
        return None
    # Colour ids come from one registry so they are comparable across graphs.
    ca, cb = _joint_refine(ta, ba, list(tb_set), bb)
    if sorted(ca.values()) != sorted(cb.values()):
        return None

    by_colour: dict[int, list[BNode]] = {}
    for n in bb:
        by_colour.setdefault(cb[n], []).append(n)
    order = sorted(ba, key=lambda n: (len(by_colour.get(ca[n], ())), n.label))
    touching: dict[BNode, list[Triple]] = {n: [] for n in ba}
    for t in ta:
        for term in (t.subject, t.object):
            if isinstance(term, BNode):
                touching[term].append(t)

    mapping: dict[BNode, BNode] = {}
    used: set[BNode] = set()

    def image(term):
        return mapping.get(term) if isinstance(term, BNode) else term

    def consistent(n) -> bool:
        for s, p, o in touching[n]:
            ms, mo = image(s), image(o)
            if ms is None or mo is None:
                continue
            if (ms, p, mo) not in tb_set:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        n = order[i]
        for cand in by_colour.get(ca[n], ()):
            if cand in used:
                continue
            mapping[n] = cand
            used.add(cand)
            if consistent(n) and search(i + 1):
                return True
            del mapping[n]
            used.discard(cand)
        return False

    if not search(0):
        return None
    mapped = {(image(s), p, image(o)) for s, p, o in ta}
    return dict(mapping) if mapped == tb_set else None


def _joint_refine(ta, ba, tb, bb):
    ca = {n: 0 for n in ba}
    cb = {n: 0 for n in bb}
    n_classes = 1
    while True:
        registry: dict = {}
        new_a = _signatures(ta, ba, ca, registry)
        new_b = _signatures(tb, bb, cb, registry)
        classes = len(set(new_a.values()) | set(new_b.values()))
        ca, cb = new_a, new_b
        if classes == n_classes:
            return ca, cb
        n_classes = classes


def _signatures(triples, bnodes, colour, registry):
    sigs = {n: [] for n in bnodes}
    for s, p, o in triples:
        if isinstance(s, BNode):
            sigs[s].append(("s", p, ("b", colour[o]) if isinstance(o, BNode) else ("g", o)))
        if isinstance(o, BNode):
            sigs[o].append(("o", p, ("b", colour[s]) if isinstance(s, BNode) else ("g", s)))
    out = {}
    for n in bnodes:
        key = (colour[n], tuple(sorted(sigs[n], key=repr)))
        out[n] = registry.setdefault(key, len(registry))
    return out


def graphs_isomorphic(a: Graph, b: Graph) -> bool:
    """True iff some blank node bijection makes the triple sets of a and b equal."""
    return find_bnode_bijection(a, b) is not None
