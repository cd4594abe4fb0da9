"""Linguistic layer: lexical entries, syntactic frames and their ontology senses.

A sense binds the slots of one syntactic frame to the argument properties of
a reified relationship class.  That binding drives both directions:
:func:`parse_phrase` turns a controlled phrase such as ``m divides n`` into a
relationship instance graph and :func:`verbalize` renders such a graph back.
Lexicons are stored as Lemon/LexInfo Turtle.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import MathLodError
from .ontology import OntologyGraph, lookup_relationship
from .rdf import (
    LEXICON_PREFIXES,
    LEXICONS,
    LEXINFO,
    ONTOLEX,
    RDF,
    SYNSEM,
    TRANSLATION_PREFIXES,
    BNode,
    Graph,
    IRI,
    Literal,
    Triple,
)
from .turtle import parse_turtle, serialize_turtle

__all__ = [
    "PartOfSpeech",
    "FrameType",
    "SLOTS",
    "Form",
    "SyntacticArgument",
    "SyntacticFrame",
    "OntologyMapping",
    "LexicalEntry",
    "Lexicon",
    "LexiconError",
    "LexiconStructureError",
    "PhraseError",
    "NoEntryError",
    "NoFrameMatchError",
    "UnknownEntityError",
    "AmbiguityError",
    "VerbalizationError",
    "MissingLexicalizationError",
    "UnboundSlotError",
    "find_entry_by_form",
    "parse_phrase",
    "verbalize",
    "lexicon_graph",
    "serialize_llod",
    "load_llod",
    "check_references",
]


class LexiconError(MathLodError, ValueError):
    pass


class LexiconStructureError(LexiconError):
    """Lexicon data violates a structural invariant."""


class PhraseError(LexiconError):
    pass


class NoEntryError(PhraseError):
    pass


class NoFrameMatchError(PhraseError):
    pass


class UnknownEntityError(PhraseError):
    pass


class AmbiguityError(PhraseError):
    def __init__(self, phrase: str, candidates: list):
        self.candidates = candidates
        names = ", ".join(str(c) for c in candidates)
        super().__init__(f"{phrase!r} matches {len(candidates)} senses: {names}")


class VerbalizationError(LexiconError):
    pass


class MissingLexicalizationError(VerbalizationError):
    pass


class UnboundSlotError(VerbalizationError):
    pass


class PartOfSpeech(str, enum.Enum):
    VERB = "verb"
    NOUN = "noun"
    ADJECTIVE = "adjective"
    PREPOSITION = "preposition"

    @property
    def iri(self) -> IRI:
        return LEXINFO.term(self.value)


class FrameType(str, enum.Enum):
    TRANSITIVE = "transitive"
    TRANSITIVE_PP = "transitive_pp"
    NOUN_PP = "noun_pp"

    @property
    def iri(self) -> IRI:
        return _FRAME_CLASSES[self]


_FRAME_CLASSES = {
    FrameType.TRANSITIVE: LEXINFO.TransitiveFrame,
    FrameType.TRANSITIVE_PP: LEXINFO.TransitivePPFrame,
    FrameType.NOUN_PP: LEXINFO.NounPPFrame,
}
_FRAME_BY_CLASS = {v: k for k, v in _FRAME_CLASSES.items()}

SLOTS = ("subject", "direct_object", "prepositional_object")
# slot -> (frame property, argument class)
_SLOT_VOCAB = {
    "subject": (LEXINFO.subject, LEXINFO.Subject),
    "direct_object": (LEXINFO.directObject, LEXINFO.DirectObject),
    "prepositional_object": (LEXINFO.prepositionalAdjunct, LEXINFO.PrepositionalAdjunct),
}
_SLOT_BY_PROPERTY = {prop: slot for slot, (prop, _) in _SLOT_VOCAB.items()}

_REQUIRED_SLOTS = {
    FrameType.TRANSITIVE: {"subject", "direct_object"},
    FrameType.TRANSITIVE_PP: {"subject", "direct_object", "prepositional_object"},
    FrameType.NOUN_PP: {"subject", "prepositional_object"},
}

_TYPE = RDF.type


@dataclass(frozen=True)
class Form:
    id: IRI
    written_rep: str
    language: str
    grammatical_features: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.written_rep or not self.written_rep.strip():
            raise LexiconStructureError(f"form {self.id} has an empty written representation")
        object.__setattr__(self, "grammatical_features", dict(self.grammatical_features))

    @property
    def is_third_person_singular(self) -> bool:
        f = self.grammatical_features
        return f.get("person") == "thirdPerson" and f.get("number") == "singular"


@dataclass(frozen=True)
class SyntacticArgument:
    id: IRI
    slot: str

    def __post_init__(self) -> None:
        if self.slot not in SLOTS:
            raise LexiconStructureError(f"unknown slot {self.slot!r}")


@dataclass(frozen=True)
class SyntacticFrame:
    id: IRI
    frame_type: FrameType
    slots: Mapping[str, SyntacticArgument]
    preposition: Optional[str] = None

    def __post_init__(self) -> None:
        frame_type = FrameType(self.frame_type)
        slots = {k: self.slots[k] for k in SLOTS if k in self.slots}
        if set(self.slots) - set(SLOTS):
            raise LexiconStructureError(f"frame {self.id}: unknown slots {sorted(set(self.slots) - set(SLOTS))}")
        missing = _REQUIRED_SLOTS[frame_type] - set(slots)
        if missing:
            raise LexiconStructureError(f"frame {self.id} ({frame_type.value}) lacks slots {sorted(missing)}")
        extra = set(slots) - _REQUIRED_SLOTS[frame_type]
        if extra:
            raise LexiconStructureError(f"frame {self.id} ({frame_type.value}) has unexpected slots {sorted(extra)}")
        needs_prep = "prepositional_object" in _REQUIRED_SLOTS[frame_type]
        if needs_prep and not self.preposition:
            raise LexiconStructureError(f"frame {self.id} ({frame_type.value}) needs a preposition")
        if not needs_prep and self.preposition:
            raise LexiconStructureError(f"frame {self.id} ({frame_type.value}) takes no preposition")
        ids = [a.id for a in slots.values()]
        if len(set(ids)) != len(ids):
            raise LexiconStructureError(f"frame {self.id} reuses a syntactic argument id")
        for name, arg in slots.items():
            if arg.slot != name:
                raise LexiconStructureError(f"argument {arg.id} is filed under {name} but declares {arg.slot}")
        object.__setattr__(self, "frame_type", frame_type)
        object.__setattr__(self, "slots", slots)


@dataclass(frozen=True)
class OntologyMapping:
    """A lexical sense: frame slots bound to a relationship's argument properties."""

    id: IRI
    relationship_class: IRI
    slot_bindings: Mapping[str, IRI]
    slot_role_types: Mapping[str, IRI] = field(default_factory=dict)
    frame: Optional[IRI] = None
    # Kept from loaded data for inspection only; never serialized.
    onto_mapping_ref: Optional[IRI] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "slot_bindings", {k: self.slot_bindings[k] for k in SLOTS if k in self.slot_bindings})
        object.__setattr__(self, "slot_role_types",
                           {k: self.slot_role_types[k] for k in SLOTS if k in self.slot_role_types})
        unknown = (set(self.slot_bindings) | set(self.slot_role_types)) - set(SLOTS)
        if unknown:
            raise LexiconStructureError(f"sense {self.id}: unknown slots {sorted(unknown)}")


@dataclass(frozen=True)
class LexicalEntry:
    id: IRI
    part_of_speech: PartOfSpeech
    canonical_form: Form
    other_forms: tuple = ()
    frames: tuple = ()
    senses: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "part_of_speech", PartOfSpeech(self.part_of_speech))
        object.__setattr__(self, "other_forms", tuple(self.other_forms))
        object.__setattr__(self, "frames", tuple(self.frames))
        object.__setattr__(self, "senses", tuple(self.senses))
        frame_ids = {f.id for f in self.frames}
        for sense in self.senses:
            frame = self.frame_for(sense)
            if sense.frame is not None and sense.frame not in frame_ids:
                raise LexiconStructureError(f"sense {sense.id} refers to unknown frame {sense.frame}")
            if frame is None:
                raise LexiconStructureError(f"sense {sense.id} of {self.id} has no frame to bind")
            bad = (set(sense.slot_bindings) | set(sense.slot_role_types)) - set(frame.slots)
            if bad:
                raise LexiconStructureError(f"sense {sense.id} binds slots {sorted(bad)} absent from {frame.id}")

    @property
    def forms(self) -> tuple:
        return (self.canonical_form, *self.other_forms)

    def frame_for(self, sense: OntologyMapping) -> Optional[SyntacticFrame]:
        if sense.frame is None:
            return self.frames[0] if self.frames else None
        return next((f for f in self.frames if f.id == sense.frame), None)


@dataclass(frozen=True)
class Lexicon:
    language: str
    entries: Mapping[IRI, LexicalEntry] = field(default_factory=dict)
    namespace: str = str(LEXICONS)

    def __post_init__(self) -> None:
        entries = dict(self.entries)
        for iri, entry in entries.items():
            if iri != entry.id:
                raise LexiconStructureError(f"entry filed under {iri} has id {entry.id}")
            for form in entry.forms:
                if form.language != self.language:
                    raise LexiconStructureError(
                        f"form {form.id} is in {form.language!r}, lexicon language is {self.language!r}")
        object.__setattr__(self, "entries", MappingProxyType(entries))

    @classmethod
    def build(cls, language: str, entries: Iterable[LexicalEntry], namespace: str = str(LEXICONS)) -> "Lexicon":
        entries = list(entries)
        ids = [e.id for e in entries]
        if len(set(ids)) != len(ids):
            raise LexiconStructureError("duplicate lexical entry id")
        return cls(language, {e.id: e for e in entries}, namespace)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return (self.language, dict(self.entries), self.namespace) == (other.language, dict(other.entries), other.namespace)

    __hash__ = None  # type: ignore[assignment]


# --------------------------------------------------------------------------
# lookup, parsing, verbalization

def _norm(text: str) -> str:
    return " ".join(text.split()).casefold()


def find_entry_by_form(lex: Lexicon, token: str) -> list[tuple[LexicalEntry, Form]]:
    """All (entry, form) pairs whose written form equals ``token``, ignoring case."""
    key = _norm(token)
    return [(e, f) for e in lex.entries.values() for f in e.forms if _norm(f.written_rep) == key]


_TOKEN = re.compile(r'"([^"]*)"|(\S+)')


def _tokenize(phrase: str) -> list[tuple[str, bool]]:
    if phrase.count('"') % 2:
        raise PhraseError(f"unbalanced quotes in {phrase!r}")
    return [(m.group(1), True) if m.group(1) is not None else (m.group(2), False)
            for m in _TOKEN.finditer(phrase)]


def _form_spans(lex: Lexicon, words: list[tuple[str, bool]], start: int, pos: PartOfSpeech):
    """(length, entry, form) for forms of ``pos`` matching the words from ``start``, longest first."""
    out = []
    for length in range(len(words) - start, 0, -1):
        span = words[start:start + length]
        if any(quoted for _, quoted in span):
            continue
        for entry, form in find_entry_by_form(lex, " ".join(w for w, _ in span)):
            if entry.part_of_speech is pos:
                out.append((length, entry, form))
    return out


_ARTICLES = {"a", "an", "the"}


def _match(lex: Lexicon, words):
    """Every (entry, sense, frame, slot-token map) the word sequence instantiates."""
    found = []
    lowered = [w.casefold() if not q else None for w, q in words]
    # <subject> <verb> <object> [<prep> <pp-object>]
    for length, entry, _ in _form_spans(lex, words, 1, PartOfSpeech.VERB):
        rest = words[1 + length:]
        for frame in entry.frames:
            if frame.frame_type is FrameType.TRANSITIVE and len(rest) == 1:
                tokens = {"subject": words[0][0], "direct_object": rest[0][0]}
            elif (frame.frame_type is FrameType.TRANSITIVE_PP and len(rest) == 3 and not rest[1][1]
                  and rest[1][0].casefold() == frame.preposition.casefold()):
                tokens = {"subject": words[0][0], "direct_object": rest[0][0], "prepositional_object": rest[2][0]}
            else:
                continue
            found.extend((entry, s, frame, tokens) for s in entry.senses if entry.frame_for(s) is frame)
    # <subject> is [article] <noun> <prep> <pp-object>
    if len(words) >= 5 and lowered[1] == "is":
        start = 3 if lowered[2] in _ARTICLES else 2
        for length, entry, _ in _form_spans(lex, words, start, PartOfSpeech.NOUN):
            rest = words[start + length:]
            for frame in entry.frames:
                if (frame.frame_type is FrameType.NOUN_PP and len(rest) == 2 and not rest[0][1]
                        and rest[0][0].casefold() == frame.preposition.casefold()):
                    tokens = {"subject": words[0][0], "prepositional_object": rest[1][0]}
                    found.extend((entry, s, frame, tokens) for s in entry.senses if entry.frame_for(s) is frame)
    return found


def _check_sense(onto: OntologyGraph, sense: OntologyMapping) -> None:
    rel = lookup_relationship(onto, sense.relationship_class)
    if rel is None:
        raise LexiconError(f"sense {sense.id} refers to unknown relationship {sense.relationship_class}")
    props = set(rel.argument_properties())
    for slot, prop in sense.slot_bindings.items():
        if prop not in props:
            raise LexiconError(f"sense {sense.id} binds {slot} to {prop}, not an argument of {rel.id}")


def _namespace_prefixes(iris: Iterable[IRI]) -> dict[str, str]:
    pm = dict(TRANSLATION_PREFIXES)
    spaces = {i.value[:max(i.value.rfind("#"), i.value.rfind("/")) + 1] for i in iris}
    if len(spaces) == 1:
        pm[""] = spaces.pop()
    return pm


def parse_phrase(lex: Lexicon, onto: OntologyGraph, phrase: str, entity_map: Mapping[str, IRI]) -> Graph:
    """Parse a controlled phrase into a relationship instance graph.

    Accepted shapes are ``S verb O``, ``S verb O prep X`` and
    ``S is [a|an|the] noun prep X``.  Each argument is one token or a
    double-quoted span and is resolved through ``entity_map``.  The instance
    is a blank node ``_:rel`` typed by the sense's relationship class with one
    triple per bound slot.
    """
    words = _tokenize(phrase)
    if len(words) < 3:
        raise PhraseError(f"phrase {phrase!r} has fewer than three tokens")
    matches = _match(lex, words)
    if not matches:
        has_entry = any(find_entry_by_form(lex, w) for w, q in words if not q) or any(
            _form_spans(lex, words, k, pos) for k in range(1, len(words)) for pos in PartOfSpeech)
        if has_entry:
            raise NoFrameMatchError(f"no syntactic frame matches {phrase!r}")
        raise NoEntryError(f"no lexical entry matches any word of {phrase!r}")
    senses = list(dict.fromkeys(s.id for _, s, _, _ in matches))
    if len(senses) > 1:
        raise AmbiguityError(phrase, senses)
    entry, sense, frame, tokens = matches[0]
    _check_sense(onto, sense)

    node = BNode("rel")
    triples = [Triple(node, _TYPE, sense.relationship_class)]
    objects = []
    for slot in SLOTS:
        if slot not in sense.slot_bindings:
            continue
        token = tokens[slot]
        if token not in entity_map:
            raise UnknownEntityError(f"token {token!r} is not in the entity map")
        target = IRI(str(entity_map[token]))
        objects.append(target)
        triples.append(Triple(node, sense.slot_bindings[slot], target))
    return Graph(triples, _namespace_prefixes(objects))


def _render(token: str) -> str:
    return f'"{token}"' if any(c.isspace() for c in token) else token


def verbalize(lex: Lexicon, onto: OntologyGraph, instance: Graph, label_map: Mapping[IRI, str]) -> str:
    """Render a relationship instance graph as a controlled phrase.

    The first sense (entry order, then sense order) lexicalizing the
    instance's type is used; verbs take their third-person singular form
    when one is declared.
    """
    by_class: dict[IRI, tuple] = {}
    for entry in lex.entries.values():
        for sense in entry.senses:
            by_class.setdefault(sense.relationship_class, (entry, sense))
    nodes = [(t.subject, t.object) for t in instance.match(None, _TYPE) if t.object in by_class]
    if not nodes:
        types = sorted(str(t.object) for t in instance.match(None, _TYPE))
        raise MissingLexicalizationError(f"no sense lexicalizes any of {types or 'the untyped nodes'}")
    if len({n for n, _ in nodes}) > 1:
        raise VerbalizationError("instance contains more than one lexicalized relationship node")
    node, rel_class = nodes[0]
    entry, sense = by_class[rel_class]
    frame = entry.frame_for(sense)

    words = {}
    for slot in frame.slots:
        prop = sense.slot_bindings.get(slot)
        if prop is None:
            raise UnboundSlotError(f"sense {sense.id} does not bind slot {slot}")
        values = instance.objects(node, prop)
        if len(values) != 1:
            raise UnboundSlotError(f"slot {slot} ({prop}) has {len(values)} values in the instance")
        value = values[0]
        if value in label_map:
            words[slot] = label_map[value]
        elif isinstance(value, IRI):
            words[slot] = value.local_name
        elif isinstance(value, Literal):
            words[slot] = value.lexical
        else:
            raise UnboundSlotError(f"slot {slot} is filled by blank node {value}")

    form = entry.canonical_form
    if entry.part_of_speech is PartOfSpeech.VERB:
        form = next((f for f in entry.forms if f.is_third_person_singular), form)
    if frame.frame_type is FrameType.NOUN_PP:
        parts = [_render(words["subject"]), "is", form.written_rep, frame.preposition,
                 _render(words["prepositional_object"])]
    else:
        parts = [_render(words["subject"]), form.written_rep, _render(words["direct_object"])]
        if frame.frame_type is FrameType.TRANSITIVE_PP:
            parts += [frame.preposition, _render(words["prepositional_object"])]
    return " ".join(parts)


def check_references(lex: Lexicon, onto: OntologyGraph) -> list[str]:
    """Problems with senses that point at missing relationship classes or properties."""
    problems = []
    for entry in lex.entries.values():
        for sense in entry.senses:
            try:
                _check_sense(onto, sense)
            except LexiconError as exc:
                problems.append(str(exc))
            for slot, role in sense.slot_role_types.items():
                if role not in onto.concepts:
                    problems.append(f"sense {sense.id} types {slot} with unknown concept {role}")
    return problems


# --------------------------------------------------------------------------
# LLOD

def _bnode_stem(iri: IRI) -> str:
    return re.sub(r"[^A-Za-z0-9_]", "_", iri.local_name) or "sense"


def lexicon_graph(lex: Lexicon) -> Graph:
    """The lexicon as Lemon/LexInfo triples, in a stable order."""
    t: list[Triple] = []
    for entry in lex.entries.values():
        t.append(Triple(entry.id, _TYPE, ONTOLEX.LexicalEntry))
        t.append(Triple(entry.id, LEXINFO.partOfSpeech, entry.part_of_speech.iri))
        t.append(Triple(entry.id, ONTOLEX.canonicalForm, entry.canonical_form.id))
        t.extend(Triple(entry.id, ONTOLEX.otherForm, f.id) for f in entry.other_forms)
        t.extend(Triple(entry.id, SYNSEM.synBehavior, f.id) for f in entry.frames)
        t.extend(Triple(entry.id, ONTOLEX.sense, s.id) for s in entry.senses)
        for form in entry.forms:
            t.append(Triple(form.id, _TYPE, ONTOLEX.Form))
            t.append(Triple(form.id, ONTOLEX.writtenRep, Literal(form.written_rep, language=form.language)))
            for feat, val in sorted(form.grammatical_features.items()):
                t.append(Triple(form.id, LEXINFO.term(feat), LEXINFO.term(val)))
        for frame in entry.frames:
            t.append(Triple(frame.id, _TYPE, frame.frame_type.iri))
            for slot, arg in frame.slots.items():
                t.append(Triple(frame.id, _SLOT_VOCAB[slot][0], arg.id))
            for slot, arg in frame.slots.items():
                t.append(Triple(arg.id, _TYPE, _SLOT_VOCAB[slot][1]))
                if slot == "prepositional_object":
                    t.append(Triple(arg.id, SYNSEM.marker, Literal(frame.preposition, language=lex.language)))
        for sense in entry.senses:
            frame = entry.frame_for(sense)
            stem = _bnode_stem(sense.id)
            var = BNode(f"{stem}_rel")
            t.append(Triple(sense.id, _TYPE, ONTOLEX.LexicalSense))
            t.append(Triple(sense.id, _TYPE, SYNSEM.OntoMap))
            t.append(Triple(sense.id, ONTOLEX.reference, sense.relationship_class))
            submaps = [[(ONTOLEX.reference, sense.relationship_class), (SYNSEM.isA, var)]]
            for slot, prop in sense.slot_bindings.items():
                submaps.append([(ONTOLEX.reference, prop), (SYNSEM.subjOfProp, var),
                                (SYNSEM.objOfProp, frame.slots[slot].id)])
            for slot, role in sense.slot_role_types.items():
                submaps.append([(ONTOLEX.reference, role), (SYNSEM.isA, frame.slots[slot].id)])
            nodes = [BNode(f"{stem}_m{k}") for k in range(1, len(submaps) + 1)]
            t.extend(Triple(sense.id, SYNSEM.submap, n) for n in nodes)
            for n, body in zip(nodes, submaps):
                t.append(Triple(n, _TYPE, SYNSEM.OntoMap))
                t.extend(Triple(n, p, o) for p, o in body)
    prefixes = dict(LEXICON_PREFIXES)
    prefixes[""] = lex.namespace
    return Graph(t, prefixes)


def serialize_llod(lex: Lexicon) -> str:
    return serialize_turtle(lexicon_graph(lex))


def _one(graph: Graph, s, p, what: str, required: bool = True):
    values = graph.objects(s, p)
    if len(values) > 1:
        raise LexiconStructureError(f"{s} has {len(values)} {what} values")
    if not values:
        if required:
            raise LexiconStructureError(f"{s} has no {what}")
        return None
    return values[0]


def load_llod(text: str) -> Lexicon:
    """Read a Lemon/LexInfo lexicon; raises :class:`LexiconStructureError` on inconsistent data."""
    graph = parse_turtle(text)
    namespace = graph.prefixes.get("", str(LEXICONS))
    languages: set[str] = set()
    entries = []

    def load_form(fid) -> Form:
        rep = _one(graph, fid, ONTOLEX.writtenRep, "written representation")
        if not isinstance(rep, Literal) or not rep.language:
            raise LexiconStructureError(f"form {fid} needs a language-tagged written representation")
        languages.add(rep.language)
        feats = {}
        for _, p, o in graph.match(fid):
            if p != ONTOLEX.writtenRep and p.value.startswith(str(LEXINFO)) and isinstance(o, IRI) \
                    and o.value.startswith(str(LEXINFO)):
                if p.local_name in feats:
                    raise LexiconStructureError(f"form {fid} has two values for {p.local_name}")
                feats[p.local_name] = o.local_name
        return Form(fid, rep.lexical, rep.language, feats)

    for eid in graph.subjects(_TYPE, ONTOLEX.LexicalEntry):
        if not isinstance(eid, IRI):
            raise LexiconStructureError("lexical entries must be named by IRIs")
        pos_iri = _one(graph, eid, LEXINFO.partOfSpeech, "part of speech")
        try:
            pos = PartOfSpeech(pos_iri.local_name) if pos_iri.value.startswith(str(LEXINFO)) else None
        except ValueError:
            pos = None
        if pos is None:
            raise LexiconStructureError(f"unsupported part of speech {pos_iri} for {eid}")
        canonical = load_form(_one(graph, eid, ONTOLEX.canonicalForm, "canonical form"))
        others = tuple(load_form(f) for f in graph.objects(eid, ONTOLEX.otherForm))

        frames = []
        arg_slot: dict[IRI, tuple] = {}
        for fid in graph.objects(eid, SYNSEM.synBehavior):
            kinds = [_FRAME_BY_CLASS[c] for c in graph.objects(fid, _TYPE) if c in _FRAME_BY_CLASS]
            if len(kinds) != 1:
                raise LexiconStructureError(f"frame {fid} needs exactly one supported frame class")
            slots, prep = {}, None
            for slot, (prop, _) in _SLOT_VOCAB.items():
                arg = _one(graph, fid, prop, slot, required=False)
                if arg is None:
                    continue
                slots[slot] = SyntacticArgument(arg, slot)
                arg_slot[arg] = (fid, slot)
                if slot == "prepositional_object":
                    marker = _one(graph, arg, SYNSEM.marker, "marker", required=False)
                    prep = marker.lexical if isinstance(marker, Literal) else None
            frames.append(SyntacticFrame(fid, kinds[0], slots, prep))

        senses = []
        for sid in graph.objects(eid, ONTOLEX.sense):
            rel = _one(graph, sid, ONTOLEX.reference, "reference")
            bindings, roles, frame_ids = {}, {}, set()
            var = None
            for sub in graph.objects(sid, SYNSEM.submap):
                ref = _one(graph, sub, ONTOLEX.reference, "reference")
                isa = _one(graph, sub, SYNSEM.isA, "isA", required=False)
                obj = _one(graph, sub, SYNSEM.objOfProp, "objOfProp", required=False)
                subj = _one(graph, sub, SYNSEM.subjOfProp, "subjOfProp", required=False)
                if obj is not None:
                    if obj not in arg_slot:
                        raise LexiconStructureError(f"submap of {sid} binds unknown syntactic argument {obj}")
                    fid, slot = arg_slot[obj]
                    frame_ids.add(fid)
                    if slot in bindings:
                        raise LexiconStructureError(f"sense {sid} binds {slot} twice")
                    bindings[slot] = ref
                    if var is not None and subj != var:
                        raise LexiconStructureError(f"sense {sid} uses more than one relationship variable")
                    var = subj
                elif isa is not None and isa in arg_slot:
                    fid, slot = arg_slot[isa]
                    frame_ids.add(fid)
                    roles[slot] = ref
                elif isa is not None and isinstance(isa, BNode):
                    if ref != rel:
                        raise LexiconStructureError(f"sense {sid} types its relationship as {ref}, not {rel}")
                    if var is not None and isa != var:
                        raise LexiconStructureError(f"sense {sid} uses more than one relationship variable")
                    var = isa
                else:
                    target = isa if isa is not None else "nothing"
                    raise LexiconStructureError(f"submap of {sid} points at unknown syntactic argument {target}")
            if len(frame_ids) > 1:
                raise LexiconStructureError(f"sense {sid} spans several frames")
            frame = frame_ids.pop() if frame_ids else None
            if frame is not None and frames and frame == frames[0].id:
                frame = None
            ref = _one(graph, sid, SYNSEM.ontoMapping, "ontoMapping", required=False)
            senses.append(OntologyMapping(sid, rel, bindings, roles, frame, onto_mapping_ref=ref))
        entries.append(LexicalEntry(eid, pos, canonical, others, tuple(frames), tuple(senses)))

    if len(languages) > 1:
        raise LexiconStructureError(f"lexicon mixes languages {sorted(languages)}")
    language = languages.pop() if languages else "en"
    return Lexicon.build(language, entries, namespace)
