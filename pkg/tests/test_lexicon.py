import random

import pytest

from conftest import DATA, FIXTURES, SEED, M, N, read
from oracles import brute_isomorphic
from mathlod.lexicon import (
    AmbiguityError, Form, LexiconError, FrameType, LexicalEntry, Lexicon, LexiconStructureError, MissingLexicalizationError,
    NoEntryError, NoFrameMatchError, OntologyMapping, PartOfSpeech, PhraseError, SyntacticArgument,
    SyntacticFrame, UnboundSlotError, UnknownEntityError, check_references, find_entry_by_form, load_llod,
    parse_phrase, serialize_llod, verbalize,
)
from mathlod.rdf import LEXICONS, OMP, RDF, BNode, Graph, IRI, Triple, graphs_isomorphic
from mathlod.fol import AtomicSentence
from mathlod.translator import Mode, translate
from mathlod.turtle import parse_turtle

L = LEXICONS


def transitive_frame(stem):
    return SyntacticFrame(L.term(f"{stem}-frame1"), FrameType.TRANSITIVE, {
        "subject": SyntacticArgument(L.term(f"{stem}-frame1-subj"), "subject"),
        "direct_object": SyntacticArgument(L.term(f"{stem}-frame1-obj"), "direct_object"),
    })


def verb(stem, written, rel=OMP.Divisibility_relationship, bindings=None, forms=()):
    bindings = bindings or {"subject": OMP.divisor, "direct_object": OMP.dividend}
    return LexicalEntry(
        L.term(stem), PartOfSpeech.VERB, Form(L.term(f"{stem}-form0"), written, "en"),
        tuple(Form(L.term(f"{stem}-form{k}"), w, "en", f) for k, (w, f) in enumerate(forms, start=1)),
        (transitive_frame(stem),),
        (OntologyMapping(L.term(f"{stem}-sense1"), rel, bindings),),
    )


class TestDataModel:
    def test_frame_invariants(self):
        arg = lambda slot: SyntacticArgument(L.term(f"a-{slot}"), slot)  # noqa: E731
        with pytest.raises(LexiconStructureError):
            SyntacticFrame(L.f, FrameType.TRANSITIVE, {"subject": arg("subject")})
        with pytest.raises(LexiconStructureError):
            SyntacticFrame(L.f, FrameType.TRANSITIVE_PP, {"subject": arg("subject"),
                                                           "direct_object": arg("direct_object")})
        with pytest.raises(LexiconStructureError):
            SyntacticFrame(L.f, FrameType.TRANSITIVE_PP, {s: arg(s) for s in
                                                           ("subject", "direct_object", "prepositional_object")})
        ok = SyntacticFrame(L.f, FrameType.TRANSITIVE_PP, {s: arg(s) for s in
                                                            ("subject", "direct_object", "prepositional_object")},
                            "by")
        assert ok.preposition == "by"
        with pytest.raises(LexiconStructureError):
            SyntacticFrame(L.f, FrameType.TRANSITIVE, {"subject": SyntacticArgument(L.x, "subject"),
                                                        "direct_object": SyntacticArgument(L.x, "direct_object")})

    def test_form_needs_text(self):
        with pytest.raises(LexiconStructureError):
            Form(L.f, "  ", "en")

    def test_sense_slots_must_exist_in_frame(self):
        with pytest.raises(LexiconStructureError):
            verb("EN-v-x", "x", bindings={"prepositional_object": OMP.divisor})

    def test_single_language_and_unique_ids(self):
        e = verb("EN-v-divide", "divide")
        with pytest.raises(LexiconStructureError):
            Lexicon.build("ru", [e])
        with pytest.raises(LexiconStructureError):
            Lexicon.build("en", [e, e])


class TestLookup:
    def test_forms(self, lexicon):
        assert [e.id.local_name for e, _ in find_entry_by_form(lexicon, "divides")] == ["EN-v-divide"]
        assert [f.written_rep for _, f in find_entry_by_form(lexicon, "DIVIDE")] == ["divide"]
        assert find_entry_by_form(lexicon, "integrate") == []


def expected_instance():
    r = BNode("r")
    return Graph([(r, RDF.type, OMP.Divisibility_relationship), (r, OMP.divisor, M), (r, OMP.dividend, N)])


class TestParsePhrase:
    def test_divides(self, lexicon, onto, entity_map):
        assert brute_isomorphic(parse_phrase(lexicon, onto, "m divides n", entity_map), expected_instance())

    def test_reflexive(self, lexicon, onto, entity_map):
        g = parse_phrase(lexicon, onto, "n divides n", entity_map)
        assert {t.object for t in g if t.predicate != RDF.type} == {N}

    def test_agrees_with_translator(self, lexicon, onto, mapping, entity_map):
        for a, b in [("m", "n"), ("n", "m"), ("n", "n")]:
            phrase = parse_phrase(lexicon, onto, f"{a} divides {b}", entity_map)
            formal = translate(AtomicSentence("Divides", (a, b)), mapping, onto, Mode.ROLE_PROPERTIES).graph
            assert graphs_isomorphic(phrase, formal)

    def test_noun_frame(self, lexicon, onto, entity_map):
        for text in ("m is a divisor of n", "m is the divisor of n", "m is divisor of n"):
            assert graphs_isomorphic(parse_phrase(lexicon, onto, text, entity_map), expected_instance())

    def test_quoted_arguments(self, lexicon, onto):
        ents = {"the number m": M, "n": N}
        assert graphs_isomorphic(parse_phrase(lexicon, onto, '"the number m" divides n', ents), expected_instance())

    def test_regularized_listing_lexicon(self, onto, entity_map):
        lex = load_llod(read(FIXTURES / "divide_frame_regularized.ttl"))
        # the listing only declares the bare form
        assert graphs_isomorphic(parse_phrase(lex, onto, "m divide n", entity_map), expected_instance())
        with pytest.raises(NoEntryError):
            parse_phrase(lex, onto, "m divides n", entity_map)

    @pytest.mark.parametrize("text, exc", [
        ("m integrates n", NoEntryError),
        ("m divides n by k", NoFrameMatchError),
        ("m divides", PhraseError),
        ('m divides "n', PhraseError),
        ("x divides n", UnknownEntityError),
    ])
    def test_errors(self, lexicon, onto, entity_map, text, exc):
        with pytest.raises(exc):
            parse_phrase(lexicon, onto, text, entity_map)

    def test_ambiguity_lists_candidates(self, onto, entity_map):
        lex = Lexicon.build("en", [
            verb("EN-v-divide", "divides"),
            verb("EN-v-divide-alt", "divides", bindings={"subject": OMP.dividend, "direct_object": OMP.divisor}),
        ])
        with pytest.raises(AmbiguityError) as err:
            parse_phrase(lex, onto, "m divides n", entity_map)
        assert [c.local_name for c in err.value.candidates] == ["EN-v-divide-sense1", "EN-v-divide-alt-sense1"]

    def test_sense_must_match_ontology(self, onto, entity_map):
        lex = Lexicon.build("en", [verb("EN-v-bad", "bad", rel=OMP.Nothing)])
        with pytest.raises(LexiconError, match="unknown relationship"):
            parse_phrase(lex, onto, "m bad n", entity_map)


CORPUS = ["m divides n", "n divides m", "n divides n", '"the number m" divides n']


class TestVerbalize:
    def test_instance(self, lexicon, onto, label_map):
        assert verbalize(lexicon, onto, expected_instance(), label_map) == "m divides n"

    def test_round_trip(self, lexicon, onto):
        ents = {"m": M, "n": N, "the number m": IRI("http://example.org/math/m2")}
        labels = {v: k for k, v in ents.items()}
        for phrase in CORPUS:
            assert verbalize(lexicon, onto, parse_phrase(lexicon, onto, phrase, ents), labels) == phrase

    def test_local_name_fallback(self, lexicon, onto):
        assert verbalize(lexicon, onto, expected_instance(), {}) == "m divides n"

    def test_unknown_class(self, lexicon, onto, label_map):
        g = Graph([(BNode("r"), RDF.type, OMP.Integration_relationship), (BNode("r"), OMP.divisor, M)])
        with pytest.raises(MissingLexicalizationError):
            verbalize(lexicon, onto, g, label_map)

    def test_unbound_slot(self, lexicon, onto, label_map):
        g = expected_instance().without(Triple(BNode("r"), OMP.dividend, N))
        with pytest.raises(UnboundSlotError):
            verbalize(lexicon, onto, g, label_map)


class TestLlod:
    def test_regularized_listing(self, onto):
        text = read(FIXTURES / "divide_frame_regularized.ttl")
        lex = load_llod(text)
        entry = lex.entries[L.term("EN-v-divide")]
        assert entry.canonical_form.written_rep == "divide"
        frame = entry.frames[0]
        assert frame.frame_type is FrameType.TRANSITIVE
        assert {s: a.id.local_name for s, a in frame.slots.items()} == {
            "subject": "EN-v-divide-frame1-subj", "direct_object": "EN-v-divide-frame1-obj"}
        sense = entry.senses[0]
        assert sense.slot_bindings == {"subject": OMP.divisor, "direct_object": OMP.dividend}
        assert sense.slot_role_types == {"subject": OMP.Divisor, "direct_object": OMP.Dividend}
        out = serialize_llod(lex)
        assert graphs_isomorphic(parse_turtle(out), parse_turtle(text))
        assert check_references(lex, onto) == []

    def test_prefix_lines(self):
        out = serialize_llod(Lexicon.build("en", []))
        assert out == (
            "@prefix : <http://ontomathpro.org/lexicons/> .\n"
            "@prefix omp: <http://ontomathpro.org/omp2#> .\n"
            "@prefix ontolex: <http://www.w3.org/ns/lemon/ontolex#> .\n"
            "@prefix synsem: <http://www.w3.org/ns/lemon/synsem#> .\n"
            "@prefix lexinfo: <http://www.lexinfo.net/ontology/2.0/lexinfo#> .\n"
        )

    def test_verbatim_listing_is_inconsistent(self):
        with pytest.raises(LexiconStructureError, match="prepositional_object"):
            load_llod(read(FIXTURES / "divide_frame_listing.ttl"))

    def test_listing_with_frame_fixed_hits_undefined_argument(self):
        text = read(FIXTURES / "divide_frame_listing.ttl").replace("TransitivePPFrame", "TransitiveFrame")
        with pytest.raises(LexiconStructureError, match="pp_at"):
            load_llod(text)

    def test_onto_mapping_reference_kept_but_not_written(self):
        text = read(FIXTURES / "divide_frame_regularized.ttl").replace(
            "ontolex:reference omp:Divisibility_relationship;\n  synsem:submap",
            "synsem:ontoMapping :EN-v-divide-sense1;\n  ontolex:reference omp:Divisibility_relationship;\n"
            "  synsem:submap")
        lex = load_llod(text)
        sense = lex.entries[L.term("EN-v-divide")].senses[0]
        assert sense.onto_mapping_ref == L.term("EN-v-divide-sense1")
        assert "ontoMapping" not in serialize_llod(lex)
        assert lex == load_llod(read(FIXTURES / "divide_frame_regularized.ttl"))

    @pytest.mark.parametrize("edit, message", [
        (("ontolex:canonicalForm :EN-v-divide-form0;",
          "ontolex:canonicalForm :EN-v-divide-form0, :EN-v-divide-form0b;"), "canonical form"),
        (('ontolex:writtenRep "divide"@en.', 'ontolex:writtenRep "divide"@ru.'), None),
        (("lexinfo:partOfSpeech lexinfo:verb", "lexinfo:partOfSpeech lexinfo:pronoun"), "part of speech"),
        (("a lexinfo:TransitiveFrame;", "a lexinfo:Frame;"), "frame class"),
    ])
    def test_structural_errors(self, edit, message):
        text = read(FIXTURES / "divide_frame_regularized.ttl").replace(*edit)
        if "form0b" in edit[1]:
            text += ':EN-v-divide-form0b a ontolex:Form; ontolex:writtenRep "divides"@en.\n'
        if message is None:
            # a single Russian form is fine on its own; mixing languages is not
            load_llod(text)
            text += (':EN-v-x a ontolex:LexicalEntry; lexinfo:partOfSpeech lexinfo:noun; '
                     'ontolex:canonicalForm :EN-v-x-f. :EN-v-x-f ontolex:writtenRep "x"@en.\n')
            message = "mixes languages"
        with pytest.raises(LexiconStructureError, match=message):
            load_llod(text)

    def test_bundled_lexicon_round_trip(self, lexicon, onto):
        text = read(DATA / "divisibility-lexicon.ttl")
        assert serialize_llod(lexicon) == text
        assert check_references(lexicon, onto) == []

    def test_reference_check_finds_dangling(self, onto):
        lex = Lexicon.build("en", [verb("EN-v-bad", "bad", rel=OMP.Nothing)])
        assert check_references(lex, onto)

    def test_randomized_round_trip(self):
        rng = random.Random(SEED)
        for _ in range(20):
            lex = random_lexicon(rng)
            text = serialize_llod(lex)
            back = load_llod(text)
            assert back == lex
            assert serialize_llod(back) == text


def random_lexicon(rng):
    entries = []
    for k in range(rng.randint(0, 3)):
        stem = f"EN-e{k}"
        kind = rng.choice(list(FrameType))
        slots = {"transitive": ("subject", "direct_object"),
                 "transitive_pp": ("subject", "direct_object", "prepositional_object"),
                 "noun_pp": ("subject", "prepositional_object")}[kind.value]
        frame = SyntacticFrame(L.term(f"{stem}-frame"), kind,
                               {s: SyntacticArgument(L.term(f"{stem}-{s}"), s) for s in slots},
                               rng.choice(["of", "by", "at"]) if "prepositional_object" in slots else None)
        props = [OMP.term(f"p{j}") for j in range(len(slots))]
        rng.shuffle(props)
        bound = [s for s in slots if rng.random() < 0.8]
        sense = OntologyMapping(L.term(f"{stem}-sense"), OMP.term(f"R{k}"),
                                {s: props[i] for i, s in enumerate(slots) if s in bound},
                                {s: OMP.term(f"Role{i}") for i, s in enumerate(slots) if rng.random() < 0.5})
        pos = PartOfSpeech.NOUN if kind is FrameType.NOUN_PP else PartOfSpeech.VERB
        features = {"number": rng.choice(["singular", "plural"])} if rng.random() < 0.5 else {}
        others = tuple(Form(L.term(f"{stem}-form{j}"), f"w{k}x{j}", "en", {"tense": "past"})
                       for j in range(1, rng.randint(1, 3)))
        entries.append(LexicalEntry(L.term(stem), pos, Form(L.term(f"{stem}-form0"), f"w{k}", "en", features),
                                    others, (frame,), (sense,)))
    return Lexicon.build("en", entries)
