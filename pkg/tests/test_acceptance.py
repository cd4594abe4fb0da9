"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the result lines are printed
even when output capture is on.
"""
import math
import random
import time
from contextlib import contextmanager

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, GOLDEN, M, N, SEED, read
from oracles import brute_isomorphic, naive_fol_models, naive_rdf_satisfies
from strategies import graphs, random_graph
from mathlod.cli import main
from mathlod.fol import AtomicSentence, Signature, Theory, enumerate_fol_models
from mathlod.lexicon import FrameType, load_llod, parse_phrase, serialize_llod
from mathlod.ontology import (
    HAS_ARGUMENT, Concept, MetaType, OntologyGraph, errors_only, to_schema_graph, validate,
)
from mathlod.rdf import LEXICONS, OMP, RDF, RDFS, BNode, Graph, Triple, graphs_isomorphic
from mathlod.replenish import cosine, make_record, match_terms, preprocess
from mathlod.translator import InterpretationMapper, Mode, check_semantic_condition, translate
from mathlod.turtle import parse_turtle, serialize_turtle

DIVIDES = AtomicSentence("Divides", ("m", "n"))
REL = BNode("rel")
TEMPLATE_PREFIXES = [
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .",
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .",
    "@prefix owl: <http://www.w3.org/2002/07/owl#> .",
    "@prefix omp: <http://ontomathpro.org/omp2#> .",
]
PAIRS = [
    ("Riemann--Stieltjes integral", "Riemann--Stieltjes probability integral"),
    ("Cesaro summable series", "summable series by Cesaro method"),
    ("Stormer interpolation formula", "interpolation formula"),
    ("Gaussian interpolation formula", "interpolation formula"),
    ("Adams interpolation formula", "Adams formula"),
]


@contextmanager
def criterion(capsys, name, budget):
    """Time the body, print one result line and fail if over ``budget`` seconds."""
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\nFAIL {name} ({elapsed:.2f}s): {type(exc).__name__}: {exc}".rstrip())
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    info = " ".join(f"{k}={v}" for k, v in detail.items())
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f}s < {budget}s) {info}".rstrip())
    assert ok, f"{name} took {elapsed:.2f}s, budget {budget}s"


def instance_graph(*args):
    return Graph([(REL, RDF.type, OMP.Divisibility_relationship)] + [(REL, p, o) for p, o in args])


def test_template_fidelity(capsys, onto, mapping):
    with criterion(capsys, "template-fidelity", 1.0) as detail:
        g = translate(DIVIDES, mapping, onto, Mode.GENERIC).graph
        expected = instance_graph((HAS_ARGUMENT, M), (HAS_ARGUMENT, N))
        text = serialize_turtle(g)
        assert len(g) == 3
        assert graphs_isomorphic(g, expected) and brute_isomorphic(g, expected)
        assert text.splitlines()[:4] == TEMPLATE_PREFIXES
        assert text == read(GOLDEN / "translate_generic.ttl")
        detail["triples"] = len(g)


def test_instance_fidelity(capsys, onto, mapping, lexicon, entity_map):
    with criterion(capsys, "instance-fidelity", 1.0):
        expected = instance_graph((OMP.divisor, M), (OMP.dividend, N))
        translated = translate(DIVIDES, mapping, onto, Mode.ROLE_PROPERTIES).graph
        parsed = parse_phrase(lexicon, onto, "m divides n", entity_map)
        for g in (translated, parsed):
            assert graphs_isomorphic(g, expected) and brute_isomorphic(g, expected)
        assert graphs_isomorphic(translated, parsed)


def test_semantic_condition(capsys, onto, mapping, schema_graph):
    with criterion(capsys, "semantic-condition", 30.0) as detail:
        sig = mapping.signature(onto)
        runs = 0
        for axioms in ((), (DIVIDES,)):
            theory = Theory(sig, axioms)
            for mode in Mode:
                graph = translate(DIVIDES, mapping, onto, mode).graph
                mapper = InterpretationMapper(mapping, onto, Mode.ROLE_PROPERTIES, schema_graph,
                                              extra_vocabulary=graph.iris())
                for d in (1, 2, 3):
                    report = check_semantic_condition(theory, DIVIDES, mapping, onto, d, mode, schema=schema_graph)
                    assert report.passed, (axioms, mode, d)
                    models = naive_fol_models(sig, list(axioms) + [DIVIDES], d)
                    assert report.fol_models_checked == len(models) == d * d * 2 ** (d * d - 1)
                    assert all(naive_rdf_satisfies(mapper(i), graph, schema_graph) for i in models)
                    everything = naive_fol_models(sig, [], d)
                    rdf_models = sum(1 for i in everything if naive_rdf_satisfies(mapper(i), graph, schema_graph))
                    assert report.rdf_models == rdf_models, (axioms, mode, d)
                    runs += 1
        detail["runs"] = runs


def test_mutation_sensitivity(capsys, onto, mapping, schema_graph):
    with criterion(capsys, "mutation-sensitivity", 10.0):
        theory = Theory(mapping.signature(onto))
        for prop in (OMP.divisor, OMP.dividend):
            broken = schema_graph.without(Triple(prop, RDFS.subPropertyOf, HAS_ARGUMENT))
            report = check_semantic_condition(theory, DIVIDES, mapping, onto, 2, Mode.GENERIC, schema=broken)
            assert not report.passed
            assert report.counterexample is not None
            assert not naive_rdf_satisfies(report.counterexample_image, report.graph, broken)
        code = main(["validate", "--ontology", str(FIXTURES / "divisibility_role_without_kind.ttl")])
        out = capsys.readouterr().out
        assert code == 1
        assert "RoleWithoutKindAncestor" in out


def test_llod_round_trip(capsys, onto):
    with criterion(capsys, "llod-round-trip", 1.0):
        text = read(FIXTURES / "divide_frame_regularized.ttl")
        lex = load_llod(text)
        first = serialize_llod(lex)
        second = serialize_llod(load_llod(first))
        assert second == first
        assert graphs_isomorphic(parse_turtle(first), parse_turtle(text))
        entry = lex.entries[LEXICONS.term("EN-v-divide")]
        assert entry.canonical_form.written_rep == "divide"
        assert entry.canonical_form.language == "en"
        (frame,) = entry.frames
        assert frame.frame_type is FrameType.TRANSITIVE
        assert set(frame.slots) == {"subject", "direct_object"}
        (sense,) = entry.senses
        assert sense.relationship_class == OMP.Divisibility_relationship
        assert sense.slot_bindings == {"subject": OMP.divisor, "direct_object": OMP.dividend}


def test_similarity_regression(capsys):
    with criterion(capsys, "similarity-regression", 1.0) as detail:
        scores = {}
        for ext, ont in PAIRS:
            (r,) = match_terms([make_record(ont, "ontology")], [make_record(ext, "external")])
            assert r.matched and r.similarity >= 0.7, (ext, r.similarity)
            scores[ext.split()[0]] = r.similarity
        derived = {
            "Stormer": 2 / (math.sqrt(3) * math.sqrt(2)),
            "Riemann--Stieltjes": 3 / (math.sqrt(3) * math.sqrt(4)),
            "Adams": 2 / (math.sqrt(2) * math.sqrt(3)),
        }
        for key, value in derived.items():
            assert abs(scores[key] - value) < 1e-9, (key, scores[key])
        detail.update({k.split("--")[0].lower(): f"{v:.4f}" for k, v in scores.items()})


def random_hierarchy(rng, n):
    concepts = []
    for k in range(n):
        meta = MetaType.KIND if k == 0 or rng.random() < 0.4 else MetaType.ROLE
        parents = {OMP.term(f"C{j}") for j in range(k) if rng.random() < 0.35}
        concepts.append(Concept(OMP.term(f"C{k}"), meta, parents))
    return OntologyGraph.build(concepts)


def test_property_suites(capsys):
    with criterion(capsys, "property-suites", 60.0) as detail:
        rng = random.Random(SEED)
        for _ in range(50):
            g = random_graph(rng, rng.randint(0, 10))
            text = serialize_turtle(g)
            back = parse_turtle(text)
            assert graphs_isomorphic(back, g) and serialize_turtle(back) == text

        @settings(max_examples=50)
        @given(graphs())
        def turtle_round_trip(g):
            text = serialize_turtle(g)
            back = parse_turtle(text)
            assert graphs_isomorphic(back, g) and serialize_turtle(back) == text

        tokens = st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=6)

        @given(tokens, tokens)
        def cosine_laws(a, b):
            assert cosine(a, a) == pytest.approx(1.0)
            assert cosine(a, b) == cosine(b, a)
            assert (cosine(a, b) == 0.0) == (not set(a) & set(b))

        words = ["formula", "integral", "series", "method", "adams", "gauss", "interpolation", "summable"]

        @given(st.randoms(use_true_random=False))
        def threshold_monotone(r):
            onto = [make_record(" ".join(r.sample(words, r.randint(1, 3))), "ontology") for _ in range(4)]
            ext = [make_record(" ".join(r.sample(words, r.randint(1, 3))), "external") for _ in range(6)]
            counts = [sum(m.matched for m in match_terms(onto, ext, t)) for t in (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)]
            assert counts == sorted(counts, reverse=True)

        @given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.integers(min_value=1, max_value=9))
        def hierarchy_invariants(seed, n):
            onto = random_hierarchy(random.Random(seed), n)
            if errors_only(validate(onto)):
                assert {v.code for v in errors_only(validate(onto))} == {"RoleWithoutKindAncestor"}
                return
            kinds = {c.id for c in onto.concepts.values() if c.meta is MetaType.KIND}
            for c in onto.concepts.values():
                ancestors = onto.ancestors(c.id)
                assert c.id not in ancestors
                if c.meta is MetaType.ROLE:
                    assert ancestors & kinds
            assert graphs_isomorphic(parse_turtle(serialize_turtle(to_schema_graph(onto))), to_schema_graph(onto))

        sig = Signature({"R": 2, "Q": 1}, {"a", "b"})
        atoms = st.builds(lambda p, x, y: AtomicSentence(p, (x,) if p == "Q" else (x, y)),
                          st.sampled_from(["R", "Q"]), st.sampled_from(["a", "b"]), st.sampled_from(["a", "b"]))

        @settings(max_examples=30)
        @given(st.lists(atoms, max_size=2), atoms)
        def anti_monotone(axioms, s):
            theory = Theory(sig, tuple(axioms))
            base = {m.key() for m in enumerate_fol_models(theory, None, 2)}
            more = {m.key() for m in enumerate_fol_models(theory, s, 2)}
            assert more <= base

        suites = [turtle_round_trip, cosine_laws, threshold_monotone, hierarchy_invariants, anti_monotone]
        for suite in suites:
            suite()
        assert preprocess("Riemann--Stieltjes integral") == ["riemann", "stieltjes", "integral"]
        detail["suites"] = len(suites) + 1
