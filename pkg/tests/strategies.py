"""Hypothesis strategies and seeded generators for random test data."""
import random

from hypothesis import strategies as st

from mathlod.rdf import BNode, Graph, IRI, Literal, Triple

EX = "http://example.org/t/"
PREFIXES = {"ex": EX, "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#"}

iris = st.sampled_from([IRI(EX + n) for n in ("a", "b", "c", "p", "q", "C", "D")]
                       + [IRI("http://other.example/x#y"), IRI("urn:isbn:123")])
preds = st.sampled_from([IRI(EX + n) for n in ("p", "q", "r")]
                        + [IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")])
bnodes = st.sampled_from([BNode(f"b{k}") for k in range(4)] + [BNode("x_1")])
literals = st.one_of(
    st.builds(Literal, st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=8)),
    st.builds(Literal, st.sampled_from(["chislo", "число", "two words", 'q"uote', "back\\slash", "tab\there"]),
              language=st.sampled_from(["en", "ru", "en-GB"])),
    st.builds(Literal, st.sampled_from(["1", "2", "-7"]),
              datatype=st.just(IRI("http://www.w3.org/2001/XMLSchema#integer"))),
)
triples = st.builds(Triple, st.one_of(iris, bnodes), preds, st.one_of(iris, bnodes, literals))


@st.composite
def graphs(draw, max_triples=10):
    ts = draw(st.lists(triples, max_size=max_triples))
    prefixes = draw(st.sampled_from([{}, {"ex": EX}, PREFIXES]))
    return Graph(ts, prefixes)


def random_graph(rng: random.Random, n_triples: int, n_bnodes: int = 4) -> Graph:
    """A seeded random graph over a small vocabulary."""
    nodes = [IRI(EX + f"n{k}") for k in range(5)] + [BNode(f"g{k}") for k in range(n_bnodes)]
    ps = [IRI(EX + f"p{k}") for k in range(3)]
    out = set()
    while len(out) < n_triples:
        s = rng.choice(nodes)
        o = rng.choice(nodes + [Literal(f"v{rng.randrange(3)}")])
        out.add(Triple(s, rng.choice(ps), o))
    return Graph(sorted(out, key=repr), {"ex": EX})


def relabel(graph: Graph, rng: random.Random) -> Graph:
    """Rename blank nodes by a random permutation of fresh labels and shuffle triple order."""
    bn = sorted(graph.bnodes(), key=lambda b: b.label)
    fresh = [BNode(f"r{k}") for k in range(len(bn))]
    rng.shuffle(fresh)
    m = dict(zip(bn, fresh))
    ts = [Triple(m.get(s, s), p, m.get(o, o)) for s, p, o in graph]
    rng.shuffle(ts)
    return Graph(ts, graph.prefixes)
