"""Translate ground first-order statements into reified-relationship RDF and check the translation."""

from .errors import ContractViolation, MathLodError, SizeError
from .fol import AtomicSentence, Signature, Theory, load_theory, parse_sentence
from .ontology import OntologyGraph, from_schema_graph, to_schema_graph
from .rdf import BNode, Graph, IRI, Literal, Triple, graphs_isomorphic
from .translator import Mode, SymbolMapping, check_semantic_condition, translate
from .turtle import parse_turtle, serialize_turtle

__version__ = "0.1.0"

__all__ = [
    "AtomicSentence",
    "BNode",
    "ContractViolation",
    "Graph",
    "IRI",
    "Literal",
    "MathLodError",
    "Mode",
    "OntologyGraph",
    "Signature",
    "SizeError",
    "SymbolMapping",
    "Theory",
    "Triple",
    "check_semantic_condition",
    "from_schema_graph",
    "graphs_isomorphic",
    "load_theory",
    "parse_sentence",
    "parse_turtle",
    "serialize_turtle",
    "to_schema_graph",
    "translate",
]
