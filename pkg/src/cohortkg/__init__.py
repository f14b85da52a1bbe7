"""Knowledge graphs of clinical study populations.

Builds RDF graphs from tabular study-population descriptions, answers
study-applicability questions over them, and scores patient-to-arm
similarity for a faceted browser.
"""

from .graph import BlankNode, Graph, Iri, Literal, Triple, decimal, integer, string
from .isomorphism import find_bijection, isomorphic
from .turtle import load_turtle, parse_turtle, save_turtle, serialize_turtle

__all__ = [
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "Triple",
    "decimal",
    "integer",
    "string",
    "find_bijection",
    "isomorphic",
    "load_turtle",
    "parse_turtle",
    "save_turtle",
    "serialize_turtle",
]

__version__ = "0.1.0"
