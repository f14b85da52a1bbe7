import random

import pytest

from cohortkg import vocab
from cohortkg.errors import PrefixResolutionError, TurtleSyntaxError
from cohortkg.graph import Graph, Iri, decimal, integer, string
from cohortkg.isomorphism import isomorphic
from cohortkg.turtle import parse_turtle, serialize_turtle, turtle_tokens

EX = "https://example.org/"


def ex(name):
    return Iri(EX + name)


def test_empty_graph_serializes_to_prefix_block_only():
    text = serialize_turtle(Graph())
    lines = [l for l in text.splitlines() if l.strip()]
    assert all(l.startswith("@prefix") for l in lines)
    assert lines[0] == f"@prefix rdf: <{vocab.RDF}> ."


def test_prefix_block_order_fixed():
    g = Graph()
    g.bind("zeta", "https://example.org/zeta#")
    g.bind("alpha", "https://example.org/alpha#")
    prefixes = [
        line.split()[1].rstrip(":")
        for line in serialize_turtle(g).splitlines()
        if line.startswith("@prefix")
    ]
    head = prefixes[:7]
    assert head == ["rdf", "rdfs", "owl", "xsd", "sio", "sco", "sco-i"]
    extras = prefixes[7:]
    assert extras == sorted(extras)


def test_numeric_literals_bare():
    g = Graph()
    g.bind("ex", EX)
    g.add(ex("s"), ex("p"), integer(8576))
    g.add(ex("s"), ex("q"), decimal(66.4))
    text = serialize_turtle(g)
    assert "ex:p 8576 ;" in text
    assert "ex:q 66.4 ." in text


def test_string_escapes_roundtrip():
    g = Graph()
    g.bind("ex", EX)
    tricky = 'a "quote" and \\ backslash\nnewline\ttab'
    g.add(ex("s"), ex("p"), string(tricky))
    parsed = parse_turtle(serialize_turtle(g))
    (triple,) = parsed.match(None, ex("p"), None)
    assert triple.object.lexical == tricky


def test_serialization_stable_for_equal_graphs():
    def build():
        g = Graph()
        g.bind("ex", EX)
        g.add(ex("s"), ex("p"), ex("o"))
        b = g.new_bnode()
        g.add(b, ex("q"), integer(1))
        g.add(ex("s"), ex("r"), b)
        return g

    assert serialize_turtle(build()) == serialize_turtle(build())


def test_single_reference_bnode_is_inlined():
    g = Graph()
    g.bind("ex", EX)
    b = g.new_bnode()
    g.add(b, ex("value"), integer(3))
    g.add(ex("s"), ex("p"), b)
    text = serialize_turtle(g)
    assert "[ ex:value 3 ]" in text
    assert "_:" not in text


def test_multiply_referenced_bnode_gets_label():
    g = Graph()
    g.bind("ex", EX)
    b = g.new_bnode()
    g.add(b, ex("value"), integer(3))
    g.add(ex("s1"), ex("p"), b)
    g.add(ex("s2"), ex("p"), b)
    text = serialize_turtle(g)
    assert text.count("_:b0") == 3
    reparsed = parse_turtle(text)
    assert isomorphic(g, reparsed)


def test_bnode_cycle_serializes_and_roundtrips():
    g = Graph()
    g.bind("ex", EX)
    b1, b2 = g.new_bnode(), g.new_bnode()
    g.add(b1, ex("next"), b2)
    g.add(b2, ex("next"), b1)
    text = serialize_turtle(g)
    assert isomorphic(g, parse_turtle(text))


def test_parse_reference_block_structure():
    text = """
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix sio: <http://semanticscience.org/resource/> .
@prefix sco: <https://w3id.org/sco#> .
@prefix sco-i: <https://w3id.org/sco/instance#> .

sco-i:RamiprilArm
       a    owl:Class, sco:InterventionArm ;
       rdfs:subClassOf sio:StudySubject ;
       sio:isParticipantIn sco-i:TelmisartanRamiprilStudy ;
       sio:hasAttribute
       [ a sco:PopulationSize ; sio:hasValue 8576 ],
       [ a sio:Age ; sio:hasUnit sio:Year ;
          sio:hasAttribute
          [ a sio:Mean ; sio:hasValue 66.4 ],
          [ a sio:StandardDeviation ; sio:hasValue 7.2 ]
        ] .
"""
    g = parse_turtle(text)
    arm = Iri(vocab.SCO_I + "RamiprilArm")
    attributes = g.match(arm, vocab.SIO_HAS_ATTRIBUTE, None)
    assert len(attributes) == 2
    size_node = attributes[0].object
    assert g.match(size_node, vocab.SIO_HAS_VALUE, integer(8576))
    age_node = attributes[1].object
    stats = g.objects(age_node, vocab.SIO_HAS_ATTRIBUTE)
    values = {
        g.value(stat, vocab.SIO_HAS_VALUE).lexical for stat in stats
    }
    assert values == {"66.4", "7.2"}


def test_parse_error_reports_line_and_column():
    with pytest.raises(TurtleSyntaxError) as err:
        parse_turtle("@prefix ex: <https://example.org/> .\nex:s ex:p ; .\n")
    assert err.value.line == 2


def test_undeclared_prefix_is_resolution_error():
    with pytest.raises(PrefixResolutionError, match="foo"):
        parse_turtle("foo:x foo:y foo:z .")


def test_unterminated_string():
    with pytest.raises(TurtleSyntaxError):
        parse_turtle('@prefix ex: <https://example.org/> .\nex:s ex:p "open .\n')


def test_serialize_parse_serialize_fixed_point_on_fixture_corpus(corpus_graph):
    text = serialize_turtle(corpus_graph)
    reparsed = parse_turtle(text)
    assert serialize_turtle(reparsed) == text
    assert isomorphic(corpus_graph, reparsed)


def _random_graph(rng: random.Random, max_bnodes: int = 50) -> Graph:
    g = Graph()
    g.bind("ex", EX)
    bnodes = [g.new_bnode() for _ in range(rng.randint(0, max_bnodes))]
    iris = [ex(f"n{i}") for i in range(rng.randint(1, 8))]
    predicates = [ex(f"p{i}") for i in range(rng.randint(1, 5))]
    literals = [
        integer(rng.randint(-5, 5)),
        decimal(round(rng.uniform(-10, 10), 2)),
        string("text-" + str(rng.randint(0, 3))),
    ]
    subjects = iris + bnodes
    objects = iris + bnodes + literals
    for _ in range(rng.randint(1, 120)):
        g.add(rng.choice(subjects), rng.choice(predicates), rng.choice(objects))
    return g


@pytest.mark.parametrize("seed", range(25))
def test_roundtrip_random_graphs(seed):
    g = _random_graph(random.Random(seed))
    text = serialize_turtle(g)
    reparsed = parse_turtle(text)
    assert isomorphic(g, reparsed)
    assert serialize_turtle(reparsed) == text


def test_tokens_helper():
    tokens = turtle_tokens('ex:s a ex:T ; ex:p "v", 3 .')
    assert tokens == ["ex:s", "a", "ex:T", ";", "ex:p", '"v"', ",", "3", "."]
