"""Minimal-module extraction from an ontology graph.

Given seed classes, retain every transitive superclass and subclass of each
seed, keep only the subclass edges between retained classes, and optionally
carry over label/comment annotations. Other axioms on retained classes are
copied verbatim only when everything they reference is also retained;
dropped ones are counted in the result summary. Traversal follows asserted
rdfs:subClassOf edges only and tolerates cycles.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .errors import ValidationError
from .graph import BlankNode, Graph, Iri
from .turtle import load_turtle
from .vocab import OWL_CLASS, RDF_TYPE, RDFS_COMMENT, RDFS_LABEL, RDFS_SUBCLASS_OF


@dataclass(frozen=True)
class SubsetRequest:
    source: Union[str, Path, Graph]
    seeds: tuple[str, ...]
    include_annotations: bool = False

    def __post_init__(self):
        if not self.seeds:
            raise ValidationError("subset extraction needs at least one seed class")


@dataclass
class SubsetModule:
    graph: Graph
    retained: frozenset[str]
    skipped_seeds: tuple[str, ...] = ()
    dropped_axioms: int = 0


def _class_universe(graph: Graph) -> set[str]:
    classes: set[str] = set()
    for s in graph.subjects(RDF_TYPE, OWL_CLASS):
        if isinstance(s, Iri):
            classes.add(s.value)
    for s, _, o in graph.match(None, RDFS_SUBCLASS_OF, None):
        if isinstance(s, Iri):
            classes.add(s.value)
        if isinstance(o, Iri):
            classes.add(o.value)
    return classes


def _walk(graph: Graph, start: Iri, up: bool) -> set[str]:
    """Transitive subclass closure from ``start``, upward or downward."""
    seen: set[str] = set()
    queue = [start]
    while queue:
        node = queue.pop()
        if node.value in seen:
            continue
        seen.add(node.value)
        if up:
            neighbors = graph.objects(node, RDFS_SUBCLASS_OF)
        else:
            neighbors = graph.subjects(RDFS_SUBCLASS_OF, node)
        for n in neighbors:
            if isinstance(n, Iri) and n.value not in seen:
                queue.append(n)
    return seen


def extract_module(
    graph: Graph, seeds: Sequence[str], include_annotations: bool = False
) -> SubsetModule:
    universe = _class_universe(graph)
    resolved: list[str] = []
    skipped: list[str] = []
    for seed in seeds:
        if seed in universe:
            resolved.append(seed)
        else:
            skipped.append(seed)
            warnings.warn(f"seed class not found in source: {seed}", stacklevel=3)
    if not resolved:
        raise ValidationError("no seed class resolved against the source ontology")

    retained: set[str] = set()
    for seed in resolved:
        node = Iri(seed)
        retained |= _walk(graph, node, up=True)
        retained |= _walk(graph, node, up=False)

    out = Graph(prefixes=dict(graph.prefixes), defaults=False)
    dropped = 0
    for cls in sorted(retained):
        out.add(Iri(cls), RDF_TYPE, OWL_CLASS)
    for cls in sorted(retained):
        node = Iri(cls)
        parents = sorted(
            o.value
            for o in graph.objects(node, RDFS_SUBCLASS_OF)
            if isinstance(o, Iri) and o.value in retained
        )
        for parent in parents:
            out.add(node, RDFS_SUBCLASS_OF, Iri(parent))
        for s, p, o in graph.match(node, None, None):
            if p in (RDFS_SUBCLASS_OF, RDF_TYPE):
                continue
            if p in (RDFS_LABEL, RDFS_COMMENT):
                if include_annotations:
                    out.add(s, p, o)
                continue
            if isinstance(o, Iri):
                if o.value in retained:
                    out.add(s, p, o)
                else:
                    dropped += 1
            elif isinstance(o, BlankNode):
                dropped += 1
            else:
                out.add(s, p, o)
    return SubsetModule(
        graph=out,
        retained=frozenset(retained),
        skipped_seeds=tuple(skipped),
        dropped_axioms=dropped,
    )


def extract(request: SubsetRequest) -> SubsetModule:
    """Run an extraction request against a file or an in-memory graph."""
    source = request.source
    graph = source if isinstance(source, Graph) else load_turtle(source)
    return extract_module(graph, request.seeds, request.include_annotations)
