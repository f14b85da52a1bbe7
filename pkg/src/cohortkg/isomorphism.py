"""Graph isomorphism up to blank-node relabeling.

Ground triples must match exactly; blank nodes are paired by iterative
signature refinement (colors are content hashes, so they line up across
graphs) followed by an iterative backtracking search inside each ambiguous
color class. Refinement stops when the partition stabilizes, so the common
case, reified-statistics graphs where every node individualizes, needs no
search at all.
"""

from __future__ import annotations

import hashlib
from typing import Optional

from .graph import BlankNode, Graph, Iri, Literal, Term, Triple


def _split(graph: Graph) -> tuple[set[Triple], list[Triple]]:
    ground, blank = set(), []
    for t in graph:
        if isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode):
            blank.append(t)
        else:
            ground.add(t)
    return ground, blank


def _term_key(t: Term) -> str:
    if isinstance(t, Iri):
        return f"i|{t.value}"
    if isinstance(t, Literal):
        return f"l|{t.lexical}|{t.datatype}|{t.language or ''}"
    raise TypeError(f"not a ground term: {t!r}")


def _partition(colors: dict[BlankNode, str]) -> set[frozenset[BlankNode]]:
    groups: dict[str, list[BlankNode]] = {}
    for node, color in colors.items():
        groups.setdefault(color, []).append(node)
    return {frozenset(members) for members in groups.values()}


def _signatures(triples: list[Triple]) -> dict[BlankNode, str]:
    """Stable, graph-independent colors for blank nodes.

    Isomorphic graphs follow the same refinement trajectory, so their final
    colors are directly comparable strings.
    """
    nodes: set[BlankNode] = set()
    for s, _, o in triples:
        if isinstance(s, BlankNode):
            nodes.add(s)
        if isinstance(o, BlankNode):
            nodes.add(o)
    colors: dict[BlankNode, str] = {b: "c|start" for b in nodes}
    previous = _partition(colors)
    for _ in range(len(nodes) + 1):
        features: dict[BlankNode, list[tuple[str, str, str]]] = {b: [] for b in nodes}
        for s, p, o in triples:
            s_key = colors[s] if isinstance(s, BlankNode) else _term_key(s)
            o_key = colors[o] if isinstance(o, BlankNode) else _term_key(o)
            if isinstance(s, BlankNode):
                features[s].append(("out", p.value, o_key))
            if isinstance(o, BlankNode):
                features[o].append(("in", p.value, s_key))
        new_colors = {}
        for b in nodes:
            payload = repr((colors[b], sorted(features[b])))
            digest = hashlib.md5(payload.encode("utf-8")).hexdigest()
            new_colors[b] = f"c|{digest}"
        colors = new_colors
        current = _partition(colors)
        if current == previous:
            break
        previous = current
    return colors


def _apply(triples: list[Triple], mapping: dict[BlankNode, BlankNode]) -> set[Triple]:
    out = set()
    for s, p, o in triples:
        if isinstance(s, BlankNode):
            s = mapping[s]
        if isinstance(o, BlankNode):
            o = mapping[o]
        out.add(Triple(s, p, o))
    return out


def find_bijection(g1: Graph, g2: Graph) -> Optional[dict[BlankNode, BlankNode]]:
    """A blank-node bijection making the triple sets equal, or None."""
    if len(g1) != len(g2):
        return None
    ground1, blank1 = _split(g1)
    ground2, blank2 = _split(g2)
    if ground1 != ground2 or len(blank1) != len(blank2):
        return None
    colors1 = _signatures(blank1)
    colors2 = _signatures(blank2)
    if not colors1 and not colors2:
        return {}

    by_color1: dict[str, list[BlankNode]] = {}
    by_color2: dict[str, list[BlankNode]] = {}
    for b, c in colors1.items():
        by_color1.setdefault(c, []).append(b)
    for b, c in colors2.items():
        by_color2.setdefault(c, []).append(b)
    if set(by_color1) != set(by_color2):
        return None
    for color, members in by_color1.items():
        if len(members) != len(by_color2[color]):
            return None

    incident: dict[BlankNode, list[Triple]] = {b: [] for b in colors1}
    for t in blank1:
        if isinstance(t.subject, BlankNode):
            incident[t.subject].append(t)
        if isinstance(t.object, BlankNode) and t.object != t.subject:
            incident[t.object].append(t)

    target2 = set(blank2)
    mapping: dict[BlankNode, BlankNode] = {}
    taken: set[BlankNode] = set()

    def node_consistent(node: BlankNode) -> bool:
        # check incident triples whose blank terms are all assigned
        for s, p, o in incident[node]:
            ms = mapping.get(s) if isinstance(s, BlankNode) else s
            if ms is None:
                continue
            mo = mapping.get(o) if isinstance(o, BlankNode) else o
            if mo is None:
                continue
            if Triple(ms, p, mo) not in target2:
                return False
        return True

    forced: list[BlankNode] = []
    search_nodes: list[tuple[BlankNode, list[BlankNode]]] = []
    for color in sorted(by_color1, key=lambda c: (len(by_color1[c]), c)):
        members1 = sorted(by_color1[color], key=lambda b: b.label)
        members2 = sorted(by_color2[color], key=lambda b: b.label)
        if len(members1) == 1:
            mapping[members1[0]] = members2[0]
            taken.add(members2[0])
            forced.append(members1[0])
        else:
            search_nodes.extend((m, members2) for m in members1)

    for node in forced:
        if not node_consistent(node):
            return None

    n = len(search_nodes)
    iters: list = [None] * n
    i = 0
    while i < n:
        node, candidates = search_nodes[i]
        if iters[i] is None:
            iters[i] = iter(candidates)
        placed = False
        for candidate in iters[i]:
            if candidate in taken:
                continue
            mapping[node] = candidate
            if node_consistent(node):
                taken.add(candidate)
                placed = True
                break
            del mapping[node]
        if placed:
            i += 1
            if i < n:
                iters[i] = None
        else:
            iters[i] = None
            i -= 1
            if i < 0:
                return None
            previous_node = search_nodes[i][0]
            taken.discard(mapping[previous_node])
            del mapping[previous_node]

    if _apply(blank1, mapping) != target2:
        return None
    return dict(mapping)


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """True when a blank-node bijection makes the triple sets equal."""
    return find_bijection(g1, g2) is not None
