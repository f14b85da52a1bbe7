"""RDF terms, triples, and an in-memory indexed triple store.

The store keeps SPO/POS/OSP indexes for bound-position lookups and a global
insertion sequence so every match result comes back in insertion order.
Graphs are single-writer; call :meth:`Graph.freeze` to make one immutable and
safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from .errors import FrozenGraphError, ValidationError

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")
_BNODE_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_INTEGER_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_RE = re.compile(r"^[+-]?[0-9]+\.[0-9]+$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        if not _SCHEME_RE.match(self.value):
            raise ValidationError(f"IRI is not absolute (missing scheme): {self.value!r}")

    def __repr__(self):
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node with a graph-unique label."""

    label: str

    def __post_init__(self):
        if not _BNODE_LABEL_RE.match(self.label):
            raise ValidationError(f"bad blank node label: {self.label!r}")

    def __repr__(self):
        return f"_:{self.label}"


@dataclass(frozen=True, slots=True)
class Literal:
    """A typed literal, optionally language-tagged."""

    lexical: str
    datatype: str = XSD_STRING
    language: Optional[str] = None

    def __post_init__(self):
        if self.language is not None and self.datatype not in (XSD_STRING, RDF_LANGSTRING):
            raise ValidationError("language-tagged literal must use the langString datatype")
        if self.datatype == XSD_INTEGER and not _INTEGER_RE.match(self.lexical):
            raise ValidationError(f"not a valid integer lexical form: {self.lexical!r}")
        if self.datatype == XSD_DECIMAL and not _DECIMAL_RE.match(self.lexical):
            raise ValidationError(f"not a valid decimal lexical form: {self.lexical!r}")

    def __repr__(self):
        return f'"{self.lexical}"'

    @property
    def is_numeric(self) -> bool:
        return self.datatype in (XSD_INTEGER, XSD_DECIMAL)

    def to_python(self) -> Union[int, float, str]:
        if self.datatype == XSD_INTEGER:
            return int(self.lexical)
        if self.datatype == XSD_DECIMAL:
            return float(self.lexical)
        return self.lexical


Term = Union[Iri, BlankNode, Literal]


def format_decimal(value: float) -> str:
    """Shortest decimal lexical form keeping at least one fraction digit."""
    if value != value or value in (float("inf"), float("-inf")):
        raise ValidationError(f"numeric literal must be finite, got {value!r}")
    text = repr(float(value))
    if "e" in text or "E" in text:
        text = format(value, ".12f").rstrip("0")
        if text.endswith("."):
            text += "0"
    if "." not in text:
        text += ".0"
    return text


def integer(value: int) -> Literal:
    return Literal(str(int(value)), XSD_INTEGER)


def decimal(value: float) -> Literal:
    return Literal(format_decimal(value), XSD_DECIMAL)


def string(value: str) -> Literal:
    return Literal(value, XSD_STRING)


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term


def _check_triple(triple: Triple) -> None:
    s, p, o = triple
    if isinstance(s, Literal):
        raise ValidationError(f"triple subject may not be a literal: {s!r}")
    if not isinstance(p, Iri):
        raise ValidationError(f"triple predicate must be an IRI: {p!r}")
    if not isinstance(o, (Iri, BlankNode, Literal)):
        raise ValidationError(f"not an RDF term: {o!r}")


class Graph:
    """An insertion-ordered set of triples with a prefix map.

    Duplicate inserts are no-ops. ``match`` consults the SPO/POS/OSP indexes
    and always yields triples in insertion order.
    """

    def __init__(self, prefixes: Optional[dict[str, str]] = None, defaults: bool = True):
        from .vocab import DEFAULT_PREFIXES

        self.prefixes: dict[str, str] = dict(DEFAULT_PREFIXES) if defaults else {}
        if prefixes:
            self.prefixes.update(prefixes)
        self._triples: dict[Triple, int] = {}
        self._spo: dict[Term, dict[Term, dict[Term, Triple]]] = {}
        self._pos: dict[Term, dict[Term, dict[Term, Triple]]] = {}
        self._osp: dict[Term, dict[Term, dict[Term, Triple]]] = {}
        self._bnode_counter = 0
        self._frozen = False

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            list(self._triples) == list(other._triples)
            and self.prefixes == other.prefixes
        )

    def __hash__(self):
        return id(self)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "Graph":
        """Make the graph immutable; safe for concurrent readers afterwards."""
        self._frozen = True
        return self

    def bind(self, prefix: str, namespace: str) -> None:
        if self._frozen:
            raise FrozenGraphError("cannot bind a prefix on a frozen graph")
        self.prefixes[prefix] = namespace

    def new_bnode(self) -> BlankNode:
        """Mint a blank node label unused in this graph."""
        node = BlankNode(f"b{self._bnode_counter}")
        self._bnode_counter += 1
        return node

    def insert(self, triple: Triple) -> None:
        """Add a triple; inserting an existing triple is a no-op."""
        if self._frozen:
            raise FrozenGraphError("cannot insert into a frozen graph")
        _check_triple(triple)
        if triple in self._triples:
            return
        s, p, o = triple
        self._triples[triple] = len(self._triples)
        self._spo.setdefault(s, {}).setdefault(p, {})[o] = triple
        self._pos.setdefault(p, {}).setdefault(o, {})[s] = triple
        self._osp.setdefault(o, {}).setdefault(s, {})[p] = triple

    def add(self, subject: Term, predicate: Term, object: Term) -> None:
        self.insert(Triple(subject, predicate, object))

    def match(
        self,
        subject: Optional[Term] = None,
        predicate: Optional[Term] = None,
        object: Optional[Term] = None,
        expand: bool = False,
    ) -> list[Triple]:
        """All triples agreeing with every bound position, in insertion order.

        With ``expand=True`` a bound predicate also matches its registered
        sub-properties (the one fixed rule: hasProperty under hasAttribute).
        """
        if expand and predicate is not None:
            from .vocab import SUBPROPERTIES

            preds = SUBPROPERTIES.get(predicate, (predicate,))
            if len(preds) > 1:
                seen: dict[Triple, int] = {}
                for p in preds:
                    for t in self.match(subject, p, object):
                        seen[t] = self._triples[t]
                return [t for t, _ in sorted(seen.items(), key=lambda kv: kv[1])]
            predicate = preds[0]

        s, p, o = subject, predicate, object
        if s is None and p is None and o is None:
            return list(self._triples)
        if s is not None and p is not None and o is not None:
            t = Triple(s, p, o)
            return [t] if t in self._triples else []
        if s is not None:
            by_p = self._spo.get(s, {})
            if p is not None:
                found = list(by_p.get(p, {}).values())
            elif o is not None:
                found = list(self._osp.get(o, {}).get(s, {}).values())
            else:
                found = [t for os in by_p.values() for t in os.values()]
        elif p is not None:
            by_o = self._pos.get(p, {})
            if o is not None:
                found = list(by_o.get(o, {}).values())
            else:
                found = [t for ss in by_o.values() for t in ss.values()]
        else:
            found = [t for ps in self._osp.get(o, {}).values() for t in ps.values()]
        found.sort(key=self._triples.__getitem__)
        return found

    def value(
        self,
        subject: Optional[Term] = None,
        predicate: Optional[Term] = None,
        object: Optional[Term] = None,
    ) -> Optional[Term]:
        """The missing position of the first matching triple, if any."""
        hits = self.match(subject, predicate, object)
        if not hits:
            return None
        t = hits[0]
        if subject is None:
            return t.subject
        if object is None:
            return t.object
        return t.predicate

    def subjects(self, predicate: Term, object: Term) -> list[Term]:
        return [t.subject for t in self.match(None, predicate, object)]

    def objects(self, subject: Term, predicate: Term, expand: bool = False) -> list[Term]:
        return [t.object for t in self.match(subject, predicate, None, expand=expand)]

    def extend(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.insert(t)
