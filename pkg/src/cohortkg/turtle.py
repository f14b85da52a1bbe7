"""Turtle serializer and parser for the subset of Turtle this toolkit emits.

The serializer writes a fixed-order prefix block, then one group per subject
in first-appearance order. Blank nodes referenced exactly once (and not part
of a reference cycle) are nested inline with bracket notation; all others get
explicit ``_:`` labels. Numeric literals are written bare in their shortest
lexical form, so output is stable for equal graphs and ``parse(serialize(g))``
is isomorphic to ``g``.

The parser accepts exactly that subset plus comments: ``@prefix`` lines,
``a``, predicate-object lists, object lists, bracketed blank nodes, labeled
blank nodes, and numeric/string literals.
"""

from __future__ import annotations

import re
from typing import Optional

from .errors import PrefixResolutionError, TurtleSyntaxError
from .graph import (
    RDF_LANGSTRING,
    XSD_DECIMAL,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
)
from .vocab import PREFIX_ORDER, RDF_TYPE

_PN_LOCAL_RE = re.compile(r"^[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?$")

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def ordered_prefixes(prefixes: dict[str, str]) -> list[tuple[str, str]]:
    """Prefixes in the fixed serialization order, extras alphabetical."""
    out = [(p, prefixes[p]) for p in PREFIX_ORDER if p in prefixes]
    extras = sorted(p for p in prefixes if p not in PREFIX_ORDER)
    out.extend((p, prefixes[p]) for p in extras)
    return out


def _escape_string(value: str) -> str:
    chunks = []
    for ch in value:
        if ch in _ESCAPES:
            chunks.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            chunks.append(f"\\u{ord(ch):04X}")
        else:
            chunks.append(ch)
    return "".join(chunks)


class _Serializer:
    def __init__(self, graph: Graph):
        self.graph = graph
        self.prefix_list = ordered_prefixes(graph.prefixes)
        self.inline: set[BlankNode] = set()
        self._compute_inline()

    def _compute_inline(self) -> None:
        refcount: dict[BlankNode, int] = {}
        edges: dict[BlankNode, set[BlankNode]] = {}
        for s, _, o in self.graph:
            if isinstance(o, BlankNode):
                refcount[o] = refcount.get(o, 0) + 1
                if isinstance(s, BlankNode):
                    edges.setdefault(s, set()).add(o)
        cyclic = _nodes_on_cycles(edges)
        self.inline = {b for b, n in refcount.items() if n == 1 and b not in cyclic}

    def qname(self, iri: Iri) -> str:
        best: Optional[str] = None
        best_len = -1
        for prefix, ns in self.prefix_list:
            if iri.value.startswith(ns) and len(ns) > best_len:
                local = iri.value[len(ns):]
                if local == "" or _PN_LOCAL_RE.match(local):
                    best = f"{prefix}:{local}"
                    best_len = len(ns)
        return best if best is not None else f"<{iri.value}>"

    def term(self, t: Term) -> str:
        if isinstance(t, Iri):
            return self.qname(t)
        if isinstance(t, BlankNode):
            if t in self.inline:
                return self.bracket_block(t)
            return f"_:{t.label}"
        return self.literal(t)

    def literal(self, lit: Literal) -> str:
        if lit.datatype in (XSD_INTEGER, XSD_DECIMAL):
            return lit.lexical
        quoted = f'"{_escape_string(lit.lexical)}"'
        if lit.language:
            return f"{quoted}@{lit.language}"
        if lit.datatype in (XSD_STRING, RDF_LANGSTRING):
            return quoted
        return f"{quoted}^^{self.qname(Iri(lit.datatype))}"

    def _predicate_groups(self, subject: Term) -> list[tuple[Iri, list[Term]]]:
        groups: dict[Iri, list[Term]] = {}
        for t in self.graph.match(subject, None, None):
            groups.setdefault(t.predicate, []).append(t.object)
        return list(groups.items())

    def bracket_block(self, node: BlankNode) -> str:
        parts = []
        for pred, objects in self._predicate_groups(node):
            verb = "a" if pred == RDF_TYPE else self.qname(pred)
            objs = ", ".join(self.term(o) for o in objects)
            parts.append(f"{verb} {objs}")
        if not parts:
            return "[]"
        return "[ " + " ; ".join(parts) + " ]"

    def subject_block(self, subject: Term) -> str:
        name = f"_:{subject.label}" if isinstance(subject, BlankNode) else self.qname(subject)
        lines = []
        groups = self._predicate_groups(subject)
        for i, (pred, objects) in enumerate(groups):
            verb = "a" if pred == RDF_TYPE else self.qname(pred)
            objs = ", ".join(self.term(o) for o in objects)
            lead = name if i == 0 else "   "
            end = " ." if i == len(groups) - 1 else " ;"
            lines.append(f"{lead} {verb} {objs}{end}")
        return "\n".join(lines)

    def serialize(self) -> str:
        lines = [f"@prefix {p}: <{ns}> ." for p, ns in self.prefix_list]
        text = "\n".join(lines) + "\n"
        subjects: list[Term] = []
        seen: set[Term] = set()
        for s, _, _ in self.graph:
            if s not in seen:
                seen.add(s)
                subjects.append(s)
        blocks = [
            self.subject_block(s)
            for s in subjects
            if not (isinstance(s, BlankNode) and s in self.inline)
        ]
        if blocks:
            text += "\n" + "\n\n".join(blocks) + "\n"
        return text


def _nodes_on_cycles(edges: dict[BlankNode, set[BlankNode]]) -> set[BlankNode]:
    """Blank nodes that can reach themselves through object references."""
    cyclic: set[BlankNode] = set()
    nodes = set(edges) | {o for outs in edges.values() for o in outs}
    for start in nodes:
        stack = list(edges.get(start, ()))
        visited: set[BlankNode] = set()
        while stack:
            cur = stack.pop()
            if cur == start:
                cyclic.add(start)
                break
            if cur in visited:
                continue
            visited.add(cur)
            stack.extend(edges.get(cur, ()))
    return cyclic


def serialize_turtle(graph: Graph) -> str:
    """Serialize a graph to Turtle text (UTF-8 conventions, LF endings)."""
    return _Serializer(graph).serialize()


# --- parsing ---------------------------------------------------------------

_TOK_IRIREF = "iriref"
_TOK_PNAME = "pname"
_TOK_BNODE = "bnode"
_TOK_STRING = "string"
_TOK_INTEGER = "integer"
_TOK_DECIMAL = "decimal"
_TOK_LANGTAG = "langtag"
_TOK_PUNCT = "punct"
_TOK_A = "a"
_TOK_PREFIX_KW = "@prefix"
_TOK_DTYPE = "^^"
_TOK_EOF = "eof"

_PREFIX_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_NUMBER_RE = re.compile(r"[+-]?[0-9]+(\.[0-9]+)?")
_LOCAL_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind: str, value, line: int, col: int):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r})"


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> TurtleSyntaxError:
        return TurtleSyntaxError(message, self.line, self.col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self._next()
            out.append(tok)
            if tok.kind == _TOK_EOF:
                return out

    def _next(self) -> _Token:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance()
            else:
                break
        if self.pos >= len(text):
            return _Token(_TOK_EOF, None, self.line, self.col)

        line, col = self.line, self.col
        ch = text[self.pos]

        if ch == "<":
            end = text.find(">", self.pos + 1)
            if end < 0 or "\n" in text[self.pos:end]:
                raise self.error("unterminated IRI reference")
            value = text[self.pos + 1:end]
            self._advance(end + 1 - self.pos)
            return _Token(_TOK_IRIREF, value, line, col)

        if ch == '"':
            return self._string(line, col)

        if ch == "@":
            self._advance()
            word = self._word()
            if word == "prefix":
                return _Token(_TOK_PREFIX_KW, word, line, col)
            if word and re.fullmatch(r"[A-Za-z]+(-[A-Za-z0-9]+)*", word):
                return _Token(_TOK_LANGTAG, word, line, col)
            raise self.error(f"bad @-token: @{word!r}")

        if ch == "^":
            if text.startswith("^^", self.pos):
                self._advance(2)
                return _Token(_TOK_DTYPE, "^^", line, col)
            raise self.error("expected '^^'")

        if ch == "_":
            if not text.startswith("_:", self.pos):
                raise self.error("expected '_:' blank node label")
            self._advance(2)
            label = self._word()
            if not label:
                raise self.error("empty blank node label")
            return _Token(_TOK_BNODE, label, line, col)

        if ch in "[];,.":
            self._advance()
            return _Token(_TOK_PUNCT, ch, line, col)

        m = _NUMBER_RE.match(text, self.pos)
        if m and (ch.isdigit() or ch in "+-"):
            lexical = m.group(0)
            # a trailing '.' with no digit after stays a statement terminator
            self._advance(len(lexical))
            kind = _TOK_DECIMAL if "." in lexical else _TOK_INTEGER
            return _Token(kind, lexical, line, col)

        if ch.isalpha():
            m = _PREFIX_RE.match(text, self.pos)
            word = m.group(0)
            after = self.pos + len(word)
            if after < len(text) and text[after] == ":":
                self._advance(len(word) + 1)
                local = self._local()
                return _Token(_TOK_PNAME, (word, local), line, col)
            if word == "a":
                self._advance(1)
                return _Token(_TOK_A, "a", line, col)
            raise self.error(f"unexpected token {word!r}")

        raise self.error(f"unexpected character {ch!r}")

    def _word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] in "_-"
        ):
            self._advance()
        return self.text[start:self.pos]

    def _local(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _LOCAL_CHARS:
            self._advance()
        local = self.text[start:self.pos]
        # PN_LOCAL may not end with '.'; give trailing dots back to the stream
        while local.endswith("."):
            local = local[:-1]
            self.pos -= 1
            self.col -= 1
        return local

    def _string(self, line: int, col: int) -> _Token:
        self._advance()  # opening quote
        out = []
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == '"':
                self._advance()
                return _Token(_TOK_STRING, "".join(out), line, col)
            if ch == "\n":
                raise self.error("newline in string literal")
            if ch == "\\":
                self._advance()
                if self.pos >= len(text):
                    break
                esc = text[self.pos]
                if esc in _UNESCAPES:
                    out.append(_UNESCAPES[esc])
                    self._advance()
                elif esc in "uU":
                    width = 4 if esc == "u" else 8
                    hexs = text[self.pos + 1:self.pos + 1 + width]
                    if len(hexs) < width:
                        raise self.error("truncated unicode escape")
                    try:
                        out.append(chr(int(hexs, 16)))
                    except ValueError:
                        raise self.error(f"bad unicode escape \\{esc}{hexs}") from None
                    self._advance(width + 1)
                else:
                    raise self.error(f"unknown escape \\{esc}")
            else:
                out.append(ch)
                self._advance()
        raise self.error("unterminated string literal")


def turtle_tokens(text: str) -> list[str]:
    """Surface token strings of a Turtle document, for structural comparison."""
    out = []
    for tok in _Tokenizer(text).tokens():
        if tok.kind == _TOK_EOF:
            break
        if tok.kind == _TOK_PNAME:
            out.append(f"{tok.value[0]}:{tok.value[1]}")
        elif tok.kind == _TOK_IRIREF:
            out.append(f"<{tok.value}>")
        elif tok.kind == _TOK_BNODE:
            out.append(f"_:{tok.value}")
        elif tok.kind == _TOK_STRING:
            out.append(f'"{tok.value}"')
        else:
            out.append(str(tok.value))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Tokenizer(text).tokens()
        self.index = 0
        self.prefixes: dict[str, str] = {}
        self.graph = Graph(defaults=False)
        self.used_labels = {
            t.value for t in self.tokens if t.kind == _TOK_BNODE
        }
        self._mint_counter = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def next(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def error(self, message: str, tok: _Token) -> TurtleSyntaxError:
        return TurtleSyntaxError(message, tok.line, tok.col)

    def expect_punct(self, ch: str) -> None:
        tok = self.next()
        if tok.kind != _TOK_PUNCT or tok.value != ch:
            raise self.error(f"expected {ch!r}, found {tok.value!r}", tok)

    def mint_bnode(self) -> BlankNode:
        while True:
            label = f"b{self._mint_counter}"
            self._mint_counter += 1
            if label not in self.used_labels:
                self.used_labels.add(label)
                return BlankNode(label)

    def resolve_pname(self, tok: _Token) -> Iri:
        prefix, local = tok.value
        if prefix not in self.prefixes:
            raise PrefixResolutionError(f"undeclared prefix {prefix!r}", tok.line, tok.col)
        return Iri(self.prefixes[prefix] + local)

    def parse(self) -> Graph:
        while True:
            tok = self.peek()
            if tok.kind == _TOK_EOF:
                return self.graph
            if tok.kind == _TOK_PREFIX_KW:
                self.next()
                self._prefix_decl()
            else:
                self._statement()

    def _prefix_decl(self) -> None:
        name = self.next()
        if name.kind != _TOK_PNAME or name.value[1] != "":
            raise self.error("expected 'prefix:' in @prefix declaration", name)
        iri = self.next()
        if iri.kind != _TOK_IRIREF:
            raise self.error("expected IRI in @prefix declaration", iri)
        self.expect_punct(".")
        self.prefixes[name.value[0]] = iri.value
        self.graph.bind(name.value[0], iri.value)

    def _statement(self) -> None:
        tok = self.next()
        if tok.kind == _TOK_IRIREF:
            subject: Term = Iri(tok.value)
        elif tok.kind == _TOK_PNAME:
            subject = self.resolve_pname(tok)
        elif tok.kind == _TOK_BNODE:
            subject = BlankNode(tok.value)
        elif tok.kind == _TOK_PUNCT and tok.value == "[":
            subject = self.mint_bnode()
            if not (self.peek().kind == _TOK_PUNCT and self.peek().value == "]"):
                self._predicate_object_list(subject)
            self.expect_punct("]")
            if self.peek().kind == _TOK_PUNCT and self.peek().value == ".":
                self.next()
                return
        else:
            raise self.error(f"expected a subject, found {tok.value!r}", tok)
        self._predicate_object_list(subject)
        self.expect_punct(".")

    def _predicate_object_list(self, subject: Term) -> None:
        while True:
            tok = self.next()
            if tok.kind == _TOK_A:
                predicate = RDF_TYPE
            elif tok.kind == _TOK_IRIREF:
                predicate = Iri(tok.value)
            elif tok.kind == _TOK_PNAME:
                predicate = self.resolve_pname(tok)
            else:
                raise self.error(f"expected a predicate, found {tok.value!r}", tok)
            while True:
                obj = self._object()
                self.graph.insert(Triple(subject, predicate, obj))
                if self.peek().kind == _TOK_PUNCT and self.peek().value == ",":
                    self.next()
                    continue
                break
            if self.peek().kind == _TOK_PUNCT and self.peek().value == ";":
                self.next()
                # tolerate trailing ';' before '.' or ']'
                nxt = self.peek()
                if nxt.kind == _TOK_PUNCT and nxt.value in (".", "]"):
                    return
                continue
            return

    def _object(self) -> Term:
        tok = self.next()
        if tok.kind == _TOK_IRIREF:
            return Iri(tok.value)
        if tok.kind == _TOK_PNAME:
            return self.resolve_pname(tok)
        if tok.kind == _TOK_BNODE:
            return BlankNode(tok.value)
        if tok.kind == _TOK_INTEGER:
            return Literal(tok.value, XSD_INTEGER)
        if tok.kind == _TOK_DECIMAL:
            return Literal(tok.value, XSD_DECIMAL)
        if tok.kind == _TOK_STRING:
            nxt = self.peek()
            if nxt.kind == _TOK_LANGTAG:
                self.next()
                return Literal(tok.value, RDF_LANGSTRING, language=nxt.value)
            if nxt.kind == _TOK_DTYPE:
                self.next()
                dt = self.next()
                if dt.kind == _TOK_IRIREF:
                    return Literal(tok.value, dt.value)
                if dt.kind == _TOK_PNAME:
                    return Literal(tok.value, self.resolve_pname(dt).value)
                raise self.error("expected datatype IRI after '^^'", dt)
            return Literal(tok.value, XSD_STRING)
        if tok.kind == _TOK_PUNCT and tok.value == "[":
            node = self.mint_bnode()
            if not (self.peek().kind == _TOK_PUNCT and self.peek().value == "]"):
                self._predicate_object_list(node)
            self.expect_punct("]")
            return node
        raise self.error(f"expected an object, found {tok.value!r}", tok)


def parse_turtle(text: str) -> Graph:
    """Parse Turtle text into a graph, preserving document order."""
    return _Parser(text).parse()


def load_turtle(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_turtle(fh.read())


def save_turtle(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_turtle(graph))
