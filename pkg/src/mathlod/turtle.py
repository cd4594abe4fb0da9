"""Turtle subset reader and canonical writer.

Supported: ``@prefix``, prefixed names, full IRIs, ``_:label`` blank nodes,
``[ ... ]`` anonymous blank nodes, the ``a`` keyword, ``;`` and ``,``
separators, and single-line strings with an optional language tag or
datatype.  Collections, long strings, numeric and boolean shorthands and
``@base`` are rejected.

The writer is canonical: prefixes in prefix-map order, subjects in order of
first appearance, one predicate-object pair per triple.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import MathLodError
from .rdf import RDF, BNode, Graph, IRI, Literal, Triple

__all__ = [
    "TurtleError",
    "TurtleSyntaxError",
    "UndefinedPrefixError",
    "MalformedIRIError",
    "SerializationError",
    "parse_turtle",
    "serialize_turtle",
]


class TurtleError(MathLodError, ValueError):
    pass


class TurtleSyntaxError(TurtleError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UndefinedPrefixError(TurtleSyntaxError):
    pass


class MalformedIRIError(TurtleSyntaxError):
    pass


class SerializationError(TurtleError):
    pass


# --------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class _Tok:
    kind: str
    value: object
    line: int
    col: int


_PNAME = re.compile(r"([A-Za-z](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?:((?:[A-Za-z0-9_\-:]|\.(?=[A-Za-z0-9_\-:]))*)")
_BLABEL = re.compile(r"_:([A-Za-z0-9_]+)")
_LANG = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_NUMERIC = re.compile(r"[+\-]?(?:\d|\.\d)")
_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_IRI_FORBIDDEN = set('<>"{}|^`\\')


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.line_start = 0

    def error(self, msg: str, cls=TurtleSyntaxError, pos: int | None = None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return cls(msg, line, col)

    def _where(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        return line, pos - (self.text.rfind("\n", 0, pos) + 1) + 1

    def tokens(self) -> Iterator[_Tok]:
        text, n = self.text, len(self.text)
        while True:
            while self.pos < n:
                ch = text[self.pos]
                if ch in " \t\r\n":
                    self.pos += 1
                elif ch == "#":
                    nl = text.find("\n", self.pos)
                    self.pos = n if nl < 0 else nl
                else:
                    break
            if self.pos >= n:
                line, col = self._where(self.pos)
                yield _Tok("eof", None, line, col)
                return
            start = self.pos
            line, col = self._where(start)
            ch = text[start]
            if ch in ".;,[]":
                self.pos += 1
                yield _Tok(ch, ch, line, col)
            elif ch in "()":
                raise self.error("collections are not supported")
            elif ch == "<":
                end = text.find(">", start + 1)
                if end < 0:
                    raise self.error("unterminated IRI", MalformedIRIError)
                raw = text[start + 1:end]
                if any(c.isspace() for c in raw) or any(c in _IRI_FORBIDDEN for c in raw):
                    raise self.error(f"malformed IRI <{raw}>", MalformedIRIError)
                try:
                    iri = IRI(raw)
                except ValueError as exc:
                    raise self.error(f"malformed IRI <{raw}>: {exc}", MalformedIRIError) from None
                self.pos = end + 1
                yield _Tok("iri", iri, line, col)
            elif ch in "\"'":
                yield self._string(ch, line, col)
            elif text.startswith("_:", start):
                m = _BLABEL.match(text, start)
                if not m:
                    raise self.error("malformed blank node label")
                self.pos = m.end()
                yield _Tok("bnode", m.group(1), line, col)
            elif text.startswith("@prefix", start) and not text[start + 7:start + 8].isalnum():
                self.pos = start + 7
                yield _Tok("@prefix", None, line, col)
            elif ch == "@":
                raise self.error("unsupported directive")
            elif _NUMERIC.match(text, start):
                raise self.error("numeric literals are not supported")
            else:
                m = _PNAME.match(text, start)
                if m:
                    self.pos = m.end()
                    yield _Tok("pname", (m.group(1) or "", m.group(2)), line, col)
                    continue
                word = re.match(r"[A-Za-z_]\w*", text[start:])
                if word and word.group(0) == "a":
                    self.pos = start + 1
                    yield _Tok("a", None, line, col)
                elif word and word.group(0) in ("true", "false"):
                    raise self.error("boolean literals are not supported")
                elif word and word.group(0).upper() in ("PREFIX", "BASE"):
                    raise self.error("SPARQL-style directives are not supported")
                else:
                    raise self.error(f"unexpected character {ch!r}")

    def _string(self, quote: str, line: int, col: int) -> _Tok:
        text = self.text
        if text.startswith(quote * 3, self.pos):
            raise self.error("multiline strings are not supported")
        i = self.pos + 1
        out = []
        while True:
            if i >= len(text) or text[i] == "\n":
                raise self.error("unterminated string")
            c = text[i]
            if c == quote:
                break
            if c == "\\":
                nxt = text[i + 1:i + 2]
                if nxt in _ESCAPES:
                    out.append(_ESCAPES[nxt])
                    i += 2
                    continue
                if nxt in ("u", "U"):
                    width = 4 if nxt == "u" else 8
                    hexdigits = text[i + 2:i + 2 + width]
                    if len(hexdigits) != width or not all(h in "0123456789abcdefABCDEF" for h in hexdigits):
                        raise self.error("bad unicode escape", pos=i)
                    out.append(chr(int(hexdigits, 16)))
                    i += 2 + width
                    continue
                raise self.error("bad escape sequence", pos=i)
            out.append(c)
            i += 1
        self.pos = i + 1
        lexical = "".join(out)
        m = _LANG.match(text, self.pos)
        if m:
            self.pos = m.end()
            return _Tok("literal", (lexical, m.group(1), None), line, col)
        if text.startswith("^^", self.pos):
            self.pos += 2
            return _Tok("literal", (lexical, None, "^^"), line, col)
        return _Tok("literal", (lexical, None, None), line, col)


# --------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.lexer = _Lexer(text)
        self.toks = list(self.lexer.tokens())
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []
        used = {t.value for t in self.toks if t.kind == "bnode"}
        self._fresh = (f"b{k}" for k in range(10**9) if f"b{k}" not in used)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            what = "end of input" if tok.kind == "eof" else repr(tok.value if tok.value is not None else tok.kind)
            raise TurtleSyntaxError(f"expected {kind!r}, found {what}", tok.line, tok.col)
        return tok

    def parse(self) -> Graph:
        while self.peek().kind != "eof":
            if self.peek().kind == "@prefix":
                self.directive()
            else:
                self.statement()
        return Graph(self.triples, self.prefixes)

    def directive(self) -> None:
        self.next()
        tok = self.expect("pname")
        prefix, local = tok.value
        if local:
            raise TurtleSyntaxError("prefix declaration must end with ':'", tok.line, tok.col)
        ns = self.expect("iri").value
        self.expect(".")
        self.prefixes[prefix] = str(ns)

    def statement(self) -> None:
        tok = self.peek()
        if tok.kind == "[":
            subj = self.blank_property_list()
            if self.peek().kind != ".":
                self.predicate_object_list(subj)
        else:
            subj = self.subject()
            self.predicate_object_list(subj)
        self.expect(".")

    def subject(self):
        tok = self.next()
        if tok.kind == "iri":
            return tok.value
        if tok.kind == "pname":
            return self.resolve(tok)
        if tok.kind == "bnode":
            return BNode(tok.value)
        raise TurtleSyntaxError(f"expected subject, found {tok.kind}", tok.line, tok.col)

    def resolve(self, tok: _Tok) -> IRI:
        prefix, local = tok.value
        if prefix not in self.prefixes:
            raise UndefinedPrefixError(f"undefined prefix {prefix!r}", tok.line, tok.col)
        try:
            return IRI(self.prefixes[prefix] + local)
        except ValueError as exc:
            raise MalformedIRIError(str(exc), tok.line, tok.col) from None

    def verb(self) -> IRI:
        tok = self.next()
        if tok.kind == "a":
            return RDF.type
        if tok.kind == "iri":
            return tok.value
        if tok.kind == "pname":
            return self.resolve(tok)
        raise TurtleSyntaxError(f"expected predicate, found {tok.kind}", tok.line, tok.col)

    def predicate_object_list(self, subj) -> None:
        while True:
            pred = self.verb()
            self.object_list(subj, pred)
            if self.peek().kind != ";":
                return
            while self.peek().kind == ";":
                self.next()
            if self.peek().kind in (".", "]"):
                return

    def object_list(self, subj, pred) -> None:
        while True:
            self.object(subj, pred)
            if self.peek().kind != ",":
                return
            self.next()

    def object(self, subj, pred) -> None:
        tok = self.peek()
        if tok.kind == "[":
            node = BNode(next(self._fresh))
            self.triples.append(Triple(subj, pred, node))
            self.blank_property_list(node)
            return
        self.next()
        if tok.kind == "iri":
            obj = tok.value
        elif tok.kind == "pname":
            obj = self.resolve(tok)
        elif tok.kind == "bnode":
            obj = BNode(tok.value)
        elif tok.kind == "literal":
            lexical, lang, dt = tok.value
            datatype = None
            if dt == "^^":
                dtok = self.next()
                if dtok.kind == "iri":
                    datatype = dtok.value
                elif dtok.kind == "pname":
                    datatype = self.resolve(dtok)
                else:
                    raise TurtleSyntaxError("expected datatype IRI", dtok.line, dtok.col)
            obj = Literal(lexical, lang, datatype)
        else:
            what = "end of input" if tok.kind == "eof" else tok.kind
            raise TurtleSyntaxError(f"expected object, found {what}", tok.line, tok.col)
        self.triples.append(Triple(subj, pred, obj))

    def blank_property_list(self, node: BNode | None = None) -> BNode:
        self.expect("[")
        node = node or BNode(next(self._fresh))
        if self.peek().kind != "]":
            self.predicate_object_list(node)
        self.expect("]")
        return node


def parse_turtle(text: str) -> Graph:
    """Parse Turtle text (supported subset) into a :class:`Graph`."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# writer

_PN_LOCAL = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$")


def _shorten(iri: IRI, prefixes) -> str | None:
    best = None
    for name, ns in prefixes.items():
        if iri.value.startswith(ns) and _PN_LOCAL.match(iri.value[len(ns):]):
            if best is None or len(ns) > len(best[1]):
                best = (name, ns)
    if best is None:
        return None
    return f"{best[0]}:{iri.value[len(best[1]):]}"


def _iri_text(iri: IRI, prefixes) -> str:
    short = _shorten(iri, prefixes)
    if short is not None:
        return short
    if any(c in _IRI_FORBIDDEN for c in iri.value):
        raise SerializationError(f"cannot serialize IRI {iri.value!r}")
    return f"<{iri.value}>"


def _escape(s: str) -> str:
    return (s.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


def _term_text(term, prefixes) -> str:
    if isinstance(term, IRI):
        return _iri_text(term, prefixes)
    if isinstance(term, BNode):
        return f"_:{term.label}"
    text = f'"{_escape(term.lexical)}"'
    if term.language:
        return f"{text}@{term.language}"
    if term.datatype is not None:
        return f"{text}^^{_iri_text(term.datatype, prefixes)}"
    return text


def serialize_turtle(graph: Graph) -> str:
    """Canonical Turtle text for ``graph``; empty string for an empty graph without prefixes."""
    prefixes = graph.prefixes
    lines = [f"@prefix {name}: <{ns}> ." for name, ns in prefixes.items()]
    groups: dict = {}
    for t in graph:
        groups.setdefault(t.subject, []).append(t)
    if not groups:
        return "\n".join(lines) + "\n" if lines else ""
    type_text = _shorten(RDF.type, prefixes) or "a"
    blocks = []
    for subj, triples in groups.items():
        items = []
        for _, p, o in triples:
            ptext = type_text if p == RDF.type else _iri_text(p, prefixes)
            items.append(f"{ptext} {_term_text(o, prefixes)}")
        head = _term_text(subj, prefixes)
        blocks.append(f"{head} " + " ;\n    ".join(items) + " .")
    body = "\n\n".join(blocks) + "\n"
    if lines:
        return "\n".join(lines) + "\n\n" + body
    return body
