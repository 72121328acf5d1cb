"""Text formats: graphs, queries, and completeness statements.

Graph files are an N-Triples subset: one `<iri> <iri> (<iri>|"literal") .`
per line, UTF-8, `#` comments. Queries use a conjunctive SELECT syntax:

    SELECT ?crew ?child WHERE { <urn:ex:a99> <urn:ex:crew> ?crew . ?crew <urn:ex:child> ?child }

Statement files hold one record per line or block:

    COMPLETE { <urn:ex:a99> <urn:ex:crew> ?c } @author "fd" @time 2016-01-01T00:00:00Z @ref <urn:src:1>

Blank nodes are rejected everywhere: the data model is IRIs and literals
only. All parse errors carry the offending line number.
"""

from __future__ import annotations

import logging
import re
from datetime import datetime, timezone
from typing import Iterable, Optional

from .errors import ParseError
from .graph import Graph
from .statements import CompletenessStatement, Provenance, StatementSet
from .terms import (
    BGP,
    Iri,
    Literal,
    Query,
    Term,
    Triple,
    TriplePattern,
    Var,
    bgp_variables,
    escape_literal,
    sorted_patterns,
)

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<COMMENT>\#[^\n]*)
    | (?P<IRI><[^<>"{}|^`\\\s]*>)
    | (?P<LITERAL>"(?:[^"\\\n]|\\.)*")
    | (?P<VAR>\?[A-Za-z_][A-Za-z0-9_]*)
    | (?P<DTYPE>\^\^)
    | (?P<DOT>\.)
    | (?P<LBRACE>\{)
    | (?P<RBRACE>\})
    | (?P<STAR>\*)
    | (?P<ATKEY>@[A-Za-z]+)
    | (?P<BLANK>_:[A-Za-z0-9_]*)
    | (?P<WORD>[^\s.{}<>"]+)
    """,
    re.VERBOSE,
)

_UNESCAPE = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


class Token:
    __slots__ = ("kind", "text", "line")

    def __init__(self, kind: str, text: str, line: int):
        self.kind = kind
        self.text = text
        self.line = line

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, line {self.line})"


def _tokenize(text: str, start_line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    line = start_line
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line)
        kind = match.lastgroup
        value = match.group()
        if kind == "WS":
            line += value.count("\n")
        elif kind == "COMMENT":
            pass
        elif kind == "BLANK":
            raise ParseError("blank nodes are not supported", line)
        else:
            tokens.append(Token(kind, value, line))
        pos = match.end()
    return tokens


def _unescape_literal(raw: str, line: int) -> str:
    # raw includes the surrounding quotes
    body = raw[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            if i + 1 >= len(body):
                raise ParseError("dangling escape in literal", line)
            esc = body[i + 1]
            if esc not in _UNESCAPE:
                raise ParseError(f"unknown escape sequence \\{esc}", line)
            out.append(_UNESCAPE[esc])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class _TokenStream:
    def __init__(self, tokens: list[Token], last_line: int):
        self._tokens = tokens
        self._pos = 0
        self._last_line = last_line

    def peek(self) -> Optional[Token]:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def next(self) -> Optional[Token]:
        tok = self.peek()
        if tok is not None:
            self._pos += 1
        return tok

    @property
    def line(self) -> int:
        tok = self.peek()
        return tok.line if tok is not None else self._last_line

    def expect(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok is None:
            raise ParseError(f"expected {what}, found end of input", self._last_line)
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.line)
        return tok

    def at_end(self) -> bool:
        return self._pos >= len(self._tokens)


def _decode(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _make_iri(token: Token) -> Iri:
    try:
        return Iri(token.text[1:-1])
    except ValueError as exc:
        raise ParseError(str(exc), token.line) from None


def _parse_term(stream: _TokenStream, allow_var: bool) -> Term:
    tok = stream.next()
    if tok is None:
        raise ParseError("expected a term, found end of input", stream.line)
    if tok.kind == "IRI":
        return _make_iri(tok)
    if tok.kind == "LITERAL":
        lexical = _unescape_literal(tok.text, tok.line)
        datatype = None
        nxt = stream.peek()
        if nxt is not None and nxt.kind == "DTYPE":
            stream.next()
            datatype = _make_iri(stream.expect("IRI", "a datatype IRI")).value
        return Literal(lexical, datatype)
    if tok.kind == "VAR":
        if not allow_var:
            raise ParseError(f"variable {tok.text} not allowed here", tok.line)
        return Var(tok.text[1:])
    raise ParseError(f"expected a term, found {tok.text!r}", tok.line)


def _parse_pattern(stream: _TokenStream, allow_var: bool = True) -> TriplePattern:
    line = stream.line
    subject = _parse_term(stream, allow_var)
    predicate = _parse_term(stream, allow_var)
    obj = _parse_term(stream, allow_var)
    try:
        return TriplePattern(subject, predicate, obj)
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


def parse_graph(source) -> Graph:
    """Parse an N-Triples-subset document into a graph.

    Duplicate lines collapse; syntax problems report their line number.
    """
    text = _decode(source)
    triples: set[Triple] = set()
    # split on newlines only: splitlines() would also split on control
    # characters that may occur verbatim inside literals
    for lineno, raw_line in enumerate(text.split("\n"), start=1):
        tokens = _tokenize(raw_line.rstrip("\r"), start_line=lineno)
        if not tokens:
            continue
        stream = _TokenStream(tokens, lineno)
        pattern = _parse_pattern(stream, allow_var=False)
        stream.expect("DOT", "'.' terminating the triple")
        if not stream.at_end():
            raise ParseError(f"trailing content {stream.peek().text!r}", lineno)
        triples.add(pattern.to_triple())
    return Graph(triples)


def serialize_graph(graph: Graph) -> str:
    """Canonical text for a graph; parses back to an equal graph."""
    lines = sorted(str(t) for t in graph)
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_group(stream: _TokenStream, *, allow_empty: bool, what: str) -> BGP:
    stream.expect("LBRACE", "'{'")
    patterns: list[TriplePattern] = []
    while True:
        tok = stream.peek()
        if tok is None:
            raise ParseError("unterminated '{' group", stream.line)
        if tok.kind == "RBRACE":
            stream.next()
            break
        if patterns:
            stream.expect("DOT", "'.' between triple patterns")
            # allow a trailing separator before '}'
            tok = stream.peek()
            if tok is not None and tok.kind == "RBRACE":
                stream.next()
                break
        patterns.append(_parse_pattern(stream))
    if not patterns and not allow_empty:
        raise ParseError(f"{what} requires a non-empty BGP", stream.line)
    return frozenset(patterns)


def parse_query(text) -> Query:
    """Parse a `SELECT ... WHERE { ... }` conjunctive query."""
    decoded = _decode(text)
    tokens = _tokenize(decoded)
    last_line = decoded.count("\n") + 1
    stream = _TokenStream(tokens, last_line)

    tok = stream.next()
    if tok is None or tok.kind != "WORD" or tok.text.lower() != "select":
        raise ParseError("query must start with SELECT", tok.line if tok else 1)

    star = False
    projected: list[Var] = []
    while True:
        tok = stream.peek()
        if tok is None:
            raise ParseError("expected WHERE clause", stream.line)
        if tok.kind == "STAR":
            stream.next()
            star = True
        elif tok.kind == "VAR":
            stream.next()
            projected.append(Var(tok.text[1:]))
        else:
            break
    if not star and not projected:
        raise ParseError("SELECT requires '*' or at least one variable", stream.line)
    if star and projected:
        raise ParseError("SELECT takes either '*' or variables, not both", stream.line)

    tok = stream.next()
    if tok is None or tok.kind != "WORD" or tok.text.lower() != "where":
        raise ParseError("expected WHERE", tok.line if tok else stream.line)

    body = _parse_group(stream, allow_empty=False, what="a query body")
    if not stream.at_end():
        raise ParseError(f"trailing content {stream.peek().text!r}", stream.line)

    body_vars = bgp_variables(body)
    if star:
        projection = body_vars
    else:
        projection = frozenset(projected)
        missing = projection - body_vars
        if missing:
            names = ", ".join(sorted(str(v) for v in missing))
            raise ParseError(f"projected variable(s) not in the body: {names}")
    return Query(projection, body)


def serialize_query(query: Query) -> str:
    if query.projection == bgp_variables(query.body):
        head = "*"
    else:
        head = " ".join(str(v) for v in sorted(query.projection, key=lambda v: v.name))
    body = " . ".join(str(p) for p in sorted_patterns(query.body))
    return f"SELECT {head} WHERE {{ {body} }}"


def parse_rfc3339(text: str, line: Optional[int] = None) -> datetime:
    normalized = text.strip()
    if normalized.endswith(("Z", "z")):
        normalized = normalized[:-1] + "+00:00"
    try:
        value = datetime.fromisoformat(normalized)
    except ValueError:
        raise ParseError(f"not an RFC 3339 timestamp: {text!r}", line) from None
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value


def format_rfc3339(value: datetime) -> str:
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    value = value.astimezone(timezone.utc)
    return value.isoformat().replace("+00:00", "Z")


def _parse_metadata(stream: _TokenStream) -> Optional[Provenance]:
    author = None
    timestamp = None
    reference = None
    while True:
        tok = stream.peek()
        if tok is None or tok.kind != "ATKEY":
            break
        stream.next()
        key = tok.text[1:].lower()
        if key == "author":
            lit = stream.expect("LITERAL", 'a quoted author after @author')
            author = _unescape_literal(lit.text, lit.line)
        elif key == "time":
            value = stream.next()
            if value is None or value.kind not in ("WORD", "LITERAL"):
                raise ParseError("expected a timestamp after @time", tok.line)
            raw = (
                _unescape_literal(value.text, value.line)
                if value.kind == "LITERAL"
                else value.text
            )
            timestamp = parse_rfc3339(raw, value.line)
        elif key == "ref":
            value = stream.next()
            if value is None or value.kind not in ("IRI", "LITERAL"):
                raise ParseError("expected an IRI or string after @ref", tok.line)
            reference = (
                _make_iri(value).value
                if value.kind == "IRI"
                else _unescape_literal(value.text, value.line)
            )
        else:
            raise ParseError(f"unknown metadata key @{key}", tok.line)
    if author is None and timestamp is None and reference is None:
        return None
    return Provenance(author=author, timestamp=timestamp, reference=reference)


def parse_statements(source) -> StatementSet:
    """Parse a completeness-statement document.

    Records start with the COMPLETE keyword; duplicate bodies collapse to
    one statement (a warning is logged).
    """
    text = _decode(source)
    tokens = _tokenize(text)
    last_line = text.count("\n") + 1
    stream = _TokenStream(tokens, last_line)

    statements: dict[str, CompletenessStatement] = {}
    while not stream.at_end():
        tok = stream.next()
        if tok.kind != "WORD" or tok.text.lower() != "complete":
            raise ParseError(f"expected COMPLETE, found {tok.text!r}", tok.line)
        body = _parse_group(stream, allow_empty=False, what="a completeness statement")
        provenance = _parse_metadata(stream)
        statement = CompletenessStatement(body=body, provenance=provenance)
        if statement.id in statements:
            logger.warning(
                "duplicate completeness statement body near line %d ignored", tok.line
            )
            continue
        statements[statement.id] = statement
    return StatementSet(statements.values())


def serialize_statement(statement: CompletenessStatement) -> str:
    body = " . ".join(str(p) for p in sorted_patterns(statement.body))
    parts = [f"COMPLETE {{ {body} }}"]
    prov = statement.provenance
    if prov is not None:
        if prov.author is not None:
            parts.append(f'@author "{escape_literal(prov.author)}"')
        if prov.timestamp is not None:
            parts.append(f"@time {format_rfc3339(prov.timestamp)}")
        if prov.reference is not None:
            parts.append(f"@ref <{prov.reference}>")
    return " ".join(parts)


def serialize_statements(statements: Iterable[CompletenessStatement]) -> str:
    lines = sorted(serialize_statement(st) for st in statements)
    return "\n".join(lines) + ("\n" if lines else "")
