"""Concrete syntax for automaton documents and trace sets.

Document grammar (comments run ``//`` to end of line, whitespace is free):

    document := "hma" IDENT "{" messages state* trans* init? "}"
    messages := "messages" "{" IDENT ("," IDENT)* "}"
    state    := "state" IDENT ("initial")? (";" | "{" state* "}")
    trans    := "trans" IDENT "-" IDENT "/" (IDENT | "") "->" IDENT ";"
    init     := "initial" "{" IDENT ("," IDENT)* "}"

Nesting a state block inside another declares containment, so parsed
documents can never contain containment cycles (those remain expressible
programmatically).  A transition with no output is written ``-x/->``.

Parsing is purely syntactic plus reference resolution; the semantic
well-formedness rules live in :mod:`hma.core` and are deliberately not
applied here, so a parseable but ill-formed document (say, one without
initial states) survives to be diagnosed.

Serialization is canonical — names sorted, nesting derived from the stored
containment edges — so structurally equal automata serialize to identical
bytes and every serialized document parses back to the automaton it came
from.  Automata outside the grammar's range (overlapping containment, an
empty message alphabet, names colliding with keywords) are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from hma.behavior import Trace, TraceSet
from hma.core import EPSILON, Hma, Transition, is_identifier
from hma.errors import TraceFormatError, UnserializableError

KEYWORDS = frozenset({"hma", "messages", "state", "initial", "trans"})

_MAX_ERRORS = 50
_MAX_NESTING = 200


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int  # 1-based
    column: int  # 1-based
    length: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    expected: str
    found: str

    def __str__(self):
        return f"{self.span}: expected {self.expected}, found {self.found}"


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | punct | eof | bad
    text: str
    span: SourceSpan


_PUNCT = ("->", "{", "}", ";", ",", "-", "/")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _lex(text: str, filename: str):
    tokens: list[_Token] = []
    errors: list[ParseError] = []
    line, col, pos = 1, 1, 0
    n = len(text)

    def span(length):
        return SourceSpan(filename, line, col, length)

    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if text.startswith("//", pos):
            while pos < n and text[pos] != "\n":
                pos += 1
                col += 1
            continue
        m = _IDENT_RE.match(text, pos)
        if m:
            word = m.group(0)
            tokens.append(_Token("ident", word, span(len(word))))
            pos += len(word)
            col += len(word)
            continue
        for p in _PUNCT:
            if text.startswith(p, pos):
                tokens.append(_Token("punct", p, span(len(p))))
                pos += len(p)
                col += len(p)
                break
        else:
            if len(errors) < _MAX_ERRORS:
                errors.append(ParseError(span(1), "a token", repr(ch)))
            pos += 1
            col += 1
    tokens.append(_Token("eof", "", SourceSpan(filename, line, col, 0)))
    return tokens, errors


class _Parser:
    def __init__(self, tokens, errors):
        self.tokens = tokens
        self.pos = 0
        self.errors = list(errors)
        # raw collected items, resolved after the syntactic pass
        self.messages: list[_Token] = []
        self.states: list[tuple[_Token, str | None, bool]] = []  # (token, parent, initial)
        self.transitions: list[tuple[_Token, _Token, _Token | None, _Token]] = []
        self.init_refs: list[_Token] = []

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, expected, tok=None):
        tok = tok or self.peek()
        if len(self.errors) < _MAX_ERRORS:
            found = f"'{tok.text}'" if tok.text else "end of input"
            self.errors.append(ParseError(tok.span, expected, found))

    def at(self, text) -> bool:
        return self.peek().text == text and self.peek().kind in ("ident", "punct")

    def eat(self, text, expected=None) -> bool:
        if self.at(text):
            self.advance()
            return True
        self.error(expected or f"'{text}'")
        return False

    def eat_ident(self, expected="an identifier") -> _Token | None:
        tok = self.peek()
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return self.advance()
        self.error(expected)
        return None

    def sync(self):
        """Skip to just past the next ';' (or to '}' / end of input)."""
        while True:
            tok = self.peek()
            if tok.kind == "eof" or tok.text == "}":
                return
            self.advance()
            if tok.text == ";":
                return

    def document(self):
        self.eat("hma")
        self.eat_ident("a document name")
        self.eat("{")
        if self.at("messages"):
            self.message_block()
        else:
            self.error("'messages'")
        seen_trans = False
        seen_init = False
        while True:
            tok = self.peek()
            if tok.kind == "eof" or tok.text == "}":
                break
            if tok.text == "state":
                if seen_trans or seen_init:
                    self.error("a transition, an initial block or '}' "
                               "(state declarations come first)", tok)
                self.state_item(None, 0)
            elif tok.text == "trans":
                if seen_init:
                    self.error("'}' (the initial block comes last)", tok)
                seen_trans = True
                self.trans_item()
            elif tok.text == "initial":
                if seen_init:
                    self.error("'}' (only one initial block is allowed)", tok)
                seen_init = True
                self.init_block()
            else:
                self.error("'state', 'trans', 'initial' or '}'")
                self.sync()
        self.eat("}")
        if self.peek().kind != "eof":
            self.error("end of input")

    def message_block(self):
        self.advance()  # messages
        self.eat("{")
        tok = self.eat_ident("a message name")
        if tok:
            self.messages.append(tok)
        while self.at(","):
            self.advance()
            tok = self.eat_ident("a message name")
            if tok:
                self.messages.append(tok)
        self.eat("}")

    def state_item(self, parent, depth):
        self.advance()  # state
        name = self.eat_ident("a state name")
        if name is None:
            self.sync()
            return
        initial = False
        if self.at("initial"):
            self.advance()
            initial = True
        self.states.append((name, parent, initial))
        if self.at(";"):
            self.advance()
            return
        if self.at("{"):
            if depth >= _MAX_NESTING:
                self.error("shallower nesting (limit reached)")
                self.sync()
                return
            self.advance()
            while self.at("state"):
                self.state_item(name.text, depth + 1)
            self.eat("}", "'state' or '}'")
            return
        self.error("';' or '{'")
        self.sync()

    def trans_item(self):
        self.advance()  # trans
        source = self.eat_ident("a state identifier")
        ok = source is not None and self.eat("-")
        inp = self.eat_ident("a message identifier") if ok else None
        ok = inp is not None and self.eat("/")
        out = None
        if ok:
            if self.peek().kind == "ident" and self.peek().text not in KEYWORDS:
                out = self.advance()
            ok = self.eat("->", "'->' or a message identifier")
        target = self.eat_ident("a state identifier") if ok else None
        if target is None:
            self.sync()
            return
        self.eat(";")
        self.transitions.append((source, inp, out, target))

    def init_block(self):
        self.advance()  # initial
        self.eat("{")
        tok = self.eat_ident("a state name")
        if tok:
            self.init_refs.append(tok)
        while self.at(","):
            self.advance()
            tok = self.eat_ident("a state name")
            if tok:
                self.init_refs.append(tok)
        self.eat("}")


def parse_hma(text: str, filename: str = "<string>") -> Hma | list[ParseError]:
    """Parse a document; returns the automaton or every recoverable error."""
    tokens, lex_errors = _lex(text, filename)
    parser = _Parser(tokens, lex_errors)
    parser.document()
    errors = parser.errors

    message_names: set[str] = set()
    for tok in parser.messages:
        if tok.text in message_names and len(errors) < _MAX_ERRORS:
            errors.append(ParseError(tok.span, "a fresh message name",
                                     f"'{tok.text}' (already declared)"))
        message_names.add(tok.text)
    state_names: set[str] = set()
    for tok, _, _ in parser.states:
        if tok.text in state_names and len(errors) < _MAX_ERRORS:
            errors.append(ParseError(tok.span, "a fresh state name",
                                     f"'{tok.text}' (already declared)"))
        state_names.add(tok.text)

    def check_ref(tok, names, what):
        if tok.text not in names and len(errors) < _MAX_ERRORS:
            errors.append(ParseError(tok.span, f"a declared {what}", f"'{tok.text}'"))

    for source, inp, out, target in parser.transitions:
        check_ref(source, state_names, "state identifier")
        check_ref(inp, message_names, "message identifier")
        if out is not None:
            check_ref(out, message_names, "message identifier")
        check_ref(target, state_names, "state identifier")
    for tok in parser.init_refs:
        check_ref(tok, state_names, "state identifier")

    if errors:
        return errors

    return Hma(
        states=frozenset(state_names),
        containment=frozenset(
            (tok.text, parent) for tok, parent, _ in parser.states if parent is not None
        ),
        messages=frozenset(message_names),
        transitions=frozenset(
            Transition(s.text, i.text, o.text if o else EPSILON, t.text)
            for s, i, o, t in parser.transitions
        ),
        initial=frozenset(tok.text for tok, _, ini in parser.states if ini)
        | frozenset(tok.text for tok in parser.init_refs),
    )


def _check_serializable(h: Hma, name: str):
    if not is_identifier(name) or name in KEYWORDS:
        raise UnserializableError(f"invalid document name: {name!r}")
    if not h.messages:
        raise UnserializableError("an empty message alphabet has no concrete syntax")
    clash = sorted((h.states | h.messages) & KEYWORDS)
    if clash:
        raise UnserializableError(f"names collide with keywords: {', '.join(clash)}")
    parents: dict[str, list[str]] = {}
    for c, p in h.containment:
        parents.setdefault(c, []).append(p)
    overlapping = sorted(c for c, ps in parents.items() if len(ps) > 1)
    if overlapping:
        raise UnserializableError(
            f"state '{overlapping[0]}' has several parents; "
            "overlapping containment has no concrete syntax"
        )


def serialize_hma(h: Hma, name: str = "main") -> str:
    """Canonical text for a document; parsing it back reconstructs ``h``."""
    _check_serializable(h, name)
    children: dict[str | None, list[str]] = {}
    parent_of = {c: p for c, p in h.containment}
    for s in h.states:
        children.setdefault(parent_of.get(s), []).append(s)

    lines = [f"hma {name} {{"]
    lines.append(f"  messages {{ {', '.join(sorted(h.messages))} }}")

    def emit_state(s, indent):
        flag = " initial" if s in h.initial else ""
        if s in children:
            lines.append(f"{indent}state {s}{flag} {{")
            for c in sorted(children[s]):
                emit_state(c, indent + "  ")
            lines.append(f"{indent}}}")
        else:
            lines.append(f"{indent}state {s}{flag};")

    for root in sorted(children.get(None, [])):
        emit_state(root, "  ")
    for t in sorted(h.transitions):
        lines.append(f"  trans {t.source} -{t.input}/{t.output}-> {t.target};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_traces(t: TraceSet) -> str:
    """Canonical text for a trace set: a header, then one trace per line."""
    header = f"depth {t.depth} over {' '.join(sorted(t.alphabet))}".rstrip()
    return "\n".join([header] + [tr.render() for tr in t.ordered()]) + "\n"


def parse_traces(text: str) -> TraceSet:
    """Parse the canonical trace-set format; raises :class:`TraceFormatError`."""
    lines = text.splitlines()
    if not lines:
        raise TraceFormatError("missing header line")
    header = lines[0].split()
    if len(header) < 2 or header[0] != "depth" or not header[1].isdigit():
        raise TraceFormatError(f"malformed header: {lines[0]!r}")
    if len(header) > 2 and header[2] != "over":
        raise TraceFormatError(f"malformed header: {lines[0]!r}")
    depth = int(header[1])
    alphabet = header[3:] if len(header) > 2 else []
    for name in alphabet:
        if not is_identifier(name):
            raise TraceFormatError(f"invalid message name in header: {name!r}")
    if len(set(alphabet)) != len(alphabet):
        raise TraceFormatError("duplicate message name in header")

    def side(words, lineno):
        if words == ["-"]:
            return ()
        for w in words:
            if w not in alphabet:
                raise TraceFormatError(f"line {lineno}: unknown message {w!r}")
        return tuple(words)

    traces = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        words = line.split()
        if words.count("/") != 1:
            raise TraceFormatError(f"line {lineno}: expected one '/' separator")
        sep = words.index("/")
        left, right = words[:sep], words[sep + 1 :]
        if not left or not right:
            raise TraceFormatError(f"line {lineno}: each side needs '-' or messages")
        try:
            traces.add(Trace(side(left, lineno), side(right, lineno)))
        except ValueError as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from None
    try:
        return TraceSet(depth, frozenset(alphabet), frozenset(traces))
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from None
