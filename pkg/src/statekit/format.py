"""
The ``.fsm`` machine description language and DOT export.

A document holds one or more machines::

    # Milner's deterministic agent
    machine A {
      alphabet: a, b, c;
      states: A0, A1, A2, A3;
      initial: A0;
      accepting: A2;
      A0 - a -> A1;
      A1 - b -> A2;
      A1 - c -> A3;
    }

A Moore machine replaces ``accepting:`` with one ``output S = ...;`` line per
state, where the value is a symbol set ``{b, c}``, ``true``/``false``, or a
quoted token ``"..."``.  Bare names are ASCII letters, digits, ``_`` and
``'``; any other name (such as the ``{B1,B1x}`` states made by subset
construction) is written in double quotes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (AutomataError, MalformedMachineError, MooreMachine,
                   OutputKind, Recognizer, TransitionSystem, check_name,
                   fresh_name)


class ParseError(AutomataError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


_BARE = re.compile(r"[A-Za-z0-9_']+")
_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z0-9_']+)
  | (?P<str>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>->|[{};,:=-])
""", re.VERBOSE)


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r"}


def _unescape(raw: str) -> str:
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), raw)


def _escape(text: str) -> str:
    text = text.replace("\\", "\\\\").replace('"', '\\"')
    return '"' + text.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r") + '"'


@dataclass(frozen=True)
class Token:
    kind: str      # "name", "str", "punct" or "eof"
    value: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            if text[pos] == '"':
                raise ParseError("unterminated string", line, col)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "str":
            tokens.append(Token("str", _unescape(m.group()[1:-1]), line, col))
        elif kind in ("name", "punct"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class MachineDocument:
    """Named machines in declaration order."""

    machines: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.machines[name]

    def __iter__(self):
        return iter(self.machines.items())

    def __len__(self):
        return len(self.machines)

    def names(self) -> list:
        return list(self.machines)


@dataclass
class _Draft:
    name: Token
    alphabet: dict = field(default_factory=dict)     # name -> first token
    states: dict = field(default_factory=dict)
    initial: Token | None = None
    accepting: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)      # state -> (token, value)
    transitions: list = field(default_factory=list)  # (src, label, dst) tokens
    form: tuple | None = None                         # ("accepting"|"output", token)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, k=0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg, tok: Token):
        raise ParseError(msg, tok.line, tok.column)

    def expect(self, value: str) -> Token:
        tok = self.next()
        if tok.kind != "punct" or tok.value != value:
            shown = tok.value or "end of input"
            self.error(f"expected {value!r}, found {shown!r}", tok)
        return tok

    def name(self, what="name") -> Token:
        tok = self.next()
        if tok.kind not in ("name", "str"):
            shown = tok.value or "end of input"
            self.error(f"expected {what}, found {shown!r}", tok)
        try:
            check_name(tok.value, what)
        except MalformedMachineError as exc:
            self.error(str(exc), tok)
        return tok

    def name_list(self, allow_empty=False) -> list:
        if allow_empty and self.peek().value == ";" and self.peek().kind == "punct":
            self.next()
            return []
        names = [self.name()]
        while self.peek().kind == "punct" and self.peek().value == ",":
            self.next()
            names.append(self.name())
        self.expect(";")
        return names

    def document(self) -> MachineDocument:
        doc = MachineDocument()
        if self.peek().kind == "eof":
            self.error("expected at least one machine", self.peek())
        while self.peek().kind != "eof":
            name_tok, machine = self.machine()
            if name_tok.value in doc.machines:
                self.error(f"duplicate machine name {name_tok.value!r}", name_tok)
            doc.machines[name_tok.value] = machine
        return doc

    def machine(self):
        kw = self.next()
        if kw.kind != "name" or kw.value != "machine":
            self.error(f"expected 'machine', found {kw.value or 'end of input'!r}", kw)
        draft = _Draft(self.name("machine name"))
        self.expect("{")
        while not (self.peek().kind == "punct" and self.peek().value == "}"):
            if self.peek().kind == "eof":
                self.error("unterminated machine body", self.peek())
            self.decl(draft)
        close = self.next()
        return draft.name, self.finish(draft, close)

    def set_form(self, draft: _Draft, form: str, tok: Token):
        if draft.form is not None and draft.form[0] != form:
            self.error("cannot mix 'accepting' and 'output' declarations in one machine", tok)
        draft.form = (form, tok)

    def decl(self, draft: _Draft):
        head, second = self.peek(), self.peek(1)
        is_punct = second.kind == "punct"
        if head.kind == "name" and is_punct and second.value == ":" and head.value in (
                "alphabet", "states", "initial", "accepting"):
            self.next()
            self.next()
            if head.value == "alphabet":
                for tok in self.name_list(allow_empty=True):
                    draft.alphabet.setdefault(tok.value, tok)
            elif head.value == "states":
                for tok in self.name_list():
                    draft.states.setdefault(tok.value, tok)
            elif head.value == "initial":
                tok = self.name("state")
                self.expect(";")
                if draft.initial is not None:
                    self.error("duplicate 'initial' declaration", head)
                draft.initial = tok
            else:
                self.set_form(draft, "accepting", head)
                draft.accepting.extend(self.name_list(allow_empty=True))
        elif head.kind == "name" and head.value == "output" and self.peek(2).kind == "punct" \
                and self.peek(2).value == "=":
            self.next()
            self.set_form(draft, "output", head)
            state = self.name("state")
            self.expect("=")
            value = self.output_value()
            self.expect(";")
            if state.value in draft.outputs:
                self.error(f"duplicate output for state {state.value!r}", state)
            draft.outputs[state.value] = (state, value)
        elif is_punct and second.value == "-":
            src = self.name("state")
            self.expect("-")
            label = self.name("symbol")
            self.expect("->")
            dst = self.name("state")
            self.expect(";")
            draft.transitions.append((src, label, dst))
        else:
            self.error(f"expected a declaration, found {head.value or 'end of input'!r}", head)

    def output_value(self):
        tok = self.peek()
        if tok.kind == "punct" and tok.value == "{":
            self.next()
            members = []
            if not (self.peek().kind == "punct" and self.peek().value == "}"):
                members.append(self.name("symbol"))
                while self.peek().kind == "punct" and self.peek().value == ",":
                    self.next()
                    members.append(self.name("symbol"))
            self.expect("}")
            return OutputKind.SET, members
        self.next()
        if tok.kind == "name" and tok.value in ("true", "false"):
            return OutputKind.BOOL, tok.value == "true"
        if tok.kind == "str":
            return OutputKind.TOKEN, tok.value
        self.error(f"expected an output value, found {tok.value or 'end of input'!r}", tok)

    def finish(self, d: _Draft, close: Token):
        where = d.name.value
        if not d.states:
            self.error(f"machine {where!r} has no 'states' declaration", close)
        if d.initial is None:
            self.error(f"machine {where!r} has no 'initial' declaration", close)
        if d.form is None:
            self.error(f"machine {where!r} needs 'accepting' or 'output' declarations", close)

        def known_state(tok):
            if tok.value not in d.states:
                self.error(f"unknown state {tok.value!r}", tok)

        def known_symbol(tok):
            if tok.value not in d.alphabet:
                self.error(f"unknown symbol {tok.value!r}", tok)

        known_state(d.initial)
        for src, label, dst in d.transitions:
            known_state(src)
            known_symbol(label)
            known_state(dst)
        ts = TransitionSystem(
            d.alphabet.keys(), d.states.keys(), d.initial.value,
            {(s.value, x.value, t.value) for s, x, t in d.transitions})

        if d.form[0] == "accepting":
            for tok in d.accepting:
                known_state(tok)
            return Recognizer(ts, {tok.value for tok in d.accepting})

        kinds = set()
        outputs = {}
        for state_tok, (kind, value) in d.outputs.values():
            known_state(state_tok)
            if kinds and kind not in kinds:
                self.error("all outputs of a machine must have the same kind", state_tok)
            kinds.add(kind)
            if kind is OutputKind.SET:
                for tok in value:
                    known_symbol(tok)
                value = frozenset(tok.value for tok in value)
            outputs[state_tok.value] = value
        missing = sorted(set(d.states) - outputs.keys())
        if missing:
            self.error(f"no output declared for state {missing[0]!r}", close)
        return MooreMachine(ts, outputs, kinds.pop())


def parse(text: str) -> MachineDocument:
    return _Parser(text).document()


def quote(name: str) -> str:
    if _BARE.fullmatch(name):
        return name
    return _escape(name)


def render_value(value) -> str:
    """Text form of an output value, used for tokens and DOT labels."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(sorted(value)) + "}"
    if isinstance(value, tuple):
        return "(" + ", ".join(render_value(v) for v in value) + ")"
    return str(value)


def _render_output(value, kind: OutputKind) -> str:
    if kind is OutputKind.SET:
        return "{" + ", ".join(quote(x) for x in sorted(value)) + "}"
    if kind is OutputKind.BOOL:
        return render_value(value)
    return _escape(render_value(value))


def serialize_machine(name: str, m) -> str:
    ts = m.ts
    lines = [f"machine {quote(name)} {{"]
    lines.append(f"  alphabet: {', '.join(quote(x) for x in sorted(ts.alphabet))};")
    lines.append(f"  states: {', '.join(quote(s) for s in sorted(ts.states))};")
    lines.append(f"  initial: {quote(ts.initial)};")
    if isinstance(m, Recognizer):
        lines.append(f"  accepting: {', '.join(quote(s) for s in sorted(m.accepting))};")
    else:
        for s in sorted(ts.states):
            lines.append(f"  output {quote(s)} = {_render_output(m.outputs[s], m.kind)};")
    for src, x, dst in sorted(ts.transitions):
        lines.append(f"  {quote(src)} - {quote(x)} -> {quote(dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(doc) -> str:
    if isinstance(doc, (Recognizer, MooreMachine)):
        doc = MachineDocument({"M": doc})
    return "\n".join(serialize_machine(name, m) for name, m in doc)


def _dot_str(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(m, name: str = "M") -> str:
    ts = m.ts
    start = fresh_name("__start", ts.states)
    lines = [f"digraph {_dot_str(name)} {{", "  rankdir=LR;"]
    lines.append(f"  {_dot_str(start)} [shape=point, style=invis];")
    for s in sorted(ts.states):
        if isinstance(m, Recognizer):
            shape = "doublecircle" if s in m.accepting else "circle"
            label = _dot_str(s)
        else:
            shape = "circle"
            label = _dot_str(s)[:-1] + "\\n" + _dot_str(render_value(m.outputs[s]))[1:]
        lines.append(f"  {_dot_str(s)} [shape={shape}, label={label}];")
    lines.append(f"  {_dot_str(start)} -> {_dot_str(ts.initial)};")
    for src, x, dst in sorted(ts.transitions):
        lines.append(f"  {_dot_str(src)} -> {_dot_str(dst)} [label={_dot_str(x)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
