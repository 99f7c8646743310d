"""
Rational expressions: syntax tree, a small text parser, Thompson construction
and state elimination.

Text syntax: ``|`` for union, juxtaposition for concatenation, postfix ``*``,
parentheses for grouping.  A literal is a single letter, digit or ``_``, or
any symbol name in angle brackets (``<req>``).  ``ε`` (or ``%e``) is the empty
word and ``∅`` (or ``%0``) the empty language.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .core import AlphabetMismatchError, AutomataError, Recognizer, check_name, trim


class RegexSyntaxError(AutomataError):
    pass


class Regex:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Lit(Regex):
    symbol: str


@dataclass(frozen=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Union(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


EMPTY = Empty()
EPSILON = Epsilon()


# Simplifying constructors keep state-elimination output readable. They only
# apply identities that hold for every language.

def concat(a: Regex, b: Regex) -> Regex:
    if a == EMPTY or b == EMPTY:
        return EMPTY
    if a == EPSILON:
        return b
    if b == EPSILON:
        return a
    return Concat(a, b)


def union(a: Regex, b: Regex) -> Regex:
    if a == EMPTY:
        return b
    if b == EMPTY or a == b:
        return a
    return Union(a, b)


def star(a: Regex) -> Regex:
    if a in (EMPTY, EPSILON):
        return EPSILON
    if isinstance(a, Star):
        return a
    return Star(a)


def literals(e: Regex) -> set:
    if isinstance(e, Lit):
        return {e.symbol}
    if isinstance(e, (Concat, Union)):
        return literals(e.left) | literals(e.right)
    if isinstance(e, Star):
        return literals(e.inner)
    return set()


def _lit_text(symbol: str) -> str:
    if len(symbol) == 1 and (symbol.isalnum() or symbol == "_"):
        return symbol
    return f"<{symbol}>"


def to_text(e: Regex, prec: int = 0) -> str:
    """Render with the minimum parentheses; ``prec`` is the binding context
    (0 union, 1 concatenation, 2 star operand)."""
    if isinstance(e, Empty):
        return "∅"
    if isinstance(e, Epsilon):
        return "ε"
    if isinstance(e, Lit):
        return _lit_text(e.symbol)
    if isinstance(e, Union):
        text = f"{to_text(e.left, 0)}|{to_text(e.right, 0)}"
        return f"({text})" if prec > 0 else text
    if isinstance(e, Concat):
        text = to_text(e.left, 1) + to_text(e.right, 1)
        return f"({text})" if prec > 1 else text
    if isinstance(e, Star):
        return to_text(e.inner, 2) + "*"
    raise TypeError(f"not a regex: {e!r}")


def parse_regex(text: str) -> Regex:
    pos = 0

    def peek():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return text[pos] if pos < len(text) else None

    def fail(msg):
        raise RegexSyntaxError(f"{msg} at column {pos + 1} of {text!r}")

    def parse_union():
        nonlocal pos
        e = parse_concat()
        while peek() == "|":
            pos += 1
            e = Union(e, parse_concat())
        return e

    def parse_concat():
        parts = []
        while peek() is not None and peek() not in "|)":
            parts.append(parse_star())
        if not parts:
            fail("expected an expression")
        e = parts[0]
        for p in parts[1:]:
            e = Concat(e, p)
        return e

    def parse_star():
        nonlocal pos
        e = parse_atom()
        while peek() == "*":
            pos += 1
            e = Star(e)
        return e

    def parse_atom():
        nonlocal pos
        c = peek()
        if c == "(":
            pos += 1
            e = parse_union()
            if peek() != ")":
                fail("expected ')'")
            pos += 1
            return e
        if c == "<":
            end = text.find(">", pos)
            if end < 0:
                fail("unterminated '<'")
            name = text[pos + 1:end]
            pos = end + 1
            return Lit(check_name(name, "symbol"))
        if c == "ε":
            pos += 1
            return EPSILON
        if c == "∅":
            pos += 1
            return EMPTY
        if c == "%" and text[pos + 1:pos + 2] in ("e", "0"):
            pos += 2
            return EPSILON if text[pos - 1] == "e" else EMPTY
        if c.isalnum() or c == "_":
            pos += 1
            return Lit(c)
        fail(f"unexpected {c!r}")

    if peek() is None:
        raise RegexSyntaxError("empty expression")
    e = parse_union()
    if peek() is not None:
        fail(f"unexpected {peek()!r}")
    return e


def regex_to_nfa(e: Regex, alphabet) -> Recognizer:
    """Thompson construction followed by epsilon elimination.

    States of the result are named ``q0, q1, ...`` in breadth-first order from
    the initial state.
    """
    alphabet = frozenset(alphabet)
    stray = literals(e) - alphabet
    if stray:
        raise AlphabetMismatchError(f"regex literals {sorted(stray)} are not in the alphabet")

    fresh = count()
    moves: list = []   # (src, symbol or None, dst)

    def build(node):
        start, end = next(fresh), next(fresh)
        if isinstance(node, Empty):
            pass
        elif isinstance(node, Epsilon):
            moves.append((start, None, end))
        elif isinstance(node, Lit):
            moves.append((start, node.symbol, end))
        elif isinstance(node, Concat):
            s1, e1 = build(node.left)
            s2, e2 = build(node.right)
            moves.extend([(start, None, s1), (e1, None, s2), (e2, None, end)])
        elif isinstance(node, Union):
            for part in (node.left, node.right):
                s, t = build(part)
                moves.extend([(start, None, s), (t, None, end)])
        elif isinstance(node, Star):
            s, t = build(node.inner)
            moves.extend([(start, None, s), (t, None, end), (start, None, end), (t, None, s)])
        else:
            raise TypeError(f"not a regex: {node!r}")
        return start, end

    start, final = build(e)
    n = next(fresh)

    eps = {i: set() for i in range(n)}
    for src, x, dst in moves:
        if x is None:
            eps[src].add(dst)

    def closure(i):
        seen = {i}
        stack = [i]
        while stack:
            for j in eps[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    closures = {i: closure(i) for i in range(n)}
    labelled = [(s, x, t) for s, x, t in moves if x is not None]
    transitions = {(i, x, t) for i in range(n) for s, x, t in labelled if s in closures[i]}
    accepting = {i for i in range(n) if final in closures[i]}

    # number the states reachable from the start in BFS order
    order = {start: 0}
    queue = [start]
    for i in queue:
        for s, x, t in sorted(transitions, key=lambda tr: (tr[1], tr[2])):
            if s == i and t not in order:
                order[t] = len(order)
                queue.append(t)
    name = {i: f"q{k}" for i, k in order.items()}
    r = Recognizer.build(
        alphabet,
        set(name.values()),
        name[start],
        {(name[s], x, name[t]) for s, x, t in transitions if s in name and t in name},
        {name[i] for i in accepting if i in name},
    )
    return trim(r)


_START, _FINAL = object(), object()


def nfa_to_regex(r: Recognizer) -> Regex:
    """State elimination, removing original states in sorted name order."""
    ts = r.ts
    edges: dict = {}

    def add(p, q, e):
        edges[p, q] = union(edges.get((p, q), EMPTY), e)

    for src, x, dst in sorted(ts.transitions):
        add(src, dst, Lit(x))
    add(_START, ts.initial, EPSILON)
    for s in sorted(r.accepting):
        add(s, _FINAL, EPSILON)

    for k in sorted(ts.states):
        loop = star(edges.pop((k, k), EMPTY))
        into = [(p, e) for (p, q), e in edges.items() if q == k]
        out = [(q, e) for (p, q), e in edges.items() if p == k]
        for p, _ in into:
            del edges[p, k]
        for q, _ in out:
            del edges[k, q]
        for p, e_in in into:
            for q, e_out in out:
                add(p, q, concat(e_in, concat(loop, e_out)))
    return edges.get((_START, _FINAL), EMPTY)
