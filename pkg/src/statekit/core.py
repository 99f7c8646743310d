"""
Machine data model and the classical recognizer constructions.

A :class:`TransitionSystem` carries the alphabet, states, initial state and a
transition *relation*.  A :class:`Recognizer` adds an accepting set, a
:class:`MooreMachine` adds a per-state output.  Everything here is immutable;
every operation returns a new machine.
"""
from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher


class AutomataError(ValueError):
    """Base class for every error raised by this package."""


class MalformedMachineError(AutomataError):
    pass


class AlphabetMismatchError(AutomataError):
    pass


class DeterminismRequiredError(AutomataError):
    pass


class UnknownStateError(AutomataError):
    pass


class OutputKindMismatchError(AutomataError):
    pass


_BAD_NAME = re.compile(r'[\s"]')

SINK = "__sink"


def check_name(name: Any, what: str = "name") -> str:
    if not isinstance(name, str) or not name or _BAD_NAME.search(name):
        raise MalformedMachineError(f"invalid {what}: {name!r}")
    return name


def subset_name(members: Iterable[str]) -> str:
    """Canonical name for a set of states: ``{a,b,c}`` with members sorted."""
    return "{" + ",".join(sorted(members)) + "}"


def fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


@dataclass(frozen=True)
class TransitionSystem:
    alphabet: frozenset
    states: frozenset
    initial: str
    transitions: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        for x in self.alphabet:
            check_name(x, "symbol")
        for s in self.states:
            check_name(s, "state")
        if self.initial not in self.states:
            raise MalformedMachineError(f"initial state {self.initial!r} is not a state")
        for t in self.transitions:
            if len(t) != 3:
                raise MalformedMachineError(f"transition {t!r} is not a (source, label, target) triple")
            src, x, dst = t
            if src not in self.states:
                raise UnknownStateError(f"transition source {src!r} is not a state")
            if dst not in self.states:
                raise UnknownStateError(f"transition target {dst!r} is not a state")
            if x not in self.alphabet:
                raise AlphabetMismatchError(f"transition label {x!r} is not in the alphabet")

    @cached_property
    def _succ(self) -> dict:
        index: dict = {}
        for src, x, dst in self.transitions:
            index.setdefault((src, x), set()).add(dst)
        return {k: frozenset(v) for k, v in index.items()}

    def successors(self, state: str, symbol: str) -> frozenset:
        return self._succ.get((state, symbol), frozenset())

    def out_labels(self, state: str) -> frozenset:
        return frozenset(x for (s, x) in self._succ if s == state)

    def sorted_alphabet(self) -> list:
        return sorted(self.alphabet)

    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self._succ.values())

    def is_complete(self) -> bool:
        return all((s, x) in self._succ for s in self.states for x in self.alphabet)


@dataclass(frozen=True)
class Recognizer:
    ts: TransitionSystem
    accepting: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        extra = self.accepting - self.ts.states
        if extra:
            raise UnknownStateError(f"accepting states {sorted(extra)} are not states")

    @classmethod
    def build(cls, alphabet, states, initial, transitions=(), accepting=()) -> Recognizer:
        return cls(TransitionSystem(alphabet, states, initial, transitions), accepting)

    def output(self, state: str) -> bool:
        return state in self.accepting


class OutputKind(enum.Enum):
    BOOL = "bool"
    SET = "set"
    TOKEN = "token"


def output_kind_of(value) -> OutputKind:
    if isinstance(value, bool):
        return OutputKind.BOOL
    if isinstance(value, (set, frozenset)):
        return OutputKind.SET
    return OutputKind.TOKEN


@dataclass(frozen=True)
class MooreMachine:
    """Transition system plus an output value per state.

    All outputs share one declared kind: booleans, sets of symbols, or
    opaque hashable tokens.  The transition relation may be nondeterministic.
    """

    ts: TransitionSystem
    outputs: Mapping[str, Hashable] = field(default_factory=dict)
    kind: OutputKind = OutputKind.TOKEN

    def __post_init__(self):
        outputs = dict(self.outputs)
        if outputs.keys() != set(self.ts.states):
            missing = sorted(set(self.ts.states) - outputs.keys())
            extra = sorted(outputs.keys() - set(self.ts.states))
            raise MalformedMachineError(
                f"outputs must cover exactly the states (missing {missing}, unknown {extra})")
        for s, v in outputs.items():
            if self.kind is OutputKind.SET:
                v = frozenset(v)
                if not v <= self.ts.alphabet:
                    raise AlphabetMismatchError(
                        f"output of {s!r} has symbols outside the alphabet: {sorted(v - self.ts.alphabet)}")
            elif self.kind is OutputKind.BOOL and not isinstance(v, bool):
                raise MalformedMachineError(f"output of {s!r} is not a boolean: {v!r}")
            outputs[s] = v
        object.__setattr__(self, "outputs", outputs)

    @classmethod
    def build(cls, alphabet, states, initial, transitions, outputs, kind=None) -> MooreMachine:
        if kind is None:
            kinds = {output_kind_of(v) for v in outputs.values()}
            kind = kinds.pop() if len(kinds) == 1 else OutputKind.TOKEN
        return cls(TransitionSystem(alphabet, states, initial, transitions), outputs, kind)

    def output(self, state: str):
        return self.outputs[state]


Machine = Recognizer | MooreMachine


def _check_word(alphabet, word: Sequence[str]) -> None:
    for x in word:
        if x not in alphabet:
            raise AlphabetMismatchError(f"symbol {x!r} is not in the alphabet {sorted(alphabet)}")


def reachable(ts: TransitionSystem) -> frozenset:
    seen = {ts.initial}
    stack = [ts.initial]
    while stack:
        s = stack.pop()
        for x in ts.alphabet:
            for t in ts.successors(s, x):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return frozenset(seen)


def accepts(r: Recognizer, word: Sequence[str]) -> bool:
    _check_word(r.ts.alphabet, word)
    current = {r.ts.initial}
    for x in word:
        current = {t for s in current for t in r.ts.successors(s, x)}
        if not current:
            return False
    return bool(current & r.accepting)


def restrict(r: Recognizer, keep) -> Recognizer:
    keep = frozenset(keep)
    ts = r.ts
    return Recognizer(
        TransitionSystem(ts.alphabet, keep, ts.initial,
                         {t for t in ts.transitions if t[0] in keep and t[2] in keep}),
        r.accepting & keep)


def trim(r: Recognizer) -> Recognizer:
    return restrict(r, reachable(r.ts))


def determinize(r: Recognizer) -> Recognizer:
    """Subset construction over the reachable subsets.

    The empty subset is never materialised, so the result may be partial;
    pair with :func:`complete` for a total transition function.
    """
    ts = r.ts
    start = frozenset([ts.initial])
    seen = {start}
    queue = deque([start])
    transitions = set()
    while queue:
        subset = queue.popleft()
        for x in ts.alphabet:
            target = frozenset(t for s in subset for t in ts.successors(s, x))
            if not target:
                continue
            transitions.add((subset_name(subset), x, subset_name(target)))
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return Recognizer.build(
        ts.alphabet,
        {subset_name(s) for s in seen},
        subset_name(start),
        transitions,
        {subset_name(s) for s in seen if s & r.accepting},
    )


def _require_deterministic(r: Recognizer, op: str) -> None:
    if not r.ts.is_deterministic():
        raise DeterminismRequiredError(f"{op} requires a deterministic machine")


def complete(r: Recognizer) -> Recognizer:
    _require_deterministic(r, "complete")
    ts = r.ts
    missing = [(s, x) for s in ts.states for x in ts.alphabet if not ts.successors(s, x)]
    if not missing:
        return r
    sink = fresh_name(SINK, ts.states)
    transitions = set(ts.transitions)
    transitions.update((s, x, sink) for s, x in missing)
    transitions.update((sink, x, sink) for x in ts.alphabet)
    return Recognizer.build(ts.alphabet, ts.states | {sink}, ts.initial, transitions, r.accepting)


def _dfa_step(ts: TransitionSystem, s: str, x: str) -> str:
    (t,) = ts.successors(s, x)
    return t


def hopcroft_partition(r: Recognizer) -> list:
    """Myhill-Nerode classes of a complete DFA, by Hopcroft's refinement."""
    ts = r.ts
    states = ts.states
    accepting = frozenset(r.accepting)
    rejecting = states - accepting
    partition = [b for b in (accepting, rejecting) if b]
    if len(partition) < 2:
        return partition

    inverse: dict = {}
    for src, x, dst in ts.transitions:
        inverse.setdefault((dst, x), set()).add(src)

    work = [min(partition, key=len)]
    while work:
        splitter = work.pop()
        for x in ts.sorted_alphabet():
            pre = set()
            for t in splitter:
                pre |= inverse.get((t, x), set())
            if not pre:
                continue
            refined = []
            for block in partition:
                inside = block & pre
                outside = block - pre
                if inside and outside:
                    refined += [inside, outside]
                    if block in work:
                        work.remove(block)
                        work += [inside, outside]
                    else:
                        work.append(min(inside, outside, key=len))
                else:
                    refined.append(block)
            partition = refined
    return partition


def minimize(r: Recognizer) -> Recognizer:
    _require_deterministic(r, "minimize")
    dfa = complete(trim(r))
    blocks = hopcroft_partition(dfa)
    name = {s: subset_name(b) for b in blocks for s in b}
    ts = dfa.ts
    return Recognizer.build(
        ts.alphabet,
        set(name.values()),
        name[ts.initial],
        {(name[s], x, name[t]) for s, x, t in ts.transitions},
        {name[s] for s in dfa.accepting},
    )


@dataclass(frozen=True)
class LanguageVerdict:
    equivalent: bool
    counterexample: tuple | None = None

    def __bool__(self):
        return self.equivalent


def _check_same_alphabet(a: TransitionSystem, b: TransitionSystem) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {sorted(a.alphabet)} vs {sorted(b.alphabet)}")


def language_equivalent(r1: Recognizer, r2: Recognizer) -> LanguageVerdict:
    """Decide L(r1) = L(r2).

    Walks the completed determinizations in lockstep, breadth first with
    symbols in sorted order, so the first disagreement found is reached by the
    shortest word, ties broken lexicographically.
    """
    _check_same_alphabet(r1.ts, r2.ts)
    d1 = complete(determinize(r1))
    d2 = complete(determinize(r2))
    symbols = d1.ts.sorted_alphabet()
    start = (d1.ts.initial, d2.ts.initial)
    words = {start: ()}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in d1.accepting) != (q in d2.accepting):
            return LanguageVerdict(False, words[pair])
        for x in symbols:
            nxt = (_dfa_step(d1.ts, p, x), _dfa_step(d2.ts, q, x))
            if nxt not in words:
                words[nxt] = words[pair] + (x,)
                queue.append(nxt)
    return LanguageVerdict(True)


def _graph(m: Machine) -> nx.DiGraph:
    g = nx.DiGraph()
    out = m.output
    for s in m.ts.states:
        g.add_node(s, tag=(s == m.ts.initial, out(s)))
    for src, x, dst in m.ts.transitions:
        if g.has_edge(src, dst):
            g[src][dst]["labels"].add(x)
        else:
            g.add_edge(src, dst, labels={x})
    return g


def isomorphic(m1: Machine, m2: Machine) -> bool:
    """True when a state bijection preserves initial state, outputs and transitions."""
    if type(m1) is not type(m2) or m1.ts.alphabet != m2.ts.alphabet:
        return False
    if len(m1.ts.states) != len(m2.ts.states) or len(m1.ts.transitions) != len(m2.ts.transitions):
        return False
    matcher = DiGraphMatcher(
        _graph(m1), _graph(m2),
        node_match=lambda a, b: a["tag"] == b["tag"],
        edge_match=lambda a, b: a["labels"] == b["labels"],
    )
    return matcher.is_isomorphic()
