"""
Behavioural equivalences between observed systems.

Recognizers are compared through their accept bit and Moore machines through
their outputs (see :func:`statekit.encode.observe`).  The hierarchy is

    bisimilar  =>  covering equivalent  =>  language equivalent

and both implications are strict in general.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (MooreMachine, OutputKindMismatchError, Recognizer,
                   TransitionSystem, _check_same_alphabet, subset_name)
from .encode import observe


def _observe_pair(a, b) -> tuple[MooreMachine, MooreMachine]:
    a, b = observe(a), observe(b)
    _check_same_alphabet(a.ts, b.ts)
    if a.kind is not b.kind:
        raise OutputKindMismatchError(
            f"cannot compare {a.kind.value}-valued outputs with {b.kind.value}-valued outputs")
    return a, b


@dataclass(frozen=True)
class SimulationWitness:
    """Pairs ``(s, t)`` meaning state ``t`` of the second system can do
    everything state ``s`` of the first does, with equal outputs throughout."""

    relation: frozenset

    def __contains__(self, pair):
        return pair in self.relation

    def partners(self, s) -> set:
        return {t for (p, t) in self.relation if p == s}


def greatest_simulation(a, b) -> SimulationWitness:
    a, b = _observe_pair(a, b)
    relation = {(s, t) for s in a.ts.states for t in b.ts.states if a.output(s) == b.output(t)}
    symbols = a.ts.sorted_alphabet()

    def matched(s, t):
        for x in symbols:
            for s2 in a.ts.successors(s, x):
                if not any((s2, t2) in relation for t2 in b.ts.successors(t, x)):
                    return False
        return True

    changed = True
    while changed:
        changed = False
        for pair in sorted(relation):
            if not matched(*pair):
                relation.discard(pair)
                changed = True
    return SimulationWitness(frozenset(relation))


@dataclass(frozen=True)
class CoverVerdict:
    covers: bool
    witness: SimulationWitness
    stuck_state: str | None = None

    def __bool__(self):
        return self.covers


def _bfs_order(ts: TransitionSystem) -> list:
    order = [ts.initial]
    seen = {ts.initial}
    for s in order:
        for x in ts.sorted_alphabet():
            for t in sorted(ts.successors(s, x)):
                if t not in seen:
                    seen.add(t)
                    order.append(t)
    return order


def covers(b, a) -> CoverVerdict:
    """Does ``b`` cover ``a``?  Rooted: the initial state of ``a`` must be
    simulated by the initial state of ``b``.

    On failure ``stuck_state`` is a reachable state of ``a`` that no state of
    ``b`` can stand in for.  Preference goes to such a state whose own
    successors all have partners, which is where the mismatch originates;
    otherwise the initial state of ``a`` is reported.
    """
    a_obs, b_obs = _observe_pair(a, b)
    witness = greatest_simulation(a_obs, b_obs)
    if (a_obs.ts.initial, b_obs.ts.initial) in witness:
        return CoverVerdict(True, witness)

    partnered = {s for (s, _) in witness.relation}
    ts = a_obs.ts
    order = _bfs_order(ts)
    stuck = ts.initial
    for s in order:
        if s in partnered:
            continue
        succs = {t for x in ts.alphabet for t in ts.successors(s, x)}
        if succs <= partnered:
            stuck = s
            break
    return CoverVerdict(False, witness, stuck)


def covering_equivalent(a, b) -> bool:
    return covers(a, b).covers and covers(b, a).covers


@dataclass(frozen=True)
class BisimulationPartition:
    """Blocks over the disjoint union; a state is tagged ``(0, s)`` for the
    first system and ``(1, s)`` for the second."""

    blocks: tuple

    def block_of(self, tagged) -> int:
        for i, block in enumerate(self.blocks):
            if tagged in block:
                return i
        raise KeyError(tagged)

    def same_block(self, p, q) -> bool:
        return self.block_of(p) == self.block_of(q)


@dataclass(frozen=True)
class BisimVerdict:
    bisimilar: bool
    partition: BisimulationPartition

    def __bool__(self):
        return self.bisimilar


def _refine(states, output, successors, symbols) -> list:
    """Kanellakis-Smolka splitting: start from output classes and split a
    block whenever its members reach different sets of blocks on a symbol."""
    classes: dict = {}
    for s in sorted(states):
        classes.setdefault(output(s), []).append(s)
    partition = [frozenset(b) for b in classes.values()]

    changed = True
    while changed:
        changed = False
        block_of = {s: i for i, b in enumerate(partition) for s in b}
        for i, block in enumerate(partition):
            for x in symbols:
                groups: dict = {}
                for s in sorted(block):
                    key = frozenset(block_of[t] for t in successors(s, x))
                    groups.setdefault(key, set()).add(s)
                if len(groups) > 1:
                    partition[i:i + 1] = [frozenset(g) for g in groups.values()]
                    changed = True
                    break
            if changed:
                break
    return partition


def bisimilar(a, b) -> BisimVerdict:
    a, b = _observe_pair(a, b)
    systems = (a, b)
    states = [(i, s) for i, m in enumerate(systems) for s in m.ts.states]

    def output(tagged):
        i, s = tagged
        return systems[i].output(s)

    def successors(tagged, x):
        i, s = tagged
        return [(i, t) for t in systems[i].ts.successors(s, x)]

    blocks = _refine(states, output, successors, a.ts.sorted_alphabet())
    partition = BisimulationPartition(tuple(sorted(blocks, key=lambda b: min(b))))
    return BisimVerdict(partition.same_block((0, a.ts.initial), (1, b.ts.initial)), partition)


def quotient(m):
    """Collapse bisimilar states.  Recognizers come back as recognizers,
    Moore machines as Moore machines; block names list their members."""
    obs = observe(m)
    ts = obs.ts
    blocks = _refine(ts.states, obs.output, ts.successors, ts.sorted_alphabet())
    name = {s: subset_name(b) for b in blocks for s in b}
    lifted = TransitionSystem(
        ts.alphabet,
        set(name.values()),
        name[ts.initial],
        {(name[s], x, name[t]) for s, x, t in ts.transitions},
    )
    if isinstance(m, Recognizer):
        return Recognizer(lifted, {name[s] for s in m.accepting})
    return MooreMachine(lifted, {name[s]: obs.output(s) for s in ts.states}, obs.kind)
