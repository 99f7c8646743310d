"""
General product of Moore machines, and button-press experiments.

Each component of a product is driven by a connection function that sees the
global input and the current tuple of component outputs, and returns either
a symbol for that component or :data:`IDLE`.  Because outputs depend on state
only, the connections never feed back on themselves within a step.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Sequence

from .core import (AutomataError, MalformedMachineError,
                   MooreMachine, OutputKind, OutputKindMismatchError,
                   TransitionSystem, _check_word)


class ConnectionRangeError(AutomataError):
    pass


class _Idle:
    def __repr__(self):
        return "IDLE"


IDLE = _Idle()

Connection = Callable[[str, tuple], object]


@dataclass(frozen=True)
class ProductSpec:
    components: tuple
    global_alphabet: frozenset
    connections: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "global_alphabet", frozenset(self.global_alphabet))
        object.__setattr__(self, "connections", tuple(self.connections))
        if not self.components:
            raise MalformedMachineError("a product needs at least one component")
        if len(self.connections) != len(self.components):
            raise MalformedMachineError("need exactly one connection function per component")


def tuple_name(states: Sequence[str]) -> str:
    return "(" + ",".join(states) + ")"


@dataclass(frozen=True)
class ProductGraph:
    """Reachable part of a product, keyed by component-state tuples."""

    spec: ProductSpec
    states: tuple        # reachable tuples, in discovery order
    edges: frozenset     # (tuple, global symbol, tuple)
    blocked: frozenset   # (tuple, global symbol): some directed component cannot move

    def outputs(self, tup) -> tuple:
        return tuple(m.output(s) for m, s in zip(self.spec.components, tup))

    def to_moore(self) -> MooreMachine:
        names = {t: tuple_name(t) for t in self.states}
        if len(set(names.values())) != len(names):
            raise MalformedMachineError("component state names collide in product tuple names")
        ts = TransitionSystem(
            self.spec.global_alphabet,
            set(names.values()),
            names[self.states[0]],
            {(names[p], g, names[q]) for p, g, q in self.edges},
        )
        return MooreMachine(ts, {names[t]: self.outputs(t) for t in self.states}, OutputKind.TOKEN)


def explore_product(spec: ProductSpec) -> ProductGraph:
    comps = spec.components
    start = tuple(m.ts.initial for m in comps)
    order = [start]
    seen = {start}
    edges = set()
    blocked = set()
    queue = deque([start])
    while queue:
        tup = queue.popleft()
        outs = tuple(m.output(s) for m, s in zip(comps, tup))
        for g in sorted(spec.global_alphabet):
            choices = []
            for m, phi, s in zip(comps, spec.connections, tup):
                x = phi(g, outs)
                if x is IDLE:
                    choices.append((s,))
                    continue
                if x not in m.ts.alphabet:
                    raise ConnectionRangeError(
                        f"connection produced {x!r}, not in component alphabet {sorted(m.ts.alphabet)}")
                succ = m.ts.successors(s, x)
                if not succ:
                    break
                choices.append(sorted(succ))
            else:
                for nxt in cartesian(*choices):
                    edges.add((tup, g, nxt))
                    if nxt not in seen:
                        seen.add(nxt)
                        order.append(nxt)
                        queue.append(nxt)
                continue
            blocked.add((tup, g))
    return ProductGraph(spec, tuple(order), frozenset(edges), frozenset(blocked))


def general_product(spec: ProductSpec) -> MooreMachine:
    """Product machine over reachable tuples; outputs are tuples of the
    component outputs.  A component directed to a symbol it cannot take
    blocks the whole global transition."""
    return explore_product(spec).to_moore()


def passthrough(g, outputs):
    return g


def sync_spec(components: Sequence[MooreMachine]) -> ProductSpec:
    """Label-synchronised wiring: every component whose alphabet has the
    global symbol takes it, the rest idle."""
    alphabet = frozenset().union(*(m.ts.alphabet for m in components))

    def wire(local):
        return lambda g, outs: g if g in local else IDLE

    return ProductSpec(components, alphabet, [wire(m.ts.alphabet) for m in components])


@dataclass(frozen=True, order=True)
class Outcome:
    # Success sorts before every Blocked(k)
    _rank: int
    presses_completed: int

    def __str__(self):
        return "Success" if self._rank == 0 else f"Blocked({self.presses_completed})"

    __repr__ = __str__

    @property
    def success(self) -> bool:
        return self._rank == 0


def Blocked(presses_completed: int) -> Outcome:
    return Outcome(1, presses_completed)


SUCCESS = Outcome(0, -1)


def _require_set_outputs(process: MooreMachine) -> None:
    if not isinstance(process, MooreMachine) or process.kind is not OutputKind.SET:
        kind = getattr(getattr(process, "kind", None), "value", type(process).__name__)
        raise OutputKindMismatchError(f"experiments need set-valued outputs, got {kind}")


def experiment(process: MooreMachine, presses: Sequence[str]) -> frozenset:
    """Press the buttons in order, following every nondeterministic branch.

    A press of ``x`` goes through when ``x`` is in the state's output (and the
    machine can actually move on ``x``); otherwise that run ends as
    ``Blocked(k)`` after ``k`` successful presses.
    """
    _require_set_outputs(process)
    presses = tuple(presses)
    _check_word(process.ts.alphabet, presses)
    outcomes = set()
    start = (process.ts.initial, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        s, k = queue.popleft()
        if k == len(presses):
            outcomes.add(SUCCESS)
            continue
        x = presses[k]
        succ = process.ts.successors(s, x) if x in process.output(s) else ()
        if not succ:
            outcomes.add(Blocked(k))
            continue
        for t in succ:
            if (t, k + 1) not in seen:
                seen.add((t, k + 1))
                queue.append((t, k + 1))
    return frozenset(outcomes)


def make_experimenter(presses: Sequence[str], alphabet) -> MooreMachine:
    presses = tuple(presses)
    alphabet = frozenset(alphabet)
    _check_word(alphabet, presses)
    k = len(presses)
    states = [f"e{i}" for i in range(k + 1)]
    outputs = {states[i]: frozenset(presses[i:i + 1]) for i in range(k + 1)}
    transitions = {(states[i], presses[i], states[i + 1]) for i in range(k)}
    return MooreMachine(TransitionSystem(alphabet, states, states[0], transitions), outputs,
                        OutputKind.SET)


PRESS = "press"


def experimenter_spec(process: MooreMachine, presses: Sequence[str]) -> ProductSpec:
    """Wire ``process`` to an experimenter for ``presses``.

    The product has a single global input, ``press``; on it both components
    are driven by the button the experimenter currently wants, and both idle
    once the word is used up.
    """
    _require_set_outputs(process)
    experimenter = make_experimenter(presses, process.ts.alphabet)

    def wanted(g, outs):
        return next(iter(outs[1]), IDLE)

    return ProductSpec((process, experimenter), {PRESS}, (wanted, wanted))


def experiment_via_product(process: MooreMachine, presses: Sequence[str]) -> frozenset:
    """Outcome set read off the reachable states of the experimenter product."""
    presses = tuple(presses)
    graph = explore_product(experimenter_spec(process, presses))
    outcomes = set()
    for tup in graph.states:
        k = int(tup[1][1:])
        if k == len(presses):
            outcomes.add(SUCCESS)
        elif (tup, PRESS) in graph.blocked:
            outcomes.add(Blocked(k))
    return frozenset(outcomes)
