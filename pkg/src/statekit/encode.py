"""Moore-machine views of recognizers and bare transition systems."""
from __future__ import annotations

from .core import (MooreMachine, OutputKind, Recognizer, TransitionSystem,
                   UnknownStateError)


def enabled_actions(ts: TransitionSystem, state: str) -> frozenset:
    """The symbols with at least one transition out of ``state``: the
    buttons that are unlocked there."""
    if state not in ts.states:
        raise UnknownStateError(f"unknown state {state!r}")
    return ts.out_labels(state)


def lts_to_moore(ts: TransitionSystem) -> MooreMachine:
    return MooreMachine(ts, {s: enabled_actions(ts, s) for s in ts.states}, OutputKind.SET)


def recognizer_to_moore(r: Recognizer) -> MooreMachine:
    return MooreMachine(r.ts, {s: s in r.accepting for s in r.ts.states}, OutputKind.BOOL)


def observe(m) -> MooreMachine:
    """Uniform output view used by the equivalence checks: recognizers are
    read through their accept bit, Moore machines through their outputs."""
    if isinstance(m, Recognizer):
        return recognizer_to_moore(m)
    if isinstance(m, MooreMachine):
        return m
    raise TypeError(f"expected a Recognizer or MooreMachine, got {type(m).__name__}")
