"""Shared fixtures, random machine generators and brute-force oracles.

The oracles here deliberately avoid the library's algorithms: they enumerate
runs and words directly, or iterate naive fixpoints over explicit pairs.
"""
import itertools
from pathlib import Path

from statekit import MooreMachine, OutputKind, Recognizer, TransitionSystem

DATA = Path(__file__).parent / "data"

PAPER_A = Recognizer.build(
    "abc", ["A0", "A1", "A2", "A3"], "A0",
    [("A0", "a", "A1"), ("A1", "b", "A2"), ("A1", "c", "A3")],
    ["A2"],
)
PAPER_B = Recognizer.build(
    "abc", ["B0", "B1", "B1x", "B2", "B3"], "B0",
    [("B0", "a", "B1"), ("B0", "a", "B1x"), ("B1", "b", "B2"), ("B1x", "c", "B3")],
    ["B2"],
)
SIM_EQ_1 = Recognizer.build(
    "ab", ["s0", "s1", "s2", "s3"], "s0",
    [("s0", "a", "s1"), ("s1", "b", "s2"), ("s0", "a", "s3")],
)
SIM_EQ_2 = Recognizer.build(
    "ab", ["t0", "t1", "t2"], "t0",
    [("t0", "a", "t1"), ("t1", "b", "t2")],
)

FIXTURES = {"A": PAPER_A, "B": PAPER_B, "SIM_EQ_1": SIM_EQ_1, "SIM_EQ_2": SIM_EQ_2}


# -- random machines ---------------------------------------------------------

def random_recognizer(rng, n_states=None, symbols=None, density=None, prefix="q"):
    n = n_states or rng.randint(1, 5)
    alphabet = symbols or "abc"[: rng.randint(1, 3)]
    density = rng.uniform(0.1, 0.6) if density is None else density
    states = [f"{prefix}{i}" for i in range(n)]
    transitions = [(s, x, t) for s in states for x in alphabet for t in states
                   if rng.random() < density / max(1, n - 2)]
    accepting = [s for s in states if rng.random() < 0.4]
    return Recognizer.build(alphabet, states, states[0], transitions, accepting)


def random_pair(rng, max_states=5):
    alphabet = "abc"[: rng.randint(1, 3)]
    return (random_recognizer(rng, rng.randint(1, max_states), alphabet, prefix="p"),
            random_recognizer(rng, rng.randint(1, max_states), alphabet, prefix="q"))


def random_complete_dfa(rng, n_states, alphabet, prefix="d"):
    states = [f"{prefix}{i}" for i in range(n_states)]
    transitions = [(s, x, rng.choice(states)) for s in states for x in alphabet]
    accepting = [s for s in states if rng.random() < 0.5]
    r = Recognizer.build(alphabet, states, states[0], transitions, accepting)
    keep = brute_reachable(r.ts)
    return Recognizer.build(alphabet, keep, states[0],
                            [t for t in transitions if t[0] in keep],
                            [s for s in accepting if s in keep])


def random_moore_process(rng, n_states=None, alphabet="abc"):
    """Random LTS with enabled-action outputs."""
    r = random_recognizer(rng, n_states, alphabet)
    outputs = {s: frozenset(x for (p, x, _) in r.ts.transitions if p == s) for s in r.ts.states}
    return MooreMachine(r.ts, outputs, OutputKind.SET)


# -- oracles -----------------------------------------------------------------

def brute_reachable(ts: TransitionSystem):
    seen = {ts.initial}
    changed = True
    while changed:
        changed = False
        for s, _, t in ts.transitions:
            if s in seen and t not in seen:
                seen.add(t)
                changed = True
    return seen


def brute_accepts(r: Recognizer, word) -> bool:
    """Depth-first enumeration of every run."""
    def run(state, i):
        if i == len(word):
            return state in r.accepting
        return any(run(t, i + 1) for (s, x, t) in r.ts.transitions if s == state and x == word[i])
    return run(r.ts.initial, 0)


def words(alphabet, max_len):
    symbols = sorted(alphabet)
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


def brute_language(r: Recognizer, max_len):
    return {w for w in words(r.ts.alphabet, max_len) if brute_accepts(r, w)}


def residual(r: Recognizer, state, max_len):
    shifted = Recognizer(TransitionSystem(r.ts.alphabet, r.ts.states, state, r.ts.transitions),
                         r.accepting)
    return frozenset(brute_language(shifted, max_len))


def myhill_nerode_count(r: Recognizer, max_len):
    """Number of distinct residual languages u^-1 L over prefixes u up to max_len,
    including the empty residual."""
    lang = brute_language(r, 2 * max_len)
    classes = set()
    for u in words(r.ts.alphabet, max_len):
        classes.add(frozenset(v for v in words(r.ts.alphabet, max_len) if u + v in lang))
    return len(classes)


def _out(m, s):
    return s in m.accepting if isinstance(m, Recognizer) else m.outputs[s]


def _moves(m, s):
    return [(x, t) for (p, x, t) in m.ts.transitions if p == s]


def naive_simulation(a, b):
    """Layered greatest fixpoint: S_{k+1} keeps pairs whose moves are matched in S_k."""
    current = {(s, t) for s in a.ts.states for t in b.ts.states if _out(a, s) == _out(b, t)}
    while True:
        nxt = {(s, t) for (s, t) in current
               if all(any(y == x and (s2, t2) in current for (y, t2) in _moves(b, t))
                      for (x, s2) in _moves(a, s))}
        if nxt == current:
            return current
        current = nxt


def naive_bisimilar(a, b) -> bool:
    """Greatest bisimulation on the disjoint union by deleting violating pairs
    in both directions."""
    states = [(0, s) for s in a.ts.states] + [(1, s) for s in b.ts.states]
    sys = (a, b)
    out = {p: _out(sys[p[0]], p[1]) for p in states}
    moves = {p: [(x, (p[0], t)) for (x, t) in _moves(sys[p[0]], p[1])] for p in states}
    rel = {(p, q) for p in states for q in states if out[p] == out[q]}

    def half(p, q):
        return all(any(y == x and (p2, q2) in rel for (y, q2) in moves[q]) for (x, p2) in moves[p])

    changed = True
    while changed:
        changed = False
        for pair in list(rel):
            p, q = pair
            if not (half(p, q) and half(q, p)):
                rel.discard(pair)
                changed = True
    return ((0, a.ts.initial), (1, b.ts.initial)) in rel


def check_simulation_witness(a, b, relation):
    for s, t in relation:
        assert _out(a, s) == _out(b, t), (s, t)
        for x, s2 in _moves(a, s):
            assert any(y == x and (s2, t2) in relation for (y, t2) in _moves(b, t)), (s, t, x)


def check_partition(a, b, blocks):
    sys = (a, b)
    all_states = {(0, s) for s in a.ts.states} | {(1, s) for s in b.ts.states}
    flat = [p for blk in blocks for p in blk]
    assert len(flat) == len(set(flat)) and set(flat) == all_states
    block_of = {p: i for i, blk in enumerate(blocks) for p in blk}
    for blk in blocks:
        outs = {_out(sys[side], s) for side, s in blk}
        assert len(outs) == 1
        for p in blk:
            for q in blk:
                for x, p2 in _moves(sys[p[0]], p[1]):
                    target = block_of[(p[0], p2)]
                    assert any(y == x and block_of[(q[0], q2)] == target
                               for (y, q2) in _moves(sys[q[0]], q[1])), (p, q, x)


# -- hypothesis strategies ---------------------------------------------------

from hypothesis import strategies as st  # noqa: E402


@st.composite
def recognizers(draw, max_states=5, alphabet=None, prefix="q"):
    n = draw(st.integers(1, max_states))
    symbols = alphabet or "abc"[: draw(st.integers(1, 3))]
    states = [f"{prefix}{i}" for i in range(n)]
    triples = [(s, x, t) for s in states for x in symbols for t in states]
    transitions = draw(st.sets(st.sampled_from(triples), max_size=2 * n * len(symbols)))
    accepting = draw(st.sets(st.sampled_from(states)))
    return Recognizer.build(symbols, states, states[0], transitions, accepting)
