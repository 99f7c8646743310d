import random

import pytest
from hypothesis import given, settings

from statekit import (AlphabetMismatchError, DeterminismRequiredError,
                      MalformedMachineError, Recognizer, TransitionSystem,
                      UnknownStateError, accepts, complete, determinize,
                      isomorphic, language_equivalent, minimize, reachable,
                      trim)
from helpers import (PAPER_A, PAPER_B, brute_accepts, brute_language,
                     brute_reachable, myhill_nerode_count, random_recognizer,
                     recognizers, residual, words)


def with_accepting(r, accepting):
    return Recognizer(r.ts, accepting)


class TestConstruction:
    def test_initial_must_be_a_state(self):
        with pytest.raises(MalformedMachineError):
            TransitionSystem("a", ["s"], "t")

    def test_transition_label_must_be_in_alphabet(self):
        with pytest.raises(AlphabetMismatchError):
            TransitionSystem("a", ["s"], "s", [("s", "b", "s")])

    def test_transition_endpoints_must_be_states(self):
        with pytest.raises(UnknownStateError):
            TransitionSystem("a", ["s"], "s", [("s", "a", "t")])

    def test_accepting_subset_of_states(self):
        with pytest.raises(UnknownStateError):
            Recognizer.build("a", ["s"], "s", [], ["t"])

    @pytest.mark.parametrize("bad", ["", "has space", 'q"uote', 3])
    def test_bad_names(self, bad):
        with pytest.raises(MalformedMachineError):
            TransitionSystem("a", [bad], bad)

    def test_duplicate_triples_collapse(self):
        ts = TransitionSystem("a", ["s"], "s", [("s", "a", "s"), ("s", "a", "s")])
        assert len(ts.transitions) == 1


class TestReachable:
    def test_paper_fixtures_fully_reachable(self):
        assert reachable(PAPER_A.ts) == {"A0", "A1", "A2", "A3"}
        assert reachable(PAPER_B.ts) == {"B0", "B1", "B1x", "B2", "B3"}

    def test_isolated_state_excluded(self):
        ts = PAPER_A.ts
        extra = TransitionSystem(ts.alphabet, ts.states | {"Z"}, ts.initial, ts.transitions)
        assert reachable(extra) == {"A0", "A1", "A2", "A3"}

    def test_against_oracle(self):
        rng = random.Random(1)
        for _ in range(200):
            r = random_recognizer(rng)
            assert reachable(r.ts) == brute_reachable(r.ts)


class TestAccepts:
    @pytest.mark.parametrize("machine, word, expected", [
        (PAPER_A, "ab", True),
        (PAPER_B, "ab", True),
        (PAPER_A, "", False),
        (PAPER_B, "ac", False),
        (PAPER_A, "ac", False),
        (PAPER_B, "abc", False),
    ])
    def test_examples(self, machine, word, expected):
        assert accepts(machine, word) is expected
        assert brute_accepts(machine, word) is expected

    def test_symbol_outside_alphabet(self):
        with pytest.raises(AlphabetMismatchError):
            accepts(PAPER_A, "ad")


class TestDeterminize:
    def test_paper_b(self):
        d = determinize(PAPER_B)
        assert d.ts.states == {"{B0}", "{B1,B1x}", "{B2}", "{B3}"}
        assert d.accepting == {"{B2}"}
        assert d.ts.transitions == {
            ("{B0}", "a", "{B1,B1x}"), ("{B1,B1x}", "b", "{B2}"), ("{B1,B1x}", "c", "{B3}")}
        assert brute_language(d, 4) == brute_language(PAPER_B, 4)

    def test_deterministic_input_is_isomorphic_to_reachable_part(self):
        ts = PAPER_A.ts
        junk = Recognizer(TransitionSystem(ts.alphabet, ts.states | {"Z"}, ts.initial,
                                           ts.transitions | {("Z", "a", "A0")}), PAPER_A.accepting)
        assert isomorphic(determinize(junk), trim(junk))

    def test_no_accepting_states_gives_empty_language(self):
        d = determinize(with_accepting(PAPER_B, ()))
        assert brute_language(d, 4) == set()

    @settings(max_examples=150, deadline=None)
    @given(recognizers())
    def test_deterministic_reachable_same_language(self, r):
        d = determinize(r)
        assert d.ts.is_deterministic()
        assert reachable(d.ts) == d.ts.states
        for w in words(r.ts.alphabet, 5):
            assert accepts(d, w) == brute_accepts(r, w)


class TestComplete:
    def test_adds_sink_with_full_outdegree(self):
        c = complete(determinize(PAPER_B))
        assert "__sink" in c.ts.states
        assert len(c.ts.states) == 5
        assert len(c.ts.transitions) == 5 * 3
        assert c.ts.is_complete()
        assert brute_language(c, 4) == brute_language(PAPER_B, 4)

    def test_already_complete_is_unchanged(self):
        c = complete(determinize(PAPER_B))
        assert complete(c) == c

    def test_nondeterministic_rejected(self):
        with pytest.raises(DeterminismRequiredError):
            complete(PAPER_B)

    def test_sink_name_is_fresh(self):
        r = Recognizer.build("ab", ["__sink", "x"], "x", [("x", "a", "__sink")], ["x"])
        c = complete(r)
        assert "__sink'" in c.ts.states and "__sink'" not in c.accepting


class TestMinimize:
    def test_paper_a_has_four_states(self):
        # residual languages of {ab}: {ab}, {b}, {ε}, ∅
        assert myhill_nerode_count(PAPER_A, 4) == 4
        m = minimize(complete(determinize(PAPER_A)))
        assert len(m.ts.states) == 4
        assert m.ts.is_complete()

    def test_dead_branch_merges_with_sink(self):
        m = minimize(PAPER_A)
        assert "{A3,__sink}" in m.ts.states

    def test_paper_a_and_b_minimize_to_isomorphic_machines(self):
        ma = minimize(complete(determinize(PAPER_A)))
        mb = minimize(complete(determinize(PAPER_B)))
        assert isomorphic(ma, mb)

    def test_nondeterministic_rejected(self):
        with pytest.raises(DeterminismRequiredError):
            minimize(PAPER_B)

    @settings(max_examples=150, deadline=None)
    @given(recognizers(max_states=4))
    def test_language_idempotence_minimality(self, r):
        d = complete(determinize(r))
        m = minimize(d)
        for w in words(r.ts.alphabet, 5):
            assert accepts(m, w) == brute_accepts(r, w)
        assert isomorphic(minimize(m), m)
        n = len(d.ts.states)
        residuals = [residual(m, s, n) for s in m.ts.states]
        assert len(set(residuals)) == len(residuals)


class TestLanguageEquivalent:
    def test_paper_pair(self):
        assert language_equivalent(PAPER_A, PAPER_B).equivalent

    def test_reflexive(self):
        assert language_equivalent(PAPER_A, PAPER_A).equivalent

    def test_counterexample(self):
        v = language_equivalent(PAPER_A, with_accepting(PAPER_A, ()))
        assert not v.equivalent
        assert v.counterexample == ("a", "b")

    def test_shortlex_tie_break(self):
        # both "b" and "c" distinguish; "b" wins
        r1 = Recognizer.build("abc", ["s", "t"], "s", [("s", "b", "t"), ("s", "c", "t")], ["t"])
        r2 = Recognizer.build("abc", ["s"], "s", [], [])
        assert language_equivalent(r1, r2).counterexample == ("b",)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            language_equivalent(PAPER_A, Recognizer.build("ab", ["s"], "s"))

    def test_against_enumeration(self):
        rng = random.Random(7)
        for _ in range(300):
            alphabet = "abc"[: rng.randint(1, 3)]
            r1 = random_recognizer(rng, rng.randint(1, 4), alphabet)
            r2 = random_recognizer(rng, rng.randint(1, 4), alphabet)
            v = language_equivalent(r1, r2)
            n = len(complete(determinize(r1)).ts.states) * len(complete(determinize(r2)).ts.states)
            bound = min(n, 7)
            differs = [w for w in words(alphabet, bound) if brute_accepts(r1, w) != brute_accepts(r2, w)]
            if v.equivalent:
                assert not differs
            else:
                w = v.counterexample
                assert brute_accepts(r1, w) != brute_accepts(r2, w)
                if differs:
                    assert w == min(differs, key=lambda u: (len(u), u))
