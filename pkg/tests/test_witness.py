import itertools
import logging
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import T2_CYCLE, T3_CYCLE
from ringlock.core import Transition, build_h
from ringlock.decide import decide_symmetric
from ringlock.protocols import generate, random_transitions
from ringlock.witness import (
    SimpleCycle,
    bound_observations,
    enabling_walks,
    enumerate_simple_cycles,
    naive_decide,
    sustained_cycles,
)

T = Transition


def brute_force_cycles(ts):
    """Every ordering of distinct members that closes up, rotated to its least
    member; built from permutations, not from graph search."""
    ts = sorted(ts)
    found = set()
    for n in range(2, len(ts) + 1):
        for perm in itertools.permutations(ts, n):
            if perm[0] != min(perm):
                continue
            if all(perm[(i + 1) % n].own == perm[i].written for i in range(n)):
                found.add(perm)
    return found


class TestEnumeration:
    def test_coloring_single_cycle(self, coloring3):
        cycles = enumerate_simple_cycles(build_h(coloring3.transitions))
        assert len(cycles) == 1 and len(cycles[0]) == 3
        assert cycles[0].transitions[0] == min(T3_CYCLE)

    def test_agreement_against_permutations(self, agreement3):
        got = {c.transitions for c in enumerate_simple_cycles(build_h(agreement3.transitions))}
        assert got == brute_force_cycles(agreement3.transitions)

    @settings(max_examples=150)
    @given(st.integers(0, 10**6))
    def test_random_against_permutations(self, seed):
        rng = random.Random(seed)
        ts = random_transitions(rng, rng.randint(2, 3), 6)
        cycles = enumerate_simple_cycles(build_h(ts))
        assert {c.transitions for c in cycles} == brute_force_cycles(ts)
        assert len(cycles) == len({c.transitions for c in cycles})
        for c in cycles:
            assert 2 <= len(c) <= len(ts)
            assert len(set(c)) == len(c)
            assert all(b.own == a.written for a, b in c.edges)

    def test_max_len_bound(self, agreement3):
        g = build_h(agreement3.transitions)
        assert all(len(c) <= 2 for c in enumerate_simple_cycles(g, 2))
        assert len(enumerate_simple_cycles(g, 2)) < len(enumerate_simple_cycles(g))


class TestEnablingWalks:
    def test_coloring_rotation(self, coloring3):
        (cycle,) = enumerate_simple_cycles(build_h(coloring3.transitions))
        walks = enabling_walks(cycle, coloring3.transitions)
        assert len(walks) == 1
        w = walks[0].witnesses
        i = cycle.transitions.index(w[0])
        assert w == cycle.transitions[i:] + cycle.transitions[:i]

    def test_two_cycle_has_none(self):
        (cycle,) = enumerate_simple_cycles(build_h(T2_CYCLE))
        assert enabling_walks(cycle, T2_CYCLE) == []

    def test_empty_support(self, coloring3):
        (cycle,) = enumerate_simple_cycles(build_h(coloring3.transitions))
        assert enabling_walks(cycle, set()) == []

    def test_limit(self, agreement3):
        cycles = enumerate_simple_cycles(build_h(agreement3.transitions))
        c = max(cycles, key=len)
        assert len(enabling_walks(c, agreement3.transitions, limit=1)) <= 1

    @settings(max_examples=150)
    @given(st.integers(0, 10**6))
    def test_walk_invariants(self, seed):
        rng = random.Random(seed)
        ts = random_transitions(rng, rng.randint(2, 3), 6)
        for c in enumerate_simple_cycles(build_h(ts)):
            for w in enabling_walks(c, ts):
                assert len(w) == len(c)
                assert w.is_closed
                for (ti, tj), tk in zip(c.edges, w.witnesses):
                    assert (tk.own, tk.written) == (ti.pred, tj.pred)


class TestNaive:
    def test_coloring(self, coloring3):
        res = naive_decide(coloring3.transitions)
        assert res.livelock
        assert set(res.witness) == T3_CYCLE

    def test_sum_not_2_det(self):
        assert not naive_decide(generate("sum-not-2-det").transitions).livelock

    def test_two_cycle(self):
        res = naive_decide(T2_CYCLE)
        assert not res.livelock and res.candidates == 1

    def test_empty(self):
        assert not naive_decide([]).livelock

    @pytest.mark.parametrize(
        "name,m",
        [("coloring-det", 3), ("coloring-det", 4), ("agreement", 3), ("agreement", 4),
         ("coloring-nondet", 3), ("sum-not-2-det", 3), ("sum-not-2-nondet", 3)],
    )
    def test_agrees_on_table(self, name, m):
        ts = generate(name, m).transitions
        assert naive_decide(ts).livelock == decide_symmetric(ts).livelock

    @settings(max_examples=300)
    @given(st.integers(0, 10**6))
    def test_agrees_and_contained(self, seed):
        rng = random.Random(seed)
        ts = random_transitions(rng, rng.randint(2, 3), 6)
        res = naive_decide(ts)
        v = decide_symmetric(ts)
        assert res.livelock == v.livelock
        if res.livelock:
            assert set(res.witness) <= v.kernel
            assert res.support <= v.kernel
            assert len(res.witness) <= len(ts)
            for w in res.walks:
                assert len(w) == len(res.witness) and w.is_closed

    def test_bound_logging(self, agreement3, caplog):
        with caplog.at_level(logging.INFO, logger="ringlock.witness"):
            naive_decide(agreement3.transitions, m=3)
        assert "m(m-1)=6" in caplog.text

    def test_bound_observations(self, agreement3):
        res = naive_decide(agreement3.transitions)
        obs = bound_observations(res.alive, 3)
        assert obs["length_bound"] == 6 and obs["max_length"] <= 6
        assert obs["cycles"] == len(res.alive)


def test_sustained_drops_unsupported():
    (c2,) = enumerate_simple_cycles(build_h(T2_CYCLE))
    (c3,) = enumerate_simple_cycles(build_h(T3_CYCLE))
    assert sustained_cycles([c2, c3]) == [c3]
    assert sustained_cycles([]) == []


def test_cycle_str():
    c = SimpleCycle((T(0, 0, 1), T(1, 1, 0)))
    assert str(c) == "(0,0,1) -> (1,1,0)"
    assert c.shadow_pairs == [(0, 1), (1, 0)]


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_deepening_matches_full_enumeration(seed):
    rng = random.Random(seed)
    ts = random_transitions(rng, rng.randint(2, 4), 8)
    full = sustained_cycles(enumerate_simple_cycles(build_h(ts)))
    res = naive_decide(ts)
    assert res.livelock == bool(full)
    assert set(res.alive) <= set(full)


def test_dense_table_settles_on_short_cycles():
    res = naive_decide(generate("agreement", 5).transitions)
    assert res.livelock and len(res.witness) == 2
