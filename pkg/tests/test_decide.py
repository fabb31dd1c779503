import random

import pytest
from hypothesis import given, settings

from conftest import T2_CYCLE, T3_CYCLE, lies_on_cycle, self_disabling_sets
from ringlock.core import Transition, build_h, filter_pairs, phi, pl, shad
from ringlock.decide import (
    Decision,
    IterationTrace,
    check_coverage,
    check_invariant_maximality,
    decide,
    decide_ring11,
    decide_symmetric,
    iterate_phi,
)
from ringlock.protocols import generate, random_transitions

T = Transition


class TestSymmetric:
    def test_coloring(self, coloring3):
        v = decide_symmetric(coloring3.transitions)
        assert v.decision is Decision.LIVELOCK
        assert v.kernel == T3_CYCLE

    def test_two_cycle_free_after_one_step(self):
        v = decide_symmetric(T2_CYCLE)
        assert v.decision is Decision.FREE
        assert v.kernel == frozenset()
        assert v.trace.phi_applications == 1
        assert v.trace.free_at == 1

    def test_agreement(self, agreement3):
        v = decide_symmetric(agreement3.transitions)
        assert v.livelock and len(v.kernel) == 6

    def test_empty_protocol(self):
        v = decide_symmetric([])
        assert not v.livelock and v.trace.free_at == 0

    def test_str_decision(self):
        assert str(Decision.FREE) == "FREE"

    def test_rejects_growing_step(self):
        with pytest.raises(AssertionError):
            decide_symmetric(T3_CYCLE, step=lambda s: s | {T(0, 2, 1)})


class TestRing11:
    def test_dijkstra(self, dijkstra3):
        v = decide(dijkstra3)
        assert v.livelock
        assert (len(v.kernel_p0), len(v.kernel)) == (3, 3)
        assert v.topology == "ring11"
        assert set(v.interface_shadows) == {"P_K-1 -> P_0", "P_0 -> P_1", "P_r -> P_r+1"}

    def test_p0_without_cycle(self, agreement3):
        v = decide_ring11({T(0, 1, 2)}, agreement3.transitions)
        assert not v.livelock and "P_0" in v.free_reason
        assert v.kernel == frozenset() and v.kernel_p0 == frozenset()

    def test_others_empty_during_restabilization(self, coloring3):
        v = decide_ring11(coloring3.transitions, T2_CYCLE)
        assert not v.livelock
        # the other processes' set dies inside the first round
        assert len(v.rounds) == 1 and v.rounds[0].p0_after is None

    def test_asymmetric_closure_equations(self, dijkstra3):
        v = decide(dijkstra3)
        l0, lo = v.kernel_p0, v.kernel
        restab = iterate_phi(pl(filter_pairs(lo, shad(l0))))
        assert restab.free_at is None and restab.iterates[-1] == lo
        assert pl(filter_pairs(dijkstra3.t0, shad(lo))) == l0

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_dijkstra_sizes(self, m):
        v = decide(generate("dijkstra", m))
        assert (len(v.kernel_p0), len(v.kernel)) == (m, m)

    def test_monotone_decrease_random(self):
        rng = random.Random(7)
        seen_livelock = 0
        for _ in range(300):
            m = rng.randint(2, 3)
            v = decide_ring11(random_transitions(rng, m, 6), random_transitions(rng, m, 6))
            seen_livelock += v.livelock
            for a, b in zip(v.rounds, v.rounds[1:]):
                assert b.p0_before <= a.p0_before
                assert b.other_trace.iterates[-1] <= a.other_trace.iterates[-1]
            assert v.livelock == bool(v.kernel) == bool(v.kernel_p0)
        assert seen_livelock > 0


class TestMaximality:
    def test_coloring_trace(self, coloring3):
        assert check_invariant_maximality(iterate_phi(coloring3.transitions)).ok

    def test_vacuous_empty_iterate(self):
        assert check_invariant_maximality(iterate_phi(T2_CYCLE)).ok

    def test_corrupted_trace_names_member(self):
        bogus = T(0, 3, 1)  # own value 3 is never written
        trace = IterationTrace((T3_CYCLE | {bogus}, T3_CYCLE | {bogus}))
        rep = check_invariant_maximality(trace)
        assert not rep.ok and rep.violation == (1, bogus)
        assert "(0,3,1)" in str(rep)


class TestCoverage:
    @pytest.mark.parametrize(
        "name,m",
        [("coloring-det", 3), ("coloring-det", 5), ("agreement", 4), ("coloring-nondet", 3), ("sum-not-2-nondet", 3)],
    )
    def test_table_kernels(self, name, m):
        rep = check_coverage(decide(generate(name, m)).kernel)
        assert rep.ok

    def test_reports_unwitnessed(self):
        rep = check_coverage(T2_CYCLE)
        assert len(rep.unwitnessed_edges) == 2 and len(rep.idle) == 2


@settings(max_examples=400)
@given(self_disabling_sets())
def test_trace_laws(drawn):
    _, ts = drawn
    v = decide_symmetric(ts)
    tr = v.trace
    sizes = tr.sizes
    assert tr.phi_applications <= len(ts)
    assert len(tr.iterates) <= len(ts) + 1
    # strictly decreasing except the repeated final iterate
    body = sizes[:-1] if v.livelock else sizes
    assert all(a > b for a, b in zip(body, body[1:]))
    assert check_invariant_maximality(tr).ok
    assert v.livelock == bool(v.kernel)
    if v.livelock:
        assert phi(v.kernel) == v.kernel
    else:
        assert any(not pl(s) for s in tr.iterates)


@settings(max_examples=300)
@given(self_disabling_sets())
def test_kernel_membership_witnessed(drawn):
    # the half of the witness condition that holds on every kernel
    _, ts = drawn
    v = decide_symmetric(ts)
    if v.livelock:
        assert check_coverage(v.kernel).every_member_witnesses
        assert all(lies_on_cycle(t, v.kernel) for t in v.kernel)


def test_kernel_is_greatest_fixed_point_brute_force():
    # every subset S with phi(S) = S and S nonempty lies inside the kernel
    rng = random.Random(3)
    for _ in range(60):
        ts = sorted(random_transitions(rng, 3, 6))
        kernel = decide_symmetric(ts).kernel
        for mask in range(1, 1 << len(ts)):
            s = frozenset(t for i, t in enumerate(ts) if mask >> i & 1)
            if phi(s) == s:
                assert s <= kernel


def test_h_graph_unchanged_by_decide(coloring3):
    before = build_h(coloring3.transitions).edges
    decide(coloring3)
    assert build_h(coloring3.transitions).edges == before
