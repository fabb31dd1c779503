import itertools
import random

import pytest

from ringlock.core import Transition, find_violations, is_self_disabling
from ringlock.decide import decide
from ringlock.oracle import oracle_scan
from ringlock.protocols import (
    FINGERPRINTS,
    GENERATORS,
    GeneratorMismatch,
    ProtocolSpec,
    certify,
    combine_ring11,
    generate,
    max_self_disabling_size,
    random_transitions,
)

T = Transition


def test_coloring_table():
    assert generate("coloring-det", 3).transitions == {T(0, 0, 1), T(1, 1, 2), T(2, 2, 0)}


def test_agreement_tables():
    assert len(generate("agreement", 3).transitions) == 6
    assert generate("agreement", 2).transitions == {T(0, 1, 0), T(1, 0, 1)}


def test_dijkstra_shape():
    spec = generate("dijkstra", 3)
    assert spec.topology == "ring11"
    assert (len(spec.t0), len(spec.t_other)) == (3, 6)
    assert spec.process_protocol(0) == spec.t0
    assert spec.process_protocol(2) == spec.t_other
    assert spec.size == 9


def test_sum_not_2_tables():
    det = generate("sum-not-2-det").transitions
    assert det == {T(0, 2, 1), T(1, 1, 0), T(2, 0, 1)}
    nondet = generate("sum-not-2-nondet").transitions
    assert len(nondet) == 6
    assert all(t.pred + t.own == 2 and t.written != t.own for t in nondet)


@pytest.mark.parametrize("name", ["sum-not-2-det", "sum-not-2-nondet"])
def test_sum_not_2_fixed_domain(name):
    with pytest.raises(ValueError):
        generate(name, 4)


def test_unknown_name():
    with pytest.raises(KeyError):
        generate("nope")


@pytest.mark.parametrize("name", sorted(n for n in GENERATORS if not n.startswith("sum")))
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_generators_validate(name, m):
    spec = generate(name, m)
    for r in (0, 1):
        table = spec.process_protocol(r)
        assert find_violations(m, list(table)) == []


@pytest.mark.parametrize("key", sorted(FINGERPRINTS))
def test_fingerprints(key):
    verdict = certify(*key)
    assert verdict.livelock == FINGERPRINTS[key][0]


def test_certify_unknown_raises():
    with pytest.raises(KeyError):
        certify("coloring-det", 7)


def test_mismatch_error_type():
    assert issubclass(GeneratorMismatch, AssertionError)


def test_coloring_nondet_certified_only_at_3():
    assert generate("coloring-nondet", 3).certified
    assert not generate("coloring-nondet", 4).certified
    # the all-recolorings table has m(m-1) transitions, all in the kernel
    assert len(decide(generate("coloring-nondet", 4)).kernel) == 12


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_oracle_completeness_direction(name):
    spec = generate(name, 3)
    scan = oracle_scan(spec, 2, 7)
    if scan.any_livelock:
        assert decide(spec).livelock


def test_combine_ring11():
    a = generate("coloring-det", 3)
    b = generate("agreement", 3)
    spec = combine_ring11(a, b)
    assert spec.t0 == a.transitions and spec.t_other == b.transitions
    with pytest.raises(ValueError):
        combine_ring11(a, generate("agreement", 4))


def test_spec_equality_ignores_certified():
    a = ProtocolSpec.symmetric(3, [(0, 0, 1)], certified=True)
    b = ProtocolSpec.symmetric(3, [(0, 0, 1)], certified=False)
    assert a == b


@pytest.mark.parametrize("m", [2, 3])
def test_max_self_disabling_size_brute_force(m):
    # the rule only couples transitions sharing pred; per pred try every subset
    per_pred = [T(0, w, x) for w in range(m) for x in range(m) if w != x]
    best = 0
    for n in range(len(per_pred) + 1):
        for combo in itertools.combinations(per_pred, n):
            if is_self_disabling(combo):
                best = max(best, n)
    assert m * best == max_self_disabling_size(m)


def test_max_self_disabling_values():
    assert [max_self_disabling_size(m) for m in (2, 3, 4)] == [2, 6, 16]


def test_sampler_deterministic_and_valid():
    a = [random_transitions(random.Random(f"s{i}"), 3, 8) for i in range(100)]
    b = [random_transitions(random.Random(f"s{i}"), 3, 8) for i in range(100)]
    assert a == b
    for ts in a:
        assert 1 <= len(ts) <= 6
        assert is_self_disabling(ts)


def test_sampler_reaches_cap():
    sizes = {len(random_transitions(random.Random(i), 2, 8)) for i in range(50)}
    assert sizes == {1, 2}


def test_sampler_empty():
    assert random_transitions(random.Random(0), 3, 0) == frozenset()
