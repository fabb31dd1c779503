"""Protocol specifications and generators for the benchmark protocols.

Only the deterministic coloring, agreement and Dijkstra tables follow from
their textbook definitions.  The sum-not-2 tables and non-deterministic
coloring are reconstructions; each generator is checked against its
reference kernel fingerprint in :data:`FINGERPRINTS` before it is trusted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import Transition, canonical, is_self_disabling, validate_protocol

SYMMETRIC = "symmetric"
RING11 = "ring11"


@dataclass(frozen=True)
class ProtocolSpec:
    m: int
    topology: str
    transitions: frozenset = frozenset()
    t0: frozenset = frozenset()
    t_other: frozenset = frozenset()
    name: str = ""
    certified: bool = field(default=True, compare=False)

    @classmethod
    def symmetric(cls, m, triples, name="", certified=True):
        return cls(m, SYMMETRIC, validate_protocol(m, triples), name=name, certified=certified)

    @classmethod
    def ring11(cls, m, t0, t_other, name="", certified=True):
        return cls(
            m,
            RING11,
            t0=validate_protocol(m, t0),
            t_other=validate_protocol(m, t_other),
            name=name,
            certified=certified,
        )

    def process_protocol(self, r: int) -> frozenset:
        """Transition set run by process ``r``."""
        if self.topology == SYMMETRIC:
            return self.transitions
        return self.t0 if r == 0 else self.t_other

    @property
    def size(self) -> int:
        if self.topology == SYMMETRIC:
            return len(self.transitions)
        return len(self.t0) + len(self.t_other)


def combine_ring11(p0: ProtocolSpec, other: ProtocolSpec, name="") -> ProtocolSpec:
    """Build a (1,1) ring from two symmetric specs; their domains must agree."""
    if p0.m != other.m:
        raise ValueError(f"domain mismatch: P_0 uses m={p0.m}, others use m={other.m}")
    return ProtocolSpec.ring11(p0.m, p0.transitions, other.transitions, name=name)


def _need_m(m, low=2):
    if not isinstance(m, int) or m < low:
        raise ValueError(f"m must be an integer >= {low}, got {m!r}")


def coloring_det_table(m):
    return [(v, v, (v + 1) % m) for v in range(m)]


def agreement_table(m):
    return [(v, w, v) for v in range(m) for w in range(m) if v != w]


def gen_coloring_det(m=3) -> ProtocolSpec:
    _need_m(m)
    return ProtocolSpec.symmetric(m, coloring_det_table(m), name="coloring-det")


def gen_coloring_nondet(m=3) -> ProtocolSpec:
    # every recoloring of a clash; matches the reference kernel size only at m=3
    _need_m(m)
    table = [(v, v, w) for v in range(m) for w in range(m) if w != v]
    return ProtocolSpec.symmetric(m, table, name="coloring-nondet", certified=m == 3)


def gen_agreement(m=3) -> ProtocolSpec:
    _need_m(m)
    return ProtocolSpec.symmetric(m, agreement_table(m), name="agreement")


def gen_dijkstra(m=3) -> ProtocolSpec:
    _need_m(m)
    return ProtocolSpec.ring11(m, coloring_det_table(m), agreement_table(m), name="dijkstra")


def _sum_not_2_m(m):
    if m != 3:
        raise ValueError(f"sum-not-2 protocols are defined for m=3 only, got m={m!r}")


def gen_sum_not_2_det(m=3) -> ProtocolSpec:
    _sum_not_2_m(m)
    return ProtocolSpec.symmetric(3, [(0, 2, 1), (1, 1, 0), (2, 0, 1)], name="sum-not-2-det")


def gen_sum_not_2_nondet(m=3) -> ProtocolSpec:
    _sum_not_2_m(m)
    table = [
        (v, w, x)
        for v in range(3)
        for w in range(3)
        for x in range(3)
        if v + w == 2 and x != w
    ]
    assert is_self_disabling(Transition(*t) for t in table)
    return ProtocolSpec.symmetric(3, table, name="sum-not-2-nondet")


GENERATORS = {
    "coloring-det": gen_coloring_det,
    "coloring-nondet": gen_coloring_nondet,
    "agreement": gen_agreement,
    "sum-not-2-det": gen_sum_not_2_det,
    "sum-not-2-nondet": gen_sum_not_2_nondet,
    "dijkstra": gen_dijkstra,
}


def generate(name: str, m: int = 3) -> ProtocolSpec:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise KeyError(f"unknown protocol {name!r}; known: {', '.join(GENERATORS)}") from None
    return gen(m)


# (name, m) -> (livelock expected, kernel sizes); ring11 sizes are (P_0, others)
FINGERPRINTS = {
    ("coloring-det", 3): (True, (3,)),
    ("coloring-det", 4): (True, (4,)),
    ("coloring-det", 5): (True, (5,)),
    ("agreement", 3): (True, (6,)),
    ("agreement", 4): (True, (12,)),
    ("agreement", 5): (True, (20,)),
    ("sum-not-2-det", 3): (False, (0,)),
    ("sum-not-2-nondet", 3): (True, (6,)),
    ("coloring-nondet", 3): (True, (6,)),
    ("dijkstra", 3): (True, (3, 3)),
}


class GeneratorMismatch(AssertionError):
    pass


def kernel_fingerprint(verdict) -> tuple[bool, tuple[int, ...]]:
    if verdict.kernel_p0 is None:
        return verdict.livelock, (len(verdict.kernel),)
    return verdict.livelock, (len(verdict.kernel_p0), len(verdict.kernel))


def certify(name: str, m: int = 3):
    """Decide the generated protocol and compare with its reference fingerprint.

    Returns the verdict; raises :class:`GeneratorMismatch` on disagreement and
    ``KeyError`` if no fingerprint is recorded for ``(name, m)``.
    """
    from .decide import decide

    expected = FINGERPRINTS[(name, m)]
    verdict = decide(generate(name, m))
    got = kernel_fingerprint(verdict)
    if got != expected:
        raise GeneratorMismatch(f"{name} m={m}: expected {expected}, got {got}")
    return verdict


def max_self_disabling_size(m: int) -> int:
    """Largest self-disabling transition set over ``Z_m``.

    Per predecessor value the own values ``A`` and written values must be
    disjoint, giving at most ``|A| * (m - |A|)`` transitions.
    """
    return m * (m * m // 4)


def random_transitions(rng: random.Random, m: int, tmax: int) -> frozenset:
    """Seeded sampler used by the fuzzer and the property suites.

    Draws a target size uniformly from ``[1, tmax]`` (capped at
    :func:`max_self_disabling_size`), then adds uniformly drawn triples,
    rejecting any that would break the self-disabling rule.  If no triple can
    still be added the draw restarts.
    """
    if tmax <= 0:
        return frozenset()
    target = min(rng.randint(1, tmax), max_self_disabling_size(m))
    universe = [Transition(v, w, x) for v in range(m) for w in range(m) for x in range(m) if x != w]
    while True:
        chosen: set[Transition] = set()
        while len(chosen) < target:
            cand = rng.choice(universe)
            if cand in chosen:
                continue
            if is_self_disabling(chosen | {cand}):
                chosen.add(cand)
            elif not any(
                u not in chosen and is_self_disabling(chosen | {u}) for u in universe
            ):
                break
        if len(chosen) == target:
            return frozenset(canonical(chosen))


def random_spec(rng: random.Random, m: int, tmax: int, name="random") -> ProtocolSpec:
    ts = random_transitions(rng, m, tmax)
    return ProtocolSpec.symmetric(m, canonical(ts), name=name)
