"""Kernel decision procedures for symmetric and (1,1)-asymmetric rings.

The symmetric procedure iterates ``phi`` from the full protocol down to its
greatest fixed point; the ring is livelock-free for every size iff that
kernel is empty.  The (1,1) procedure runs a joint fixed point over the
distinguished process ``P_0`` and the uniform remainder of the ring.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .core import Transition, build_h, canonical, filter_pairs, phi, pl, shad, shadow_witnesses


class Decision(str, enum.Enum):
    FREE = "FREE"
    LIVELOCK = "LIVELOCK"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class IterationTrace:
    """Iterates ``L0, L1 = phi(L0), ...`` of one kernel computation.

    On a livelock the last two iterates are equal.  ``free_at`` is the index
    of the iterate whose cycle part was empty, which is the certificate that
    no process can keep firing.
    """

    iterates: tuple[frozenset, ...]
    free_at: int | None = None

    @property
    def phi_applications(self) -> int:
        return len(self.iterates) - 1

    @property
    def removed_per_step(self) -> list[frozenset]:
        return [a - b for a, b in zip(self.iterates, self.iterates[1:])]

    @property
    def sizes(self) -> list[int]:
        return [len(s) for s in self.iterates]


@dataclass(frozen=True)
class Ring11Round:
    p0_before: frozenset
    other_trace: IterationTrace
    p0_after: frozenset | None


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    kernel: frozenset
    trace: IterationTrace | None = None
    kernel_p0: frozenset | None = None
    rounds: tuple[Ring11Round, ...] = ()
    free_reason: str | None = None
    interface_shadows: dict[str, frozenset] = field(default_factory=dict)

    @property
    def livelock(self) -> bool:
        return self.decision is Decision.LIVELOCK

    @property
    def topology(self) -> str:
        return "symmetric" if self.kernel_p0 is None else "ring11"


PhiFn = Callable[[frozenset], frozenset]


def iterate_phi(start: Iterable[Transition], step: PhiFn = phi) -> IterationTrace:
    """Run the kernel iteration from ``start`` until a fixed point or until
    the cycle part of the current iterate is empty."""
    s = frozenset(start)
    iterates = [s]
    while True:
        if not pl(s):
            return IterationTrace(tuple(iterates), free_at=len(iterates) - 1)
        nxt = step(s)
        iterates.append(nxt)
        if nxt == s:
            return IterationTrace(tuple(iterates))
        if not nxt <= s:
            raise AssertionError("phi step grew its argument")
        s = nxt


def decide_symmetric(ts: Iterable[Transition], step: PhiFn = phi) -> Verdict:
    ts = frozenset(ts)
    trace = iterate_phi(ts, step)
    if trace.free_at is not None:
        return Verdict(Decision.FREE, frozenset(), trace, free_reason=f"empty cycle part at iterate {trace.free_at}")
    kernel = trace.iterates[-1]
    return Verdict(Decision.LIVELOCK, kernel, trace)


def decide_ring11(t0: Iterable[Transition], t_other: Iterable[Transition], step: PhiFn = phi) -> Verdict:
    """Joint fixed point over ``(L_0, L_other)`` for a ring where ``P_0`` runs
    ``t0`` and every other process runs ``t_other``."""
    t0 = frozenset(t0)
    t_other = frozenset(t_other)
    l0 = pl(t0)
    l_other = pl(t_other)

    def free(reason, rounds=()):
        return Verdict(Decision.FREE, frozenset(), None, frozenset(), tuple(rounds), reason)

    if not l0:
        return free("P_0 has no pseudolivelock")
    if not l_other:
        return free("P_1..P_K-1 have no pseudolivelock")

    rounds = []
    while True:
        # warm start: the inner iteration begins at the constrained set, not at t_other
        inner = iterate_phi(pl(filter_pairs(l_other, shad(l0))), step)
        if inner.free_at is not None:
            rounds.append(Ring11Round(l0, inner, None))
            return free(f"P_1..P_K-1 kernel empty in round {len(rounds)}", rounds)
        if not inner.iterates[-1] <= l_other:
            raise AssertionError("other-process kernel grew across rounds")
        l_other = inner.iterates[-1]

        l0_next = pl(filter_pairs(t0, shad(l_other)))
        rounds.append(Ring11Round(l0, inner, l0_next))
        if not l0_next:
            return free(f"P_0 kernel empty after ring closure in round {len(rounds)}", rounds)
        if l0_next == l0:
            break
        if not l0_next <= l0:
            raise AssertionError("P_0 kernel grew across rounds")
        l0 = l0_next

    interfaces = {
        "P_K-1 -> P_0": shad(l0),
        "P_0 -> P_1": shad(l_other),
        "P_r -> P_r+1": shad(l_other),
    }
    return Verdict(Decision.LIVELOCK, l_other, None, l0, tuple(rounds), None, interfaces)


def decide(spec, step: PhiFn = phi) -> Verdict:
    """Dispatch on the topology of a :class:`~ringlock.protocols.ProtocolSpec`."""
    if spec.topology == "symmetric":
        return decide_symmetric(spec.transitions, step)
    return decide_ring11(spec.t0, spec.t_other, step)


def on_cycle(t: Transition, support: Iterable[Transition]) -> bool:
    """Plain reachability test: can ``t`` reach itself in ``H(support)``?"""
    g = build_h(support)
    if t not in g.successors:
        return False
    seen = set()
    frontier = list(g.successors[t])
    while frontier:
        u = frontier.pop()
        if u == t:
            return True
        if u in seen:
            continue
        seen.add(u)
        frontier.extend(g.successors[u])
    return False


@dataclass(frozen=True)
class MaximalityReport:
    ok: bool
    checked_iterates: int
    violation: tuple[int, Transition] | None = None

    def __str__(self):
        if self.ok:
            return f"maximality holds on {self.checked_iterates} iterate(s)"
        i, t = self.violation
        return f"maximality violated: {t} in iterate {i} lies on no cycle"


def check_invariant_maximality(trace: IterationTrace) -> MaximalityReport:
    """Confirm every member of every iterate after the first lies on a cycle
    of that iterate's own graph."""
    for i, s in enumerate(trace.iterates[1:], start=1):
        for t in canonical(s):
            if not on_cycle(t, s):
                return MaximalityReport(False, i, (i, t))
    return MaximalityReport(True, max(len(trace.iterates) - 1, 0))


@dataclass(frozen=True)
class CoverageReport:
    """Witness coverage at a kernel.

    ``unwitnessed_edges`` lists graph edges with no predecessor transition
    carrying them; ``idle`` lists kernel members that carry no edge.
    """

    unwitnessed_edges: tuple[tuple[Transition, Transition], ...]
    idle: tuple[Transition, ...]

    @property
    def every_edge_witnessed(self) -> bool:
        return not self.unwitnessed_edges

    @property
    def every_member_witnesses(self) -> bool:
        return not self.idle

    @property
    def ok(self) -> bool:
        return self.every_edge_witnessed and self.every_member_witnesses


def check_coverage(kernel: Iterable[Transition], edges_of: Iterable[Transition] | None = None) -> CoverageReport:
    """Witness coverage of ``kernel`` for the edges of ``H(edges_of)``.

    ``edges_of`` defaults to the kernel itself (the symmetric interface).
    """
    kernel = frozenset(kernel)
    target = kernel if edges_of is None else frozenset(edges_of)
    edges = build_h(target).edges
    unwitnessed = tuple(e for e in edges if not shadow_witnesses(e, kernel))
    required = shad(target)
    idle = tuple(t for t in canonical(kernel) if (t.own, t.written) not in required)
    return CoverageReport(unwitnessed, idle)
