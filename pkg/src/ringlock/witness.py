"""Bounded simple-cycle witnesses and the naive decider built on them.

The naive decider never computes strongly connected components or the
kernel operator.  It enumerates simple cycles of the pseudolivelock graph
and repeatedly discards cycles that cannot be sustained by the surviving
ones, which makes it an independent cross-check of the kernel iteration.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable
from dataclasses import dataclass

from .core import PseudolivelockGraph, Transition, build_h, shadow_witnesses
from .decide import Decision

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimpleCycle:
    transitions: tuple[Transition, ...]

    def __len__(self):
        return len(self.transitions)

    def __iter__(self):
        return iter(self.transitions)

    @property
    def edges(self) -> list[tuple[Transition, Transition]]:
        ts = self.transitions
        return [(ts[i], ts[(i + 1) % len(ts)]) for i in range(len(ts))]

    @property
    def shadow_pairs(self) -> list[tuple[int, int]]:
        return [(a.pred, b.pred) for a, b in self.edges]

    def __str__(self):
        return " -> ".join(map(str, self.transitions))


@dataclass(frozen=True)
class EnablingWalk:
    """One predecessor transition per edge of ``cycle``, in edge order."""

    cycle: SimpleCycle
    witnesses: tuple[Transition, ...]

    def __len__(self):
        return len(self.witnesses)

    @property
    def is_closed(self) -> bool:
        w = self.witnesses
        return all(w[i].written == w[(i + 1) % len(w)].own for i in range(len(w)))

    @property
    def is_simple(self) -> bool:
        return len(set(self.witnesses)) == len(self.witnesses)


def enumerate_simple_cycles(g: PseudolivelockGraph, max_len: int | None = None) -> list[SimpleCycle]:
    """Every simple cycle of ``g`` with at most ``max_len`` transitions.

    Each cycle is reported once, rotated to start at its least member.
    """
    if max_len is None:
        max_len = len(g.vertices)
    order = {t: i for i, t in enumerate(g.vertices)}
    found = []
    for start in g.vertices:
        lo = order[start]
        path = [start]
        on_path = {start}
        stack = [iter(g.successors[start])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt == start:
                if len(path) >= 2 or start in g.successors[start]:
                    found.append(SimpleCycle(tuple(path)))
                continue
            if order[nxt] <= lo or nxt in on_path or len(path) >= max_len:
                continue
            path.append(nxt)
            on_path.add(nxt)
            stack.append(iter(g.successors[nxt]))
    return found


def enabling_walks(cycle: SimpleCycle, support: Iterable[Transition], limit: int | None = None) -> list[EnablingWalk]:
    """All closed walks in ``support`` that carry ``cycle`` one process
    further back, up to ``limit`` of them."""
    support = frozenset(support)
    choices = [shadow_witnesses(e, support) for e in cycle.edges]
    if not all(choices):
        return []
    walks = []
    for combo in itertools.product(*choices):
        walk = EnablingWalk(cycle, combo)
        if walk.is_closed:
            walks.append(walk)
            if limit is not None and len(walks) >= limit:
                break
    return walks


@dataclass(frozen=True)
class NaiveResult:
    decision: Decision
    alive: tuple[SimpleCycle, ...]
    witness: SimpleCycle | None = None
    walks: tuple[EnablingWalk, ...] = ()
    candidates: int = 0

    @property
    def livelock(self) -> bool:
        return self.decision is Decision.LIVELOCK

    @property
    def support(self) -> frozenset:
        return frozenset(t for c in self.alive for t in c)


def sustained_cycles(cycles: Iterable[SimpleCycle]) -> list[SimpleCycle]:
    """Largest subfamily in which every cycle edge has a predecessor witness
    among the surviving transitions, and every surviving transition witnesses
    some surviving cycle edge."""
    alive = list(cycles)
    while True:
        available = {(t.own, t.written) for c in alive for t in c}
        required = {p for c in alive for p in c.shadow_pairs}
        kept = [
            c
            for c in alive
            if all(p in available for p in c.shadow_pairs)
            and all((t.own, t.written) in required for t in c)
        ]
        if len(kept) == len(alive):
            return kept
        alive = kept


def _deepening(max_len: int):
    bound = 2
    while bound < max_len:
        yield bound
        bound *= 2
    yield max_len


def naive_decide(ts: Iterable[Transition], max_len: int | None = None, m: int | None = None) -> NaiveResult:
    """Decide by simple cycles alone.

    The cycle-length bound is deepened 2, 4, 8, ... up to ``max_len``.
    Survivors of a subfamily also survive in any larger family, so the first
    nonempty survivor set already settles LIVELOCK; FREE needs the full
    enumeration at ``max_len``.  Dense tables can have millions of long
    simple cycles while their short ones already sustain each other.
    """
    ts = frozenset(ts)
    if max_len is None:
        max_len = len(ts)
    g = build_h(ts)
    cycles, alive = [], []
    for bound in _deepening(max_len):
        cycles = enumerate_simple_cycles(g, bound)
        alive = sustained_cycles(cycles)
        if alive:
            break
    if not alive:
        return NaiveResult(Decision.FREE, (), candidates=len(cycles))

    support = frozenset(t for c in alive for t in c)
    # prefer the shortest witness that actually has an enabling walk
    ranked = sorted(alive, key=lambda c: (len(c), c.transitions))
    witness, walks = ranked[0], []
    for c in ranked:
        walks = enabling_walks(c, support, limit=16)
        if walks:
            witness = c
            break
    if m is not None:
        _log_bounds(alive, m)
    return NaiveResult(Decision.LIVELOCK, tuple(alive), witness, tuple(walks), len(cycles))


def _log_bounds(cycles: list[SimpleCycle], m: int):
    bound = m * (m - 1)
    long_ = [c for c in cycles if len(c) > bound]
    repeats = [c for c in cycles if len(set(c.shadow_pairs)) != len(c)]
    log.info(
        "%d sustained cycles; %d longer than m(m-1)=%d; %d with repeated shadow pairs",
        len(cycles), len(long_), bound, len(repeats),
    )


def bound_observations(cycles: Iterable[SimpleCycle], m: int) -> dict:
    cycles = list(cycles)
    bound = m * (m - 1)
    return {
        "cycles": len(cycles),
        "max_length": max((len(c) for c in cycles), default=0),
        "length_bound": bound,
        "longer_than_bound": sum(len(c) > bound for c in cycles),
        "repeated_shadow_pairs": sum(len(set(c.shadow_pairs)) != len(c) for c in cycles),
    }
