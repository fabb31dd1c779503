"""Propagation relations and the admissible ring-size search.

Relations are boolean matrices over an explicit, ordered element list, so
composition, intersection and equality are exact.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .core import Transition, build_h, canonical


class Relation:
    """Binary relation over a fixed ordered universe of elements."""

    def __init__(self, elements: Sequence[Hashable], pairs: Iterable[tuple] = (), matrix=None):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        if matrix is not None:
            self.matrix = np.asarray(matrix, dtype=bool).reshape(n, n)
        else:
            self.matrix = np.zeros((n, n), dtype=bool)
            for a, b in pairs:
                self.matrix[self.index[a], self.index[b]] = True

    @classmethod
    def identity(cls, elements):
        elements = tuple(elements)
        return cls(elements, matrix=np.eye(len(elements), dtype=bool))

    @property
    def pairs(self) -> list[tuple]:
        rows, cols = np.nonzero(self.matrix)
        return [(self.elements[i], self.elements[j]) for i, j in zip(rows, cols)]

    def _check(self, other):
        if self.elements != other.elements:
            raise ValueError("relations live over different universes")

    def compose(self, other: Relation) -> Relation:
        """``self`` then ``other``: ``(a, c)`` iff ``a self b`` and ``b other c``."""
        self._check(other)
        prod = self.matrix.astype(np.int64) @ other.matrix.astype(np.int64)
        return Relation(self.elements, matrix=prod > 0)

    def __and__(self, other: Relation) -> Relation:
        self._check(other)
        return Relation(self.elements, matrix=self.matrix & other.matrix)

    def __sub__(self, other: Relation) -> Relation:
        self._check(other)
        return Relation(self.elements, matrix=self.matrix & ~other.matrix)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.elements == other.elements and bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.elements, self.matrix.tobytes()))

    def __bool__(self):
        return bool(self.matrix.any())

    def __len__(self):
        return int(self.matrix.sum())

    def __repr__(self):
        return f"Relation({len(self.elements)} elements, {len(self)} pairs)"


def relation_power(base: Relation, a: int) -> Relation:
    """``a``-fold composition of ``base`` by repeated squaring."""
    if a < 1:
        raise ValueError(f"exponent must be >= 1, got {a}")
    result = None
    square = base
    while a:
        if a & 1:
            result = square if result is None else result.compose(square)
        a >>= 1
        if a:
            square = square.compose(square)
    return result


def h_relation(kernel: Iterable[Transition], tag=None) -> Relation:
    g = build_h(kernel)
    wrap = (lambda t: t) if tag is None else (lambda t: (tag, t))
    elements = [wrap(t) for t in g.vertices]
    return Relation(elements, [(wrap(a), wrap(b)) for a, b in g.edges])


def propagation_arcs(source: Iterable[Transition], target: Iterable[Transition]) -> list[tuple[Transition, Transition]]:
    """Arcs ``(k, j)`` with ``k`` in ``source`` enabling some edge ``i -> j`` of
    ``H(target)``: ``k.own == i.pred`` and ``k.written == j.pred``."""
    by_pair: dict[tuple[int, int], list[Transition]] = {}
    for k in canonical(source):
        by_pair.setdefault((k.own, k.written), []).append(k)
    arcs = set()
    for i, j in build_h(target).edges:
        for k in by_pair.get((i.pred, j.pred), ()):
            arcs.add((k, j))
    return sorted(arcs)


def build_e(kernel: Iterable[Transition]) -> Relation:
    """Propagation relation of a symmetric kernel, over the kernel itself."""
    kernel = canonical(set(kernel))
    return Relation(kernel, propagation_arcs(kernel, kernel))


@dataclass(frozen=True)
class EquivarianceCheck:
    interface: str
    holds: bool
    only_left: tuple = ()
    only_right: tuple = ()


def _interface_universe(pred_kernel, succ_kernel, pred_tag, succ_tag):
    elements = [(pred_tag, t) for t in canonical(pred_kernel)]
    if pred_tag != succ_tag:
        elements += [(succ_tag, t) for t in canonical(succ_kernel)]
    return elements


def check_interface(pred_kernel, succ_kernel, pred_tag="r-1", succ_tag="r", name=None) -> EquivarianceCheck:
    """Test ``H_pred . E = E . H_succ`` where ``E`` runs from the predecessor's
    kernel into the successor's."""
    pred_kernel = frozenset(pred_kernel)
    succ_kernel = frozenset(succ_kernel)
    elements = _interface_universe(pred_kernel, succ_kernel, pred_tag, succ_tag)
    h_pred = Relation(elements, [((pred_tag, a), (pred_tag, b)) for a, b in build_h(pred_kernel).edges])
    h_succ = Relation(elements, [((succ_tag, a), (succ_tag, b)) for a, b in build_h(succ_kernel).edges])
    e = Relation(elements, [((pred_tag, k), (succ_tag, j)) for k, j in propagation_arcs(pred_kernel, succ_kernel)])
    left = h_pred.compose(e)
    right = e.compose(h_succ)
    strip = lambda pairs: tuple((a[1], b[1]) for a, b in pairs)
    return EquivarianceCheck(
        name or f"{pred_tag} -> {succ_tag}",
        left == right,
        strip((left - right).pairs),
        strip((right - left).pairs),
    )


def check_equivariance(verdict) -> list[EquivarianceCheck]:
    """Equivariance at every process interface of a livelock verdict."""
    if verdict.kernel_p0 is None:
        return [check_interface(verdict.kernel, verdict.kernel, "k", "k", "P_r-1 -> P_r")]
    l0, lo = verdict.kernel_p0, verdict.kernel
    return [
        check_interface(lo, l0, "other", "p0", "P_K-1 -> P_0"),
        check_interface(l0, lo, "p0", "other", "P_0 -> P_1"),
        check_interface(lo, lo, "other", "other", "P_r -> P_r+1"),
    ]


@dataclass(frozen=True)
class PowerSequence:
    """Powers ``R^1, R^2, ...`` with their eventual period.

    ``R^(start + period) == R^start`` and every later power repeats with the
    same period.
    """

    powers: tuple[Relation, ...]
    start: int
    period: int

    def power(self, a: int) -> Relation:
        if a <= len(self.powers):
            return self.powers[a - 1]
        return self.powers[self.start - 1 + (a - self.start) % self.period]


def power_sequence(base: Relation) -> PowerSequence:
    seen: dict[Relation, int] = {}
    powers = []
    current = base
    a = 1
    while current not in seen:
        seen[current] = a
        powers.append(current)
        current = current.compose(base)
        a += 1
    start = seen[current]
    return PowerSequence(tuple(powers), start, a - start)


@dataclass(frozen=True)
class AdmissibleKReport:
    pairs_found: tuple[tuple[int, int], ...]
    a_max: int
    k_max: int
    h_start: int
    h_period: int
    e_start: int
    e_period: int
    arc_count: int
    arc_count_ks: tuple[int, ...]
    oracle_min_k: int | None = None

    @property
    def ring_sizes(self) -> list[int]:
        return sorted({k for _, k in self.pairs_found})


def circulation_search(h_star: Relation, e_star: Relation, a_max: int | None = None, k_max: int = 8) -> AdmissibleKReport:
    """All ``(a, K)`` with ``1 <= a <= a_max``, ``2 <= K <= k_max`` and
    ``H^a & E^K`` nonempty.

    Also reports the reading with ``a`` fixed to the arc count of ``E``.
    """
    if not h_star.elements:
        raise ValueError("circulation search needs a nonempty kernel")
    if a_max is None:
        a_max = len(h_star.elements) ** 2
    if a_max < 2 or k_max < 2:
        raise ValueError(f"a_max and k_max must be >= 2, got a_max={a_max}, k_max={k_max}")
    hs = power_sequence(h_star)
    es = power_sequence(e_star)
    pairs = tuple(
        (a, k)
        for a in range(1, a_max + 1)
        for k in range(2, k_max + 1)
        if hs.power(a) & es.power(k)
    )
    arcs = len(e_star)
    arc_ks = ()
    if arcs:
        arc_ks = tuple(k for k in range(2, k_max + 1) if hs.power(arcs) & es.power(k))
    return AdmissibleKReport(pairs, a_max, k_max, hs.start, hs.period, es.start, es.period, arcs, arc_ks)


def verify_pair(h_star: Relation, e_star: Relation, a: int, k: int) -> bool:
    """Recompute one intersection by one-step-at-a-time composition on pairs."""

    def step_power(rel, n):
        pairs = set(rel.pairs)
        result = set(pairs)
        for _ in range(n - 1):
            result = {(x, z) for x, y in result for y2, z in pairs if y == y2}
        return result

    return bool(step_power(h_star, a) & step_power(e_star, k))
