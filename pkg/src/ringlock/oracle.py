"""Explicit-state livelock check on a ring of one fixed size.

The global graph has one node per state ``(x_0, ..., x_{K-1})`` in
``Z_m^K`` and one edge per enabled (process, transition) pair, labelled by
the process.  All states are explored: stabilization quantifies over
arbitrary initial configurations, so no reachability pruning is applied.

An execution in which every process fires infinitely often exists iff some
strongly connected component has internal edges carrying every process
label.  One direction is immediate: such an execution eventually stays in
one component and uses only its internal edges.  Conversely, inside a
strongly connected component any finite set of internal edges can be strung
into one closed walk by connecting them with internal paths, and repeating
that walk forever fires every label infinitely often.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import Transition

DEFAULT_BUDGET = 10**6
BUDGET_ENV = "RINGLOCK_ORACLE_BUDGET"


def node_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class OracleResult:
    k: int
    livelock: bool | None
    states: int
    fired_labels: frozenset = frozenset()
    witness_size: int = 0
    reason: str = ""
    _witness_codes: np.ndarray | None = field(default=None, compare=False, repr=False)
    _m: int = field(default=0, compare=False, repr=False)

    @property
    def decided(self) -> bool:
        return self.livelock is not None

    def witness_scc(self) -> list[tuple[int, ...]]:
        """States of the label-covering component, in code order."""
        if self._witness_codes is None:
            return []
        return [decode(int(c), self._m, self.k) for c in self._witness_codes]


def decode(code: int, m: int, k: int) -> tuple[int, ...]:
    return tuple((code // m**r) % m for r in range(k))


def encode(state, m: int) -> int:
    return sum(int(x) * m**r for r, x in enumerate(state))


def enabled_moves(spec, state) -> list[tuple[int, Transition, tuple[int, ...]]]:
    """``(process, transition, successor)`` for every move enabled at ``state``."""
    k = len(state)
    moves = []
    for r in range(k):
        for t in sorted(spec.process_protocol(r)):
            if state[r - 1] == t.pred and state[r] == t.own:
                nxt = list(state)
                nxt[r] = t.written
                moves.append((r, t, tuple(nxt)))
    return moves


def global_edges(spec, k: int):
    """Edge arrays ``(src, dst, label)`` of the global graph over state codes."""
    m = spec.m
    n = m**k
    codes = np.arange(n, dtype=np.int64)
    digits = [(codes // m**r) % m for r in range(k)]
    src, dst, lab = [], [], []
    for r in range(k):
        pred, own = digits[(r - 1) % k], digits[r]
        for t in sorted(spec.process_protocol(r)):
            hit = codes[(pred == t.pred) & (own == t.own)]
            src.append(hit)
            dst.append(hit + (t.written - t.own) * m**r)
            lab.append(np.full(hit.size, r, dtype=np.int64))
    if not src:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(src), np.concatenate(dst), np.concatenate(lab)


def label_cover(n: int, src, dst, lab, k: int):
    """Strong components of a labelled graph and, per component, which labels
    its internal edges carry.  Returns ``(comp, cover)`` with ``cover`` of
    shape ``(components, k)``."""
    src, dst, lab = (np.asarray(a, dtype=np.int64) for a in (src, dst, lab))
    graph = csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
    ncomp, comp = connected_components(graph, directed=True, connection="strong")
    internal = comp[src] == comp[dst]
    cover = np.zeros((ncomp, k), dtype=bool)
    cover[comp[src[internal]], lab[internal]] = True
    return comp, cover


def oracle_livelock(spec, k: int, budget: int | None = None) -> OracleResult:
    if k < 2:
        raise ValueError(f"ring size must be >= 2, got {k}")
    budget = node_budget() if budget is None else budget
    n = spec.m**k
    if n > budget:
        return OracleResult(k, None, n, reason=f"undecided: {n} states exceed budget {budget}")

    src, dst, lab = global_edges(spec, k)
    if src.size == 0:
        return OracleResult(k, False, n, reason="no enabled moves")
    comp, cover = label_cover(n, src, dst, lab, k)
    ncomp = cover.shape[0]
    counts = cover.sum(axis=1)
    full = np.flatnonzero(counts == k)
    if full.size:
        # smallest covering component keeps the witness readable
        sizes = np.bincount(comp, minlength=ncomp)
        best = int(full[np.argmin(sizes[full])])
        codes = np.flatnonzero(comp == best)
        return OracleResult(k, True, n, frozenset(range(k)), int(codes.size), "", codes, spec.m)
    best = int(np.argmax(counts)) if ncomp else 0
    labels = frozenset(int(r) for r in np.flatnonzero(cover[best])) if ncomp else frozenset()
    return OracleResult(k, False, n, labels, reason="no component fires every process")


@dataclass(frozen=True)
class ScanResult:
    results: tuple[OracleResult, ...]

    @property
    def livelock_ks(self) -> list[int]:
        return [r.k for r in self.results if r.livelock]

    @property
    def undecided_ks(self) -> list[int]:
        return [r.k for r in self.results if not r.decided]

    @property
    def min_k(self) -> int | None:
        ks = self.livelock_ks
        return ks[0] if ks else None

    @property
    def any_livelock(self) -> bool:
        return bool(self.livelock_ks)


def oracle_scan(spec, k_min: int, k_max: int, budget: int | None = None) -> ScanResult:
    if not 2 <= k_min <= k_max:
        raise ValueError(f"need 2 <= k_min <= k_max, got {k_min}..{k_max}")
    return ScanResult(tuple(oracle_livelock(spec, k, budget) for k in range(k_min, k_max + 1)))
