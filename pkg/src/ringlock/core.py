"""Transition algebra for self-disabling unidirectional rings.

A protocol is a set of transitions ``(pred, own, written)`` over ``Z_m``.
This module holds the four set operators that make up the kernel
operator ``phi``:

* :func:`build_h` - the pseudolivelock graph on a transition set,
* :func:`pl` - transitions lying on some directed cycle of that graph,
* :func:`shad` - the (own, written) pairs predecessors must supply,
* :func:`filter_pairs` - keep transitions whose (own, written) pair is required.

Every operator is a pure function of its arguments and returns a
``frozenset``; use :func:`canonical` when a deterministic order is needed.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import NamedTuple


class Transition(NamedTuple):
    pred: int
    own: int
    written: int

    def __str__(self) -> str:
        return f"({self.pred},{self.own},{self.written})"


TransitionSet = frozenset  # frozenset[Transition]
ShadowSet = frozenset  # frozenset[tuple[int, int]]


class InvalidProtocol(ValueError):
    """Raised when a transition table breaks the protocol rules.

    ``violations`` lists every problem found, not just the first one.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def canonical(ts: Iterable[Transition]) -> list[Transition]:
    return sorted(ts)


def find_violations(m: int, triples: Iterable) -> list[str]:
    """Return every rule the raw ``triples`` break over ``Z_m`` (empty if valid)."""
    problems = []
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        return [f"domain size m must be an integer >= 2, got {m!r}"]

    seen = set()
    good = []
    for idx, raw in enumerate(triples):
        try:
            values = tuple(raw)
        except TypeError:
            problems.append(f"entry {idx}: not a triple: {raw!r}")
            continue
        if len(values) != 3 or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in values
        ):
            problems.append(f"entry {idx}: not an integer triple: {raw!r}")
            continue
        t = Transition(*values)
        if not all(0 <= x < m for x in t):
            problems.append(f"entry {idx}: value out of range [0, {m}): {t}")
            continue
        if t.own == t.written:
            problems.append(f"entry {idx}: own = written in {t}")
            continue
        if t in seen:
            problems.append(f"entry {idx}: duplicate transition {t}")
            continue
        seen.add(t)
        good.append(t)

    enabled = {(t.pred, t.own): t for t in sorted(good)}
    for t in sorted(good):
        u = enabled.get((t.pred, t.written))
        if u is not None:
            problems.append(
                f"self-disabling breach: {t} writes {t.written}, "
                f"{u} enabled at (pred={t.pred}, own={t.written})"
            )
    return problems


def validate_protocol(m: int, triples: Iterable) -> frozenset:
    """Check ``triples`` against the protocol rules and return them as a set.

    Raises :class:`InvalidProtocol` carrying all violations. An empty
    transition list is valid.
    """
    triples = list(triples)
    problems = find_violations(m, triples)
    if problems:
        raise InvalidProtocol(problems)
    return frozenset(Transition(*t) for t in triples)


def is_self_disabling(ts: Iterable[Transition]) -> bool:
    ts = frozenset(ts)
    enabled = {(t.pred, t.own) for t in ts}
    return all((t.pred, t.written) not in enabled for t in ts)


class PseudolivelockGraph:
    """Directed graph on transitions: ``a -> b`` iff ``b.own == a.written``.

    The edge set is a function of the vertex set and is computed once on
    construction.
    """

    def __init__(self, vertices: Iterable[Transition]):
        self.vertices = tuple(canonical(set(vertices)))
        by_own: dict[int, list[Transition]] = {}
        for t in self.vertices:
            by_own.setdefault(t.own, []).append(t)
        self.successors = {t: tuple(by_own.get(t.written, ())) for t in self.vertices}

    @property
    def edges(self) -> list[tuple[Transition, Transition]]:
        return [(a, b) for a in self.vertices for b in self.successors[a]]

    def has_edge(self, a: Transition, b: Transition) -> bool:
        return a in self.successors and b in self.successors and b.own == a.written

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"PseudolivelockGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def build_h(s: Iterable[Transition]) -> PseudolivelockGraph:
    return PseudolivelockGraph(s)


def strongly_connected_components(g: PseudolivelockGraph) -> list[list[Transition]]:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    index: dict[Transition, int] = {}
    low: dict[Transition, int] = {}
    on_stack: set[Transition] = set()
    stack: list[Transition] = []
    components = []
    counter = 0

    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(g.successors[root]))]
        while work:
            v, children = work[-1]
            advanced = False
            for w in children:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(canonical(comp))
    return components


def pl(s: Iterable[Transition]) -> frozenset:
    """Transitions of ``s`` lying on at least one directed cycle of ``H(s)``."""
    g = build_h(s)
    keep = set()
    for comp in strongly_connected_components(g):
        if len(comp) >= 2:
            keep.update(comp)
        elif comp[0] in g.successors[comp[0]]:
            # unreachable while own != written holds; kept for a relaxed model
            raise AssertionError(f"self-loop on {comp[0]} contradicts own != written")
    return frozenset(keep)


def shad(p: Iterable[Transition]) -> frozenset:
    """Pairs ``(a.pred, b.pred)`` over every edge ``a -> b`` of ``H(p)``."""
    return frozenset((a.pred, b.pred) for a, b in build_h(p).edges)


def filter_pairs(s: Iterable[Transition], required: Iterable[tuple[int, int]]) -> frozenset:
    required = frozenset(required)
    return frozenset(t for t in s if (t.own, t.written) in required)


def phi(s: Iterable[Transition]) -> frozenset:
    """One kernel step: ``PL(Filter(S, Shad(PL(S))))``."""
    s = frozenset(s)
    return pl(filter_pairs(s, shad(pl(s))))


def shadow_witnesses(
    edge: tuple[Transition, Transition], support: Iterable[Transition]
) -> list[Transition]:
    """Members of ``support`` that carry the predecessor across ``edge``."""
    a, b = edge
    return canonical(t for t in support if t.own == a.pred and t.written == b.pred)
