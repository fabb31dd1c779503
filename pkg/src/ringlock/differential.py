"""Three-way differential check: kernel iteration, naive cycle decider, oracle.

Case ``i`` of a run with seed ``s`` draws its protocol from
``random.Random(f"{s}/{i}")``: first the domain size uniformly from
``[2, m_max]``, then the table via :func:`~ringlock.protocols.random_transitions`.
Any single case is therefore reproducible from ``(s, i)`` alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .circulation import check_equivariance
from .core import canonical, phi, pl
from .decide import check_coverage, decide_symmetric
from .oracle import oracle_scan
from .protocols import ProtocolSpec, random_transitions
from .witness import naive_decide

COMPLETENESS = "oracle livelock but kernel empty"
NAIVE_MISMATCH = "naive decider disagrees with kernel"


@dataclass
class CaseOutcome:
    index: int
    spec: ProtocolSpec
    kernel_livelock: bool
    naive_livelock: bool
    oracle_ks: list[int]
    undecided_ks: list[int]
    kernel_size: int
    violations: list[str] = field(default_factory=list)
    beyond_scan: bool = False
    beyond_scan_checks: dict = field(default_factory=dict)


def case_spec(seed: int, index: int, m_max: int, tmax: int) -> ProtocolSpec:
    rng = random.Random(f"{seed}/{index}")
    m = rng.randint(2, m_max)
    return ProtocolSpec.symmetric(m, canonical(random_transitions(rng, m, tmax)), name=f"fuzz-{seed}-{index}")


def classify(kernel_livelock, naive_livelock, oracle_ks) -> list[str]:
    problems = []
    if oracle_ks and not kernel_livelock:
        problems.append(COMPLETENESS)
    if naive_livelock != kernel_livelock:
        problems.append(NAIVE_MISMATCH)
    return problems


def run_case(spec: ProtocolSpec, index: int = 0, k_max: int = 6, step=phi) -> CaseOutcome:
    verdict = decide_symmetric(spec.transitions, step)
    naive = naive_decide(spec.transitions)
    scan = oracle_scan(spec, 2, k_max)
    out = CaseOutcome(
        index,
        spec,
        verdict.livelock,
        naive.livelock,
        scan.livelock_ks,
        scan.undecided_ks,
        len(verdict.kernel),
        classify(verdict.livelock, naive.livelock, scan.livelock_ks),
    )
    if verdict.livelock and not scan.any_livelock:
        out.beyond_scan = True
        cov = check_coverage(verdict.kernel)
        out.beyond_scan_checks = {
            "kernel_nonempty": bool(verdict.kernel),
            "every_member_witnesses": cov.every_member_witnesses,
            "every_edge_witnessed": cov.every_edge_witnessed,
            "equivariance": all(c.holds for c in check_equivariance(verdict)),
        }
    return out


def minimize(spec: ProtocolSpec, k_max: int = 6, step=phi) -> ProtocolSpec:
    """Greedily drop transitions while the case keeps some disagreement.

    Subsets of a self-disabling table stay self-disabling, so every
    candidate remains a valid protocol.
    """
    current = canonical(spec.transitions)
    changed = True
    while changed:
        changed = False
        for t in list(current):
            trial = ProtocolSpec.symmetric(spec.m, [u for u in current if u != t], name=spec.name)
            if run_case(trial, k_max=k_max, step=step).violations:
                current = canonical(trial.transitions)
                changed = True
                break
    return ProtocolSpec.symmetric(spec.m, current, name=spec.name + "-min")


@dataclass
class FuzzSummary:
    seed: int
    count: int
    m_max: int
    tmax: int
    k_max: int
    outcomes: list[CaseOutcome]
    minimized: list[tuple[int, ProtocolSpec]] = field(default_factory=list)

    @property
    def disagreements(self) -> list[CaseOutcome]:
        return [o for o in self.outcomes if o.violations]

    @property
    def beyond_scan(self) -> list[CaseOutcome]:
        return [o for o in self.outcomes if o.beyond_scan]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def fuzz(count: int, m_max: int = 3, tmax: int = 6, seed: int = 1, k_max: int = 6, step=phi, minimize_failures=True) -> FuzzSummary:
    outcomes = [run_case(case_spec(seed, i, m_max, tmax), i, k_max, step) for i in range(count)]
    summary = FuzzSummary(seed, count, m_max, tmax, k_max, outcomes)
    if minimize_failures:
        for o in summary.disagreements[:3]:
            summary.minimized.append((o.index, minimize(o.spec, k_max, step)))
    return summary


def mutated_phi(s):
    """Fault-injection hook: the kernel step without shadow filtering."""
    return pl(s)
