"""Machine-readable reports for the command-line tool.

Reports are plain dicts with deterministic key and list order; only the
``elapsed_seconds`` field varies between runs on the same input.
"""

from __future__ import annotations

import json

import jsonschema
import yaml

from . import __version__
from .circulation import build_e, check_equivariance, propagation_arcs
from .core import build_h, canonical, shad
from .decide import check_coverage, check_invariant_maximality

EXIT_FREE = 0
EXIT_LIVELOCK = 10
EXIT_INPUT = 2
EXIT_UNDECIDED = 3
EXIT_DISAGREE = 20

REPORT_SCHEMA = {
    "type": "object",
    "required": ["tool", "version", "command", "elapsed_seconds"],
    "properties": {
        "tool": {"const": "ringlock"},
        "version": {"type": "string"},
        "command": {"enum": ["check", "oracle", "fuzz", "witness", "circulation"]},
        "verdict": {"enum": ["FREE", "LIVELOCK"]},
        "elapsed_seconds": {"type": "number", "minimum": 0},
        "protocol": {
            "type": "object",
            "required": ["m", "topology"],
            "properties": {
                "m": {"type": "integer", "minimum": 2},
                "topology": {"enum": ["symmetric", "ring11"]},
            },
        },
        "kernel": {"type": "array", "items": {"$ref": "#/$defs/transition"}},
        "kernel_p0": {"type": "array", "items": {"$ref": "#/$defs/transition"}},
    },
    "$defs": {
        "transition": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 3,
            "maxItems": 3,
        }
    },
}


def validate_report(report: dict):
    jsonschema.validate(report, REPORT_SCHEMA)


def tlist(ts):
    return [list(t) for t in canonical(ts)]


def edge_list(pairs):
    return [[list(a), list(b)] for a, b in pairs]


def pair_list(pairs):
    return [list(p) for p in sorted(pairs)]


def header(command: str, spec=None) -> dict:
    out = {"tool": "ringlock", "version": __version__, "command": command}
    if spec is not None:
        out["protocol"] = {"name": spec.name, "m": spec.m, "topology": spec.topology}
        if spec.topology == "symmetric":
            out["protocol"]["transitions"] = len(spec.transitions)
        else:
            out["protocol"]["p0_transitions"] = len(spec.t0)
            out["protocol"]["other_transitions"] = len(spec.t_other)
    return out


def _trace_summary(trace) -> dict:
    return {
        "sizes": trace.sizes,
        "removed": [tlist(r) for r in trace.removed_per_step],
        "free_at": trace.free_at,
    }


def check_report(spec, verdict, explain=False) -> dict:
    rep = header("check", spec)
    rep["verdict"] = str(verdict.decision)
    if verdict.free_reason:
        rep["free_reason"] = verdict.free_reason

    if spec.topology == "symmetric":
        rep["kernel"] = tlist(verdict.kernel)
        rep["trace"] = _trace_summary(verdict.trace)
    else:
        rep["kernel_p0"] = tlist(verdict.kernel_p0)
        rep["kernel"] = tlist(verdict.kernel)
        rep["rounds"] = [
            {
                "p0_size": len(r.p0_before),
                "other_sizes": r.other_trace.sizes,
                "p0_after_size": None if r.p0_after is None else len(r.p0_after),
            }
            for r in verdict.rounds
        ]

    if verdict.livelock:
        if spec.topology == "symmetric":
            k = verdict.kernel
            rep["h_edges"] = edge_list(build_h(k).edges)
            rep["e_arcs"] = edge_list(build_e(k).pairs)
            rep["shadow"] = pair_list(shad(k))
            cov = check_coverage(k)
        else:
            l0, lo = verdict.kernel_p0, verdict.kernel
            rep["h_edges"] = {"p0": edge_list(build_h(l0).edges), "other": edge_list(build_h(lo).edges)}
            rep["e_arcs"] = {
                "P_K-1 -> P_0": edge_list(propagation_arcs(lo, l0)),
                "P_0 -> P_1": edge_list(propagation_arcs(l0, lo)),
                "P_r -> P_r+1": edge_list(propagation_arcs(lo, lo)),
            }
            rep["shadow"] = {name: pair_list(s) for name, s in verdict.interface_shadows.items()}
            cov = check_coverage(lo)
        rep["witness_coverage"] = {
            "every_member_witnesses": cov.every_member_witnesses,
            "every_edge_witnessed": cov.every_edge_witnessed,
            "unwitnessed_edges": edge_list(cov.unwitnessed_edges),
        }
        rep["equivariance"] = [
            {"interface": c.interface, "holds": c.holds} for c in check_equivariance(verdict)
        ]

    if explain:
        traces = [verdict.trace] if verdict.trace is not None else [r.other_trace for r in verdict.rounds]
        rep["explain"] = [
            {
                "iterates": [tlist(s) for s in tr.iterates],
                "maximality": str(check_invariant_maximality(tr)),
            }
            for tr in traces
        ]
    return rep


def witness_report(spec, naive, cycles_listed) -> dict:
    rep = header("witness", spec)
    rep["verdict"] = str(naive.decision)
    rep["candidate_cycles"] = naive.candidates
    rep["sustained_cycles"] = [tlist_ordered(c) for c in naive.alive]
    if cycles_listed is not None:
        rep["all_cycles"] = [tlist_ordered(c) for c in cycles_listed]
    if naive.witness is not None:
        rep["witness_cycle"] = tlist_ordered(naive.witness)
        rep["enabling_walks"] = [[list(t) for t in w.witnesses] for w in naive.walks]
    return rep


def tlist_ordered(cycle):
    return [list(t) for t in cycle]


def circulation_report(spec, kernel, result) -> dict:
    rep = header("circulation", spec)
    rep["kernel"] = tlist(kernel)
    rep["a_max"] = result.a_max
    rep["k_max"] = result.k_max
    rep["pairs"] = [list(p) for p in result.pairs_found]
    rep["ring_sizes"] = result.ring_sizes
    rep["h_powers"] = {"start": result.h_start, "period": result.h_period}
    rep["e_powers"] = {"start": result.e_start, "period": result.e_period}
    rep["arc_count"] = result.arc_count
    rep["arc_count_ring_sizes"] = list(result.arc_count_ks)
    rep["oracle_min_k"] = result.oracle_min_k
    rep["note"] = "raw (a, K) pairs; ring sizes are confirmed only by the oracle scan"
    return rep


def oracle_report(spec, scan) -> dict:
    rep = header("oracle", spec)
    rep["results"] = [
        {
            "k": r.k,
            "states": r.states,
            "livelock": r.livelock,
            "fired_labels": sorted(r.fired_labels),
            "witness_size": r.witness_size,
            "reason": r.reason,
        }
        for r in scan.results
    ]
    rep["livelock_ks"] = scan.livelock_ks
    rep["undecided_ks"] = scan.undecided_ks
    rep["min_k"] = scan.min_k
    return rep


def fuzz_report(summary) -> dict:
    rep = header("fuzz")
    rep["seed"] = summary.seed
    rep["count"] = summary.count
    rep["m_max"] = summary.m_max
    rep["tmax"] = summary.tmax
    rep["k_max"] = summary.k_max
    rep["livelock_cases"] = sum(o.kernel_livelock for o in summary.outcomes)
    rep["free_cases"] = sum(not o.kernel_livelock for o in summary.outcomes)
    rep["beyond_scan"] = [
        {"case": o.index, "m": o.spec.m, "transitions": tlist(o.spec.transitions), "checks": o.beyond_scan_checks}
        for o in summary.beyond_scan
    ]
    rep["disagreements"] = [
        {
            "case": o.index,
            "reproduce": f"--seed {summary.seed} case {o.index}",
            "m": o.spec.m,
            "transitions": tlist(o.spec.transitions),
            "kernel": o.kernel_livelock,
            "naive": o.naive_livelock,
            "oracle_ks": o.oracle_ks,
            "violations": o.violations,
        }
        for o in summary.disagreements
    ]
    rep["minimized"] = [
        {"case": i, "m": s.m, "transitions": tlist(s.transitions)} for i, s in summary.minimized
    ]
    return rep


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2) + "\n"
    return yaml.safe_dump(report, sort_keys=False, default_flow_style=None, width=100)
