"""Command-line front end.

Exit status: 0 FREE, 10 LIVELOCK, 2 input error, 3 oracle undecided,
20 differential disagreement.
"""

from __future__ import annotations

import dataclasses
import sys
import time

import click

from .circulation import build_e, circulation_search, h_relation
from .core import build_h
from .decide import decide
from .differential import fuzz as run_fuzz
from .differential import mutated_phi
from .fileformat import ProtocolFileError, emit_protocol, load_protocol
from .oracle import oracle_scan
from .protocols import GENERATORS, generate
from .report import (
    EXIT_DISAGREE,
    EXIT_FREE,
    EXIT_INPUT,
    EXIT_LIVELOCK,
    EXIT_UNDECIDED,
    check_report,
    circulation_report,
    fuzz_report,
    oracle_report,
    render,
    witness_report,
)
from .witness import enumerate_simple_cycles, naive_decide

json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of YAML-style text.")


def _load(path):
    try:
        return load_protocol(path)
    except ProtocolFileError as exc:
        for p in exc.problems:
            click.echo(f"{exc.source}: {p}", err=True)
        sys.exit(EXIT_INPUT)
    except OSError as exc:
        click.echo(f"{path}: {exc.strerror}", err=True)
        sys.exit(EXIT_INPUT)


def _emit(report, as_json, started):
    report["elapsed_seconds"] = round(time.perf_counter() - started, 6)
    click.echo(render(report, as_json), nl=False)


@click.group()
@click.version_option(package_name="artifact", prog_name="ringlock")
def main():
    """Decide livelock freedom of self-disabling unidirectional ring protocols."""


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--explain", is_flag=True, help="Include every iterate and the maximality check.")
@click.option("--witness", is_flag=True, help="Run the naive cycle decider and include its witness.")
@click.option("--circulation", nargs=2, type=int, default=None, metavar="A_MAX K_MAX",
              help="Search (a, K) pairs with H^a & E^K nonempty.")
@json_option
def check(file, explain, witness, circulation, as_json):
    """Decide FILE with the kernel iteration."""
    started = time.perf_counter()
    spec = _load(file)
    verdict = decide(spec)
    rep = check_report(spec, verdict, explain=explain)
    if witness and spec.topology == "symmetric":
        naive = naive_decide(spec.transitions, m=spec.m)
        rep["witness"] = witness_report(spec, naive, None)
        for key in ("tool", "version", "command", "protocol"):
            rep["witness"].pop(key)
    if circulation is not None and verdict.livelock:
        a_max, k_max = circulation
        if a_max < 2 or k_max < 2:
            raise click.BadParameter("A_MAX and K_MAX must be >= 2", param_hint="--circulation")
        result = circulation_search(h_relation(verdict.kernel), build_e(verdict.kernel), a_max, k_max)
        rep["circulation"] = {"pairs": [list(p) for p in result.pairs_found], "ring_sizes": result.ring_sizes}
    _emit(rep, as_json, started)
    sys.exit(EXIT_LIVELOCK if verdict.livelock else EXIT_FREE)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--k", "k", type=int, default=None, help="Check one ring size.")
@click.option("--scan", nargs=2, type=int, default=None, metavar="K_MIN K_MAX", help="Check a range of ring sizes.")
@json_option
def oracle(file, k, scan, as_json):
    """Explicit-state livelock check of FILE on concrete rings."""
    started = time.perf_counter()
    if (k is None) == (scan is None):
        raise click.UsageError("give exactly one of --k or --scan")
    lo, hi = (k, k) if k is not None else scan
    if lo < 2 or hi < lo:
        raise click.BadParameter("ring sizes must satisfy 2 <= K_MIN <= K_MAX")
    spec = _load(file)
    result = oracle_scan(spec, lo, hi)
    _emit(oracle_report(spec, result), as_json, started)
    if result.any_livelock:
        sys.exit(EXIT_LIVELOCK)
    if result.undecided_ks:
        sys.exit(EXIT_UNDECIDED)
    sys.exit(EXIT_FREE)


@main.command()
@click.argument("name")
@click.option("--m", "m", type=int, default=3, show_default=True)
def gen(name, m):
    """Print the protocol file for a benchmark protocol NAME."""
    if name not in GENERATORS:
        click.echo(f"unknown protocol {name!r}; known: {', '.join(GENERATORS)}", err=True)
        sys.exit(EXIT_INPUT)
    try:
        spec = generate(name, m)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_INPUT)
    click.echo(emit_protocol(spec), nl=False)


@main.command()
@click.option("--count", type=int, default=500, show_default=True)
@click.option("--m", "m_max", type=int, default=3, show_default=True, help="Largest domain size drawn.")
@click.option("--tmax", type=int, default=6, show_default=True, help="Largest protocol size drawn.")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--kmax", "k_max", type=int, default=6, show_default=True, help="Largest ring size scanned by the oracle.")
@click.option("--inject-fault", is_flag=True, hidden=True)
@json_option
def fuzz(count, m_max, tmax, seed, k_max, inject_fault, as_json):
    """Differential test: kernel iteration vs naive decider vs oracle."""
    started = time.perf_counter()
    if m_max < 2:
        raise click.BadParameter("--m must be >= 2")
    kwargs = {"step": mutated_phi} if inject_fault else {}
    summary = run_fuzz(count, m_max, tmax, seed, k_max, **kwargs)
    _emit(fuzz_report(summary), as_json, started)
    sys.exit(EXIT_FREE if summary.ok else EXIT_DISAGREE)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--max-len", type=int, default=None, help="Longest cycle enumerated (default |T|).")
@click.option("--all-cycles", is_flag=True, help="Also list every simple cycle of H(T).")
@json_option
def witness(file, max_len, all_cycles, as_json):
    """Simple cycles and enabling walks of a symmetric protocol."""
    started = time.perf_counter()
    spec = _load(file)
    if spec.topology != "symmetric":
        click.echo("witness needs a symmetric protocol", err=True)
        sys.exit(EXIT_INPUT)
    naive = naive_decide(spec.transitions, max_len, m=spec.m)
    listed = enumerate_simple_cycles(build_h(spec.transitions), max_len) if all_cycles else None
    _emit(witness_report(spec, naive, listed), as_json, started)
    sys.exit(EXIT_LIVELOCK if naive.livelock else EXIT_FREE)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--a-max", type=int, default=None, help="Largest H exponent (default |L*|^2).")
@click.option("--k-max", type=int, default=8, show_default=True)
@click.option("--oracle-kmax", type=int, default=None, help="Also scan K=2..N with the oracle for the minimum K.")
@json_option
def circulation(file, a_max, k_max, oracle_kmax, as_json):
    """Dump (a, K) pairs with H*^a & E*^K nonempty for a symmetric kernel."""
    started = time.perf_counter()
    spec = _load(file)
    if spec.topology != "symmetric":
        click.echo("circulation needs a symmetric protocol", err=True)
        sys.exit(EXIT_INPUT)
    verdict = decide(spec)
    if not verdict.livelock:
        click.echo("kernel is empty (FREE): no circulation to search", err=True)
        sys.exit(EXIT_INPUT)
    try:
        result = circulation_search(h_relation(verdict.kernel), build_e(verdict.kernel), a_max, k_max)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_INPUT)
    if oracle_kmax is not None:
        scan = oracle_scan(spec, 2, max(2, oracle_kmax))
        result = dataclasses.replace(result, oracle_min_k=scan.min_k)
    _emit(circulation_report(spec, verdict.kernel, result), as_json, started)
    sys.exit(EXIT_LIVELOCK)


if __name__ == "__main__":
    main()
