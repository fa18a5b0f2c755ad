"""
Command-line interface.

Usage:
    g2period analyze --preset a058231 --prime 7
    g2period analyze --preset a058231 --pmax 400 --format csv
    g2period sequence --preset a058231 --from 0 --to 12
    g2period screen --preset a058231
    g2period verify --preset a058231 --pmax 100
    g2period stats --preset a058231 --pmax 400

Exit codes: 0 success, 1 a consistency check failed, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from typing import Callable

import click

from .config import ConfigError, JobConfig, select_primes
from .curve import (BAD_REDUCTION, DegenerateSeedError, discriminant, excluded_primes,
                    factorize, screen_prime)
from .periodicity import CHECK_NAMES, PeriodReport, analyze_many, d_statistics
from .sequence import SequenceError, exact_sequence
from .verify import run_all

TABLE_FIELDS = ("p", "jac_order", "ord", "per", "ratio", "alpha", "beta")


def report_row(rep: PeriodReport) -> dict:
    row = {
        "p": rep.p, "jac_order": rep.jac_order, "ord": rep.r, "per": rep.period,
        "ratio": rep.ratio, "alpha": rep.alpha, "beta": rep.beta,
        "status": rep.status, "best_effort": rep.best_effort,
    }
    row.update({f"check:{k}": rep.checks[k] for k in CHECK_NAMES})
    return row


def _cell(v) -> str:
    return "" if v is None else str(v).lower() if isinstance(v, bool) else str(v)


def emit_table(reports: list[PeriodReport]) -> str:
    lines = [" | ".join(TABLE_FIELDS)]
    notes = []
    for rep in reports:
        row = report_row(rep)
        lines.append(" | ".join(_cell(row[k]) for k in TABLE_FIELDS))
        if rep.status != "good":
            notes.append(f"  {rep.p}: {rep.status} ({', '.join(rep.reasons)})")
        for name in rep.failed_checks():
            notes.append(f"  {rep.p}: check {name} failed"
                         + (" (best-effort prime)" if rep.best_effort else ""))
    if notes:
        lines.append("")
        lines.append("notes:")
        lines.extend(notes)
    return "\n".join(lines) + "\n"


def emit_csv(reports: list[PeriodReport]) -> str:
    buf = io.StringIO()
    rows = [report_row(r) for r in reports]
    fields = list(rows[0]) if rows else list(TABLE_FIELDS)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: _cell(v) for k, v in row.items()})
    return buf.getvalue()


def emit_json(reports: list[PeriodReport]) -> str:
    out = []
    for r in reports:
        row = report_row(r)
        obj = {k: row[k] for k in (*TABLE_FIELDS, "status", "best_effort")}
        obj["d"] = r.d
        obj["reasons"] = list(r.reasons)
        obj["period_method"] = r.period_method
        obj["checks"] = dict(r.checks)
        obj["notes"] = r.notes
        out.append(obj)
    return json.dumps(out, indent=2) + "\n"


EMITTERS: dict[str, Callable[[list[PeriodReport]], str]] = {
    "table": emit_table, "csv": emit_csv, "json": emit_json,
}


def _source_options(f):
    for opt in reversed([
        click.option("--preset", help="Built-in curve, point and seed (a058231)."),
        click.option("--curve", help="a4,a3,a2,a1,a0 of F(X) = X^5 + a4 X^4 + ... + a0."),
        click.option("--point", help="x,y of the integral point."),
        click.option("--seed-file", type=click.Path(exists=True, dir_okay=False),
                     help="key=value file with x and c4..c9."),
        click.option("--cap-exact", type=int, default=300, show_default=True,
                     help="Largest index computed in exact arithmetic."),
    ]):
        f = opt(f)
    return f


def _prime_options(f):
    f = click.option("--pmax", type=int, default=None, help="All primes up to N.")(f)
    f = click.option("--primes", default=None, help="Comma-separated primes.")(f)
    return click.option("--prime", type=int, default=None, help="A single prime.")(f)


def _jobs_option(f):
    return click.option("--jobs", type=int, default=None,
                        help="Worker processes (default: number of processors).")(f)


def _config(preset, curve, point, seed_file, cap_exact, **rest) -> JobConfig:
    try:
        return JobConfig.build(preset=preset, curve=curve, point=point, seed_file=seed_file,
                               cap_exact=cap_exact, **rest)
    except (ConfigError, SequenceError, ValueError) as exc:
        raise click.UsageError(str(exc)) from None


def _primes(prime, primes, pmax) -> list[int]:
    try:
        return select_primes(prime, primes, pmax)
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from None


def _jobs(jobs: int | None) -> int:
    return jobs if jobs is not None else (os.cpu_count() or 1)


@click.group()
def cli():
    """Periods of genus-2 division-polynomial sequences modulo primes."""


@cli.command("analyze")
@_source_options
@_prime_options
@click.option("--format", "fmt", type=click.Choice(list(EMITTERS)), default="table",
              show_default=True)
@click.option("--mode", type=click.Choice(["strict", "best-effort"]), default="strict",
              show_default=True)
@click.option("--cap-brute", type=int, default=None, help="Step limit for brute-force periods.")
@_jobs_option
def cmd_analyze(preset, curve, point, seed_file, cap_exact, prime, primes, pmax, fmt, mode,
                cap_brute, jobs):
    """Per-prime |Jac|, ord, period, ratio, alpha, beta."""
    cfg = _config(preset, curve, point, seed_file, cap_exact)
    plist = _primes(prime, primes, pmax)
    kw = dict(brute_cap=cap_brute, exact_cap=cfg.cap_exact)
    reports = analyze_many(cfg.curve, cfg.point, cfg.seed, plist, jobs=_jobs(jobs), **kw)
    if mode == "strict":
        # fail fast: nothing past the first good prime whose checks fail
        for i, rep in enumerate(reports):
            if not rep.best_effort and rep.failed_checks():
                reports = reports[:i + 1]
                break
    click.echo(EMITTERS[fmt](reports), nl=False)
    failed = [r for r in reports if not r.best_effort and r.failed_checks()]
    if failed:
        click.echo(f"check failures at good primes: {', '.join(str(r.p) for r in failed)}",
                   err=True)
        sys.exit(1)


@cli.command("sequence")
@_source_options
@click.option("--from", "n_from", type=int, default=0, show_default=True)
@click.option("--to", "n_to", type=int, default=9, show_default=True)
def cmd_sequence(preset, curve, point, seed_file, cap_exact, n_from, n_to):
    """Exact terms c_n, one 'n value' pair per line."""
    cfg = _config(preset, curve, point, seed_file, cap_exact)
    if max(abs(n_from), abs(n_to)) > cfg.cap_exact:
        raise click.UsageError(f"indices must lie within the exact cap {cfg.cap_exact}")
    seq = exact_sequence(cfg.seed, cfg.cap_exact)
    try:
        for n in range(n_from, n_to + 1):
            click.echo(f"{n} {seq[n]}")
    except SequenceError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(1)


@cli.command("screen")
@_source_options
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table",
              show_default=True)
def cmd_screen(preset, curve, point, seed_file, cap_exact, fmt):
    """Primes where the period formula is not guaranteed, with reasons."""
    cfg = _config(preset, curve, point, seed_file, cap_exact)
    try:
        plist = excluded_primes(cfg.curve, cfg.seed)
    except DegenerateSeedError as exc:
        click.echo(f"error: degenerate seed: {exc}", err=True)
        sys.exit(1)
    disc = discriminant(cfg.curve)
    rows = []
    for p in plist:
        scr = screen_prime(cfg.curve, cfg.seed, p)
        rows.append({"p": p, "status": scr.status, "reasons": list(scr.reasons),
                     "divides": list(scr.divides), "weak_good": scr.weak_good})
    if fmt == "json":
        click.echo(json.dumps({"discriminant": disc, "excluded": rows}, indent=2))
        return
    sign = "-" if disc < 0 else ""
    fac = " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in factorize(disc).items())
    click.echo(f"disc(F) = {disc} = {sign}{fac}")
    for row in rows:
        what = ", ".join(f"divides {x}" for x in row["divides"])
        if row["status"] == BAD_REDUCTION:
            what = ", ".join(filter(None, ["divides disc", what]))
        if row["status"] == "char-two":
            what = "char-two"
        click.echo(f"{row['p']}: {row['status']}; {what}")


@cli.command("verify")
@_source_options
@click.option("--pmax", type=int, default=100, show_default=True)
@_jobs_option
def cmd_verify(preset, curve, point, seed_file, cap_exact, pmax, jobs):
    """Run the sequence, group-law, theta and periodicity suites."""
    cfg = _config(preset, curve, point, seed_file, cap_exact)
    results = run_all(cfg.curve, cfg.point, cfg.seed, pmax, cfg.cap_exact, _jobs(jobs))
    for res in results:
        click.echo(f"{res.name}: {res.passed} passed, {res.failed} failed, "
                   f"{res.expected_fail} expected-fail")
        for msg in res.messages:
            click.echo(f"  {msg}")
    if not all(r.ok for r in results):
        sys.exit(1)


@cli.command("stats")
@_source_options
@click.option("--pmax", type=int, default=400, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table",
              show_default=True)
@_jobs_option
def cmd_stats(preset, curve, point, seed_file, cap_exact, pmax, fmt, jobs):
    """Distribution of d = Per / ord over primes up to --pmax."""
    cfg = _config(preset, curve, point, seed_file, cap_exact)
    st = d_statistics(cfg.curve, cfg.point, cfg.seed, pmax, jobs=_jobs(jobs))
    if fmt == "json":
        click.echo(json.dumps(st, indent=2))
        return
    click.echo("p | d | (p-1)/d")
    for p, d in st["d"].items():
        click.echo(f"{p} | {d} | {(p - 1) // d if (p - 1) % d == 0 else ''}")
    click.echo(f"good primes: {len(st['good_primes'])}")
    click.echo(f"d = 1: {', '.join(map(str, st['d_equals_1']))}")
    click.echo(f"d = p - 1: {', '.join(map(str, st['d_equals_p_minus_1']))}")
    click.echo(f"excluded primes with d: {', '.join(map(str, st['excluded_with_d']))}")
    click.echo("histogram of d/(p-1) over good primes:")
    for k, v in st["histogram"].items():
        click.echo(f"  {k}: {v}")


def main():
    cli(prog_name="g2period")


if __name__ == "__main__":
    main()
