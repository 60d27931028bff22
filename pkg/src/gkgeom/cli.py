"""`gk` command line: run a verification suite and write its report.

Exit codes: 0 when every case passes, 1 when some case fails, 2 on usage errors.
"""
from __future__ import annotations

import csv
import io
import json
import sys
import time
from pathlib import Path

import click
import yaml

from . import suites as S

POS_INT = click.IntRange(min=1)
POS_REAL = click.FloatRange(min=0, min_open=True)


def _load_config(ctx, _param, value):
    if value is None:
        return None
    try:
        data = yaml.safe_load(Path(value).read_text()) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise click.BadParameter(str(exc))
    if not isinstance(data, dict):
        raise click.BadParameter("config must be a mapping of subcommand -> options")
    ctx.default_map = {k: v for k, v in data.items() if isinstance(v, dict)}
    return value


def _render(rep: S.SuiteReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.as_dict(), indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "id", "kind", "residual", "tolerance", "passed", "wall"])
    for c in rep.cases:
        w.writerow([rep.suite, c.id, c.kind, repr(c.residual), repr(c.tolerance), int(c.passed), f"{c.wall:.6f}"])
    return buf.getvalue()


def _finish(rep: S.SuiteReport, out, fmt: str, t0: float):
    rep.timing["total"] = time.perf_counter() - t0
    text = _render(rep, fmt)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    for c in rep.failures():
        click.echo(f"FAIL {rep.suite}: {c.id}: {c.residual:.3e} vs {c.tolerance:.1e}", err=True)
    click.echo(f"{rep.suite}: {'pass' if rep.passed else 'FAIL'} "
               f"({len(rep.cases) - len(rep.failures())}/{len(rep.cases)} cases)", err=True)
    sys.exit(0 if rep.passed else 1)


def _tol(tol):
    return tol if tol is not None else S.env_tol()


def common(f):
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)(f)
    f = click.option("--out", type=click.Path(dir_okay=False), help="Report path (stdout if omitted).")(f)
    f = click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)(f)
    f = click.option("--tol", type=POS_REAL, default=None,
                     help=f"Override every residual tolerance (env {S.ENV_TOL}).")(f)
    return f


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", type=click.Path(exists=True, dir_okay=False), callback=_load_config,
              is_eager=True, expose_value=False, help="YAML file of per-subcommand defaults.")
def main():
    """Numerical verification suites for generalized Kahler geometry."""


@main.command()
@click.option("--seeds", type=POS_INT, default=100, show_default=True)
@click.option("--n", type=click.IntRange(1, 4), default=None, help="Complex dimension (all of 1..4 if omitted).")
@common
def point(seeds, n, seed, tol, out, fmt):
    """Pointwise GK axioms, Manin triples, Hitchin identity, reconstruction."""
    t0 = time.perf_counter()
    ns = (n,) if n else (1, 2, 3, 4)
    _finish(S.point_suite(seeds, ns, _tol(tol), seed), out, fmt, t0)


@main.command()
@click.option("--samples", type=POS_INT, default=20, show_default=True)
@click.option("--h", type=POS_REAL, default=1e-3, show_default=True)
@common
def group(samples, h, seed, tol, out, fmt):
    """GK structure on SU(2) x R, Cartan constant, dressing laws."""
    t0 = time.perf_counter()
    _finish(S.group_suite(samples, h, seed, _tol(tol)), out, fmt, t0)


@main.command()
@click.option("--seeds", type=POS_INT, default=50, show_default=True)
@common
def moduli(seeds, seed, tol, out, fmt):
    """Annulus moduli: form, groupoid structures, real structure, bisections."""
    t0 = time.perf_counter()
    _finish(S.moduli_suite(seeds, seed, _tol(tol)), out, fmt, t0)


@main.command()
@click.option("--grid", type=POS_INT, default=10, show_default=True)
@click.option("--grid-out", type=click.Path(dir_okay=False), default=None,
              help="Potential grid CSV (default: next to --out, else hopf_grid.csv).")
@common
def hopf(grid, grid_out, seed, tol, out, fmt):
    """Hopf surface potential, dilogarithm, Gr(psi)."""
    t0 = time.perf_counter()
    if grid_out is None:
        grid_out = Path(out).with_name(Path(out).stem + "_grid.csv") if out else Path("hopf_grid.csv")
    _finish(S.hopf_suite(grid, seed, _tol(tol), csv_path=grid_out), out, fmt, t0)


@main.command()
@click.option("--t", "t", type=POS_REAL, default=0.05, show_default=True)
@click.option("--eps", type=POS_REAL, default=0.1, show_default=True)
@click.option("--h", type=POS_REAL, default=1e-2, show_default=True)
@common
def deform(t, eps, h, seed, tol, out, fmt):
    """Commuting-type deformation by a Gaussian potential on flat C x C."""
    t0 = time.perf_counter()
    _finish(S.deform_suite(t, eps, h, seed, _tol(tol)), out, fmt, t0)


if __name__ == "__main__":
    main()
