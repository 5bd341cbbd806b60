"""Command line: ``compute``, ``verify`` and ``gen``.

Exit codes: 0 ok, 1 usage error, 2 solver failure, 3 failed verification.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .bounds import (best_hoffman_over_A, best_xi_over_A, hoffman, hoffman_via_sdp, luz,
                     perron_bound, ratio_bound_closed_form, theta, xi)
from .config import tolerances
from .errors import NotApplicableError, NumericalError
from .graph import (GeneralizedAdjacency, adjacency_matrix, generate, parse_graph,
                    parse_weights, random_generalized_adjacency, render_graph)
from .oracles import alpha, chi_f
from .results import BoundResult
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3

MATRIX_BOUNDS = ("hoffman", "hoffman_sdp", "xi", "luz", "ratio")
GRAPH_BOUNDS = ("theta", "theta_prime", "theta_plus", "alpha", "chif", "perron",
                "best_xi", "best_hoffman")
BOUNDS = MATRIX_BOUNDS + GRAPH_BOUNDS

DEFAULTS = {"tol": 1e-7, "seed": 0, "fmt": "table", "budget": 200}


# ----------------------------------------------------------------------------
# input sources


def load_graph(source: str):
    if source.startswith("gen:"):
        return generate(source[4:])
    path = Path(source)
    if not path.is_file():
        raise click.BadParameter(f"no such graph file: {source}", param_hint="--graph")
    text = path.read_text()
    fmt = "dimacs" if any(l.lstrip().startswith("p ") for l in text.splitlines()) else "edge-list"
    return parse_graph(text, fmt)


def load_weights(source: str, n: int):
    if source == "uniform":
        return np.ones(n)
    if source.startswith("file:"):
        path = Path(source[5:])
        if not path.is_file():
            raise click.BadParameter(f"no such weights file: {path}", param_hint="--weights")
        return parse_weights(path.read_text(), n)
    return parse_weights(source.replace(",", " "), n)


def load_matrix(source: str, g):
    """``adjacency``, ``neg-adjacency``, ``file:PATH`` or ``random:SEED[:nonneg]``."""
    if source == "adjacency":
        return adjacency_matrix(g)
    if source == "neg-adjacency":
        return adjacency_matrix(g).scaled(-1.0)
    if source.startswith("file:"):
        path = Path(source[5:])
        if not path.is_file():
            raise click.BadParameter(f"no such matrix file: {path}", param_hint="--matrix")
        return GeneralizedAdjacency(g, np.loadtxt(path, ndmin=2))
    if source.startswith("random:"):
        parts = source.split(":")
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "nonneg"):
            raise click.BadParameter("expected random:SEED or random:SEED:nonneg", param_hint="--matrix")
        try:
            seed = int(parts[1])
        except ValueError:
            raise click.BadParameter("random seed must be an integer", param_hint="--matrix") from None
        return random_generalized_adjacency(g, len(parts) == 3, seed)
    raise click.BadParameter(f"unknown matrix source {source!r}", param_hint="--matrix")


# ----------------------------------------------------------------------------
# output


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def report(g, source, bound, matrix, r: BoundResult) -> dict:
    return {
        "graph": {"n": g.n, "m": g.m, "source": source},
        "bound": bound,
        "matrix": matrix,
        "value": "inf" if r.is_infinite else r.value,
        "gap": r.gap,
        "iterations": r.iterations,
        "certificate": _plain(r.certificate) if r.certificate else None,
    }


def _fmt(v):
    return v if isinstance(v, str) else f"{v:.7f}"


def _emit(payload, fmt, table_lines):
    if fmt == "json":
        click.echo(json.dumps(payload, allow_nan=False))
    else:
        for line in table_lines:
            click.echo(line)


# ----------------------------------------------------------------------------
# options shared by the group and every subcommand


def _global_options(f):
    f = click.option("--budget", type=int, default=None, help="Evaluation budget for searches.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "table"]), default=None)(f)
    f = click.option("--seed", type=int, default=None)(f)
    f = click.option("--tol", type=float, default=None, help="Relative duality-gap target.")(f)
    return f


def _settings(ctx, **local):
    out = dict(ctx.obj or DEFAULTS)
    out.update({k: v for k, v in local.items() if v is not None})
    if out["tol"] <= 0:
        raise click.BadParameter("must be positive", param_hint="--tol")
    if out["budget"] < 1:
        raise click.BadParameter("must be positive", param_hint="--budget")
    return out


@click.group()
@_global_options
@click.pass_context
def cli(ctx, tol, seed, fmt, budget):
    """Spectral and semidefinite bounds on weighted graph parameters."""
    ctx.obj = dict(DEFAULTS)
    ctx.obj.update({k: v for k, v in dict(tol=tol, seed=seed, fmt=fmt, budget=budget).items()
                    if v is not None})


def _compute(bound, g, w, a, s):
    tol = tolerances(gap_tol=s["tol"])
    if bound == "hoffman":
        return hoffman(a, w)
    if bound == "hoffman_sdp":
        return hoffman_via_sdp(a, w, tol)
    if bound == "xi":
        return xi(a, w, tol)
    if bound == "luz":
        return luz(a, w, gap_tol=max(s["tol"], 1e-9))
    if bound == "ratio":
        if not np.all(w == w[0]):
            raise NotApplicableError("the ratio bound is defined for uniform weights")
        return BoundResult("ratio", w[0] * ratio_bound_closed_form(a, tol=tol))
    if bound in ("theta", "theta_prime", "theta_plus"):
        return theta(g, w, bound, tol)
    if bound == "alpha":
        return alpha(g, w)
    if bound == "chif":
        return chi_f(g, w)
    if bound == "perron":
        if not np.all(w == 1.0):
            raise NotApplicableError("the Perron bound is defined for unit weights")
        return perron_bound(g)
    if bound == "best_xi":
        return best_xi_over_A(g, w, budget=s["budget"], seed=s["seed"])
    return best_hoffman_over_A(g, w, budget=s["budget"], seed=s["seed"])


@cli.command()
@click.option("--graph", "graph_src", required=True, help="gen:FAMILY[:ARGS] or a graph file.")
@click.option("--bound", type=click.Choice(BOUNDS), required=True)
@click.option("--matrix", "matrix_src", default="adjacency", show_default=True,
              help="adjacency | neg-adjacency | file:PATH | random:SEED[:nonneg]")
@click.option("--weights", "weights_src", default="uniform", show_default=True,
              help="uniform | file:PATH | comma-separated values")
@_global_options
@click.pass_context
def compute(ctx, graph_src, bound, matrix_src, weights_src, tol, seed, fmt, budget):
    """Compute one bound and print its value, gap and certificate."""
    s = _settings(ctx, tol=tol, seed=seed, fmt=fmt, budget=budget)
    g = load_graph(graph_src)
    w = load_weights(weights_src, g.n)
    a = load_matrix(matrix_src, g) if bound in MATRIX_BOUNDS else None
    r = _compute(bound, g, w, a, s)
    payload = report(g, graph_src, bound, matrix_src if a is not None else None, r)
    lines = [f"graph       {graph_src} (n={g.n}, m={g.m})",
             f"bound       {bound}" + (f" [{matrix_src}]" if a is not None else ""),
             f"value       {_fmt(payload['value'])}",
             f"gap         {_fmt(payload['gap'])}",
             f"iterations  {payload['iterations']}"]
    if r.certificate:
        lines.append("certificate " + ", ".join(sorted(r.certificate)))
    _emit(payload, s["fmt"], lines)


@cli.command()
@click.option("--graph", "graph_src", required=True)
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@click.option("--eps", type=float, default=1e-6, show_default=True, help="Slack for inequalities.")
@_global_options
@click.pass_context
def verify(ctx, graph_src, suite, eps, tol, seed, fmt, budget):
    """Run a suite of named checks; exit 3 if any fails."""
    s = _settings(ctx, tol=tol, seed=seed, fmt=fmt, budget=budget)
    g = load_graph(graph_src)
    checks = run_suite(suite, g, seed=s["seed"], eps=eps, budget=s["budget"])
    ok = all(c.passed for c in checks)
    payload = {"graph": {"n": g.n, "m": g.m, "source": graph_src}, "suite": suite,
               "passed": ok, "checks": [_plain(c.as_dict()) for c in checks]}
    width = max((len(c.name) for c in checks), default=0)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  worst {c.worst: .7f}  (n={c.count})"
             + (f"  {c.note}" if c.note else "") for c in checks]
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    _emit(payload, s["fmt"], lines)
    if not ok:
        ctx.exit(EXIT_VERIFY)


@cli.command()
@click.argument("family")
@click.option("--output-format", type=click.Choice(["dimacs", "edge-list"]), default="dimacs")
def gen(family, output_format):
    """Print a generated graph, e.g. ``petersen``, ``cycle:7``, ``kneser:5:2``."""
    try:
        g = generate(family)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="FAMILY") from None
    click.echo(render_graph(g, output_format), nl=False)


def main(argv=None) -> int:
    try:
        code = cli.main(args=argv, prog_name="spectral-gauge", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except NumericalError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        return EXIT_SOLVER
    except (ValueError, OSError) as exc:  # parse errors, NotApplicable, capacity guards
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    # without standalone mode click returns ctx.exit codes instead of raising
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
