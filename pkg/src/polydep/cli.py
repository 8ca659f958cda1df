"""Command-line front end.

Exit codes: 0 holds / success, 1 does not hold, 2 error.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from .checks import equivalence_suite
from .dependence import dep
from .derivation import derive as derive_trace
from .derivation import parse_trace, verify_trace
from .errors import DerivationError, GraphError, ParseError, PolydepError
from .gaussian import FaithfulnessReport, faithfulness_report, random_model
from .graph import random_directed_tree, random_polytree, validate_polytree
from .graphoid import Statement, cwt_closure
from .separation import check_triple, sep_dag
from .text import format_graph_file, parse_graph_file, parse_query

HOLDS, DOES_NOT_HOLD, ERROR = 0, 1, 2


def _emit_json(doc):
    click.echo(json.dumps(doc, indent=2))


def _command(name):
    """Shared ``--json`` flag and uniform error reporting with exit code 2."""

    def wrap(fn):
        @click.option("--json", "as_json", is_flag=True, help="Emit a JSON document on stdout.")
        @click.pass_context
        @functools.wraps(fn)
        def inner(ctx, as_json, **kwargs):
            as_json = as_json or ctx.obj.get("json", False)
            try:
                code = fn(as_json=as_json, **kwargs)
            except PolydepError as exc:
                line = getattr(exc, "line", None)
                column = getattr(exc, "column", None)
                if as_json:
                    _emit_json({"command": name, "error": {"message": str(exc), "line": line, "column": column}})
                else:
                    click.echo(f"error: {exc}", err=True)
                ctx.exit(ERROR)
            ctx.exit(code or 0)

        return inner

    return wrap


def _read(path) -> str:
    try:
        with click.open_file(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(path, polytree: bool):
    text = _read(path)
    return parse_graph_file(text, polytree=polytree)


def _ensure_polytree(g):
    try:
        return validate_polytree(g)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def _query_dict(q):
    return {"kind": q.kind, "x": list(q.x), "y": list(q.y), "z": list(q.z)}


def _witness_dict(pt, w):
    if w is None:
        return None
    return {
        "a": pt.name(w.a),
        "b": pt.name(w.b),
        "path": w.path.names(pt),
        "colliders": [{"node": pt.name(c), "via": None if d is None else pt.name(d)} for c, d in w.justification],
    }


@click.group()
@click.option("--json", "as_json", is_flag=True, help="JSON output for every command.")
@click.pass_context
def cli(ctx, as_json):
    """Read dependencies from polytree-shaped Bayesian networks."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json


@cli.command()
@click.argument("graph", type=click.Path(allow_dash=True))
@click.argument("query")
@_command("check")
def check(graph, query, as_json):
    """Decide QUERY (sep, dep, closure or derive) on GRAPH."""
    q = parse_query(query)
    g = _load_graph(graph, polytree=False)
    X, Y, Z = q.resolve(g)
    X, Y, Z = check_triple(g, X, Y, Z)
    witness = None
    if q.kind == "sep":
        holds = sep_dag(g, X, Y, Z)
    else:
        pt = _ensure_polytree(g)
        if q.kind == "dep":
            witness = dep(pt, X, Y, Z)
            holds = witness is not None
        elif q.kind == "closure":
            holds = Statement.dependence(X, Y, Z) in cwt_closure(pt)
        else:
            try:
                holds = bool(verify_trace(pt, derive_trace(pt, X, Y, Z)))
            except DerivationError:
                holds = False
    if as_json:
        doc = {"command": "check", "query": _query_dict(q), "holds": holds, "witness": None}
        if witness is not None:
            doc["witness"] = _witness_dict(pt, witness)
        _emit_json(doc)
    else:
        click.echo("HOLDS" if holds else "DOES-NOT-HOLD")
        if witness is not None:
            click.echo(f"witness: {witness.describe(pt)}")
    return HOLDS if holds else DOES_NOT_HOLD


@cli.command()
@click.argument("graph", type=click.Path(allow_dash=True))
@_command("closure")
def closure(graph, as_json):
    """Print the closure of the dependence base, one statement per line."""
    pt = _load_graph(graph, polytree=True)
    stmts = sorted(cwt_closure(pt))
    if as_json:
        _emit_json({"command": "closure", "count": len(stmts), "statements": [s.to_dict(pt) for s in stmts]})
    else:
        for s in stmts:
            click.echo(s.format(pt))
    return HOLDS


@cli.command()
@click.argument("graph", type=click.Path(allow_dash=True))
@click.argument("query")
@_command("derive")
def derive(graph, query, as_json):
    """Print a numbered derivation of a dep-certified QUERY."""
    q = parse_query(query)
    pt = _load_graph(graph, polytree=True)
    X, Y, Z = q.resolve(pt)
    X, Y, Z = check_triple(pt, X, Y, Z)
    try:
        trace = derive_trace(pt, X, Y, Z)
    except DerivationError as exc:
        if as_json:
            _emit_json({"command": "derive", "query": _query_dict(q), "holds": False, "trace": None, "verified": False})
        else:
            click.echo(f"DOES-NOT-HOLD: {exc}")
        return DOES_NOT_HOLD
    verdict = verify_trace(pt, trace)
    if as_json:
        _emit_json(
            {
                "command": "derive",
                "query": _query_dict(q),
                "holds": True,
                "trace": trace.to_dict(),
                "verified": verdict.ok,
            }
        )
    else:
        click.echo(trace.format(), nl=False)
    return HOLDS if verdict else ERROR


@cli.command()
@click.argument("graph", type=click.Path(allow_dash=True))
@click.argument("trace", type=click.Path(allow_dash=True))
@_command("verify")
def verify(graph, trace, as_json):
    """Re-check a derivation TRACE (text form) against GRAPH."""
    pt = _load_graph(graph, polytree=True)
    text = _read(trace)
    verdict = verify_trace(pt, parse_trace(pt, text))
    if as_json:
        _emit_json({"command": "verify", "ok": verdict.ok, "step": verdict.step, "reason": verdict.reason})
    elif verdict:
        click.echo("VALID")
    else:
        where = f"step {verdict.step}: " if verdict.step is not None else ""
        click.echo(f"INVALID: {where}{verdict.reason}")
    return HOLDS if verdict else DOES_NOT_HOLD


@cli.command()
@click.option("--nodes", "n", type=click.IntRange(min=1), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--directed-tree", is_flag=True, help="Orient edges away from a random root.")
@_command("gen")
def gen(n, seed, directed_tree, as_json):
    """Print a random polytree as a graph file."""
    g = random_directed_tree(n, seed) if directed_tree else random_polytree(n, seed)
    if as_json:
        _emit_json(
            {
                "command": "gen",
                "nodes": list(g.names),
                "edges": [{"parent": g.name(p), "child": g.name(c)} for p, c in g.edges],
            }
        )
    else:
        click.echo(format_graph_file(g), nl=False)
    return HOLDS


@cli.command("gaussian-validate")
@click.argument("graph", type=click.Path(allow_dash=True), required=False)
@click.option("--models", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--graphs", type=click.IntRange(min=1), default=1, show_default=True, help="Random polytrees when GRAPH is omitted.")
@click.option("--nodes", "n", type=click.IntRange(min=1, max=8), default=8, show_default=True)
@click.option("--zero-tol", type=float, default=1e-9, show_default=True)
@click.option("--dep-tol", type=float, default=1e-7, show_default=True)
@_command("gaussian-validate")
def gaussian_validate(graph, models, seed, graphs, n, zero_tol, dep_tol, as_json):
    """Compare sep/dep with exact partial correlations of random linear-Gaussian models."""
    if graph is not None:
        trees = [_load_graph(graph, polytree=True)]
    else:
        trees = [random_polytree(n, seed + k) for k in range(graphs)]
    total = FaithfulnessReport()
    for gi, pt in enumerate(trees):
        for m in range(models):
            total.merge(faithfulness_report(pt, random_model(pt, seed * 1_000_003 + gi * models + m), zero_tol, dep_tol))
    if as_json:
        _emit_json(
            {
                "command": "gaussian-validate",
                "graphs": len(trees),
                "models": models,
                "zero_tol": zero_tol,
                "dep_tol": dep_tol,
                "report": total.to_dict(),
            }
        )
    else:
        click.echo(f"graphs: {len(trees)}  models per graph: {models}")
        click.echo(f"sep triples: {total.n_sep}  max |rho|: {total.max_sep_abs:.3e}  (tol {zero_tol:g})")
        min_dep = f"{total.min_dep_abs:.3e}" if total.n_dep else "n/a"
        click.echo(f"dep triples: {total.n_dep}  min |rho|: {min_dep}  (tol {dep_tol:g})")
        click.echo(f"neither: {total.n_neither}")
        click.echo(f"violations: {len(total.violations)}")
        for v in total.violations[:20]:
            click.echo(f"  {v['class']} {v['a']},{v['b']} | {','.join(v['z'])}: rho={v['rho']:.3e}")
    return HOLDS if total.ok else DOES_NOT_HOLD


@cli.command()
@click.option("--graphs", type=click.IntRange(min=1), default=300, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_command("selftest")
def selftest(graphs, seed, as_json):
    """Check dep against the closure oracle on random polytrees with 3-5 nodes."""
    res = equivalence_suite(graphs, seed=seed)
    if as_json:
        _emit_json(
            {"command": "selftest", "graphs": res.graphs, "triples": res.triples, "mismatches": res.mismatches, "ok": res.ok}
        )
    else:
        click.echo(f"graphs: {res.graphs}  triples: {res.triples}  mismatches: {len(res.mismatches)}")
        for line in res.mismatches[:20]:
            click.echo(f"  {line}")
        click.echo("PASS" if res.ok else "FAIL")
    return HOLDS if res.ok else DOES_NOT_HOLD


def main(argv=None):
    cli.main(args=argv, prog_name="polydep", obj={})


if __name__ == "__main__":
    sys.exit(main())
