"""Command-line front end.

Exit code contract: 0 when every checked identity passes at the requested
tolerance, 1 on verification failure, 2 on usage or data errors.
"""
from __future__ import annotations

import json
import sys

import click

from . import __version__
from .compat import full_verdict
from .dataset import DatasetFormatError, load_dataset
from .examples import (
    build_ekt_immersion,
    build_sphere_product,
    build_sphere_product_hypersurface,
)
from .family import SurfaceRecord, sweep_angles, torus_base, verify_family
from .linalg import DEFAULT_TOL
from .report import ResidualReport
from .structures import MetallicParams
from .submanifold import check_hypersurface_relations

BUILTIN_NAMES = ("sphere-product", "sphere-product-hypersurface", "ekt")


def _echo_report(title: str, report: ResidualReport) -> None:
    click.echo(f"== {title} (tol {report.tol:g}) ==")
    for name, residual in report.entries:
        status = "ok" if residual <= report.tol else "FAIL"
        click.echo(f"  {name:<32} {residual:12.3e}  {status}")
    click.echo(f"  verdict: {report.verdict} (max residual {report.max_residual:.3e})")


def _report_json(report: ResidualReport) -> dict:
    return report.to_dict()


def _data_error(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
@click.version_option(__version__)
def main():
    """Verify pointwise identities of structured immersion data."""


@main.group()
def verify():
    """Run verification suites."""


def _build_builtin(name, p, q, a, b, kappa, tau, n1, n2, c1, c2):
    """Returns (title, record, extra_reports) for a built-in example."""
    try:
        if name == "sphere-product":
            if c1 <= 0 or c2 <= 0:
                raise ValueError("c1 and c2 must be positive for sphere products")
            mp = MetallicParams(p, q)
            record = build_sphere_product(n1, n2, c1, c2, mp)
            return f"sphere-product n1={n1} n2={n2}", record, []
        if name == "sphere-product-hypersurface":
            if c1 <= 0:
                raise ValueError("c1 must be positive")
            mp = MetallicParams(p, q)
            hyp, record = build_sphere_product_hypersurface(n1, n2, c1, c2, mp)
            extra = [("hypersurface relations", check_hypersurface_relations(hyp))]
            return f"sphere-product-hypersurface n1={n1} n2={n2}", record, extra
        if name == "ekt":
            if tau == 0:
                raise ValueError("tau must be nonzero")
            hyp, record = build_ekt_immersion(kappa, tau, a, b)
            extra = [("hypersurface relations", check_hypersurface_relations(hyp))]
            return f"ekt kappa={kappa:g} tau={tau:g}", record, extra
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    raise click.UsageError(f"unknown builtin {name!r}")


@verify.command("builtin")
@click.argument("name", type=click.Choice(BUILTIN_NAMES))
@click.option("--p", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=1.0, show_default=True)
@click.option("--a", type=float, default=2.0, show_default=True)
@click.option("--b", type=float, default=2.0, show_default=True)
@click.option("--kappa", type=float, default=0.0, show_default=True)
@click.option("--tau", type=float, default=1.0, show_default=True)
@click.option("--n1", type=int, default=2, show_default=True)
@click.option("--n2", type=int, default=2, show_default=True)
@click.option("--c1", type=float, default=1.0, show_default=True)
@click.option("--c2", type=float, default=1.0, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
def verify_builtin(name, p, q, a, b, kappa, tau, n1, n2, c1, c2, tol):
    """Build a named example and run every compatibility check on it."""
    title, record, extra = _build_builtin(name, p, q, a, b, kappa, tau, n1, n2, c1, c2)
    report = full_verdict(record, tol=tol)
    for extra_title, extra_report in extra:
        report = report.merged(
            ResidualReport(extra_report.entries, tol=tol), prefix="hyp:"
        )
    _echo_report(title, report)
    sys.exit(0 if report.passed else 1)


@verify.command("dataset")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write a structured JSON report to this file.")
def verify_dataset(file, tol, out):
    """Verify every record of a JSON dataset."""
    try:
        records = load_dataset(file)
    except (DatasetFormatError, OSError) as exc:
        _data_error(str(exc))
    reports = [full_verdict(record, tol=tol) for record in records]
    for index, report in enumerate(reports):
        _echo_report(f"record {index}", report)
        for name, residual in report.failures():
            click.echo(f"  offending identity: {name} (residual {residual:.3e})")
    passed = sum(1 for r in reports if r.passed)
    click.echo(f"{passed}/{len(reports)} records pass at tol {tol:g}")
    if out is not None:
        doc = {
            "tool": {"name": "metallicgeo", "version": __version__, "tolerance": tol},
            "records": [_report_json(r) for r in reports],
            "summary": {
                "passed": passed,
                "failed": len(reports) - passed,
                "max_residual": max((r.max_residual for r in reports), default=0.0),
            },
        }
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
        click.echo(f"report written to {out}")
    sys.exit(0 if passed == len(reports) else 1)


@main.command("family-sweep")
@click.argument("base")
@click.option("--thetas", type=int, default=24, show_default=True,
              help="Number of evenly spaced angles on [0, 2*pi).")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--p", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=1.0, show_default=True)
@click.option("--c1", type=float, default=1.0, show_default=True)
@click.option("--c2", type=float, default=1.0, show_default=True)
def family_sweep(base, thetas, tol, p, q, c1, c2):
    """Verify the rotation family of a surface record.

    BASE is either the name "torus" (built-in circle-product base) or the
    path of a dataset whose first record is two-dimensional.
    """
    if thetas < 1:
        raise click.UsageError("--thetas must be at least 1")
    import numpy as np

    try:
        if base == "torus":
            surface = torus_base(c1, c2, MetallicParams(p, q))
        else:
            try:
                records = load_dataset(base)
            except (DatasetFormatError, OSError) as exc:
                _data_error(str(exc))
            if not records:
                _data_error("dataset contains no records")
            surface = SurfaceRecord(
                record=records[0], Jt=np.array([[0.0, -1.0], [1.0, 0.0]])
            )
    except ValueError as exc:
        _data_error(str(exc))
    report = verify_family(surface, sweep_angles(thetas), tol=tol)
    _echo_report(f"family sweep ({thetas} angles)", report)
    sys.exit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
