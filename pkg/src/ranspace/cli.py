"""Command line surface: contract loops, verify homotopy certificates,
run the homology probe, and render JSON documents to SVG frames.

Exit codes: 0 success, 1 verification failure, 2 schema or size error,
3 ambiguous branching, 4 mode cap violation.
"""

from __future__ import annotations

import math
import os
import sys

import click

from .errors import AmbiguousBranching, ModeViolation, SchemaError, SizeLimit
from .homology import (
    DEFAULT_SIMPLEX_BUDGET,
    long_lived_h1_count,
    maxmin_subsample,
    rips_persistence_h1,
    sample_ran,
)
from .io import (
    dump,
    homotopy_from_json,
    homotopy_to_json,
    load,
    track_from_json,
)
from .moves import Inclusion, SimplyConnected, contract_pipeline
from .space import Circle, GraphPoint, MetricGraph
from .svg import render_homotopy, render_track
from .tracks import check_continuity


def _parse_basepoint(space, text: str):
    if isinstance(space, MetricGraph):
        try:
            edge, t = text.split(":")
            return space.canon(GraphPoint(int(edge), float(t)))
        except (ValueError, IndexError) as exc:
            raise click.BadParameter("graph basepoint must look like EDGE:T") from exc
    try:
        return space.canon(float(text))
    except ValueError as exc:
        raise click.BadParameter("basepoint must be a coordinate") from exc


@click.group()
def main():
    """Loop contraction and homology tooling for configuration spaces.

    Exit codes: 0 success; 1 verification or continuity-bound failure;
    2 schema or size-budget error; 3 ambiguous branching (no strand
    decomposition at the matching radius); 4 cardinality cap violation.
    """


@main.command("contract")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["inclusion", "simply-connected"]), default="inclusion", show_default=True)
@click.option("--cap", type=int, required=True, help="Strand cap n of the mode.")
@click.option("--basepoint", default="0.0", show_default=True, help="Contraction target; EDGE:T on graphs.")
@click.option("--resolution", nargs=2, type=int, default=(48, 128), show_default=True, metavar="R M")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--svg", "svg_dir", type=click.Path(file_okay=False), default=None, help="Also write one SVG frame per homotopy row.")
@click.option("--bound", type=float, default=math.inf, help="Continuity modulus the certificate must pass (default: report only).")
@click.option("--matching-radius", type=float, default=None, help="Strand matching radius override.")
def cmd_contract(input_path, mode, cap, basepoint, resolution, out, svg_dir, bound, matching_radius):
    """Contract the loop in INPUT_PATH to its basepoint and write the
    homotopy with its certificate."""
    try:
        with open(input_path) as fp:
            track = track_from_json(load(fp))
    except SchemaError as exc:
        click.echo(f"schema error: {exc}", err=True)
        sys.exit(2)
    pipeline_mode = Inclusion(cap) if mode == "inclusion" else SimplyConnected(cap)
    b = _parse_basepoint(track.space, basepoint)
    try:
        homotopy, cert = contract_pipeline(
            track, pipeline_mode, b, resolution=tuple(resolution), matching_radius=matching_radius
        )
    except AmbiguousBranching as exc:
        click.echo(f"ambiguous branching: {exc}", err=True)
        sys.exit(3)
    except ModeViolation as exc:
        click.echo(f"mode violation: {exc}", err=True)
        sys.exit(4)
    with open(out, "w") as fp:
        dump(homotopy_to_json(homotopy, cert.as_dict()), fp)
    if svg_dir is not None:
        render_homotopy(homotopy, svg_dir, basepoint=b)
    click.echo(
        f"max cardinality {cert.max_cardinality} (cap {cert.declared_cap}); "
        f"max gap {cert.max_gap:.6g}; lipschitz {cert.lipschitz:.6g}; "
        f"target constancy {cert.target_constancy:.3g}"
    )
    if cert.max_cardinality > cert.declared_cap:
        sys.exit(4)
    report = check_continuity(homotopy, bound)
    if not report.passed:
        click.echo(f"continuity bound {bound} failed: max gap {report.max_gap:.6g}", err=True)
        sys.exit(1)
    sys.exit(0)


@main.command("verify")
@click.argument("homotopy_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--bound", type=float, default=math.inf, help="Continuity modulus to enforce.")
def cmd_verify(homotopy_path, bound):
    """Recompute a homotopy certificate from its cells and check it."""
    try:
        with open(homotopy_path) as fp:
            doc = load(fp)
        homotopy, stored = homotopy_from_json(doc, lenient_cap=True)
        declared_cap = int(doc["cap"])
    except (SchemaError, KeyError, TypeError, ValueError) as exc:
        click.echo(f"schema error: {exc}", err=True)
        sys.exit(2)
    report = check_continuity(homotopy, bound)
    ok = True
    click.echo(
        f"cells {homotopy.rows}x{len(homotopy.t_grid)}; max cardinality "
        f"{report.max_cardinality} (cap {declared_cap}); max gap {report.max_gap:.6g}"
    )
    if report.max_cardinality > declared_cap:
        click.echo("FAIL: cardinality exceeds declared cap", err=True)
        ok = False
    if not report.passed:
        click.echo(f"FAIL: max gap {report.max_gap:.6g} exceeds bound * grid step", err=True)
        ok = False
    if stored is not None:
        if stored.get("max_cardinality") != report.max_cardinality:
            click.echo("FAIL: stored certificate cardinality does not match cells", err=True)
            ok = False
        stored_gap = stored.get("max_gap")
        if stored_gap is not None and abs(stored_gap - report.max_gap) > 1e-9:
            click.echo("FAIL: stored certificate gap does not match cells", err=True)
            ok = False
    click.echo("PASS" if ok else "FAIL")
    sys.exit(0 if ok else 1)


@main.command("homology")
@click.option("--space", "space_kind", type=click.Choice(["circle"]), default="circle", show_default=True)
@click.option("--circumference", type=float, default=1.0, show_default=True)
@click.option("--n", type=int, required=True, help="Configuration size cap.")
@click.option("--m", type=int, required=True, help="Number of sampled configurations.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-scale", type=float, required=True)
@click.option("--gap-ratio", type=float, default=5.0, show_default=True)
@click.option("--landmarks", type=int, default=48, show_default=True, help="Farthest-point subsample size (0 = use the full cloud).")
def cmd_homology(space_kind, circumference, n, m, seed, max_scale, gap_ratio, landmarks):
    """Sample configurations, run the persistence probe, and report the
    number of long-lived 1-cycles."""
    budget = int(os.environ.get("RAN_SIMPLEX_BUDGET", DEFAULT_SIMPLEX_BUDGET))
    space = Circle(circumference)
    cloud = sample_ran(space, n=n, m=m, seed=seed)
    if landmarks and landmarks < len(cloud):
        cloud = maxmin_subsample(cloud, landmarks, seed=seed)
    try:
        pairs = rips_persistence_h1(cloud, max_scale=max_scale, budget=budget)
    except SizeLimit as exc:
        click.echo(f"size limit: {exc}", err=True)
        sys.exit(2)
    click.echo(f"{'dim':>3} {'birth':>12} {'death':>12} {'persistence':>12}")
    for p in pairs:
        death = f"{p.death:.6g}" if math.isfinite(p.death) else "inf"
        pers = f"{p.persistence:.6g}" if math.isfinite(p.persistence) else "inf"
        click.echo(f"{p.dim:>3} {p.birth:>12.6g} {death:>12} {pers:>12}")
    count = long_lived_h1_count(pairs, gap_ratio)
    click.echo(f"long-lived H1 classes: {count}")
    sys.exit(0)


@main.command("convert")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.option("--stride", type=int, default=1, show_default=True, help="Keep every stride-th track frame.")
@click.option("--basepoint", default=None, help="Mark this point in every frame.")
def cmd_convert(input_path, out_dir, stride, basepoint):
    """Render a track or homotopy JSON document to SVG frames."""
    try:
        with open(input_path) as fp:
            doc = load(fp)
        if "cells" in doc:
            homotopy, _ = homotopy_from_json(doc)
            b = _parse_basepoint(homotopy.space, basepoint) if basepoint else None
            written = render_homotopy(homotopy, out_dir, basepoint=b)
        else:
            track = track_from_json(doc)
            b = _parse_basepoint(track.space, basepoint) if basepoint else None
            written = render_track(track, out_dir, basepoint=b, stride=stride)
    except SchemaError as exc:
        click.echo(f"schema error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"wrote {len(written)} frames to {out_dir}")
    sys.exit(0)


if __name__ == "__main__":
    main()
