"""Constructive loop contractions on configuration spaces.

The pieces, bottom up:

* ``extract_strands``: factor a configuration track through coordinate
  strands by greedy nearest matching between consecutive grid times,
  failing with AmbiguousBranching when no matching fits the radius.
* ``normalize``: conjugate a loop onto a chosen basepoint, factor it into
  strands based there, and reschedule each strand so excursions away from
  the basepoint span the whole loop; returns the bundle and the homotopy
  from the input loop to the bundle's projection.
* ``staircase``: reparametrize strand j to be active only on the window
  [j/n, (j+1)/n] and frozen at its endpoints elsewhere, so the projected
  track never shows more than two distinct points.
* ``contract_circle_generator``: an explicit grid homotopy contracting the
  one-turn circle loop to its basepoint through configurations of at most
  three points, based throughout.
* ``pushforward_contraction``: map that contraction pointwise through an
  arbitrary based loop, contracting the loop's singleton track.
* ``contract_pipeline``: the composite normalize -> staircase (with
  multi-turn circle strands split into one-turn factors) -> sequential
  per-window pushforward contractions, with a machine-checked certificate.

During a per-window contraction every other strand is frozen at the
basepoint, so the frozen strands contribute the single point b and the
total cardinality stays at most 3 + 1; that bound is what makes the
capped modes work and it is asserted by the certificate, never assumed.

Pipeline stages are sequential; cells within a stage are independent and
may be evaluated concurrently without changing any value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (
    AmbiguousBranching,
    EndpointMismatch,
    ModeViolation,
    UnsupportedDegree,
)
from .ran import Configuration, dedup, hausdorff
from .space import Circle, Point, Space
from .tracks import (
    LOOP_TOL,
    Homotopy,
    StrandBundle,
    StrandInterpolator,
    Track,
    check_continuity,
    circle_lift,
    project,
    stack_homotopies,
    uniform_times,
    winding_number,
)

# -- modes and certificates ---------------------------------------------------


@dataclass(frozen=True)
class Inclusion:
    """Contract inside the space with the cap raised by two."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cap must be positive")

    @property
    def declared_cap(self) -> int:
        return self.n + 2


@dataclass(frozen=True)
class SimplyConnected:
    """Contract without raising the cap; needs n >= 4."""

    n: int

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("simply-connected mode needs n >= 4")

    @property
    def declared_cap(self) -> int:
        return self.n


PipelineMode = Union[Inclusion, SimplyConnected]


@dataclass(frozen=True)
class ContractionCertificate:
    max_cardinality: int
    declared_cap: int
    max_gap: float
    ds: float
    dt: float
    lipschitz: float
    endpoint_drift: float
    target_constancy: float
    source: str
    target: str
    stages: tuple  # of (name, first row, last row, stage max cardinality)

    def as_dict(self) -> dict:
        return {
            "max_cardinality": self.max_cardinality,
            "declared_cap": self.declared_cap,
            "max_gap": self.max_gap,
            "ds": self.ds,
            "dt": self.dt,
            "lipschitz": self.lipschitz,
            "endpoint_drift": self.endpoint_drift,
            "target_constancy": self.target_constancy,
            "source": self.source,
            "target": self.target,
            "stages": [list(s) for s in self.stages],
        }


# -- strand extraction --------------------------------------------------------


def _match_step(space: Space, prev: tuple, nxt: tuple, radius: float, when: float) -> list:
    """Parent index in prev for every point of nxt.

    Pairs are scanned in ascending (distance, child, parent) order; the
    first pass builds an injective matching so a point passing close to
    another cannot steal its successor, and a second pass attaches the
    remaining points (genuine branches) to their nearest predecessor.
    """
    pairs = sorted(
        (space.distance(q, p), qi, pi)
        for qi, q in enumerate(nxt)
        for pi, p in enumerate(prev)
    )
    parent = [-1] * len(nxt)
    taken = set()
    for d, qi, pi in pairs:
        if d > radius:
            break
        if parent[qi] == -1 and pi not in taken:
            parent[qi] = pi
            taken.add(pi)
    for d, qi, pi in pairs:
        if parent[qi] == -1 and d <= radius:
            parent[qi] = pi
    for qi, pi in enumerate(parent):
        if pi == -1:
            raise AmbiguousBranching(
                f"point {nxt[qi]!r} at t={when} has no predecessor within radius {radius:.3g}"
            )
    return parent


def extract_strands(track: Track, cap: int | None = None, matching_radius: float | None = None) -> StrandBundle:
    """Factor a track through coordinate strands on its own grid.

    Strands are seeded round robin over the first configuration.  At each
    step the next configuration is matched to the previous one; strands
    sitting on a predecessor are distributed round robin over its
    successors, and strands on a vanishing point follow it to the nearest
    surviving point.  Any step that cannot be matched within the radius
    raises AmbiguousBranching: such tracks admit no strand decomposition
    on this grid.
    """
    space = track.space
    n = cap if cap is not None else track.cap
    if matching_radius is None:
        matching_radius = 2.0 * check_continuity(track, math.inf).max_gap + 1e-9
    first = track.configs[0].points
    positions = [j % len(first) for j in range(n)]
    strands = [[first[p]] for p in positions]
    for i in range(len(track.times) - 1):
        prev = track.configs[i].points
        nxt = track.configs[i + 1].points
        parent = _match_step(space, prev, nxt, matching_radius, track.times[i + 1])
        children = {p: [q for q, par in enumerate(parent) if par == p] for p in range(len(prev))}
        new_positions = [0] * n
        for p in range(len(prev)):
            holders = [j for j in range(n) if positions[j] == p]
            kids = children[p]
            if not kids:
                dists = [space.distance(prev[p], q) for q in nxt]
                tgt = min(range(len(nxt)), key=lambda k: (dists[k], k))
                if dists[tgt] > matching_radius:
                    raise AmbiguousBranching(
                        f"point {prev[p]!r} at t={track.times[i]} vanishes with no "
                        f"successor within radius {matching_radius:.3g}"
                    )
                for j in holders:
                    new_positions[j] = tgt
                continue
            if len(holders) < len(kids):
                raise AmbiguousBranching(
                    f"branch at t={track.times[i]} needs {len(kids)} strands "
                    f"but only {len(holders)} ride the branching point"
                )
            for k, j in enumerate(holders):
                new_positions[j] = kids[k % len(kids)]
        positions = new_positions
        for j in range(n):
            strands[j].append(nxt[positions[j]])
    return StrandBundle(space, track.times, tuple(tuple(s) for s in strands))


# -- normalization ------------------------------------------------------------


def _config_at(track: Track, t: float) -> Configuration:
    times = track.times
    lo, hi = 0, len(times) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if times[mid] <= t:
            lo = mid
        else:
            hi = mid
    return track.configs[lo] if t - times[lo] <= times[hi] - t else track.configs[hi]


def _dwell(t: float) -> float:
    return min(max((t - 0.25) * 2.0, 0.0), 1.0)


def normalize(
    obj: Union[Track, StrandBundle],
    b: Point,
    rows: int = 8,
    m: int | None = None,
    matching_radius: float | None = None,
) -> tuple[StrandBundle, Homotopy]:
    """Rebase a loop at b and factor it through based strands.

    Returns the strand bundle (every strand starting and ending at b) and
    the homotopy from the input loop to the bundle's projection.  Stages:
    a conjugation sliding the loop along a geodesic connector onto {b}
    and, for raw tracks, excursion rescheduling that removes every branch
    and merge event away from the loop's base time.  A bundle already
    based at b comes back unchanged with a constant homotopy.
    """
    space = obj.space
    b = space.canon(b)
    if isinstance(obj, StrandBundle):
        if not obj.is_loop():
            return normalize(project(obj), b, rows=rows, m=m, matching_radius=matching_radius)
        if obj.based_at(b):
            out = obj if m is None else _resample_bundle(obj, uniform_times(m))
            proj = project(out)
            ident = Homotopy(space, (0.0, 1.0), proj.times, (proj.configs, proj.configs), out.n)
            return out, ident
        grid = obj.times if m is None else uniform_times(m)
        return _normalize_bundle(obj, b, rows, grid)
    if obj.kind != "loop":
        raise EndpointMismatch("normalization needs a loop")
    grid = uniform_times(m if m is not None else len(obj.times) - 1)
    return _normalize_track(obj, b, rows, grid, matching_radius)


def _resample_bundle(bundle: StrandBundle, grid: tuple) -> StrandBundle:
    if bundle.times == grid:
        return bundle
    interps = [bundle.interpolator(j) for j in range(bundle.n)]
    return StrandBundle(
        bundle.space, grid, tuple(tuple(itp.many(grid)) for itp in interps)
    )


def _normalize_bundle(bundle: StrandBundle, b: Point, rows: int, grid: tuple) -> tuple[StrandBundle, Homotopy]:
    """Conjugate each strand by the geodesic from b to its own basepoint."""
    space = bundle.space
    interps = [bundle.interpolator(j) for j in range(bundle.n)]
    starts = [s[0] for s in bundle.strands]

    def strand_value(j, s, t):
        if t <= 0.25:
            u = (1.0 - s) + (t / 0.25) * s
            return space.geodesic(b, starts[j], u)
        if t >= 0.75:
            u = (1.0 - s) + ((1.0 - t) / 0.25) * s
            return space.geodesic(b, starts[j], u)
        return interps[j]((t - 0.25) * 2.0)

    def reparam_row(lam):
        return tuple(
            dedup(space, [itp((1.0 - lam) * t + lam * _dwell(t)) for itp in interps], cap=bundle.n)
            for t in grid
        )

    def conj_row(s):
        return tuple(
            dedup(space, [strand_value(j, s, t) for j in range(bundle.n)], cap=bundle.n)
            for t in grid
        )

    block1 = tuple(reparam_row(i / rows) for i in range(rows + 1))
    block2 = tuple(conj_row(i / rows) for i in range(rows + 1))
    h1 = Homotopy(space, uniform_times(rows), grid, block1, bundle.n)
    h2 = Homotopy(space, uniform_times(rows), grid, block2, bundle.n)
    out = StrandBundle(
        space,
        grid,
        tuple(tuple(strand_value(j, 1.0, t) for t in grid) for j in range(bundle.n)),
    )
    return out, stack_homotopies([h1, h2])


def _normalize_track(
    track: Track, b: Point, rows: int, grid: tuple, matching_radius: float | None
) -> tuple[StrandBundle, Homotopy]:
    space = track.space
    n = track.cap
    m = len(grid) - 1
    sigma0 = track.configs[0]
    dists = [space.distance(b, q) for q in sigma0.points]
    pstar = sigma0.points[min(range(len(sigma0)), key=lambda k: (dists[k], k))]

    def gamma(u: float) -> list:
        if u <= 0.5:
            return [space.geodesic(b, pstar, 2.0 * u)]
        return [space.geodesic(pstar, q, 2.0 * u - 1.0) for q in sigma0.points]

    def reparam_row(lam):
        return tuple(
            _config_at(track, (1.0 - lam) * t + lam * _dwell(t)) for t in grid
        )

    def conj_row(s):
        cells = []
        for t in grid:
            if t <= 0.25:
                pts = gamma((1.0 - s) + (t / 0.25) * s)
            elif t >= 0.75:
                pts = gamma((1.0 - s) + ((1.0 - t) / 0.25) * s)
            else:
                pts = list(_config_at(track, (t - 0.25) * 2.0).points)
            cells.append(dedup(space, pts, cap=n))
        return tuple(cells)

    block1 = tuple(reparam_row(i / rows) for i in range(rows + 1))
    block2 = tuple(conj_row(i / rows) for i in range(rows + 1))
    conjugated = Track(space, grid, block2[-1], "loop", n)
    bundle = extract_strands(conjugated, cap=n, matching_radius=matching_radius)

    # excursion rescheduling: stretch each strand's span away from b over
    # the whole loop, so splits and rejoins happen only at the base time
    interps = [bundle.interpolator(j) for j in range(n)]
    spans = []
    for strand in bundle.strands:
        away = [i for i, p in enumerate(strand) if space.distance(p, b) > LOOP_TOL]
        if not away:
            spans.append((0.0, 1.0))
        else:
            spans.append((grid[max(away[0] - 1, 0)], grid[min(away[-1] + 1, m)]))

    def sched_value(j, lam, t):
        t0, t1 = spans[j]
        return interps[j]((1.0 - lam) * t + lam * (t0 + t * (t1 - t0)))

    def sched_row(lam):
        return tuple(
            dedup(space, [sched_value(j, lam, t) for j in range(n)], cap=n) for t in grid
        )

    block3 = tuple(sched_row(i / rows) for i in range(rows + 1))
    h1 = Homotopy(space, uniform_times(rows), grid, block1, n)
    h2 = Homotopy(space, uniform_times(rows), grid, block2, n)
    h3 = Homotopy(space, uniform_times(rows), grid, block3, n)
    out = StrandBundle(
        space,
        grid,
        tuple(tuple(sched_value(j, 1.0, t) for t in grid) for j in range(n)),
    )
    return out, stack_homotopies([h1, h2, h3])


# -- staircase ----------------------------------------------------------------


def _common_basepoint(bundle: StrandBundle, tol: float = LOOP_TOL) -> Point:
    space = bundle.space
    base = bundle.strands[0][0]
    for s in bundle.strands:
        for p in (s[0], s[-1]):
            if space.distance(p, base) > tol:
                raise EndpointMismatch("staircase needs all strand endpoints to coincide")
    return base


def staircase(bundle: StrandBundle) -> StrandBundle:
    """Schedule strand j to run inside [j/n, (j+1)/n], frozen elsewhere.

    At any time at most one strand is away from the shared endpoint value,
    so the projected track has at most two distinct points.
    """
    _common_basepoint(bundle)
    n = bundle.n
    m = len(bundle.times) - 1
    out_times = uniform_times(n * m)
    aligned = bundle.times == uniform_times(m)
    interps = [bundle.interpolator(j) for j in range(n)]
    strands = []
    for j in range(n):
        vals = []
        for k in range(n * m + 1):
            idx = k - j * m
            if idx <= 0:
                vals.append(bundle.strands[j][0])
            elif idx >= m:
                vals.append(bundle.strands[j][-1])
            elif aligned:
                vals.append(bundle.strands[j][idx])
            else:
                vals.append(interps[j](idx / m))
        strands.append(tuple(vals))
    return StrandBundle(bundle.space, out_times, tuple(strands))


# -- the one-turn circle contraction ------------------------------------------


def _tent(u: float) -> float:
    return 1.0 - abs(1.0 - 2.0 * u)


def _generator_cell(s: float, t: float) -> tuple:
    """Configuration of the one-turn contraction at (s, t), unit circle.

    Five deformation phases: split the turn into two half-laps run in
    sequence; then for each half-lap, sprout a symmetric counter-running
    pair out of the waiting point, pass the runner into it at the
    crossing, and shrink the spread back to the basepoint.
    """
    phase = min(int(s * 5.0), 4)
    sig = s * 5.0 - phase
    if phase == 0:
        a = (1.0 - sig) * t + sig * min(2.0 * t, 1.0)
        b = (1.0 - sig) * t + sig * max(2.0 * t - 1.0, 0.0)
        return (a, b)
    if phase == 1:
        if t <= 0.5:
            w = sig / 2.0
            return (2.0 * t, w * _tent(2.0 * t), -w * _tent(2.0 * t))
        return (0.0, 2.0 * t - 1.0)
    if phase == 2:
        if t <= 0.5:
            v = (1.0 - sig) / 2.0
            return (v * _tent(2.0 * t), -v * _tent(2.0 * t))
        return (0.0, 2.0 * t - 1.0)
    if phase == 3:
        if t <= 0.5:
            return (0.0,)
        w = sig / 2.0
        return (2.0 * t - 1.0, w * _tent(2.0 * t - 1.0), -w * _tent(2.0 * t - 1.0))
    if t <= 0.5:
        return (0.0,)
    v = (1.0 - sig) / 2.0
    return (v * _tent(2.0 * t - 1.0), -v * _tent(2.0 * t - 1.0))


def contract_circle_generator(
    turns: int, resolution: tuple = (64, 128), space: Circle = Circle(1.0)
) -> Homotopy:
    """Null-homotopy of the one-turn circle loop, based at coordinate 0.

    Row 0 is the singleton track winding `turns` times (|turns| = 1), the
    last row is constant {0}, every cell has at most three points, and the
    basepoint column stays at {0} throughout.
    """
    if turns not in (1, -1):
        raise UnsupportedDegree(f"turns must be +1 or -1, got {turns}")
    r, m = resolution
    c = space.circumference
    s_grid = uniform_times(r)
    t_grid = uniform_times(m)
    rows = []
    for s in s_grid:
        cells = []
        for t in t_grid:
            vals = [space.canon(turns * v * c) for v in _generator_cell(s, t)]
            cells.append(dedup(space, vals, cap=3))
        rows.append(tuple(cells))
    return Homotopy(space, s_grid, t_grid, tuple(rows), 3)


def pushforward_contraction(
    space: Space,
    strand: Sequence[Point],
    times: Sequence[float] | None = None,
    resolution: tuple = (64, 128),
) -> Homotopy:
    """Map the one-turn contraction pointwise through a based loop.

    The loop, read as a map from the unit-parameter circle into the space,
    sends every contraction cell to a configuration inside its own image,
    yielding a null-homotopy of the loop's singleton track onto its
    basepoint.
    """
    if times is None:
        times = uniform_times(len(strand) - 1)
    if space.distance(strand[0], strand[-1]) > LOOP_TOL:
        raise EndpointMismatch("pushforward needs a closed strand")
    unit = Circle(1.0)
    interp = StrandInterpolator(space, times, strand)
    r, m = resolution
    s_grid = uniform_times(r)
    t_grid = uniform_times(m)
    rows = []
    for s in s_grid:
        coords = []
        sizes = []
        for t in t_grid:
            vals = [unit.canon(v) for v in _generator_cell(s, t)]
            coords.extend(vals)
            sizes.append(len(vals))
        mapped = interp.many(coords)
        cells = []
        pos = 0
        for size in sizes:
            cells.append(dedup(space, mapped[pos : pos + size], cap=3))
            pos += size
        rows.append(tuple(cells))
    return Homotopy(space, s_grid, t_grid, tuple(rows), 3)


# -- the full pipeline --------------------------------------------------------


@dataclass(frozen=True)
class _SubWindow:
    strand: int
    lap: int
    t0: float
    t1: float
    u0: float
    u1: float


def _lap_cuts(space: Space, strand: Sequence[Point], times: Sequence[float]) -> list:
    """Times splitting a circle strand into one-turn factors.

    Cut at the first crossing of each whole-turn lift level; for winding
    |w| < 2 (and on non-circle spaces) the strand is a single factor.
    """
    if not isinstance(space, Circle):
        return [0.0, 1.0]
    w = winding_number(space, strand)
    if abs(w) < 2:
        return [0.0, 1.0]
    lifts = circle_lift(space, strand)
    c = space.circumference
    cuts = [0.0]
    for i in range(1, abs(w)):
        level = lifts[0] + math.copysign(i * c, w)
        for k in range(len(lifts) - 1):
            lo, hi = lifts[k], lifts[k + 1]
            if (lo - level) * (hi - level) <= 0.0 and lo != hi:
                u = times[k] + (level - lo) / (hi - lo) * (times[k + 1] - times[k])
                if u > cuts[-1]:
                    cuts.append(float(u))
                    break
    cuts.append(1.0)
    return cuts


def _schedule(space: Space, bundle: StrandBundle) -> list:
    n = bundle.n
    windows = []
    for j in range(n):
        cuts = _lap_cuts(space, bundle.strands[j], bundle.times)
        k = len(cuts) - 1
        for lap in range(k):
            t0 = j / n + lap / (k * n)
            t1 = j / n + (lap + 1) / (k * n)
            windows.append(_SubWindow(j, lap, t0, t1, cuts[lap], cuts[lap + 1]))
    return windows


def _scheduled_u(win: _SubWindow, t: float) -> float:
    frac = (t - win.t0) / (win.t1 - win.t0)
    return win.u0 + frac * (win.u1 - win.u0)


def _rho(windows: list, j: int, t: float) -> float:
    own = [w for w in windows if w.strand == j]
    if t <= own[0].t0:
        return 0.0
    if t >= own[-1].t1:
        return 1.0
    for w in own:
        if w.t0 <= t <= w.t1:
            return _scheduled_u(w, t)
    return 1.0


def contract_pipeline(
    obj: Union[Track, StrandBundle],
    mode: PipelineMode,
    b: Point,
    resolution: tuple = (48, 128),
    matching_radius: float | None = None,
) -> tuple[Homotopy, ContractionCertificate]:
    """Contract a loop to the constant {b} under the mode's cardinality cap.

    Normalize, staircase with one-turn splitting, then contract each
    scheduled window in ascending order through the pushed-forward
    one-turn contraction while every other strand sits frozen at b.
    """
    space = obj.space
    b = space.canon(b)
    n = mode.n
    input_cap = obj.cap if isinstance(obj, Track) else obj.n
    if input_cap > n:
        raise ValueError(f"input cap {input_cap} inconsistent with mode cap {n}")
    r, m = resolution
    grid = uniform_times(m)

    bundle, h_norm = normalize(obj, b, rows=max(2, r // 6), m=m, matching_radius=matching_radius)
    n_strands = bundle.n
    interps = [bundle.interpolator(j) for j in range(n_strands)]
    windows = _schedule(space, bundle)
    block_rows = max(2, r // (2 + len(windows)))

    # staircase block: slide from the identity schedule to the windowed
    # one (one-turn splitting rides on the same reparametrization)
    def sched_value(j, lam, t):
        target = _rho(windows, j, t)
        return interps[j]((1.0 - lam) * t + lam * target)

    stair_cells = tuple(
        tuple(
            dedup(space, [sched_value(j, i / block_rows, t) for j in range(n_strands)], cap=n_strands)
            for t in grid
        )
        for i in range(block_rows + 1)
    )
    h_stair = Homotopy(space, uniform_times(block_rows), grid, stair_cells, n_strands)

    declared = mode.declared_cap
    blocks = [h_norm, h_stair]
    done = set()
    unit = Circle(1.0)
    for win in windows:
        frozen = []
        for t in grid:
            pts = []
            for j in range(n_strands):
                if j == win.strand and win.t0 <= t <= win.t1:
                    continue
                owner = next((w for w in windows if w.strand == j and w.t0 <= t <= w.t1), None)
                if owner is not None and (owner.strand, owner.lap) in done:
                    pts.append(b)
                elif owner is not None:
                    pts.append(interps[j](_scheduled_u(owner, t)))
                else:
                    pts.append(interps[j](_rho(windows, j, t)))
            frozen.append(pts)
        rows = []
        for i in range(block_rows + 1):
            s = i / block_rows
            row = []
            for k, t in enumerate(grid):
                pts = list(frozen[k])
                if win.t0 <= t <= win.t1:
                    vals = [unit.canon(v) for v in _generator_cell(s, (t - win.t0) / (win.t1 - win.t0))]
                    us = [win.u0 + v * (win.u1 - win.u0) for v in vals]
                    pts = pts + interps[win.strand].many(us)
                row.append(dedup(space, pts if pts else [b], cap=declared))
            rows.append(tuple(row))
        blocks.append(Homotopy(space, uniform_times(block_rows), grid, tuple(rows), declared))
        done.add((win.strand, win.lap))

    homotopy = stack_homotopies(blocks)
    certificate = _certify(homotopy, declared, b, blocks)
    if certificate.max_cardinality > declared:
        raise ModeViolation(
            f"observed cardinality {certificate.max_cardinality} exceeds mode cap {declared}"
        )
    return homotopy, certificate


def _certify(homotopy: Homotopy, declared: int, b: Point, blocks: list) -> ContractionCertificate:
    report = check_continuity(homotopy, math.inf)
    base = dedup(homotopy.space, [b], cap=1)
    target_constancy = max(
        hausdorff(homotopy.space, cell, base) for cell in homotopy.cells[-1]
    )
    names = ["normalize", "staircase"] + [f"contract-window-{i}" for i in range(len(blocks) - 2)]
    stages = []
    row = 0
    for name, block in zip(names, blocks):
        block_max = max(len(c) for cells in block.cells for c in cells)
        last = row + block.rows - 1
        stages.append((name, row, last, block_max))
        row = last
    return ContractionCertificate(
        max_cardinality=report.max_cardinality,
        declared_cap=declared,
        max_gap=report.max_gap,
        ds=report.ds,
        dt=report.dt,
        lipschitz=report.lipschitz,
        endpoint_drift=homotopy.endpoint_drift,
        target_constancy=target_constancy,
        source="input loop resampled",
        target="constant basepoint configuration",
        stages=tuple(stages),
    )
