"""Discretized paths, loops, strand bundles and homotopies.

A Track samples a map [0,1] -> (finite subsets of X) on a strictly
increasing time grid with t0 = 0 and tm = 1.  A StrandBundle samples n
coordinate paths on a shared grid; its per-time union is its projected
track.  A Homotopy is a 2D grid of configurations whose rows are tracks.

Continuity is never verified exactly (undecidable from samples); instead
``check_continuity`` certifies that adjacent grid cells stay within a
caller-supplied modulus.  Branch and merge detection uses a discrete
surrogate with a fixed radius and lookahead window, both caller-supplied,
because the neighborhood quantifiers of the continuous definitions are not
decidable from samples.

All values are immutable and operations pure.  Grid-cell work (continuity
checks) is a max-reduction, so any parallel schedule yields the identical
report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import AmbiguousLift, EndpointMismatch, SpaceMismatch
from .ran import DEDUP_EPS, Configuration, dedup, hausdorff
from .space import Circle, Interval, MetricGraph, Point, Space

LOOP_TOL = 1e-9


def uniform_times(m: int) -> tuple:
    return tuple(i / m for i in range(m + 1))


def _validate_times(times: Sequence[float]) -> tuple:
    times = tuple(float(t) for t in times)
    if len(times) < 2:
        raise ValueError("need at least two grid times")
    if abs(times[0]) > 1e-12 or abs(times[-1] - 1.0) > 1e-12:
        raise ValueError("time grid must run from 0 to 1")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("time grid must be strictly increasing")
    return times


@dataclass(frozen=True)
class Track:
    space: Space
    times: tuple
    configs: tuple  # of Configuration
    kind: str  # "path" | "loop"
    cap: int

    def __post_init__(self):
        object.__setattr__(self, "times", _validate_times(self.times))
        if len(self.configs) != len(self.times):
            raise ValueError("one configuration per grid time")
        if self.kind not in ("path", "loop"):
            raise ValueError("kind must be 'path' or 'loop'")
        for c in self.configs:
            if len(c) > self.cap:
                raise ValueError(f"configuration of size {len(c)} exceeds cap {self.cap}")
        if self.kind == "loop":
            gap = hausdorff(self.space, self.configs[0], self.configs[-1])
            if gap > LOOP_TOL:
                raise EndpointMismatch(f"loop fails to close: gap {gap}")

    def __len__(self):
        return len(self.times)


def make_track(space: Space, times: Sequence[float], point_lists: Sequence[Sequence[Point]], cap: int, kind: str = "path", eps: float = DEDUP_EPS) -> Track:
    configs = tuple(dedup(space, pts, eps=eps, cap=cap) for pts in point_lists)
    return Track(space, tuple(times), configs, kind, cap)


@dataclass(frozen=True)
class StrandBundle:
    space: Space
    times: tuple
    strands: tuple  # n strands, each a tuple of points, one per time

    def __post_init__(self):
        object.__setattr__(self, "times", _validate_times(self.times))
        if len(self.strands) == 0:
            raise ValueError("a bundle needs at least one strand")
        for s in self.strands:
            if len(s) != len(self.times):
                raise ValueError("each strand needs one point per grid time")

    @property
    def n(self) -> int:
        return len(self.strands)

    def is_loop(self, tol: float = LOOP_TOL) -> bool:
        return all(self.space.distance(s[0], s[-1]) <= tol for s in self.strands)

    def based_at(self, b: Point, tol: float = LOOP_TOL) -> bool:
        return all(
            self.space.distance(s[0], b) <= tol and self.space.distance(s[-1], b) <= tol
            for s in self.strands
        )

    def interpolator(self, j: int) -> "StrandInterpolator":
        return StrandInterpolator(self.space, self.times, self.strands[j])


def project(bundle: StrandBundle, eps: float = DEDUP_EPS) -> Track:
    """Per-time union of strand values, deduplicated; cap = strand count."""
    point_lists = [[s[i] for s in bundle.strands] for i in range(len(bundle.times))]
    kind = "loop" if bundle.is_loop() else "path"
    return make_track(bundle.space, bundle.times, point_lists, cap=bundle.n, kind=kind, eps=eps)


# -- strand evaluation -------------------------------------------------------


def circle_signed_step(circ: Circle, a: float, b: float) -> float:
    """Signed displacement from a to b along the shorter arc.

    Raises AmbiguousLift when the arc distance reaches half the
    circumference, where the lift direction is undefined.
    """
    c = circ.circumference
    raw = (circ.canon(b) - circ.canon(a)) % c
    arc = min(raw, c - raw)
    if arc >= c / 2.0 - 1e-15 * c:
        raise AmbiguousLift(f"step of arc length {arc} with circumference {c}")
    return raw if raw <= c / 2.0 else raw - c


def circle_lift(circ: Circle, points: Sequence[float]) -> np.ndarray:
    lifts = np.empty(len(points))
    lifts[0] = circ.canon(points[0])
    for i in range(1, len(points)):
        lifts[i] = lifts[i - 1] + circle_signed_step(circ, points[i - 1], points[i])
    return lifts


class StrandInterpolator:
    """Evaluate one strand at arbitrary times.

    Circle and interval strands interpolate exactly (circle via the unique
    small-step lift); graph strands snap to the nearest grid sample, which
    keeps values on the sampled image and adds at most one grid step of
    slack to any continuity bound.
    """

    def __init__(self, space: Space, times: Sequence[float], points: Sequence[Point]):
        self.space = space
        self.times = np.asarray(times, dtype=float)
        self.points = list(points)
        if isinstance(space, Circle):
            self.lifts = circle_lift(space, points)
        elif isinstance(space, Interval):
            self.lifts = np.asarray([space.canon(p) for p in points], dtype=float)
        else:
            self.lifts = None

    def __call__(self, t: float) -> Point:
        return self.many([t])[0]

    def many(self, ts: Sequence[float]) -> list:
        ts = np.clip(np.asarray(ts, dtype=float), 0.0, 1.0)
        if self.lifts is not None:
            vals = np.interp(ts, self.times, self.lifts)
            if isinstance(self.space, Circle):
                return [self.space.canon(v) for v in vals]
            return [self.space.canon(min(max(v, 0.0), self.space.length)) for v in vals]
        idx = np.searchsorted(self.times, ts)
        idx = np.clip(idx, 1, len(self.times) - 1)
        left = self.times[idx - 1]
        right = self.times[idx]
        take_left = (ts - left) <= (right - ts)
        out = []
        for i, tl in zip(idx, take_left):
            out.append(self.points[i - 1] if tl else self.points[i])
        return out

    def lift_values(self, ts: Sequence[float]) -> np.ndarray:
        if self.lifts is None:
            raise ValueError("lifts only exist for circle and interval strands")
        ts = np.clip(np.asarray(ts, dtype=float), 0.0, 1.0)
        return np.interp(ts, self.times, self.lifts)


# -- continuity certification -------------------------------------------------


@dataclass(frozen=True)
class ContinuityReport:
    max_gap: float
    ds: float
    dt: float
    lipschitz: float
    max_cardinality: int
    bound: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "max_gap": self.max_gap,
            "ds": self.ds,
            "dt": self.dt,
            "lipschitz": self.lipschitz,
            "max_cardinality": self.max_cardinality,
            "bound": self.bound,
            "passed": self.passed,
        }


def _pad_encode(space: Space, configs: Sequence[Configuration]):
    """Pad configurations to a rectangular encoding for batch kernels."""
    width = max(len(c) for c in configs)
    n = len(configs)
    if isinstance(space, MetricGraph):
        edges = np.zeros((n, width), dtype=int)
        params = np.full((n, width), np.nan)
        for i, c in enumerate(configs):
            for j, p in enumerate(c.points):
                edges[i, j] = p.edge
                params[i, j] = p.t
        return edges, params
    coords = np.full((n, width), np.nan)
    for i, c in enumerate(configs):
        coords[i, : len(c)] = c.points
    return coords


def batch_hausdorff(space: Space, enc_a, enc_b) -> np.ndarray:
    """Hausdorff distance between corresponding entries of two padded
    configuration batches."""
    if isinstance(space, MetricGraph):
        ea, ta = enc_a
        eb, tb = enc_b
        lengths = np.array([l for _, _, l in space.edges])
        us = np.array([u for u, _, _ in space.edges])
        vs = np.array([v for _, v, _ in space.edges])
        dmat = space.vertex_distance_matrix()
        la, lb = lengths[ea], lengths[eb]
        d = np.full((ea.shape[0], ea.shape[1], eb.shape[1]), np.inf)
        for leg_a, end_a in ((ta * la, us[ea]), ((1.0 - ta) * la, vs[ea])):
            for leg_b, end_b in ((tb * lb, us[eb]), ((1.0 - tb) * lb, vs[eb])):
                cand = leg_a[:, :, None] + dmat[end_a[:, :, None], end_b[:, None, :]] + leg_b[:, None, :]
                d = np.fmin(d, cand)
        same = ea[:, :, None] == eb[:, None, :]
        direct = np.abs(ta[:, :, None] - tb[:, None, :]) * la[:, :, None]
        d = np.where(same, np.fmin(d, direct), d)
        valid_a, valid_b = ~np.isnan(ta), ~np.isnan(tb)
    else:
        a, b = enc_a, enc_b
        raw = np.abs(a[:, :, None] - b[:, None, :])
        if isinstance(space, Circle):
            d = np.minimum(raw, space.circumference - raw)
        else:
            d = raw
        valid_a, valid_b = ~np.isnan(a), ~np.isnan(b)
    d = np.where(valid_b[:, None, :], d, np.inf)
    d = np.where(np.isnan(d), np.inf, d)
    dir_ab = np.where(valid_a, d.min(axis=2), -np.inf).max(axis=1)
    d2 = np.where(valid_a[:, :, None], d, np.inf)
    dir_ba = np.where(valid_b, d2.min(axis=1), -np.inf).max(axis=1)
    return np.maximum(dir_ab, dir_ba)


def _pairs_max_gap(space: Space, cells_a: list, cells_b: list, steps: np.ndarray):
    enc_a = _pad_encode(space, cells_a)
    enc_b = _pad_encode(space, cells_b)
    gaps = batch_hausdorff(space, enc_a, enc_b)
    max_gap = float(gaps.max()) if len(gaps) else 0.0
    lips = float((gaps / steps).max()) if len(gaps) else 0.0
    return max_gap, lips


def check_continuity(obj, bound: float) -> ContinuityReport:
    """Certify that adjacent grid cells stay within bound * grid step.

    Accepts a Track or a Homotopy.  The report passes iff the maximum
    adjacent-cell gap is at most bound * max(ds, dt).
    """
    if isinstance(obj, Track):
        cells_a = list(obj.configs[:-1])
        cells_b = list(obj.configs[1:])
        steps = np.diff(np.asarray(obj.times))
        dt = float(steps.max())
        max_gap, lips = _pairs_max_gap(obj.space, cells_a, cells_b, steps)
        max_card = max(len(c) for c in obj.configs)
        ds = 0.0
    else:
        homotopy = obj
        s_grid = np.asarray(homotopy.s_grid)
        t_grid = np.asarray(homotopy.t_grid)
        ds = float(np.diff(s_grid).max()) if len(s_grid) > 1 else 0.0
        dt = float(np.diff(t_grid).max())
        cells_a, cells_b, steps = [], [], []
        for row in homotopy.cells:
            cells_a.extend(row[:-1])
            cells_b.extend(row[1:])
            steps.extend(np.diff(t_grid))
        for row_a, row_b, step in zip(homotopy.cells, homotopy.cells[1:], np.diff(s_grid)):
            cells_a.extend(row_a)
            cells_b.extend(row_b)
            steps.extend([step] * len(row_a))
        max_gap, lips = _pairs_max_gap(homotopy.space, cells_a, cells_b, np.asarray(steps))
        max_card = max(len(c) for row in homotopy.cells for c in row)
    passed = max_gap <= bound * max(ds, dt)
    return ContinuityReport(max_gap, ds, dt, lips, max_card, bound, passed)


# -- homotopies ---------------------------------------------------------------


@dataclass(frozen=True)
class Homotopy:
    """Grid of configurations: rows are tracks, row 0 the source, the last
    row the target.  The certificate summarizes cardinality, adjacent-cell
    gaps, and how far the endpoint columns drift from the source row."""

    space: Space
    s_grid: tuple
    t_grid: tuple
    cells: tuple  # rows of Configuration tuples
    cap: int

    def __post_init__(self):
        object.__setattr__(self, "t_grid", _validate_times(self.t_grid))
        s = tuple(float(x) for x in self.s_grid)
        if len(s) != len(self.cells):
            raise ValueError("one row of cells per deformation sample")
        if any(b <= a for a, b in zip(s, s[1:])):
            raise ValueError("deformation grid must be strictly increasing")
        object.__setattr__(self, "s_grid", s)
        for row in self.cells:
            if len(row) != len(self.t_grid):
                raise ValueError("ragged homotopy grid")
            for c in row:
                if len(c) > self.cap:
                    raise ValueError(f"cell of size {len(c)} exceeds cap {self.cap}")

    @property
    def rows(self) -> int:
        return len(self.cells)

    def row(self, i: int) -> Track:
        row = self.cells[i]
        gap = hausdorff(self.space, row[0], row[-1])
        kind = "loop" if gap <= LOOP_TOL else "path"
        return Track(self.space, self.t_grid, row, kind, self.cap)

    @cached_property
    def endpoint_drift(self) -> float:
        drift = 0.0
        for row in self.cells:
            drift = max(drift, hausdorff(self.space, row[0], self.cells[0][0]))
            drift = max(drift, hausdorff(self.space, row[-1], self.cells[0][-1]))
        return drift

    def certificate(self, bound: float = math.inf) -> dict:
        report = check_continuity(self, bound)
        return {
            "max_cardinality": report.max_cardinality,
            "max_gap": report.max_gap,
            "endpoint_drift": self.endpoint_drift,
        }


def stack_homotopies(blocks: Sequence[Homotopy]) -> Homotopy:
    """Concatenate homotopy blocks in the deformation direction.

    Blocks must share space, cap and time grid, and each block's first row
    must repeat the previous block's last row; the duplicate seams are
    dropped.  The output s grid is uniform.
    """
    first = blocks[0]
    rows = [list(first.cells)]
    for prev, nxt in zip(blocks, blocks[1:]):
        if nxt.space != prev.space or nxt.t_grid != prev.t_grid:
            raise SpaceMismatch("homotopy blocks disagree on space or grid")
        seam = max(
            hausdorff(first.space, a, b) for a, b in zip(prev.cells[-1], nxt.cells[0])
        )
        if seam > LOOP_TOL:
            raise EndpointMismatch(f"homotopy blocks fail to chain: seam gap {seam}")
        rows.append(list(nxt.cells[1:]))
    cells = tuple(c for block in rows for c in block)
    cap = max(b.cap for b in blocks)
    return Homotopy(first.space, uniform_times(len(cells) - 1), first.t_grid, cells, cap)


# -- branch and merge detection ----------------------------------------------


def detect_branch_merge(track: Track, radius: float, lookahead: int):
    """Discrete surrogate for branch and merge points.

    A point p of config(t_i) is a branch when its radius ball holds exactly
    one point of config(t_i) but at least two points of config(t_{i+k}) for
    some k <= lookahead; a merge symmetrically with t_{i-k}.  Returns
    (time index, point, kind) triples in grid order.
    """
    if radius <= 0 or lookahead < 1:
        raise ValueError("radius must be positive and lookahead at least 1")
    space = track.space
    out = []
    m = len(track.times) - 1
    for i, config in enumerate(track.configs):
        for p in config.points:
            in_ball_now = sum(1 for q in config.points if space.distance(p, q) <= radius)
            if in_ball_now != 1:
                continue
            for kind, direction in (("branch", 1), ("merge", -1)):
                hit = False
                for k in range(1, lookahead + 1):
                    j = i + direction * k
                    if j < 0 or j > m:
                        break
                    near = sum(1 for q in track.configs[j].points if space.distance(p, q) <= radius)
                    if near >= 2:
                        hit = True
                        break
                if hit:
                    out.append((i, p, kind))
    return out


# -- winding numbers ----------------------------------------------------------


def winding_number(circ: Circle, strand: Sequence[float]) -> int:
    """Total signed lifted displacement over the circumference, rounded.

    The strand must close up and every step must stay under half the
    circumference so the lift is unambiguous.
    """
    if not isinstance(circ, Circle):
        raise SpaceMismatch("winding numbers need a circle space")
    lifts = circle_lift(circ, strand)
    w = (lifts[-1] - lifts[0]) / circ.circumference
    if abs(w - round(w)) > 1e-6:
        raise ValueError(f"strand does not close into a loop: winding {w}")
    return int(round(w))


def singleton_strand(track: Track) -> list:
    """The per-time points of a track whose configurations are singletons."""
    if any(len(c) != 1 for c in track.configs):
        raise ValueError("track has non-singleton configurations")
    return [c.points[0] for c in track.configs]


# -- path algebra -------------------------------------------------------------


def _junction_ok(space: Space, a: Configuration, b: Configuration, tol: float):
    gap = hausdorff(space, a, b)
    if gap > tol:
        raise EndpointMismatch(f"junction gap {gap} exceeds tolerance {tol}")


def concatenate(a: Track, b: Track, tol: float = LOOP_TOL) -> Track:
    """Run a on [0, 1/2] and b on [1/2, 1]; junction configs must agree."""
    if a.space != b.space:
        raise SpaceMismatch("concatenating tracks over different spaces")
    _junction_ok(a.space, a.configs[-1], b.configs[0], tol)
    times = tuple(t / 2 for t in a.times) + tuple(0.5 + t / 2 for t in b.times[1:])
    configs = a.configs + b.configs[1:]
    cap = max(a.cap, b.cap)
    closes = hausdorff(a.space, configs[0], configs[-1]) <= tol
    return Track(a.space, times, configs, "loop" if closes else "path", cap)


def reverse(a: Track) -> Track:
    times = tuple(1.0 - t for t in reversed(a.times))
    return Track(a.space, times, tuple(reversed(a.configs)), a.kind, a.cap)


def conjugate(gamma: Track, sigma: Track, tol: float = LOOP_TOL) -> Track:
    """gamma . sigma . gamma^(-1): a loop based at gamma(0)."""
    if sigma.kind != "loop":
        raise EndpointMismatch("conjugation needs a loop")
    _junction_ok(gamma.space, gamma.configs[-1], sigma.configs[0], tol)
    return concatenate(concatenate(gamma, sigma, tol), reverse(gamma), tol)


def resample(track: Track, new_times: Sequence[float]) -> Track:
    """Carry each new time to the nearest original sample (ties earlier)."""
    times = np.asarray(track.times)
    out = []
    for t in new_times:
        idx = int(np.searchsorted(times, t))
        if idx == 0:
            out.append(track.configs[0])
            continue
        if idx >= len(times):
            out.append(track.configs[-1])
            continue
        left, right = times[idx - 1], times[idx]
        out.append(track.configs[idx - 1] if t - left <= right - t else track.configs[idx])
    closes = hausdorff(track.space, out[0], out[-1]) <= LOOP_TOL
    return Track(track.space, tuple(new_times), tuple(out), "loop" if closes else "path", track.cap)
