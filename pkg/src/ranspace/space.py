"""Computable geodesic metric spaces: circle, interval, metric graph.

Points are plain floats (circle and interval coordinates) or ``GraphPoint``
pairs ``(edge, t)`` with ``t`` in ``[0, 1]`` measured from the edge's first
endpoint.  All operations are pure and all space objects are immutable, so
everything here is safe for unrestricted concurrent use.

Determinism contracts:

* circle geodesics between antipodal points take the arc in the direction of
  increasing canonical coordinate;
* graph geodesics between equally short routes take the route that wins a
  fixed candidate ordering, with vertex-to-vertex legs resolved to the path
  minimal in lexicographic edge-index order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import InvalidPoint

CANON_TOL = 1e-12


class GraphPoint(NamedTuple):
    edge: int
    t: float


Point = Union[float, GraphPoint]


@dataclass(frozen=True)
class Circle:
    """Circle of a given circumference, coordinates taken modulo it."""

    circumference: float = 1.0

    def __post_init__(self):
        if not self.circumference > 0:
            raise ValueError("circumference must be positive")

    def canon(self, p: Point) -> float:
        if isinstance(p, GraphPoint):
            raise InvalidPoint(f"graph point {p!r} on a circle")
        c = self.circumference
        x = float(p) % c
        # values within canonical tolerance of the seam map to 0
        if c - x < CANON_TOL * max(1.0, c) or x < CANON_TOL * max(1.0, c):
            return 0.0
        return x

    def distance(self, p: float, q: float) -> float:
        c = self.circumference
        raw = abs(self.canon(p) - self.canon(q))
        return min(raw, c - raw)

    def geodesic(self, p: float, q: float, s: float) -> float:
        c = self.circumference
        a, b = self.canon(p), self.canon(q)
        forward = (b - a) % c
        # forward == c/2 is the antipodal tie: go with increasing coordinate
        if forward <= c / 2.0:
            return self.canon(a + s * forward)
        return self.canon(a - s * (c - forward))

    def sort_key(self, p: float):
        return (self.canon(p),)

    def random_point(self, rng: np.random.Generator) -> float:
        return self.canon(rng.uniform(0.0, self.circumference))

    def encode(self, points: Sequence[float]) -> np.ndarray:
        return np.asarray([self.canon(p) for p in points], dtype=float)

    def pairwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raw = np.abs(a[:, None] - b[None, :])
        return np.minimum(raw, self.circumference - raw)


@dataclass(frozen=True)
class Interval:
    """Closed interval [0, length] with the absolute-value metric."""

    length: float = 1.0

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError("length must be positive")

    def canon(self, p: Point) -> float:
        if isinstance(p, GraphPoint):
            raise InvalidPoint(f"graph point {p!r} on an interval")
        x = float(p)
        if x < -CANON_TOL or x > self.length + CANON_TOL:
            raise InvalidPoint(f"{x} outside [0, {self.length}]")
        return min(max(x, 0.0), self.length)

    def distance(self, p: float, q: float) -> float:
        return abs(self.canon(p) - self.canon(q))

    def geodesic(self, p: float, q: float, s: float) -> float:
        a, b = self.canon(p), self.canon(q)
        return a + s * (b - a)

    def sort_key(self, p: float):
        return (self.canon(p),)

    def random_point(self, rng: np.random.Generator) -> float:
        return float(rng.uniform(0.0, self.length))

    def encode(self, points: Sequence[float]) -> np.ndarray:
        return np.asarray([self.canon(p) for p in points], dtype=float)

    def pairwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.abs(a[:, None] - b[None, :])


@dataclass(frozen=True)
class MetricGraph:
    """Connected multigraph with positive edge lengths.

    Edges are (u, v, length) triples; parallel edges and self loops are
    allowed.  Shortest paths are computed once per source vertex and cached.
    """

    num_vertices: int
    edges: tuple  # of (u, v, length)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v), float(l)) for u, v, l in self.edges))
        if self.num_vertices < 1:
            raise ValueError("need at least one vertex")
        for u, v, l in self.edges:
            if not 0 <= u < self.num_vertices or not 0 <= v < self.num_vertices:
                raise ValueError(f"edge endpoint out of range: {(u, v, l)}")
            if not l > 0:
                raise ValueError("edge lengths must be strictly positive")
        if not self._connected():
            raise ValueError("metric graph must be connected")

    def _connected(self) -> bool:
        seen = {0}
        frontier = [0]
        adj = {}
        for u, v, _ in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        while frontier:
            w = frontier.pop()
            for x in adj.get(w, []):
                if x not in seen:
                    seen.add(x)
                    frontier.append(x)
        return len(seen) == self.num_vertices

    # -- vertex-level shortest paths ------------------------------------

    def _paths_from(self, source: int):
        """Dijkstra keyed by (distance, edge index sequence).

        Settling on first pop yields, among shortest paths, the one whose
        edge-index sequence is lexicographically minimal.
        """
        if source in self._cache:
            return self._cache[source]
        dist = [np.inf] * self.num_vertices
        route = [None] * self.num_vertices
        heap = [(0.0, (), source)]
        while heap:
            d, seq, w = heapq.heappop(heap)
            if route[w] is not None:
                continue
            dist[w] = d
            route[w] = seq
            for idx, (u, v, l) in enumerate(self.edges):
                if u == w and route[v] is None:
                    heapq.heappush(heap, (d + l, seq + (idx,), v))
                if v == w and route[u] is None:
                    heapq.heappush(heap, (d + l, seq + (idx,), u))
        self._cache[source] = (dist, route)
        return dist, route

    def vertex_distance_matrix(self) -> np.ndarray:
        key = "matrix"
        if key not in self._cache:
            m = np.zeros((self.num_vertices, self.num_vertices))
            for s in range(self.num_vertices):
                m[s, :] = self._paths_from(s)[0]
            self._cache[key] = m
        return self._cache[key]

    def vertex_point(self, v: int) -> GraphPoint:
        """Canonical (edge, endpoint) representative of a vertex."""
        for idx, (u, w, _) in enumerate(self.edges):
            if u == v:
                return GraphPoint(idx, 0.0)
            if w == v:
                return GraphPoint(idx, 1.0)
        raise InvalidPoint(f"isolated vertex {v}")

    # -- points ----------------------------------------------------------

    def canon(self, p: Point) -> GraphPoint:
        if not isinstance(p, GraphPoint):
            if isinstance(p, (tuple, list)) and len(p) == 2:
                p = GraphPoint(int(p[0]), float(p[1]))
            else:
                raise InvalidPoint(f"{p!r} is not a graph point")
        if not 0 <= p.edge < len(self.edges):
            raise InvalidPoint(f"edge index {p.edge} out of range")
        t = float(p.t)
        if t < -CANON_TOL or t > 1 + CANON_TOL:
            raise InvalidPoint(f"edge parameter {t} outside [0, 1]")
        u, v, _ = self.edges[p.edge]
        if t < CANON_TOL:
            return self.vertex_point(u)
        if t > 1 - CANON_TOL:
            return self.vertex_point(v)
        return GraphPoint(int(p.edge), t)

    def _endpoint_legs(self, p: GraphPoint):
        u, v, l = self.edges[p.edge]
        return ((u, p.t * l), (v, (1.0 - p.t) * l))

    def distance(self, p: Point, q: Point) -> float:
        p, q = self.canon(p), self.canon(q)
        if q < p:
            # fixed operand order makes symmetry exact in floating point
            p, q = q, p
        dmat = self.vertex_distance_matrix()
        best = np.inf
        if p.edge == q.edge:
            best = abs(p.t - q.t) * self.edges[p.edge][2]
        for a, leg_a in self._endpoint_legs(p):
            for b, leg_b in self._endpoint_legs(q):
                best = min(best, leg_a + dmat[a, b] + leg_b)
        return float(best)

    def _route(self, p: GraphPoint, q: GraphPoint):
        """Segment list ((edge, t0, t1), ...) realizing a shortest route.

        Candidates are scanned in a fixed order and replaced only on strict
        improvement, which together with lexicographic vertex legs makes the
        chosen route deterministic.
        """
        dmat = self.vertex_distance_matrix()
        best_len = np.inf
        best = None
        if p.edge == q.edge:
            best_len = abs(p.t - q.t) * self.edges[p.edge][2]
            best = [(p.edge, p.t, q.t)]
        for a, leg_a in self._endpoint_legs(p):
            for b, leg_b in self._endpoint_legs(q):
                total = leg_a + dmat[a, b] + leg_b
                if total < best_len - CANON_TOL:
                    segs = []
                    u, v, _ = self.edges[p.edge]
                    segs.append((p.edge, p.t, 0.0 if a == u else 1.0))
                    w = a
                    for idx in self._paths_from(a)[1][b]:
                        eu, ev, _ = self.edges[idx]
                        if eu == w:
                            segs.append((idx, 0.0, 1.0))
                            w = ev
                        else:
                            segs.append((idx, 1.0, 0.0))
                            w = eu
                    u, v, _ = self.edges[q.edge]
                    segs.append((q.edge, 0.0 if b == u else 1.0, q.t))
                    best_len = total
                    best = segs
        return best, best_len

    def geodesic(self, p: Point, q: Point, s: float) -> GraphPoint:
        p, q = self.canon(p), self.canon(q)
        if p == q:
            return p
        segs, total = self._route(p, q)
        target = s * total
        acc = 0.0
        for edge, t0, t1 in segs:
            seg_len = abs(t1 - t0) * self.edges[edge][2]
            if seg_len <= 0:
                continue
            if acc + seg_len >= target - CANON_TOL:
                frac = (target - acc) / seg_len
                return self.canon(GraphPoint(edge, t0 + frac * (t1 - t0)))
            acc += seg_len
        return q

    def sort_key(self, p: Point):
        c = self.canon(p)
        return (c.edge, c.t)

    def random_point(self, rng: np.random.Generator) -> GraphPoint:
        lengths = np.array([l for _, _, l in self.edges])
        edge = int(rng.choice(len(self.edges), p=lengths / lengths.sum()))
        return self.canon(GraphPoint(edge, float(rng.uniform(0.0, 1.0))))

    def encode(self, points: Sequence[Point]):
        pts = [self.canon(p) for p in points]
        return (
            np.asarray([p.edge for p in pts], dtype=int),
            np.asarray([p.t for p in pts], dtype=float),
        )

    def pairwise(self, a, b) -> np.ndarray:
        ea, ta = a
        eb, tb = b
        lengths = np.array([l for _, _, l in self.edges])
        us = np.array([u for u, _, _ in self.edges])
        vs = np.array([v for _, v, _ in self.edges])
        dmat = self.vertex_distance_matrix()
        la, lb = lengths[ea], lengths[eb]
        legs_a = (ta * la, (1.0 - ta) * la)
        ends_a = (us[ea], vs[ea])
        legs_b = (tb * lb, (1.0 - tb) * lb)
        ends_b = (us[eb], vs[eb])
        best = np.full((len(ta), len(tb)), np.inf)
        for leg_a, end_a in zip(legs_a, ends_a):
            for leg_b, end_b in zip(legs_b, ends_b):
                cand = leg_a[:, None] + dmat[end_a[:, None], end_b[None, :]] + leg_b[None, :]
                np.minimum(best, cand, out=best)
        same = ea[:, None] == eb[None, :]
        direct = np.abs(ta[:, None] - tb[None, :]) * la[:, None]
        return np.where(same, np.minimum(best, direct), best)


Space = Union[Circle, Interval, MetricGraph]


def distance(space: Space, p: Point, q: Point) -> float:
    """Geodesic metric of the space, at the point level."""
    return space.distance(p, q)


def geodesic(space: Space, p: Point, q: Point, s: float) -> Point:
    """Constant-speed geodesic from p (s=0) to q (s=1)."""
    return space.geodesic(p, q, s)


def canon(space: Space, p: Point) -> Point:
    return space.canon(p)


def points_equal(space: Space, p: Point, q: Point, tol: float = CANON_TOL) -> bool:
    return space.distance(p, q) <= tol
