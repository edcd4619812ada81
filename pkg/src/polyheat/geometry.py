"""Polygon data model: validation, angle classification, lengths, partition radii.

A polygon is one outer loop plus optional hole loops; every edge carries a
boundary-condition mark (Dirichlet or open).  ``validate`` normalizes
orientation (outer counterclockwise, holes clockwise) and enforces the
structural hypotheses everything downstream relies on: simple loops, holes
strictly inside the outer loop and pairwise disjoint, every vertex the
meeting point of exactly two edges with interior angle strictly between 0
and 2*pi.

Geometric predicates use a 1e-12 tolerance with an exact-arithmetic
orientation fallback for near-degenerate triples, so validation does not
flip-flop on nearly collinear inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .coefficients import AngleClass

__all__ = [
    "BoundaryCondition",
    "GeometryError",
    "Loop",
    "PartitionParams",
    "Polygon",
    "VertexAngle",
    "area",
    "classify_vertices",
    "lengths_by_type",
    "partition_params",
    "point_in_domain",
    "polygon_from_dict",
    "polygon_to_dict",
    "segment_hits_dirichlet",
    "validate",
]

EDGE_EPS = 1e-12

Point = tuple[float, float]


class BoundaryCondition(enum.Enum):
    DIRICHLET = "D"
    OPEN = "N"


class GeometryError(ValueError):
    """Invalid polygon input; message carries loop/edge context."""


@dataclass(frozen=True)
class Loop:
    """One closed vertex loop; edge i runs from vertices[i] to vertices[(i+1) % n]."""

    vertices: tuple[Point, ...]
    edge_bc: tuple[BoundaryCondition, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise GeometryError(f"loop needs at least 3 vertices, got {len(self.vertices)}")
        if len(self.edge_bc) != len(self.vertices):
            raise GeometryError(
                f"loop has {len(self.vertices)} vertices but {len(self.edge_bc)} edge marks"
            )

    def edge(self, i: int) -> tuple[Point, Point]:
        n = len(self.vertices)
        return self.vertices[i % n], self.vertices[(i + 1) % n]


@dataclass(frozen=True)
class Polygon:
    """First loop is the outer boundary; any further loops are holes."""

    loops: tuple[Loop, ...]

    def __post_init__(self) -> None:
        if not self.loops:
            raise GeometryError("polygon needs at least one loop")

    def all_edges(self) -> Iterable[tuple[int, int, Point, Point, BoundaryCondition]]:
        for li, loop in enumerate(self.loops):
            for ei in range(len(loop.vertices)):
                p, q = loop.edge(ei)
                yield li, ei, p, q, loop.edge_bc[ei]


@dataclass(frozen=True)
class VertexAngle:
    """Interior angle (measured inside the domain) and edge-mark class of a vertex."""

    loop_index: int
    vertex_index: int
    radians: float
    angle_class: AngleClass


@dataclass(frozen=True)
class PartitionParams:
    """Non-overlapping sector/cusp partition parameters of a polygon.

    R is half the smallest distance from a vertex to the boundary minus its
    two incident edges; epsilon is the smallest interior angle; delta is the
    cusp height (R/2)*sin(epsilon/2).  decay_rate = R^2*sin^2(epsilon/2)/16
    is the computable exponential-remainder rate used as the scale of the
    truncated terms, in units of 1/time.
    """

    R: float
    epsilon: float
    delta: float
    decay_rate: float


# ----------------------------------------------------------------------
# primitive predicates


def _orient(a: Point, b: Point, c: Point) -> float:
    """Sign of the cross product (b-a) x (c-a), exact when floats get ambiguous."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    scale = (
        abs(b[0] - a[0]) * abs(c[1] - a[1]) + abs(b[1] - a[1]) * abs(c[0] - a[0])
    )
    if abs(det) > EDGE_EPS * max(scale, 1.0):
        return math.copysign(1.0, det)
    # Near-degenerate: redo in exact rational arithmetic.
    ax, ay = Fraction(a[0]), Fraction(a[1])
    det_exact = (Fraction(b[0]) - ax) * (Fraction(c[1]) - ay) - (
        Fraction(b[1]) - ay
    ) * (Fraction(c[0]) - ax)
    if det_exact > 0:
        return 1.0
    if det_exact < 0:
        return -1.0
    return 0.0


def _segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed-segment intersection test (touching counts)."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """p assumed collinear with a-b: is it within the segment's bounding box?"""
    return (
        min(a[0], b[0]) - EDGE_EPS <= p[0] <= max(a[0], b[0]) + EDGE_EPS
        and min(a[1], b[1]) - EDGE_EPS <= p[1] <= max(a[1], b[1]) + EDGE_EPS
    )


def _point_segment_dist(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    ll = dx * dx + dy * dy
    if ll == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / ll
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _signed_area(vertices: Sequence[Point]) -> float:
    s = 0.0
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return 0.5 * s


def _point_in_loop(p: Point, loop: Loop) -> bool:
    """Even-odd crossing test against one loop (boundary handling is the caller's)."""
    inside = False
    px, py = p
    n = len(loop.vertices)
    for i in range(n):
        x1, y1 = loop.vertices[i]
        x2, y2 = loop.vertices[(i + 1) % n]
        if (y1 > py) != (y2 > py):
            x_cross = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if px < x_cross:
                inside = not inside
    return inside


def _reverse_loop(loop: Loop) -> Loop:
    n = len(loop.vertices)
    verts = (loop.vertices[0],) + tuple(loop.vertices[n - 1 - j] for j in range(n - 1))
    # Edge j of the reversed loop retraces original edge (n-1-j) mod n.
    bc = tuple(loop.edge_bc[(n - 1 - j) % n] for j in range(n))
    return Loop(verts, bc)


# ----------------------------------------------------------------------
# validation


def validate(polygon: Polygon) -> Polygon:
    """Check invariants and return an orientation-normalized copy.

    Raises GeometryError naming the offending loop and edge pair on
    self-intersections, duplicate vertices, degenerate angles, or holes
    that escape the outer loop.
    """
    for li, loop in enumerate(polygon.loops):
        verts = loop.vertices
        n = len(verts)
        for i in range(n):
            if verts[i] == verts[(i + 1) % n]:
                raise GeometryError(f"loop {li}: duplicate consecutive vertex at index {i}")
            if not all(math.isfinite(c) for c in verts[i]):
                raise GeometryError(f"loop {li}: non-finite coordinate at vertex {i}")

    # Pairwise edge intersections (orientation-independent, so done before
    # normalization to name the offending pair).  Edges adjacent within a
    # loop share one endpoint; anything else touching is a self-intersection.
    edges = list(polygon.all_edges())
    for a in range(len(edges)):
        la, ea, p1, p2, _ = edges[a]
        na = len(polygon.loops[la].vertices)
        for b in range(a + 1, len(edges)):
            lb, eb, q1, q2, _ = edges[b]
            if la == lb:
                gap = (eb - ea) % na
                if gap == 1 or gap == na - 1:
                    continue  # adjacent; overlap shows up as a zero angle below
            if _segments_intersect(p1, p2, q1, q2):
                raise GeometryError(
                    f"edges intersect: loop {la} edge {ea} with loop {lb} edge {eb}"
                )

    loops = []
    for li, loop in enumerate(polygon.loops):
        sa = _signed_area(loop.vertices)
        if sa == 0.0:
            raise GeometryError(f"loop {li}: zero signed area (degenerate loop)")
        want_ccw = li == 0
        if (sa > 0) != want_ccw:
            loop = _reverse_loop(loop)
        loops.append(loop)

    normalized = Polygon(tuple(loops))

    # Interior angles must be strictly inside (0, 2*pi); a zero angle means
    # an edge doubles back over its neighbour (collinear overlap).
    for li, loop in enumerate(normalized.loops):
        n = len(loop.vertices)
        for i in range(n):
            ang = _interior_angle(loop, i)
            if not (0.0 < ang < 2.0 * math.pi):
                raise GeometryError(
                    f"loop {li}: degenerate interior angle {ang!r} at vertex {i}"
                )

    outer = normalized.loops[0]
    for li, hole in enumerate(normalized.loops[1:], start=1):
        for vi, v in enumerate(hole.vertices):
            if not _point_in_loop(v, outer):
                raise GeometryError(f"hole {li} vertex {vi} lies outside the outer loop")
        for lj, other in enumerate(normalized.loops[1:], start=1):
            if lj <= li:
                continue
            if _point_in_loop(other.vertices[0], hole) or _point_in_loop(
                hole.vertices[0], other
            ):
                raise GeometryError(f"holes {li} and {lj} are nested")
    return normalized


def _interior_angle(loop: Loop, i: int) -> float:
    """Interior angle at vertex i, measured inside the domain.

    Assumes normalized orientation, under which the domain lies to the left
    of every directed edge, so the angle is pi minus the signed turn.
    """
    n = len(loop.vertices)
    prev = loop.vertices[(i - 1) % n]
    here = loop.vertices[i]
    nxt = loop.vertices[(i + 1) % n]
    ux, uy = here[0] - prev[0], here[1] - prev[1]
    vx, vy = nxt[0] - here[0], nxt[1] - here[1]
    turn = math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    if turn == math.pi:  # incoming and outgoing edges exactly retrace
        return 0.0
    return math.pi - turn


# ----------------------------------------------------------------------
# queries (expect a validated polygon)


def classify_vertices(polygon: Polygon) -> list[VertexAngle]:
    """Interior angle and edge-mark class for every vertex of every loop."""
    out = []
    for li, loop in enumerate(polygon.loops):
        n = len(loop.vertices)
        for i in range(n):
            bc_in = loop.edge_bc[(i - 1) % n]
            bc_out = loop.edge_bc[i]
            if bc_in is BoundaryCondition.DIRICHLET and bc_out is BoundaryCondition.DIRICHLET:
                cls = AngleClass.DIRICHLET_DIRICHLET
            elif bc_in is BoundaryCondition.OPEN and bc_out is BoundaryCondition.OPEN:
                cls = AngleClass.OPEN_OPEN
            else:
                cls = AngleClass.DIRICHLET_OPEN
            out.append(VertexAngle(li, i, _interior_angle(loop, i), cls))
    return out


def lengths_by_type(polygon: Polygon) -> tuple[float, float]:
    """(total Dirichlet edge length, total open edge length)."""
    l_minus = l_plus = 0.0
    for _, _, p, q, bc in polygon.all_edges():
        length = math.hypot(q[0] - p[0], q[1] - p[1])
        if bc is BoundaryCondition.DIRICHLET:
            l_minus += length
        else:
            l_plus += length
    return l_minus, l_plus


def area(polygon: Polygon) -> float:
    """Area enclosed by the outer loop minus the holes (normalized orientation)."""
    return math.fsum(_signed_area(loop.vertices) for loop in polygon.loops)


def partition_params(polygon: Polygon) -> PartitionParams:
    """Sector radius, smallest angle, cusp height and remainder decay rate."""
    best = math.inf
    for li, loop in enumerate(polygon.loops):
        n = len(loop.vertices)
        for i in range(n):
            v = loop.vertices[i]
            for lj, ej, p, q, _ in polygon.all_edges():
                if lj == li and (ej == i or ej == (i - 1) % n):
                    continue  # incident edge
                best = min(best, _point_segment_dist(v, p, q))
    r = 0.5 * best
    if not (r > 0.0):
        raise GeometryError("degenerate polygon: a vertex touches a non-incident edge")
    eps = min(va.radians for va in classify_vertices(polygon))
    delta = 0.5 * r * math.sin(0.5 * eps)
    rate = (r * math.sin(0.5 * eps)) ** 2 / 16.0
    return PartitionParams(R=r, epsilon=eps, delta=delta, decay_rate=rate)


def point_in_domain(polygon: Polygon, p: Point) -> bool:
    """Strict interior test: even-odd rule, holes excluded.

    Points within EDGE_EPS of any edge are classified as outside, so the
    answer is deterministic on (numerically) boundary points.
    """
    for _, _, a, b, _ in polygon.all_edges():
        if _point_segment_dist(p, a, b) <= EDGE_EPS:
            return False
    if not _point_in_loop(p, polygon.loops[0]):
        return False
    for hole in polygon.loops[1:]:
        if _point_in_loop(p, hole):
            return False
    return True


def segment_hits_dirichlet(polygon: Polygon, p: Point, q: Point) -> bool:
    """Does the closed segment p-q meet any Dirichlet-marked edge?

    Dirichlet edges are closed sets (endpoints included), so touching an
    endpoint counts as a hit.
    """
    for _, _, a, b, bc in polygon.all_edges():
        if bc is BoundaryCondition.DIRICHLET and _segments_intersect(p, q, a, b):
            return True
    return False


# ----------------------------------------------------------------------
# JSON wire format


def polygon_from_dict(data: dict) -> Polygon:
    """Parse {"loops": [{"vertices": [[x, y], ...], "edges": ["D"|"N", ...]}]}."""
    try:
        raw_loops = data["loops"]
    except (TypeError, KeyError):
        raise GeometryError('polygon JSON must be an object with a "loops" array')
    if not isinstance(raw_loops, list) or not raw_loops:
        raise GeometryError('"loops" must be a non-empty array')
    loops = []
    for li, raw in enumerate(raw_loops):
        try:
            verts = tuple((float(x), float(y)) for x, y in raw["vertices"])
        except (TypeError, KeyError, ValueError):
            raise GeometryError(f'loop {li}: "vertices" must be an array of [x, y] pairs')
        try:
            bc = tuple(BoundaryCondition(mark) for mark in raw["edges"])
        except (TypeError, KeyError):
            raise GeometryError(f'loop {li}: missing "edges" array')
        except ValueError:
            raise GeometryError(f'loop {li}: edge marks must be "D" or "N"')
        loops.append(Loop(verts, bc))
    return Polygon(tuple(loops))


def polygon_to_dict(polygon: Polygon) -> dict:
    return {
        "loops": [
            {
                "vertices": [[x, y] for x, y in loop.vertices],
                "edges": [bc.value for bc in loop.edge_bc],
            }
            for loop in polygon.loops
        ]
    }
