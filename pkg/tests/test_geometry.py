import math
import random

import pytest

from polyheat.coefficients import AngleClass
from polyheat.geometry import (
    BoundaryCondition,
    GeometryError,
    Loop,
    Polygon,
    area,
    classify_vertices,
    lengths_by_type,
    partition_params,
    point_in_domain,
    polygon_from_dict,
    polygon_to_dict,
    segment_hits_dirichlet,
    validate,
)

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.OPEN
PI = math.pi


def square(marks=(D, D, N, N)):
    return Polygon((Loop(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)), tuple(marks)),))


def l_shape_all_dirichlet():
    # unit L with arm width 1/2; reflex corner at (1/2, 1/2)
    verts = ((0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 0.5), (0.5, 1.0), (0.0, 1.0))
    return Polygon((Loop(verts, (D,) * 6),))


def square_with_hole():
    outer = Loop(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)), (D, D, D, D))
    hole = Loop(((0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)), (N, N, N, N))
    return Polygon((outer, hole))


def test_square_validates():
    p = validate(square())
    assert len(p.loops) == 1


def test_bowtie_reports_edge_pair():
    bowtie = Polygon((Loop(((0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)), (D, D, D, D)),))
    with pytest.raises(GeometryError, match="edges intersect"):
        validate(bowtie)


def test_clockwise_outer_is_reversed():
    cw = Polygon((Loop(((0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)), (D, N, N, D)),))
    p = validate(cw)
    assert area(p) == pytest.approx(1.0, abs=1e-15)
    # the mark of each geometric edge must survive the reversal: the
    # original edge (0,0)->(0,1) was Dirichlet
    assert segment_hits_dirichlet(p, (-0.5, 0.5), (0.5, 0.5))


def test_too_few_vertices():
    with pytest.raises(GeometryError):
        Loop(((0.0, 0.0), (1.0, 0.0)), (D, D))


def test_duplicate_vertex():
    bad = Polygon((Loop(((0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)), (D, D, D, D)),))
    with pytest.raises(GeometryError, match="duplicate"):
        validate(bad)


def test_hole_outside_outer_rejected():
    outer = Loop(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)), (D, D, D, D))
    hole = Loop(((2.0, 2.0), (3.0, 2.0), (3.0, 3.0), (2.0, 3.0)), (N, N, N, N))
    with pytest.raises(GeometryError, match="outside"):
        validate(Polygon((outer, hole)))


def test_classification_mixed_square():
    p = validate(square((D, D, N, N)))
    classes = sorted(va.angle_class.value for va in classify_vertices(p))
    assert classes == ["A", "A", "B", "C"]
    assert all(abs(va.radians - 0.5 * PI) < 1e-12 for va in classify_vertices(p))


def test_classification_all_dirichlet_square():
    p = validate(square((D, D, D, D)))
    assert [va.angle_class for va in classify_vertices(p)] == [AngleClass.DIRICHLET_DIRICHLET] * 4


def test_classification_l_shape_reflex():
    p = validate(l_shape_all_dirichlet())
    angles = sorted(va.radians for va in classify_vertices(p))
    assert all(va.angle_class is AngleClass.DIRICHLET_DIRICHLET for va in classify_vertices(p))
    assert angles[:5] == pytest.approx([0.5 * PI] * 5, abs=1e-12)
    assert angles[5] == pytest.approx(1.5 * PI, abs=1e-12)


def test_lengths_by_type():
    assert lengths_by_type(validate(square((D, D, N, N)))) == (2.0, 2.0)
    assert lengths_by_type(validate(square((D, D, D, D)))) == (4.0, 0.0)
    assert lengths_by_type(validate(square((N, N, N, N)))) == (0.0, 4.0)


def test_area_examples():
    assert area(validate(square())) == pytest.approx(1.0, abs=1e-15)
    assert area(validate(square_with_hole())) == pytest.approx(0.75, abs=1e-15)
    tri = Polygon((Loop(((0.0, 0.0), (4.0, 0.0), (0.0, 3.0)), (D, D, D)),))
    assert area(validate(tri)) == pytest.approx(6.0, abs=1e-14)


def _rigid(p, angle, dx, dy):
    c, s = math.cos(angle), math.sin(angle)
    loops = []
    for loop in p.loops:
        verts = tuple((c * x - s * y + dx, s * x + c * y + dy) for x, y in loop.vertices)
        loops.append(Loop(verts, loop.edge_bc))
    return Polygon(tuple(loops))


def test_area_rigid_motion_and_rotation_invariance():
    p = validate(l_shape_all_dirichlet())
    base = area(p)
    moved = validate(_rigid(p, 0.7, 3.0, -2.0))
    assert abs(area(moved) - base) < 1e-12
    loop = p.loops[0]
    rolled = Loop(loop.vertices[2:] + loop.vertices[:2], loop.edge_bc[2:] + loop.edge_bc[:2])
    assert abs(area(validate(Polygon((rolled,)))) - base) < 1e-12


def test_turning_angle_sums():
    p = validate(square_with_hole())
    outer_sum = math.fsum(PI - va.radians for va in classify_vertices(p) if va.loop_index == 0)
    hole_sum = math.fsum(PI - va.radians for va in classify_vertices(p) if va.loop_index == 1)
    assert abs(outer_sum - 2.0 * PI) < 1e-9
    assert abs(hole_sum + 2.0 * PI) < 1e-9


def test_mixed_class_count_is_even():
    rng = random.Random(4)
    p = validate(l_shape_all_dirichlet())
    loop = p.loops[0]
    for _ in range(50):
        marks = tuple(rng.choice([D, N]) for _ in loop.edge_bc)
        q = validate(Polygon((Loop(loop.vertices, marks),)))
        n_mixed = sum(
            1 for va in classify_vertices(q) if va.angle_class is AngleClass.DIRICHLET_OPEN
        )
        assert n_mixed % 2 == 0


def test_partition_params_square():
    pp = partition_params(validate(square()))
    assert pp.R == pytest.approx(0.5, abs=1e-15)
    assert pp.epsilon == pytest.approx(0.5 * PI, abs=1e-12)
    assert pp.delta == pytest.approx(math.sqrt(2.0) / 8.0, abs=1e-15)
    assert pp.decay_rate == pytest.approx(pp.R**2 * math.sin(pp.epsilon / 2) ** 2 / 16.0, rel=1e-15)


def test_partition_params_equilateral_triangle():
    h = math.sqrt(3.0) / 2.0
    tri = validate(Polygon((Loop(((0.0, 0.0), (1.0, 0.0), (0.5, h)), (D, D, D)),)))
    pp = partition_params(tri)
    assert pp.epsilon == pytest.approx(PI / 3.0, abs=1e-12)
    assert pp.R == pytest.approx(math.sqrt(3.0) / 4.0, abs=1e-12)


def test_partition_params_hexagon_epsilon():
    verts = tuple(
        (math.cos(2.0 * PI * k / 6.0), math.sin(2.0 * PI * k / 6.0)) for k in range(6)
    )
    hexa = validate(Polygon((Loop(verts, (D,) * 6),)))
    assert partition_params(hexa).epsilon == pytest.approx(2.0 * PI / 3.0, abs=1e-12)


def test_partition_disks_are_disjoint():
    for poly in (square(), l_shape_all_dirichlet(), square_with_hole()):
        p = validate(poly)
        r = partition_params(p).R
        verts = [v for loop in p.loops for v in loop.vertices]
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                assert math.dist(verts[i], verts[j]) >= 2.0 * r - 1e-12


def test_point_in_domain():
    p = validate(square())
    assert point_in_domain(p, (0.5, 0.5))
    assert not point_in_domain(p, (2.0, 2.0))
    hole = validate(square_with_hole())
    assert not point_in_domain(hole, (0.5, 0.5))
    assert point_in_domain(hole, (0.1, 0.1))


def test_point_near_edge_is_outside():
    p = validate(square())
    assert not point_in_domain(p, (0.5, 1e-13))
    assert not point_in_domain(p, (0.5, 0.0))
    assert point_in_domain(p, (0.5, 1e-9))


def test_segment_hits_dirichlet():
    p = validate(square((D, D, N, N)))
    assert segment_hits_dirichlet(p, (0.5, 0.5), (0.5, -0.5))  # crosses bottom D edge
    assert not segment_hits_dirichlet(p, (0.5, 0.5), (0.5, 1.5))  # crosses top N edge
    assert not segment_hits_dirichlet(p, (0.3, 0.3), (0.6, 0.6))  # interior
    assert segment_hits_dirichlet(p, (0.5, 0.5), (1.5, 0.5))  # crosses right D edge
    # touching a Dirichlet endpoint counts (closed edges)
    assert segment_hits_dirichlet(p, (1.0, 1.0), (1.5, 1.5))


def test_json_round_trip():
    p = validate(square_with_hole())
    again = validate(polygon_from_dict(polygon_to_dict(p)))
    assert polygon_to_dict(again) == polygon_to_dict(p)


def test_json_errors_carry_context():
    with pytest.raises(GeometryError, match="loops"):
        polygon_from_dict({})
    with pytest.raises(GeometryError, match="loop 0"):
        polygon_from_dict({"loops": [{"vertices": [[0, 0], [1, 0], [1, 1]], "edges": ["D", "X", "D"]}]})
