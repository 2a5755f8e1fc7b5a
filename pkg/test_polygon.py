"""Tests for marked (8g-4)-gons: pairing, regular polygons and invariants."""
import math

import pytest

from engine import hyperbolic as hyp
from engine import polygon_builder as pb
from engine import verification
from engine.exceptions import IndexOutOfRange, InvalidInput, OrderViolation
from models.polygon import polygon_from_dict

REGULAR_SIDE_G2 = math.acosh(1 + math.sqrt(3))


@pytest.fixture(scope='module')
def regular2():
    return pb.regular_polygon(2)


def test_sigma_examples():
    assert pb.sigma(1, 2) == 7
    assert pb.sigma(4, 2) == 10
    assert pb.sigma(2, 2) == 12


@pytest.mark.parametrize('g', [2, 3, 4, 5])
def test_sigma_is_fixed_point_free_involution(g):
    n = pb.side_count(g)
    for i in range(1, n + 1):
        j = pb.sigma(i, g)
        assert j != i
        assert pb.sigma(j, g) == i
        # odd sides pair with odd sides
        assert j % 2 == i % 2


def test_sigma_rejects_bad_input():
    with pytest.raises(IndexOutOfRange):
        pb.sigma(13, 2)
    with pytest.raises(IndexOutOfRange):
        pb.sigma(0, 2)
    with pytest.raises(InvalidInput):
        pb.side_count(1)


@pytest.mark.parametrize('g', [2, 3, 4])
def test_vertex_cycles_have_four_vertices(g):
    cycles = pb.vertex_cycles(g)
    assert len(cycles) == pb.side_count(g) // 4
    assert all(len(c) == 4 for c in cycles)
    assert sorted(i for c in cycles for i in c) == list(range(1, pb.side_count(g) + 1))


def test_regular_genus2_metrics(regular2):
    m = pb.metrics(regular2)
    assert regular2.n == 12
    for length in m.side_lengths:
        assert length == pytest.approx(REGULAR_SIDE_G2, abs=1e-9)
    for angle in m.interior_angles:
        assert angle == pytest.approx(math.pi / 2, abs=1e-9)
    assert m.perimeter == pytest.approx(12 * REGULAR_SIDE_G2, abs=1e-8)
    assert m.perimeter == pytest.approx(19.9547, abs=1e-4)
    assert m.area == pytest.approx(4 * math.pi, abs=1e-7)


@pytest.mark.parametrize('g', [3, 4, 5])
def test_regular_polygon_side_length_and_area(g):
    poly = pb.regular_polygon(g)
    m = pb.metrics(poly)
    expected = math.acosh(1 + 2 * math.cos(math.pi / (4 * g - 2)))
    assert max(abs(x - expected) for x in m.side_lengths) < 1e-9
    assert m.area == pytest.approx(2 * math.pi * (2 * g - 2), abs=1e-7)


def test_regular_vertex_one_on_positive_axis(regular2):
    v1 = regular2.vertex(1)
    assert abs(v1.imag) < 1e-15
    assert v1.real > 0


def test_invariant_residuals_vanish(regular2):
    residuals = pb.invariant_residuals(regular2)
    for name, value in residuals.items():
        assert value < 1e-8, name


def test_pairings_are_involutive(regular2):
    """T_sigma(i) is the inverse of T_i."""
    for i in range(1, 13):
        s = pb.sigma(i, 2)
        assert hyp.same_map(regular2.pairing(s), hyp.inverse(regular2.pairing(i)), 1e-9)


def test_pairing_maps_side_onto_partner(regular2):
    """T_i carries V_i to V_sigma(i)+1 and V_i+1 to V_sigma(i)."""
    for i in range(1, 13):
        s = pb.sigma(i, 2)
        t = regular2.pairing(i)
        assert abs(hyp.apply(t, regular2.vertex(i)) - regular2.vertex(s + 1)) < 1e-9
        assert abs(hyp.apply(t, regular2.vertex(i + 1)) - regular2.vertex(s)) < 1e-9


def test_from_side_geodesics_round_trip(regular2):
    poly = pb.from_side_geodesics(2, regular2.P, regular2.Q, regular2.T)
    assert pb.vertex_distance(poly, regular2) < 1e-9


def test_swapped_endpoints_raise_order_violation(regular2):
    P = list(regular2.P)
    P[2], P[3] = P[3], P[2]
    with pytest.raises(OrderViolation):
        pb.from_side_geodesics(2, P, regular2.Q, regular2.T)


def test_rotation_preserves_metrics(regular2):
    rotated = pb.rotate(regular2, 0.37)
    assert pb.metrics(rotated).perimeter == pytest.approx(pb.metrics(regular2).perimeter)
    assert max(pb.invariant_residuals(rotated).values()) < 1e-8
    back = pb.canonical_frame(rotated)
    assert pb.vertex_distance(back, regular2) < 1e-12


@pytest.mark.parametrize('g', [2, 3, 4, 5])
def test_isoareal_equality_on_regular(g):
    check = pb.isoareal_check(pb.regular_polygon(g))
    assert abs(check.slack) < 1e-6


@pytest.mark.parametrize('g', [2, 3])
def test_regular_polygon_checks_all_pass(g):
    results = verification.polygon_checks(pb.regular_polygon(g), regular=True)
    assert [r.name for r in results if not r.passed] == []
    assert 'isoareal_tangent_bound' in {r.name for r in results}


def test_identity_correspondence_gives_identity():
    points = (1.0 + 0j, 1j, -1.0 + 0j)
    assert hyp.is_scalar_identity(pb.pairing_from_correspondence(points, points), 1e-12)


def test_polygon_json_round_trip(regular2):
    data = regular2.to_dict(pb.metrics(regular2))
    assert data['metrics']['perimeter'] == pytest.approx(12 * REGULAR_SIDE_G2)
    rebuilt = polygon_from_dict(data)
    assert pb.vertex_distance(rebuilt, regular2) == 0.0
    assert all(hyp.same_map(a, b, 1e-12) for a, b in zip(rebuilt.T, regular2.T))


@pytest.mark.parametrize('g', [2, 3])
def test_side_lengths_from_endpoints_on_regular(g):
    poly = pb.regular_polygon(g)
    lengths = pb.side_lengths_from_endpoints(poly.P, poly.Q)
    assert len(lengths) == poly.n
    for length in lengths:
        assert float(length) == pytest.approx(pb.regular_side_length(g), abs=1e-9)
    assert float(pb.perimeter_from_endpoints(poly.P, poly.Q)) == pytest.approx(pb.metrics(poly).perimeter,
                                                                               abs=1e-9)


def test_side_lengths_from_endpoints_rejects_bad_order(regular2):
    P = list(regular2.P)
    P[0], P[1] = P[1], P[0]
    with pytest.raises(OrderViolation):
        pb.side_lengths_from_endpoints(P, regular2.Q)
