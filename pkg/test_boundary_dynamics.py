"""Tests for the boundary map, its extensions and the Markov structure."""
import math

import numpy as np
import pytest

from engine import boundary_map as bmap
from engine import hyperbolic as hyp
from engine import markov
from engine import maskit
from engine import polygon_builder as pb
from engine.exceptions import Ambiguous, NotInDomain
from models.boundary import BoundaryPoint, Geodesic, GeodesicPair
from utils.helpers import ccw_distance, wrap_angle


@pytest.fixture(scope='module')
def regular2():
    return pb.regular_polygon(2)


@pytest.fixture(scope='module')
def bm(regular2):
    return bmap.BoundaryMap(regular2)


@pytest.fixture(scope='module')
def stretched_bm():
    regular = maskit.regular_parameters()
    return bmap.BoundaryMap(maskit.polygon_for(regular.with_value('beta', 1.5 * regular.beta)))


def random_pairs(count, seed=0x5EED):
    rng = np.random.default_rng(seed)
    u = rng.uniform(0, 2 * np.pi, count)
    w = rng.uniform(0, 2 * np.pi, count)
    return u, w


def domain_pairs(poly, count, seed=0x5EED):
    """Random pairs whose geodesic meets the polygon, away from vertices."""
    u, w = random_pairs(4 * count, seed)
    sides, ambiguous = bmap.exit_sides(poly, u, w)
    keep = (sides > 0) & ~ambiguous
    return [GeodesicPair.from_angles(a, b) for a, b in zip(u[keep][:count], w[keep][:count])]


# f_P and F_P

def test_f_p_maps_partition_point(bm, regular2):
    for i in range(1, 13):
        image, branch = bmap.f_P(bm, BoundaryPoint(regular2.p(i)))
        assert branch == i
        assert image.isclose(BoundaryPoint(regular2.q(pb.sigma(i, 2) + 1)), 1e-9)


def test_half_open_convention(bm, regular2):
    assert bm.branch(regular2.p(1)) == 1
    assert bm.branch(regular2.p(2) - 1e-9) == 1
    assert bm.branch(regular2.p(2)) == 2


def test_f_p_expands_at_arc_midpoint(bm, regular2):
    x = regular2.p(1) + 0.5 * ccw_distance(regular2.p(1), regular2.p(2))
    assert hyp.derivative_modulus(regular2.pairing(1), np.exp(1j * x)) > 1.0


def test_natural_extension_factors_onto_f_p(bm):
    u, w = random_pairs(1000)
    for a, b in zip(u, w):
        pair = GeodesicPair.from_angles(a, b)
        image = bmap.F_P(bm, pair)
        w_image, _ = bmap.f_P(bm, pair.w)
        assert image.w.isclose(w_image, 1e-12)


def test_vectorized_branches_match(bm):
    u, w = random_pairs(500)
    idx = bm.branches(w)
    assert all(bm.branch(x) == k + 1 for x, k in zip(w, idx))
    u2, w2 = bmap.iterate_pairs(bm, u, w, 1)
    for a, b, a2, b2 in zip(u[:50], w[:50], u2[:50], w2[:50]):
        image = bmap.F_P(bm, GeodesicPair.from_angles(a, b))
        assert image.isclose(GeodesicPair.from_angles(a2, b2), 1e-10)


# exit sides and the geometric map

def test_diameter_exits_through_side_containing_its_direction(regular2):
    for w in np.linspace(0.05, 2 * np.pi - 0.05, 36):
        pair = GeodesicPair.from_angles(w + np.pi, w)
        i = bmap.exit_side(regular2, pair)
        assert i is not None
        side = Geodesic.from_angles(regular2.p(i), regular2.q(i + 1))
        crossing = hyp.geodesic_intersection(pair.geodesic, side)
        a, b = regular2.vertex(i), regular2.vertex(i + 1)
        total = hyp.hyp_distance(a, crossing) + hyp.hyp_distance(crossing, b)
        assert total == pytest.approx(hyp.hyp_distance(a, b), abs=1e-9)


def test_geodesic_near_boundary_misses_polygon(regular2):
    start = regular2.q(1)
    span = ccw_distance(start, regular2.p(2))
    pair = GeodesicPair.from_angles(start + 0.4 * span, start + 0.6 * span)
    assert bmap.exit_side(regular2, pair) is None
    with pytest.raises(NotInDomain):
        bmap.F_geo(bmap.BoundaryMap(regular2), pair)


def test_side_geodesic_is_ambiguous(regular2):
    with pytest.raises(Ambiguous):
        bmap.exit_side(regular2, GeodesicPair.from_angles(regular2.p(1), regular2.q(2)))


def test_geometric_map_keeps_pairs_in_domain(bm, regular2):
    for pair in domain_pairs(regular2, 1000):
        image = bmap.F_geo(bm, pair)
        assert bmap.exit_sides(regular2, [image.u.angle], [image.w.angle])[0][0] > 0


# phi and the rectangular attractor

def test_phi_is_identity_on_attractor(bm, regular2):
    for pair in domain_pairs(regular2, 500):
        if bmap.in_omega_p(bm, pair):
            assert bmap.phi(bm, pair) is pair


def test_phi_lands_in_attractor(bm, regular2):
    pairs = domain_pairs(regular2, 1000)
    inside = sum(bmap.in_omega_p(bm, bmap.phi(bm, p)) for p in pairs)
    assert inside >= 999


def test_phi_is_injective(bm, regular2):
    images = np.array([[bmap.phi(bm, p).u.angle, bmap.phi(bm, p).w.angle]
                       for p in domain_pairs(regular2, 1000)])
    gaps = np.abs(images[:, None, :] - images[None, :, :]).max(axis=2)
    np.fill_diagonal(gaps, np.inf)
    assert gaps.min() > 1e-10


def test_phi_conjugates_geometric_map_to_natural_extension(bm, regular2):
    agree = 0
    pairs = domain_pairs(regular2, 1000)
    for p in pairs:
        lhs = bmap.phi(bm, bmap.F_geo(bm, p))
        rhs = bmap.F_P(bm, bmap.phi(bm, p))
        agree += lhs.isclose(rhs, 1e-9)
    assert agree >= 990


def nu_density(u, w):
    """|du dw| / |e^iu - e^iw|^2."""
    return 1.0 / (4.0 * np.sin(0.5 * (u - w)) ** 2)


def pull_back(m, angles):
    z = np.exp(1j * np.asarray(angles, dtype=float))
    return wrap_angle(np.angle((m.a * z + m.b) / (m.c * z + m.d)))


def bulge_mass(b, w_lo, w_width, back=None, u_count=1500, step=0.0025):
    """
    Midpoint quadrature of nu over the pairs, with w in the given arc, whose
    pull-back by `back` lies in the geometric domain but not in the attractor.
    """
    poly = b.polygon
    u = (np.arange(u_count) + 0.5) * (2 * np.pi / u_count)
    w_count = int(np.ceil(w_width / step))
    total = 0.0
    for w in w_lo + (np.arange(w_count) + 0.5) * (w_width / w_count):
        ww = np.full(u_count, w)
        pu, pw = (u, ww) if back is None else (pull_back(back, u), pull_back(back, ww))
        inside = (bmap.exit_sides(poly, pu, pw)[0] > 0) & ~bmap.in_omega_p_many(b, pu, pw)
        total += np.sum(nu_density(u[inside], w))
    return total * (2 * np.pi / u_count) * (w_width / w_count)


@pytest.mark.parametrize('fixture', ['bm', 'stretched_bm'])
@pytest.mark.parametrize('i', [1, 2])
def test_phi_preserves_measure_of_bulge(fixture, i, request):
    """nu(B_i) equals nu of its corner T_{sigma(i)-1} T_i (B_i)."""
    b = request.getfixturevalue(fixture)
    poly = b.polygon
    m = hyp.compose(poly.pairing(pb.wrap_index(pb.sigma(i, poly.genus) - 1, poly.n)), poly.pairing(i))
    bulge = bulge_mass(b, poly.p(i), ccw_distance(poly.p(i), poly.p(i + 1)))
    assert bulge > 0

    image_lo = hyp.apply_boundary(m, BoundaryPoint(poly.p(i))).angle
    image_hi = hyp.apply_boundary(m, BoundaryPoint(poly.p(i + 1))).angle
    corner = bulge_mass(b, image_lo, ccw_distance(image_lo, image_hi), back=hyp.inverse(m))
    assert corner == pytest.approx(bulge, rel=0.03)


def test_nu_rectangle_is_moebius_invariant(regular2):
    m = hyp.compose(regular2.pairing(6), regular2.pairing(1))
    rect = (3.0, 4.0, 0.5, 1.5)
    image = [hyp.apply_boundary(m, BoundaryPoint(x)).angle for x in rect]
    assert bmap.nu_rectangle(*image) == pytest.approx(bmap.nu_rectangle(*rect), rel=1e-9)


def test_vectorized_attractor_membership(bm):
    u, w = random_pairs(2000)
    many = bmap.in_omega_p_many(bm, u, w)
    single = [bmap.in_omega_p(bm, GeodesicPair.from_angles(a, b)) for a, b in zip(u, w)]
    assert list(many) == single


@pytest.mark.parametrize('fixture', ['bm', 'stretched_bm'])
def test_iterated_pairs_concentrate_on_attractor(fixture, request):
    m = request.getfixturevalue(fixture)
    u, w = bmap.attractor_sample(m, 100, 5000, 0x5EED)
    assert bmap.in_omega_p_many(m, u, w).mean() > 0.999


@pytest.mark.parametrize('fixture', ['bm', 'stretched_bm'])
def test_attractor_mass_equals_perimeter(fixture, request):
    m = request.getfixturevalue(fixture)
    assert bmap.nu_mass_omega_p(m) == pytest.approx(pb.metrics(m.polygon).perimeter, abs=1e-7)


def test_nu_rectangle_is_positive_and_additive():
    whole = bmap.nu_rectangle(3.0, 4.0, 0.5, 1.5)
    split = bmap.nu_rectangle(3.0, 3.4, 0.5, 1.5) + bmap.nu_rectangle(3.4, 4.0, 0.5, 1.5)
    assert whole > 0
    assert whole == pytest.approx(split, rel=1e-12)


# orbits

def test_single_step_derivative_sum(bm, regular2):
    x0 = 1.234
    i = bm.branch(x0)
    expected = math.log(hyp.derivative_modulus(regular2.pairing(i), np.exp(1j * x0)))
    assert bmap.orbit_derivative_sum(bm, x0, 1) == pytest.approx(expected, rel=1e-12)


def test_derivative_sum_is_additive(bm):
    x0 = 0.777
    first = bmap.orbit_statistics(bm, x0, 5)
    second = bmap.orbit_derivative_sum(bm, first.final_angle, 5)
    assert bmap.orbit_derivative_sum(bm, x0, 10) == pytest.approx(first.log_derivative_sum + second,
                                                                  rel=1e-9)


def test_long_orbit_avoids_partition_points(bm):
    stats = bmap.orbit_statistics(bm, 0.5 + 1 / math.pi, 100_000)
    assert stats.near_endpoint == 0


# Markov structure

def test_regular_markov_matrix(bm):
    md = markov.build_markov(bm)
    assert md.matrix.shape == (24, 24)
    assert md.row_sums().min() >= 2
    assert markov.is_irreducible(md.matrix)


@pytest.mark.parametrize('g', [2, 3, 4, 5, 6])
def test_analytic_eigenpair(g):
    md = markov.build_markov(bmap.BoundaryMap(pb.regular_polygon(g)))
    assert markov.eigenpair_residual(md) < 1e-9


def test_markov_matrix_is_the_same_across_the_chart(bm):
    reference = markov.build_markov(bm).matrix
    for _, poly in maskit.sample_parameters(20, seed=0x5EED):
        matrix = markov.build_markov(bmap.BoundaryMap(poly)).matrix
        assert matrix.tobytes() == reference.tobytes()


def test_topological_entropy_bounds():
    h2 = markov.topological_entropy(markov.build_markov(bmap.BoundaryMap(pb.regular_polygon(2))))
    h3 = markov.topological_entropy(markov.build_markov(bmap.BoundaryMap(pb.regular_polygon(3))))
    assert h2 >= math.log(5 + 2 * math.sqrt(6)) - 1e-12
    assert h3 >= math.log(9 + 4 * math.sqrt(5)) - 1e-12
    assert markov.htop_lower_bound(2) == pytest.approx(2.2924, abs=1e-4)
    assert markov.htop_lower_bound(3) == pytest.approx(2.8872, abs=1e-4)


def test_power_iteration_on_all_ones():
    lam, _ = markov.spectral_radius(np.ones((2, 2)))
    assert lam == pytest.approx(2.0, rel=1e-10)
