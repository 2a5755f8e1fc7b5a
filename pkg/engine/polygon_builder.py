"""Construction and measurement of marked (8g-4)-gons."""
import cmath
import logging
import math
from typing import NamedTuple

import mpmath
import numpy as np

from config import config
from engine import hyperbolic as hyp
from engine.exceptions import (IndexOutOfRange, InvalidInput, NoVertex, OrderViolation,
                               PolygonInvariantError)
from models.boundary import Geodesic
from models.moebius import DiskMoebius
from models.polygon import MarkedPolygon, PolygonMetrics
from utils.helpers import TWO_PI, angle_of, ccw_distance, circular_distance, wrap_angle

logger = logging.getLogger(__name__)

_cfg = config['default']


class IsoarealCheck(NamedTuple):
    lhs: float
    rhs: float
    slack: float
    tangent_bound: float


def side_count(g):
    if int(g) < 2:
        raise InvalidInput('genus must be ≥ 2', observed=g, expected='>= 2')
    return 8 * int(g) - 4


def sigma(i, g):
    """
    Side pairing: 4g - i (mod 8g-4) for odd i, 2 - i (mod 8g-4) for even i.

    Returns the representative in 1..8g-4.
    """
    n = side_count(g)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f'side index {i} outside 1..{n}', observed=i, expected=f'1..{n}')
    j = (4 * g - i) % n if i % 2 == 1 else (2 - i) % n
    return n if j == 0 else j


def wrap_index(i, n):
    """Representative of i mod n in 1..n."""
    return (i - 1) % n + 1


def vertex_cycles(g):
    """Vertex indices grouped by the cycles of i -> sigma(i) + 1."""
    n = side_count(g)
    seen = set()
    cycles = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = wrap_index(sigma(i, g) + 1, n)
        cycles.append(tuple(cycle))
    return cycles


def regular_side_length(g):
    return math.acosh(1.0 + 2.0 * math.cos(math.pi / (4 * g - 2)))


def regular_vertex_radius(g):
    """Euclidean radius of the vertices of the right-angled regular (8g-4)-gon.

    The hyperbolic circumradius R satisfies cosh R = cot(pi / n).
    """
    n = side_count(g)
    big_r = math.acosh(1.0 / math.tan(math.pi / n))
    return math.tanh(big_r / 2.0)


def regular_polygon(g, cfg=_cfg):
    """
    Build the regular right-angled (8g-4)-gon with V_1 on the positive real axis.

    Args:
        g: genus, at least 2

    Returns:
        MarkedPolygon
    """
    n = side_count(g)
    r = regular_vertex_radius(g)
    vertices = tuple(r * cmath.exp(2j * math.pi * k / n) for k in range(n))

    P = [0.0] * n
    Q = [0.0] * n
    for i in range(1, n + 1):
        side = hyp.geodesic_through(vertices[i - 1], vertices[i % n])
        P[i - 1] = side.u.angle
        Q[i % n] = side.w.angle

    T = tuple(
        _pairing_for_side(i, g, vertices, P, Q, cfg) for i in range(1, n + 1)
    )
    poly = MarkedPolygon(genus=g, vertices=vertices, P=tuple(P), Q=tuple(Q), T=T,
                         label=f'regular g={g}')
    validate(poly, cfg)
    return poly


def _pairing_for_side(i, g, vertices, P, Q, cfg):
    n = len(vertices)
    s = sigma(i, g)
    return pairing_from_correspondence(
        (cmath.exp(1j * P[i - 1]), cmath.exp(1j * Q[i % n]), vertices[i - 1]),
        (cmath.exp(1j * Q[s % n]), cmath.exp(1j * P[s - 1]), vertices[s % n]),
        cfg
    )


def pairing_from_correspondence(sources, targets, cfg=_cfg):
    """
    Möbius map carrying (P_i, Q_{i+1}, V_i) to (Q_{sigma(i)+1}, P_{sigma(i)}, V_{sigma(i)+1}).

    The result is checked to preserve the unit circle.
    """
    m = hyp.three_point_map(sources, targets)
    return hyp.check_disk_preserving(m, cfg.POLYGON_TOL, cfg)


def check_circular_order(P, Q, cfg=_cfg):
    """Raise OrderViolation unless P_1, Q_1, P_2, Q_2, ... run counter-clockwise once."""
    points = [x for pair in zip(P, Q) for x in pair]
    gaps = [ccw_distance(points[k], points[(k + 1) % len(points)]) for k in range(len(points))]
    turn = math.fsum(gaps)
    if min(gaps) <= cfg.ENDPOINT_TOL or abs(turn - TWO_PI) > 1e-6:
        raise OrderViolation('boundary points are not in the order P_1, Q_1, P_2, Q_2, ...',
                             observed=turn / TWO_PI, expected=1)


def from_side_geodesics(g, P, Q, T, cfg=_cfg, label=''):
    """
    Assemble a polygon from the endpoints of its side geodesics.

    Args:
        g: genus
        P, Q: n boundary angles each
        T: n pairing maps

    Returns:
        MarkedPolygon with V_{i+1} at the crossing of sides i and i+1
    """
    n = side_count(g)
    if not (len(P) == len(Q) == len(T) == n):
        raise InvalidInput(f'expected {n} endpoints and pairings', observed=(len(P), len(Q), len(T)))
    P = tuple(wrap_angle(float(x)) for x in P)
    Q = tuple(wrap_angle(float(x)) for x in Q)
    check_circular_order(P, Q, cfg)

    sides = [Geodesic.from_angles(P[i], Q[(i + 1) % n]) for i in range(n)]
    vertices = [0j] * n
    for i in range(n):
        crossing = hyp.geodesic_intersection(sides[i], sides[(i + 1) % n], cfg)
        if crossing is None:
            raise NoVertex(f'sides {i + 1} and {(i + 1) % n + 1} do not cross')
        vertices[(i + 1) % n] = crossing.z

    poly = MarkedPolygon(genus=g, vertices=tuple(vertices), P=P, Q=Q, T=tuple(T), label=label)
    validate(poly, cfg)
    return poly


def side_lengths(poly):
    return tuple(hyp.hyp_distance(poly.vertex(i), poly.vertex(i + 1)) for i in range(1, poly.n + 1))


def interior_angles(poly):
    return tuple(
        hyp.angle_between(poly.vertex(i), poly.vertex(i - 1), poly.vertex(i + 1))
        for i in range(1, poly.n + 1)
    )


def metrics(poly):
    """Perimeter, area (angle defect), side lengths and angles."""
    lengths = side_lengths(poly)
    angles = interior_angles(poly)
    return PolygonMetrics(
        perimeter=math.fsum(lengths),
        area=(poly.n - 2) * math.pi - math.fsum(angles),
        side_lengths=lengths,
        interior_angles=angles
    )


def side_lengths_from_endpoints(P, Q):
    """
    Side lengths from the side endpoints alone, at the current mpmath precision.

    Side i lies on (P_i, Q_{i+1}) and ends where sides i - 1 and i + 1 cross
    it. With p, q sent to 0 and infinity, a crossing geodesic (x, y) meets the
    side at height sqrt(-r(x) r(y)), r(t) = sin((t - p)/2) / sin((t - q)/2).
    """
    n = len(P)
    points = [mpmath.mpf(x) for pair in zip(P, Q) for x in pair]
    two_pi = 2 * mpmath.pi
    gaps = [(points[(k + 1) % len(points)] - points[k]) % two_pi for k in range(len(points))]
    if min(gaps) <= 0 or abs(mpmath.fsum(gaps) - two_pi) > 1e-6:
        raise OrderViolation('boundary points are not in the order P_1, Q_1, P_2, Q_2, ...',
                             observed=float(mpmath.fsum(gaps) / two_pi), expected=1)

    def ratio(t, p, q):
        return mpmath.sin((t - p) / 2) / mpmath.sin((t - q) / 2)

    lengths = []
    for k in range(n):
        p, q = P[k], Q[(k + 1) % n]
        before = ratio(P[k - 1], p, q) * ratio(Q[k], p, q)
        after = ratio(P[(k + 1) % n], p, q) * ratio(Q[(k + 2) % n], p, q)
        if not (before < 0 and after < 0):
            raise NoVertex(f'side {k + 1} is not crossed by both neighbours')
        lengths.append(abs(mpmath.log(before / after)) / 2)
    return lengths


def perimeter_from_endpoints(P, Q):
    return mpmath.fsum(side_lengths_from_endpoints(P, Q))


def regular_perimeter(n, area):
    """Perimeter of the regular hyperbolic n-gon of the given area."""
    t = area / (2 * n)
    half_side = math.acosh(math.cos(math.pi / n) / math.cos(math.pi / n + t))
    return 2 * n * half_side


def isoareal_check(poly, m=None):
    """
    Compare the squared perimeter with the regular polygon of equal area.

    Returns:
        IsoarealCheck: lhs = perimeter^2, rhs = squared perimeter of the regular
        n-gon with the same area, slack = lhs - rhs, and the weaker bound
        4 n tan(area / 2n) area.
    """
    m = metrics(poly) if m is None else m
    lhs = m.perimeter ** 2
    rhs = regular_perimeter(poly.n, m.area) ** 2
    d_n = poly.n * math.tan(m.area / (2 * poly.n))
    return IsoarealCheck(lhs=lhs, rhs=rhs, slack=lhs - rhs, tangent_bound=4 * d_n * m.area)




def _endpoint_residual(t, source, target):
    """
    Circle distance between t(source) and target, measured where t contracts.

    Where t expands, t^-1 is applied to the target instead.
    """
    z = cmath.exp(1j * source)
    if hyp.derivative_modulus(t, z) <= 1.0:
        return circular_distance(angle_of(hyp.apply(t, z)), target)
    return circular_distance(angle_of(hyp.apply(hyp.inverse(t), cmath.exp(1j * target))), source)


def _involution_residual(t_back, t):
    """Distance of T_sigma(i) T_i from ±identity, relative to the sizes of both maps."""
    scale = (np.linalg.norm(t_back.normalized().matrix, 2)
             * np.linalg.norm(t.normalized().matrix, 2))
    return hyp.scalar_identity_residual(hyp.compose(t_back, t)) / scale


def invariant_residuals(poly, m=None):
    """
    Worst-case deviations of every polygon invariant.

    Returns:
        dict: name -> residual (0 for an exact polygon)
    """
    m = metrics(poly) if m is None else m
    n, g = poly.n, poly.genus
    on_side = 0.0
    lengths = 0.0
    angles = 0.0
    endpoints = 0.0
    involution = 0.0
    for i in range(1, n + 1):
        s = sigma(i, g)
        side = Geodesic.from_angles(poly.p(i), poly.q(i + 1))
        on_side = max(on_side, abs(side.side_value(poly.vertex(i))),
                      abs(side.side_value(poly.vertex(i + 1))))
        lengths = max(lengths, abs(m.side_lengths[i - 1] - m.side_lengths[s - 1]))
        angles = max(angles, abs(m.interior_angles[i - 1]
                                 + m.interior_angles[wrap_index(s + 1, n) - 1] - math.pi))
        t = poly.pairing(i)
        endpoints = max(endpoints,
                        _endpoint_residual(t, poly.p(i), poly.q(s + 1)),
                        _endpoint_residual(t, poly.q(i + 1), poly.p(s)))
        involution = max(involution, _involution_residual(poly.pairing(s), t))

    return {
        'vertex_on_side': on_side,
        'side_length_pairing': lengths,
        'angle_pairing': angles,
        'endpoint_mapping': endpoints,
        'pairing_involution': involution,
        'gauss_bonnet_area': abs(m.area - 2 * math.pi * (2 * g - 2))
    }


def validate(poly, cfg=_cfg):
    """Raise PolygonInvariantError when an invariant is off by more than its tolerance."""
    check_circular_order(poly.P, poly.Q, cfg)
    residuals = invariant_residuals(poly)
    for name, value in residuals.items():
        tol = cfg.AREA_TOL if name == 'gauss_bonnet_area' else cfg.POLYGON_TOL
        if not value < tol:
            raise PolygonInvariantError(f'polygon invariant {name} violated',
                                        observed=value, expected=0.0, tolerance=tol)
    logger.debug('polygon %s valid: %s', poly.label or poly.genus, residuals)
    return residuals


def rotate(poly, theta):
    """Rotate a polygon and conjugate its pairings by the same rotation."""
    rot = DiskMoebius.rotation(theta)
    back = DiskMoebius.rotation(-theta)
    return MarkedPolygon(
        genus=poly.genus,
        vertices=tuple(v * cmath.exp(1j * theta) for v in poly.vertices),
        P=tuple(wrap_angle(x + theta) for x in poly.P),
        Q=tuple(wrap_angle(x + theta) for x in poly.Q),
        T=tuple(hyp.compose_all(rot, t, back) for t in poly.T),
        label=poly.label
    )


def canonical_frame(poly):
    """Rotate so that V_1 lies on the positive real axis."""
    return rotate(poly, -cmath.phase(poly.vertex(1)))


def vertex_distance(poly1, poly2):
    """Largest Euclidean distance between corresponding vertices."""
    return max(abs(a - b) for a, b in zip(poly1.vertices, poly2.vertices))
