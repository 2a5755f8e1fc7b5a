"""Boundary map f_P, its natural extension F_P, the geometric map and Φ."""
import logging
import math
from typing import NamedTuple

import numpy as np
from numba import njit

from config import config
from engine import hyperbolic as hyp
from engine.exceptions import Ambiguous, NotInDomain, OrderViolation
from engine.polygon_builder import sigma, wrap_index
from models.boundary import BoundaryPoint, GeodesicPair
from utils.helpers import TWO_PI, ccw_distance, in_arc, wrap_angle

logger = logging.getLogger(__name__)

_cfg = config['default']


class OrbitStatistics(NamedTuple):
    log_derivative_sum: float
    near_endpoint: int
    final_angle: float


class BoundaryMap:
    """
    Piecewise Möbius map of the circle: T_i on the arc [P_i, P_{i+1}).

    Arc starts are stored relative to P_1 so that branch lookup is a single
    sorted search.
    """

    def __init__(self, polygon, cfg=_cfg):
        self.polygon = polygon
        self.cfg = cfg
        self.n = polygon.n
        self.origin = polygon.P[0]
        self.rel_starts = np.array([wrap_angle(p - self.origin) for p in polygon.P])
        if np.any(np.diff(self.rel_starts) <= 0.0):
            raise OrderViolation('arcs [P_i, P_{i+1}) do not partition the circle')
        self.ta = np.array([t.a for t in polygon.T], dtype=np.complex128)
        self.tb = np.array([t.b for t in polygon.T], dtype=np.complex128)
        self.tc = np.array([t.c for t in polygon.T], dtype=np.complex128)
        self.td = np.array([t.d for t in polygon.T], dtype=np.complex128)
        self.abs_det = np.abs(self.ta * self.td - self.tb * self.tc)

    @property
    def arcs(self):
        """(start, end) angles of the n branch arcs."""
        return [(self.polygon.p(i), self.polygon.p(i + 1)) for i in range(1, self.n + 1)]

    def branch(self, angle):
        """1-based branch index of a boundary angle."""
        rel = wrap_angle(angle - self.origin)
        return int(np.searchsorted(self.rel_starts, rel, side='right'))

    def branches(self, angles):
        """0-based branch indices for an array of angles."""
        rel = wrap_angle(np.asarray(angles, dtype=float) - self.origin)
        return np.searchsorted(self.rel_starts, rel, side='right') - 1

    def near_edge(self, angle):
        tol = self.cfg.ARC_EDGE_TOL
        return any(ccw_distance(p, angle) < tol or ccw_distance(angle, p) < tol for p in self.polygon.P)

    def apply_branches(self, idx, angles):
        """Apply T_{idx+1} to each angle (vectorized)."""
        z = np.exp(1j * np.asarray(angles, dtype=float))
        w = (self.ta[idx] * z + self.tb[idx]) / (self.tc[idx] * z + self.td[idx])
        return wrap_angle(np.angle(w))


def f_P(bm, x):
    """
    One step of the boundary map.

    Returns:
        tuple: (image BoundaryPoint, branch index i with x in [P_i, P_{i+1}))
    """
    i = bm.branch(x.angle)
    if bm.near_edge(x.angle):
        logger.warning('point %.17g within %g of a partition endpoint; classified on branch %d',
                       x.angle, bm.cfg.ARC_EDGE_TOL, i)
    return hyp.apply_boundary(bm.polygon.pairing(i), x, bm.cfg), i


def F_P(bm, p):
    """Natural extension: both coordinates moved by the branch of w."""
    w_image, i = f_P(bm, p.w)
    u_image = hyp.apply_boundary(bm.polygon.pairing(i), p.u, bm.cfg)
    return GeodesicPair(u_image, w_image)


def _side_values(poly, u_angles, w_angles):
    """Normalized hermitian form of each geodesic uw at every vertex, shape (N, n)."""
    u = np.exp(1j * np.asarray(u_angles, dtype=float))[:, None]
    w = np.exp(1j * np.asarray(w_angles, dtype=float))[:, None]
    v = np.asarray(poly.vertices, dtype=np.complex128)[None, :]
    a = (np.conj(u) * w).imag
    b = 1j * (u - w)
    return (a * (np.abs(v) ** 2 + 1.0) - 2.0 * (np.conj(b) * v).real) / np.abs(b)


def exit_sides(poly, u_angles, w_angles, cfg=_cfg):
    """
    Vectorized exit side of geodesics u -> w.

    Returns:
        tuple: (sides, ambiguous) where sides holds 1-based side indices with
        0 for geodesics missing the polygon, and ambiguous flags geodesics
        through a vertex.
    """
    w_angles = np.asarray(w_angles, dtype=float)
    h = _side_values(poly, u_angles, w_angles)
    ambiguous = np.any(np.abs(h) < cfg.VERTEX_GRAZE_TOL, axis=1)
    crossing = h * np.roll(h, -1, axis=1) < 0.0
    P = np.asarray(poly.P)
    Q_next = np.roll(np.asarray(poly.Q), -1)
    span = wrap_angle(Q_next - P)
    offset = wrap_angle(w_angles[:, None] - P[None, :])
    outward = (offset > 0.0) & (offset < span[None, :])
    hits = crossing & outward
    sides = np.where(hits.any(axis=1), np.argmax(hits, axis=1) + 1, 0)
    sides[ambiguous] = 0
    return sides, ambiguous


def exit_side(poly, p, cfg=_cfg):
    """
    Side through which the oriented geodesic u -> w leaves the polygon.

    Returns:
        int side index, or None when the geodesic misses the polygon
    """
    sides, ambiguous = exit_sides(poly, [p.u.angle], [p.w.angle], cfg)
    if ambiguous[0]:
        raise Ambiguous('geodesic passes through a vertex', observed=(p.u.angle, p.w.angle),
                        tolerance=cfg.VERTEX_GRAZE_TOL)
    return int(sides[0]) or None


def F_geo(bm, p):
    """Geometric map: both coordinates moved by T_i for the exit side i."""
    i = exit_side(bm.polygon, p, bm.cfg)
    if i is None:
        raise NotInDomain('geodesic does not meet the polygon', observed=(p.u.angle, p.w.angle))
    t = bm.polygon.pairing(i)
    return GeodesicPair(hyp.apply_boundary(t, p.u, bm.cfg), hyp.apply_boundary(t, p.w, bm.cfg))


def omega_p_rectangles(bm):
    """
    Rectangles (u_lo, u_hi, w_lo, w_hi) whose union is the attractor of F_P.

    For w in [P_i, Q_i) the u-range is [Q_{i+2}, P_{i-1}]; for w in
    [Q_i, P_{i+1}) it is [Q_{i+2}, P_i]. Arcs run counter-clockwise.
    """
    poly = bm.polygon
    rects = []
    for i in range(1, bm.n + 1):
        rects.append((poly.q(i + 2), poly.p(i - 1), poly.p(i), poly.q(i)))
        rects.append((poly.q(i + 2), poly.p(i), poly.q(i), poly.p(i + 1)))
    return rects


def in_omega_p(bm, p):
    """Membership in the rectangular attractor of F_P."""
    poly = bm.polygon
    i = bm.branch(p.w.angle)
    u_hi = poly.p(i - 1) if in_arc(p.w.angle, poly.p(i), poly.q(i)) else poly.p(i)
    return bool(in_arc(p.u.angle, poly.q(i + 2), u_hi, closed=True))


def in_omega_p_many(bm, u_angles, w_angles):
    """Vectorized in_omega_p."""
    poly = bm.polygon
    u_angles = np.asarray(u_angles, dtype=float)
    w_angles = np.asarray(w_angles, dtype=float)
    idx = bm.branches(w_angles)
    P = np.asarray(poly.P)
    Q = np.asarray(poly.Q)
    n = bm.n
    first_half = wrap_angle(w_angles - P[idx]) < wrap_angle(Q[idx] - P[idx])
    u_lo = Q[(idx + 2) % n]
    u_hi = np.where(first_half, P[(idx - 1) % n], P[idx])
    return wrap_angle(u_angles - u_lo) <= wrap_angle(u_hi - u_lo)


def phi(bm, p):
    """
    Bulge-to-corner bijection from the geometric domain to the attractor.

    Identity on pairs already in the attractor; T_{sigma(i)-1} T_i on the
    bulge over [P_i, P_{i+1}).
    """
    if exit_side(bm.polygon, p, bm.cfg) is None:
        raise NotInDomain('geodesic does not meet the polygon', observed=(p.u.angle, p.w.angle))
    if in_omega_p(bm, p):
        return p
    i = bm.branch(p.w.angle)
    poly = bm.polygon
    m = hyp.compose(poly.pairing(wrap_index(sigma(i, poly.genus) - 1, bm.n)), poly.pairing(i))
    return GeodesicPair(hyp.apply_boundary(m, p.u, bm.cfg), hyp.apply_boundary(m, p.w, bm.cfg))


def nu_rectangle(u_lo, u_hi, w_lo, w_hi):
    """
    Closed-form measure |du||dw| / |u - w|^2 of a rectangle of disjoint arcs.

    Args:
        u_lo, u_hi: counter-clockwise u-arc
        w_lo, w_hi: counter-clockwise w-arc
    """
    def s(x):
        return math.sin(0.5 * wrap_angle(x))

    return math.log(s(u_lo - w_lo) * s(u_hi - w_hi) / (s(u_lo - w_hi) * s(u_hi - w_lo)))


def nu_mass_omega_p(bm):
    """Total measure of the attractor, summed over its rectangles."""
    return math.fsum(nu_rectangle(*rect) for rect in omega_p_rectangles(bm))


@njit(nogil=True, cache=False)
def _orbit_kernel(x0, nsteps, origin, rel_starts, ta, tb, tc, td, abs_det, edge_tol):
    n = rel_starts.shape[0]
    total = 0.0
    carry = 0.0
    near = 0
    x = x0
    for _ in range(nsteps):
        rel = (x - origin) % TWO_PI
        i = np.searchsorted(rel_starts, rel, side='right') - 1
        upper = rel_starts[i + 1] if i + 1 < n else TWO_PI
        if rel - rel_starts[i] < edge_tol or upper - rel < edge_tol:
            near += 1
        z = complex(math.cos(x), math.sin(x))
        den = tc[i] * z + td[i]
        w = (ta[i] * z + tb[i]) / den
        term = math.log(abs_det[i] / (den.real * den.real + den.imag * den.imag))
        # compensated summation
        y = term - carry
        t = total + y
        carry = (t - total) - y
        total = t
        x = math.atan2(w.imag, w.real)
    return total, near, x


def orbit_statistics(bm, x0, nsteps):
    """Run an f_P-orbit and collect the log-derivative sum and endpoint proximity count."""
    x0 = x0.angle if isinstance(x0, BoundaryPoint) else float(x0)
    total, near, x_end = _orbit_kernel(
        x0, int(nsteps), bm.origin, bm.rel_starts, bm.ta, bm.tb, bm.tc, bm.td,
        bm.abs_det, bm.cfg.ARC_EDGE_TOL
    )
    if near:
        logger.warning('%d of %d orbit points within %g of a partition endpoint',
                       near, nsteps, bm.cfg.ARC_EDGE_TOL)
    return OrbitStatistics(float(total), int(near), wrap_angle(float(x_end)))


def orbit_derivative_sum(bm, x0, nsteps):
    """Sum of log |f_P'(x_k)| over the first nsteps points of the orbit of x0."""
    return orbit_statistics(bm, x0, nsteps).log_derivative_sum


def iterate_pairs(bm, u_angles, w_angles, iters):
    """Apply F_P iters times to arrays of pairs."""
    u = np.asarray(u_angles, dtype=float).copy()
    w = np.asarray(w_angles, dtype=float).copy()
    for _ in range(iters):
        idx = bm.branches(w)
        u = bm.apply_branches(idx, u)
        w = bm.apply_branches(idx, w)
    return u, w


def attractor_sample(bm, iters, points, seed):
    """
    Random pairs pushed forward by F_P.

    Returns:
        tuple: (u_angles, w_angles) arrays of length points
    """
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.0, TWO_PI, points)
    w = rng.uniform(0.0, TWO_PI, points)
    # keep pairs off the diagonal
    w = np.where(np.abs(u - w) < 1e-9, wrap_angle(w + math.pi), w)
    logger.debug('iterating %d pairs %d times', points, iters)
    return iterate_pairs(bm, u, w, iters)
