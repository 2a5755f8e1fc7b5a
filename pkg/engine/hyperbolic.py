"""Möbius maps, geodesics and distances in the Poincaré disk."""
import cmath
import logging
import math

import numpy as np

from config import config
from engine.exceptions import DegenerateGeodesics, NotDiskPreserving, NotHyperbolic, PoleAtInput
from models.boundary import BoundaryPoint, DiskPoint, Geodesic
from models.moebius import DiskMoebius

logger = logging.getLogger(__name__)

_cfg = config['default']


def apply(m, z, cfg=_cfg):
    """
    Apply a Möbius map to a point.

    Args:
        m: DiskMoebius
        z: complex number (disk or boundary point)

    Returns:
        complex: (az + b) / (cz + d)
    """
    den = m.c * z + m.d
    if abs(den) <= cfg.POLE_TOL:
        raise PoleAtInput(f'pole of the map at {z}', observed=abs(den), tolerance=cfg.POLE_TOL)
    return (m.a * z + m.b) / den


def apply_boundary(m, x, cfg=_cfg):
    """Image of a BoundaryPoint, projected back onto the circle."""
    return BoundaryPoint.from_complex(apply(m, x.z, cfg))


def compose(m1, m2):
    """Matrix product: apply(compose(m1, m2), z) == apply(m1, apply(m2, z))."""
    return DiskMoebius.from_matrix(m1.matrix @ m2.matrix)


def compose_all(*maps):
    out = DiskMoebius.identity()
    for m in maps:
        out = compose(out, m)
    return out


def inverse(m):
    # adjugate; inverse up to the scalar det
    return DiskMoebius(m.d, -m.b, -m.c, m.a)


def is_scalar_identity(m, tol):
    """Whether m is a scalar multiple of the identity, after det-1 normalization."""
    return scalar_identity_residual(m) < tol


def scalar_identity_residual(m):
    """Operator-norm distance of the normalized matrix from ±identity."""
    n = m.normalized().matrix
    eye = np.eye(2)
    return min(np.linalg.norm(n - eye, 2), np.linalg.norm(n + eye, 2))


def same_map(m1, m2, tol):
    """Equality of Möbius maps up to scalar."""
    return is_scalar_identity(compose(m1, inverse(m2)), tol)


def derivative_modulus(m, z, cfg=_cfg):
    """|m'(z)| = |det| / |cz + d|^2."""
    den = m.c * z + m.d
    if abs(den) <= cfg.POLE_TOL:
        raise PoleAtInput(f'pole of the map at {z}', observed=abs(den), tolerance=cfg.POLE_TOL)
    return abs(m.det) / abs(den) ** 2


def boundary_residual(m, samples=100, seed=None, cfg=_cfg):
    """Largest deviation of ||m(z)| - 1| over sample points of the circle."""
    rng = np.random.default_rng(cfg.DEFAULT_SEED if seed is None else seed)
    z = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, samples))
    images = (m.a * z + m.b) / (m.c * z + m.d)
    return float(np.max(np.abs(np.abs(images) - 1.0)))


def check_disk_preserving(m, tol, cfg=_cfg):
    """Raise NotDiskPreserving unless m maps the circle to itself within tol."""
    residual = boundary_residual(m, cfg=cfg)
    if not residual < tol:
        raise NotDiskPreserving('map does not preserve the unit circle',
                                observed=residual, expected=0.0, tolerance=tol)
    return m


def three_point_map(sources, targets):
    """Möbius map sending three distinct points to three distinct points."""
    (p1, p2, p3), (q1, q2, q3) = sources, targets
    a = np.linalg.det(np.array(((p1 * q1, q1, 1),
                                (p2 * q2, q2, 1),
                                (p3 * q3, q3, 1))))
    b = np.linalg.det(np.array(((p1 * q1, p1, q1),
                                (p2 * q2, p2, q2),
                                (p3 * q3, p3, q3))))
    c = np.linalg.det(np.array(((p1, q1, 1),
                                (p2, q2, 1),
                                (p3, q3, 1))))
    d = np.linalg.det(np.array(((p1 * q1, p1, 1),
                                (p2 * q2, p2, 1),
                                (p3 * q3, p3, 1))))
    return DiskMoebius(complex(a), complex(b), complex(c), complex(d)).normalized()


def fixed_points(m, cfg=_cfg):
    """
    Fixed points of a hyperbolic map.

    Returns:
        tuple: (attracting, repelling) BoundaryPoints
    """
    n = m.normalized()
    trace = n.a + n.d
    if abs(trace.real) <= 2.0 + cfg.HYPERBOLIC_TRACE_TOL:
        raise NotHyperbolic('map is not hyperbolic', observed=abs(trace.real),
                            expected='> 2', tolerance=cfg.HYPERBOLIC_TRACE_TOL)

    disc = cmath.sqrt((n.a - n.d) ** 2 + 4.0 * n.b * n.c)
    roots = [((n.a - n.d) - disc) / (2.0 * n.c), ((n.a - n.d) + disc) / (2.0 * n.c)]
    roots.sort(key=lambda z: derivative_modulus(n, z, cfg))
    attracting, repelling = roots
    return BoundaryPoint.from_complex(attracting), BoundaryPoint.from_complex(repelling)


def translation_length(m):
    """Hyperbolic translation length 2 arccosh(|trace| / 2)."""
    trace = m.normalized_trace
    return 2.0 * math.acosh(max(abs(trace.real) / 2.0, 1.0))


def hyp_distance(p, q):
    """Distance for the metric 2|dz| / (1 - |z|^2)."""
    p, q = _as_complex(p), _as_complex(q)
    ratio = abs(p - q) / abs(1.0 - p.conjugate() * q)
    return 2.0 * math.atanh(min(ratio, 1.0))


def geodesic_intersection(g1, g2, cfg=_cfg):
    """
    Crossing point of two geodesics inside the disk.

    Returns:
        DiskPoint, or None when the geodesics do not cross inside the disk
    """
    if _same_endpoints(g1, g2, cfg):
        raise DegenerateGeodesics('geodesics coincide')

    s_u = g1.side_value(g2.u.z)
    s_w = g1.side_value(g2.w.z)
    if s_u * s_w >= 0.0 or abs(s_u) < cfg.ENDPOINT_TOL or abs(s_w) < cfg.ENDPOINT_TOL:
        return None

    a1, b1 = g1.form
    a2, b2 = g2.form
    c = a2 * b1 - a1 * b2
    if abs(c) < cfg.DET_TOL:
        # both are diameters through the origin
        return DiskPoint(0j)

    e = 1j * c / abs(c)
    a, b = (a1, b1) if abs(a1) >= abs(a2) else (a2, b2)
    if abs(a) < cfg.DET_TOL:
        return DiskPoint(0j)
    k = (b.conjugate() * e).real
    root = math.sqrt(max(k * k - a * a, 0.0))
    t = a / (k + math.copysign(root, k))
    return DiskPoint(t * e)


def _same_endpoints(g1, g2, cfg):
    tol = cfg.ENDPOINT_TOL * 1e3
    return ((g1.u.isclose(g2.u, tol) and g1.w.isclose(g2.w, tol))
            or (g1.u.isclose(g2.w, tol) and g1.w.isclose(g2.u, tol)))


def side_of_geodesic(g, z):
    """+1 left of g, -1 right of g, 0 on it (to float precision)."""
    return int(np.sign(g.side_value(_as_complex(z))))


def crosses_segment(g, p, q):
    """Whether geodesic g meets the closed geodesic segment from p to q."""
    return g.side_value(_as_complex(p)) * g.side_value(_as_complex(q)) <= 0.0


def geodesic_through(p, q):
    """Oriented geodesic through disk points p and q, running from p toward q."""
    p, q = _as_complex(p), _as_complex(q)
    if abs(p - q) == 0.0:
        raise DegenerateGeodesics('points coincide')
    mq = (q - p) / (1.0 - p.conjugate() * q)
    direction = mq / abs(mq)
    back = (-direction + p) / (1.0 + p.conjugate() * -direction)
    ahead = (direction + p) / (1.0 + p.conjugate() * direction)
    return Geodesic(BoundaryPoint.from_complex(back), BoundaryPoint.from_complex(ahead))


def far_endpoint(u, p):
    """Forward endpoint of the geodesic leaving boundary point u through disk point p."""
    p = _as_complex(p)
    mu = (u.z - p) / (1.0 - p.conjugate() * u.z)
    target = -mu
    return BoundaryPoint.from_complex((target + p) / (1.0 + p.conjugate() * target))


def direction_toward(p, q):
    """Unit tangent at p of the geodesic segment from p to q.

    The map z -> (z - p) / (1 - conj(p) z) has positive real derivative at p,
    so it carries the tangent direction to that of a straight radius.
    """
    p, q = _as_complex(p), _as_complex(q)
    mq = (q - p) / (1.0 - p.conjugate() * q)
    return mq / abs(mq)


def angle_between(p, q1, q2):
    """Angle at p between the geodesic segments toward q1 and toward q2."""
    d1 = direction_toward(p, q1)
    d2 = direction_toward(p, q2)
    return abs(cmath.phase(d2 / d1))


def _as_complex(p):
    if isinstance(p, DiskPoint):
        return p.z
    return complex(p)
