"""Genus-2 Fuchsian groups from Maskit's Fenchel-Nielsen coordinates.

Generator words have entries of size about e^(alpha + beta + gamma + ...), so
the group, its axes and the perimeter are computed with mpmath at a precision
that grows with the coordinates. Float matrices are produced at the end.
"""
import logging
import math
from typing import NamedTuple

import mpmath
import numpy as np

from config import config
from engine import polygon_builder
from engine.exceptions import NotHyperbolic, NoVertex, OrderViolation, OutOfDomain
from models.fenchel_nielsen import FenchelNielsen6, Genus2Group
from models.moebius import DiskMoebius

logger = logging.getLogger(__name__)

_cfg = config['default']

# Coordinates outside the chart, or a chart point whose polygon does not close up
CHART_ERRORS = (OutOfDomain, OrderViolation, NoVertex, NotHyperbolic)

# Products in terms of the generators, written left to right; a trailing
# "'" marks an inverse.
S_TABLE = (
    ("C'", "D'", "C"),
    ("A", "C"),
    ("A", "B", "D", "A'"),
    ("A'",),
    ("D'", "B'"),
    ("C", "A"),
    ("D",),
    ("D", "A'", "C'", "D'"),
    ("B'", "D'"),
    ("B'", "A", "B"),
    ("C'", "D", "C", "B"),
    ("C'", "B'", "A'", "B"),
)

T_TABLE = (
    ("C",),
    ("C'", "D", "C"),
    ("A'",),
    ("B'",),
    ("A",),
    ("D",),
    ("C'",),
    ("D'",),
    ("B'", "A", "B"),
    ("B",),
    ("B'", "A'", "B"),
    ("C'", "D'", "C"),
)

RELATION = ("A", "B", "D", "A'", "C'", "D'", "C", "B'")


class ExactGroup(NamedTuple):
    """Group data as mpmath values, valid at `digits` decimal digits."""

    mu: object
    delta: object
    generators: dict
    S: tuple
    T: tuple
    relation_residual: float
    P: tuple
    Q: tuple
    digits: int


def regular_parameters():
    return FenchelNielsen6.regular()


def working_digits(p, cfg=_cfg):
    """Decimal digits that keep every generator word accurate for coordinates p."""
    size = (abs(p.alpha) + abs(p.beta) + abs(p.gamma)
            + abs(p.sigma_t) + abs(p.tau_t) + abs(p.rho_t))
    return cfg.MASKIT_GUARD_DIGITS + math.ceil(2 * size)


def aux_mu(p):
    """
    mu = arccosh(coth(beta) cosh(sigma) cosh(tau) + sinh(sigma) sinh(tau)).

    Evaluated at the current mpmath precision; the argument tends to 1 as beta
    grows, so callers raise the precision with beta (see `working_digits`).
    """
    if p.beta <= 0:
        raise OutOfDomain('beta must be positive', observed=p.beta, expected='> 0')
    beta, s, t = mpmath.mpf(p.beta), mpmath.mpf(p.sigma_t), mpmath.mpf(p.tau_t)
    x = mpmath.coth(beta) * mpmath.cosh(s) * mpmath.cosh(t) + mpmath.sinh(s) * mpmath.sinh(t)
    if not x > 1:
        raise OutOfDomain('arccosh argument not above 1 in mu', observed=float(x), expected='> 1')
    return mpmath.acosh(x)


def aux_delta(p, mu):
    """delta = arccoth of the ratio in Maskit's chart; requires |ratio| > 1."""
    if p.alpha <= 0:
        raise OutOfDomain('alpha must be positive', observed=p.alpha, expected='> 0')
    a, g = mpmath.mpf(p.alpha), mpmath.mpf(p.gamma)
    s, r = mpmath.mpf(p.sigma_t), mpmath.mpf(p.rho_t)
    num = (mpmath.cosh(g) * mpmath.cosh(mu)
           - mpmath.sinh(g) * mpmath.sinh(mu) * mpmath.coth(a)
           - mpmath.sinh(s) * mpmath.sinh(r))
    x = num / (mpmath.cosh(s) * mpmath.cosh(r))
    if not abs(x) > 1:
        raise OutOfDomain('arccoth argument inside [-1, 1] in delta', observed=float(x),
                          expected='|x| > 1')
    return mpmath.acoth(x)


def generator_matrices(p, mu, delta):
    """mpmath matrices A, B, C, D with the scalar prefactors multiplied in."""
    a, b, g = (mpmath.mpf(x) for x in (p.alpha, p.beta, p.gamma))
    s, t, r = (mpmath.mpf(x) for x in (p.sigma_t, p.tau_t, p.rho_t))
    j = mpmath.mpc(0, 1)
    ch, sh = mpmath.cosh, mpmath.sinh

    ka = sh(a) / sh(mu)
    A = mpmath.matrix([[ch(a) + j * ka, -j * ka * ch(mu)],
                       [j * ka * ch(mu), ch(a) - j * ka]])

    kb = sh(b) / ch(t)
    B = mpmath.matrix([[ch(b) + j * kb * sh(s), kb * (ch(s) + j * sh(t))],
                       [kb * (ch(s) - j * sh(t)), ch(b) - j * kb * sh(s)]])

    C = mpmath.matrix([[ch(g), j * sh(g)],
                       [-j * sh(g), ch(g)]])

    kd = sh(delta) / ch(r)
    D = mpmath.matrix([[ch(delta) - j * kd * sh(g + s), kd * (-ch(g + s) - j * sh(r))],
                       [kd * (-ch(g + s) + j * sh(r)), ch(delta) + j * kd * sh(g + s)]])
    return {'A': A, 'B': B, 'C': C, 'D': D}


def _adjugate(m):
    # inverse up to the scalar det
    return mpmath.matrix([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def _normalized(m):
    scale = mpmath.sqrt(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return m * (1 / scale)


def word(generators, letters):
    """Evaluate a product such as ("C'", "D", "C") from the generator dict."""
    out = None
    for letter in letters:
        m = generators[letter[0]]
        m = _adjugate(m) if letter.endswith("'") else m
        out = m if out is None else out * m
    return out


def identity_residual(m):
    """Frobenius distance of the det-1 normalization of m from ±identity."""
    n = _normalized(m)
    eye = mpmath.eye(2)
    return min(mpmath.mnorm(n - eye, 'f'), mpmath.mnorm(n + eye, 'f'))


def axis_endpoints(m, cfg=_cfg):
    """
    Boundary angles of the axis of a hyperbolic matrix.

    Returns:
        tuple: (attracting, repelling) angles in [0, 2 pi) as mpmath numbers
    """
    n = _normalized(m)
    a, b, c, d = n[0, 0], n[0, 1], n[1, 0], n[1, 1]
    trace = a + d
    if not abs(mpmath.re(trace)) > 2 + cfg.HYPERBOLIC_TRACE_TOL:
        raise NotHyperbolic('map is not hyperbolic', observed=float(abs(mpmath.re(trace))),
                            expected='> 2', tolerance=cfg.HYPERBOLIC_TRACE_TOL)
    disc = mpmath.sqrt((a - d) ** 2 + 4 * b * c)
    roots = [((a - d) - disc) / (2 * c), ((a - d) + disc) / (2 * c)]
    # |m'(z)| = 1 / |cz + d|^2 for det 1: the attracting point has the larger |cz + d|
    roots.sort(key=lambda z: -abs(c * z + d))
    angles = []
    for z in roots:
        theta = mpmath.arg(z)
        angles.append(theta + 2 * mpmath.pi if theta < 0 else theta)
    return tuple(angles)


def exact_group(p, cfg=_cfg):
    """
    Generators, axis table, pairings and side endpoints at working precision.

    Returns:
        ExactGroup; P_i is the repelling and Q_{i+1} the attracting fixed
        point of S_i
    """
    digits = working_digits(p, cfg)
    with mpmath.workdps(digits):
        delta = aux_delta(p, aux_mu(p))
    # the D entries grow like e^delta as well
    digits += math.ceil(2 * abs(float(delta)))

    with mpmath.workdps(digits):
        mu = aux_mu(p)
        delta = aux_delta(p, mu)
        gens = generator_matrices(p, mu, delta)
        S = tuple(word(gens, letters) for letters in S_TABLE)
        T = tuple(word(gens, letters) for letters in T_TABLE)
        residual = float(identity_residual(word(gens, RELATION)))
        n = len(S)
        P = [None] * n
        Q = [None] * n
        for i, s in enumerate(S):
            attracting, repelling = axis_endpoints(s, cfg)
            P[i] = repelling
            Q[(i + 1) % n] = attracting
    logger.debug('maskit group %s at %d digits: mu=%s delta=%s relation residual %.3g',
                 p, digits, mpmath.nstr(mu, 8), mpmath.nstr(delta, 8), residual)
    return ExactGroup(mu=mu, delta=delta, generators=gens, S=S, T=T, relation_residual=residual,
                      P=tuple(P), Q=tuple(Q), digits=digits)


def _to_moebius(m):
    n = _normalized(m)
    return DiskMoebius(complex(n[0, 0]), complex(n[0, 1]), complex(n[1, 0]), complex(n[1, 1]))


def build_group(p, cfg=_cfg):
    """
    Build the genus-2 group for Maskit coordinates p.

    Returns:
        Genus2Group with det-1 float matrices, the axis generators S_i, the
        pairings T_i and the side endpoints P_i, Q_i
    """
    exact = exact_group(p, cfg)
    gens = {name: _to_moebius(m) for name, m in exact.generators.items()}
    return Genus2Group(
        params=p, mu=float(exact.mu), delta=float(exact.delta),
        S=tuple(_to_moebius(s) for s in exact.S), T=tuple(_to_moebius(t) for t in exact.T),
        relation_residual=exact.relation_residual,
        P=tuple(float(x) for x in exact.P), Q=tuple(float(x) for x in exact.Q), **gens
    )


def build_polygon(grp, cfg=_cfg):
    """Fundamental 12-gon of a genus-2 group, from its side endpoints."""
    return polygon_builder.from_side_geodesics(2, grp.P, grp.Q, grp.T, cfg,
                                               label=f'maskit {grp.params}')


def polygon_for(p, cfg=_cfg):
    return build_polygon(build_group(p, cfg), cfg)


def perimeter(p, cfg=_cfg):
    """Perimeter of the polygon for p, summed at working precision."""
    exact = exact_group(p, cfg)
    with mpmath.workdps(exact.digits):
        total = polygon_builder.perimeter_from_endpoints(exact.P, exact.Q)
    return float(total)


def sample_parameters(count, seed=None, cfg=_cfg):
    """
    Random valid parameter sets: lengths in [0.5, 2.5], twists in [-1, 1].

    Draws outside the chart are rejected; a polygon that fails its own
    invariant checks is an error.
    Returns a list of (FenchelNielsen6, MarkedPolygon).
    """
    rng = np.random.default_rng(cfg.DEFAULT_SEED if seed is None else seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            break
        lengths = rng.uniform(0.5, 2.5, 3)
        twists = rng.uniform(-1.0, 1.0, 3)
        p = FenchelNielsen6(*(float(x) for x in lengths), *(float(x) for x in twists))
        try:
            poly = polygon_for(p, cfg)
        except CHART_ERRORS as exc:
            logger.debug("rejected %s: %s", p, exc)
            continue
        out.append((p, poly))
    logger.info('sampled %d maskit polygons in %d draws', len(out), attempts)
    return out
