"""Entropy formulas and the numerical oracles that check them."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from config import config
from engine import boundary_map as bmap
from engine import markov
from engine.polygon_builder import metrics, regular_side_length
from models.report import EntropyReport
from utils.helpers import TWO_PI, wrap_angle

logger = logging.getLogger(__name__)

_cfg = config['default']

H_LIMIT = math.pi ** 2 / (2.0 * math.acosh(3.0))


class MassEstimate(NamedTuple):
    mass: float
    stderr: float


class StripCheck(NamedTuple):
    side: int
    length: float
    current_mass: float
    direct_mass: float


def entropy_from_perimeter(perimeter, g):
    """pi^2 (4g - 4) / Perimeter."""
    return math.pi ** 2 * (4 * g - 4) / perimeter


def entropy_formula(poly, m=None):
    m = metrics(poly) if m is None else m
    return entropy_from_perimeter(m.perimeter, poly.genus)


def entropy_from_area(poly, m=None):
    """pi Area / Perimeter, with the area from the angle defect."""
    m = metrics(poly) if m is None else m
    return math.pi * m.area / m.perimeter


def H_max(g):
    """Largest entropy over the Teichmüller space of genus g (the regular polygon)."""
    n = 8 * g - 4
    return math.pi ** 2 * (4 * g - 4) / (n * regular_side_length(g))


def H_max_table(g_max):
    return [(g, H_max(g)) for g in range(2, g_max + 1)]


def _stratum_row(poly, row, strata, per_cell, seed, cfg):
    """Monte Carlo contribution (sum, variance) of one row of strata."""
    width = TWO_PI / strata
    cell_area = width * width
    sums = []
    variances = []
    for col in range(strata):
        rng = np.random.default_rng([seed, row * strata + col])
        u = (row + rng.random(per_cell)) * width
        w = (col + rng.random(per_cell)) * width
        sides, _ = bmap.exit_sides(poly, u, w, cfg)
        with np.errstate(divide='ignore', invalid='ignore'):
            density = np.where(sides > 0, 1.0 / (4.0 * np.sin(0.5 * (u - w)) ** 2), 0.0)
        sums.append(cell_area * density.mean())
        variances.append(cell_area ** 2 * density.var(ddof=1) / per_cell)
    logger.debug('stratum row %d done', row)
    return math.fsum(sums), math.fsum(variances)


def nu_mass_quadrature(poly, samples, seed, threads=1, cfg=_cfg):
    """
    Stratified Monte Carlo estimate of the measure of all geodesics meeting the polygon.

    Args:
        poly: MarkedPolygon
        samples: total sample count, split evenly over STRATA x STRATA cells
        seed: base seed; each cell draws from its own stream
        threads: number of worker threads

    Returns:
        MassEstimate: (mass, stderr)
    """
    strata = cfg.STRATA
    per_cell = max(samples // (strata * strata), 2)
    rows = range(strata)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _stratum_row(poly, r, strata, per_cell, seed, cfg), rows))
    else:
        parts = [_stratum_row(poly, r, strata, per_cell, seed, cfg) for r in rows]
    mass = math.fsum(p[0] for p in parts)
    stderr = math.sqrt(math.fsum(p[1] for p in parts))
    logger.info('nu mass %.10g +/- %.3g from %d samples', mass, stderr, per_cell * strata * strata)
    return MassEstimate(mass, stderr)


def strip_mass(poly, side_index, grid):
    """
    Geodesic-current mass 1/2 sin(theta) dtheta dx over the geodesics crossing a side.

    Gauss-Legendre in theta on (0, pi), times the side length in x.
    """
    m = metrics(poly)
    length = m.side_lengths[side_index - 1]
    nodes, weights = np.polynomial.legendre.leggauss(grid)
    theta = 0.5 * math.pi * (nodes + 1.0)
    theta_weights = 0.5 * math.pi * weights
    x_weights = 0.5 * length * weights
    density = np.outer(x_weights, theta_weights * 0.5 * np.sin(theta))
    return float(density.sum())


def _far_endpoints(u_angles, p):
    """Forward endpoints of geodesics from boundary angles u through disk point p."""
    u = np.exp(1j * u_angles)
    mu = (u - p) / (1.0 - np.conj(p) * u)
    target = -mu
    return wrap_angle(np.angle((target + p) / (1.0 + np.conj(p) * target)))


def strip_direct_mass(poly, side_index, grid):
    """
    Measure of the geodesics leaving the polygon through one side, from the
    boundary-pair form of the measure.

    For u on the inner arc [Q_{i+1}, P_i], the admissible w run between the
    far endpoints of the geodesics from u through V_i and V_{i+1}; the inner
    w-integral is 1/2 |cot| difference.
    """
    i = side_index
    start = poly.q(i + 1)
    span = wrap_angle(poly.p(i) - start)
    nodes, weights = np.polynomial.legendre.leggauss(grid)
    u = wrap_angle(start + 0.5 * span * (nodes + 1.0))
    d1 = wrap_angle(_far_endpoints(u, poly.vertex(i)) - u)
    d2 = wrap_angle(_far_endpoints(u, poly.vertex(i + 1)) - u)
    integrand = 0.5 * np.abs(1.0 / np.tan(0.5 * d2) - 1.0 / np.tan(0.5 * d1))
    return 0.5 * span * float(np.sum(weights * integrand))


def strip_check(poly, grid):
    """Per-side lengths against both strip quadratures."""
    m = metrics(poly)
    return [
        StripCheck(i, m.side_lengths[i - 1], strip_mass(poly, i, grid), strip_direct_mass(poly, i, grid))
        for i in range(1, poly.n + 1)
    ]


def _orbit_average(bm, nsteps, seed, k):
    rng = np.random.default_rng([seed, k])
    x0 = rng.uniform(0.0, TWO_PI)
    stats = bmap.orbit_statistics(bm, x0, nsteps)
    logger.debug('orbit %d from %.6f: average %.10g', k, x0, stats.log_derivative_sum / nsteps)
    return stats.log_derivative_sum / nsteps


def birkhoff_entropy(bm, nsteps, nseeds, seed, threads=1):
    """
    Orbit averages of log |f_P'| from several random starting points.

    Returns:
        tuple: (median over seeds, max - min over seeds)
    """
    seeds = range(nseeds)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            averages = list(pool.map(lambda k: _orbit_average(bm, nsteps, seed, k), seeds))
    else:
        averages = [_orbit_average(bm, nsteps, seed, k) for k in seeds]
    return float(np.median(averages)), float(max(averages) - min(averages))


def build_report(poly, cfg=_cfg, samples=None, nsteps=None, nseeds=None, seed=None,
                 threads=1, oracles=True, params=None):
    """
    Gather formula values, h_top and (optionally) both numerical oracles.

    Returns:
        EntropyReport
    """
    m = metrics(poly)
    bm = bmap.BoundaryMap(poly, cfg)
    md = markov.build_markov(bm, cfg)
    seed = cfg.DEFAULT_SEED if seed is None else seed
    report = EntropyReport(
        genus=poly.genus,
        label=poly.label,
        perimeter=m.perimeter,
        area=m.area,
        formula_value=entropy_formula(poly, m),
        area_form_value=entropy_from_area(poly, m),
        H_of_g=H_max(poly.genus),
        h_top=markov.topological_entropy(md, cfg),
        h_top_lower_bound=markov.htop_lower_bound(poly.genus),
        nu_mass_exact=bmap.nu_mass_omega_p(bm),
        seed=seed,
        params=params
    )
    if oracles:
        samples = cfg.DEFAULT_SAMPLES if samples is None else samples
        nsteps = cfg.DEFAULT_NSTEPS if nsteps is None else nsteps
        nseeds = cfg.DEFAULT_NSEEDS if nseeds is None else nseeds
        mass, stderr = nu_mass_quadrature(poly, samples, seed, threads, cfg)
        factor = math.pi ** 2 * (4 * poly.genus - 4)
        report.nu_mass, report.nu_mass_stderr, report.samples = mass, stderr, samples
        report.quadrature_value = factor / mass
        report.quadrature_stderr = factor * stderr / mass ** 2
        report.birkhoff_value, report.birkhoff_spread = birkhoff_entropy(bm, nsteps, nseeds, seed, threads)
        report.nsteps, report.nseeds = nsteps, nseeds
    return report
