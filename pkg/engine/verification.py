"""Check catalogue behind the `verify` command."""
import dataclasses
import logging
import math

from config import config
from engine import boundary_map as bmap
from engine import entropy_lab, markov
from engine import hyperbolic as hyp
from engine.exceptions import BoundarySeriesError
from engine.polygon_builder import (interior_angles, invariant_residuals, isoareal_check, metrics,
                                    regular_side_length, vertex_cycles)
from models.moebius import DiskMoebius
from models.report import CheckResult

logger = logging.getLogger(__name__)

_cfg = config['default']

RELATION_TOL = 1e-8
REGULARITY_TOL = 1e-7
EIGENPAIR_TOL = 1e-9
FORMULA_TOL = 1e-9
NU_EXACT_TOL = 1e-7
STRIP_SUM_TOL = 1e-2


def corrupt_pairing(poly, index=1, epsilon=1e-7):
    """Copy of the polygon with T_index followed by a small rotation."""
    pairings = list(poly.T)
    pairings[index - 1] = hyp.compose(DiskMoebius.rotation(epsilon), pairings[index - 1])
    return dataclasses.replace(poly, T=tuple(pairings), label=f'{poly.label} (corrupted T_{index})')


def _check(name, observed, expected, tolerance, passed=None):
    if passed is None:
        passed = abs(observed - expected) <= tolerance
    result = CheckResult(name=name, passed=bool(passed), observed=observed, expected=expected,
                         tolerance=tolerance)
    logger.info(result.line())
    return result


def polygon_checks(poly, cfg=_cfg, group=None, regular=False):
    m = metrics(poly)
    results = []
    for name, value in invariant_residuals(poly, m).items():
        tol = cfg.AREA_TOL if name == 'gauss_bonnet_area' else cfg.POLYGON_TOL
        results.append(_check(name, value, 0.0, tol))

    angles = interior_angles(poly)
    cycle_error = max(abs(math.fsum(angles[i - 1] for i in cycle) - 2 * math.pi)
                      for cycle in vertex_cycles(poly.genus))
    results.append(_check('vertex_cycle_angle_sum', cycle_error, 0.0, cfg.POLYGON_TOL))

    iso = isoareal_check(poly, m)
    results.append(_check('isoareal_slack', iso.slack, 0.0, cfg.AREA_TOL,
                          passed=iso.slack >= -cfg.AREA_TOL))
    # reported only; the tangent form is not a lower bound for every n
    results.append(_check('isoareal_tangent_bound', iso.tangent_bound, iso.lhs, 0.0, passed=True))

    if group is not None:
        results.append(_check('maskit_relation', group.relation_residual, 0.0, RELATION_TOL))
    if regular:
        side = regular_side_length(poly.genus)
        side_error = max(abs(x - side) for x in m.side_lengths)
        angle_error = max(abs(a - math.pi / 2) for a in m.interior_angles)
        results.append(_check('polygon_regularity', max(side_error, angle_error), 0.0, REGULARITY_TOL))
    return results


def dynamics_checks(poly, cfg=_cfg):
    bm = bmap.BoundaryMap(poly, cfg)
    md = markov.build_markov(bm, cfg)
    h_top = markov.topological_entropy(md, cfg)
    m = metrics(poly)
    formula = entropy_lab.entropy_formula(poly, m)
    bound = markov.htop_lower_bound(poly.genus)
    return [
        _check('markov_eigenpair', markov.eigenpair_residual(md), 0.0, EIGENPAIR_TOL),
        _check('htop_lower_bound', h_top, bound, 0.0, passed=h_top >= bound - EIGENPAIR_TOL),
        _check('nu_mass_omega_p', bmap.nu_mass_omega_p(bm), m.perimeter, NU_EXACT_TOL),
        _check('two_form_consistency', entropy_lab.entropy_from_area(poly, m), formula, FORMULA_TOL),
        _check('entropy_below_H', formula, entropy_lab.H_max(poly.genus), FORMULA_TOL,
               passed=formula <= entropy_lab.H_max(poly.genus) + FORMULA_TOL),
        _check('entropy_below_htop', formula, h_top, 0.0, passed=formula < h_top)
    ]


def oracle_checks(poly, cfg=_cfg, samples=None, nsteps=None, nseeds=None, seed=None, threads=1):
    """Monte Carlo, Birkhoff and strip oracles against the closed forms."""
    samples = cfg.DEFAULT_SAMPLES if samples is None else samples
    nsteps = cfg.DEFAULT_NSTEPS if nsteps is None else nsteps
    nseeds = cfg.DEFAULT_NSEEDS if nseeds is None else nseeds
    seed = cfg.DEFAULT_SEED if seed is None else seed
    m = metrics(poly)
    formula = entropy_lab.entropy_formula(poly, m)

    mass, stderr = entropy_lab.nu_mass_quadrature(poly, samples, seed, threads, cfg)
    birkhoff, _ = entropy_lab.birkhoff_entropy(bmap.BoundaryMap(poly, cfg), nsteps, nseeds, seed, threads)
    strips = entropy_lab.strip_check(poly, cfg.STRIP_GRID)
    current_error = max(abs(s.current_mass - s.length) for s in strips)
    direct_error = max(abs(s.direct_mass - s.length) for s in strips)
    direct_sum = math.fsum(s.direct_mass for s in strips)

    return [
        _check('nu_mass_quadrature', mass, m.perimeter, cfg.QUADRATURE_SIGMAS * stderr),
        _check('birkhoff_entropy', abs(birkhoff - formula) / formula, 0.0, cfg.BIRKHOFF_REL_TOL),
        _check('strip_current_mass', current_error, 0.0, cfg.STRIP_TOL),
        _check('strip_direct_mass', direct_error, 0.0, cfg.STRIP_TOL),
        _check('strip_perimeter_sum', direct_sum, m.perimeter, STRIP_SUM_TOL)
    ]


def _guarded(stage, func, *args, **kwargs):
    """Run a group of checks; an exception becomes a single failing check."""
    try:
        return func(*args, **kwargs)
    except BoundarySeriesError as exc:
        logger.info('%s stage aborted: %s', stage, exc)
        return [CheckResult(name=stage, passed=False, observed=exc.observed,
                            expected=exc.expected, tolerance=exc.tolerance)]


def run_verification(poly, cfg=_cfg, group=None, regular=False, oracles=True, **oracle_args):
    """
    Run every check on a polygon.

    Args:
        poly: MarkedPolygon
        group: Genus2Group when the polygon comes from Maskit's chart
        regular: also require all sides and angles to be the regular values
        oracles: include the sampling oracles

    Returns:
        list of CheckResult in evaluation order
    """
    results = _guarded('polygon', polygon_checks, poly, cfg, group, regular)
    results += _guarded('dynamics', dynamics_checks, poly, cfg)
    if oracles:
        results += _guarded('oracles', oracle_checks, poly, cfg, **oracle_args)
    failed = sum(not r.passed for r in results)
    logger.info('%d checks, %d failed', len(results), failed)
    return results


def first_failure(results):
    return next((r for r in results if not r.passed), None)
