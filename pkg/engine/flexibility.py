"""Target-entropy solver and one-parameter sweeps over Maskit's chart."""
import logging

import numpy as np
import pandas as pd
from scipy import optimize

from config import config
from engine import maskit
from engine.boundary_map import BoundaryMap
from engine.entropy_lab import H_max, entropy_formula, entropy_from_perimeter
from engine.exceptions import (BracketFailure, DomainError, InvalidInput, NoConvergence,
                               TargetOutOfRange)
from engine.markov import build_markov, topological_entropy
from engine.polygon_builder import metrics
from models.report import SweepRow

logger = logging.getLogger(__name__)

_cfg = config['default']


def entropy_at(params, cfg=_cfg):
    """Entropy of the Maskit polygon for params, from its high-precision perimeter."""
    return entropy_from_perimeter(maskit.perimeter(params, cfg), 2)


def find_decreasing_bracket(func, start, target, growth, cap):
    """
    Grow x from start until func(x) drops below target.

    Args:
        func: decreasing function of x
        start: point with func(start) >= target

    Returns:
        tuple: (x_lower, x_upper) with func(x_lower) >= target > func(x_upper)
    """
    x_lower = x_upper = start
    iterations = 0
    while True:
        iterations += 1
        x_upper = x_upper * growth
        if x_upper > cap:
            raise BracketFailure(f'entropy stays above {target} for beta up to {cap}',
                                 observed=x_lower, expected=target)
        try:
            y_upper = func(x_upper)
        except DomainError as exc:
            raise BracketFailure(f'polygon construction failed at beta={x_upper:.6g}: {exc}',
                                 observed=x_upper) from exc
        logger.debug('bracket step %d: beta=%.10g entropy=%.12g', iterations, x_upper, y_upper)
        if y_upper < target:
            return x_lower, x_upper
        x_lower = x_upper


def solve_target_entropy(target_h, tol, g=2, cfg=_cfg):
    """
    Find Maskit coordinates whose polygon has the requested entropy.

    Only beta moves, upward from its regular value; the other coordinates stay
    regular with zero twists.

    Returns:
        FenchelNielsen6
    """
    if g != 2:
        raise InvalidInput('the solver works in genus 2 only', observed=g, expected=2)
    if tol < 1e-10:
        raise InvalidInput('tol must be at least 1e-10', observed=tol)
    h_max = H_max(2)
    if not 0.0 < target_h <= h_max:
        raise TargetOutOfRange(f'target entropy must lie in (0, {h_max:.10g}]',
                               observed=target_h, expected=h_max)

    regular = maskit.regular_parameters()

    def excess(beta):
        return entropy_at(regular.with_value('beta', beta), cfg) - target_h

    if abs(excess(regular.beta)) <= tol:
        return regular

    lo, hi = find_decreasing_bracket(lambda b: entropy_at(regular.with_value('beta', b), cfg),
                                     regular.beta, target_h, cfg.SOLVER_BRACKET_GROWTH,
                                     cfg.SOLVER_BETA_CAP)
    beta = optimize.bisect(excess, lo, hi, xtol=1e-14, maxiter=400)
    residual = excess(beta)
    if abs(residual) > tol:
        raise NoConvergence('bisection did not reach the entropy tolerance',
                            observed=abs(residual), tolerance=tol)
    logger.info('target %.12g reached at beta=%.15g (residual %.3g)', target_h, beta, residual)
    return regular.with_value('beta', beta)


def sweep_values(start, stop, steps):
    return np.linspace(start, stop, steps)


def sweep(param, values, base=None, g=2, cfg=_cfg):
    """
    Entropy, perimeter and h_top along one Maskit coordinate.

    Rows whose parameters leave the chart, or whose polygon does not close up,
    are skipped with a warning. Failed verification checks propagate.

    Returns:
        list of SweepRow
    """
    if g != 2:
        raise InvalidInput('sweeps run in genus 2 only', observed=g, expected=2)
    base = maskit.regular_parameters() if base is None else base
    rows = []
    for value in values:
        params = base.with_value(param, value)
        try:
            poly = maskit.polygon_for(params, cfg)
            m = metrics(poly)
            h_top = topological_entropy(build_markov(BoundaryMap(poly, cfg), cfg), cfg)
        except maskit.CHART_ERRORS as exc:
            logger.warning('skipping %s=%.10g: %s', param, value, exc)
            continue
        rows.append(SweepRow(param=param, value=float(value), perimeter=m.perimeter,
                             entropy=entropy_formula(poly, m), h_top=h_top))
    return rows


def sweep_frame(rows):
    """Sweep rows as a DataFrame with columns param,value,perimeter,entropy,h_top."""
    return pd.DataFrame([row.to_dict() for row in rows],
                        columns=['param', 'value', 'perimeter', 'entropy', 'h_top'])
