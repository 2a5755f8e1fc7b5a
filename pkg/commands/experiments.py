"""Flexibility commands: parameter sweeps and the target-entropy solver."""
import logging

import click

from commands.common import current_config, emit, out_option, require
from commands.dynamics import FLOAT_FORMAT
from engine.flexibility import entropy_at, solve_target_entropy, sweep, sweep_frame, sweep_values
from models.fenchel_nielsen import FenchelNielsen6
from utils.helpers import dumps_json
from utils.validators import validate_sweep_range, validate_tolerance

logger = logging.getLogger(__name__)

PARAMS = ['alpha', 'beta', 'gamma', 'sigma', 'tau', 'rho']

@click.command('sweep')
@click.option('--param', type=click.Choice(PARAMS), required=True)
@click.option('--from', 'start', type=float, required=True)
@click.option('--to', 'stop', type=float, required=True)
@click.option('--steps', type=int, default=100, show_default=True)
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', show_default=True)
@out_option
def sweep_command(param, start, stop, steps, fmt, out):
    """Entropy, perimeter and h_top along one Maskit coordinate (others regular)."""
    start, stop, steps = require(validate_sweep_range(start, stop, steps))
    rows = sweep(param, sweep_values(start, stop, steps), FenchelNielsen6.regular(), cfg=current_config())
    if not rows:
        raise click.UsageError(f'no {param} value in [{start}, {stop}] gives a valid polygon')
    peak = max(rows, key=lambda r: r.entropy)
    logger.info('%d rows, entropy peak %.17g at %s=%.10g', len(rows), peak.entropy, param, peak.value)
    if fmt == 'json':
        emit(dumps_json([row.to_dict() for row in rows]), out)
    else:
        emit(sweep_frame(rows).to_csv(index=False, float_format=FLOAT_FORMAT), out)

@click.command('solve')
@click.option('--target', type=float, required=True, help='Entropy to reach, in (0, H(2)].')
@click.option('--tol', type=float, default=1e-8, show_default=True)
@out_option
def solve(target, tol, out):
    """Maskit coordinates with the requested entropy, found by bisection on beta."""
    cfg = current_config()
    tol = require(validate_tolerance(tol))
    params = solve_target_entropy(target, tol, g=2, cfg=cfg)
    achieved = entropy_at(params, cfg)
    logger.info('entropy %.17g at beta=%.17g', achieved, params.beta)
    emit(dumps_json(params.to_dict()), out)
