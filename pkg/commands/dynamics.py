"""Boundary-map commands: transition matrix, attractor dump and strip masses."""
import logging

import click
import pandas as pd

from commands.common import (announce_seed, current_config, emit, out_option, polygon_options,
                             require, resolve_polygon, seed_option)
from engine import markov
from engine.boundary_map import BoundaryMap, attractor_sample, in_omega_p_many
from engine.entropy_lab import strip_check
from utils.helpers import dumps_json
from utils.validators import validate_minimum, validate_positive_count

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'


def _maskit_values(alpha, beta, gamma, sigma, tau, rho):
    return dict(alpha=alpha, beta=beta, gamma=gamma, sigma=sigma, tau=tau, rho=rho)


@click.command('htop')
@polygon_options
@click.option('--format', 'fmt', type=click.Choice(['json', 'matrix-txt']), default='json',
              show_default=True)
@out_option
def htop(genus, params_file, alpha, beta, gamma, sigma, tau, rho, fmt, out):
    """Markov transition matrix and topological entropy of the boundary map."""
    cfg = current_config()
    poly, _, _, _ = resolve_polygon(cfg, genus, params_file,
                                    **_maskit_values(alpha, beta, gamma, sigma, tau, rho))
    md = markov.build_markov(BoundaryMap(poly, cfg), cfg)
    h_top = markov.topological_entropy(md, cfg)
    logger.info('h_top %.17g (lower bound %.17g)', h_top, markov.htop_lower_bound(poly.genus))
    if fmt == 'matrix-txt':
        emit(md.to_text(), out)
        return
    document = md.to_dict()
    document.update({
        'h_top': h_top,
        'h_top_lower_bound': markov.htop_lower_bound(poly.genus),
        'eigenpair_residual': markov.eigenpair_residual(md)
    })
    emit(dumps_json(document), out)


@click.command('dump-attractor')
@polygon_options
@click.option('--iters', type=int, default=50, show_default=True, help='F_P iterations per pair.')
@click.option('--points', type=int, default=5000, show_default=True, help='Number of pairs.')
@seed_option
@out_option
def dump_attractor(genus, params_file, alpha, beta, gamma, sigma, tau, rho, iters, points, seed, out):
    """CSV of (u, w) angle pairs pushed forward onto the attractor of F_P."""
    cfg = current_config()
    iters = require(validate_positive_count(iters, 'iters'))
    points = require(validate_positive_count(points, 'points'))
    seed = cfg.DEFAULT_SEED if seed is None else seed
    announce_seed(seed)
    poly, _, _, _ = resolve_polygon(cfg, genus, params_file,
                                    **_maskit_values(alpha, beta, gamma, sigma, tau, rho))
    bm = BoundaryMap(poly, cfg)
    u, w = attractor_sample(bm, iters, points, seed)
    inside = in_omega_p_many(bm, u, w)
    logger.info('%d of %d pairs inside the rectangular attractor', int(inside.sum()), points)
    frame = pd.DataFrame({'u_angle': u, 'w_angle': w})
    emit(frame.to_csv(index=False, float_format=FLOAT_FORMAT), out)


@click.command('strip-check')
@polygon_options
@click.option('--grid', type=int, default=None, help='Quadrature nodes per axis (at least 100).')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', show_default=True)
@out_option
def strip_check_command(genus, params_file, alpha, beta, gamma, sigma, tau, rho, grid, fmt, out):
    """Per-side strip masses against the side lengths."""
    cfg = current_config()
    grid = require(validate_minimum(cfg.STRIP_GRID if grid is None else grid, 100, 'grid'))
    poly, _, _, _ = resolve_polygon(cfg, genus, params_file,
                                    **_maskit_values(alpha, beta, gamma, sigma, tau, rho))
    rows = strip_check(poly, grid)
    frame = pd.DataFrame([row._asdict() for row in rows],
                         columns=['side', 'length', 'current_mass', 'direct_mass'])
    worst = max(abs(r.direct_mass - r.length) for r in rows)
    logger.info('largest strip deviation %.3g over %d sides', worst, len(rows))
    if fmt == 'json':
        emit(dumps_json(frame.to_dict(orient='records')), out)
    else:
        emit(frame.to_csv(index=False, float_format=FLOAT_FORMAT), out)
