"""Polygon commands: entropy reports for regular and Maskit polygons."""
import logging

import click

from commands.common import (announce_seed, current_config, emit, maskit_options, out_option,
                             parse_maskit, require, sampling_options, sampling_values, seed_option,
                             threads_option)
from engine import maskit
from engine.entropy_lab import build_report
from engine.polygon_builder import regular_polygon
from utils.helpers import dumps_json
from utils.validators import validate_genus

logger = logging.getLogger(__name__)


def _report(poly, samples, nsteps, seed, threads, params=None):
    """Report JSON; the sampling oracles run only when --samples or --nsteps is given."""
    cfg = current_config()
    oracles = samples is not None or nsteps is not None
    samples, nsteps, seed, threads = sampling_values(cfg, samples, nsteps, seed, threads)
    if oracles:
        announce_seed(seed)
    report = build_report(poly, cfg, samples=samples, nsteps=nsteps, seed=seed, threads=threads,
                          oracles=oracles, params=params)
    logger.info('%s: entropy %.17g, h_top %.17g', poly.label, report.formula_value, report.h_top)
    return report


@click.command('regular')
@click.option('--genus', type=int, default=2, show_default=True)
@sampling_options
@seed_option
@threads_option
@out_option
def regular(genus, samples, nsteps, seed, threads, out):
    """Entropy report for the regular (8g-4)-gon."""
    g = require(validate_genus(genus))
    poly = regular_polygon(g, current_config())
    report = _report(poly, samples, nsteps, seed, threads)
    emit(dumps_json(report.to_dict()), out)


@click.command('maskit')
@maskit_options
@sampling_options
@seed_option
@threads_option
@out_option
def maskit_report(params_file, alpha, beta, gamma, sigma, tau, rho, samples, nsteps, seed, threads, out):
    """Entropy report for the genus-2 polygon of Maskit coordinates."""
    cfg = current_config()
    params = parse_maskit(dict(alpha=alpha, beta=beta, gamma=gamma, sigma=sigma, tau=tau, rho=rho),
                          params_file)
    poly = maskit.polygon_for(params, cfg)
    report = _report(poly, samples, nsteps, seed, threads, params=params.to_dict())
    emit(dumps_json(report.to_dict()), out)
