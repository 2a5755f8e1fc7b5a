"""Options and output plumbing shared by the command modules."""
import json
import logging

import click

from engine import maskit
from engine.polygon_builder import regular_polygon
from models.fenchel_nielsen import FenchelNielsen6
from utils.validators import (validate_genus, validate_maskit_params, validate_minimum,
                              validate_positive_count)

logger = logging.getLogger(__name__)

MASKIT_FLAGS = ('alpha', 'beta', 'gamma', 'sigma', 'tau', 'rho')


def current_config():
    return click.get_current_context().obj['config']


def require(result):
    """Unwrap a validator result or stop with a usage error (exit code 2)."""
    ok, value = result
    if not ok:
        raise click.UsageError(value)
    return value


def emit(text, out=None):
    """Write data to the output file, or to stdout."""
    if out:
        with open(out, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
        logger.info('wrote %s', out)
    else:
        click.echo(text, nl=False)


def announce_seed(seed):
    click.echo(f'seed: {seed}', err=True)


def seed_option(func):
    return click.option('--seed', type=int, default=None,
                        help='Base seed of every random stream (default 0x5EED).')(func)


def out_option(func):
    return click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None,
                        help='Write data here instead of stdout.')(func)


def threads_option(func):
    return click.option('--threads', type=int, default=None,
                        help='Parallel work units for the sampling oracles.')(func)


def sampling_options(func):
    func = click.option('--nsteps', type=int, default=None, help='Orbit length per Birkhoff seed.')(func)
    func = click.option('--samples', type=int, default=None, help='Monte Carlo samples.')(func)
    return func


def maskit_options(func, defaults=False):
    """The six Maskit coordinates; unset flags take the regular values."""
    regular = FenchelNielsen6.regular().to_dict() if defaults else {}
    for name in reversed(MASKIT_FLAGS):
        func = click.option(f'--{name}', type=float, default=regular.get(name),
                            show_default=defaults)(func)
    return click.option('--params', 'params_file', type=click.File('r'), default=None,
                        help='JSON file with Maskit coordinates (as written by `solve`).')(func)


def polygon_options(func):
    """--genus for the regular polygon, or Maskit coordinates for genus 2."""
    func = maskit_options(func)
    return click.option('--genus', type=int, default=None, help='Genus of the regular polygon.')(func)


def parse_maskit(values, params_file=None):
    """Build FenchelNielsen6 from flags, filling gaps from a params file, then regular values."""
    base = FenchelNielsen6.regular().to_dict()
    if params_file is not None:
        data = json.load(params_file)
        base.update(FenchelNielsen6.from_dict(data.get('params', data)).to_dict())
    merged = {name: base[name] if values.get(name) is None else values[name] for name in MASKIT_FLAGS}
    parsed = require(validate_maskit_params(merged['alpha'], merged['beta'], merged['gamma'],
                                            merged['sigma'], merged['tau'], merged['rho']))
    return FenchelNielsen6(**parsed)


def resolve_polygon(cfg, genus=None, params_file=None, **maskit_values):
    """
    Pick the polygon a command works on.

    Returns:
        tuple: (MarkedPolygon, Genus2Group or None, is_regular, FenchelNielsen6 or None)
    """
    uses_maskit = params_file is not None or any(v is not None for v in maskit_values.values())
    if not uses_maskit:
        g = require(validate_genus(2 if genus is None else genus))
        return regular_polygon(g, cfg), None, True, None

    if genus is not None and genus != 2:
        raise click.UsageError('Maskit coordinates require genus = 2')
    params = parse_maskit(maskit_values, params_file)
    group = maskit.build_group(params, cfg)
    poly = maskit.build_polygon(group, cfg)
    return poly, group, params == maskit.regular_parameters(), params


def sampling_values(cfg, samples, nsteps, seed, threads):
    """Validated (samples, nsteps, seed, threads) with configuration defaults."""
    if samples is None:
        samples = cfg.DEFAULT_SAMPLES
    if nsteps is None:
        nsteps = cfg.DEFAULT_NSTEPS
    if threads is None:
        threads = cfg.DEFAULT_THREADS
    samples = require(validate_minimum(samples, 10_000, 'samples'))
    nsteps = require(validate_positive_count(nsteps, 'nsteps'))
    threads = require(validate_positive_count(threads, 'threads'))
    seed = cfg.DEFAULT_SEED if seed is None else seed
    return samples, nsteps, seed, threads
