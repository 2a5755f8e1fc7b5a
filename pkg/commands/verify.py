"""The verify command: every invariant and oracle check, one line each."""
import logging

import click

from commands.common import (announce_seed, current_config, emit, out_option, polygon_options,
                             resolve_polygon, sampling_options, sampling_values, seed_option,
                             threads_option)
from engine.exceptions import VerificationError
from engine.verification import corrupt_pairing, first_failure, run_verification

logger = logging.getLogger(__name__)


@click.command('verify')
@polygon_options
@sampling_options
@seed_option
@threads_option
@click.option('--corrupt', type=int, default=None, hidden=True,
              help='Perturb pairing T_i before checking (negative control).')
@out_option
def verify(genus, params_file, alpha, beta, gamma, sigma, tau, rho, samples, nsteps, seed, threads,
           corrupt, out):
    """Run polygon, dynamics and oracle checks; exit 3 on the first failure."""
    cfg = current_config()
    samples, nsteps, seed, threads = sampling_values(cfg, samples, nsteps, seed, threads)
    announce_seed(seed)
    poly, group, is_regular, _ = resolve_polygon(
        cfg, genus, params_file, alpha=alpha, beta=beta, gamma=gamma, sigma=sigma, tau=tau, rho=rho)
    if corrupt is not None:
        if not 1 <= corrupt <= poly.n:
            raise click.UsageError(f'--corrupt must lie in 1..{poly.n}')
        poly = corrupt_pairing(poly, corrupt)
        logger.warning('checking %s', poly.label)

    results = run_verification(poly, cfg, group=group, regular=is_regular, samples=samples,
                               nsteps=nsteps, seed=seed, threads=threads)
    emit(''.join(r.line() + '\n' for r in results), out)
    failed = first_failure(results)
    if failed is not None:
        raise VerificationError(f'check {failed.name} failed', observed=failed.observed,
                                expected=failed.expected, tolerance=failed.tolerance)
