"""Command-line application entry point."""
import logging
import os
import sys

import click

from config import config
from engine.exceptions import BoundarySeriesError

# Import command modules
from commands.dynamics import dump_attractor, htop, strip_check_command
from commands.experiments import solve, sweep_command
from commands.polygons import maskit_report, regular
from commands.verify import verify

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

logger = logging.getLogger(__name__)


class EngineGroup(click.Group):
    """Click group translating engine errors into the exit-code contract."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except BoundarySeriesError as exc:
            if logger.isEnabledFor(logging.DEBUG):
                logger.exception('%s', type(exc).__name__)
            click.echo(f'Error: {exc.message}', err=True)
            ctx.exit(exc.exit_code)


def configure_logging(level):
    """One stderr handler; third-party loggers stay at WARNING."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logging.basicConfig(level=logging.WARNING, handlers=[handler], force=True)
    for name in ('engine', 'commands', __name__):
        logging.getLogger(name).setLevel(level)


def create_cli(config_name=None):
    """Create and configure the command-line application."""
    if config_name is None:
        config_name = os.environ.get('BSE_ENV', 'development')

    @click.group(cls=EngineGroup)
    @click.option('--env', type=click.Choice(sorted(config)), default=config_name, show_default=True,
                  help='Named configuration.')
    @click.option('--verbose', '-v', is_flag=True, help='DEBUG logging.')
    @click.pass_context
    def cli(ctx, env, verbose):
        """Entropy of Bowen-Series boundary maps of surface groups."""
        cfg = config[env]
        configure_logging(logging.DEBUG if verbose else cfg.LOG_LEVEL)
        ctx.obj = {'config': cfg, 'env': env}
        logger.debug('%s with %s configuration', cfg.APP_NAME, env)

    for command in (regular, maskit_report, verify, sweep_command, solve, htop, dump_attractor,
                    strip_check_command):
        cli.add_command(command)

    return cli


if __name__ == '__main__':
    create_cli()()
