"""Application configuration."""
import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    return int(os.environ.get(name, default))


def _env_float(name, default):
    return float(os.environ.get(name, default))


class Config:
    """Base configuration."""

    APP_NAME = os.environ.get('BSE_APP_NAME', 'Boundary map entropy lab')
    LOG_LEVEL = os.environ.get('BSE_LOG_LEVEL', 'WARNING')

    # Möbius / disk geometry
    DET_TOL = 1e-12
    POLE_TOL = 1e-14
    DISK_TOL = 1e-9
    HYPERBOLIC_TRACE_TOL = 1e-10
    ENDPOINT_TOL = 1e-12
    DIAMETER_TOL = 1e-10

    # Polygons
    POLYGON_TOL = 1e-8
    AREA_TOL = 1e-6
    VERTEX_GRAZE_TOL = 1e-10

    # Boundary dynamics
    ARC_EDGE_TOL = 1e-13
    MARKOV_MATCH_TOL = 1e-6
    POWER_ITER_TOL = 1e-12
    POWER_ITER_MAX = 100000

    # Polygons from Maskit coordinates
    MASKIT_GUARD_DIGITS = 30

    # Flexibility solver
    SOLVER_BETA_CAP = 1000.0
    SOLVER_BRACKET_GROWTH = 1.25

    # Sampling
    DEFAULT_SEED = 0x5EED
    DEFAULT_SAMPLES = _env_int('BSE_SAMPLES', 1_000_000)
    DEFAULT_NSTEPS = _env_int('BSE_NSTEPS', 1_000_000)
    DEFAULT_NSEEDS = 5
    STRATA = 64
    STRIP_GRID = _env_int('BSE_STRIP_GRID', 400)
    DEFAULT_THREADS = _env_int('BSE_THREADS', 1)

    # Oracle gates used by `verify`
    BIRKHOFF_REL_TOL = _env_float('BSE_BIRKHOFF_REL_TOL', 0.02)
    QUADRATURE_SIGMAS = 3.0
    STRIP_TOL = 1e-3


class DevelopmentConfig(Config):
    """Development configuration."""
    LOG_LEVEL = os.environ.get('BSE_LOG_LEVEL', 'INFO')


class ProductionConfig(Config):
    """Acceptance-sized runs."""
    DEFAULT_SAMPLES = _env_int('BSE_SAMPLES', 10_000_000)
    DEFAULT_NSTEPS = _env_int('BSE_NSTEPS', 10_000_000)


class TestingConfig(Config):
    """Testing configuration."""
    LOG_LEVEL = 'DEBUG'
    DEFAULT_SAMPLES = 200_000
    DEFAULT_NSTEPS = 200_000
    STRIP_GRID = 200
    # Shorter orbits carry larger statistical error
    BIRKHOFF_REL_TOL = 0.05


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
