"""Markov partition, transition matrix and topological entropy of f_P."""
import logging
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from config import config
from engine import hyperbolic as hyp
from engine.exceptions import MarkovViolation, NoConvergence
from models.markov import MarkovData
from utils.helpers import angle_of, circular_distance

logger = logging.getLogger(__name__)

_cfg = config['default']


def partition_points(poly):
    """P_1, Q_1, P_2, Q_2, ... as angles."""
    return [x for pair in zip(poly.P, poly.Q) for x in pair]


def _match(angle, points, tol):
    distances = [circular_distance(angle, p) for p in points]
    k = int(np.argmin(distances))
    if distances[k] > tol:
        raise MarkovViolation('image endpoint matches no partition point',
                              observed=distances[k], expected=0.0, tolerance=tol)
    return k


def build_markov(bm, cfg=None):
    """
    Transition matrix of f_P on the partition I_{2i-1} = [P_i, Q_i), I_{2i} = [Q_i, P_{i+1}).

    Images of interval endpoints under the branch map are matched to partition
    points; the row marks every interval between the matched images.

    Returns:
        MarkovData
    """
    cfg = bm.cfg if cfg is None else cfg
    poly = bm.polygon
    points = partition_points(poly)
    size = len(points)
    intervals = tuple((points[j], points[(j + 1) % size]) for j in range(size))
    matrix = np.zeros((size, size), dtype=np.int8)

    for j in range(size):
        t = poly.pairing(j // 2 + 1)
        start = _match(angle_of(hyp.apply(t, np.exp(1j * points[j]))), points, cfg.MARKOV_MATCH_TOL)
        end = _match(angle_of(hyp.apply(t, np.exp(1j * points[(j + 1) % size]))), points,
                     cfg.MARKOV_MATCH_TOL)
        if start == end:
            raise MarkovViolation(f'interval {j + 1} has a degenerate image', observed=start)
        k = start
        while k != end:
            matrix[j, k] = 1
            k = (k + 1) % size

    md = MarkovData(genus=poly.genus, intervals=intervals, matrix=matrix)
    check_markov(md)
    return md


def check_markov(md):
    """Raise MarkovViolation unless every row has two ones and the matrix is irreducible."""
    sums = md.row_sums()
    if sums.min() < 2:
        raise MarkovViolation('transition row with fewer than two ones',
                              observed=int(sums.min()), expected='>= 2')
    if not is_irreducible(md.matrix):
        raise MarkovViolation('transition matrix is not irreducible')


def is_irreducible(matrix):
    count, _ = connected_components(csr_matrix(matrix), directed=True, connection='strong')
    return count == 1


def spectral_radius(matrix, cfg=_cfg):
    """
    Perron root of a nonnegative irreducible matrix by power iteration.

    Iterates on M + I, which is primitive, and subtracts 1 at the end.
    Stops when the relative residual ||A x - lambda x|| / lambda < POWER_ITER_TOL.
    """
    a = np.asarray(matrix, dtype=float) + np.eye(len(matrix))
    x = np.ones(len(a)) / math.sqrt(len(a))
    lam = 0.0
    for step in range(1, cfg.POWER_ITER_MAX + 1):
        y = a @ x
        lam = float(x @ y)
        x = y / np.linalg.norm(y)
        res = np.linalg.norm(a @ x - lam * x, np.inf)
        if res < cfg.POWER_ITER_TOL * lam:
            logger.debug('power iteration converged in %d steps, lambda=%.17g', step, lam - 1.0)
            return lam - 1.0, x
    raise NoConvergence('power iteration did not converge', observed=cfg.POWER_ITER_MAX,
                        tolerance=cfg.POWER_ITER_TOL)


def topological_entropy(md, cfg=_cfg):
    """log of the spectral radius of the transition matrix."""
    if not is_irreducible(md.matrix):
        raise MarkovViolation('transition matrix is not irreducible')
    lam, _ = spectral_radius(md.matrix, cfg)
    return math.log(lam)


def analytic_eigenvalue(g):
    """4g - 3 + sqrt((4g - 3)^2 - 1)."""
    k = 4 * g - 3
    return k + math.sqrt(k * k - 1)


def htop_lower_bound(g):
    return math.log(analytic_eigenvalue(g))


def analytic_eigenpair(g):
    """Eigenvalue lambda and eigenvector (1, lambda - 1, 1, lambda - 1, ...)."""
    lam = analytic_eigenvalue(g)
    n = 8 * g - 4
    return lam, np.tile([1.0, lam - 1.0], n)


def eigenpair_residual(md):
    """||M v - lambda v||_inf for the analytic pair."""
    lam, v = analytic_eigenpair(md.genus)
    return float(np.max(np.abs(md.matrix @ v - lam * v)))
