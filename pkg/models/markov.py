"""Markov partition model."""
from dataclasses import dataclass

import numpy as np

from utils.helpers import matrix_to_text


@dataclass(frozen=True, eq=False)
class MarkovData:
    """
    The 16g-8 partition arcs and the 0/1 transition matrix.

    intervals[2i-2] = [P_i, Q_i) and intervals[2i-1] = [Q_i, P_{i+1}) as
    (start, end) angle pairs; matrix[j, k] = 1 when the image of interval j
    covers interval k.
    """

    genus: int
    intervals: tuple
    matrix: np.ndarray

    @property
    def size(self):
        return self.matrix.shape[0]

    def row_sums(self):
        return self.matrix.sum(axis=1)

    def to_text(self):
        """Plain-text dump, one row per line."""
        return matrix_to_text(self.matrix)

    def to_dict(self):
        return {
            'genus': self.genus,
            'intervals': [list(pair) for pair in self.intervals],
            'matrix': self.matrix.astype(int).tolist()
        }
