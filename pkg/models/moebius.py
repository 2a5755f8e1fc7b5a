"""Möbius transformation model."""
import cmath
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DiskMoebius:
    """2x2 complex matrix acting by z -> (az + b) / (cz + d).

    Entries are kept exactly as produced; normalization to det = 1 happens
    only through `normalized()`.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @classmethod
    def identity(cls):
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def rotation(cls, theta):
        """Rotation of the disk by angle theta."""
        h = cmath.exp(0.5j * theta)
        return cls(h, 0j, 0j, 1 / h)

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def normalized(self):
        """Scalar multiple with determinant 1 (sign is not canonical)."""
        s = cmath.sqrt(self.det)
        return DiskMoebius(self.a / s, self.b / s, self.c / s, self.d / s)

    @property
    def normalized_trace(self):
        n = self.normalized()
        return n.a + n.d

    def to_dict(self):
        """Convert matrix to its 8-real serialized form (row-major, re/im)."""
        return [
            self.a.real, self.a.imag, self.b.real, self.b.imag,
            self.c.real, self.c.imag, self.d.real, self.d.imag
        ]

    @classmethod
    def from_dict(cls, values):
        v = [float(x) for x in values]
        return cls(complex(v[0], v[1]), complex(v[2], v[3]),
                   complex(v[4], v[5]), complex(v[6], v[7]))
