"""Points and geodesics of the Poincaré disk."""
import cmath
import math
from dataclasses import dataclass
from functools import cached_property

from config import Config
from engine.exceptions import DegenerateGeodesics, InvalidInput
from utils.helpers import angle_of, circular_distance, complex_pair, wrap_angle


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """Point of the circle at infinity, stored as an angle in [0, 2π)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, 'angle', wrap_angle(float(self.angle)))

    @classmethod
    def from_complex(cls, z):
        return cls(angle_of(z))

    @property
    def z(self):
        return cmath.exp(1j * self.angle)

    def isclose(self, other, tol=Config.ENDPOINT_TOL):
        return circular_distance(self.angle, other.angle) < tol

    def __eq__(self, other):
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def to_dict(self):
        return self.angle


@dataclass(frozen=True)
class DiskPoint:
    """Point strictly inside the unit disk."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not abs(z) < 1.0 - Config.DET_TOL:
            raise InvalidInput(f'point {z} is not inside the disk', observed=abs(z), expected='< 1')
        object.__setattr__(self, 'z', z)

    def to_dict(self):
        return complex_pair(self.z)


@dataclass(frozen=True, eq=False)
class Geodesic:
    """Oriented geodesic from boundary point u to boundary point w.

    The geodesic is the zero set of the hermitian form
    h(z) = a(|z|^2 + 1) - 2 Re(conj(b) z), positive on its left.
    """

    u: BoundaryPoint
    w: BoundaryPoint

    def __post_init__(self):
        if circular_distance(self.u.angle, self.w.angle) <= Config.ENDPOINT_TOL:
            raise DegenerateGeodesics('geodesic endpoints coincide',
                                      observed=circular_distance(self.u.angle, self.w.angle),
                                      tolerance=Config.ENDPOINT_TOL)

    @classmethod
    def from_angles(cls, u, w):
        return cls(BoundaryPoint(u), BoundaryPoint(w))

    @cached_property
    def form(self):
        """Coefficients (a, b) of the hermitian form."""
        u, w = self.u.z, self.w.z
        a = (u.conjugate() * w).imag
        b = 1j * (u - w)
        return a, b

    @cached_property
    def is_diameter(self):
        return abs(circular_distance(self.u.angle, self.w.angle) - math.pi) < Config.DIAMETER_TOL

    @cached_property
    def center(self):
        """Euclidean center of the orthogonal circle (None for a diameter)."""
        if self.is_diameter:
            return None
        a, b = self.form
        return b / a

    @cached_property
    def radius(self):
        if self.is_diameter:
            return math.inf
        return math.sqrt(max(abs(self.center) ** 2 - 1.0, 0.0))

    def side_value(self, z):
        """Normalized hermitian form at z: positive left of the geodesic."""
        a, b = self.form
        return (a * (abs(z) ** 2 + 1.0) - 2.0 * (b.conjugate() * z).real) / abs(b)

    def reversed(self):
        return Geodesic(self.w, self.u)

    def to_dict(self):
        return {'u': self.u.angle, 'w': self.w.angle}


@dataclass(frozen=True, eq=False)
class GeodesicPair:
    """Oriented geodesic as a pair (u, w); w is the forward endpoint."""

    u: BoundaryPoint
    w: BoundaryPoint

    def __post_init__(self):
        if circular_distance(self.u.angle, self.w.angle) <= 0.0:
            raise InvalidInput('geodesic pair lies on the diagonal', observed=self.u.angle)

    @classmethod
    def from_angles(cls, u, w):
        return cls(BoundaryPoint(u), BoundaryPoint(w))

    @property
    def geodesic(self):
        return Geodesic(self.u, self.w)

    def isclose(self, other, tol):
        return self.u.isclose(other.u, tol) and self.w.isclose(other.w, tol)

    def to_dict(self):
        return {'u': self.u.angle, 'w': self.w.angle}
