"""Marked fundamental polygon model."""
from dataclasses import dataclass, field

from models.moebius import DiskMoebius
from utils.helpers import complex_pair


@dataclass(frozen=True)
class PolygonMetrics:
    """Perimeter, area and per-side / per-vertex measurements."""

    perimeter: float
    area: float
    side_lengths: tuple
    interior_angles: tuple

    def to_dict(self):
        return {
            'perimeter': self.perimeter,
            'area': self.area,
            'side_lengths': list(self.side_lengths),
            'interior_angles': list(self.interior_angles)
        }


@dataclass(frozen=True, eq=False)
class MarkedPolygon:
    """
    Fundamental (8g-4)-gon with its boundary markings.

    Side i runs from vertex V_i to V_{i+1} along the geodesic P_i -> Q_{i+1},
    and T_i maps side i onto side sigma(i). All index accessors are 1-based
    and wrap modulo n.
    """

    genus: int
    vertices: tuple
    P: tuple
    Q: tuple
    T: tuple
    label: str = field(default='')

    @property
    def n(self):
        return 8 * self.genus - 4

    def _wrap(self, i):
        return (i - 1) % self.n

    def vertex(self, i):
        return self.vertices[self._wrap(i)]

    def p(self, i):
        return self.P[self._wrap(i)]

    def q(self, i):
        return self.Q[self._wrap(i)]

    def pairing(self, i):
        return self.T[self._wrap(i)]

    def to_dict(self, metrics=None):
        """Convert polygon to its JSON document."""
        data = {
            'genus': self.genus,
            'P': list(self.P),
            'Q': list(self.Q),
            'vertices': [complex_pair(v) for v in self.vertices],
            'T': [t.to_dict() for t in self.T]
        }
        if metrics is not None:
            data['metrics'] = metrics.to_dict()
        return data


def polygon_from_dict(data):
    """Rebuild a MarkedPolygon from its JSON document (metrics are ignored)."""
    return MarkedPolygon(
        genus=int(data['genus']),
        vertices=tuple(complex(x, y) for x, y in data['vertices']),
        P=tuple(float(x) for x in data['P']),
        Q=tuple(float(x) for x in data['Q']),
        T=tuple(DiskMoebius.from_dict(t) for t in data['T'])
    )
