"""Result records emitted by the command line."""
from dataclasses import asdict, dataclass, field
from typing import Optional

from utils.helpers import format_float


@dataclass
class EntropyReport:
    """Entropy of one polygon by formula, oracles and the Markov matrix."""

    genus: int
    label: str
    perimeter: float
    area: float
    formula_value: float
    area_form_value: float
    H_of_g: float
    h_top: float
    h_top_lower_bound: float
    nu_mass_exact: float
    quadrature_value: Optional[float] = None
    quadrature_stderr: Optional[float] = None
    nu_mass: Optional[float] = None
    nu_mass_stderr: Optional[float] = None
    samples: Optional[int] = None
    birkhoff_value: Optional[float] = None
    birkhoff_spread: Optional[float] = None
    nsteps: Optional[int] = None
    nseeds: Optional[int] = None
    seed: Optional[int] = None
    params: Optional[dict] = field(default=None)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float
    perimeter: float
    entropy: float
    h_top: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check."""

    name: str
    passed: bool
    observed: float
    expected: float
    tolerance: float

    def line(self):
        status = 'PASS' if self.passed else 'FAIL'
        return ' '.join([status, self.name, _fmt(self.observed), _fmt(self.expected), _fmt(self.tolerance)])

    def to_dict(self):
        return asdict(self)


def _fmt(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)):
        return format_float(value)
    return str(value)
