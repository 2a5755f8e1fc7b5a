"""Maskit's Fenchel-Nielsen chart for genus 2."""
import math
from dataclasses import dataclass, replace

# JSON field names -> attribute names
_FIELDS = {
    'alpha': 'alpha', 'beta': 'beta', 'gamma': 'gamma',
    'sigma': 'sigma_t', 'tau': 'tau_t', 'rho': 'rho_t'
}


@dataclass(frozen=True)
class FenchelNielsen6:
    """Length parameters alpha, beta, gamma and twists sigma_t, tau_t, rho_t."""

    alpha: float
    beta: float
    gamma: float
    sigma_t: float = 0.0
    tau_t: float = 0.0
    rho_t: float = 0.0

    @classmethod
    def regular(cls):
        """Coordinates of the regular 12-gon."""
        alpha = 0.5 * math.acosh(1.0 + math.sqrt(3.0))
        return cls(alpha=alpha, beta=2 * alpha, gamma=2 * alpha)

    def with_value(self, name, value):
        """Copy with one coordinate replaced (JSON or attribute name)."""
        return replace(self, **{_FIELDS.get(name, name): float(value)})

    def value(self, name):
        return getattr(self, _FIELDS.get(name, name))

    def to_dict(self):
        return {key: getattr(self, attr) for key, attr in _FIELDS.items()}

    @classmethod
    def from_dict(cls, data):
        values = {}
        for key, attr in _FIELDS.items():
            if key in data:
                values[attr] = float(data[key])
            elif attr in data:
                values[attr] = float(data[attr])
        return cls(**values)


@dataclass(frozen=True, eq=False)
class Genus2Group:
    """Generators A, B, C, D with the axis table S_1..S_12, pairings T_1..T_12 and side endpoints."""

    params: FenchelNielsen6
    mu: float
    delta: float
    A: object
    B: object
    C: object
    D: object
    S: tuple
    T: tuple
    relation_residual: float
    P: tuple = ()
    Q: tuple = ()

    def to_dict(self):
        return {
            'params': self.params.to_dict(),
            'mu': self.mu,
            'delta': self.delta,
            'generators': {name: getattr(self, name).to_dict() for name in 'ABCD'},
            'relation_residual': self.relation_residual,
            'P': list(self.P),
            'Q': list(self.Q)
        }
