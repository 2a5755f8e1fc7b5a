"""Input validators.

Each validator returns ``(is_valid, value_or_message)``.
"""
import math


def validate_genus(genus):
    """Validate a surface genus (integer, at least 2)."""
    try:
        genus = int(genus)
    except (ValueError, TypeError):
        return False, "genus must be an integer"

    if genus < 2:
        return False, "genus must be ≥ 2"

    return True, genus


def validate_positive_count(value, name='count'):
    """Validate a positive integer such as a sample or step count."""
    try:
        value = int(value)
    except (ValueError, TypeError):
        return False, f"{name} must be an integer"

    if value <= 0:
        return False, f"{name} must be positive"

    return True, value


def validate_minimum(value, minimum, name):
    """Validate an integer lower bound, e.g. at least 10^4 samples."""
    ok, value = validate_positive_count(value, name)
    if not ok:
        return ok, value
    if value < minimum:
        return False, f"{name} must be at least {minimum}"
    return True, value


def validate_maskit_params(alpha, beta, gamma, sigma_t, tau_t, rho_t):
    """
    Validate the six Maskit coordinates.

    Returns (is_valid, dict_or_error_message). Lengths must be positive and
    all six values finite.
    """
    values = {
        'alpha': alpha, 'beta': beta, 'gamma': gamma,
        'sigma_t': sigma_t, 'tau_t': tau_t, 'rho_t': rho_t
    }
    parsed = {}
    for name, raw in values.items():
        try:
            parsed[name] = float(raw)
        except (ValueError, TypeError):
            return False, f"{name} must be a number"
        if not math.isfinite(parsed[name]):
            return False, f"{name} must be finite"

    for name in ('alpha', 'beta', 'gamma'):
        if parsed[name] <= 0:
            return False, f"{name} must be positive"

    return True, parsed


def validate_tolerance(tol, minimum=1e-10):
    """Validate a solver tolerance."""
    try:
        tol = float(tol)
    except (ValueError, TypeError):
        return False, "tol must be a number"

    if not math.isfinite(tol) or tol < minimum:
        return False, f"tol must be at least {minimum:g}"

    return True, tol


def validate_sweep_range(start, stop, steps):
    """Validate a sweep grid: finite endpoints and at least two steps."""
    try:
        start, stop = float(start), float(stop)
        steps = int(steps)
    except (ValueError, TypeError):
        return False, "invalid sweep range"

    if not (math.isfinite(start) and math.isfinite(stop)):
        return False, "sweep endpoints must be finite"
    if steps < 2:
        return False, "steps must be at least 2"

    return True, (start, stop, steps)
