"""Helper functions."""
import json
import math

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(theta):
    """Reduce an angle (scalar or array) to [0, 2π)."""
    if isinstance(theta, np.ndarray):
        out = np.mod(theta, TWO_PI)
        out[out >= TWO_PI] = 0.0
        return out
    out = math.fmod(theta, TWO_PI)
    if out < 0.0:
        out += TWO_PI
    if out >= TWO_PI:
        out = 0.0
    return out


def ccw_distance(start, end):
    """Counter-clockwise angular distance from start to end, in [0, 2π)."""
    return wrap_angle(end - start)


def circular_distance(x, y):
    """Shortest angular distance between two angles."""
    d = ccw_distance(x, y)
    return min(d, TWO_PI - d)


def in_arc(x, start, end, closed=False):
    """Whether angle x lies in the counter-clockwise arc [start, end).

    Works elementwise when x is an array.
    """
    span = ccw_distance(start, end)
    if isinstance(x, np.ndarray):
        offset = wrap_angle(x - start)
    else:
        offset = ccw_distance(start, x)
    if closed:
        return offset <= span
    return offset < span


def angle_of(z):
    """Angle of a complex number (scalar or array) in [0, 2π)."""
    if isinstance(z, np.ndarray):
        return wrap_angle(np.angle(z))
    return wrap_angle(math.atan2(z.imag, z.real))


def format_float(x):
    """Format a float with 17 significant digits."""
    return format(float(x), '.17g')


def complex_pair(z):
    return [float(z.real), float(z.imag)]


def _encode(obj, level):
    pad = '  ' * (level + 1)
    end = '  ' * level
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if obj is None:
        return 'null'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if math.isfinite(obj):
            return format_float(obj)
        return json.dumps(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f'{pad}{json.dumps(str(k))}: {_encode(v, level + 1)}' for k, v in obj.items()]
        return '{\n' + ',\n'.join(items) + f'\n{end}}}'
    if isinstance(obj, (list, tuple, np.ndarray)):
        values = list(obj)
        if not values:
            return '[]'
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in values):
            return '[' + ', '.join(_encode(v, level + 1) for v in values) + ']'
        items = [pad + _encode(v, level + 1) for v in values]
        return '[\n' + ',\n'.join(items) + f'\n{end}]'
    raise TypeError(f'cannot serialize {type(obj).__name__}')


def dumps_json(document):
    """Serialize a document as JSON, floats at 17 significant digits."""
    return _encode(document, 0) + '\n'


def matrix_to_text(matrix):
    """Transition matrix dump: one row per line, space-separated 0/1."""
    return '\n'.join(' '.join(str(int(v)) for v in row) for row in np.asarray(matrix)) + '\n'
