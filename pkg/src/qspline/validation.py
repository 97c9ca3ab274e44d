"""Input validation helpers shared by the modules and the estimator."""

import numpy as np

from .exceptions import InputError


def as_float_array(values, name="values", ndim=1):
    arr = np.asarray(values, dtype=float)
    if ndim == 1 and arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != ndim:
        raise InputError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite entries")
    return arr


def check_strictly_increasing(x, name="knots", min_size=2):
    """Return ``x`` as a float array after checking ``x[i] < x[i+1]``."""
    x = as_float_array(x, name)
    if x.size < min_size:
        raise InputError(f"{name} needs at least {min_size} entries, got {x.size}")
    if np.any(np.diff(x) <= 0):
        raise InputError(f"{name} must be strictly increasing")
    return x


def check_distinct(x, name="abscissas"):
    x = as_float_array(x, name)
    if np.unique(x).size != x.size:
        raise InputError(f"{name} must be distinct")
    return x


def check_xy(x, y, min_size=2):
    """Validate an interpolation data set; knots must already be ascending."""
    x = check_strictly_increasing(x, "knots", min_size=min_size)
    y = as_float_array(y, "ordinates")
    if y.shape != x.shape:
        raise InputError(f"got {x.size} knots but {y.size} ordinates")
    return x, y


def check_interval(a, b):
    a = float(a)
    b = float(b)
    if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
        raise InputError(f"need a < b, got [{a}, {b}]")
    return a, b


def check_count(n, name="n", minimum=1):
    if int(n) != n or n < minimum:
        raise InputError(f"{name} must be an integer >= {minimum}, got {n!r}")
    return int(n)
