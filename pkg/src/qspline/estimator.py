"""scikit-learn compatible wrapper around :func:`qspline.build_spline`."""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .end_conditions import build_spline, parse_end_condition
from .exceptions import InputError
from .validation import as_float_array


def _as_column(X, name="X"):
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise InputError(f"{name} must have exactly one feature, got {X.shape[1]}")
        X = X[:, 0]
    return as_float_array(X, name)


class CubicSplineInterpolator(RegressorMixin, BaseEstimator):
    """Interpolating cubic spline as a one-feature regressor.

    Parameters
    ----------
    end_condition : str, default="rnak"
        One of ``natural``, ``clamped-first``, ``clamped-second``, ``nak``,
        ``q``, ``rnak`` or ``rnak-unsafe``.
    end_values : tuple of float, optional
        End derivatives for the clamped variants.
    derivative : int, default=0
        Derivative order returned by :meth:`predict`.
    extrapolate : bool, default=False
        Evaluate the end cubics outside the data range instead of raising.

    Attributes
    ----------
    spline_ : CubicSpline
    knots_ : ndarray
    n_features_in_ : int
    """

    def __init__(self, end_condition="rnak", end_values=None, derivative=0, extrapolate=False):
        self.end_condition = end_condition
        self.end_values = end_values
        self.derivative = derivative
        self.extrapolate = extrapolate

    def fit(self, X, y):
        x = _as_column(X)
        y = as_float_array(y, "y")
        if y.shape != x.shape:
            raise InputError(f"X has {x.size} samples but y has {y.size}")
        order = np.argsort(x, kind="stable")
        x, y = x[order], y[order]
        if np.any(np.diff(x) == 0):
            raise InputError("duplicate abscissas cannot be interpolated")
        ec = parse_end_condition(self.end_condition, self.end_values)
        self.spline_ = build_spline(x, y, ec)
        self.knots_ = self.spline_.knots
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "spline_")
        x = _as_column(X)
        return np.atleast_1d(self.spline_(x, self.derivative, extrapolate=self.extrapolate))
