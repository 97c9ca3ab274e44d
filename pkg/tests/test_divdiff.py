import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qspline import (
    InputError,
    estimate_f2_cubic,
    estimate_f2_quartic,
    make_equidistant,
    newton_eval,
    newton_table,
    omega,
    piecewise_cubic_eval,
    poly_second_derivative_at,
)
from qspline.divdiff import newton_poly


def dd_explicit(xs, ys):
    """Lagrange-form divided difference, independent of the recurrence."""
    xs = np.asarray(xs, float)
    return sum(y / np.prod([xj - xm for xm in xs if xm != xj]) for xj, y in zip(xs, ys))


def test_table_x4_fourth_difference():
    x = np.arange(5.0)
    assert newton_table(x, x**4).top(4) == pytest.approx(1.0, abs=1e-14)


def test_table_constant():
    t = newton_table([0.3, 1.1, 2.0], [5.0, 5.0, 5.0])
    assert all(np.all(c == 0) for c in t.columns[1:])


def test_table_sin_matches_explicit_oracle():
    x = np.array([0, 0.5, 1, 1.5, 2])
    t = newton_table(x, np.sin(x))
    for k in range(5):
        assert t.top(k) == pytest.approx(dd_explicit(x[:k + 1], np.sin(x[:k + 1])), rel=1e-12)
    assert t.check_recurrence()
    assert np.array_equal(t.columns[0], np.sin(x))


def test_duplicate_abscissas_rejected():
    with pytest.raises(InputError):
        newton_table([0, 1, 1], [0, 1, 2])


@settings(max_examples=60)
@given(st.lists(st.floats(-3, 3), min_size=2, max_size=6, unique=True), st.randoms())
def test_permutation_symmetry(xs, rnd):
    xs = np.array(xs)
    if np.min(np.diff(np.sort(xs))) < 1e-2:
        return
    ys = np.exp(xs)
    perm = list(range(xs.size))
    rnd.shuffle(perm)
    k = xs.size - 1
    a = newton_table(xs, ys).top(k)
    b = newton_table(xs[perm], ys[perm]).top(k)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("deg", [0, 1, 2, 3, 4])
def test_polynomial_exactness(deg):
    rng = np.random.default_rng(deg)
    coeffs = rng.uniform(-1, 1, deg + 1)
    x = np.sort(rng.uniform(0, 1, deg + 2)) + np.arange(deg + 2) * 0.2
    y = np.polynomial.polynomial.polyval(x, coeffs)
    assert abs(newton_table(x, y).top(deg + 1)) <= 1e-10


def test_newton_eval_cubic_exact():
    x = np.array([0.0, 1.0, 2.5, 3.0])
    p = newton_poly(x, x**3)
    for t in [-1.3, 0.2, 1.7, 4.4]:
        assert newton_eval(p, t) == pytest.approx(t**3, rel=1e-13)


def test_newton_eval_at_centers():
    x = np.array([0.1, 0.4, 0.45, 1.3, 2.0])
    y = np.cos(3 * x)
    p = newton_poly(x, y)
    v = newton_eval(p, x)
    assert np.all(np.abs(v - y) <= 8 * np.spacing(np.abs(y).max()))


def test_newton_eval_power_basis_oracle():
    x = np.array([0, 0.5, 1, 1.5, 2])
    y = np.sin(x)
    coeffs = np.linalg.solve(np.vander(x, increasing=True), y)
    assert newton_eval(newton_poly(x, y), 0.25) == pytest.approx(
        np.polynomial.polynomial.polyval(0.25, coeffs), abs=1e-12
    )


def test_second_derivative_examples():
    x = np.arange(4.0)
    assert poly_second_derivative_at(newton_poly(x, x**4), 0.0) == pytest.approx(-22.0, abs=1e-12)
    x5 = np.arange(5.0)
    assert poly_second_derivative_at(newton_poly(x5, x5**4), 0.0) == pytest.approx(0.0, abs=1e-11)
    assert poly_second_derivative_at(newton_poly([0.0, 2.0], [1.0, 5.0]), 0.7) == 0.0


def test_omega_examples():
    x = np.arange(4.0)
    assert omega(x, 1.5) == 0.5625
    assert all(omega(x, xi) == 0 for xi in x)
    eps = 1e-4
    second = (omega(x, eps) - 2 * omega(x, 0.0) + omega(x, -eps)) / eps**2
    assert second == pytest.approx(22.0, abs=1e-6)


def test_estimate_f2_cubic_examples():
    x = np.arange(4.0)
    assert estimate_f2_cubic(x, x**4, "left") == pytest.approx(-22.0, abs=1e-12)
    # error 22 = 11/12 * 24 * h**2 with h = 1: the bound is attained
    assert abs(estimate_f2_cubic(x, x**4) - 0.0) == pytest.approx(11 / 12 * 24, rel=1e-10)
    xr = np.array([0.3, 0.9, 1.0, 2.2])
    assert estimate_f2_cubic(xr, xr**2, "left") == pytest.approx(2.0, abs=1e-12)
    assert estimate_f2_cubic(xr, xr**2, "right") == pytest.approx(2.0, abs=1e-12)
    xs = np.array([0, 0.1, 0.2, 0.3])
    assert abs(estimate_f2_cubic(xs, np.sin(xs)) - 0.0) <= 11 / 12 * 1 * 0.1**2


def test_estimate_arity_checked():
    with pytest.raises(InputError):
        estimate_f2_cubic([0, 1, 2], [0, 1, 4])
    with pytest.raises(InputError):
        estimate_f2_quartic([0, 1, 2, 3], [0, 1, 4, 9])


def test_estimate_f2_quartic_examples():
    x = np.arange(5.0)
    assert estimate_f2_quartic(x, x**4) == pytest.approx(0.0, abs=1e-10)
    # f = x**5: p''(0) = -omega''(0) = 100 for omega = x(x-1)(x-2)(x-3)(x-4),
    # i.e. twice the 50 h^3 the 5h/12 constant assumes
    assert estimate_f2_quartic(x, x**5) == pytest.approx(100.0, rel=1e-12)


# The two tests below encode the claimed constant R = 5h/12 for the quartic
# end estimate.  They fail: omega''(x_0) is 100 h**3, not 50 h**3, so the
# attainable constant is 5h/6 (see the decisions ledger).
def test_quartic_end_estimate_x5_within_5h_over_12():
    x = np.arange(5.0)
    h = 1.0
    assert abs(estimate_f2_quartic(x, x**5) - 0.0) <= 5 * h / 12 * 120 * h**2


def test_quartic_end_estimate_sin_fine_mesh_within_5h_over_12():
    h = 0.05
    x = np.arange(5) * h
    assert abs(estimate_f2_quartic(x, np.sin(x)) - 0.0) <= 5 * h / 12 * 1.0 * h**2


@pytest.mark.parametrize("x0", [0.0, 0.4, np.pi / 2, 2.0, 3.0])
def test_quartic_end_estimate_sin_within_5h_over_6(x0):
    h = 0.05
    x = x0 + np.arange(5) * h
    t = np.linspace(x[0], x[-1], 1001)
    M5 = np.abs(np.cos(t)).max()
    assert abs(estimate_f2_quartic(x, np.sin(x)) + np.sin(x0)) <= 5 * h / 6 * M5 * h**2


@pytest.mark.parametrize("end", ["left", "right"])
def test_quartic_equals_corrected_cubic(end):
    x = np.array([0.2, 0.5, 0.65, 1.1, 1.4])
    y = np.exp(np.sin(2 * x))
    rho = newton_table(x, y).top(4)
    if end == "left":
        xs, ys = x[:4], (y - rho * (x - x[0]) ** 4)[:4]
    else:
        xs, ys = x[1:], (y - rho * (x - x[-1]) ** 4)[1:]
    assert estimate_f2_quartic(x, y, end) == pytest.approx(estimate_f2_cubic(xs, ys, end), rel=1e-10)


def test_piecewise_cubic_exact_on_cubics():
    m = make_equidistant(-1, 2, 9)
    f = lambda t: 2 * t**3 - t + 0.5
    t = np.linspace(-1, 2, 301)
    np.testing.assert_allclose(piecewise_cubic_eval(m, f(m.knots), t), f(t), rtol=1e-13, atol=1e-13)


def test_piecewise_cubic_x4_interior_sharp():
    m = make_equidistant(0, 6, 6)
    y = m.knots**4
    t = 2.5
    assert t**4 - piecewise_cubic_eval(m, y, t) == pytest.approx(9 / 16, rel=1e-12)


def test_piecewise_cubic_x4_boundary():
    m = make_equidistant(0, 6, 6)
    y = m.knots**4
    t = np.linspace(0, 1, 20001)
    err = np.abs(t**4 - piecewise_cubic_eval(m, y, t))
    # max |t(t-1)(t-2)(t-3)| on [0, 1] is 1, attained at (3 - sqrt 5)/2
    assert err.max() == pytest.approx(1.0, rel=1e-6)
    assert piecewise_cubic_eval(m, y, (3 - np.sqrt(5)) / 2) == pytest.approx(((3 - np.sqrt(5)) / 2) ** 4 + 1, rel=1e-12)


def test_piecewise_cubic_knots_and_domain():
    m = make_equidistant(0, 1, 5)
    y = np.cos(m.knots)
    assert np.array_equal(piecewise_cubic_eval(m, y, m.knots), y)
    with pytest.raises(InputError):
        piecewise_cubic_eval(m, y, 1.5)


def test_table_csv_prints():
    t = newton_table([0, 1, 2], [1, 2, 5])
    rows = t.to_csv().splitlines()
    assert rows[0].split(",") == ["0", "1", "1", "1"]
    assert len(rows) == 3
