import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qspline import (
    CubicSpline,
    InputError,
    assemble_interior_rows,
    build_basis_triple,
    combine,
    curvature_energy,
    make_equidistant,
    make_random_uniform,
    solve_tridiagonal,
    spline_from_moments,
    third_derivative_jump,
)
from qspline.spline import clamped_first, clamped_second, thomas


def simpson_energy(s, per_interval=64):
    """Composite Simpson of s''**2; exact for the quadratic integrand up to roundoff."""
    total = 0.0
    for x0, x1 in zip(s.knots[:-1], s.knots[1:]):
        t = np.linspace(x0, x1, 2 * per_interval + 1)
        g = s(t, 2) ** 2
        h = (x1 - x0) / (2 * per_interval)
        total += h / 3 * (g[0] + g[-1] + 4 * g[1:-1:2].sum() + 2 * g[2:-1:2].sum())
    return total


def test_assemble_zero_data():
    m = make_random_uniform(0, 1, 8, seed=1)
    sys_ = assemble_interior_rows(m, np.zeros(9))
    assert np.all(sys_.rhs[1:-1] == 0)
    assert not sys_.has_boundary_rows


def test_assemble_quadratic_rhs():
    m = make_random_uniform(-1, 2, 10, seed=5)
    sys_ = assemble_interior_rows(m, m.knots**2)
    np.testing.assert_allclose(sys_.rhs[1:-1], 6.0, rtol=1e-12)
    np.testing.assert_allclose(sys_.mu + sys_.lam, 1.0, rtol=1e-15)
    assert np.all(sys_.mu > 0) and np.all(sys_.lam > 0)


def test_assemble_equidistant_weights():
    sys_ = assemble_interior_rows(make_equidistant(0, 3, 7), np.ones(8))
    # knots a + i*h are not exactly equispaced in floating point
    np.testing.assert_allclose(sys_.mu, 0.5, rtol=1e-14)
    np.testing.assert_allclose(sys_.lam, 0.5, rtol=1e-14)


def test_assemble_needs_three_knots():
    with pytest.raises(InputError):
        assemble_interior_rows([0.0, 1.0], [0.0, 1.0])


def test_solve_zero():
    m = make_equidistant(0, 1, 6)
    M = solve_tridiagonal(assemble_interior_rows(m, np.zeros(7)).with_end_moments(0, 0))
    assert np.all(M == 0)


def test_solve_requires_boundary_rows():
    with pytest.raises(InputError):
        solve_tridiagonal(assemble_interior_rows(make_equidistant(0, 1, 4), np.zeros(5)))


@pytest.mark.parametrize("k0,kn", [(1, 0), (0, -1), (0.7, -0.9), (-1, 1)])
def test_solve_moment_bound(k0, kn):
    m = make_random_uniform(0, 1, 30, seed=11)
    M = solve_tridiagonal(assemble_interior_rows(m, np.zeros(31)).with_end_moments(k0, kn))
    assert np.all(np.abs(M) <= 1.0 + 1e-15)


def test_solve_random_matches_dense_oracle():
    rng = np.random.default_rng(0)
    m = make_random_uniform(0, 2, 6, seed=99)
    y = rng.normal(size=7)
    sys_ = assemble_interior_rows(m, y).with_end_moments(0.3, -1.2)
    M = solve_tridiagonal(sys_)
    A = np.diag(sys_.diag) + np.diag(sys_.sup[:-1], 1) + np.diag(sys_.sub[1:], -1)
    np.testing.assert_allclose(M, np.linalg.solve(A, sys_.rhs), rtol=1e-12, atol=1e-14)
    assert np.max(np.abs(A @ M - sys_.rhs)) <= 1e-12 * np.max(np.abs(sys_.rhs))


def test_thomas_general_dense_oracle():
    rng = np.random.default_rng(3)
    n = 12
    sub, sup = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
    diag = 2.5 + rng.uniform(0, 1, n)
    rhs = rng.normal(size=n)
    A = np.diag(diag) + np.diag(sup[:-1], 1) + np.diag(sub[1:], -1)
    np.testing.assert_allclose(thomas(sub, diag, sup, rhs), np.linalg.solve(A, rhs), rtol=1e-12)


def test_interior_matrix_diagonal_dominance():
    rng = np.random.default_rng(7)
    m = make_random_uniform(0, 1, 40, seed=7)
    A = assemble_interior_rows(m, np.zeros(41)).interior_matrix()
    z = rng.normal(size=(200, A.shape[0]))
    assert np.all(np.abs(z @ A.T).max(axis=1) >= np.abs(z).max(axis=1))


def test_from_moments_line():
    m = make_random_uniform(0, 4, 7, seed=2)
    y = 3 * m.knots - 1
    s = spline_from_moments(m, y, np.zeros(8))
    t = np.linspace(0, 4, 99)
    np.testing.assert_allclose(s(t), 3 * t - 1, rtol=1e-14, atol=1e-14)


def test_from_moments_cubic_exact():
    m = make_random_uniform(-1, 2, 9, seed=4)
    s = spline_from_moments(m, m.knots**3, 6 * m.knots)
    t = np.linspace(-1, 2, 301)
    np.testing.assert_allclose(s(t), t**3, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(s.moments, 6 * m.knots, rtol=1e-12, atol=1e-12)


@settings(max_examples=40)
@given(seed=st.integers(0, 10**6), n=st.integers(2, 60))
def test_interpolation_and_continuity(seed, n):
    m = make_random_uniform(0, 1, n, seed)
    y = np.sin(7 * m.knots) + m.knots
    s = clamped_second(m, y, 0.4, -2.0)
    assert np.all(np.abs(s.values_at_knots() - y) <= 4 * np.spacing(np.abs(y).max()) + 4 * np.spacing(1.0))
    assert np.all(s.continuity_defects() <= 1e-9)
    np.testing.assert_allclose(s.moments[[0, -1]], [0.4, -2.0], rtol=1e-9)


def test_eval_conventions():
    m = make_equidistant(0, 3, 3)
    s = spline_from_moments(m, [0.0, 1.0, 0.0, 2.0], [0.5, -1.0, 2.0, 0.0])
    assert s(1.0) == 1.0
    assert s(0.0, 2) == 0.5
    assert s(1.3, 3) == s(1.9, 3) == 6 * s.d[1]
    # right-continuous third derivative at an interior knot
    assert s(1.0, 3) == 6 * s.d[1]
    assert s(3.0, 3) == 6 * s.d[2]
    with pytest.raises(InputError):
        s(3.1)
    with pytest.raises(InputError):
        s(1.0, 4)
    assert np.isfinite(s(3.1, extrapolate=True))


def test_third_derivative_jump():
    m = make_random_uniform(0, 1, 6, seed=8)
    f = lambda t: t**3 - 2 * t
    s = spline_from_moments(m, f(m.knots), 6 * m.knots)
    for i in range(1, 6):
        assert third_derivative_jump(s, i) == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(InputError):
        third_derivative_jump(s, 0)
    with pytest.raises(InputError):
        third_derivative_jump(s, 6)


def test_curvature_energy_examples():
    m = make_equidistant(0, 1, 5)
    assert curvature_energy(spline_from_moments(m, 2 * m.knots, np.zeros(6))) == 0.0
    s = spline_from_moments([0.0, 1.0], [0.0, 1.0], [2.0, 2.0])
    assert curvature_energy(s) == pytest.approx(4.0, rel=1e-15)


def test_curvature_energy_vs_simpson():
    m = make_random_uniform(0, 2, 12, seed=21)
    s = clamped_second(m, np.cos(3 * m.knots), 1.0, -0.5)
    assert curvature_energy(s) == pytest.approx(simpson_energy(s), rel=1e-12)


def test_basis_triple():
    m = make_random_uniform(0, 3, 14, seed=12)
    y = np.exp(-m.knots) * np.sin(2 * m.knots)
    s_nat, s1, s2 = build_basis_triple(m, y)
    np.testing.assert_allclose(s_nat.values_at_knots(), y, atol=1e-15)
    assert np.abs(s1.values_at_knots()).max() <= 1e-15
    assert np.abs(s2.values_at_knots()).max() <= 1e-15
    np.testing.assert_allclose(s1.moments[[0, -1]], [1, 0], atol=1e-15)
    np.testing.assert_allclose(s2.moments[[0, -1]], [0, 1], atol=1e-15)
    s = combine(s_nat, s1, s2, 0.8, -1.7)
    np.testing.assert_allclose(s.moments[[0, -1]], [0.8, -1.7], rtol=1e-12)
    np.testing.assert_allclose(s.values_at_knots(), y, atol=1e-14)


def test_basis_decay_ratio():
    m = make_equidistant(0, 50, 50)
    _, s1, _ = build_basis_triple(m, np.zeros(51))
    mids = (m.knots[:-1] + m.knots[1:]) / 2
    v = np.abs(s1(mids))
    assert np.all(np.diff(v[:40]) < 0)
    np.testing.assert_allclose(v[6:26] / v[5:25], 2 - np.sqrt(3), rtol=1e-6)


def test_combine_properties():
    m = make_random_uniform(0, 1, 9, seed=31)
    y = m.knots**2 - m.knots
    s_nat, s1, s2 = build_basis_triple(m, y)
    assert np.array_equal(combine(s_nat, s1, s2, 0, 0).coeffs, s_nat.coeffs)
    t = np.linspace(0, 1, 57)
    lhs = combine(s_nat, s1, s2, 0.3, 2.0)(t)
    rhs = s_nat(t) + 0.3 * s1(t) + 2.0 * s2(t)
    assert np.all(np.abs(lhs - rhs) <= 4 * np.spacing(np.abs(rhs).max()) * 4)
    direct = clamped_second(m, y, 0.3, 2.0)
    np.testing.assert_allclose(combine(s_nat, s1, s2, 0.3, 2.0).coeffs, direct.coeffs, rtol=1e-10, atol=1e-12)
    with pytest.raises(InputError):
        combine(s_nat, s1, build_basis_triple(make_equidistant(0, 1, 9), y)[2], 1, 1)


def test_moment_bound_transfer():
    B = 2.5
    m = make_random_uniform(0, 3, 25, seed=17)
    s = clamped_second(m, np.zeros(26), B, -B)
    assert np.all(np.abs(s.moments) <= B * (1 + 1e-14))
    for i in range(m.n):
        t = np.linspace(m.knots[i], m.knots[i + 1], 65)
        assert np.abs(s(t)).max() <= m.gaps[i] ** 2 * B / 8 * (1 + 1e-12)


def test_cubic_reproduction_with_true_end_moments():
    rng = np.random.default_rng(5)
    for seed in range(5):
        c = rng.normal(size=4)
        m = make_random_uniform(-2, 2, 15, seed)
        f = np.polynomial.Polynomial(c)
        s = clamped_second(m, f(m.knots), f.deriv(2)(-2.0), f.deriv(2)(2.0))
        t = np.linspace(-2, 2, 400)
        scale = np.abs(f(t)).max()
        assert np.abs(s(t) - f(t)).max() <= 1e-11 * scale


def test_clamped_first_slopes():
    m = make_random_uniform(0, 2, 10, seed=6)
    s = clamped_first(m, np.sin(m.knots), 0.25, -3.0)
    assert s(0.0, 1) == pytest.approx(0.25, rel=1e-12)
    assert s(2.0, 1) == pytest.approx(-3.0, rel=1e-12)
    one = clamped_first([0.0, 2.0], [1.0, 3.0], 0.0, 4.0)
    assert one(0.0, 1) == pytest.approx(0.0, abs=1e-14)
    assert one(2.0, 1) == pytest.approx(4.0)
    assert one(2.0) == pytest.approx(3.0)


def test_spline_csv_export():
    s = clamped_second(make_equidistant(0, 1, 3), [0.0, 1.0, 0.0, 1.0], 0, 0)
    rows = s.to_csv().splitlines()
    assert rows[0] == "x,a,b,c,d"
    assert len(rows) == 4
    vals = np.array([list(map(float, r.split(","))) for r in rows[1:]])
    np.testing.assert_array_equal(vals[:, 1:].T, s.coeffs)


def test_bad_coefficient_shape():
    with pytest.raises(InputError):
        CubicSpline([0.0, 1.0, 2.0], np.zeros((4, 3)))
