import io
import math

import numpy as np
import pytest

from siegel_pw.geometry import HeisenbergPoint, SiegelPoint, boundary_siegel_point
from siegel_pw.pw import (
    SpectralProfile,
    SpectralWindow,
    basis_element,
    fractional_t_derivative,
    gram_matrix,
    lambda_quadrature,
    plancherel_polya_check,
    polynomial_boundary_values,
    polynomial_profile,
    profile_from_tau,
    pw_inner,
    pw_norm,
    read_profile_csv,
    restriction_norm_at_height,
    shift_height,
    synthesize_boundary_grid,
    synthesize_eval,
    synthesize_trace_form,
    tau_from_profile,
    tau_norm,
    window_profile,
    wks_check,
    write_profile_csv,
)
from siegel_pw.sampling import smooth_profile


def const_profile(a, c=1.0, n=1, maxdeg=4, Q=32):
    def fn(lam):
        v = np.zeros(math.comb(n + maxdeg, n), dtype=complex)
        v[0] = c
        return v

    return SpectralProfile.from_function(a, n, n, maxdeg, fn, Q)


def const_closed_form(a, c, w):
    # (1/2pi) int_{-a}^0 c exp(-i lam w) dlam
    return c * (np.exp(1j * a * w) - 1) / (1j * w) / (2 * math.pi)


def test_lambda_quadrature():
    lams, w = lambda_quadrature(2.0, Q=8, panels=3, breaks=(-0.5, 1.0))
    assert lams.size == 8 * 4
    assert np.all((lams > -2) & (lams < 0))
    assert np.sum(w) == pytest.approx(2.0, rel=1e-14)
    assert np.sum(w * lams ** 5) == pytest.approx(-(2.0 ** 6) / 6, rel=1e-13)
    with pytest.raises(ValueError):
        lambda_quadrature(-1.0)
    with pytest.raises(ValueError):
        lambda_quadrature(1.0, Q=0)


def test_profile_validation():
    lams, w = lambda_quadrature(1.0, Q=4)
    with pytest.raises(ValueError):
        SpectralProfile(1.0, 1.0, 1, 2, lams, w, np.zeros((4, 2)))
    with pytest.raises(ValueError):
        SpectralProfile(1.0, 1.0, 1, 2, lams - 1.0, w, np.zeros((4, 3)))
    with pytest.raises(ValueError):
        SpectralProfile(1.0, 2.5, 1, 2, lams, w, np.zeros((4, 3)))
    with pytest.raises(ValueError):
        const_profile(1.0) + const_profile(2.0)


@pytest.mark.parametrize("w", [0.7 + 0.3j, -2.0 + 0.1j, 5.0 + 2.0j])
def test_synthesis_of_constant_profile(w):
    a = 1.5
    P = const_profile(a, 2.0 - 1j)
    zeta = SiegelPoint([0.3 - 0.2j], w)
    assert synthesize_eval(P, zeta) == pytest.approx(const_closed_form(a, 2.0 - 1j, w), rel=1e-12)


def test_boundary_grid_matches_exact_moments():
    a = 1.2
    polys = {(0,): [1.0, 0.5, -0.2j], (1,): [0.3, 0.0], (3,): [1j, 0.0, 0.0, 1.0]}
    P = polynomial_profile(a, 1.0, polys, maxdeg=4, Q=48)
    zs = np.array([0.0, 0.5 + 0.5j, -1.2 + 0.3j])
    ts = np.array([-3.0, 0.0, 0.7, 10.0])
    grid = synthesize_boundary_grid(P, zs, ts)
    for i, z in enumerate(zs):
        exact = polynomial_boundary_values(a, polys, z, ts)
        assert np.allclose(grid[i], exact, rtol=1e-11, atol=1e-13)


def test_height_shift_identities():
    P = smooth_profile(1.0, 1.0, 1, 8, seed=3, Q=32)
    h = 0.6
    assert restriction_norm_at_height(P, h) == pytest.approx(
        restriction_norm_at_height(shift_height(P, h), 0.0), rel=1e-14)
    z, t = 0.4 - 0.7j, 1.3
    zeta_h = SiegelPoint([z], t + 0.25j * abs(z) ** 2 + 1j * h)
    direct = synthesize_eval(P, zeta_h)
    via = synthesize_boundary_grid(shift_height(P, h), [z], [t])[0, 0]
    assert direct == pytest.approx(via, rel=1e-12)
    assert synthesize_eval(P, boundary_siegel_point(HeisenbergPoint([z], t))) == pytest.approx(
        synthesize_boundary_grid(P, [z], [t])[0, 0], rel=1e-12)


def test_plancherel_polya_direction():
    P = smooth_profile(2.0, 1.0, 1, 8, seed=4, Q=32)
    for h in (-1.0, -0.1, 0.0, 0.5, 3.0):
        lhs, rhs, ok = plancherel_polya_check(P, h)
        assert ok
    # heights above the boundary only shrink the norm
    assert restriction_norm_at_height(P, 1.0) < restriction_norm_at_height(P, 0.0)


def test_norm_linearity_and_parallelogram():
    P = smooth_profile(1.0, 1.5, 1, 6, seed=1, Q=16)
    R = smooth_profile(1.0, 1.5, 1, 6, seed=2, Q=16)
    assert pw_norm(2j * P) == pytest.approx(4 * pw_norm(P))
    lhs = pw_norm(P + R) + pw_norm(P - R)
    assert lhs == pytest.approx(2 * pw_norm(P) + 2 * pw_norm(R), rel=1e-13)
    assert pw_inner(P, R) == pytest.approx(np.conj(pw_inner(R, P)))
    assert pw_inner(P, P).real == pytest.approx(pw_norm(P))


def test_fractional_derivative():
    P = smooth_profile(1.0, 0.0, 1, 6, seed=5, Q=16)
    D1 = fractional_t_derivative(fractional_t_derivative(P, 0.25), 0.5)
    D2 = fractional_t_derivative(P, 0.75)
    assert np.allclose(D1.coeffs, D2.coeffs, rtol=1e-14)
    assert pw_norm(D2) == pytest.approx(pw_norm(P.with_smoothness(1.5)), rel=1e-13)
    with pytest.raises(ValueError):
        fractional_t_derivative(P, -1)


def test_tau_round_trip_and_norms():
    P = smooth_profile(1.3, 1.0, 2, 4, seed=6, Q=12)
    taus = tau_from_profile(P)
    back = profile_from_tau(taus, P.a, P.s, P.weights)
    assert np.allclose(back.coeffs, P.coeffs, rtol=1e-13, atol=1e-15)
    assert tau_norm(taus, P.weights, P.s) == pytest.approx(pw_norm(P), rel=1e-13)


def test_trace_form_matches_profile_synthesis():
    P = smooth_profile(1.0, 1.0, 1, 12, seed=7, Q=16)
    taus = tau_from_profile(P)
    for zeta in (SiegelPoint([0.3 + 0.2j], 0.5 + 0.2j), boundary_siegel_point(HeisenbergPoint([-0.4j], -1.0))):
        assert synthesize_trace_form(taus, P.weights, zeta) == pytest.approx(
            synthesize_eval(P, zeta), rel=1e-10, abs=1e-14)


def test_basis_element_values_and_gram():
    a = 2.0
    G = basis_element((0,), 0, a, maxdeg=4, Q=32)
    w = 0.4 + 0.1j
    expected = const_closed_form(a, math.sqrt(2 * math.pi / a), w)
    assert synthesize_eval(G, SiegelPoint([0.9j], w)) == pytest.approx(expected, rel=1e-12)
    fam = [basis_element(al, ell, a, maxdeg=4, Q=32) for al in ((0,), (2,)) for ell in (-1, 0, 2)]
    M = gram_matrix(fam)
    assert np.allclose(M, 2 * math.pi * np.eye(len(fam)), atol=1e-12)
    with pytest.raises(ValueError):
        basis_element((5,), 0, a, maxdeg=4)


def test_exponential_type_bound():
    a = 1.0
    P = smooth_profile(a, 1.0, 1, 6, seed=8, Q=32)
    c0 = np.abs(P.coeffs[:, 0])
    cap = float(np.sum(P.weights * c0)) / (2 * math.pi)
    for y in (-0.5, -2.0, -6.0):
        v = synthesize_eval(P, SiegelPoint([0.0], 1j * y))
        assert abs(v) <= cap * math.exp(a * abs(y)) * (1 + 1e-12)


def test_interior_bounded_by_boundary():
    P = smooth_profile(1.0, 1.0, 1, 6, seed=9, Q=32)
    ts = np.linspace(-60, 60, 2401)
    boundary = np.abs(synthesize_boundary_grid(P, [0.0], ts)).max()
    inside = np.abs(synthesize_boundary_grid(shift_height(P, 0.8), [0.0], ts)).max()
    assert inside <= boundary


def test_profile_csv_round_trip():
    P = smooth_profile(1.0, 0.5, 2, 2, seed=10, Q=4)
    buf = io.StringIO()
    write_profile_csv(P, buf)
    header = buf.getvalue().splitlines()[0]
    assert header == "lambda,weight,alpha1,alpha2,re,im"
    back = read_profile_csv(io.StringIO(buf.getvalue()), 1.0, 0.5)
    assert back.maxdeg == 2 and back.n == 2
    assert np.array_equal(back.coeffs, P.coeffs)
    assert np.array_equal(back.lambdas, P.lambdas)


def test_window_closed_form():
    win = SpectralWindow.box(-1.0, -0.3, 2.0) + SpectralWindow(((1j, 0.7, -0.5, 0.0),))
    x, wq = np.polynomial.legendre.leggauss(80)
    for pt in (0.0, 1.3, -4.0 + 0.5j):
        total = 0j
        for lo, hi in zip(win.breaks[:-1], win.breaks[1:]):
            lam = lo + 0.5 * (hi - lo) * (x + 1)
            total += 0.5 * (hi - lo) * np.sum(wq * win.spectrum(lam) * np.exp(-1j * lam * pt))
        assert win(pt) == pytest.approx(total / (2 * math.pi), rel=1e-12)


@pytest.mark.parametrize("win", [
    SpectralWindow.box(-1.0, 0.0),
    SpectralWindow.box(-0.8, -0.2, 3.0),
    SpectralWindow.fourier_mode(2, 1.0),
    SpectralWindow.box(-1.0, -0.5) + SpectralWindow(((0.5j, 1.5, -0.7, 0.0),)),
])
def test_wks_sampling_identity(win):
    head, norm, ok, tail = wks_check(win, 1.0, K=4000)
    assert ok
    assert tail < 1e-2 * norm


def test_wks_edge_cases():
    head, norm, ok, _ = wks_check(SpectralWindow.box(-1.0, 0.0, 0.0), 1.0, K=10)
    assert head == 0.0 and norm == 0.0 and ok
    with pytest.raises(ValueError):
        wks_check(SpectralWindow.box(-2.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        SpectralWindow.box(0.0, -1.0)


def test_window_profile_synthesis():
    win = SpectralWindow.box(-1.0, -0.4) + SpectralWindow(((0.5, 0.3, -0.4, 0.0),))
    P = window_profile(win, 1.0, maxdeg=3, Q=24)
    zeta = SiegelPoint([1.1 - 0.2j], 0.8 + 0.3j)
    assert synthesize_eval(P, zeta) == pytest.approx(complex(win(zeta.zlast)), rel=1e-12)
