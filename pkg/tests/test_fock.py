import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegel_pw.fock import (
    FockElement,
    RankOneOperator,
    bargmann_apply,
    coherent_trace,
    fock_eval,
    fock_inner,
    fock_kernel,
    fock_norm,
    kernel_element,
    kernel_tail,
    monomial_norm,
    multi_indices,
    read_coefficients_csv,
    sobolev_multiplier,
    truncated_coherent_trace,
    write_coefficients_csv,
)
from siegel_pw.geometry import HeisenbergPoint, group_product


def gaussian_integral(fn, lam, L=14.0, h=0.04):
    """(lam/2pi) int |fn|^2 exp(-lam|z|^2/2) dz by a fine trapezoid grid on a square."""
    xs = np.arange(-L, L + h / 2, h)
    X, Y = np.meshgrid(xs, xs)
    Z = X + 1j * Y
    dens = np.abs(fn(Z)) ** 2 * np.exp(-0.5 * lam * np.abs(Z) ** 2)
    return lam / (2 * math.pi) * dens.sum() * h * h


def random_element(rng, lam=1.0, n=1, maxdeg=16, deg=None):
    D = len(multi_indices(n, maxdeg))
    c = rng.normal(size=D) + 1j * rng.normal(size=D)
    if deg is not None:
        c[len(multi_indices(n, deg)):] = 0
    return FockElement(lam, n, maxdeg, c)


def test_multi_index_order():
    assert multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(multi_indices(3, 4)) == math.comb(7, 3)


def test_monomial_norm_values():
    assert monomial_norm((0,), 3.0) == 1.0
    assert monomial_norm((1,), 2.0) == pytest.approx(1.0)
    assert monomial_norm((2,), 1.0) == pytest.approx(math.sqrt(8))
    with pytest.raises(ValueError):
        monomial_norm((1,), 0.0)


@pytest.mark.parametrize("k,lam", [(1, 2.0), (2, 1.0), (3, 0.7)])
def test_monomial_norm_against_integral(k, lam):
    assert gaussian_integral(lambda z: z ** k, lam) == pytest.approx(monomial_norm((k,), lam) ** 2, rel=1e-8)


def test_norm_matches_weighted_integral():
    rng = np.random.default_rng(1)
    f = random_element(rng, lam=1.3, maxdeg=4)
    assert gaussian_integral(lambda z: f(z[..., None]), 1.3) == pytest.approx(fock_norm(f) ** 2, rel=1e-6)


def test_orthonormal_basis_and_homogeneity():
    e1 = FockElement.basis((1,), 1.0)
    e2 = FockElement.basis((2,), 1.0)
    assert fock_inner(e1, e1) == pytest.approx(1.0)
    assert fock_inner(e1, e2) == 0
    f = random_element(np.random.default_rng(2))
    assert fock_norm((2 - 1j) * f) == pytest.approx(abs(2 - 1j) * fock_norm(f))


def test_parameter_mismatch():
    with pytest.raises(ValueError):
        fock_inner(FockElement.zeros(1.0), FockElement.zeros(2.0))
    with pytest.raises(ValueError):
        FockElement(1.0, 1, 4, np.zeros(3))
    with pytest.raises(ValueError):
        FockElement(1.0, 1, 2, [np.nan, 0, 0])


def test_eval_basics():
    f = random_element(np.random.default_rng(3))
    assert fock_eval(f, 0) == pytest.approx(f.coeffs[0])
    assert FockElement.basis((0,), 2.0)(3 + 4j) == pytest.approx(1.0)
    g = FockElement.from_polynomial(1.0, {(2,): 1.0, (0,): -3.0})
    assert g(1.5 + 0.5j) == pytest.approx((1.5 + 0.5j) ** 2 - 3)


def test_eval_two_dims():
    g = FockElement.from_polynomial(0.5, {(1, 1): 2.0, (0, 2): 1j}, n=2, maxdeg=3)
    z = np.array([0.3 - 1j, 2 + 0.5j])
    assert g(z) == pytest.approx(2 * z[0] * z[1] + 1j * z[1] ** 2)
    many = g(np.array([z, 2 * z]))
    assert many[1] == pytest.approx(2 * 4 * z[0] * z[1] + 4j * z[1] ** 2)


@settings(max_examples=30, deadline=None)
@given(st.floats(-6, 6), st.floats(-6, 6), st.floats(0.2, 3))
def test_pointwise_bound(x, y, lam):
    f = random_element(np.random.default_rng(4), lam=lam)
    z = complex(x, y)
    assert abs(f(z)) <= fock_norm(f) * math.exp(lam * abs(z) ** 2 / 4) * (1 + 1e-12)


def test_kernel_properties():
    assert fock_kernel(1.0, [2 + 1j], [0]) == 1
    z, w = [0.3 + 1j], [-1 + 0.2j]
    assert fock_kernel(2.0, z, w) == pytest.approx(np.conj(fock_kernel(2.0, w, z)))


@pytest.mark.parametrize("w", [0.5 + 0.5j, 1.5 - 1j, 2.5j])
def test_reproducing_with_tail(w):
    lam, N = 1.0, 16
    f = random_element(np.random.default_rng(5), lam=lam, maxdeg=40)
    K = kernel_element(lam, [w], maxdeg=N)
    f_trunc = FockElement(lam, 1, N, f.coeffs[: N + 1])
    # within the truncation the kernel reproduces exactly
    assert fock_inner(f_trunc, K) == pytest.approx(f_trunc(w), rel=1e-12)
    # against the full f the error is controlled by the kernel tail
    err = abs(fock_inner(f_trunc, K) - f(w))
    bound = fock_norm(f) * math.sqrt(kernel_tail(lam, [w], N) * math.exp(lam * abs(w) ** 2 / 2))
    assert err <= bound * (1 + 1e-9)


def test_bargmann_center_and_identity():
    f = random_element(np.random.default_rng(6), lam=1.5)
    for lam in (1.5, -1.5):
        g = bargmann_apply(HeisenbergPoint([0], 0.7), lam, f)
        assert np.allclose(g.coeffs, np.exp(1j * lam * 0.7) * f.coeffs)
        assert np.allclose(bargmann_apply(HeisenbergPoint([0], 0.0), lam, f).coeffs, f.coeffs)


def test_bargmann_matches_formula():
    lam = 0.8
    f = random_element(np.random.default_rng(7), lam=lam, maxdeg=60, deg=5)
    p = HeisenbergPoint([0.4 - 0.3j], 1.1)
    g = bargmann_apply(p, lam, f)
    z = p.z[0]
    for w in (0.2 + 0.1j, -0.5j):
        expected = np.exp(1j * lam * p.t - lam / 2 * w * np.conj(z) - lam / 4 * abs(z) ** 2) * f(w + z)
        assert g(w) == pytest.approx(expected, rel=1e-12)


def test_bargmann_unitarity_stabilizes():
    f = random_element(np.random.default_rng(8), lam=1.0, maxdeg=16, deg=4)
    p = HeisenbergPoint([2.0 + 1.5j], -0.3)
    errs = []
    for N in (16, 24, 40):
        fN = FockElement(1.0, 1, N, np.r_[f.coeffs[:5], np.zeros(N - 4)])
        errs.append(abs(fock_norm(bargmann_apply(p, -1.0, fN)) - fock_norm(fN)))
    assert errs[1] < errs[0] and errs[2] < errs[1]
    assert errs[-1] < 1e-6


def test_projective_representation():
    p = HeisenbergPoint([0.3 + 0.2j], 0.4)
    q = HeisenbergPoint([-0.5 + 0.1j], -0.7)
    for lam in (1.0, -2.0):
        errs = []
        for N in (12, 16, 20):
            f = FockElement(abs(lam), 1, N, np.r_[[1, 0.5j, -0.2, 0.1], np.zeros(N - 3)])
            lhs = bargmann_apply(p, lam, bargmann_apply(q, lam, f))
            rhs = bargmann_apply(group_product(p, q), lam, f)
            errs.append(np.linalg.norm(lhs.coeffs - rhs.coeffs))
        assert errs[-1] < 1e-8
        assert errs[-1] <= errs[0]


def test_coherent_trace_examples():
    p = HeisenbergPoint([0.7 - 0.2j], 1.3)
    assert coherent_trace(-1.0, HeisenbergPoint([0], 0), HeisenbergPoint([0], 0)) == 1
    assert coherent_trace(-2.0, p, p) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        coherent_trace(1.0, p, p)


@pytest.mark.parametrize("seed", range(5))
def test_coherent_trace_against_truncated(seed):
    rng = np.random.default_rng(seed)
    p = HeisenbergPoint([complex(*rng.normal(size=2))], rng.normal())
    q = HeisenbergPoint([complex(*rng.normal(size=2))], rng.normal())
    closed = coherent_trace(-1.0, p, q)
    assert abs(truncated_coherent_trace(-1.0, p, q, 20) - closed) <= 1e-8 * abs(closed)
    assert closed == pytest.approx(np.conj(coherent_trace(-1.0, q, p)))
    assert truncated_coherent_trace(-1.0, p, q, 24) == pytest.approx(closed, rel=1e-10)


def test_coherent_trace_two_dims():
    p = HeisenbergPoint([0.3 + 0.2j, 0.1 - 0.4j], 0.4)
    q = HeisenbergPoint([-0.5 + 0.1j, 0.2j], -0.7)
    assert truncated_coherent_trace(-1.5, p, q, 20) == pytest.approx(coherent_trace(-1.5, p, q), rel=1e-10)


def test_sobolev_multiplier():
    f = random_element(np.random.default_rng(9), lam=2.0, n=2, maxdeg=5)
    assert np.array_equal(sobolev_multiplier(2.0, 0.0, f).coeffs, f.coeffs)
    e0 = FockElement.basis((0, 0), 2.0, maxdeg=5)
    assert sobolev_multiplier(-2.0, 3.0, e0).coeffs[0] == pytest.approx(2.0 ** 1.5)
    e = FockElement.basis((2, 1), 2.0, maxdeg=5)
    j = multi_indices(2, 5).index((2, 1))
    assert sobolev_multiplier(2.0, 2.0, e).coeffs[j] == pytest.approx(2.0 * (1 + 3 / 2))
    a = sobolev_multiplier(2.0, 0.5, sobolev_multiplier(2.0, 1.25, f))
    assert np.allclose(a.coeffs, sobolev_multiplier(2.0, 1.75, f).coeffs, rtol=1e-14)
    with pytest.raises(ValueError):
        sobolev_multiplier(1.0, -1.0, f)


def test_rank_one_operator():
    g = random_element(np.random.default_rng(10), lam=1.0, maxdeg=8)
    tau = RankOneOperator(-1.0, g)
    f = random_element(np.random.default_rng(11), lam=1.0, maxdeg=8)
    out = tau.apply(f)
    assert np.count_nonzero(out.coeffs[1:]) == 0
    assert out.coeffs[0] == pytest.approx(fock_inner(f, g))
    assert tau.hs_norm() == pytest.approx(fock_norm(g))
    with pytest.raises(ValueError):
        RankOneOperator(1.0, g)


def test_coefficient_csv_round_trip():
    f = random_element(np.random.default_rng(12), lam=0.7, n=2, maxdeg=3)
    buf = io.StringIO()
    write_coefficients_csv(f, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "alpha1,alpha2,re,im"
    assert lines[2].startswith("1,0,")
    back = read_coefficients_csv(io.StringIO(buf.getvalue()), 0.7)
    assert np.array_equal(back.coeffs, f.coeffs)
