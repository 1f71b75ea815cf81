import math

import mpmath as mp
import numpy as np
import pytest

from siegel_pw.sigma import (
    SquareLattice,
    interpolate_from_lattice,
    lattice_points,
    log_sigma,
    modulated_modulus,
    sigma_derivative,
    sigma_derivative_lower_bound_check,
    sigma_eval,
)

L = SquareLattice(1.5)
S = L.spacing


def theta_sigma(z, spacing):
    """Square-lattice sigma through Jacobi theta_1 (half-period spacing/2)."""
    q = mp.exp(-mp.pi)
    v = mp.pi * z / spacing
    pref = spacing / mp.pi * mp.exp(mp.pi * z ** 2 / (2 * spacing ** 2))
    return complex(pref * mp.jtheta(1, v, q) / mp.jtheta(1, 0, q, 1))


@pytest.mark.parametrize("u,tol", [(0.2 + 0.1j, 1e-13), (1.3 + 0.4j, 1e-13), (-2.1 + 1.7j, 1e-11),
                                   (3.1 - 2.2j, 1e-9)])
def test_against_theta_oracle(u, tol):
    z = S * u
    assert abs(sigma_eval(L, z) / theta_sigma(z, S) - 1) < tol


def test_lattice_point_count_and_order():
    L1 = SquareLattice(2 * math.pi)
    assert L1.spacing == pytest.approx(1.0)
    pts = lattice_points(L1, 10.0)
    assert len(pts) == 317
    assert pts[:5] == [0, -1, -1j, 1j, 1]
    assert len(lattice_points(L1, 0.5)) == 1
    with pytest.raises(ValueError):
        lattice_points(L1, -1.0)


def test_zero_at_lattice_points():
    for l, m in [(0, 0), (1, 0), (2, -3), (-5, 4)]:
        assert sigma_eval(L, L.point(l, m)) == 0


def test_symmetries():
    for z in (0.4 + 0.9j, 1.7 - 0.3j):
        assert sigma_eval(L, -z) == pytest.approx(-sigma_eval(L, z), rel=1e-13)
        assert sigma_eval(L, 1j * z) == pytest.approx(1j * sigma_eval(L, z), rel=1e-13)
        assert sigma_eval(L, z.conjugate()) == pytest.approx(sigma_eval(L, z).conjugate(), rel=1e-13)


def test_vectorized_matches_scalar():
    zs = np.array([0.1 + 0.2j, 1.0 - 2.0j, 0.0])
    out = sigma_eval(L, zs)
    assert out.shape == (3,)
    assert out[2] == 0
    assert out[1] == pytest.approx(sigma_eval(L, zs[1]))
    assert np.exp(log_sigma(L, zs[0])) == pytest.approx(out[0])


@pytest.mark.parametrize("seed", range(3))
def test_modulated_modulus_periodic(seed):
    rng = np.random.default_rng(seed)
    z = S * complex(*rng.uniform(-1, 1, 2))
    v = modulated_modulus(L, z)
    for shift in (S, 1j * S, -2 * S + 3j * S):
        assert modulated_modulus(L, z + shift) == pytest.approx(v, rel=1e-9)


def test_modulus_bounded_below_by_distance():
    xs = np.linspace(-0.5, 0.5, 41) * S
    X, Y = np.meshgrid(xs, xs)
    Z = (X + 1j * Y).ravel()
    d = np.abs(Z)
    keep = d > 0
    # measured minimum 0.539 for b = 1.5
    assert np.min(modulated_modulus(L, Z[keep]) / d[keep]) >= 0.5


def test_derivative():
    assert sigma_derivative(L, 0.0) == pytest.approx(1.0, abs=1e-12)
    z, h = 0.7 + 0.4j, 1e-5
    fd = (sigma_eval(L, z + h) - sigma_eval(L, z - h)) / (2 * h)
    assert sigma_derivative(L, z) == pytest.approx(fd, rel=1e-8)
    g = L.point(2, 1)
    fd = (sigma_eval(L, g + h) - sigma_eval(L, g - h)) / (2 * h)
    assert sigma_derivative(L, g) == pytest.approx(fd, rel=1e-8)


def test_derivative_lower_bound():
    near = sigma_derivative_lower_bound_check(L, radius=3 * S)
    mid = sigma_derivative_lower_bound_check(L, radius=5 * S)
    assert abs(mid - near) < 1e-4
    assert mid <= near
    assert sigma_derivative_lower_bound_check(L) > 0.1


def test_interpolation_reproduces_polynomials():
    L1 = SquareLattice(2 * math.pi)
    pts = lattice_points(L1, 8.0)
    coef = np.array([0.5 - 1j, 2.0, 0.0, -1.0 + 0.25j])
    samples = {g: complex(np.polyval(coef, g)) for g in pts}
    for z in (0.3 + 0.2j, -0.6 + 0.1j, 0.05j):
        assert interpolate_from_lattice(L1, samples, z) == pytest.approx(np.polyval(coef, z), abs=1e-6)
    g = pts[7]
    assert interpolate_from_lattice(L1, samples, g) == samples[g]


def test_interpolation_rejects_bad_samples():
    with pytest.raises(ValueError):
        interpolate_from_lattice(L, {}, 0.1)
    with pytest.raises(ValueError):
        interpolate_from_lattice(L, {0.1234: 1.0}, 0.5)
    with pytest.raises(ValueError):
        interpolate_from_lattice(L, {L.point(25, 0): 1.0}, 0.5)
