"""Reproducing kernels of the Paley-Wiener spaces ``PW_a^s``.

With ``Q(omega, zeta) = (omega_{n+1} - conj(zeta_{n+1})) / 2i - omega' . conj(zeta') / 4``
the kernel is

    K(omega, zeta) = (2 pi)^{-n-1} int_{-a}^0 exp(2 lam Q(omega, zeta)) |lam|^{n-s} dlam.

Since ``Q(zeta, zeta)`` is the height of ``zeta``, the diagonal
``K(zeta, zeta) = ||K_zeta||^2`` grows like ``exp(2 a h_-)``. For ``s = n``
the integral is elementary: writing ``theta = -i Q``,

    K = (2 pi)^{-n-1} a exp(-i a theta) sinc(a theta).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from ._validation import check_positive, check_same_dim, check_smoothness
from .fock import basis_values, index_array
from .pw import DEFAULT_Q, SpectralProfile

SINC_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class KernelSpec:
    a: float
    s: float
    n: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", check_positive(self.a, "a"))
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        object.__setattr__(self, "s", check_smoothness(self.s, self.n))


def q_form(omega, zeta):
    """``(omega_{n+1} - conj zeta_{n+1}) / 2i - omega' . conj(zeta') / 4``."""
    check_same_dim(omega.n, zeta.n)
    return complex(
        (omega.zlast - np.conj(zeta.zlast)) / 2j - 0.25 * np.vdot(zeta.zprime, omega.zprime)
    )


def sinc(x):
    """``sin(x)/x`` for complex ``x``, by series near 0."""
    x = complex(x)
    if abs(x) < SINC_SERIES_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return np.sin(x) / x


def _jacobi_rule(spec, Q):
    # lam = -(a/2)(1 - x), |lam|^{n-s} = (a/2)^{n-s} (1 - x)^{n-s}
    x, w = roots_jacobi(Q, spec.n - spec.s, 0.0)
    half = 0.5 * spec.a
    lams = -half * (1.0 - x)
    weights = w * half ** (spec.n - spec.s + 1)
    return lams, weights


def kernel_eval(spec, omega, zeta, Q=DEFAULT_Q):
    """``K(omega, zeta)`` by Gauss-Jacobi quadrature carrying the ``|lam|^{n-s}`` weight."""
    lams, weights = _jacobi_rule(spec, Q)
    qv = q_form(omega, zeta)
    total = np.sum(weights * np.exp(2.0 * lams * qv))
    return complex(total / (2 * math.pi) ** (spec.n + 1))


def kernel_closed_form(spec, omega, zeta):
    """``(2 pi)^{-n-1} a exp(-i a theta) sinc(a theta)``, ``theta = -i Q``; needs ``s = n``."""
    if spec.s != spec.n:
        raise ValueError("the closed form only holds for s = n")
    theta = -1j * q_form(omega, zeta)
    a = spec.a
    return complex(a * np.exp(-1j * a * theta) * sinc(a * theta) / (2 * math.pi) ** (spec.n + 1))


def kernel_norm_sq(spec, zeta, Q=DEFAULT_Q):
    """``||K_zeta||^2 = K(zeta, zeta)``, real and positive."""
    return kernel_eval(spec, zeta, zeta, Q).real


def kernel_profile(spec, zeta, maxdeg=16, Q=DEFAULT_Q, panels=1):
    """Profile of ``K_zeta = K(., zeta)`` on a Gauss-Legendre grid.

    ``phi(omega', lam) = (2pi)^{-n} |lam|^{n-s} exp(i lam conj(zeta_{n+1})) E_lam(omega', zeta')``
    where ``E_lam`` is the Fock kernel of ``F^|lam|``; in the orthonormal
    basis the coefficients are ``(|lam|/2pi)^n |lam|^{-s} exp(i lam conj(zeta_{n+1})) conj(e_alpha(zeta'))``.
    """
    if zeta.n != spec.n:
        raise ValueError("dimension mismatch between kernel spec and point")
    n, s = spec.n, spec.s
    ebar = np.conj(basis_values(1.0, zeta.zprime, maxdeg))
    half_deg = 0.5 * index_array(n, maxdeg).sum(axis=1)

    def fn(lam):
        mu = abs(lam)
        scal = (mu / (2 * math.pi)) ** n * mu ** (-s) * np.exp(1j * lam * np.conj(zeta.zlast))
        return scal * ebar * mu ** half_deg

    return SpectralProfile.from_function(spec.a, s, n, maxdeg, fn, Q, panels)
