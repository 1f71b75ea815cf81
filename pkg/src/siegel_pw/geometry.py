"""Heisenberg group, Siegel coordinates and the anisotropic norms.

Points of the Heisenberg group are written ``[z, t]`` with ``z`` in C^n and
``t`` real; the group law is

    [w, s][z, t] = [w + z, s + t - Im(w . conj(z)) / 2].

A point ``zeta = (zeta', zeta_{n+1})`` of C^{n+1} has Heisenberg coordinates
``(z, t, h) = (zeta', Re zeta_{n+1}, Im zeta_{n+1} - |zeta'|^2 / 4)``; the
boundary of the Siegel domain is ``h = 0``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_complex_vector, check_finite, check_same_dim


@dataclass(frozen=True, eq=False)
class HeisenbergPoint:
    z: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", as_complex_vector(self.z))
        object.__setattr__(self, "t", check_finite(self.t, "t"))

    @property
    def n(self):
        return self.z.shape[0]

    def __repr__(self):
        return f"HeisenbergPoint(z={self.z.tolist()}, t={self.t!r})"


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A point ``(zprime, zlast)`` of C^n x C."""

    zprime: np.ndarray
    zlast: complex

    def __post_init__(self):
        object.__setattr__(self, "zprime", as_complex_vector(self.zprime, "zprime"))
        zlast = complex(self.zlast)
        if not np.isfinite(zlast):
            raise ValueError("zlast must be finite")
        object.__setattr__(self, "zlast", zlast)

    @property
    def n(self):
        return self.zprime.shape[0]

    @property
    def height(self):
        return self.zlast.imag - 0.25 * float(np.vdot(self.zprime, self.zprime).real)

    def __repr__(self):
        return f"SiegelPoint(zprime={self.zprime.tolist()}, zlast={self.zlast!r})"


@dataclass(frozen=True, eq=False)
class HeisenbergCoords:
    z: np.ndarray
    t: float
    h: float

    def __post_init__(self):
        object.__setattr__(self, "z", as_complex_vector(self.z))
        object.__setattr__(self, "t", check_finite(self.t, "t"))
        object.__setattr__(self, "h", check_finite(self.h, "h"))

    @property
    def n(self):
        return self.z.shape[0]

    def boundary_point(self):
        """The Heisenberg point ``[z, t]`` obtained by dropping the height."""
        return HeisenbergPoint(self.z, self.t)


def identity(n):
    return HeisenbergPoint(np.zeros(n, dtype=complex), 0.0)


def group_product(p, q):
    """Return the product ``p q`` in the Heisenberg group."""
    check_same_dim(p.n, q.n)
    cross = np.vdot(q.z, p.z)  # sum_j p_j conj(q_j)
    return HeisenbergPoint(p.z + q.z, p.t + q.t - 0.5 * cross.imag)


def group_inverse(p):
    return HeisenbergPoint(-p.z, -p.t)


def dilate(p, r):
    """Anisotropic dilation ``[z, t] -> [r z, r^2 t]``."""
    return HeisenbergPoint(r * p.z, r * r * p.t)


def psi(zeta):
    """Heisenberg coordinates ``(z, t, h)`` of a point of C^{n+1}."""
    return HeisenbergCoords(zeta.zprime, zeta.zlast.real, zeta.height)


def psi_inverse(c):
    sq = float(np.vdot(c.z, c.z).real)
    return SiegelPoint(c.z, complex(c.t, 0.25 * sq + c.h))


def boundary_siegel_point(p):
    """The point of the Siegel boundary identified with ``p``."""
    return psi_inverse(HeisenbergCoords(p.z, p.t, 0.0))


def homogeneous_norm(p):
    sq = float(np.vdot(p.z, p.z).real)
    return (sq * sq / 16.0 + p.t * p.t) ** 0.25


def u_adapted_norm(zeta):
    """``|[z, t]|^2 + |h|`` for ``(z, t, h)`` the coordinates of ``zeta``."""
    c = psi(zeta)
    return homogeneous_norm(c.boundary_point()) ** 2 + abs(c.h)
