"""Square lattices, the Weierstrass sigma function and Fock interpolation.

For ``L_b = sqrt(2 pi / b) (Z + i Z)`` the sigma function is

    sigma(z) = z prod_{gamma != 0} (1 - z/gamma) exp(z/gamma + z^2 / (2 gamma^2)).

The square lattice is invariant under multiplication by ``i``, so grouping
each orbit ``{q, iq, -q, -iq}`` turns the product into

    sigma(z) = z prod_{q} (1 - z^4 / q^4)

over one representative ``q`` per orbit (``Re q > 0``, ``Im q >= 0``); the
exponential convergence factors cancel exactly within an orbit. The orbits
outside the truncation radius ``R`` contribute ``exp(-z^4 T / 4)`` to leading
order, where ``T = G_4 - sum_{0 < |gamma| <= R} gamma^-4`` and
``G_4 = Gamma(1/4)^8 / (960 pi^2) / spacing^4`` is the lattice Eisenstein
sum. The next term uses ``G_8 = 3 G_4^2 / 7`` (the square lattice has
``g_3 = 0``) in the same way. At ``R = 30`` spacings the corrected product
has relative error about 1e-14 near the origin, 1e-10 at ``|z| = 4``
spacings and 1e-5 at ``|z| = 11`` spacings (measured against a theta
function oracle); the residual comes from the ragged edge of the disk.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive

# sum over nonzero Gaussian integers of gamma^-4
_G4_UNIT = math.gamma(0.25) ** 8 / (960.0 * math.pi ** 2)
DEFAULT_TRUNC_SPACINGS = 30.0


@dataclass(frozen=True)
class SquareLattice:
    """The lattice ``L_b`` with spacing ``sqrt(2 pi / b)``."""

    b: float

    def __post_init__(self):
        object.__setattr__(self, "b", check_positive(self.b, "b"))

    @property
    def spacing(self):
        return math.sqrt(2.0 * math.pi / self.b)

    def default_radius(self):
        return DEFAULT_TRUNC_SPACINGS * self.spacing

    def point(self, l, m):
        return self.spacing * complex(l, m)


def _integer_array(L, R):
    """Integer coordinates ``(l, m)`` with ``|gamma_lm| <= R`` as two arrays, in spiral order."""
    if R < 0:
        raise ValueError("R must be non-negative")
    r = R / L.spacing
    M = int(math.floor(r)) + 1
    l, m = np.meshgrid(np.arange(-M, M + 1), np.arange(-M, M + 1), indexing="ij")
    l, m = l.ravel(), m.ravel()
    keep = l * l + m * m <= r * r * (1 + 1e-12)
    l, m = l[keep], m[keep]
    order = np.lexsort((m, l, np.abs(l) + np.abs(m)))
    return l[order], m[order]


def _integer_points(L, R):
    l, m = _integer_array(L, R)
    return list(zip(l.tolist(), m.tolist()))


def lattice_points(L, R):
    """All ``gamma in L_b`` with ``|gamma| <= R``.

    Ordered by ``|l| + |m|`` and then lexicographically in ``(l, m)``.
    """
    return [L.point(l, m) for l, m in _integer_points(L, R)]


def _orbit_reps(L, R):
    """One representative per rotation orbit of the nonzero lattice points."""
    ints = [(l, m) for l, m in _integer_points(L, R) if l > 0 and m >= 0]
    return np.array([L.point(l, m) for l, m in ints], dtype=complex)


class _Product:
    """The truncated, tail-corrected orbit product for one lattice and radius."""

    def __init__(self, L, R):
        if R is None:
            R = L.default_radius()
        if R < 2 * L.spacing:
            raise ValueError("truncation radius must cover several lattice spacings")
        self.L = L
        self.R = float(R)
        self.q4 = _orbit_reps(L, R) ** 4
        g4 = _G4_UNIT / L.spacing ** 4
        self.tail = g4 - 4.0 * np.sum(1.0 / self.q4).real
        self.tail8 = 3.0 * g4 * g4 / 7.0 - 4.0 * np.sum(1.0 / self.q4 ** 2).real

    def _tail_log(self, z):
        z4 = z ** 4
        return -0.25 * z4 * self.tail - 0.125 * z4 * z4 * self.tail8

    def nearest(self, z):
        """Integer coordinates of the lattice point nearest to each ``z``."""
        u = np.asarray(z, dtype=complex) / self.L.spacing
        return np.rint(u.real).astype(int), np.rint(u.imag).astype(int)

    def on_lattice(self, z):
        """Mask of points that coincide with a lattice point inside ``R / 2``."""
        z = np.asarray(z, dtype=complex)
        l, m = self.nearest(z)
        g = self.L.spacing * (l + 1j * m)
        return (np.abs(z - g) <= 1e-12 * self.L.spacing) & (np.abs(g) <= 0.5 * self.R)

    def log_sigma(self, z):
        z = np.asarray(z, dtype=complex)
        w = z[..., None] ** 4 / self.q4
        with np.errstate(divide="ignore"):
            out = np.log(z) + np.sum(np.log1p(-w), axis=-1)
        return out + self._tail_log(z)

    def log_abs_derivative_at(self, l, m):
        """``log |sigma'(gamma_lm)|``, removing the vanishing factor analytically.

        For ``gamma != 0`` the derivative is ``-4 prod_{q not ~ gamma}(1 - gamma^4/q^4)``
        times the tail factor.
        """
        g = self.L.spacing * (l + 1j * m)
        if l == 0 and m == 0:
            return 0.0, 1.0 + 0j
        w = g ** 4 / self.q4
        j0 = int(np.argmin(np.abs(1.0 - w)))
        terms = np.log1p(-np.delete(w, j0))
        logv = np.log(-4.0 + 0j) + np.sum(terms) + self._tail_log(g)
        return logv.real, np.exp(1j * logv.imag)


def log_sigma(L, z, R_trunc=None):
    """``log sigma(z)`` (complex, any branch) for scalar or array ``z``."""
    return _Product(L, R_trunc).log_sigma(z)


def sigma_eval(L, z, R_trunc=None):
    """Evaluate the truncated sigma function; exactly 0 on lattice points within ``R/2``."""
    P = _Product(L, R_trunc)
    z = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore"):
        out = np.exp(P.log_sigma(z))
    out = np.where(P.on_lattice(z), 0.0, out)
    return complex(out) if out.ndim == 0 else out


def sigma_derivative(L, z, R_trunc=None):
    """``sigma'(z)`` by differentiating the truncated product analytically."""
    P = _Product(L, R_trunc)
    z = complex(z)
    if P.on_lattice(z):
        l, m = P.nearest(z)
        logabs, phase = P.log_abs_derivative_at(int(l), int(m))
        return complex(math.exp(logabs) * phase)
    w = z ** 4 / P.q4
    dlog = (
        1.0 / z
        + np.sum(-4.0 * z ** 3 / P.q4 / (1.0 - w))
        - z ** 3 * P.tail
        - z ** 7 * P.tail8
    )
    return complex(np.exp(P.log_sigma(z)) * dlog)


def modulated_modulus(L, z, R_trunc=None):
    """``|sigma(z)| exp(-(b/4)|z|^2)``, doubly periodic in theory."""
    P = _Product(L, R_trunc)
    z = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore", under="ignore"):
        out = np.exp(P.log_sigma(z).real - 0.25 * L.b * np.abs(z) ** 2)
    out = np.where(P.on_lattice(z), 0.0, out)
    return float(out) if out.ndim == 0 else out


def modulated_derivative(L, R_trunc=None, radius=None):
    """Lattice points within ``radius`` and ``|sigma'(gamma)| exp(-(b/4)|gamma|^2)`` there."""
    P = _Product(L, R_trunc)
    radius = 0.5 * P.R if radius is None else min(radius, 0.5 * P.R)
    pts = _integer_points(L, radius)
    vals = np.empty(len(pts))
    for i, (l, m) in enumerate(pts):
        g = L.point(l, m)
        logabs, _ = P.log_abs_derivative_at(l, m)
        vals[i] = math.exp(logabs - 0.25 * L.b * abs(g) ** 2)
    return np.array([L.point(l, m) for l, m in pts]), vals


def sigma_derivative_lower_bound_check(L, R_trunc=None, radius=None):
    """Minimum of ``|sigma'(gamma)| exp(-(b/4)|gamma|^2)`` over ``|gamma| <= radius``.

    ``radius`` defaults to ``R_trunc / 2``, the region where the truncated
    product is trusted.
    """
    _, vals = modulated_derivative(L, R_trunc, radius)
    return float(vals.min())


def interpolate_from_lattice(L, samples, z, R_trunc=None):
    """Evaluate ``sum_gamma f(gamma) sigma(z) / (sigma'(gamma) (z - gamma))``.

    ``samples`` maps lattice points to values. Terms are added in order of
    increasing ``|z - gamma|`` with compensated summation. At a sample node
    the sample itself is returned.
    """
    if not samples:
        raise ValueError("need at least one sample")
    P = _Product(L, R_trunc)
    z = complex(z)
    keys = list(samples)
    g = np.array(keys, dtype=complex)
    l, m = P.nearest(g)
    snapped = L.spacing * (l + 1j * m)
    if np.any(np.abs(g - snapped) > 1e-9 * L.spacing):
        raise ValueError("sample keys must be points of the lattice")
    if np.any(np.abs(snapped) > 0.5 * P.R):
        raise ValueError("samples must lie within half the truncation radius")
    dist = np.abs(z - snapped)
    hit = np.flatnonzero(dist <= 1e-12 * L.spacing)
    if hit.size:
        return complex(samples[keys[int(hit[0])]])

    log_sig_z = P.log_sigma(z)
    terms = []
    for i in np.argsort(dist, kind="stable"):
        logabs, phase = P.log_abs_derivative_at(int(l[i]), int(m[i]))
        coef = complex(samples[keys[i]]) * phase.conjugate() / (z - snapped[i])
        terms.append(coef * np.exp(log_sig_z - logabs))
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
