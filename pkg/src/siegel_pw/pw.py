"""Paley-Wiener functions on the Siegel domain through their spectral profiles.

A profile ``phi`` assigns to every ``lam in [-a, 0)`` an element
``phi(., lam)`` of the Fock space ``F^|lam|``. It is stored on a quadrature
grid ``(lam_q, w_q)`` with one coefficient vector per node, and the function
it encodes is

    F(zeta', zeta_{n+1}) = (1 / 2 pi) int phi(zeta', lam) exp(-i lam zeta_{n+1}) dlam
                         ~ (1 / 2 pi) sum_q w_q phi_q(zeta') exp(-i lam_q zeta_{n+1}).

Squared norms::

    ||F||^2_{PW^s}   = (2 pi)^{n-1} int ||phi(., lam)||^2 |lam|^{s-n} dlam
    ||F_h||^2_{L^2}  = (2 pi)^{n-1} int exp(2 lam h) ||phi(., lam)||^2 |lam|^{-n} dlam

where ``F_h(z, t) = F(z, t + i|z|^2/4 + ih)`` is the restriction at height h.
Every function here returns *squared* norms.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive, check_smoothness
from .fock import (
    FockElement,
    RankOneOperator,
    basis_size,
    basis_values,
    index_array,
    monomial_norm,
    multi_indices,
)
from .geometry import HeisenbergPoint, psi

DEFAULT_Q = 64


def lambda_quadrature(a, Q=DEFAULT_Q, panels=1, breaks=()):
    """Composite Gauss-Legendre nodes and weights on ``[-a, 0]``.

    The interval is split into ``panels`` equal pieces, further cut at the
    points in ``breaks`` (useful for profiles with jumps); each piece gets
    ``Q`` nodes. No node ever sits on an endpoint.
    """
    a = check_positive(a, "a")
    if Q < 1 or panels < 1:
        raise ValueError("need Q >= 1 and panels >= 1")
    edges = set(np.linspace(-a, 0.0, panels + 1).tolist())
    for b in breaks:
        if -a < b < 0:
            edges.add(float(b))
    edges = sorted(edges)
    x, w = np.polynomial.legendre.leggauss(Q)
    lams, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        lams.append(lo + half * (x + 1.0))
        weights.append(half * w)
    return np.concatenate(lams), np.concatenate(weights)


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """A discretized profile: ``coeffs[q]`` are the ``e_alpha`` coordinates at ``lambdas[q]``."""

    a: float
    s: float
    n: int
    maxdeg: int
    lambdas: np.ndarray
    weights: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        a = check_positive(self.a, "a")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "s", check_smoothness(self.s, self.n))
        lams = np.array(self.lambdas, dtype=float).reshape(-1)
        w = np.array(self.weights, dtype=float).reshape(-1)
        if lams.shape != w.shape or lams.size == 0:
            raise ValueError("lambdas and weights must be non-empty and of equal length")
        if np.any(lams <= -a * (1 + 1e-14)) or np.any(lams >= 0):
            raise ValueError("every node must lie in (-a, 0)")
        if np.any(w <= 0):
            raise ValueError("quadrature weights must be positive")
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (lams.size, basis_size(self.n, self.maxdeg)):
            raise ValueError(
                f"coeffs must have shape {(lams.size, basis_size(self.n, self.maxdeg))}, got {c.shape}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("profile coefficients must be finite")
        for arr in (lams, w, c):
            arr.setflags(write=False)
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, a, s, n=1, maxdeg=16, Q=DEFAULT_Q, panels=1):
        lams, w = lambda_quadrature(a, Q, panels)
        return cls(a, s, n, maxdeg, lams, w, np.zeros((lams.size, basis_size(n, maxdeg))))

    @classmethod
    def from_function(cls, a, s, n, maxdeg, fn, Q=DEFAULT_Q, panels=1, breaks=()):
        """Sample ``fn(lam) -> coefficient vector`` on a fresh quadrature grid."""
        lams, w = lambda_quadrature(a, Q, panels, breaks)
        D = basis_size(n, maxdeg)
        c = np.array([np.broadcast_to(np.asarray(fn(l), dtype=complex), (D,)) for l in lams])
        return cls(a, s, n, maxdeg, lams, w, c)

    @classmethod
    def from_values(cls, a, s, lambdas, weights, values):
        values = list(values)
        n, maxdeg = values[0].n, values[0].maxdeg
        for lam, v in zip(lambdas, values):
            if v.n != n or v.maxdeg != maxdeg:
                raise ValueError("all node values must share n and maxdeg")
            if not math.isclose(v.lam, abs(lam), rel_tol=1e-12):
                raise ValueError("node value must live in F^|lam|")
        return cls(a, s, n, maxdeg, lambdas, weights, np.array([v.coeffs for v in values]))

    @property
    def values(self):
        return [
            FockElement(abs(l), self.n, self.maxdeg, c) for l, c in zip(self.lambdas, self.coeffs)
        ]

    @property
    def mu(self):
        return np.abs(self.lambdas)

    def with_coeffs(self, coeffs):
        return SpectralProfile(self.a, self.s, self.n, self.maxdeg, self.lambdas, self.weights, coeffs)

    def with_smoothness(self, s):
        return SpectralProfile(self.a, s, self.n, self.maxdeg, self.lambdas, self.weights, self.coeffs)

    def scale_nodes(self, factors):
        """Multiply the value at node q by ``factors[q]``."""
        return self.with_coeffs(np.asarray(factors)[:, None] * self.coeffs)

    def __add__(self, other):
        _check_same_grid(self, other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_same_grid(self, other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, c):
        return self.with_coeffs(complex(c) * self.coeffs)

    __rmul__ = __mul__


def _check_same_grid(P, R):
    if (
        P.n != R.n
        or P.maxdeg != R.maxdeg
        or P.lambdas.shape != R.lambdas.shape
        or not np.array_equal(P.lambdas, R.lambdas)
        or not np.array_equal(P.weights, R.weights)
    ):
        raise ValueError("profiles live on different quadrature grids or truncations")


@dataclass(frozen=True, eq=False)
class PWFunction:
    """A Paley-Wiener function, represented only by its profile."""

    profile: SpectralProfile

    @property
    def a(self):
        return self.profile.a

    @property
    def s(self):
        return self.profile.s

    @property
    def n(self):
        return self.profile.n

    def __call__(self, zeta):
        return synthesize_eval(self.profile, zeta)

    def norm_sq(self):
        return pw_norm(self.profile)


def node_values(P, zprime):
    """``phi_q(zprime_m)`` as an array of shape ``(m, Q)``."""
    zprime = np.asarray(zprime, dtype=complex).reshape(-1, P.n)
    B1 = basis_values(1.0, zprime, P.maxdeg)  # e_alpha at |lam| = 1
    half_deg = 0.5 * index_array(P.n, P.maxdeg).sum(axis=1)
    scaled = P.coeffs * P.mu[:, None] ** half_deg[None, :]
    return B1 @ scaled.T


def synthesize_many(P, zprime, zlast):
    """Vectorized synthesis at points ``(zprime[m], zlast[m])``."""
    zlast = np.asarray(zlast, dtype=complex).reshape(-1)
    vals = node_values(P, zprime)
    phase = np.exp(-1j * zlast[:, None] * P.lambdas[None, :])
    return (vals * phase) @ P.weights / (2.0 * math.pi)


def synthesize_eval(P, zeta):
    """``F(zeta)`` for a :class:`SiegelPoint` ``zeta``."""
    if zeta.n != P.n:
        raise ValueError("dimension mismatch between profile and point")
    return complex(synthesize_many(P, zeta.zprime[None, :], [zeta.zlast])[0])


def synthesize_boundary_grid(P, zprime, tvals):
    """Boundary values ``F(zprime_m, t_k + i|zprime_m|^2/4)`` as an ``(m, K)`` array.

    Factorizes the sum over nodes into a matrix product, which is what makes
    lattice frame sums affordable.
    """
    zprime = np.asarray(zprime, dtype=complex).reshape(-1, P.n)
    sq = np.sum(np.abs(zprime) ** 2, axis=1)
    A = node_values(P, zprime) * np.exp(0.25 * sq[:, None] * P.lambdas[None, :])
    A = A * P.weights[None, :] / (2.0 * math.pi)
    E = np.exp(-1j * np.outer(P.lambdas, np.asarray(tvals, dtype=float)))
    return A @ E


def shift_height(P, h):
    """Profile of ``F(. + ih e_{n+1})``: node values times ``exp(lam_q h)``."""
    return P.scale_nodes(np.exp(P.lambdas * float(h)))


def pw_inner(P, R):
    """``<F_P, F_R>`` in ``PW_a^s`` (s taken from ``P``)."""
    _check_same_grid(P, R)
    per_node = np.sum(P.coeffs * np.conj(R.coeffs), axis=1)
    return complex(
        (2 * math.pi) ** (P.n - 1) * np.sum(P.weights * per_node * P.mu ** (P.s - P.n))
    )


def pw_norm(P):
    """Squared norm ``(2 pi)^{n-1} int ||phi||^2 |lam|^{s-n} dlam``."""
    per_node = np.sum(np.abs(P.coeffs) ** 2, axis=1)
    return float((2 * math.pi) ** (P.n - 1) * np.sum(P.weights * per_node * P.mu ** (P.s - P.n)))


def restriction_norm_at_height(P, h):
    """Squared ``L^2`` norm of the restriction to height ``h``."""
    per_node = np.sum(np.abs(P.coeffs) ** 2, axis=1)
    dens = np.exp(2.0 * P.lambdas * float(h)) * P.mu ** (-P.n)
    return float((2 * math.pi) ** (P.n - 1) * np.sum(P.weights * per_node * dens))


def plancherel_polya_check(P, h, tol=1e-10):
    """Compare ``||F_h||^2`` with ``exp(2 a h_-) ||F_0||^2``; returns ``(lhs, rhs, pass)``."""
    h_minus = -min(0.0, float(h))
    lhs = restriction_norm_at_height(P, h)
    rhs = math.exp(2.0 * P.a * h_minus) * restriction_norm_at_height(P, 0.0)
    return lhs, rhs, bool(lhs <= rhs * (1.0 + tol))


def fractional_t_derivative(P, r):
    """Multiply node values by ``|lam_q|^r`` (the modulus of the t-derivative of order r)."""
    r = float(r)
    if r < 0:
        raise ValueError("order r must be non-negative")
    return P.scale_nodes(P.mu ** r)


def lift(P, power):
    """Multiply node values by ``|lam_q|^power``; ``power = -n/2`` maps ``PW_a`` data to ``PW_a^n``."""
    return P.scale_nodes(P.mu ** float(power))


def tau_from_profile(P):
    """Rank-one fields ``tau(lam_q) = <., g_q> e_0`` with ``phi_q = (|lam_q|/2pi)^n g_q^#``.

    ``g^#`` denotes the element with conjugated coefficients.
    """
    out = []
    for lam, c in zip(P.lambdas, P.coeffs):
        g = np.conj(c) * (2 * math.pi / abs(lam)) ** P.n
        out.append(RankOneOperator(lam, FockElement(abs(lam), P.n, P.maxdeg, g)))
    return out


def profile_from_tau(taus, a, s, weights):
    """Inverse of :func:`tau_from_profile` on the grid given by the operators' lambdas."""
    lams = np.array([t.lam for t in taus], dtype=float)
    if np.any(lams < -a * (1 + 1e-14)) or np.any(lams >= 0):
        raise ValueError("operator field must be supported in [-a, 0)")
    n, maxdeg = taus[0].vec.n, taus[0].vec.maxdeg
    coeffs = np.array(
        [np.conj(t.vec.coeffs) * (abs(t.lam) / (2 * math.pi)) ** n for t in taus]
    )
    return SpectralProfile(a, s, n, maxdeg, lams, weights, coeffs)


def tau_norm(taus, weights, s):
    """Squared ``L^2_s`` norm ``(2pi)^{-n-1} int ||tau(lam)||_HS^2 |lam|^{n+s} dlam``."""
    n = taus[0].vec.n
    hs = np.array([t.hs_norm() ** 2 for t in taus])
    mu = np.array([abs(t.lam) for t in taus])
    return float((2 * math.pi) ** (-n - 1) * np.sum(np.asarray(weights) * hs * mu ** (n + s)))


def synthesize_trace_form(taus, weights, zeta):
    """``(2pi)^{-n-1} int exp(lam h) tr(tau(lam) beta_lam[z,t]^*) |lam|^n dlam``.

    Goes through truncated Bargmann matrices rather than the profile, so it
    is an independent path to the same value as :func:`synthesize_eval`.
    """
    c = psi(zeta)
    p = HeisenbergPoint(c.z, c.t)
    n = c.n
    total = 0j
    for tau, w in zip(taus, weights):
        mu = abs(tau.lam)
        total += w * math.exp(tau.lam * c.h) * tau.trace_against(p) * mu ** n
    return complex(total / (2 * math.pi) ** (n + 1))


def basis_element(alpha, ell, a, n=None, maxdeg=16, Q=DEFAULT_Q, panels=1):
    """Profile of ``G_{alpha, ell}``: ``ghat_ell(lam) e_alpha``.

    ``ghat_ell(lam) = sqrt(2 pi / a) exp(-2 pi i ell lam / a)``, which makes
    the family orthogonal in ``PW_a^n`` with squared norms ``(2 pi)^n``.
    """
    alpha = tuple(int(x) for x in np.atleast_1d(alpha))
    n = len(alpha) if n is None else n
    if sum(alpha) > maxdeg:
        raise ValueError("|alpha| exceeds the truncation degree")
    j = multi_indices(n, maxdeg).index(alpha)
    D = basis_size(n, maxdeg)
    amp = math.sqrt(2 * math.pi / a)

    def fn(lam):
        v = np.zeros(D, dtype=complex)
        v[j] = amp * np.exp(-2j * math.pi * ell * lam / a)
        return v

    return SpectralProfile.from_function(a, n, n, maxdeg, fn, Q, panels)


def gram_matrix(profiles):
    return np.array([[pw_inner(P, R) for R in profiles] for P in profiles])


def polynomial_profile(a, s, polys, n=1, maxdeg=None, Q=DEFAULT_Q, panels=1):
    """Profile with ``phi(z, lam) = sum_alpha p_alpha(lam) z^alpha`` for polynomials ``p_alpha``.

    ``polys`` maps multi-indices to coefficient arrays in ``numpy.polyval``
    order (highest degree first).
    """
    keys = {tuple(np.atleast_1d(k).tolist()): v for k, v in polys.items()}
    if maxdeg is None:
        maxdeg = max(sum(k) for k in keys)
    order = {al: i for i, al in enumerate(multi_indices(n, maxdeg))}
    D = basis_size(n, maxdeg)

    def fn(lam):
        v = np.zeros(D, dtype=complex)
        for al, p in keys.items():
            v[order[al]] = np.polyval(p, lam) * monomial_norm(al, abs(lam))
        return v

    return SpectralProfile.from_function(a, s, n, maxdeg, fn, Q, panels)


def _moment_integrals(c, a, mmax):
    """``I_m(c) = int_{-a}^0 lam^m exp(c lam) dlam`` for m = 0..mmax, elementwise in c."""
    c = np.asarray(c, dtype=complex)
    out = np.zeros((mmax + 1,) + c.shape, dtype=complex)
    small = np.abs(c) * a < mmax + 2.0
    cs = c[small]
    if cs.size:
        # power series: sum_j c^j / j! int lam^{m+j}
        nterms = 60
        term_c = np.ones_like(cs)
        acc = np.zeros((mmax + 1,) + cs.shape, dtype=complex)
        for j in range(nterms):
            for m in range(mmax + 1):
                k = m + j
                acc[m] += term_c * (-((-a) ** (k + 1)) / (k + 1))
            term_c = term_c * cs / (j + 1)
        out[:, small] = acc
    big = ~small
    cb = c[big]
    if cb.size:
        e = np.exp(-cb * a)
        prev = (1.0 - e) / cb
        out[0, big] = prev
        for m in range(1, mmax + 1):
            cur = (-((-a) ** m) * e - m * prev) / cb
            out[m, big] = cur
            prev = cur
    return out


def polynomial_boundary_values(a, polys, z, t):
    """Exact boundary values ``F(z, t + i|z|^2/4)`` for a one-variable polynomial profile.

    Uses closed-form moments ``int lam^m exp(c lam)`` with ``c = |z|^2/4 - it``,
    so it shares no code with the quadrature synthesis. ``n = 1`` only.
    """
    z = np.asarray(z, dtype=complex)
    t = np.asarray(t, dtype=float)
    z, t = np.broadcast_arrays(z, t)
    c = 0.25 * np.abs(z) ** 2 - 1j * t
    keys = {int(np.atleast_1d(k)[0]): np.asarray(v) for k, v in polys.items()}
    mmax = max(len(p) - 1 for p in keys.values())
    I = _moment_integrals(c, a, mmax)
    F = np.zeros(z.shape, dtype=complex)
    for k, p in keys.items():
        deg = len(p) - 1
        acc = np.zeros(z.shape, dtype=complex)
        for i, coef in enumerate(p):
            acc += coef * I[deg - i]
        F += acc * z ** k
    return F / (2 * math.pi)


def boundary_l2_bruteforce(fn, xmax=12.0, dx=0.25, tmax=200.0, dt=0.5):
    """Trapezoid approximation of ``int |fn(z, t)|^2 dz dt`` over ``H_1``."""
    xs = np.arange(-xmax, xmax + dx / 2, dx)
    ts = np.arange(-tmax, tmax + dt / 2, dt)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    Z = (X + 1j * Y).reshape(-1)
    wz = np.full(xs.size, dx)
    wz[[0, -1]] *= 0.5
    wzz = np.outer(wz, wz).reshape(-1)
    total = 0.0
    for i, t in enumerate(ts):
        wt = dt * (0.5 if i in (0, ts.size - 1) else 1.0)
        total += wt * float(np.sum(wzz * np.abs(fn(Z, np.full(Z.shape, t))) ** 2))
    return total


def write_profile_csv(P, path_or_file):
    """Rows ``lambda, weight, alpha_1..alpha_n, re, im``; nodes in grid order, graded lex inside."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["lambda", "weight"] + [f"alpha{j + 1}" for j in range(P.n)] + ["re", "im"])
        alphas = multi_indices(P.n, P.maxdeg)
        for lam, wt, row in zip(P.lambdas, P.weights, P.coeffs):
            for al, c in zip(alphas, row):
                w.writerow(
                    [repr(float(lam)), repr(float(wt))] + list(al)
                    + [repr(float(c.real)), repr(float(c.imag))]
                )
    finally:
        if own:
            fh.close()


def read_profile_csv(path_or_file, a, s):
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, newline="") if own else path_or_file
    try:
        rows = list(csv.reader(fh))
    finally:
        if own:
            fh.close()
    n = len(rows[0]) - 4
    body = rows[1:]
    lams, weights, coeffs = [], [], []
    for r in body:
        lam = float(r[0])
        if not lams or lam != lams[-1]:
            lams.append(lam)
            weights.append(float(r[1]))
            coeffs.append([])
        coeffs[-1].append(complex(float(r[2 + n]), float(r[3 + n])))
    D = len(coeffs[0])
    maxdeg = 0
    while basis_size(n, maxdeg) < D:
        maxdeg += 1
    return SpectralProfile(a, s, n, maxdeg, lams, weights, np.array(coeffs))


# one-dimensional band-limited functions with piecewise spectra


@dataclass(frozen=True)
class SpectralWindow:
    """``ghat(lam) = sum_j c_j exp(-i omega_j lam) 1[lo_j <= lam < hi_j]``.

    The inverse transform ``g(x) = (1/2pi) int ghat(lam) exp(-i lam x) dlam``
    has a closed form for every piece, valid for complex ``x`` as well.
    """

    pieces: tuple

    def __post_init__(self):
        pcs = tuple((complex(c), float(om), float(lo), float(hi)) for c, om, lo, hi in self.pieces)
        for _, _, lo, hi in pcs:
            if not lo < hi:
                raise ValueError("each piece needs lo < hi")
        object.__setattr__(self, "pieces", pcs)

    @classmethod
    def box(cls, lo, hi, c=None):
        """``c`` times the indicator of ``[lo, hi)``; default ``c`` normalizes in L^2."""
        c = 1.0 / math.sqrt(hi - lo) if c is None else c
        return cls(((c, 0.0, lo, hi),))

    @classmethod
    def fourier_mode(cls, ell, a):
        """``sqrt(2 pi / a) exp(-2 pi i ell lam / a)`` on ``[-a, 0)``."""
        return cls(((math.sqrt(2 * math.pi / a), 2 * math.pi * ell / a, -a, 0.0),))

    def __add__(self, other):
        return SpectralWindow(self.pieces + other.pieces)

    def scaled(self, c):
        return SpectralWindow(tuple((c * p[0],) + p[1:] for p in self.pieces))

    @property
    def breaks(self):
        return sorted({p[2] for p in self.pieces} | {p[3] for p in self.pieces})

    def spectrum(self, lam):
        lam = np.asarray(lam, dtype=float)
        out = np.zeros(lam.shape, dtype=complex)
        for c, om, lo, hi in self.pieces:
            out += np.where((lam >= lo) & (lam < hi), c * np.exp(-1j * om * lam), 0.0)
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.zeros(x.shape, dtype=complex)
        for c, om, lo, hi in self.pieces:
            y = x + om
            width = hi - lo
            out += c * width * np.exp(-0.5j * (lo + hi) * y) * np.sinc(width * y / (2 * math.pi))
        return out / (2 * math.pi)

    def l2_norm_sq(self, Q=64):
        """``int |ghat|^2`` by Gauss-Legendre between consecutive breakpoints."""
        br = self.breaks
        x, w = np.polynomial.legendre.leggauss(Q)
        total = 0.0
        for lo, hi in zip(br[:-1], br[1:]):
            half = 0.5 * (hi - lo)
            lam = lo + half * (x + 1.0)
            total += half * float(np.sum(w * np.abs(self.spectrum(lam)) ** 2))
        return total

    def decay_constant(self):
        """``C`` with ``|g(x)| <= C / |x + omega|`` for every piece, summed."""
        return sum(abs(c) for c, _, _, _ in self.pieces) / math.pi


def wks_check(window, a, K=5000, tol=1e-4):
    """Compare ``(pi/a) sum_{|k|<=K} |g(pi k/a)|^2`` with ``||g||^2 = ||ghat||^2 / 2pi``.

    Returns ``(sum, norm, pass, tail_bound)``. The spectrum must sit in
    ``[-a, 0]``. ``tail_bound`` estimates the omitted terms from the
    ``1/x`` decay of each piece; pass requires agreement within
    ``tol * norm + tail_bound``.
    """
    a = check_positive(a, "a")
    for _, _, lo, hi in window.pieces:
        if lo < -a * (1 + 1e-12) or hi > 1e-12:
            raise ValueError("spectrum must lie in [-a, 0]")
    k = np.arange(-K, K + 1)
    vals = window(math.pi * k / a)
    head = (math.pi / a) * float(math.fsum(np.abs(vals) ** 2))
    norm = window.l2_norm_sq() / (2 * math.pi)
    shift = max((abs(p[1]) for p in window.pieces), default=0.0)
    xK = max(math.pi * K / a - shift, 1.0)
    C = window.decay_constant()
    tail = 2.0 * C * C / xK
    ok = abs(head - norm) <= tol * max(norm, 1e-300) + tail if norm > 0 else head == 0.0
    return head, norm, bool(ok), tail


def window_profile(window, a, s=None, n=1, maxdeg=16, f=None, Q=DEFAULT_Q, panels=1):
    """Separable profile ``ghat(lam) f_lam`` where ``f_lam`` has coefficients ``f(lam)``.

    With ``f=None`` the Fock factor is ``e_0``, so the function is
    ``g(zeta_{n+1})``. Quadrature panels are cut at the window's jumps.
    """
    s = n if s is None else s
    D = basis_size(n, maxdeg)
    if f is None:
        e0 = np.zeros(D, dtype=complex)
        e0[0] = 1.0

        def f(lam):
            return e0

    def fn(lam):
        return window.spectrum(lam) * np.asarray(f(lam), dtype=complex)

    return SpectralProfile.from_function(a, s, n, maxdeg, fn, Q, panels, breaks=window.breaks)
