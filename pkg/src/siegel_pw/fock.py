"""Truncated Fock spaces and the Bargmann representation.

The Fock space ``F^lam`` (``lam > 0``) consists of entire functions on C^n
with

    ||F||^2 = (lam / 2 pi)^n  int |F(z)|^2 exp(-lam |z|^2 / 2) dz < inf.

A :class:`FockElement` stores the coordinates of a polynomial in the
orthonormal basis ``e_alpha = z^alpha / ||z^alpha||`` for ``|alpha| <= N``.
The Gaussian moment integral gives ``||z^alpha||^2 = alpha! (2/lam)^|alpha|``,
so ``e_alpha(z) = prod_j u_j^alpha_j / sqrt(alpha_j!)`` with
``u = z sqrt(lam/2)``.

Multi-indices are enumerated in graded lexicographic order: by total degree,
and within a degree lexicographically *decreasing*, e.g. for n = 2::

    (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...

This ordering is part of the public API (coefficient CSV dumps rely on it).
"""

import csv
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammainc

from ._validation import as_complex_vector, check_positive

DEFAULT_MAXDEG = 16


@lru_cache(maxsize=None)
def _multi_indices(n, maxdeg):
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for first in range(remaining, -1, -1):
            rec(prefix + (first,), remaining - first, slots - 1)

    for d in range(maxdeg + 1):
        rec((), d, n)
    return tuple(out)


def multi_indices(n, maxdeg):
    """All multi-indices ``alpha`` in N^n with ``|alpha| <= maxdeg`` (graded lex)."""
    if n < 1 or maxdeg < 0:
        raise ValueError("need n >= 1 and maxdeg >= 0")
    return list(_multi_indices(n, maxdeg))


@lru_cache(maxsize=None)
def _index_array(n, maxdeg):
    arr = np.array(_multi_indices(n, maxdeg), dtype=int).reshape(-1, n)
    arr.setflags(write=False)
    return arr


def index_array(n, maxdeg):
    """Multi-indices as an integer array of shape ``(D, n)``."""
    return _index_array(n, maxdeg)


def basis_size(n, maxdeg):
    return math.comb(maxdeg + n, n)


def monomial_norm(alpha, lam):
    """``||z^alpha||`` in ``F^lam``, i.e. ``sqrt(alpha! (2/lam)^|alpha|)``."""
    lam = float(lam)
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index entries must be non-negative")
    k = sum(alpha)
    log_sq = sum(math.lgamma(a + 1) for a in alpha) + k * math.log(2.0 / lam)
    return math.exp(0.5 * log_sq)


def _scaled_powers(u, maxdeg):
    """``u^k / sqrt(k!)`` for k = 0..maxdeg along a new trailing axis."""
    u = np.asarray(u, dtype=complex)
    out = np.empty(u.shape + (maxdeg + 1,), dtype=complex)
    out[..., 0] = 1.0
    for k in range(1, maxdeg + 1):
        out[..., k] = out[..., k - 1] * u / math.sqrt(k)
    return out


def basis_values(lam, z, maxdeg):
    """Evaluate every ``e_alpha`` at the points ``z``.

    ``z`` has shape ``(..., n)``; the result has shape ``(..., D)``.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    n = z.shape[-1]
    pw = _scaled_powers(z * math.sqrt(lam / 2.0), maxdeg)  # (..., n, N+1)
    idx = index_array(n, maxdeg)
    vals = pw[..., 0, idx[:, 0]]
    for j in range(1, n):
        vals = vals * pw[..., j, idx[:, j]]
    return vals


@dataclass(frozen=True, eq=False)
class FockElement:
    """Truncated element of ``F^lam`` in the normalized monomial basis."""

    lam: float
    n: int
    maxdeg: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lam", check_positive(self.lam, "lam"))
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.shape[0] != basis_size(self.n, self.maxdeg):
            raise ValueError(
                f"expected {basis_size(self.n, self.maxdeg)} coefficients for "
                f"n={self.n}, maxdeg={self.maxdeg}, got {c.shape[0]}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("FockElement coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, lam, n=1, maxdeg=DEFAULT_MAXDEG):
        return cls(lam, n, maxdeg, np.zeros(basis_size(n, maxdeg), dtype=complex))

    @classmethod
    def basis(cls, alpha, lam, n=None, maxdeg=DEFAULT_MAXDEG):
        alpha = tuple(int(a) for a in np.atleast_1d(alpha))
        n = len(alpha) if n is None else n
        c = np.zeros(basis_size(n, maxdeg), dtype=complex)
        c[multi_indices(n, maxdeg).index(alpha)] = 1.0
        return cls(lam, n, maxdeg, c)

    @classmethod
    def from_polynomial(cls, lam, poly, n=1, maxdeg=DEFAULT_MAXDEG):
        """Build from plain monomial coefficients ``{alpha: c}`` of ``sum c z^alpha``."""
        c = np.zeros(basis_size(n, maxdeg), dtype=complex)
        order = {a: i for i, a in enumerate(multi_indices(n, maxdeg))}
        for alpha, value in poly.items():
            alpha = tuple(np.atleast_1d(alpha).tolist())
            if alpha not in order:
                raise ValueError(f"monomial {alpha} exceeds the truncation degree")
            c[order[alpha]] += value * monomial_norm(alpha, lam)
        return cls(lam, n, maxdeg, c)

    def with_coeffs(self, coeffs):
        return FockElement(self.lam, self.n, self.maxdeg, coeffs)

    def __add__(self, other):
        _check_compatible(self, other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_compatible(self, other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, c):
        return self.with_coeffs(complex(c) * self.coeffs)

    __rmul__ = __mul__

    def conj_coeffs(self):
        """The element ``z -> conj(f(conj z))`` (coefficients conjugated)."""
        return self.with_coeffs(np.conj(self.coeffs))

    def norm(self):
        return fock_norm(self)

    def __call__(self, z):
        return fock_eval(self, z)


def _check_compatible(f, g):
    if f.n != g.n or f.maxdeg != g.maxdeg or not math.isclose(f.lam, g.lam, rel_tol=1e-14):
        raise ValueError(
            f"incompatible Fock elements: (lam={f.lam}, n={f.n}, N={f.maxdeg}) vs "
            f"(lam={g.lam}, n={g.n}, N={g.maxdeg})"
        )


def fock_inner(f, g):
    """``<f, g>`` in ``F^lam``, linear in ``f``."""
    _check_compatible(f, g)
    return complex(np.vdot(g.coeffs, f.coeffs))


def fock_norm(f):
    return float(np.linalg.norm(f.coeffs))


def fock_eval(f, z):
    """Evaluate ``f`` at one point (vector of length n) or at an array of shape (m, n).

    For ``n == 1`` a 1-D array of complex numbers is treated as m points.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0 or (z.ndim == 1 and f.n > 1) or (z.ndim == 1 and z.shape[0] == 1 and f.n == 1)
    if z.ndim == 0:
        z = z.reshape(1, 1)
    elif z.ndim == 1:
        z = z.reshape(1, -1) if f.n > 1 else z.reshape(-1, 1)
    if z.shape[-1] != f.n:
        raise ValueError(f"point dimension {z.shape[-1]} does not match n={f.n}")
    vals = basis_values(f.lam, z, f.maxdeg) @ f.coeffs
    return complex(vals[0]) if scalar else vals


def fock_kernel(lam, z, w):
    """Reproducing kernel ``exp((lam/2) z . conj(w))`` of ``F^lam``."""
    lam = check_positive(lam, "lam")
    z = as_complex_vector(z)
    w = as_complex_vector(w, "w")
    return complex(np.exp(0.5 * lam * np.vdot(w, z)))


def kernel_element(lam, w, n=1, maxdeg=DEFAULT_MAXDEG):
    """Truncation of ``K_w`` to degree ``maxdeg``: coefficients ``conj(e_alpha(w))``."""
    w = as_complex_vector(w, "w")
    coeffs = np.conj(basis_values(lam, w, maxdeg))
    return FockElement(lam, n, maxdeg, coeffs)


def kernel_tail(lam, z, maxdeg):
    """Relative truncation tail ``sum_{k > N} x^k/k! / e^x`` with ``x = lam |z|^2 / 2``.

    This is the part of ``||K_z||^2`` missed by the degree-N truncation,
    relative to the whole; for ``x << N`` it behaves like
    ``x^{N+1} / (N+1)!``.
    """
    z = as_complex_vector(z)
    x = 0.5 * abs(lam) * float(np.vdot(z, z).real)
    return float(gammainc(maxdeg + 1, x))


def _displacement_1d(u, maxdeg):
    """Matrix ``M[a, b]`` of ``F(w) -> exp(-conj(u) v) F(v + u)`` in scaled variables.

    In the normalized basis, with ``u = z sqrt(lam/2)``,
    ``M[a, b] = sum_k sqrt(a! b!) / (k! (a-k)! (b-k)!) u^(b-k) (-conj u)^(a-k)``.
    """
    N = maxdeg
    lf = [math.lgamma(k + 1) for k in range(N + 1)]
    up = _scaled_powers(u, N) * np.sqrt(np.exp(lf))  # u^k
    vp = _scaled_powers(-np.conj(u), N) * np.sqrt(np.exp(lf))  # (-conj u)^k
    M = np.zeros((N + 1, N + 1), dtype=complex)
    for a in range(N + 1):
        for b in range(N + 1):
            acc = 0j
            for k in range(min(a, b) + 1):
                coef = math.exp(0.5 * (lf[a] + lf[b]) - lf[k] - lf[a - k] - lf[b - k])
                acc += coef * up[b - k] * vp[a - k]
            M[a, b] = acc
    return M


def bargmann_matrix(p, lam, maxdeg=DEFAULT_MAXDEG):
    """Matrix of ``P_N beta_lam[z, t] P_N`` in the basis ``e_alpha`` (``|alpha| <= N``).

    For ``lam > 0``::

        beta_lam[z, t] F(w) = exp(i lam t - (lam/2) w.conj(z) - (lam/4)|z|^2) F(w + z)

    and for ``lam < 0`` the identity ``beta_lam[z, t] = beta_{-lam}[conj z, -t]``
    is used. Each entry is exact; the truncation only drops the rows
    ``|alpha| > N`` of the image.
    """
    lam = float(lam)
    if lam == 0:
        raise ValueError("lam must be non-zero")
    z, t = p.z, p.t
    if lam < 0:
        lam, z, t = -lam, np.conj(z), -t
    n = z.shape[0]
    idx = index_array(n, maxdeg)
    scale = math.sqrt(lam / 2.0)
    M = None
    for j in range(n):
        m1 = _displacement_1d(z[j] * scale, maxdeg)
        block = m1[np.ix_(idx[:, j], idx[:, j])]
        M = block if M is None else M * block
    phase = np.exp(1j * lam * t - 0.25 * lam * float(np.vdot(z, z).real))
    return phase * M


def bargmann_apply(p, lam, f):
    """Degree-N truncation of ``beta_lam[p] f``; ``f`` must live in ``F^|lam|``."""
    if not math.isclose(f.lam, abs(lam), rel_tol=1e-14):
        raise ValueError(f"f lives in F^{f.lam}, not F^{abs(lam)}")
    if p.n != f.n:
        raise ValueError("dimension mismatch between point and Fock element")
    return f.with_coeffs(bargmann_matrix(p, lam, f.maxdeg) @ f.coeffs)


def coherent_trace(lam, p, q):
    """Closed form of ``tr(P_0 beta_lam[z,t] beta_lam[w,s]^*)`` for ``lam < 0``.

    Equals ``exp(lam (|w - z|^2/4 + i (t - s - Im(w . conj z) / 2)))`` with
    ``p = [z, t]``, ``q = [w, s]``.
    """
    lam = float(lam)
    if not lam < 0:
        raise ValueError("coherent_trace needs lam < 0")
    d = q.z - p.z
    cross = np.vdot(p.z, q.z).imag  # Im(w . conj z)
    expo = lam * (0.25 * float(np.vdot(d, d).real) + 1j * (p.t - q.t - 0.5 * cross))
    return complex(np.exp(expo))


def truncated_coherent_trace(lam, p, q, maxdeg=DEFAULT_MAXDEG):
    """``<beta(p) beta(q)^* e_0, e_0>`` computed from truncated matrices."""
    Mp = bargmann_matrix(p, lam, maxdeg)
    Mq = bargmann_matrix(q, lam, maxdeg)
    return complex(np.sum(Mp[0, :] * np.conj(Mq[0, :])))


def sobolev_multiplier(lam, s, f):
    """Apply ``e_alpha -> [|lam| (1 + |alpha|/n)]^{s/2} e_alpha``."""
    s = float(s)
    if s < 0:
        raise ValueError("s must be non-negative")
    deg = index_array(f.n, f.maxdeg).sum(axis=1)
    mult = (abs(float(lam)) * (1.0 + deg / f.n)) ** (0.5 * s)
    return f.with_coeffs(mult * f.coeffs)


@dataclass(frozen=True, eq=False)
class RankOneOperator:
    """``tau(lam) F = <F, g> e_0`` on ``F^|lam|`` with ``lam < 0``."""

    lam: float
    vec: FockElement

    def __post_init__(self):
        if not float(self.lam) < 0:
            raise ValueError("rank-one fields live on lam < 0")
        if not math.isclose(self.vec.lam, abs(self.lam), rel_tol=1e-14):
            raise ValueError("vec must live in F^|lam|")

    def apply(self, f):
        out = np.zeros_like(f.coeffs)
        out[0] = fock_inner(f, self.vec)
        return f.with_coeffs(out)

    def hs_norm(self):
        return fock_norm(self.vec)

    def trace_against(self, p):
        """``tr(tau beta_lam[p]^*)`` via the truncated Bargmann matrix row."""
        M = bargmann_matrix(p, self.lam, self.vec.maxdeg)
        return complex(np.sum(np.conj(M[0, :] * self.vec.coeffs)))


def write_coefficients_csv(f, path_or_file):
    """Dump coefficients as rows ``alpha_1..alpha_n, re, im`` in graded lex order."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"alpha{j + 1}" for j in range(f.n)] + ["re", "im"])
        for alpha, c in zip(multi_indices(f.n, f.maxdeg), f.coeffs):
            w.writerow(list(alpha) + [repr(float(c.real)), repr(float(c.imag))])
    finally:
        if own:
            fh.close()


def read_coefficients_csv(path_or_file, lam):
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, newline="") if own else path_or_file
    try:
        rows = list(csv.reader(fh))
    finally:
        if own:
            fh.close()
    header, body = rows[0], rows[1:]
    n = len(header) - 2
    alphas = [tuple(int(x) for x in r[:n]) for r in body]
    maxdeg = max(sum(a) for a in alphas)
    order = multi_indices(n, maxdeg)
    if alphas != order:
        raise ValueError("coefficient rows are not in graded lexicographic order")
    coeffs = np.array([complex(float(r[n]), float(r[n + 1])) for r in body])
    return FockElement(lam, n, maxdeg, coeffs)
