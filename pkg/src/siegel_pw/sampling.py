"""Sampling on Heisenberg lattices and on Fock lattices.

The sampling set on the boundary is

    Gamma = { (gamma', pi k / a + i |gamma'|^2 / 4) : gamma' in L_b1 x ... x L_bn, k in Z }.

Frame ratios are always reported as ``sample_sum / norm``; a sampling
inequality ``A sum <= norm <= B sum`` shows up as ratios confined to
``[1/B, 1/A]``, and its failure as ratios drifting to 0.
"""

import csv
import io
import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaincc, roots_laguerre

from ._validation import check_positive
from .fock import FockElement, basis_size, basis_values, multi_indices
from .geometry import SiegelPoint
from .pw import (
    SpectralProfile,
    SpectralWindow,
    basis_element,
    fractional_t_derivative,
    lambda_quadrature,
    lift,
    node_values,
    pw_norm,
    restriction_norm_at_height,
    synthesize_boundary_grid,
)
from .sigma import SquareLattice, _integer_array, _integer_points

FRAME_CSV_COLUMNS = ("family", "param_id", "item_id", "sample_sum", "norm", "ratio", "tail_bound")


@dataclass(frozen=True)
class SamplingLattice:
    """``Gamma`` truncated to ``|gamma'| <= R_z`` and ``|k| <= K_t``."""

    a: float
    b: tuple
    R_z: float = 16.0
    K_t: int = 128

    def __post_init__(self):
        object.__setattr__(self, "a", check_positive(self.a, "a"))
        b = tuple(check_positive(x, "b") for x in np.atleast_1d(self.b))
        object.__setattr__(self, "b", b)
        if self.R_z < 0 or int(self.K_t) != self.K_t or self.K_t < 0:
            raise ValueError("need R_z >= 0 and a non-negative integer K_t")
        object.__setattr__(self, "K_t", int(self.K_t))

    @property
    def n(self):
        return len(self.b)

    def refined(self, R_z=None, K_t=None):
        return SamplingLattice(self.a, self.b, self.R_z if R_z is None else R_z,
                               self.K_t if K_t is None else K_t)

    def t_nodes(self):
        return math.pi * np.arange(-self.K_t, self.K_t + 1) / self.a


def product_lattice_points(b, R, R_min=None):
    """Points of ``L_b1 x ... x L_bn`` with ``R_min < |gamma| <= R`` as an ``(m, n)`` array."""
    per_axis = []
    for x in np.atleast_1d(b):
        L = SquareLattice(x)
        l, m = _integer_array(L, R)
        per_axis.append(L.spacing * (l + 1j * m))
    if len(per_axis) == 1:
        pts = per_axis[0][:, None]
    else:
        pts = np.array([c for c in itertools.product(*per_axis)], dtype=complex)
    sq = np.sum(np.abs(pts) ** 2, axis=1)
    keep = sq <= R * R * (1 + 1e-12)
    if R_min is not None:
        keep &= sq > R_min * R_min * (1 + 1e-12)
    return pts[keep]


def gamma_points(L):
    """All truncated points of ``Gamma`` as :class:`SiegelPoint` objects (``h = 0``)."""
    out = []
    for g in product_lattice_points(L.b, L.R_z):
        sq = float(np.sum(np.abs(g) ** 2))
        for t in L.t_nodes():
            out.append(SiegelPoint(g, complex(t, 0.25 * sq)))
    return out


@dataclass
class FrameReport:
    """Per-item sample sums, norms and ratios plus their envelope."""

    family: str
    params: dict
    item_ids: list = field(default_factory=list)
    sample_sums: list = field(default_factory=list)
    norms: list = field(default_factory=list)
    tails: list = field(default_factory=list)

    def add(self, item_id, sample_sum, norm, tail=0.0):
        if not norm > 0:
            raise ValueError("frame ratios need a nonzero function")
        self.item_ids.append(item_id)
        self.sample_sums.append(float(sample_sum))
        self.norms.append(float(norm))
        self.tails.append(float(tail))

    @property
    def ratios(self):
        return np.array(self.sample_sums) / np.array(self.norms)

    @property
    def lower(self):
        return float(self.ratios.min())

    @property
    def upper(self):
        return float(self.ratios.max())

    @property
    def envelope(self):
        """``upper / lower``; scale free, so independent of the ratio orientation."""
        return self.upper / self.lower

    def merged(self, other):
        out = FrameReport(self.family, dict(self.params))
        for rep in (self, other):
            for row in zip(rep.item_ids, rep.sample_sums, rep.norms, rep.tails):
                out.add(*row)
        return out

    def to_csv(self, path_or_file=None):
        """Write rows ``family, param_id, item_id, sample_sum, norm, ratio, tail_bound``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FRAME_CSV_COLUMNS)
        pid = ";".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        for iid, ssum, nrm, tail in zip(self.item_ids, self.sample_sums, self.norms, self.tails):
            w.writerow([self.family, pid, iid, repr(ssum), repr(nrm), repr(ssum / nrm), repr(tail)])
        text = buf.getvalue()
        if path_or_file is None:
            return text
        if hasattr(path_or_file, "write"):
            path_or_file.write(text)
        else:
            with open(path_or_file, "w", newline="") as fh:
                fh.write(text)
        return text


# Fock lattices


def _gaussian_radius(lam, maxdeg, extra=40.0):
    """Radius beyond which ``x^k e^{-x}`` (``x = lam r^2 / 2``, ``k <= N``) is negligible."""
    x = maxdeg + 1 + 8.0 * math.sqrt(maxdeg + 1) + extra
    return math.sqrt(2.0 * x / lam)


def fock_sampling_sum(f, b, lam=None, R=None, a=None):
    """``lam^n sum_{|gamma| <= R} |f(gamma)|^2 exp(-lam |gamma|^2 / 2)`` over ``L_b``.

    Returns ``(sum, tail_bound)``. The bound uses
    ``|f(z)|^2 e^{-x} <= ||f||^2 Q(N+1, x)`` with ``x = lam |z|^2 / 2`` and
    ``Q`` the regularized upper incomplete gamma function, summed over the
    lattice points outside ``R``. ``R`` defaults to the radius where that
    bound drops below ~1e-16 relative. Passing ``a`` with ``lam > a`` is
    allowed but flagged as outside the uniform regime by a ``RuntimeWarning``.
    """
    lam = f.lam if lam is None else check_positive(lam, "lam")
    if not math.isclose(lam, f.lam, rel_tol=1e-12):
        raise ValueError("f must be an element of F^lam")
    if a is not None and lam > a:
        warnings.warn(f"lam={lam} exceeds a={a}; outside the uniform sampling regime", RuntimeWarning)
    b = np.atleast_1d(b)
    if b.size != f.n:
        raise ValueError("need one lattice parameter per complex dimension")
    if R is None:
        R = _gaussian_radius(lam, f.maxdeg)
    pts = product_lattice_points(b, R)
    sq = np.sum(np.abs(pts) ** 2, axis=1)
    vals = basis_values(lam, pts, f.maxdeg) @ f.coeffs
    terms = np.abs(vals) ** 2 * np.exp(-0.5 * lam * sq)
    total = lam ** f.n * math.fsum(terms)

    R_out = max(_gaussian_radius(lam, f.maxdeg, extra=80.0), R * 1.5)
    outer = product_lattice_points(b, R_out, R_min=R)
    x = 0.5 * lam * np.sum(np.abs(outer) ** 2, axis=1)
    tail = lam ** f.n * f.norm() ** 2 * float(np.sum(gammaincc(f.maxdeg + 1, x)))
    return total, tail


def fock_test_family(lam, n=1, maxdeg=16, seed=0, n_random=4, monomial_degree=6):
    """Pinned test family in ``F^lam``: ``e_alpha`` (``|alpha| <= 6``) and seeded random elements.

    The random elements have the same normalized coordinates for every
    ``lam``, so the family is transported unitarily across the sweep.
    """
    items = []
    for alpha in multi_indices(n, min(monomial_degree, maxdeg)):
        items.append(("e" + "_".join(map(str, alpha)), FockElement.basis(alpha, lam, n, maxdeg)))
    rng = np.random.default_rng(seed)
    D = basis_size(n, maxdeg)
    for i in range(n_random):
        c = rng.normal(size=D) + 1j * rng.normal(size=D)
        items.append((f"random{i}", FockElement(lam, n, maxdeg, c)))
    return items


def fock_frame_sweep(b, a, lams, family=fock_test_family, maxdeg=16, seed=0, n=None):
    """Ratios ``sum / ||f||^2`` over every ``lam`` in the grid and every test element."""
    b = np.atleast_1d(np.asarray(b, dtype=float))
    n = b.size if n is None else n
    if np.any(b <= a):
        raise ValueError("the uniform Fock sampling regime needs b > a")
    rep = FrameReport("fock", {"a": a, "b": tuple(b.tolist()), "N": maxdeg, "seed": seed})
    for lam in lams:
        if not 0 < lam <= a:
            raise ValueError("every lam must lie in (0, a]")
        for name, f in family(lam, n=n, maxdeg=maxdeg, seed=seed):
            s, tail = fock_sampling_sum(f, b, lam)
            rep.add(f"lam={lam!r}:{name}", s, f.norm() ** 2, tail)
    return rep


def schur_row_sum(lam, b, t, gamma, R):
    """``sum_{|eta| <= R} exp(-((t - lam)/4) |gamma + eta|^2)`` over ``L_b``.

    This is the Schur row sum of the kernel
    ``exp((lam/4)(|gamma|^2 + |eta|^2) - ((t - lam)/4)|gamma + eta|^2)`` against the
    test function ``exp((lam/4)|gamma|^2)`` and the weight ``exp(-(lam/2)|eta|^2)``.
    """
    eta = np.array(product_lattice_points([b], R)[:, 0])
    return float(math.fsum(np.exp(-0.25 * (t - lam) * np.abs(gamma + eta) ** 2)))


def schur_bound_check(lam, b, t, a, R=40.0):
    """Maximum Schur row sum over ``gamma in L_b``, ``|gamma| <= R/2``."""
    if not (0 < lam <= a < t < b):
        raise ValueError("need 0 < lam <= a < t < b")
    gammas = product_lattice_points([b], 0.5 * R)[:, 0]
    eta = product_lattice_points([b], R)[:, 0]
    sums = np.exp(-0.25 * (t - lam) * np.abs(gammas[:, None] + eta[None, :]) ** 2).sum(axis=1)
    return float(sums.max())


def mean_value_bound_check(f, gamma, r, d, tol=1e-10, n_radial=64, n_angular=128):
    """Check ``|f(g)|^2 e^{-d|g|^2} <= d / (pi (1 - e^{-d r^2})) int_{D(g, r)} |f|^2 e^{-d|w|^2}``.

    The disc integral uses Gauss-Legendre in the radius and the trapezoid
    rule in the angle. Returns ``(lhs, rhs, pass)``.
    """
    r = check_positive(r, "r")
    d = check_positive(d, "d")
    gamma = complex(gamma)
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    rho = 0.5 * r * (x + 1.0)
    wr = 0.5 * r * wx * rho
    th = 2 * math.pi * np.arange(n_angular) / n_angular
    W = gamma + rho[:, None] * np.exp(1j * th)[None, :]
    vals = f(W.reshape(-1, 1)).reshape(W.shape) if f.n == 1 else None
    if vals is None:
        raise ValueError("mean_value_bound_check is one-dimensional")
    dens = np.abs(vals) ** 2 * np.exp(-d * np.abs(W) ** 2)
    integral = float(np.sum(wr[:, None] * dens) * (2 * math.pi / n_angular))
    rhs = d / (math.pi * -math.expm1(-d * r * r)) * integral
    lhs = abs(f(gamma)) ** 2 * math.exp(-d * abs(gamma) ** 2)
    return lhs, rhs, bool(lhs <= rhs * (1 + tol))


# Heisenberg lattices


def quadrature_panels(a, K_t, Q=64):
    """Number of Gauss-Legendre panels that resolves ``exp(-i lam pi k / a)`` for ``|k| <= K_t``."""
    phase = math.pi * K_t
    return max(1, math.ceil(phase / (0.6 * Q)))


def _parseval_t_sums(P, zprime):
    """``sum_{k in Z} |F(zprime, pi k/a + i|zprime|^2/4)|^2`` for each ``zprime`` via WKS.

    The t-function at fixed ``zprime`` has spectrum ``phi(zprime, lam) e^{lam |zprime|^2/4}``
    inside ``[-a, 0]``, so its samples at spacing ``pi/a`` satisfy
    ``sum_k |F|^2 = (a / 2 pi^2) int |spectrum|^2 dlam``.
    """
    sq = np.sum(np.abs(zprime) ** 2, axis=1)
    spec = node_values(P, zprime) * np.exp(0.25 * sq[:, None] * P.lambdas[None, :])
    return (P.a / (2 * math.pi ** 2)) * (np.abs(spec) ** 2 @ P.weights)


def _frame_terms(L, D):
    """Head sample sum and the t- and z-tail estimates for the sample profile ``D``."""
    gp = product_lattice_points(L.b, L.R_z)
    vals = synthesize_boundary_grid(D, gp, L.t_nodes())
    head = float(math.fsum(np.abs(vals.reshape(-1)) ** 2))
    t_total = float(np.sum(_parseval_t_sums(D, gp)))
    t_tail = max(t_total - head, 0.0)
    ring = product_lattice_points(L.b, 2.0 * L.R_z, R_min=L.R_z)
    z_tail = float(np.sum(_parseval_t_sums(D, ring))) if len(ring) else 0.0
    return head, t_tail, z_tail


def pw_frame_report(L, profiles, family="pw", ids=None):
    """Frame ratios ``sum_Gamma |d_t^{n/2} F|^2 / ||F||^2_{PW^n}`` for each profile.

    The reported tail is the t-truncation remainder (exact by Parseval, up to
    quadrature) plus the contribution of the ring ``R_z < |gamma'| <= 2 R_z``.
    """
    rep = FrameReport(family, {"a": L.a, "b": L.b, "R_z": L.R_z, "K_t": L.K_t})
    ids = ids or [f"profile{i}" for i in range(len(profiles))]
    for pid, P in zip(ids, profiles):
        if not math.isclose(P.a, L.a, rel_tol=1e-12) or P.n != L.n:
            raise ValueError("profile type and dimension must match the lattice")
        P = P.with_smoothness(P.n)
        norm = pw_norm(P)
        if norm == 0:
            raise ValueError("zero profile has no frame ratio")
        head, t_tail, z_tail = _frame_terms(L, fractional_t_derivative(P, 0.5 * P.n))
        rep.add(pid, head, norm, t_tail + z_tail)
    return rep


def pw0_frame_report(L, profiles, family="pw0", ids=None):
    """Frame ratios for ``PW_a``: samples of ``G`` against ``||G||^2_{L^2}``.

    The profiles are lifted by ``|lam|^{-n/2}`` into ``PW_a^n`` and handed to
    :func:`pw_frame_report`; sampling in ``PW_a`` reduces to ``PW_a^n``
    this way.
    """
    lifted = [lift(P, -0.5 * P.n).with_smoothness(P.n) for P in profiles]
    rep = pw_frame_report(L, lifted, family, ids)
    return rep


def pw0_direct_report(L, profiles, family="pw0-direct", ids=None):
    """Same ratios as :func:`pw0_frame_report`, computed without the lift."""
    rep = FrameReport(family, {"a": L.a, "b": L.b, "R_z": L.R_z, "K_t": L.K_t})
    ids = ids or [f"profile{i}" for i in range(len(profiles))]
    for pid, P in zip(ids, profiles):
        norm = restriction_norm_at_height(P, 0.0)
        if norm == 0:
            raise ValueError("zero profile has no frame ratio")
        head, t_tail, z_tail = _frame_terms(L, P)
        rep.add(pid, head, norm, t_tail + z_tail)
    return rep


def smooth_profile(a, s, n, maxdeg, seed, Q=64, panels=1, degree=3):
    """Seeded profile ``r_alpha 2^{-|alpha|} (lam (lam + a) / a^2)^2 e^{i lam c_alpha}`` for ``|alpha| <= degree``.

    The polynomial factor vanishes to second order at both ends of the
    band, so the boundary values decay like ``|t|^{-3}``.
    """
    rng = np.random.default_rng(seed)
    alphas = multi_indices(n, min(degree, maxdeg))
    r = rng.normal(size=len(alphas)) + 1j * rng.normal(size=len(alphas))
    c = rng.uniform(-4, 4, size=len(alphas))
    deg = np.array([sum(al) for al in alphas])
    D = basis_size(n, maxdeg)

    def fn(lam):
        v = np.zeros(D, dtype=complex)
        v[: len(alphas)] = r * 2.0 ** (-deg) * (lam * (lam + a) / a ** 2) ** 2 * np.exp(1j * lam * c)
        return v

    return SpectralProfile.from_function(a, s, n, maxdeg, fn, Q, panels)


def pw_test_family(a, n=1, maxdeg=16, Q=64, panels=1, seed=0, n_smooth=3):
    """Pinned families: basis elements ``G_{alpha, ell}`` (``|alpha| <= 2``, ``|ell| <= 2``) and smooth profiles."""
    items = []
    for alpha in multi_indices(n, 2):
        for ell in range(-2, 3):
            items.append(
                (f"G{'_'.join(map(str, alpha))},{ell}",
                 basis_element(alpha, ell, a, n, maxdeg, Q, panels))
            )
    for i in range(n_smooth):
        items.append((f"smooth{i}", smooth_profile(a, n, n, maxdeg, seed + i, Q, panels)))
    return items


# the necessary direction


def near_kernel_zeros(b, R):
    """Lattice points of ``L_b`` with ``|gamma| <= R`` (zeros of the near-kernel function)."""
    L = SquareLattice(b)
    return np.array([L.point(l, m) for l, m in _integer_points(L, R)], dtype=complex)


def _log_abs_near_kernel(zeros, z):
    """``log |z prod_{gamma != 0} (1 - z/gamma)|`` over the given zeros (0 included)."""
    z = np.asarray(z, dtype=complex)
    nz = zeros[zeros != 0]
    with np.errstate(divide="ignore"):
        out = np.log(np.abs(z)) + np.sum(np.log(np.abs(1.0 - z[..., None] / nz)), axis=-1)
    return out


def _fock_norm_sq_log(logabs_fn, degree, mu):
    """``||f||^2_{F^mu}`` for a polynomial of the given degree, from ``log|f|``.

    Returned as ``(value, peak)`` with ``||f||^2 = value * exp(peak)``.

    Gauss-Laguerre in ``u = mu |z|^2 / 2`` with the trapezoid rule in the
    angle is exact for polynomials once both rules have more than ``degree`` nodes.
    """
    u, w = roots_laguerre(degree + 2)
    M = 2 * degree + 8
    th = 2 * math.pi * np.arange(M) / M
    Z = np.sqrt(2 * u / mu)[:, None] * np.exp(1j * th)[None, :]
    la = 2.0 * logabs_fn(Z)
    peak = float(la.max())
    return float(np.sum(w[:, None] * np.exp(la - peak)) / M), peak


@dataclass
class NecessaryConditionResult:
    a: float
    b: float
    eps: list
    radii: list
    ratios: list
    report: FrameReport

    @property
    def decay(self):
        """``ratio(first eps) / ratio(last eps)``."""
        return self.ratios[0] / self.ratios[-1]


def necessary_condition_experiment(
    a,
    b,
    eps_list=(1 / 4, 1 / 8, 1 / 16, 1 / 32),
    radius_factor=0.75,
    K_t=4096,
    kind="near-kernel",
    allow_control=False,
    n_lambda=16,
):
    """Lower frame ratios of ``F_eps = f(zeta') g_eps(zeta_{n+1})`` in ``PW_a`` (n = 1).

    ``ghat_eps = eps^{-1/2} 1[-a, -a + eps]`` concentrates the spectrum at
    ``lam = -a``. With ``kind="near-kernel"`` the Fock factor is
    ``f(z) = z prod (1 - z/gamma)`` over ``gamma in L_b``, ``0 < |gamma| <= R_eps``
    with ``R_eps = radius_factor * spacing / sqrt(eps)``, so ``f`` vanishes on
    a growing piece of the lattice; ``kind="constant"`` uses ``f = 1``.

    For ``b <= a`` the ratios fall towards 0. ``b > a`` makes the experiment
    vacuous and raises unless ``allow_control`` is set.
    """
    a = check_positive(a, "a")
    b = check_positive(b, "b")
    if b > a and not allow_control:
        raise ValueError("b > a: the lattice is sampling and the experiment is vacuous")
    if kind not in ("near-kernel", "constant"):
        raise ValueError(f"unknown test function kind {kind!r}")
    spacing = math.sqrt(2 * math.pi / b)
    rep = FrameReport(f"necessary-{kind}", {"a": a, "b": b, "K_t": K_t})
    radii, ratios = [], []
    for eps in eps_list:
        if not 0 < eps < a:
            raise ValueError("need 0 < eps < a")
        window = SpectralWindow.box(-a, -a + eps)
        if kind == "near-kernel":
            R = radius_factor * spacing / math.sqrt(eps)
            zeros = near_kernel_zeros(b, R)
        else:
            R = 0.0
            zeros = np.array([], dtype=complex)
        degree = len(zeros)

        def logabs(z, zeros=zeros):
            if zeros.size == 0:
                return np.zeros(np.shape(z))
            return _log_abs_near_kernel(zeros, z)

        lams, wts = lambda_quadrature(a, n_lambda, 1, breaks=(-a + eps,))
        keep = lams < -a + eps
        lams, wts = lams[keep], wts[keep]
        norms = [_fock_norm_sq_log(logabs, max(degree, 1), abs(lam)) for lam in lams]
        # every quantity below is divided by exp(ref) to stay finite
        ref = max(p for _, p in norms)
        norm = float(
            np.sum(
                wts
                * np.abs(window.spectrum(lams)) ** 2
                * np.array([v * math.exp(p - ref) for v, p in norms])
                / np.abs(lams)
            )
        )

        R_z = math.sqrt(2.0 * (degree + 1 + 12 * math.sqrt(degree + 1) + 40) / (a - eps))
        L = SquareLattice(b)
        pts = _integer_points(L, R_z)
        zero_set = {(l, m) for l, m in _integer_points(L, R)} if degree else set()
        gp = np.array([L.point(l, m) for l, m in pts if (l, m) not in zero_set], dtype=complex)
        la = 2.0 * logabs(gp) - ref
        k = np.arange(-K_t, K_t + 1)
        y = 0.25 * np.abs(gp) ** 2
        G = window(math.pi * k[None, :] / a + 1j * y[:, None])
        head = float(np.sum(np.exp(la) * np.sum(np.abs(G) ** 2, axis=1)))
        full = (a / (2 * math.pi ** 2)) * np.array(
            [
                np.sum(wts * np.abs(window.spectrum(lams)) ** 2 * np.exp(2 * lams * yy))
                for yy in y
            ]
        )
        t_tail = max(float(np.sum(np.exp(la) * full)) - head, 0.0)
        rep.add(f"eps={eps!r}", head, norm, t_tail)
        radii.append(R)
        ratios.append(head / norm)
    return NecessaryConditionResult(a, b, list(eps_list), radii, ratios, rep)
