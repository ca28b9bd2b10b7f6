"""Square well with a half-sine bottom under spin symmetry, in the Jacobi/Chebyshev basis.

Configuration space is ``x in [-L/2, L/2]`` with ``lambda = pi/L`` and
``y = sin(lambda x)``. The potential is ``V = S = V0 y`` and ``W = 0``. The
four spinor bases are labelled by the signs of the Jacobi exponents
``(mu, nu) = (+-1/2, +-1/2)``:

======  =============  ===========================
case    (mu, nu)       upper component
======  =============  ===========================
``mm``  (-1/2, -1/2)   ``T_n(y)``
``pp``  (+1/2, +1/2)   ``sqrt(1-y^2) U_n(y)``
``mp``  (-1/2, +1/2)   ``sqrt(1+y) V_n(y)``
``pm``  (+1/2, -1/2)   ``sqrt(1-y) W_n(y)``
======  =============  ===========================

Energies are reported as ``epsilon`` (total) or as ``t = (epsilon - m)/(2 lambda)``,
the eigenvalue of the symmetric matrix built by :func:`build_T`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from .errors import (MisuseError, ModelNotTridiagonalError, OracleError, ParameterDomainError,
                     SingularityError, TruncationError)
from .orthopoly import (ChebyshevKind, JacobiParams, chebyshev_values, jacobi_matrix, jacobi_norm,
                        jacobi_values)
from .tridiag import (EigenRequest, SymTridiagonal, eigenvalues, solve_coeff_recursion,
                      eigenvector_twisted)

CASES = {
    "mm": (-0.5, -0.5),
    "pp": (0.5, 0.5),
    "mp": (-0.5, 0.5),
    "pm": (0.5, -0.5),
}


@dataclass(frozen=True)
class HalfSineModel:
    """Physical parameters in units with hbar = c = 1."""

    m: float
    lam: float
    v0: float
    case: str = "mm"

    def __post_init__(self):
        if self.case not in CASES:
            raise ParameterDomainError(f"case must be one of {sorted(CASES)}, got {self.case!r}")
        if not self.lam > 0:
            raise ParameterDomainError("lambda must be positive")
        if not self.m >= 0:
            raise ParameterDomainError("mass must be non-negative")

    @property
    def mu(self):
        return CASES[self.case][0]

    @property
    def nu(self):
        return CASES[self.case][1]

    @property
    def length(self):
        return math.pi / self.lam

    def with_v0(self, v0):
        return HalfSineModel(self.m, self.lam, v0, self.case)


@dataclass(frozen=True)
class BasisGeometry:
    """Exponents of the coordinate map and basis, plus the kinetic-balance constant ``c``.

    ``y' = lambda (1-y)^a (1+y)^b`` and ``phi_n^+ = A_n (1-y)^alpha (1+y)^beta P_n^(mu,nu)``,
    with ``2 alpha + a = mu + 1``, ``2 beta + b = nu + 1``. ``R = c y'``.
    """

    a: float
    b: float
    alpha: float
    beta: float
    c: float
    mu: float
    nu: float

    def __post_init__(self):
        if not (math.isclose(2 * self.alpha + self.a, self.mu + 1)
                and math.isclose(2 * self.beta + self.b, self.nu + 1)):
            raise ParameterDomainError("basis exponents violate 2 alpha + a = mu + 1, 2 beta + b = nu + 1")


@dataclass(frozen=True)
class LinearG:
    rho: float
    sigma: float
    n: int


@dataclass(frozen=True, eq=False)
class SpinorSample:
    """Upper and lower spinor components sampled on a grid."""

    xs: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        lower = np.asarray(self.lower, dtype=float)
        if not (xs.shape == upper.shape == lower.shape and xs.ndim == 1):
            raise ValueError("grid and components must be 1-d arrays of equal length")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)


@dataclass(frozen=True, eq=False)
class Eigenstate:
    """A reconstructed eigen-spinor with the data that produced it."""

    k: int
    t: float
    epsilon: float
    size: int
    coefficients: np.ndarray = field(repr=False)
    sample: SpinorSample = field(repr=False)


def a_index(n, case):
    """``(n + (mu + nu + 1)/2)^2``; works elementwise on arrays of ``n``."""
    mu, nu = CASES[case]
    if np.ndim(n) == 0:
        return (n + (mu + nu + 1) / 2) ** 2
    return (np.asarray(n, dtype=float) + (mu + nu + 1) / 2) ** 2


def solve_basis_geometry(case, mu=None, nu=None):
    """Exponents for ``y = sin(lambda x)`` (so ``a = b = 1/2``) with ``c = 0``.

    ``mu``/``nu`` may be overridden to build trial geometries outside the four cases.
    """
    if mu is None or nu is None:
        mu, nu = CASES[case]
    a = b = 0.5
    return BasisGeometry(a=a, b=b, alpha=(mu + 1 - a) / 2, beta=(nu + 1 - b) / 2, c=0.0, mu=mu, nu=nu)


def eval_G(model: HalfSineModel, geom: BasisGeometry, n, y, epsilon):
    """The function ``G(y)`` whose linearity makes the wave-operator matrix tridiagonal.

    General form for ``y' = lambda sqrt(1 - y^2)``, ``V = S = V0 y``, ``W = 0``
    and ``R = c y'``. Only the ``(1+y)/(1-y)`` and ``(1-y)/(1+y)`` terms can be
    singular; they drop out when ``mu^2 = (a-1)^2`` and ``nu^2 = (b-1)^2``.
    """
    y = np.asarray(y, dtype=float)
    lam, m, c = model.lam, model.m, geom.c
    a, b, mu, nu = geom.a, geom.b, geom.mu, geom.nu
    alpha, beta = geom.alpha, geom.beta
    s = n + (mu + nu + 1) / 2
    q_minus_factor = 1 - (m + epsilon) / (2 * lam)

    coeff_left = mu * mu - (a - 1) ** 2
    coeff_right = nu * nu - (b - 1) ** 2
    if coeff_left != 0 and np.any(y >= 1):
        raise SingularityError("G(y) is singular at y = +1 for this mu")
    if coeff_right != 0 and np.any(y <= -1):
        raise SingularityError("G(y) is singular at y = -1 for this nu")

    one_minus_sq = 1 - y * y
    value = (2 * model.v0 * y + m - epsilon) / (2 * lam)
    # (1-y^2)/y' R = c (1-y^2); (1-y^2)/y'^2 (R^2 - y' dR/dy) = c^2 (1-y^2) + c y
    value = value - c * (beta - alpha - (alpha + beta) * y + c * one_minus_sq)
    bracket = s * s - (mu * mu + nu * nu + 2 * a * b - 1) / 4 + c * c * one_minus_sq + c * y
    with np.errstate(divide="ignore", invalid="ignore"):
        if coeff_left != 0:
            bracket = bracket - coeff_left / 4 * (1 + y) / (1 - y)
        if coeff_right != 0:
            bracket = bracket - coeff_right / 4 * (1 - y) / (1 + y)
    value = value + q_minus_factor * bracket
    return float(value) if value.ndim == 0 else value


def extract_linear_G(model: HalfSineModel, n, epsilon, geom=None, samples=21):
    """Slope and intercept of ``G(y)``, checked against a least-squares line through samples."""
    geom = geom or solve_basis_geometry(model.case)
    ys = np.linspace(-0.95, 0.95, samples)
    values = eval_G(model, geom, n, ys, epsilon)
    slope, intercept = np.polyfit(ys, values, 1)
    residual = np.max(np.abs(values - (slope * ys + intercept)))
    scale = max(1.0, float(np.max(np.abs(values))))
    if residual > 1e-12 * scale:
        raise ModelNotTridiagonalError(f"G(y) is not linear (residual {residual:.3e})")
    rho = model.v0 / model.lam
    sigma = (model.m - epsilon) / (2 * model.lam) + (1 - (model.m + epsilon) / (2 * model.lam)) * a_index(n, model.case)
    if abs(rho - slope) > 1e-10 * scale or abs(sigma - intercept) > 1e-10 * scale:
        raise ModelNotTridiagonalError("fitted line disagrees with the closed-form slope/intercept")
    return LinearG(rho=rho, sigma=sigma, n=n)


def omega_matrix(mu, nu, size):
    """Tridiagonal matrix multiplying the kinetic-balance constant ``c`` in J."""
    JacobiParams(mu, nu)
    s = mu + nu
    diag = np.zeros(size)
    off = np.empty(size - 1)
    for n in range(1, size):
        diag[n] = (nu - mu) * n * (n + s + 1) / ((2 * n + s) * (2 * n + s + 2))
    for n in range(size - 1):
        num = (n + 1) * (n + mu + 1) * (n + nu + 1)
        # (n+s+1)/(2n+s+1) -> 1 at n = 0
        ratio = 1.0 if n == 0 else (n + s + 1) / (2 * n + s + 1)
        off[n] = -(s + 2) / (2 * n + s + 2) * math.sqrt(num * ratio / (2 * n + s + 3))
    return SymTridiagonal(diag, off)


def _position_matrix(model, size):
    return jacobi_matrix(JacobiParams(model.mu, model.nu), size)


def build_J(model: HalfSineModel, epsilon, size, exact=False):
    """Wave-operator matrix ``<phi_n|(H - epsilon)|phi_m>`` truncated to ``size``.

    By default the uniform closed form is used: diagonal
    ``(m - epsilon) + (2 lambda - m - epsilon) a_n`` and every coupling ``V0``.
    That form treats the ``n = 0`` row like the others. With ``exact=True``
    the potential enters through the exact position matrix of the orthonormal
    basis, which differs in the first row for cases ``mm``, ``mp`` and ``pm``
    (coupling ``sqrt(2) V0`` for ``mm``; a diagonal shift ``+-V0`` for ``mp``/``pm``).
    """
    n = np.arange(size)
    a = a_index(n, model.case)
    diag = (model.m - epsilon) + (2 * model.lam - model.m - epsilon) * a
    if not exact:
        return SymTridiagonal(diag, np.full(size - 1, float(model.v0)))
    y = _position_matrix(model, size)
    return SymTridiagonal(diag + 2 * model.v0 * y.diag, 2 * model.v0 * y.offdiag)


def build_T(model: HalfSineModel, size, exact=False):
    """Energy-independent symmetric matrix with eigenvalues ``(epsilon - m)/(2 lambda)``.

    Obtained from ``J f = 0`` by moving the energy to the left and rescaling
    ``g_n = sqrt((1 + a_n)/(1 + a_0)) f_n``. See :func:`build_J` for ``exact``.
    """
    n = np.arange(size + 1)
    a = a_index(n, model.case)
    ratio = 1 - model.m / model.lam
    scale = np.sqrt(1 + a)
    if not exact:
        diag = ratio * a[:size] / (1 + a[:size])
        off = (model.v0 / (2 * model.lam)) / (scale[:size - 1] * scale[1:size])
        return SymTridiagonal(diag, off)
    y = _position_matrix(model, size)
    diag = (ratio * a[:size] + model.v0 / model.lam * y.diag) / (1 + a[:size])
    off = model.v0 / model.lam * y.offdiag / (scale[:size - 1] * scale[1:size])
    return SymTridiagonal(diag, off)


def scaled_spectrum(model: HalfSineModel, size, k_max, exact=False, tol=1e-12):
    """Lowest ``k_max`` eigenvalues ``t_k = (epsilon_k - m)/(2 lambda)`` of :func:`build_T`."""
    if k_max > size:
        raise ValueError(f"k_max={k_max} exceeds matrix size {size}")
    return eigenvalues(build_T(model, size, exact), EigenRequest(k_max, tol))


def spectrum(model: HalfSineModel, size, k_max, exact=False):
    """Lowest ``k_max`` relativistic energies ``epsilon_k``."""
    return model.m + 2 * model.lam * scaled_spectrum(model, size, k_max, exact)


def diagonal_spectrum(model: HalfSineModel, n):
    """Closed-form energies for ``V0 = 0``."""
    if model.v0 != 0:
        raise MisuseError("the closed-form spectrum only holds for V0 = 0")
    a = a_index(n, model.case)
    return model.m + 2 * (model.lam - model.m) * a / (1 + a)


def nonrel_spectrum(model: HalfSineModel, n):
    return 2 * (model.lam - model.m) * a_index(n, model.case)


def nonrel_matrices(model: HalfSineModel, size):
    """The relativistic-limit recursion and its Schroedinger counterpart as matrices.

    The first matrix is ``E f_n = 2(lambda - m)(n+1)^2 f_n + V0 (f_{n-1} + f_{n+1})``
    for the model's own parameters. The second is
    ``E f_n = lambda'^2/2 (n+1)^2 f_n + V0'/2 (f_{n-1} + f_{n+1})`` where
    ``(lambda', V0')`` are the nonrelativistic parameters related to the model by
    ``lambda = m + (lambda'/2)^2`` and ``V0 = V0'/2``. The two agree entrywise.
    """
    if model.case != "pp":
        raise MisuseError("the (n+1)^2 recursion is stated for case pp")
    if not model.lam > model.m:
        raise MisuseError("the parameter map needs lambda > m")
    n = np.arange(size)
    rel = SymTridiagonal(2 * (model.lam - model.m) * (n + 1) ** 2, np.full(size - 1, float(model.v0)))
    lam_nr = 2 * math.sqrt(model.lam - model.m)
    v0_nr = 2 * model.v0
    schr = SymTridiagonal(0.5 * lam_nr ** 2 * (n + 1) ** 2, np.full(size - 1, 0.5 * v0_nr))
    return rel, schr


def _check_grid(model, xs):
    xs = np.asarray(xs, dtype=float)
    half = model.length / 2
    if np.any(np.abs(xs) > half * (1 + 1e-12)):
        raise ParameterDomainError("grid points must lie in [-L/2, L/2]")
    return xs


def basis_table(model: HalfSineModel, n_max, xs):
    """Upper and lower basis components for ``n = 0..n_max``, each of shape ``(n_max+1, len(xs))``.

    Closed Chebyshev forms of the orthonormal Jacobi spinors; the lower component
    is ``sqrt(1 - y^2) d(phi^+)/dy``. For case ``mm`` the ``n = 0`` element is
    ``1/sqrt(pi)``, the value that makes ``lambda int phi_0^2 dx = 1``.
    """
    xs = _check_grid(model, xs)
    y = np.clip(np.sin(model.lam * xs), -1.0, 1.0)
    cos_part = np.sqrt(np.clip(1 - y * y, 0.0, None))
    n = np.arange(n_max + 1)[:, None]
    root2pi = math.sqrt(2 / math.pi)
    rootpi = math.sqrt(math.pi)
    case = model.case
    if case == "mm":
        t = chebyshev_values(ChebyshevKind.FIRST, n_max, y)
        upper = root2pi * t
        upper[0] = 1 / rootpi
        lower = np.zeros_like(upper)
        if n_max >= 1:
            u = chebyshev_values(ChebyshevKind.SECOND, n_max - 1, y)
            lower[1:] = n[1:] * root2pi * cos_part * u
    elif case == "pp":
        u = chebyshev_values(ChebyshevKind.SECOND, n_max, y)
        t = chebyshev_values(ChebyshevKind.FIRST, n_max + 1, y)
        upper = root2pi * cos_part * u
        lower = -(n + 1) * root2pi * t[1:]
    elif case == "mp":
        v = chebyshev_values(ChebyshevKind.THIRD, n_max, y)
        w = chebyshev_values(ChebyshevKind.FOURTH, n_max, y)
        upper = np.sqrt(1 + y) * v / rootpi
        lower = (n + 0.5) / rootpi * np.sqrt(1 - y) * w
    else:
        v = chebyshev_values(ChebyshevKind.THIRD, n_max, y)
        w = chebyshev_values(ChebyshevKind.FOURTH, n_max, y)
        upper = np.sqrt(1 - y) * w / rootpi
        lower = -(n + 0.5) / rootpi * np.sqrt(1 + y) * v
    return upper, lower


def basis_spinor(model: HalfSineModel, n, xs):
    upper, lower = basis_table(model, n, xs)
    return SpinorSample(xs, upper[n], lower[n])


def _expand(model, t, size, xs, exact):
    mat = build_T(model, size, exact)
    g = eigenvector_twisted(mat, t)
    a = a_index(np.arange(size), model.case)
    f = np.sqrt((1 + a[0]) / (1 + a)) * g
    upper, lower = basis_table(model, size - 1, xs)
    return f, f @ upper, f @ lower


def reconstruct_spinor(model: HalfSineModel, k, xs, n_start=None, n_max=64, step=4,
                       tol=1e-8, exact=False):
    """Eigen-spinor ``psi^+-(x) = sum_n f_n phi_n^+-(x)`` for the ``k``-th level.

    The truncation grows from ``n_start`` (default ``max(16, 2k + 8)``) in steps
    of ``step`` until the sampled components change by less than ``tol`` in
    max-norm on two consecutive enlargements. The change is measured relative
    to ``max(1, max |psi|)`` since the overall scale is fixed by ``g_0 = 1``.
    At each size the eigenvalue is recomputed and the coefficients are the
    corresponding eigenvector, normalised to ``g_0 = 1``. The result is
    un-normalised.

    Raises
    ------
    TruncationError
        If the expansion has not stabilised by ``n_max``.
    """
    xs = _check_grid(model, xs)
    if model.v0 == 0:
        sample = basis_spinor(model, k, xs)
        coeffs = np.zeros(k + 1)
        coeffs[k] = 1.0
        t = (diagonal_spectrum(model, k) - model.m) / (2 * model.lam)
        return Eigenstate(k, t, model.m + 2 * model.lam * t, k + 1, coeffs, sample)
    size = n_start if n_start is not None else max(16, 2 * k + 8)
    if k >= size:
        raise ValueError(f"state index {k} needs a basis larger than {size}")
    previous = None
    stable = 0
    while size <= n_max:
        t = scaled_spectrum(model, size, k + 1, exact)[k]
        f, upper, lower = _expand(model, t, size, xs, exact)
        if previous is not None:
            change = max(np.max(np.abs(upper - previous[0])), np.max(np.abs(lower - previous[1])))
            amplitude = max(1.0, np.max(np.abs(upper)), np.max(np.abs(lower)))
            stable = stable + 1 if change < tol * amplitude else 0
            if stable == 2:
                sample = SpinorSample(xs, upper, lower)
                return Eigenstate(k, float(t), model.m + 2 * model.lam * float(t), size, f, sample)
        previous = (upper, lower)
        size += step
    raise TruncationError(f"level {k} did not stabilise by N = {n_max}")


def trial_energy_growth(model: HalfSineModel, t, sizes, xs):
    """Max amplitude of the partial sums at a trial ``t`` using the forward recursion.

    At a non-eigenvalue the amplitude keeps growing with the truncation; this
    is a diagnostic, not a supported way to build states.
    """
    xs = _check_grid(model, xs)
    out = []
    for size in sizes:
        g = solve_coeff_recursion(build_T(model, size + 1), t, size)
        a = a_index(np.arange(size + 1), model.case)
        f = np.sqrt((1 + a[0]) / (1 + a)) * g
        upper, _ = basis_table(model, size, xs)
        out.append(float(np.max(np.abs(f @ upper))))
    return np.array(out)


def count_nodes(values, floor=1e-10):
    """Strict sign changes in ``values`` after discarding entries below ``floor``."""
    values = np.asarray(values, dtype=float)
    kept = values[np.abs(values) >= floor]
    return int(np.count_nonzero(np.sign(kept[1:]) != np.sign(kept[:-1])))


def node_grid(model: HalfSineModel, points=2001):
    """Uniform grid of ``points`` interior coordinates of ``(-L/2, L/2)``."""
    half = model.length / 2
    return np.linspace(-half, half, points + 2)[1:-1]


def jmatrix_quadrature_oracle(model: HalfSineModel, epsilon, n, m_idx, geom=None, nodes=128):
    """``J_{n,m}`` from direct quadrature of ``2 lambda A_n A_m int w G P_n P_m dy``.

    Uses ``y = cos(phi)`` so the endpoint factors of the weight combine with
    ``sin(phi)`` into ``(1 - y)^{mu+1/2}(1 + y)^{nu+1/2}``, then Gauss-Legendre in
    ``phi``. The result is compared with a rule twice as large.
    """
    if abs(n - m_idx) > 3:
        raise OracleError("oracle scope is limited to |n - m| <= 3")
    geom = geom or solve_basis_geometry(model.case)
    p = JacobiParams(geom.mu, geom.nu)

    def integrate(count):
        t, w = roots_legendre(count)
        phi = (t + 1) * math.pi / 2
        w = w * math.pi / 2
        y = np.cos(phi)
        weight = (1 - y) ** (p.mu + 0.5) * (1 + y) ** (p.nu + 0.5)
        polys = jacobi_values(max(n, m_idx), p, y)
        g = eval_G(model, geom, n, y, epsilon)
        return float(np.sum(w * weight * g * polys[n] * polys[m_idx]))

    coarse, fine = integrate(nodes), integrate(2 * nodes)
    if abs(coarse - fine) > 1e-11 * max(1.0, abs(fine)):
        raise OracleError("quadrature did not converge")
    value = 2 * model.lam * jacobi_norm(n, p) * jacobi_norm(m_idx, p) * fine
    if geom.c:
        omega = omega_matrix(p.mu, p.nu, max(n, m_idx) + 1).to_dense()
        value += 2 * geom.c * model.lam * omega[n, m_idx]
    return value
