"""Classical orthogonal polynomials evaluated by forward three-term recurrence.

Families covered: Jacobi ``P_n^(mu,nu)``, the four Chebyshev kinds, generalized
Laguerre ``L_n^nu`` and the orthonormal Meixner-Pollaczek ``P_n^mu(x; theta)``.
All evaluators accept scalars or arrays for the argument and broadcast.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, poch

from .errors import ParameterDomainError
from .tridiag import SymTridiagonal

__all__ = [
    "JacobiParams",
    "ChebyshevKind",
    "LaguerreParams",
    "MeixnerPollaczekParams",
    "jacobi_values",
    "eval_jacobi",
    "chebyshev_values",
    "eval_chebyshev",
    "laguerre_values",
    "eval_laguerre",
    "meixner_pollaczek_values",
    "eval_meixner_pollaczek",
    "meixner_pollaczek_explicit",
    "jacobi_norm",
    "laguerre_norm",
    "jacobi_matrix",
]

# slack for round-off when a caller hands in sin(x) evaluated at the interval ends
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class JacobiParams:
    mu: float
    nu: float

    def __post_init__(self):
        if not (self.mu > -1 and self.nu > -1):
            raise ParameterDomainError(
                f"Jacobi exponents must exceed -1, got mu={self.mu}, nu={self.nu}")


class ChebyshevKind(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"
    FOURTH = "fourth"


@dataclass(frozen=True)
class LaguerreParams:
    nu: float

    def __post_init__(self):
        if not self.nu > -1:
            raise ParameterDomainError(f"Laguerre order must exceed -1, got nu={self.nu}")


@dataclass(frozen=True)
class MeixnerPollaczekParams:
    mu: float
    theta: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ParameterDomainError(f"Meixner-Pollaczek mu must be positive, got {self.mu}")
        if not 0 < self.theta < math.pi:
            raise ParameterDomainError(
                f"Meixner-Pollaczek theta must lie strictly inside (0, pi), got {self.theta}")


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ParameterDomainError(f"degree must be a non-negative integer, got {n}")
    return int(n)


def _unwrap(values, scalar):
    return float(values) if scalar else values


def _unit_interval(y):
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) > 1 + _EDGE_SLACK):
        raise ParameterDomainError("argument must lie in [-1, 1]")
    return np.clip(y, -1.0, 1.0)


def jacobi_values(n_max, p: JacobiParams, y):
    """Return ``P_0 .. P_{n_max}`` at ``y`` stacked along the first axis."""
    n_max = _check_degree(n_max)
    y = _unit_interval(y)
    mu, nu = p.mu, p.nu
    s = mu + nu
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = ((s + 2) * y + mu - nu) / 2
    for n in range(1, n_max):
        # y P_n = c P_n + d P_{n-1} + e P_{n+1}
        c = (nu * nu - mu * mu) / ((2 * n + s) * (2 * n + s + 2))
        d = 2 * (n + mu) * (n + nu) / ((2 * n + s) * (2 * n + s + 1))
        e = 2 * (n + 1) * (n + s + 1) / ((2 * n + s + 1) * (2 * n + s + 2))
        out[n + 1] = ((y - c) * out[n] - d * out[n - 1]) / e
    return out


def eval_jacobi(n, p: JacobiParams, y):
    """Jacobi polynomial ``P_n^(mu,nu)(y)`` on ``[-1, 1]``.

    >>> eval_jacobi(1, JacobiParams(-0.5, -0.5), 0.6)
    0.3
    """
    scalar = np.ndim(y) == 0
    return _unwrap(jacobi_values(n, p, y)[-1], scalar)


_CHEBYSHEV_SEED = {
    ChebyshevKind.FIRST: (1.0, 0.0),
    ChebyshevKind.SECOND: (2.0, 0.0),
    ChebyshevKind.THIRD: (2.0, -1.0),
    ChebyshevKind.FOURTH: (2.0, 1.0),
}


def chebyshev_values(kind, n_max, y):
    """Return Chebyshev polynomials of the given kind, degrees ``0..n_max``."""
    kind = ChebyshevKind(kind)
    n_max = _check_degree(n_max)
    y = _unit_interval(y)
    slope, shift = _CHEBYSHEV_SEED[kind]
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = slope * y + shift
    for n in range(1, n_max):
        out[n + 1] = 2 * y * out[n] - out[n - 1]
    return out


def eval_chebyshev(kind, n, y):
    """``T_n``, ``U_n``, ``V_n`` or ``W_n`` at ``y`` for kind first..fourth."""
    scalar = np.ndim(y) == 0
    return _unwrap(chebyshev_values(kind, n, y)[-1], scalar)


def laguerre_values(n_max, p: LaguerreParams, y):
    """Return generalized Laguerre polynomials ``L_0^nu .. L_{n_max}^nu`` at ``y``."""
    n_max = _check_degree(n_max)
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ParameterDomainError("Laguerre argument must be non-negative")
    nu = p.nu
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = nu + 1 - y
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + nu + 1 - y) * out[n] - (n + nu) * out[n - 1]) / (n + 1)
    return out


def eval_laguerre(n, p: LaguerreParams, y):
    scalar = np.ndim(y) == 0
    return _unwrap(laguerre_values(n, p, y)[-1], scalar)


def meixner_pollaczek_values(n_max, p: MeixnerPollaczekParams, x):
    """Orthonormal Meixner-Pollaczek polynomials, degrees ``0..n_max``.

    Generated from ``P_0 = 1`` by the symmetric recurrence

        x sin(theta) P_n = -(n + mu) cos(theta) P_n
                           + 1/2 sqrt(n (n + 2mu - 1)) P_{n-1}
                           + 1/2 sqrt((n + 1)(n + 2mu)) P_{n+1}
    """
    n_max = _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    mu, theta = p.mu, p.theta
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    for n in range(n_max):
        lower = 0.5 * math.sqrt(n * (n + 2 * mu - 1)) * out[n - 1] if n > 0 else 0.0
        upper = 0.5 * math.sqrt((n + 1) * (n + 2 * mu))
        out[n + 1] = ((x * sin_t + (n + mu) * cos_t) * out[n] - lower) / upper
    return out


def eval_meixner_pollaczek(n, p: MeixnerPollaczekParams, x):
    scalar = np.ndim(x) == 0
    return _unwrap(meixner_pollaczek_values(n, p, x)[-1], scalar)


def meixner_pollaczek_explicit(n, p: MeixnerPollaczekParams, x):
    """Orthonormal Meixner-Pollaczek value from the terminating 2F1 sum.

    Uses ``P_n = (2mu)_n/n! e^{i n theta} 2F1(-n, mu + i x; 2mu; 1 - e^{-2 i theta})``
    rescaled by ``sqrt(n!/(2mu)_n)``. Independent of the recurrence above and
    intended as a check for low degrees only.
    """
    n = _check_degree(n)
    mu, theta = p.mu, p.theta
    z = 1 - np.exp(-2j * theta)
    a = mu + 1j * x
    total = 0j
    for j in range(n + 1):
        # (-n)_j (a)_j / ((2mu)_j j!)
        coef = math.comb(n, j) * (-1) ** j
        rising_a = 1 + 0j
        for i in range(j):
            rising_a *= a + i
        total += coef * rising_a / poch(2 * mu, j) * z ** j
    value = poch(2 * mu, n) / math.factorial(n) * np.exp(1j * n * theta) * total
    return float(value.real * math.sqrt(math.factorial(n) / poch(2 * mu, n)))


def jacobi_norm(n, p: JacobiParams):
    """Normalization ``A_n`` making ``A_n (1-y)^{mu/2}(1+y)^{nu/2} P_n`` orthonormal.

    Computed in log space. The product ``(2n+s+1) Gamma(n+s+1)`` with
    ``s = mu + nu`` is rewritten as ``Gamma(n+s+2) (2n+s+1)/(n+s+1)`` so that
    the ``n = 0, s = -1`` case takes its finite limit.
    """
    n = _check_degree(n)
    mu, nu = p.mu, p.nu
    s = mu + nu
    ratio = 1.0 if n == 0 else (2 * n + s + 1) / (n + s + 1)
    log_sq = (math.log(ratio) + gammaln(n + s + 2) + gammaln(n + 1)
              - (s + 1) * math.log(2) - gammaln(n + nu + 1) - gammaln(n + mu + 1))
    return math.exp(0.5 * log_sq)


def laguerre_norm(n, p: LaguerreParams):
    """``A_n = sqrt(Gamma(n+1)/Gamma(n+nu+1))``."""
    n = _check_degree(n)
    return math.exp(0.5 * (gammaln(n + 1) - gammaln(n + p.nu + 1)))


def jacobi_matrix(p: JacobiParams, size):
    """Matrix of multiplication by ``y`` in the orthonormal Jacobi basis.

    Entries follow from the recurrence with the ``n = 0`` rows taken as limits:
    the diagonal ``(nu^2 - mu^2)/((2n+s)(2n+s+2))`` becomes ``(nu - mu)/(s + 2)``
    and the coupling ``(n + s + 1)/(2n + s + 1)`` factor becomes 1.
    """
    if size < 1:
        raise ParameterDomainError("size must be at least 1")
    mu, nu = p.mu, p.nu
    s = mu + nu
    diag = np.empty(size)
    off = np.empty(size - 1)
    for n in range(size):
        if n == 0:
            diag[n] = (nu - mu) / (s + 2)
        else:
            diag[n] = (nu * nu - mu * mu) / ((2 * n + s) * (2 * n + s + 2))
    for n in range(size - 1):
        if n == 0:
            inner = (mu + 1) * (nu + 1) / (s + 3)
        else:
            inner = ((n + 1) * (n + mu + 1) * (n + nu + 1) * (n + s + 1)
                     / ((2 * n + s + 1) * (2 * n + s + 3)))
        off[n] = 2 / (2 * n + s + 2) * math.sqrt(inner)
    return SymTridiagonal(diag, off)
