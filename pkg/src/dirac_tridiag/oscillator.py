"""Laguerre-basis model: spin-symmetric oscillator with a pseudo-scalar ``gamma/x`` term.

Coordinates ``x > 0`` are mapped to ``y = lambda^2 x^2 / 4``. The potentials are
``V = S = V0 y`` and ``W(x) = gamma/x + tau lambda^2 x / 2``. The basis order is
``nu = +-(gamma + 1/2)``, selected by ``nu_sign``.

Throughout, ``Q = 1 - (m + epsilon)/(2 lambda)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_genlaguerre

from .errors import (DegenerateRecursionError, MisuseError, OracleError, ParameterDomainError,
                     RootNotFoundError)
from .halfsine import LinearG, SpinorSample
from .orthopoly import (LaguerreParams, MeixnerPollaczekParams, laguerre_norm, laguerre_values,
                        meixner_pollaczek_values)
from .tridiag import SymTridiagonal, negative_count


@dataclass(frozen=True)
class OscillatorModel:
    m: float
    lam: float
    v0: float
    gamma: float
    tau: float
    nu_sign: str = "plus"

    def __post_init__(self):
        if self.nu_sign not in ("plus", "minus"):
            raise ParameterDomainError("nu_sign must be 'plus' or 'minus'")
        if not self.lam > 0:
            raise ParameterDomainError("lambda must be positive")
        if not self.nu > -1:
            raise ParameterDomainError(f"basis order nu = {self.nu} must exceed -1")

    @property
    def nu(self):
        base = self.gamma + 0.5
        return base if self.nu_sign == "plus" else -base

    # only the difference c_hat - c = tau matters; c is fixed to zero
    @property
    def c_hat(self):
        return self.tau

    @property
    def xi(self):
        return self.c_hat ** 2

    @property
    def eta(self):
        return self.c_hat * (self.gamma - 0.5)

    def q_factor(self, epsilon):
        return 1 - (self.m + epsilon) / (2 * self.lam)


@dataclass(frozen=True)
class LaguerreGeometry:
    nu: float
    a: float = 0.5
    b: float = 0.0

    @property
    def alpha(self):
        return (self.nu + 1 - self.a) / 2

    @property
    def beta(self):
        return (1 - self.b) / 2


def laguerre_geometry(model: OscillatorModel):
    return LaguerreGeometry(model.nu)


def build_J_osc(model: OscillatorModel, epsilon, size):
    q = model.q_factor(epsilon)
    lam, nu, tau = model.lam, model.nu, model.tau
    n = np.arange(size)
    diag = (model.m - epsilon + lam * tau * (2 * model.gamma - 1) * q
            + (n + (nu + 1) / 2) * (4 * model.v0 + lam * (4 * tau ** 2 + 1) * q))
    k = n[:-1]
    off = -0.5 * (4 * model.v0 + lam * (4 * tau ** 2 - 1) * q) * np.sqrt((k + 1) * (k + nu + 1))
    return SymTridiagonal(diag, off)


def _require_diagonal(model):
    if model.v0 != 0 or model.tau != 0.5:
        raise MisuseError("the diagonal spectrum holds only for V0 = 0 and tau = 1/2")


def _diagonal_shift(model, n):
    # n + (nu + gamma + 1/2)/2
    return n + 0.5 * (model.nu + model.gamma + 0.5)


def diag_spectrum_osc(model: OscillatorModel, n):
    """Closed-form energy of level ``n`` when ``V0 = 0`` and ``tau = 1/2``."""
    _require_diagonal(model)
    s = _diagonal_shift(model, n)
    return model.m + 2 * (model.lam - model.m) * s / (1 + s)


def nonrel_spectrum_osc(model: OscillatorModel, n):
    return 2 * (model.lam - model.m) * _diagonal_shift(model, n)


def _recursion_coefficients(model, epsilon, n):
    energy = epsilon - model.m
    q = model.q_factor(epsilon)
    lam, tau = model.lam, model.tau
    lhs = 2 * energy / lam - 2 * tau * (2 * model.gamma - 1) * q
    diag = (4 * model.v0 / lam + (4 * tau ** 2 + 1) * q) * (2 * n + model.nu + 1)
    couple = 4 * model.v0 / lam + (4 * tau ** 2 - 1) * q
    return lhs, diag, couple


def _b(model, n):
    return math.sqrt((n + 1) * (n + model.nu + 1)) if n >= 0 else 0.0


def recursion_row_osc(model: OscillatorModel, epsilon, n, f_prev, f_cur):
    """Solve the ``n``-th expansion-coefficient recursion row for ``f_{n+1}``.

    Row ``n`` is ``L f_n = D a_n f_n - C (b_{n-1} f_{n-1} + b_n f_{n+1})`` with
    ``a_n = 2n + nu + 1``, ``b_n = sqrt((n+1)(n+nu+1))`` and the energy entering
    through ``Q`` exactly as in :func:`build_J_osc`. ``f_prev`` is ignored at ``n = 0``.
    """
    lhs, diag, couple = _recursion_coefficients(model, epsilon, n)
    if couple == 0:
        raise DegenerateRecursionError("the coupling coefficient vanishes; the recursion is diagonal")
    prev = _b(model, n - 1) * f_prev if n > 0 else 0.0
    return ((diag - lhs) * f_cur / couple - prev) / _b(model, n)


def recursion_residual_osc(model: OscillatorModel, epsilon, n, f_prev, f_cur, f_next):
    lhs, diag, couple = _recursion_coefficients(model, epsilon, n)
    prev = _b(model, n - 1) * f_prev if n > 0 else 0.0
    return lhs * f_cur - diag * f_cur + couple * (prev + _b(model, n) * f_next)


def forward_coefficients_osc(model: OscillatorModel, epsilon, n_max):
    """``f_0 .. f_{n_max}`` from ``f_0 = 1`` by repeated :func:`recursion_row_osc`."""
    f = np.empty(n_max + 1)
    f[0] = 1.0
    for n in range(n_max):
        f[n + 1] = recursion_row_osc(model, epsilon, n, f[n - 1] if n else 0.0, f[n])
    return f


def mp_angle(model: OscillatorModel, epsilon):
    """``(theta, z)`` that put the ``tau = 0`` recursion in Meixner-Pollaczek form.

    Dividing the row by ``P - Q`` (``P = 4 V0/lambda``) gives
    ``z sin(theta) f_n = (2n + nu + 1) cos(theta) f_n - b_{n-1} f_{n-1} - b_n f_{n+1}``
    with ``cos(theta) = (P + Q)/(P - Q)`` and ``z sin(theta) = (2 E/lambda)/(P - Q)``,
    ``E = epsilon - m``. A real angle needs ``V0 > 0`` and ``E > 2(lambda - m)``.
    """
    if model.tau != 0:
        raise MisuseError("the Meixner-Pollaczek form needs tau = 0")
    if not model.v0 > 0:
        raise ParameterDomainError("the Meixner-Pollaczek form needs V0 > 0")
    p = 4 * model.v0 / model.lam
    q = model.q_factor(epsilon)
    cos_t = (p + q) / (p - q)
    if not -1 < cos_t < 1:
        raise ParameterDomainError(
            f"cos(theta) = {cos_t:.6g} is outside (-1, 1); the energy is not admissible")
    theta = math.acos(cos_t)
    z = (2 * (epsilon - model.m) / model.lam) / (p - q) / math.sin(theta)
    return theta, z


def closed_form_mp_angle(model: OscillatorModel, epsilon):
    """``(cos(theta), z)`` from the closed forms written in terms of ``w = m - lambda + E/2``."""
    energy = epsilon - model.m
    w = model.m - model.lam + energy / 2
    cos_t = (4 * model.v0 - w) / (4 * model.v0 + w)
    z = energy / (2 * math.sqrt(model.v0 * w))
    return cos_t, z


def angle_form_coefficients(model: OscillatorModel, epsilon, n_max):
    """Forward solution of the Meixner-Pollaczek-form recursion from ``f_0 = 1``."""
    theta, z = mp_angle(model, epsilon)
    cos_t, zs = math.cos(theta), z * math.sin(theta)
    nu = model.nu
    f = np.empty(n_max + 1)
    f[0] = 1.0
    for n in range(n_max):
        prev = math.sqrt(n * (n + nu)) * f[n - 1] if n else 0.0
        f[n + 1] = ((2 * n + nu + 1) * cos_t * f[n] - zs * f[n] - prev) / math.sqrt((n + 1) * (n + nu + 1))
    return f


def mp_coefficients(model: OscillatorModel, epsilon, n_max):
    """``f_n = P_n^{(nu+1)/2}(-z/2; theta)`` for ``n = 0..n_max``."""
    theta, z = mp_angle(model, epsilon)
    params = MeixnerPollaczekParams((model.nu + 1) / 2, theta)
    return meixner_pollaczek_values(n_max, params, -z / 2)


def _check_positive(xs):
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0):
        raise ParameterDomainError("the Laguerre basis is defined for x > 0 only")
    return xs


def basis_table_osc(model: OscillatorModel, n_max, xs):
    """Upper and lower components for ``n = 0..n_max`` on ``x > 0``.

    ``phi_n^+ = A_n y^alpha e^{-y/2} L_n^nu(y)`` with ``alpha = (nu + 1/2)/2``;
    ``phi_n^- = (1/lambda)(d/dx + R) phi_n^+`` with ``R = gamma/x + tau lambda^2 x/2``.
    The derivative of ``L_n`` uses ``y L_n' = n L_n - (n + nu) L_{n-1}``.
    """
    xs = _check_positive(xs)
    lam, nu = model.lam, model.nu
    geom = laguerre_geometry(model)
    y = lam * lam * xs * xs / 4
    p = LaguerreParams(nu)
    lag = laguerre_values(n_max, p, y)
    norms = np.array([laguerre_norm(n, p) for n in range(n_max + 1)])[:, None]
    envelope = y ** geom.alpha * np.exp(-geom.beta * y)
    upper = norms * envelope * lag
    n = np.arange(n_max + 1)[:, None]
    lag_prev = np.vstack([np.zeros_like(y)[None, :], lag[:-1]])
    y_dlag = n * lag - (n + nu) * lag_prev
    # d/dy of y^alpha e^{-beta y} L_n, multiplied by y
    y_dupper = norms * envelope * ((geom.alpha - geom.beta * y) * lag + y_dlag)
    dydx = lam * lam * xs / 2
    r = model.gamma / xs + 0.5 * model.tau * lam * lam * xs
    lower = (dydx * y_dupper / y + r * upper) / lam
    return upper, lower


def basis_spinor_osc(model: OscillatorModel, n, xs):
    upper, lower = basis_table_osc(model, n, xs)
    return SpinorSample(xs, upper[n], lower[n])


def eval_G_osc(model: OscillatorModel, geom: LaguerreGeometry, n, y, epsilon):
    """``G(y)`` with ``a = 1/2``, ``b = 0``, ``c = 0`` and ``R = W``.

    The ``(R^2 - R')/lambda^2`` term is evaluated from ``R(x)`` itself at
    ``x = 2 sqrt(y)/lambda``; its ``1/y`` part cancels the centrifugal term.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ParameterDomainError("G is evaluated for y > 0")
    lam, m = model.lam, model.m
    x = 2 * np.sqrt(y) / lam
    r = model.gamma / x + 0.5 * model.tau * lam * lam * x
    dr = -model.gamma / x ** 2 + 0.5 * model.tau * lam * lam
    q = model.q_factor(epsilon)
    bracket = ((r * r - dr) / lam ** 2 + (n + (geom.nu - geom.alpha * geom.b + 1) / 2)
               - (geom.nu ** 2 - (geom.a - 1) ** 2) / (4 * y) + (geom.b ** 2 - 1) / 4 * y)
    value = (2 * model.v0 * y + m - epsilon) / (2 * lam) + q * bracket
    return float(value) if value.ndim == 0 else value


def linear_G_osc(model: OscillatorModel, n, epsilon):
    q = model.q_factor(epsilon)
    rho = model.v0 / model.lam + q * (model.tau ** 2 - 0.25)
    sigma = ((model.m - epsilon) / (2 * model.lam)
             + q * (model.tau * (model.gamma - 0.5) + n + (model.nu + 1) / 2))
    return LinearG(rho=rho, sigma=sigma, n=n)


def jmatrix_quadrature_oracle_osc(model: OscillatorModel, epsilon, n, m_idx, nodes=64):
    """``J_{n,m} = 2 lambda A_n A_m int y^nu e^{-y} G L_n L_m dy`` by Gauss-Laguerre quadrature."""
    if abs(n - m_idx) > 3:
        raise OracleError("oracle scope is limited to |n - m| <= 3")
    geom = laguerre_geometry(model)
    p = LaguerreParams(model.nu)
    ys, ws = roots_genlaguerre(nodes, model.nu)
    lag = laguerre_values(max(n, m_idx), p, ys)
    g = eval_G_osc(model, geom, n, ys, epsilon)
    integral = float(np.sum(ws * g * lag[n] * lag[m_idx]))
    return 2 * model.lam * laguerre_norm(n, p) * laguerre_norm(m_idx, p) * integral


def _negative_counts(model, epsilons, size):
    q = 1 - (model.m + epsilons) / (2 * model.lam)
    lam, nu, tau = model.lam, model.nu, model.tau
    n = np.arange(size)
    diag = (model.m - epsilons[:, None] + (lam * tau * (2 * model.gamma - 1) * q)[:, None]
            + (n + (nu + 1) / 2) * (4 * model.v0 + lam * (4 * tau ** 2 + 1) * q)[:, None])
    k = n[:-1]
    off = (-0.5 * (4 * model.v0 + lam * (4 * tau ** 2 - 1) * q))[:, None] * np.sqrt((k + 1) * (k + nu + 1))
    return negative_count(diag, off)


def spectrum_osc(model: OscillatorModel, size, k_max, samples=2000, tol=1e-12, window=None):
    """Lowest ``k_max`` roots of ``det J(epsilon) = 0`` on the ``size``-row truncation.

    J depends linearly on ``epsilon``. The number of negative eigenvalues of
    ``J(epsilon)`` is tabulated on ``samples`` points of the window (default
    ``(-m - 2 lambda, m + 2 lambda)``); it steps by one at each root. Every step
    is then refined by bisection on the same count.
    """
    if k_max > size:
        raise ValueError(f"k_max={k_max} exceeds matrix size {size}")
    lo, hi = window if window is not None else (-model.m - 2 * model.lam, model.m + 2 * model.lam)
    grid = np.linspace(lo, hi, samples)
    counts = _negative_counts(model, grid, size)
    base = counts[0]
    roots = []
    for k in range(k_max):
        target = base + k + 1
        above = np.nonzero(counts >= target)[0]
        if above.size == 0 or above[0] == 0:
            raise RootNotFoundError(f"level {k} not found in the window ({lo}, {hi})")
        a, b = grid[above[0] - 1], grid[above[0]]
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if _negative_counts(model, np.array([mid]), size)[0] >= target:
                b = mid
            else:
                a = mid
        roots.append(0.5 * (a + b))
    return np.array(roots)
