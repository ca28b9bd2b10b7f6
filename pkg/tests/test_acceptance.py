"""Acceptance criteria, one test per criterion.

Each test records its measured quantities through the ``criterion`` fixture; a
PASS/FAIL line per criterion is printed in the terminal summary. Run on its own
with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""
import math
import sys
import time

import numpy as np
from scipy.special import roots_genlaguerre, roots_legendre

from _numdiff import d1, d1_d2, scaled
from dirac_tridiag import halfsine as hs
from dirac_tridiag import oscillator as osc
from dirac_tridiag.orthopoly import (JacobiParams, LaguerreParams, MeixnerPollaczekParams,
                                     eval_chebyshev, eval_jacobi, eval_laguerre, jacobi_norm, laguerre_norm,
                                     laguerre_values, jacobi_values, meixner_pollaczek_explicit)
from dirac_tridiag.tridiag import SymTridiagonal, eigenvalues, eigenvalues_dense_oracle

TABLE_SIZES = (10, 15, 20, 30)
REFERENCE_TABLE = np.array([
    [-0.1180273824, -0.1180273824, -0.1180273824, -0.1180273824],
    [0.0957203979, 0.0957203979, 0.0957203979, 0.0957203979],
    [0.1410291052, 0.1410291051, 0.1410291051, 0.1410291051],
    [0.1540674139, 0.1540664762, 0.1540664762, 0.1540664762],
    [0.1594092708, 0.1592706381, 0.1592706381, 0.1592706381],
    [0.1631558065, 0.1618247923, 0.1618246774, 0.1618246774],
    [0.1668739393, 0.1632721765, 0.1632573337, 0.1632573337],
    [0.1700465453, 0.1643388284, 0.1641386243, 0.1641386049],
    [0.1764243575, 0.1654457643, 0.1647206731, 0.1647183588],
    [0.2293185740, 0.1665645929, 0.1651610351, 0.1651197049],
])
TABLE_MODEL = hs.HalfSineModel(1.0, 1.2, 0.5, "mm")

# documented node rule: (upper, lower) interior node counts for state k >= 1
NODE_RULE = {
    "mm": lambda k: (k + 1, k),
    "pp": lambda k: (k + 1, k + 2),
    "mp": lambda k: (k + 1, k + 1),
    "pm": lambda k: (k + 1, k + 1),
}


def _fmt(x):
    return f"{x:.2e}"


def test_criterion_01_table_reproduction(criterion):
    criterion.start(1, "convergence table reproduction")
    start = time.perf_counter()
    table = np.column_stack([hs.scaled_spectrum(TABLE_MODEL, n, 10) for n in TABLE_SIZES])
    elapsed = time.perf_counter() - start
    err = float(np.max(np.abs(table - REFERENCE_TABLE)))
    ok1 = criterion.check("max |computed - reference| over 40 entries", err <= 5e-10, f"{_fmt(err)} (tol 5e-10)")
    ok2 = criterion.check("runtime", elapsed < 1.0, f"{elapsed:.3f} s (limit 1 s)")
    assert ok1 and ok2


def test_criterion_02_closed_form_diagonal_spectra(criterion):
    criterion.start(2, "closed-form diagonal spectra")
    worst_hs = 0.0
    for case in hs.CASES:
        model = hs.HalfSineModel(1.0, 1.2, 0.0, case)
        t = hs.scaled_spectrum(model, 21, 21)
        closed = (np.array([hs.diagonal_spectrum(model, n) for n in range(21)]) - model.m) / (2 * model.lam)
        worst_hs = max(worst_hs, float(np.max(np.abs(t - closed))))
    worst_osc = 0.0
    for sign, gamma in (("plus", 0.7), ("minus", 0.2), ("plus", 0.0)):
        model = osc.OscillatorModel(1.0, 1.2, 0.0, gamma, 0.5, sign)
        roots = osc.spectrum_osc(model, 30, 11)
        closed = np.array([osc.diag_spectrum_osc(model, n) for n in range(11)])
        worst_osc = max(worst_osc, float(np.max(np.abs(roots - closed))))
    ok1 = criterion.check("half-sine V0=0, n<=20, all cases", worst_hs <= 1e-12, f"{_fmt(worst_hs)} (tol 1e-12)")
    ok2 = criterion.check("oscillator V0=0 tau=1/2, n<=10, both branches", worst_osc <= 1e-10,
                          f"{_fmt(worst_osc)} (tol 1e-10)")
    assert ok1 and ok2


def test_criterion_03_sign_and_degeneracy(criterion):
    criterion.start(3, "V0 sign symmetry and mp/pm degeneracy")
    worst_sign = 0.0
    identical = True
    for v0 in (0.1, 0.5, 1.3, 2.7):
        for case in hs.CASES:
            plus = hs.scaled_spectrum(hs.HalfSineModel(1.0, 1.5, v0, case), 30, 10)
            minus = hs.scaled_spectrum(hs.HalfSineModel(1.0, 1.5, -v0, case), 30, 10)
            worst_sign = max(worst_sign, float(np.max(np.abs(plus - minus))))
        t_mp = hs.build_T(hs.HalfSineModel(1.0, 1.5, v0, "mp"), 30)
        t_pm = hs.build_T(hs.HalfSineModel(1.0, 1.5, v0, "pm"), 30)
        identical &= bool(np.array_equal(t_mp.diag, t_pm.diag) and np.array_equal(t_mp.offdiag, t_pm.offdiag))
        identical &= bool(np.array_equal(hs.spectrum(hs.HalfSineModel(1.0, 1.5, v0, "mp"), 30, 10),
                                         hs.spectrum(hs.HalfSineModel(1.0, 1.5, v0, "pm"), 30, 10)))
    ok1 = criterion.check("spectrum(V0) vs spectrum(-V0)", worst_sign <= 1e-12, f"{_fmt(worst_sign)} (tol 1e-12)")
    ok2 = criterion.check("mp and pm matrices and spectra bitwise equal", identical, str(identical))
    assert ok1 and ok2


def test_criterion_04_nonrelativistic_map(criterion):
    criterion.start(4, "nonrelativistic parameter map")
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(10):
        m = rng.uniform(0.1, 3.0)
        model = hs.HalfSineModel(m, m + rng.uniform(1e-3, 3.0), rng.uniform(-3, 3), "pp")
        for size in (1, 5, 12, 20):
            rel, schr = hs.nonrel_matrices(model, size)
            a, b = rel.to_dense(), schr.to_dense()
            worst = max(worst, float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a)))))
    ok = criterion.check("entrywise relative difference, N<=20, 10 draws", worst <= 1e-14,
                         f"{_fmt(worst)} (tol 1e-14)")
    assert ok


def _quadrature_gap(exact):
    worst, where = 0.0, None
    for case in hs.CASES:
        for eps in (0.6, 1.0, 1.35):
            model = hs.HalfSineModel(1.0, 1.2, 0.5, case)
            dense = hs.build_J(model, eps, 9, exact=exact).to_dense()
            for n in range(9):
                for k in range(9):
                    if abs(n - k) <= 3:
                        gap = abs(dense[n, k] - hs.jmatrix_quadrature_oracle(model, eps, n, k))
                        if gap > worst:
                            worst, where = gap, (case, n, k)
    return worst, where


def test_criterion_05_quadrature_oracle(criterion):
    criterion.start(5, "closed-form J against quadrature, n,m<=8, all cases")
    worst, where = _quadrature_gap(exact=False)
    ok = criterion.check("closed-form J", worst <= 1e-10, f"{_fmt(worst)} (tol 1e-10), worst at case/n/m {where}")
    worst_exact, _ = _quadrature_gap(exact=True)
    criterion.check("exact n=0 limits (reference)", worst_exact <= 1e-10, f"{_fmt(worst_exact)}")
    assert ok


def test_criterion_06_eigensolver_oracle(criterion):
    criterion.start(6, "Sturm bisection against dense oracle")
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        size = int(rng.integers(1, 9))
        mat = SymTridiagonal(rng.uniform(-1, 1, size), rng.uniform(-1, 1, size - 1))
        worst = max(worst, float(np.max(np.abs(eigenvalues(mat) - eigenvalues_dense_oracle(mat)))))
    ok = criterion.check("100 random matrices, N<=8", worst <= 1e-10, f"{_fmt(worst)} (tol 1e-10)")
    assert ok


def _theta_grid(lam, count=128):
    # y = cos(theta) on (0, pi); lambda dx = dy / sqrt(1 - y^2) = -d theta
    t, w = roots_legendre(count)
    theta = (t + 1) * math.pi / 2
    xs = np.arcsin(np.cos(theta)) / lam
    order = np.argsort(xs)
    return xs[order], (w * math.pi / 2)[order]


_TABLE_BOUNDARY = {
    # (upper at -L/2, upper at +L/2), (lower at -L/2, lower at +L/2); True means nonzero
    "mm": ((True, True), (False, False)),
    "pp": ((False, False), (True, True)),
    "mp": ((False, True), (True, False)),
    "pm": ((True, False), (False, True)),
}


def test_criterion_07_basis_contract(criterion):
    criterion.start(7, "basis orthonormality, boundary pattern, kinetic balance, Chebyshev identities")
    worst_orth, pattern_ok, worst_kb = 0.0, True, 0.0
    for case in hs.CASES:
        model = hs.HalfSineModel(1.0, 1.2, 0.5, case)
        xs, w = _theta_grid(model.lam)
        upper, _ = hs.basis_table(model, 8, xs)
        gram = (upper * w) @ upper.T
        worst_orth = max(worst_orth, float(np.max(np.abs(gram - np.eye(9)))))
        half = model.length / 2
        up_b, lo_b = hs.basis_table(model, 8, np.array([-half, half]))
        (u_l, u_r), (l_l, l_r) = _TABLE_BOUNDARY[case]
        for n in range(9):
            for got, want in ((up_b[n, 0], u_l), (up_b[n, 1], u_r), (lo_b[n, 0], l_l), (lo_b[n, 1], l_r)):
                # the n = 0 lower component of mm is identically zero
                pattern_ok &= (abs(got) > 1e-3) == want or (case == "mm" and n == 0 and not want)
        h = 1e-5 * model.length
        inner = np.linspace(-0.45, 0.45, 41) * model.length
        plus, _ = hs.basis_table(model, 8, inner + h)
        minus, _ = hs.basis_table(model, 8, inner - h)
        _, lower = hs.basis_table(model, 8, inner)
        worst_kb = max(worst_kb, float(np.max(np.abs(lower - (plus - minus) / (2 * h) / model.lam))))
    ys = np.linspace(-0.9, 0.9, 37)
    worst_cheb = 0.0
    for n in range(11):
        g = math.gamma(n + 0.5) / (math.sqrt(math.pi) * math.gamma(n + 1))
        pairs = [
            (eval_jacobi(n, JacobiParams(-0.5, -0.5), ys), g * eval_chebyshev("first", n, ys)),
            (eval_jacobi(n, JacobiParams(0.5, 0.5), ys),
             2 * math.gamma(n + 1.5) / (math.sqrt(math.pi) * math.gamma(n + 2)) * eval_chebyshev("second", n, ys)),
            (eval_jacobi(n, JacobiParams(-0.5, 0.5), ys), g * eval_chebyshev("third", n, ys)),
            (eval_jacobi(n, JacobiParams(0.5, -0.5), ys), g * eval_chebyshev("fourth", n, ys)),
        ]
        worst_cheb = max(worst_cheb, max(scaled(a - b, b) for a, b in pairs))
        worst_cheb = max(worst_cheb, _chebyshev_derivative_gap(n, ys))
    ok = [
        criterion.check("orthonormality n,m<=8", worst_orth <= 1e-9, f"{_fmt(worst_orth)} (tol 1e-9)"),
        criterion.check("boundary zero/nonzero pattern", pattern_ok, str(pattern_ok)),
        criterion.check("kinetic balance by finite differences", worst_kb <= 1e-5, f"{_fmt(worst_kb)} (tol 1e-5)"),
        criterion.check("Jacobi-Chebyshev relations and derivative identities", worst_cheb <= 1e-6,
                        f"{_fmt(worst_cheb)} (tol 1e-6)"),
    ]
    assert all(ok)


def _chebyshev_derivative_gap(n, ys):
    c = np.sqrt(1 - ys ** 2)
    residuals = [
        d1(lambda y: eval_chebyshev("first", n, y), ys) - (n * eval_chebyshev("second", n - 1, ys) if n else 0.0),
        d1(lambda y: np.sqrt(1 - y * y) * eval_chebyshev("second", n, y), ys)
        + (n + 1) / c * eval_chebyshev("first", n + 1, ys),
        d1(lambda y: np.sqrt(1 + y) * eval_chebyshev("third", n, y), ys)
        - (n + 0.5) / np.sqrt(1 + ys) * eval_chebyshev("fourth", n, ys),
        d1(lambda y: np.sqrt(1 - y) * eval_chebyshev("fourth", n, y), ys)
        + (n + 0.5) / np.sqrt(1 - ys) * eval_chebyshev("third", n, ys),
    ]
    return max(float(np.max(np.abs(r))) for r in residuals)


def test_criterion_08_wavefunction_structure(criterion):
    criterion.start(8, "reconstructed wavefunction nodes, boundary product, truncation range")
    mismatches, worst_boundary, sizes = [], 0.0, []
    for case in hs.CASES:
        model = hs.HalfSineModel(1.0, 1.2, 0.5, case)
        grid = hs.node_grid(model)
        half = model.length / 2
        for k in range(1, 5):
            state = hs.reconstruct_spinor(model, k, grid)
            sizes.append(state.size)
            got = (hs.count_nodes(state.sample.upper), hs.count_nodes(state.sample.lower))
            if got != NODE_RULE[case](k):
                mismatches.append(f"{case} k={k}: {got[0]}/{got[1]} vs {NODE_RULE[case](k)[0]}/{NODE_RULE[case](k)[1]}")
            edge = hs.reconstruct_spinor(model, k, np.array([-half, 0.0, half])).sample
            worst_boundary = max(worst_boundary, abs(edge.upper[0] * edge.lower[0]), abs(edge.upper[-1] * edge.lower[-1]))
    ok = [
        criterion.check("node counts follow the documented rule", not mismatches,
                        "all match" if not mismatches else "; ".join(mismatches)),
        criterion.check("psi+ psi- at the walls", worst_boundary <= 1e-12, f"{_fmt(worst_boundary)} (tol 1e-12)"),
        criterion.check("adaptive N in [10, 40]", all(10 <= s <= 40 for s in sizes), f"{min(sizes)}..{max(sizes)}"),
    ]
    assert all(ok)


def test_criterion_09_meixner_pollaczek(criterion):
    criterion.start(9, "coefficient recursion equals Meixner-Pollaczek polynomials")
    draws = [(1.0, 1.2, 0.3, 0.7, "plus", 0.3), (1.0, 1.5, 0.8, 0.2, "minus", 0.9),
             (0.5, 2.0, 0.1, 1.5, "plus", 0.05), (2.0, 1.1, 0.4, 0.0, "plus", 0.2)]
    worst_rec, worst_explicit = 0.0, 0.0
    for m, lam, v0, gamma, sign, extra in draws:
        model = osc.OscillatorModel(m, lam, v0, gamma, 0.0, sign)
        eps = m + 2 * (lam - m) + extra
        forward = osc.angle_form_coefficients(model, eps, 20)
        mp = osc.mp_coefficients(model, eps, 20)
        worst_rec = max(worst_rec, scaled(forward - mp, mp))
        theta, z = osc.mp_angle(model, eps)
        params = MeixnerPollaczekParams((model.nu + 1) / 2, theta)
        explicit = np.array([meixner_pollaczek_explicit(n, params, -z / 2) for n in range(4)])
        worst_explicit = max(worst_explicit, float(np.max(np.abs(explicit - mp[:4]))),
                             float(np.max(np.abs(explicit - forward[:4]))))
    ok1 = criterion.check("forward recursion vs MP recurrence, n<=20", worst_rec <= 1e-12, f"{_fmt(worst_rec)} (tol 1e-12)")
    ok2 = criterion.check("both vs explicit sum, n<=3", worst_explicit <= 1e-10, f"{_fmt(worst_explicit)} (tol 1e-10)")
    assert ok1 and ok2


def test_criterion_10_polynomial_properties(criterion):
    criterion.start(10, "polynomial differential equations, relations and orthogonality")
    ys = np.linspace(-0.9, 0.9, 37)
    yl = np.linspace(0.1, 10, 50)
    jac = [(-0.5, -0.5), (0.5, 0.5), (-0.5, 0.5), (0.5, -0.5), (1.3, -0.4), (0.2, 2.5)]
    lag = [-0.5, 0.0, 1.0, 2.5]
    ode_j = ode_l = rel_j = rel_l = 0.0
    for mu, nu in jac:
        p = JacobiParams(mu, nu)
        for n in range(9):
            f = lambda y, n=n: eval_jacobi(n, p, y)
            fy = f(ys)
            dp, dpp = d1_d2(f, ys)
            terms = ((1 - ys ** 2) * dpp, -((mu + nu + 2) * ys + mu - nu) * dp, n * (n + mu + nu + 1) * fy)
            ode_j = max(ode_j, scaled(sum(terms), np.abs(terms).max(axis=0)))
            if n:
                s = 2 * n + mu + nu
                rhs = -n * (ys + (nu - mu) / s) * fy + 2 * (n + mu) * (n + nu) / s * eval_jacobi(n - 1, p, ys)
                rel_j = max(rel_j, scaled((1 - ys ** 2) * d1(f, ys) - rhs, fy))
    for nu in lag:
        p = LaguerreParams(nu)
        for n in range(9):
            f = lambda y, n=n: eval_laguerre(n, p, y)
            fy = f(yl)
            dp, dpp = d1_d2(f, yl)
            terms = (yl * dpp, (nu + 1 - yl) * dp, n * fy)
            ode_l = max(ode_l, scaled(sum(terms), np.abs(terms).max(axis=0)))
            if n:
                rel_l = max(rel_l, scaled(yl * d1(f, yl) - (n * fy - (n + nu) * eval_laguerre(n - 1, p, yl)), fy))
    cheb = max(_chebyshev_derivative_gap(n, ys) for n in range(9))
    orth_j = 0.0
    t, w = roots_legendre(128)
    phi = (t + 1) * math.pi / 2
    for mu, nu in jac[:4] + [(0.0, 0.0), (1.0, 2.0)]:
        p = JacobiParams(mu, nu)
        y = np.cos(phi)
        weight = 2 ** (mu + nu + 1) * np.sin(phi / 2) ** (2 * mu + 1) * np.cos(phi / 2) ** (2 * nu + 1)
        vals = jacobi_values(8, p, y) * np.array([jacobi_norm(n, p) for n in range(9)])[:, None]
        gram = (vals * weight * w * math.pi / 2) @ vals.T
        orth_j = max(orth_j, float(np.max(np.abs(gram - np.eye(9)))))
    orth_l = 0.0
    for nu in lag:
        p = LaguerreParams(nu)
        y, wl = roots_genlaguerre(64, nu)
        vals = laguerre_values(8, p, y) * np.array([laguerre_norm(n, p) for n in range(9)])[:, None]
        orth_l = max(orth_l, float(np.max(np.abs((vals * wl) @ vals.T - np.eye(9)))))
    ok = [
        criterion.check("Jacobi ODE", ode_j <= 1e-5, f"{_fmt(ode_j)} (tol 1e-5)"),
        criterion.check("Laguerre ODE", ode_l <= 1e-5, f"{_fmt(ode_l)} (tol 1e-5)"),
        criterion.check("Jacobi derivative relation", rel_j <= 1e-8, f"{_fmt(rel_j)} (tol 1e-8)"),
        criterion.check("Laguerre derivative relation", rel_l <= 1e-8, f"{_fmt(rel_l)} (tol 1e-8)"),
        criterion.check("Chebyshev derivative identities", cheb <= 1e-6, f"{_fmt(cheb)} (tol 1e-6)"),
        criterion.check("Jacobi orthonormality", orth_j <= 1e-9, f"{_fmt(orth_j)} (tol 1e-9)"),
        criterion.check("Laguerre orthonormality", orth_l <= 1e-8, f"{_fmt(orth_l)} (tol 1e-8)"),
    ]
    assert all(ok)


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
