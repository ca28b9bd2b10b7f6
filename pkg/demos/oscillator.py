"""Dirac oscillator on the half line.

Without the potential and at tau = 1/2 the levels are known in closed form,
and the scan of det J(epsilon) recovers them. With tau = 0 the expansion
coefficients are Meixner-Pollaczek polynomials, which the printout compares with
the raw three-term recursion.

    python3 demos/oscillator.py
"""
import numpy as np

from dirac_tridiag import OscillatorModel, diag_spectrum_osc, spectrum_osc
from dirac_tridiag.oscillator import forward_coefficients_osc, mp_angle, mp_coefficients


def main():
    free = OscillatorModel(m=1.0, lam=1.2, v0=0.0, gamma=0.7, tau=0.5)
    closed = [diag_spectrum_osc(free, n) for n in range(5)]
    scanned = spectrum_osc(free, 30, 5)
    print("closed form:", np.round(closed, 10))
    print("root scan:  ", np.round(scanned, 10))

    model = OscillatorModel(m=1.0, lam=1.2, v0=0.3, gamma=0.7, tau=0.0)
    print("\ncoupled levels, N = 40:", np.round(spectrum_osc(model, 40, 4), 10))
    eps = 2.0
    theta, z = mp_angle(model, eps)
    mp = mp_coefficients(model, eps, 8)
    raw = forward_coefficients_osc(model, eps, 8)
    print(f"epsilon = {eps}: theta = {theta:.6f}, z = {z:.6f}")
    print("max |recursion - Meixner-Pollaczek| =", f"{np.max(np.abs(mp - raw)):.1e}")


if __name__ == "__main__":
    main()
