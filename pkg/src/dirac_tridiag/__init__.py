"""Tridiagonal representations of the one-dimensional Dirac equation.

Two exactly tridiagonal models are provided: a square well with a half-sine
bottom in a Jacobi (Chebyshev) basis, and a spin-symmetric oscillator with a
``1/x`` pseudo-scalar term in a Laguerre basis.
"""
from .halfsine import (CASES, HalfSineModel, build_J, build_T, diagonal_spectrum,
                       reconstruct_spinor, scaled_spectrum, spectrum)
from .oscillator import OscillatorModel, build_J_osc, diag_spectrum_osc, spectrum_osc
from .tridiag import EigenRequest, SymTridiagonal, eigenvalues, sturm_count

__all__ = [
    "CASES",
    "HalfSineModel",
    "OscillatorModel",
    "SymTridiagonal",
    "EigenRequest",
    "build_J",
    "build_T",
    "build_J_osc",
    "diagonal_spectrum",
    "diag_spectrum_osc",
    "eigenvalues",
    "reconstruct_spinor",
    "scaled_spectrum",
    "spectrum",
    "spectrum_osc",
    "sturm_count",
]
__version__ = "0.1.0"
