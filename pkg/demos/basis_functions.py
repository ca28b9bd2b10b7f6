"""The four half-sine spinor bases and their boundary behaviour.

For each case prints the lowest basis spinor at the walls and in the middle of
the box, and the value of upper * lower at the walls, which is what makes the
Dirac Hamiltonian Hermitian in the box. ``--plot`` writes basis.png.

    python3 demos/basis_functions.py [--plot]
"""
import argparse

import numpy as np

from dirac_tridiag import CASES, HalfSineModel
from dirac_tridiag.halfsine import basis_table

from _plotting import pyplot_or_none


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()
    plt = pyplot_or_none(args.plot)
    fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=True) if plt else (None, None)
    for i, case in enumerate(sorted(CASES)):
        model = HalfSineModel(1.0, 1.2, 0.0, case)
        half = model.length / 2
        xs = np.linspace(-half, half, 401)
        upper, lower = basis_table(model, 3, xs)
        edge = np.abs(upper[:, [0, -1]] * lower[:, [0, -1]]).max()
        print(f"{case}: phi0+ at (-L/2, 0, L/2) = {upper[0, 0]:+.4f} {upper[0, 200]:+.4f} {upper[0, -1]:+.4f}; "
              f"max |phi+ phi-| at walls for n <= 3 = {edge:.1e}")
        if plt:
            ax = axes.flat[i]
            for n in range(3):
                ax.plot(xs, upper[n], label=f"n={n} upper")
                ax.plot(xs, lower[n], "--", label=f"n={n} lower")
            ax.set_title(case)
    if plt:
        axes.flat[0].legend(fontsize=7)
        fig.tight_layout()
        fig.savefig("basis.png", dpi=120)
        print("wrote basis.png")


if __name__ == "__main__":
    main()
