"""Lowest levels as the potential strength V0 is swept through zero.

The levels are even in V0 and coincide for the two mixed cases. At V0 = 0 they
are the closed-form free levels. ``--plot`` writes sweep.png.

    python3 demos/potential_sweep.py [--plot]
"""
import argparse

import numpy as np

from dirac_tridiag import HalfSineModel, diagonal_spectrum, spectrum

from _plotting import pyplot_or_none


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()
    v0s = np.linspace(-3.0, 3.0, 25)
    levels = {case: np.array([spectrum(HalfSineModel(1.0, 1.2, v, case), 30, 4) for v in v0s])
              for case in ("mm", "pp", "mp", "pm")}
    for case, eps in levels.items():
        free = [diagonal_spectrum(HalfSineModel(1.0, 1.2, 0.0, case), k) for k in range(4)]
        print(f"{case}: epsilon_0 at V0=-3, 0, 3 = {eps[0, 0]:.6f} {eps[12, 0]:.6f} {eps[-1, 0]:.6f}; "
              f"free levels {np.round(free, 6)}; even in V0: {np.allclose(eps, eps[::-1], rtol=1e-10)}")
    print(f"mp and pm agree: {np.allclose(levels['mp'], levels['pm'], rtol=1e-11)}")
    plt = pyplot_or_none(args.plot)
    if plt:
        fig, ax = plt.subplots(figsize=(6, 4))
        for case, style in zip(levels, ("-", "--", ":", "-.")):
            ax.plot(v0s, levels[case], style)
        ax.set_xlabel("V0")
        ax.set_ylabel("epsilon")
        fig.savefig("sweep.png", dpi=120)
        print("wrote sweep.png")


if __name__ == "__main__":
    main()
