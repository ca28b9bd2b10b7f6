"""Reconstructed bound-state spinors in the half-sine box.

The basis grows until the sampled spinor stops changing. Prints the size used
and the node counts of both components for the lowest levels of each case.
``--plot`` writes wavefunctions.png.

    python3 demos/wavefunctions.py [--plot]
"""
import argparse

import numpy as np

from dirac_tridiag import CASES, HalfSineModel, reconstruct_spinor
from dirac_tridiag.halfsine import count_nodes, node_grid

from _plotting import pyplot_or_none


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()
    plt = pyplot_or_none(args.plot)
    fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=True) if plt else (None, None)
    for i, case in enumerate(sorted(CASES)):
        model = HalfSineModel(1.0, 1.2, 0.5, case)
        xs = node_grid(model)
        for k in range(4):
            state = reconstruct_spinor(model, k, xs)
            s = state.sample
            print(f"{case} k={k}: epsilon = {state.epsilon:.10f}, N = {state.size}, "
                  f"nodes upper/lower = {count_nodes(s.upper)}/{count_nodes(s.lower)}")
            if plt:
                scale = np.max(np.abs(s.upper))
                axes.flat[i].plot(s.xs, s.upper / scale, label=f"k={k}")
        if plt:
            axes.flat[i].set_title(case)
    if plt:
        axes.flat[0].legend(fontsize=7)
        fig.tight_layout()
        fig.savefig("wavefunctions.png", dpi=120)
        print("wrote wavefunctions.png")


if __name__ == "__main__":
    main()
