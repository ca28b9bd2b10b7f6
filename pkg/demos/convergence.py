"""Half-sine levels converge quickly as the basis grows.

Prints E/2lambda for the ten lowest levels of the mm case (m = 1, lambda = 1.2,
V0 = 0.5) at N = 10, 15, 20, 30, then the size needed for ten stable digits.

    python3 demos/convergence.py
"""
import time

import numpy as np

from dirac_tridiag import HalfSineModel, scaled_spectrum

SIZES = (10, 15, 20, 30)


def main():
    model = HalfSineModel(m=1.0, lam=1.2, v0=0.5, case="mm")
    start = time.perf_counter()
    table = np.column_stack([scaled_spectrum(model, n, 10) for n in SIZES])
    elapsed = time.perf_counter() - start
    print("k  " + "".join(f"{'N=' + str(n):>15}" for n in SIZES))
    for k, row in enumerate(table):
        print(f"{k:<3}" + "".join(f"{v:15.10f}" for v in row))
    print(f"\n40 eigenvalues in {elapsed * 1e3:.1f} ms")
    reference = scaled_spectrum(model, 60, 10)
    for k in (0, 5, 9):
        n = next(n for n in range(k + 1, 61) if abs(scaled_spectrum(model, n, k + 1)[k] - reference[k]) < 5e-11)
        print(f"level {k}: ten stable digits from N = {n}")


if __name__ == "__main__":
    main()
