"""Sweep uncertainty products and geometric phases for the low orders.

Prints one table per (k, j) class showing how the product leaves its
small-alpha limit j + 1/2 and how the geometric phase accumulates.
Run: python3 scripts/uncertainty_sweep.py [rmax] [points]
"""

import sys

import numpy as np

from mcskit import MCSLabel, geometric_phase, moments


def main() -> None:
    rmax = float(sys.argv[1]) if len(sys.argv) > 1 else 3.0
    points = int(sys.argv[2]) if len(sys.argv) > 2 else 7
    radii = np.linspace(0.0, rmax, points)
    for k in (1, 2, 3):
        for j in range(k):
            print(f"\nk={k} j={j}   (limit at alpha -> 0 is {j + 0.5})")
            print(f"{'|alpha|':>8} {'dx*dp':>12} {'<H>':>12} {'beta':>12}")
            for r in radii:
                mom = moments(MCSLabel(k, j, complex(r)))
                beta = geometric_phase(MCSLabel(k, j, complex(r)))
                print(
                    f"{r:8.3f} {mom.uncertainty_product:12.8f} "
                    f"{mom.mean_H:12.8f} {beta:12.8f}"
                )


if __name__ == "__main__":
    main()
