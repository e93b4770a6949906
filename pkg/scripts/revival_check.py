"""Track one state through a full revival period.

Samples the autocorrelation |<psi(0)|psi(t)>| over t in [0, 2*pi/k] and
verifies that the state returns with the predicted global phase. The
dips between revivals are where the evolving packet spreads into a
transient multi-component superposition.
Run: python3 scripts/revival_check.py [k] [j] [alpha]
"""

import math
import sys

import numpy as np

from mcskit import MCSLabel, build_mcs, inner, revival_phase, time_evolve


def main() -> None:
    k = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    j = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    alpha = complex(sys.argv[3]) if len(sys.argv) > 3 else 2.0 + 0.0j
    state = build_mcs(MCSLabel(k, j, alpha))
    period = 2.0 * math.pi / k

    print(f"k={k} j={j} alpha={alpha}   period = {period:.6f}")
    print(f"{'t/period':>9} {'|overlap|':>12}")
    for frac in np.linspace(0.0, 1.0, 17):
        ov = inner(state, time_evolve(state, frac * period))
        print(f"{frac:9.4f} {abs(ov):12.8f}")

    ov = inner(state, time_evolve(state, period))
    predicted = revival_phase(k, j)
    print(f"\nfinal overlap      {ov:.12f}")
    print(f"predicted phase    {predicted:.12f}")
    print(f"|overlap - phase|  {abs(ov - predicted):.3e}")


if __name__ == "__main__":
    main()
