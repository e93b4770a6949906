"""Survey the phase-space character of the order-2 and order-3 states.

For each class and ring label the script reports the field extrema, the
total integral, and the negativity volume, making the split visible:
order-one states stay nonnegative, every genuine cat goes negative.
Run: python3 scripts/cat_gallery.py
"""

import numpy as np

from mcskit import negativity_volume, wigner_closed


def main() -> None:
    print(f"{'k':>2} {'j':>2} {'|z|':>5} {'min W':>12} {'max W':>12} "
          f"{'integral':>10} {'negativity':>11}")
    for k in (1, 2, 3):
        for j in range(k):
            for z in (1.0, 2.0, 3.0):
                field = wigner_closed(k, j, z)
                print(
                    f"{k:2d} {j:2d} {z:5.1f} "
                    f"{float(np.min(field.values)):12.6f} "
                    f"{float(np.max(field.values)):12.6f} "
                    f"{field.total():10.6f} "
                    f"{negativity_volume(field):11.6f}"
                )
    print("\n1/pi =", 1.0 / np.pi, " (upper bound for any field value)")


if __name__ == "__main__":
    main()
