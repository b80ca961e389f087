#!/usr/bin/env python3
"""Print PPP counts by (width, height) next to the P1 coefficients, one block per thickness."""

import argparse

from ppp import enumerate as en
from ppp import series as se


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-sp", type=int, default=7)
    parser.add_argument("--max-thickness", type=int, default=3)
    args = parser.parse_args()

    table = en.count_table(args.max_sp, args.max_thickness)
    _, _, p1 = se.ppp_zpart(args.max_sp)
    n = args.max_sp
    for k in range(1, args.max_thickness + 1):
        print(f"thickness {k}  (enumerated / series)")
        print("w\\h " + " ".join(f"{h:>11d}" for h in range(1, n)))
        for w in range(1, n):
            cells = []
            for h in range(1, n):
                if w + h > n:
                    cells.append(" " * 11)
                    continue
                found = table.counts.get((w, h, k), 0)
                cells.append(f"{found:>5d}/{int(p1[w, h]):<5d}")
            print(f"{w:>3d} " + " ".join(cells))
        print()

    orbits = en.orbit_counts(args.max_sp, args.max_thickness)
    polya = se.polya_S(n).integers()
    print("strips per semi-perimeter vs necklace series")
    for sp in range(2, n + 1):
        row = " ".join(f"k={k}:{orbits.get((sp, k), 0)}" for k in range(1, args.max_thickness + 1))
        print(f"sp={sp}  {row}  series={polya[sp]}")


if __name__ == "__main__":
    main()
