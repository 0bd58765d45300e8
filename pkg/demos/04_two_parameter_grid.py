"""
Unequal imprecisions on two bases
=================================

Sweep (eps1, eps2) for d=7 and write the upper bound, the seesaw value
and their gap to a CSV file. On the diagonal the two coincide; far from it
the corrected bound becomes loose.
"""

import csv
import sys

from steerbound.cases import grid_rows
from steerbound.io import GridSpec, default_axis

size = int(sys.argv[1]) if len(sys.argv) > 1 else 10
axis = default_axis(size)
rows = grid_rows(GridSpec(7, "mub-correlation:2", axis, axis))

with open("grid_d7.csv", "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["eps1", "eps2", "upper", "lower", "gap"])
    w.writerows([[repr(v) for v in r] for r in rows])

print(f"wrote {len(rows)} rows to grid_d7.csv")
print("largest gap:", max(r[4] for r in rows))
print("largest diagonal gap:", max(abs(r[4]) for r in rows if r[0] == r[1]))
