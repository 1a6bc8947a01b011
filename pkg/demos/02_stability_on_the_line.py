"""Stability of maps of P^1 with four marked points.

With n = 4 points and q = 1, up to n/2 points may sit on a fixed point of
a diagonalizable map, n/2 - q on the kernel of a nilpotent map, and
n/2 + q on any other point.

Run: python3 demos/02_stability_on_the_line.py
"""

from __future__ import annotations

from markedlin import MarkedMap, Sheaf, check_stability

n, q = 4, 1
others = [(1, 2), (1, 3), (1, 5), (1, 7)]
cases = [
    ("diag(1,2), points at the fixed point [1:0]", ((1, 0), (0, 2)), (1, 0)),
    ("nilpotent, points at the kernel [1:0]", ((0, 1), (0, 0)), (1, 0)),
    ("diag(1,2), points at the moving point [1:1]", ((1, 0), (0, 2)), (1, 1)),
]
for title, T, at in cases:
    print(title)
    for k in range(0, n + 1):
        pts = [at] * k + others[: n - k]
        v = check_stability(MarkedMap.build(T, pts), Sheaf.uniform(q, n))
        extra = ""
        if v.witness is not None:
            extra = f"  {v.witness.flag_type.value}: Omega {v.witness.omega} vs bound {v.witness.bound}"
        print(f"  {k} coincident: {v.status.value:<20}{extra}")
    print()
