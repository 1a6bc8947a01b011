"""One marked point: where the threshold really is, and the normal form.

For a cyclic point v of a non-nilpotent map, invariant subspaces miss v
and the worst flag is the cyclic one, span(v) < span(v, Tv) < ...  Its
Omega is N/2, and it is a Type II flag with bound q.  So with q = 1 the
pair is stable only on P^1, strictly semistable on P^2 and unstable from
P^3 on.  With q > N/2 it is stable.

Run: python3 demos/04_one_marked_point.py
"""

from __future__ import annotations

from markedlin import MarkedMap, Sheaf, check_stability, companion_form
from markedlin.stability import charpoly

for N in (1, 2, 3, 4):
    T = tuple(tuple(i + 1 if i == j else 0 for j in range(N + 1)) for i in range(N + 1))
    mm = MarkedMap.build(T, [(1,) * (N + 1)])
    row = []
    for q in (1, 2, 3):
        v = check_stability(mm, Sheaf(q, (1,)))
        row.append(f"q={q}: {v.status.value}")
    w = check_stability(mm, Sheaf(1, (1,))).witness
    worst = f"worst Omega {w.omega}" if w is not None else ""
    print(f"N={N}  " + ", ".join(row) + f"   {worst}")
print()

# Stable pairs have a companion normal form: in the basis v, Tv, ..., T^N v
# the last column of T lists the characteristic polynomial coefficients.
T = ((2, 1, 0), (0, 1, 1), (1, 0, 3))
mm = MarkedMap.build(T, [(1, 0, 0)])
print("companion coefficients:", [str(x) for x in companion_form(mm)])
print("char poly (low to high):", [str(x) for x in charpoly(T)])
