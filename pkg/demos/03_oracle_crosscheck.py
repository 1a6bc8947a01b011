"""Flag test versus the brute-force Hilbert-Mumford oracle over GF(2).

The flag test checks one inequality per Type I/II/III flag.  The oracle
knows nothing about flag types: for every basis (up to upper-triangular
change) it asks whether the origin lies in eta + q * Corner(weights).

Run: python3 demos/03_oracle_crosscheck.py
"""

from __future__ import annotations

import random
from collections import Counter

from markedlin import MarkedMap, PrimeField, Sheaf, check_stability, hilbert_mumford_oracle

F = PrimeField(2)
rng = random.Random(0)
tally = Counter()
for _ in range(300):
    N = rng.choice((1, 2))
    while True:
        T = [[rng.randrange(2) for _ in range(N + 1)] for _ in range(N + 1)]
        if any(map(any, T)):
            break
    n = rng.choice((1, 2)) if N == 1 else 1
    pts = []
    while len(pts) < n:
        v = [rng.randrange(2) for _ in range(N + 1)]
        if any(v):
            pts.append(v)
    sh = Sheaf.uniform(rng.choice((1, 2)), n)
    mm = MarkedMap.build(T, pts, F)
    a = check_stability(mm, sh, "exact").status
    b = hilbert_mumford_oracle(mm, sh).status
    tally[(a.value, "agree" if a is b else f"oracle says {b.value}")] += 1

for (status, agreement), count in sorted(tally.items()):
    print(f"{count:4d}  {status:<20} {agreement}")
