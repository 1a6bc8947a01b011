"""Profiles, control matrices and corner-polyhedron facets.

Run: python3 demos/01_profiles_and_polyhedra.py
"""

from __future__ import annotations

from markedlin.polyhedra import corner_facets, corner_membership
from markedlin.profiles import control_matrix, enumerate_profiles, matrix_from_support, pivotal_entries, profile
from markedlin.reference import elaborate_lower


def show(title, M):
    p = profile(M)
    P = corner_facets(M)
    print(f"== {title}")
    for row in M:
        print("   ", " ".join("*" if x else "." for x in row))
    print(f"   profile        {p}")
    print(f"   pivotal        {pivotal_entries(p)}")
    print(f"   control cols   {control_matrix(M).columns}")
    for f in P.facets:
        print(f"   facet          s_{set(f.I)} >= {P.constant(f)}  ({f.kind})")
    print()


# A subdiagonal staircase: every nonempty index set gives a facet.
show("lower staircase, N = 2", matrix_from_support([(2, 1), (3, 2)], 2))

# The superdiagonal staircase has one facet per coordinate plus the sum.
show("upper staircase, N = 2", matrix_from_support([(1, 2), (2, 3)], 2))

# A strictly upper-triangular 5x5 matrix.
show("strictly upper 5x5", matrix_from_support([(1, 3), (2, 4)], 4))

# Only the support matters, and the number of profiles is 2 C_{N+1} - 1.
for N in (1, 2, 3, 4):
    print(f"N = {N}: {len(enumerate_profiles(N))} profiles")
print()

# The N = 7 example: the closed form and a face-rank computation both find
# fifteen facets, three more than the reference list.
ex = elaborate_lower()
M = next(ex.realizations())
found = {f.I for f in corner_facets(M).facets}
listed = {I for I, _ in ex.facets}
print(f"N = 7 example: {len(found)} facets found, {len(listed)} in the reference list")
print(f"  not listed: {sorted(found - listed)}")

# The polyhedron is the orthant hull of the raw weights; membership by LP
# agrees with the facet description.
P = corner_facets(M)
probe = (0,) * 7
print(f"  origin inside? facets: {P.contains(probe)}, LP: {corner_membership(P.vertices, probe)}")
