"""Corner polyhedra ``conv(weights) + nonnegative orthant`` in s-coordinates.

Two independent routes live here:

* closed forms: vertices from the control matrix and facets from Hessenberg
  conditions on subflags of the standard flag (``corner_facets``), plus the
  projection route (``facets_from_projections``);
* first principles: exact LP membership in the Minkowski sum
  (``corner_membership``), which never looks at facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .lp import is_feasible
from .profiles import (
    ControlMatrix,
    TrivialProfileError,
    control_matrix,
    entry_weight,
    is_strictly_upper,
    support,
)

__all__ = [
    "F1A", "F1B", "F2A", "F2B", "Facet", "CornerPolyhedron", "entry_weight", "raw_weights",
    "standard_hessenberg", "subflag_hessenberg", "corner_facets", "facets_from_projections",
    "verts_projection", "corner_membership", "corner_vertices", "minkowski_translate", "s_I",
]

F1A, F1B, F2A, F2B = "F-1A", "F-1B", "F-2A", "F-2B"
_BASE_CONSTANT = {F1A: 0, F2A: 0, F1B: -1, F2B: 1}


def s_I(I: Iterable[int], w: Sequence) -> Fraction:
    """The functional ``sum_{i in I} s_i`` (1-based indices)."""
    return sum((Fraction(w[i - 1]) for i in I), Fraction(0))


@dataclass(frozen=True)
class Facet:
    """Supporting halfspace ``{s_I >= c}`` of an untranslated corner polyhedron."""

    I: tuple[int, ...]
    c: int
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(sorted(self.I)))
        if not self.I or len(set(self.I)) != len(self.I):
            raise ValueError("index set must be nonempty without repeats")
        if self.kind not in _BASE_CONSTANT:
            raise ValueError(f"unknown facet kind {self.kind!r}")
        if self.c != _BASE_CONSTANT[self.kind]:
            raise ValueError(f"{self.kind} facets have constant {_BASE_CONSTANT[self.kind]}")
        if self.kind in (F1A, F2A) and len(self.I) != 1:
            raise ValueError(f"{self.kind} facets have a single index")


@dataclass(frozen=True)
class CornerPolyhedron:
    """``scale * P + shift`` where ``P`` has the given vertices and facets.

    ``base_vertices`` and ``facets`` describe the untranslated polyhedron;
    :attr:`vertices` and :meth:`constant` give the translated data.
    """

    dim: int
    base_vertices: tuple[tuple[int, ...], ...]
    facets: tuple[Facet, ...]
    scale: int = 1
    shift: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        if self.shift is None:
            object.__setattr__(self, "shift", (Fraction(0),) * self.dim)
        object.__setattr__(self, "shift", tuple(Fraction(x) for x in self.shift))
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")
        if len(self.shift) != self.dim or any(len(v) != self.dim for v in self.base_vertices):
            raise ValueError("dimension mismatch")
        for f in self.facets:
            vals = [s_I(f.I, v) for v in self.base_vertices]
            if any(x < f.c for x in vals):
                raise ValueError(f"a vertex violates facet {f}")
            if f.c not in vals:
                raise ValueError(f"facet {f} is not tight at any vertex")

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(self.scale * x + t for x, t in zip(v, self.shift)) for v in self.base_vertices
        )

    def constant(self, f: Facet) -> Fraction:
        return self.scale * f.c + s_I(f.I, self.shift)

    def contains(self, w: Sequence, strict: bool = False) -> bool:
        """Membership through the facet description."""
        for f in self.facets:
            val = s_I(f.I, w)
            c = self.constant(f)
            if val < c or (strict and val == c):
                return False
        return True

    def to_json(self) -> dict:
        from .algebra import scalar_to_json

        out = {
            "N": self.dim,
            "vertices": [[scalar_to_json(Fraction(x)) for x in v] for v in self.vertices],
            "facets": [
                {"I": list(f.I), "c": scalar_to_json(self.constant(f)), "kind": f.kind}
                for f in self.facets
            ],
        }
        if self.scale != 1 or any(self.shift):
            out["scale"] = self.scale
            out["shift"] = [scalar_to_json(x) for x in self.shift]
        return out


def raw_weights(M) -> frozenset[tuple[int, ...]]:
    supp = support(M)
    if not supp:
        raise TrivialProfileError("zero matrix")
    N = len(getattr(M, "rows", M)) - 1
    return frozenset(entry_weight(i, j, N) for i, j in supp)


def standard_hessenberg(supp: Iterable[tuple[int, int]], N: int) -> tuple[int, ...]:
    """``h_M(i) = min{j : M S_i ⊆ S_j}`` for the standard flag, i = 0..N+1."""
    lowest = [0] * (N + 2)
    for i, j in supp:
        lowest[j] = max(lowest[j], i)
    out, run = [], 0
    for i in range(N + 2):
        run = max(run, lowest[i])
        out.append(run)
    return tuple(out)


def subflag_hessenberg(h: Sequence[int], I: Sequence[int], N: int) -> tuple[int, ...]:
    """Hessenberg function of the subflag ``S_{i_1} ⊂ ... ⊂ S_{i_gamma}``."""
    idx = (0, *I, N + 1)
    return tuple(next(t2 for t2, i2 in enumerate(idx) if h[it] <= i2) for it in idx)


def _subsets(N: int):
    for g in range(1, N + 1):
        yield from combinations(range(1, N + 1), g)


def corner_facets(M) -> CornerPolyhedron:
    """Vertices and facets of the corner polyhedron of ``M`` in closed form."""
    supp = support(M)
    if not supp:
        raise TrivialProfileError("zero matrix")
    N = len(getattr(M, "rows", M)) - 1
    h = standard_hessenberg(supp, N)
    upper = is_strictly_upper(supp)
    facets = []
    for I in _subsets(N):
        g = len(I)
        hI = subflag_hessenberg(h, I, N)
        if not upper:
            if g == 1 and h[I[0]] <= I[0]:
                facets.append(Facet(I, 0, F1A))
            elif all(hI[t] == t + 1 for t in range(1, g + 1)):
                facets.append(Facet(I, -1, F1B))
        else:
            if g == 1 and (h[N + 1] > I[0] or h[I[0]] > 0):
                facets.append(Facet(I, 0, F2A))
            elif all(hI[t] == t - 1 for t in range(1, g + 2)):
                facets.append(Facet(I, 1, F2B))
    verts = control_matrix(M).columns
    _check_canonical_order(verts)
    return CornerPolyhedron(N, verts, tuple(facets))


def _check_canonical_order(verts) -> None:
    firsts = [next((k for k, x in enumerate(v) if x), -1) for v in verts]
    if any(a >= b for a, b in zip(firsts, firsts[1:])):
        raise AssertionError("vertices are not in canonical order")


def _dominated(w1, w2) -> bool:
    return all(a >= b for a, b in zip(w1, w2))


def verts_projection(M, I: Sequence[int]) -> ControlMatrix:
    """Vertex matrix of the projection of the corner polyhedron onto rows ``I``."""
    I = tuple(sorted(I))
    ctrl = control_matrix(M)
    if not I or len(set(I)) != len(I) or not all(1 <= i <= ctrl.n_rows for i in I):
        raise ValueError(f"I must be a nonempty subset of 1..{ctrl.n_rows}")
    cols = [tuple(c[i - 1] for i in I) for c in ctrl.columns]
    changed = True
    while changed:
        changed = False
        for a in range(len(cols)):
            if any(b != a and _dominated(cols[a], cols[b]) for b in range(len(cols))):
                del cols[a]
                changed = True
                break
    return ControlMatrix(len(I), tuple(cols))


def facets_from_projections(M) -> tuple[Facet, ...]:
    """Facets read off projected vertex matrices.

    A subset ``I`` carries a facet exactly when the projected vertex matrix is
    the single zero column with ``|I| = 1`` (kinds A) or is ``-1`` / ``+1``
    times the identity (kinds 1B / 2B).
    """
    supp = support(M)
    if not supp:
        raise TrivialProfileError("zero matrix")
    N = len(getattr(M, "rows", M)) - 1
    upper = is_strictly_upper(supp)
    out = []
    for I in _subsets(N):
        g = len(I)
        cols = verts_projection(M, I).columns
        if g == 1 and cols == ((0,),):
            out.append(Facet(I, 0, F2A if upper else F1A))
            continue
        sign = 1 if upper else -1
        ident = {tuple(sign if r == c else 0 for r in range(g)) for c in range(g)}
        if len(cols) == g and set(cols) == ident:
            out.append(Facet(I, sign, F2B if upper else F1B))
    return tuple(out)


# Membership oracle.

@lru_cache(maxsize=1 << 20)
def _membership(points: frozenset, query: tuple, strict: bool) -> bool:
    pts = sorted(points)
    N = len(query)
    if not strict:
        # lambda_k >= 0, sigma_i >= 0:  sum_k lambda_k w_k + sigma = query,  sum lambda = 1
        A = []
        for i in range(N):
            A.append([w[i] for w in pts] + [1 if r == i else 0 for r in range(N)])
        A.append([1] * len(pts) + [0] * N)
        return is_feasible(A, list(query) + [1])
    # Interior iff no r >= 0 with sum r = 1 and r.(w - query) >= 0 for every w.
    K = len(pts)
    A = []
    for k, w in enumerate(pts):
        A.append([Fraction(w[i]) - query[i] for i in range(N)] + [-1 if r == k else 0 for r in range(K)])
    A.append([1] * N + [0] * K)
    return not is_feasible(A, [0] * K + [1])


def corner_membership(points: Iterable[Sequence], query: Sequence, strict: bool = False) -> bool:
    """Whether ``query`` lies in ``conv(points) + O+`` (its interior if ``strict``)."""
    pts = frozenset(tuple(Fraction(x) for x in p) for p in points)
    if not pts:
        raise ValueError("points must be nonempty")
    q = tuple(Fraction(x) for x in query)
    if any(len(p) != len(q) for p in pts):
        raise ValueError("dimension mismatch")
    return _membership(pts, q, bool(strict))


def corner_vertices(points: Iterable[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Extreme points of ``conv(points) + O+`` found by LP, in canonical order."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    out = []
    for v in pts:
        rest = [w for w in pts if w != v]
        if not rest or not corner_membership(rest, v):
            out.append(v)

    def key(v):
        first = next((k for k, x in enumerate(v) if x), len(v))
        return (first, v)

    return tuple(sorted(out, key=key))


def minkowski_translate(p: CornerPolyhedron, shift: Sequence, q: int) -> CornerPolyhedron:
    """``q * p + shift``."""
    if int(q) != q or q < 1:
        raise ValueError("q must be a positive integer")
    shift = tuple(Fraction(x) for x in shift)
    if len(shift) != p.dim:
        raise ValueError("dimension mismatch")
    new_shift = tuple(q * s + t for s, t in zip(p.shift, shift))
    return CornerPolyhedron(p.dim, p.base_vertices, p.facets, p.scale * int(q), new_shift)
