"""Flags, Hessenberg functions and the three flag types."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import (
    QQ,
    Field,
    PrimeField,
    Subspace,
    enumerate_subspaces,
    full_space,
    invariant_span,
    kernel,
    mat_mul,
    span,
    subspace_image,
    subspace_leq,
    subspace_sum,
    zero_subspace,
)
from .maps import ProjectiveMatrix, as_projective

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured size budget."""

    def __init__(self, count: int, budget: int, what: str = "flags"):
        super().__init__(f"{count} {what} exceed the budget of {budget}")
        self.count = count
        self.budget = budget


class FlagType(str, enum.Enum):
    TYPE_I = "TYPE_I"
    TYPE_II = "TYPE_II"
    TYPE_III = "TYPE_III"
    NONE = "NONE"


@dataclass(frozen=True)
class Flag:
    """Strictly nested nonzero proper subspaces ``H_1 < ... < H_gamma``."""

    ambient_dim: int
    spaces: tuple[Subspace, ...]

    def __post_init__(self):
        sp = tuple(self.spaces)
        object.__setattr__(self, "spaces", sp)
        if not 1 <= len(sp) <= self.ambient_dim - 1:
            raise ValueError("a flag has between 1 and N subspaces")
        dims = [H.dim for H in sp]
        if any(H.ambient_dim != self.ambient_dim for H in sp):
            raise ValueError("subspace ambient dimension mismatch")
        if dims[0] < 1 or dims[-1] > self.ambient_dim - 1:
            raise ValueError("flag members must be nonzero and proper")
        for a, b in zip(sp, sp[1:]):
            if a.dim >= b.dim or not subspace_leq(a, b):
                raise ValueError("flag members must be strictly nested")

    @classmethod
    def from_bases(cls, bases: Iterable[Iterable[Sequence]], ambient_dim: int, field: Field) -> "Flag":
        return cls(ambient_dim, tuple(span(b, ambient_dim, field) for b in bases))

    @property
    def gamma(self) -> int:
        return len(self.spaces)

    @property
    def field(self) -> Field:
        return self.spaces[0].field

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(H.dim for H in self.spaces)

    def extended(self) -> tuple[Subspace, ...]:
        """``(H_0, H_1, ..., H_gamma, H_{gamma+1})`` with the two trivial ends."""
        F = self.field
        return (zero_subspace(self.ambient_dim, F), *self.spaces, full_space(self.ambient_dim, F))

    def sort_key(self):
        return (self.gamma, self.dims, tuple(H.basis for H in self.spaces))

    def to_json(self) -> list:
        from .algebra import scalar_to_json

        return [[[scalar_to_json(x) for x in row] for row in H.basis] for H in self.spaces]


def _rows(T, field: Optional[Field] = None):
    T = as_projective(T, field) if field is not None else T
    return T.rows if isinstance(T, ProjectiveMatrix) else T


def hessenberg(T, f: Flag) -> tuple[int, ...]:
    """``h(i) = min{j : T H_i ⊆ H_j}`` for ``i = 0..gamma+1``."""
    rows = _rows(T, f.field)
    if len(rows) != f.ambient_dim:
        raise ValueError("map and flag dimensions differ")
    ext = f.extended()
    out = []
    for H in ext:
        img = subspace_image(rows, H)
        out.append(next(j for j, K in enumerate(ext) if subspace_leq(img, K)))
    return tuple(out)


def _is_type_i(rows, f: Flag, h: Sequence[int]) -> bool:
    if f.gamma != 1:
        return False
    if h[1] > 1:
        return False
    return h[1] == 1 or h[2] == 2


def classify_flag(T, f: Flag) -> FlagType:
    rows = _rows(T, f.field)
    h = hessenberg(rows, f)
    g = f.gamma
    # h[1] <= 1 means T H_1 ⊆ H_1; then "T H_1 != 0" is h[1] == 1 and
    # "T(k^{N+1}) not inside H_1" is h[2] == 2.
    t1 = _is_type_i(rows, f, h)
    t2 = all(h[t] == t + 1 for t in range(1, g + 1))
    t3 = all(h[t] == t - 1 for t in range(1, g + 2))
    if t1 + t2 + t3 > 1:
        raise AssertionError(f"flag satisfies several type predicates: h={h}")
    if t1:
        return FlagType.TYPE_I
    if t2:
        return FlagType.TYPE_II
    if t3:
        return FlagType.TYPE_III
    return FlagType.NONE


# Enumeration over finite fields.

def _q_factorial(n: int, p: int) -> int:
    out = 1
    for k in range(1, n + 1):
        out *= (p**k - 1) // (p - 1)
    return out


def count_partial_flags(p: int, n: int, dims: Sequence[int]) -> int:
    """Number of flags in ``GF(p)^n`` with the given strictly increasing dims."""
    parts = [b - a for a, b in zip((0, *dims), (*dims, n))]
    out = _q_factorial(n, p)
    for k in parts:
        out //= _q_factorial(k, p)
    return out


def count_flags(p: int, N: int, max_gamma: Optional[int] = None) -> int:
    max_gamma = N if max_gamma is None else max_gamma
    return sum(
        count_partial_flags(p, N + 1, dims)
        for g in range(1, max_gamma + 1)
        for dims in combinations(range(1, N + 1), g)
    )


class _Lattice:
    """Subspaces of ``GF(p)^n`` grouped by dimension, with containment lists."""

    def __init__(self, field: PrimeField, n: int):
        self.field = field
        self.n = n
        self.by_dim = {d: list(enumerate_subspaces(field, n, d)) for d in range(1, n)}
        self._up: dict = {}

    def containing(self, H: Subspace, d: int) -> list[Subspace]:
        key = (H, d)
        if key not in self._up:
            self._up[key] = [K for K in self.by_dim[d] if subspace_leq(H, K)]
        return self._up[key]


_LATTICES: dict = {}


def _lattice(field: PrimeField, n: int) -> _Lattice:
    key = (field.p, n)
    if key not in _LATTICES:
        _LATTICES[key] = _Lattice(field, n)
    return _LATTICES[key]


def enumerate_flags(
    field: PrimeField,
    N: int,
    max_gamma: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Flag]:
    """Every flag of length ``<= max_gamma`` in ``GF(p)^{N+1}``, once each.

    Order: by length, then dimension sequence, then subspaces in echelon
    enumeration order.  The total count is checked against ``budget`` before
    anything is generated.
    """
    if not field.is_finite:
        raise ValueError("flag enumeration needs a finite field")
    max_gamma = N if max_gamma is None else min(max_gamma, N)
    total = count_flags(field.p, N, max_gamma)
    if total > budget:
        raise BudgetExceeded(total, budget)
    return _generate(field, N, max_gamma)


def _generate(field: PrimeField, N: int, max_gamma: int) -> Iterator[Flag]:
    lat = _lattice(field, N + 1)

    def chains(dims, prefix):
        if not dims:
            yield prefix
            return
        pool = lat.by_dim[dims[0]] if not prefix else lat.containing(prefix[-1], dims[0])
        for K in pool:
            yield from chains(dims[1:], prefix + (K,))

    for g in range(1, max_gamma + 1):
        for dims in combinations(range(1, N + 1), g):
            for ch in chains(dims, ()):
                yield Flag(N + 1, ch)


def complete_flags(field: PrimeField, N: int, budget: int = DEFAULT_BUDGET) -> Iterator[Flag]:
    total = count_partial_flags(field.p, N + 1, tuple(range(1, N + 1)))
    if total > budget:
        raise BudgetExceeded(total, budget, "complete flags")
    lat = _lattice(field, N + 1)

    def chains(d, prefix):
        if d > N:
            yield Flag(N + 1, prefix)
            return
        pool = lat.by_dim[d] if not prefix else lat.containing(prefix[-1], d)
        for K in pool:
            yield from chains(d + 1, prefix + (K,))

    return chains(1, ())


# Candidate flags over arbitrary fields.

def _nonempty_subsets(n: int):
    for r in range(1, n + 1):
        yield from combinations(range(n), r)


def _all_subsets(n: int):
    yield ()
    yield from _nonempty_subsets(n)


def candidate_flags(T, points: Sequence[Sequence], field: Optional[Field] = None) -> list[Flag]:
    """A finite family of flags likely to carry the strongest inequalities.

    Contains the invariant spans of all nonempty point subsets, greedy
    bottom-up chains ``H_t = span(S_t) + T H_{t-1}``, and for nilpotent ``T``
    the kernel and image filtrations plus greedy top-down chains
    ``H_t = span(S_t) + T H_{t+1}`` with ``S_t ⊆ ker T^t``.  Only flags whose
    type is I, II or III are returned, sorted canonically.
    """
    Tp = T if isinstance(T, ProjectiveMatrix) else as_projective(T, QQ if field is None else field)
    F = Tp.field
    rows = Tp.rows
    n_amb = Tp.size
    N = n_amb - 1
    pts = [tuple(F(x) for x in v) for v in points]
    out: set[Flag] = set()

    def add(spaces):
        try:
            f = Flag(n_amb, tuple(spaces))
        except ValueError:
            return
        out.add(f)

    # Type I: invariant spans of point subsets.
    for S in _nonempty_subsets(len(pts)):
        H = invariant_span(rows, [pts[i] for i in S], n_amb, F)
        if 0 < H.dim < n_amb:
            add([H])

    # Type II: greedy bottom-up chains.
    seen = set()

    def grow(chain):
        key = tuple(chain)
        if key in seen:
            return
        seen.add(key)
        add(chain)
        if len(chain) >= N:
            return
        prev = chain[-1]
        base = subspace_sum(prev, subspace_image(rows, prev))
        for S in _all_subsets(len(pts)):
            H = subspace_sum(base, span([pts[i] for i in S], n_amb, F))
            if prev.dim < H.dim < n_amb:
                grow(chain + [H])

    for S in _nonempty_subsets(len(pts)):
        H = span([pts[i] for i in S], n_amb, F)
        if H.dim < n_amb:
            grow([H])
    # Cyclic-style chains seeded by basis vectors, useful with few points.
    for k in range(n_amb):
        e = [F.zero] * n_amb
        e[k] = F.one
        grow([span([e], n_amb, F)])

    # Type III: only nilpotent maps have such flags.
    powers = [rows]
    for _ in range(N):
        powers.append(mat_mul(powers[-1], rows, F))
    if all(x == 0 for r in powers[-1] for x in r):
        kers = []
        for P in powers:
            K = kernel(P, F)
            if K.dim == n_amb:
                break
            kers.append(K)
        add(kers)
        images = []
        X = full_space(n_amb, F)
        while True:
            X = subspace_image(rows, X)
            if X.dim == 0:
                break
            images.append(X)
        add(list(reversed(images)))
        full = full_space(n_amb, F)
        for g in range(1, len(kers) + 1):
            _top_down(rows, pts, kers, g, full, F, n_amb, add)

    return sorted((f for f in out if classify_flag(rows, f) is not FlagType.NONE), key=Flag.sort_key)


def _top_down(rows, pts, kers, g, full, F, n_amb, add):
    imT = subspace_image(rows, full)

    def descend(t, chain):
        # chain holds H_{t+1}, ..., H_g (top first)
        if t == 0:
            add(list(reversed(chain)))
            return
        above = chain[-1] if chain else None
        base = imT if above is None else subspace_image(rows, above)
        K = kers[t - 1]
        allowed = [i for i, v in enumerate(pts) if v in K]
        for S in _all_subsets(len(allowed)):
            H = subspace_sum(base, span([pts[allowed[i]] for i in S], n_amb, F))
            if 0 < H.dim < n_amb and (above is None or H.dim < above.dim):
                descend(t - 1, chain + [H])

    descend(g, [])
