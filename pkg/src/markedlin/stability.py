"""Stability of projective linear maps with marked points.

The flag test: a marked map ``(T, v)`` with sheaf ``O(q, m)`` is semistable
iff for every flag ``H`` of type I, II or III relative to ``T``

    Omega(v, H) = sum_j [ sum_{v_i in H_j} m_i - dim H_j * |m| / (N+1) ]
               <= q * c(T, H),      c = 0, +1, -1 for types I, II, III,

and stable iff all these inequalities are strict.  Exact verdicts come from
flag enumeration over GF(p), Mumford's subspace test when ``T`` is the
identity, or the closed form for a single marked point.  Over the rationals
in general only a candidate family can be searched.

The brute-force oracle instead runs over every complete flag (basis up to
the Borel subgroup) and tests ``0 in eta + q * Corner(weights)`` by LP.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .algebra import (
    QQ,
    Field,
    full_space,
    inverse,
    invariant_span,
    is_zero_vector,
    kernel,
    mat_mul,
    matrix,
    mat_vec,
    normalize_projective,
    rank,
    span,
    subspace_contains,
    transpose,
    vector,
    zeros,
)
from .flags import (
    DEFAULT_BUDGET,
    Flag,
    FlagType,
    candidate_flags,
    classify_flag,
    complete_flags,
    enumerate_flags,
)
from .maps import MarkedMap, ProjectiveMatrix, Sheaf
from .polyhedra import corner_membership, s_I
from .profiles import entry_weight


class Status(str, enum.Enum):
    STABLE = "STABLE"
    STRICTLY_SEMISTABLE = "STRICTLY_SEMISTABLE"
    UNSTABLE = "UNSTABLE"
    UNSTABLE_CERTIFIED = "UNSTABLE_CERTIFIED"
    NO_VIOLATION_IN_FAMILY = "NO_VIOLATION_IN_FAMILY"


class Mode(str, enum.Enum):
    EXACT = "EXACT"
    SEARCH = "SEARCH"


class NotATestFlag(ValueError):
    """The flag is of none of the three types, so it imposes no condition."""


class ExactModeUnavailable(ValueError):
    """No complete decision procedure applies to this instance."""


class NotStableError(ValueError):
    """The companion normal form needs a cyclic point with ``T^{N+1} v != 0``."""


class NotGenericError(ValueError):
    """Eigenvalues are repeated or not in the field, or ``v_1`` is special."""


@dataclass(frozen=True)
class Witness:
    """A flag together with its type, ``Omega`` and the bound ``q * c``."""

    flag: Flag
    flag_type: FlagType
    omega: Fraction
    bound: Fraction

    @property
    def violated(self) -> bool:
        return self.omega > self.bound

    @property
    def tight(self) -> bool:
        return self.omega == self.bound


@dataclass(frozen=True)
class BasisWitness:
    """A complete flag (basis up to the Borel subgroup) failing the LP test."""

    flag: Flag
    eta: tuple[Fraction, ...]
    failed: str  # "semistable" or "stable"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    mode: Mode
    witness: Optional[Union[Witness, BasisWitness]] = None
    method: str = ""
    meta: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.status in (Status.STABLE, Status.STRICTLY_SEMISTABLE) and self.mode is not Mode.EXACT:
            raise ValueError("stable/semistable verdicts need EXACT mode")
        if self.status in (Status.UNSTABLE, Status.UNSTABLE_CERTIFIED) and self.witness is None:
            raise ValueError("unstable verdicts carry a witness")
        if isinstance(self.witness, Witness) and self.status in (Status.UNSTABLE, Status.UNSTABLE_CERTIFIED):
            if not self.witness.violated:
                raise ValueError("witness does not violate its bound")


# Functionals.

def _weights(m: Optional[Sequence[int]], n: int) -> tuple[int, ...]:
    if m is None:
        return (1,) * n
    if len(m) != n:
        raise ValueError(f"{len(m)} weights for {n} points")
    return tuple(int(x) for x in m)


def eta(points: Sequence[Sequence], m: Optional[Sequence[int]], N: int) -> tuple[Fraction, ...]:
    """``eta_j = sum_i m_i (-j/(N+1) + [v_i in span(e_1..e_j)])`` for j = 1..N."""
    m = _weights(m, len(points))
    total = sum(m)
    out = []
    for j in range(1, N + 1):
        inc = sum(mi for v, mi in zip(points, m) if all(x == 0 for x in v[j:]))
        out.append(Fraction(inc) - Fraction(j * total, N + 1))
    return tuple(out)


def omega(points: Sequence[Sequence], m: Optional[Sequence[int]], f: Flag) -> Fraction:
    """Weighted incidences of the points with the flag minus the expected share."""
    m = _weights(m, len(points))
    total = sum(m)
    n_amb = f.ambient_dim
    out = Fraction(0)
    for H in f.spaces:
        inc = sum(mi for v, mi in zip(points, m) if subspace_contains(H, v))
        out += inc - Fraction(H.dim * total, n_amb)
    return out


_TYPE_CONSTANT = {FlagType.TYPE_I: 0, FlagType.TYPE_II: 1, FlagType.TYPE_III: -1}


def flag_bound(T, f: Flag, q: int) -> Fraction:
    t = classify_flag(T, f)
    if t is FlagType.NONE:
        raise NotATestFlag("flag is not of type I, II or III")
    return Fraction(q * _TYPE_CONSTANT[t])


def _fold(witnesses: Iterable[Witness]) -> tuple[Optional[Witness], Optional[Witness]]:
    """First violated witness (short-circuit) and first tight one."""
    tight = None
    for w in witnesses:
        if w.violated:
            return w, tight
        if tight is None and w.tight:
            tight = w
    return None, tight


def _witness_stream(mm: MarkedMap, sheaf: Sheaf, flags: Iterable[Flag]):
    m = _weights(sheaf.m or None, mm.n)
    rows = mm.T.rows
    for f in flags:
        t = classify_flag(rows, f)
        if t is FlagType.NONE:
            continue
        yield Witness(f, t, omega(mm.points, m, f), Fraction(sheaf.q * _TYPE_CONSTANT[t]))


def _exact_verdict(violation, tight, method, meta=None) -> StabilityVerdict:
    meta = dict(meta or {})
    if violation is not None:
        return StabilityVerdict(Status.UNSTABLE, Mode.EXACT, violation, method, meta)
    if tight is not None:
        return StabilityVerdict(Status.STRICTLY_SEMISTABLE, Mode.EXACT, tight, method, meta)
    return StabilityVerdict(Status.STABLE, Mode.EXACT, None, method, meta)


def _check_dims(mm: MarkedMap, sheaf: Sheaf) -> None:
    if sheaf.m and len(sheaf.m) != mm.n:
        raise ValueError(f"sheaf has {len(sheaf.m)} weights for {mm.n} points")


def _merge_points(mm: MarkedMap, sheaf: Sheaf) -> tuple[MarkedMap, Sheaf]:
    """Collapse projectively equal points, adding their weights."""
    m = _weights(sheaf.m or None, mm.n)
    merged: dict = {}
    for v, mi in zip(mm.points, m):
        key = normalize_projective(v, mm.field)
        merged[key] = merged.get(key, 0) + mi
    pts = tuple(merged)
    return MarkedMap(mm.T, pts), Sheaf(sheaf.q, tuple(merged[v] for v in pts))


def _distinct_points(mm: MarkedMap) -> int:
    return len(set(mm.normalized_points()))


def exact_available(mm: MarkedMap) -> bool:
    return mm.field.is_finite or mm.T.is_identity() or mm.N == 1 or _distinct_points(mm) == 1


def check_stability(
    mm: MarkedMap,
    sheaf: Sheaf,
    mode: Union[str, Mode] = "auto",
    budget: int = DEFAULT_BUDGET,
) -> StabilityVerdict:
    """Decide (semi)stability of ``mm`` with respect to ``sheaf``.

    ``mode`` is ``"exact"``, ``"search"`` or ``"auto"`` (exact when some
    complete procedure applies, otherwise search).
    """
    _check_dims(mm, sheaf)
    mode = str(getattr(mode, "value", mode)).lower()
    if mode not in ("exact", "search", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    v = _decide(mm, sheaf, mode, budget)
    if isinstance(v.witness, Witness) and not verify_witness(mm, sheaf, v.witness):
        raise RuntimeError(f"witness failed independent recomputation: {v.witness}")
    return v


def _decide(mm: MarkedMap, sheaf: Sheaf, mode: str, budget: int) -> StabilityVerdict:
    if mode == "search" or (mode == "auto" and not exact_available(mm)):
        return _search(mm, sheaf)
    F = mm.field
    if F.is_finite:
        flags = enumerate_flags(F, mm.N, budget=budget)
        v, t = _fold(_witness_stream(mm, sheaf, flags))
        return _exact_verdict(v, t, "flag-enumeration", {"field": str(F), "rational_flags_only": True})
    if mm.T.is_identity():
        res = mumford_config(mm.points, sheaf.m or None, mm.N, F)
        return StabilityVerdict(res.status, Mode.EXACT, res.witness, "subspace-test", dict(res.meta))
    if _distinct_points(mm) == 1:
        return _single_point(*_merge_points(mm, sheaf))
    if mm.N == 1:
        return _projective_line(mm, sheaf)
    raise ExactModeUnavailable(
        "exact mode needs a finite field, N = 1, the identity map, or a single distinct marked point"
    )


def _search(mm: MarkedMap, sheaf: Sheaf) -> StabilityVerdict:
    flags = candidate_flags(mm.T, mm.points)
    v, t = _fold(_witness_stream(mm, sheaf, flags))
    meta = {
        "family_size": len(flags),
        "note": "candidate family search; absence of violations does not prove stability",
    }
    if v is not None:
        return StabilityVerdict(Status.UNSTABLE_CERTIFIED, Mode.SEARCH, v, "candidate-search", meta)
    meta["equality_seen"] = t is not None
    return StabilityVerdict(Status.NO_VIOLATION_IN_FAMILY, Mode.SEARCH, t, "candidate-search", meta)


def mumford_config(
    points: Sequence[Sequence],
    m: Optional[Sequence[int]],
    N: int,
    field: Field = QQ,
) -> StabilityVerdict:
    """Subspace test for a point configuration (no map).

    Only spans of point subsets need checking: shrinking a violating subspace
    to the span of the points it contains keeps the count and lowers the
    dimension.
    """
    from itertools import combinations

    pts = [vector(v, field) for v in points]
    m = _weights(m, len(pts))
    n_amb = N + 1
    seen = {}
    for r in range(1, len(pts) + 1):
        for S in combinations(range(len(pts)), r):
            H = span([pts[i] for i in S], n_amb, field)
            if H.dim < n_amb and H not in seen:
                seen[H] = None
    flags = sorted((Flag(n_amb, (H,)) for H in seen), key=Flag.sort_key)
    ws = []
    for f in flags:
        ws.append(Witness(f, FlagType.TYPE_I, omega(pts, m, f), Fraction(0)))
    v, t = _fold(ws)
    return _exact_verdict(v, t, "subspace-test", {"subspaces_checked": len(flags)})


def _single_point(mm: MarkedMap, sheaf: Sheaf) -> StabilityVerdict:
    """Closed-form decision for one marked point.

    If ``v`` is not cyclic its invariant span violates the bound.  If ``v``
    is cyclic, invariant subspaces miss ``v``, the largest type II value of
    Omega is ``m N / 2`` (attained by ``span(v, ..., T^{t-1} v)``), and for
    nilpotent ``T`` the only type III flag is the kernel filtration with
    Omega ``-m N / 2``.  Coincident points are merged beforehand, which
    changes no value of Omega.
    """
    F = mm.field
    rows = mm.T.rows
    N = mm.N
    v = mm.points[0]
    X = invariant_span(rows, [v], N + 1, F)
    meta = {"procedure": "single marked point closed form"}
    if X.dim < N + 1:
        f = Flag(N + 1, (X,))
        w = next(_witness_stream(mm, sheaf, [f]))
        return _exact_verdict(w, None, "single-point", meta)
    orbit = [v]
    for _ in range(N):
        orbit.append(mat_vec(rows, orbit[-1], F))
    cyc = Flag(N + 1, tuple(span(orbit[:t], N + 1, F) for t in range(1, N + 1)))
    w2 = next(_witness_stream(mm, sheaf, [cyc]))
    nilpotent = is_zero_vector(mat_vec(rows, orbit[-1], F))
    cands = [w2]
    if nilpotent:
        power = rows
        kers = []
        for _ in range(N):
            kers.append(kernel(power, F))
            power = mat_mul(power, rows, F)
        w3 = next(_witness_stream(mm, sheaf, [Flag(N + 1, tuple(kers))]))
        cands.append(w3)
    v_, t_ = _fold(cands)
    return _exact_verdict(v_, t_, "single-point", meta)


def _projective_line(mm: MarkedMap, sheaf: Sheaf) -> StabilityVerdict:
    """Exact test on P^1, where every flag is a single line.

    A line through none of the points has Omega = -|m|/2, which meets every
    bound except possibly the type III one; the only type III line is the
    kernel of a nilpotent map, which is an eigenline.  So the lines through
    marked points together with the eigenlines decide everything.
    """
    F = mm.field
    rows = mm.T.rows
    lines = {span([v], 2, F) for v in mm.points}
    for lam in eigenvalues(rows, F):
        shifted = tuple(tuple(F(x - (lam if i == j else 0)) for j, x in enumerate(r)) for i, r in enumerate(rows))
        K = kernel(shifted, F)
        if K.dim == 1:
            lines.add(K)
    flags = sorted((Flag(2, (L,)) for L in lines), key=Flag.sort_key)
    v, t = _fold(_witness_stream(mm, sheaf, flags))
    return _exact_verdict(v, t, "projective-line", {"lines_checked": len(flags)})


# Witness verification by an independent route: extend the flag to a basis
# and evaluate s_I on the eta vector of the point coordinates.

def adapted_basis(f: Flag) -> tuple[tuple, ...]:
    """Columns ``b_1..b_{N+1}`` with ``H_t`` spanned by the first ``dim H_t``."""
    F = f.field
    n = f.ambient_dim
    cols: list = []
    cur = span([], n, F)
    for H in (*f.spaces, full_space(n, F)):
        for r in H.basis:
            if not subspace_contains(cur, r):
                cols.append(r)
                cur = span(cols, n, F)
    return tuple(cols)


def coordinates(basis_cols: Sequence[Sequence], vectors: Sequence[Sequence], field: Field):
    B = transpose(tuple(tuple(c) for c in basis_cols))
    Binv = inverse(B, field)
    return Binv, B, [mat_vec(Binv, v, field) for v in vectors]


def omega_by_coordinates(points, m, f: Flag) -> Fraction:
    _, _, coords = coordinates(adapted_basis(f), points, f.field)
    e = eta(coords, m, f.ambient_dim - 1)
    return s_I(f.dims, e)


def verify_witness(mm: MarkedMap, sheaf: Sheaf, w: Witness) -> bool:
    """Recompute type, Omega (via coordinates) and bound of a witness."""
    m = _weights(sheaf.m or None, mm.n)
    t = classify_flag(mm.T.rows, w.flag)
    if t is not w.flag_type or t is FlagType.NONE:
        return False
    om = omega_by_coordinates(mm.points, m, w.flag)
    bound = Fraction(sheaf.q * _TYPE_CONSTANT[t])
    return om == w.omega and bound == w.bound


# Brute-force Hilbert-Mumford oracle.

def hilbert_mumford_oracle(mm: MarkedMap, sheaf: Sheaf, budget: int = DEFAULT_BUDGET) -> StabilityVerdict:
    """Test ``0 in eta + q * Corner(weights)`` in every basis up to the Borel.

    Works over finite fields only; uses no flag types and no facet formulas.
    """
    F = mm.field
    if not F.is_finite:
        raise ValueError("the oracle enumerates bases and needs a finite field")
    _check_dims(mm, sheaf)
    N = mm.N
    m = _weights(sheaf.m or None, mm.n)
    q = sheaf.q
    boundary = None
    checked = 0
    for f in complete_flags(F, N, budget):
        checked += 1
        Binv, B, coords = coordinates(adapted_basis(f), mm.points, F)
        M = mat_mul(mat_mul(Binv, mm.T.rows, F), B, F)
        W = {entry_weight(i + 1, j + 1, N) for i, r in enumerate(M) for j, x in enumerate(r) if x != 0}
        e = eta(coords, m, N)
        Z = [tuple(ei + q * wi for ei, wi in zip(e, w)) for w in W]
        origin = (0,) * N
        if not corner_membership(Z, origin):
            wit = BasisWitness(f, e, "semistable")
            return StabilityVerdict(Status.UNSTABLE, Mode.EXACT, wit, "basis-oracle", {"bases_checked": checked})
        if boundary is None and not corner_membership(Z, origin, strict=True):
            boundary = BasisWitness(f, e, "stable")
    meta = {"bases_checked": checked}
    if boundary is not None:
        return StabilityVerdict(Status.STRICTLY_SEMISTABLE, Mode.EXACT, boundary, "basis-oracle", meta)
    return StabilityVerdict(Status.STABLE, Mode.EXACT, None, "basis-oracle", meta)


# Witnesses and normal forms.

def stable_witness(N: int, n: int, q: int, field: Field = QQ) -> MarkedMap:
    """``diag(1, ..., N+1)`` with every marked point at ``(1, ..., 1)``."""
    if N < 1 or n < 1:
        raise ValueError("need N >= 1 and n >= 1")
    if q < n:
        raise ValueError("the construction needs q >= n")
    if field.is_finite and field.p <= N + 1:
        raise ValueError("need p > N + 1 for distinct nonzero eigenvalues")
    T = tuple(tuple(field(i + 1) if i == j else field.zero for j in range(N + 1)) for i in range(N + 1))
    pts = tuple((field.one,) * (N + 1) for _ in range(n))
    return MarkedMap(ProjectiveMatrix(T, field), pts)


def companion_form(mm: MarkedMap) -> tuple:
    """Coefficients ``alpha`` with ``T^{N+1} v = sum_k alpha_k T^{k-1} v``.

    In the basis ``v, Tv, ..., T^N v`` the matrix of ``T`` has ones on the
    subdiagonal and last column ``alpha``.  The result is unchanged by
    conjugating ``T`` and moving ``v`` along, and by rescaling ``v``;
    rescaling ``T`` by ``c`` multiplies ``alpha_k`` by ``c^{N+2-k}``.
    """
    if mm.n != 1:
        raise ValueError("companion form is defined for one marked point")
    F = mm.field
    rows = mm.T.rows
    N = mm.N
    orbit = [mm.points[0]]
    for _ in range(N + 1):
        orbit.append(mat_vec(rows, orbit[-1], F))
    K = transpose(tuple(orbit[: N + 1]))
    if rank(K, F) != N + 1:
        raise NotStableError("v, Tv, ..., T^N v are dependent")
    if is_zero_vector(orbit[-1]):
        raise NotStableError("T^{N+1} v = 0")
    return mat_vec(inverse(K, F), orbit[-1], F)


def projectively_equal(a: Sequence, b: Sequence, field: Field = QQ) -> bool:
    return normalize_projective(a, field) == normalize_projective(b, field)


def charpoly(rows, field: Field = QQ) -> tuple:
    """Coefficients ``c_0..c_n`` of ``det(x I - A)``, lowest degree first.

    Faddeev-LeVerrier; over GF(p) this needs ``p > n``.
    """
    n = len(rows)
    A = matrix(rows, field)
    if field.is_finite and field.p <= n:
        raise ValueError("Faddeev-LeVerrier needs p > n")
    c = [field.zero] * (n + 1)
    c[n] = field.one
    M = zeros(n, n, field)
    for k in range(1, n + 1):
        AM = mat_mul(A, M, field)
        M = tuple(
            tuple(field(x + c[n - k + 1]) if i == j else x for j, x in enumerate(r))
            for i, r in enumerate(AM)
        )
        AM = mat_mul(A, M, field)
        tr = sum(AM[i][i] for i in range(n))
        c[n - k] = field(Fraction(-tr, k))
    return tuple(c)


def _rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of a polynomial (lowest degree first), without multiplicity."""
    from math import lcm

    c = [Fraction(x) for x in coeffs]
    den = lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    roots = []
    while ints and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(set(roots))
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(k):
        out = set()
        d = 1
        while d * d <= k:
            if k % d == 0:
                out.update((d, k // d))
            d += 1
        return out

    for p_ in divisors(a0):
        for q_ in divisors(an):
            for s in (1, -1):
                x = Fraction(s * p_, q_)
                if sum(a * x**k for k, a in enumerate(ints)) == 0:
                    roots.append(x)
    return sorted(set(roots))


def eigenvalues(rows, field: Field = QQ) -> list:
    """Distinct eigenvalues lying in the field, in the field's order."""
    n = len(rows)
    if field.is_finite:
        out = []
        for lam in field.elements():
            shifted = tuple(tuple(field(x - (lam if i == j else 0)) for j, x in enumerate(r)) for i, r in enumerate(rows))
            if rank(shifted, field) < n:
                out.append(lam)
        return out
    return _rational_roots(charpoly(rows, field))


def moduli_coordinates(mm: MarkedMap) -> tuple[tuple, tuple]:
    """Sorted eigenvalues and the remaining points after the normalization
    that diagonalizes ``T`` and sends ``v_1`` to ``(1, ..., 1)``."""
    F = mm.field
    rows = mm.T.rows
    n_amb = mm.T.size
    lams = eigenvalues(rows, F)
    if len(lams) != n_amb:
        raise NotGenericError("T needs N+1 distinct eigenvalues in the field")
    lams = sorted(lams, key=F.sort_key)
    vecs = []
    for lam in lams:
        shifted = tuple(tuple(F(x - (lam if i == j else 0)) for j, x in enumerate(r)) for i, r in enumerate(rows))
        K = kernel(shifted, F)
        vecs.append(K.basis[0])
    _, _, (c,) = coordinates(vecs, [mm.points[0]], F)
    if any(x == 0 for x in c):
        raise NotGenericError("v_1 lies on an eigen-hyperplane")
    scaled = [tuple(F(ci * x) for x in v) for ci, v in zip(c, vecs)]
    _, _, rest = coordinates(scaled, mm.points[1:], F)
    return tuple(lams), tuple(normalize_projective(v, F) for v in rest)
