"""Exact linear algebra over the rationals and over prime fields.

Vectors are tuples of field elements and matrices are tuples of row tuples.
Rational scalars are :class:`fractions.Fraction` values; prime-field scalars
are canonical residues ``0 <= a < p`` stored as plain ints.  Every public
function returns canonical, immutable values so results can be hashed and
compared syntactically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence, Union

Scalar = Union[int, Fraction]
Vector = tuple
Rows = tuple


class DimensionError(ValueError):
    """Raised when operands have incompatible shapes."""


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers."""

    kind: str = "Q"

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to a rational")

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def sort_key(self, a: Fraction):
        return a

    def elements(self) -> Iterator[Fraction]:
        raise ValueError("the rational field is infinite")

    def __str__(self) -> str:
        return "QQ"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime ``p``."""

    p: int
    kind: str = "gfp"

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def __call__(self, x) -> int:
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to GF({self.p})")

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def sort_key(self, a: int):
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def __str__(self) -> str:
        return f"GF({self.p})"


Field = Union[RationalField, PrimeField]
QQ = RationalField()


# Arithmetic helpers.  For GF(p) every product and sum is reduced so that
# stored values stay canonical.

def _mul(F: Field, a, b):
    return a * b % F.p if F.is_finite else a * b


def _sub(F: Field, a, b):
    return (a - b) % F.p if F.is_finite else a - b


def _add(F: Field, a, b):
    return (a + b) % F.p if F.is_finite else a + b


def _div(F: Field, a, b):
    return _mul(F, a, F.inv(b))


def vector(values: Iterable, field: Field = QQ) -> Vector:
    return tuple(field(x) for x in values)


def matrix(rows: Iterable[Iterable], field: Field = QQ) -> Rows:
    out = tuple(vector(r, field) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionError("ragged matrix")
    return out


def identity(n: int, field: Field = QQ) -> Rows:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def zeros(n: int, m: int, field: Field = QQ) -> Rows:
    return tuple(tuple(field.zero for _ in range(m)) for _ in range(n))


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def transpose(m: Rows) -> Rows:
    return tuple(zip(*m))


def mat_vec(m: Rows, v: Sequence, field: Field = QQ) -> Vector:
    if m and len(m[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    if field.is_finite:
        p = field.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in m)
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def mat_mul(a: Rows, b: Rows, field: Field = QQ) -> Rows:
    if a and b and len(a[0]) != len(b):
        raise DimensionError("matrix product size mismatch")
    cols = transpose(b)
    return tuple(mat_vec(cols, row, field) for row in a)


def scale_vector(c, v: Sequence, field: Field = QQ) -> Vector:
    return tuple(_mul(field, c, x) for x in v)


def normalize_projective(v: Sequence, field: Field = QQ) -> Vector:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    for x in v:
        if x != 0:
            return scale_vector(field.inv(x), v, field)
    raise ValueError("the zero vector is not a projective point")


def _rref_with_pivots(m: Rows, field: Field) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in m]
    pivots: list[int] = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        sel = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [_mul(field, inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [_sub(field, x, _mul(field, f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Rows, field: Field = QQ) -> Rows:
    """Reduced row-echelon form, same shape as ``m`` (zero rows kept last)."""
    rows, _ = _rref_with_pivots(matrix(m, field), field)
    return tuple(tuple(r) for r in rows)


def rank(m: Rows, field: Field = QQ) -> int:
    return len(_rref_with_pivots(matrix(m, field), field)[1])


def inverse(m: Rows, field: Field = QQ) -> Rows:
    n = len(m)
    aug = tuple(tuple(row) + ident for row, ident in zip(matrix(m, field), identity(n, field)))
    rows, pivots = _rref_with_pivots(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``field^ambient_dim`` in canonical form.

    ``basis`` is the nonzero part of the reduced row-echelon form of any
    spanning set, so two equal subspaces always have identical bases.
    """

    field: Field
    ambient_dim: int
    basis: Rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x != 0) for r in self.basis)

    def __contains__(self, v) -> bool:
        return subspace_contains(self, v)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={[list(map(str, r)) for r in self.basis]})"


def span(vectors: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> Subspace:
    vs = [vector(v, field) for v in vectors]
    for v in vs:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    rows, pivots = _rref_with_pivots(tuple(vs), field)
    return Subspace(field, ambient_dim, tuple(tuple(r) for r in rows[: len(pivots)]))


def zero_subspace(ambient_dim: int, field: Field = QQ) -> Subspace:
    return Subspace(field, ambient_dim, ())


def full_space(ambient_dim: int, field: Field = QQ) -> Subspace:
    return Subspace(field, ambient_dim, identity(ambient_dim, field))


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise DimensionError("subspaces live in different ambient spaces")


def _reduce(a: Subspace, v: Sequence) -> list:
    w = list(v)
    F = a.field
    for row, c in zip(a.basis, a.pivots):
        if w[c] != 0:
            f = w[c]
            w = [_sub(F, x, _mul(F, f, y)) for x, y in zip(w, row)]
    return w


def subspace_contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise DimensionError("vector length does not match ambient dimension")
    return is_zero_vector(_reduce(a, vector(v, a.field)))


@lru_cache(maxsize=1 << 18)
def subspace_leq(a: Subspace, b: Subspace) -> bool:
    _check_same(a, b)
    if a.dim > b.dim:
        return False
    return all(is_zero_vector(_reduce(b, r)) for r in a.basis)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return span(a.basis + b.basis, a.ambient_dim, a.field)


@lru_cache(maxsize=1 << 18)
def _image(T: Rows, a: Subspace) -> Subspace:
    return span((mat_vec(T, r, a.field) for r in a.basis), a.ambient_dim, a.field)


def subspace_image(T: Rows, a: Subspace) -> Subspace:
    if len(T) != a.ambient_dim:
        raise DimensionError("map and subspace dimensions differ")
    return _image(matrix(T, a.field), a)


def kernel(T: Rows, field: Field = QQ) -> Subspace:
    """Null space ``{x : T x = 0}``."""
    m = matrix(T, field)
    n = len(m[0]) if m else 0
    rows, pivots = _rref_with_pivots(m, field)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * n
        x[f] = field.one
        for row, c in zip(rows, pivots):
            x[c] = _sub(field, field.zero, row[f])
        basis.append(x)
    return span(basis, n, field)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    F = a.field
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.ambient_dim, F)
    # Solve x A = y B via the kernel of the stacked transpose.
    stacked = transpose(a.basis + tuple(scale_vector(F(-1), r, F) for r in b.basis))
    ker = kernel(stacked, F)
    vecs = []
    for coeffs in ker.basis:
        x = [F.zero] * a.ambient_dim
        for c, row in zip(coeffs[: a.dim], a.basis):
            x = [_add(F, s, _mul(F, c, y)) for s, y in zip(x, row)]
        vecs.append(x)
    return span(vecs, a.ambient_dim, F)


def invariant_span(T: Rows, seeds: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> Subspace:
    """Smallest ``T``-invariant subspace containing the seeds."""
    X = span(seeds, ambient_dim, field)
    Tm = matrix(T, field)
    for _ in range(ambient_dim + 1):
        nxt = subspace_sum(X, subspace_image(Tm, X))
        if nxt.dim == X.dim:
            return X
        X = nxt
    return X


def enumerate_subspaces(field: PrimeField, n: int, dim: int) -> Iterator[Subspace]:
    """Every ``dim``-dimensional subspace of ``GF(p)^n`` exactly once.

    Subspaces are generated directly as reduced echelon forms: choose pivot
    columns, then fill the free positions to the right of each pivot that are
    not themselves pivot columns.  Order: pivot sets lexicographically, then
    free entries lexicographically.
    """
    from itertools import combinations

    if not field.is_finite:
        raise ValueError("subspace enumeration needs a finite field")
    if dim == 0:
        yield zero_subspace(n, field)
        return
    for pivots in combinations(range(n), dim):
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for fill in product(range(field.p), repeat=len(slots)):
            rows = [[0] * n for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(slots, fill):
                rows[r][c] = x
            yield Subspace(field, n, tuple(tuple(r) for r in rows))


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


# Serialization of scalars.

def scalar_to_json(x) -> Union[str, int]:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def field_to_json(field: Field) -> dict:
    if field.is_finite:
        return {"kind": "gfp", "p": field.p}
    return {"kind": "Q"}


def field_from_json(obj) -> Field:
    if obj in (None, "Q", "QQ"):
        return QQ
    if isinstance(obj, dict):
        kind = obj.get("kind", obj.get("field"))
        if kind == "Q":
            return QQ
        if kind == "gfp":
            return PrimeField(int(obj["p"]))
    raise ValueError(f"unknown field description {obj!r}")
