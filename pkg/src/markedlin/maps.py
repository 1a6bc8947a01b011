"""Projective matrices, marked linear maps, and the sheaf parameters."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import QQ, DimensionError, Field, Rows, Vector, is_zero_vector, matrix, normalize_projective, vector


class ZeroMatrixError(ValueError):
    """The zero matrix has no projective class."""


@dataclass(frozen=True, eq=False)
class ProjectiveMatrix:
    """A nonzero square matrix up to scale.

    The representative is kept as given (quantities such as the companion
    coefficients depend on it through the scaling weights); equality and
    hashing use the representative whose first nonzero entry is 1.
    """

    rows: Rows
    field: Field = QQ

    def __post_init__(self):
        rows = matrix(self.rows, self.field)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DimensionError("projective matrix must be square and nonempty")
        if all(is_zero_vector(r) for r in rows):
            raise ZeroMatrixError("zero matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def N(self) -> int:
        return len(self.rows) - 1

    @property
    def size(self) -> int:
        return len(self.rows)

    def normalized(self) -> Rows:
        flat = normalize_projective([x for r in self.rows for x in r], self.field)
        n = self.size
        return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectiveMatrix):
            return NotImplemented
        return self.field == other.field and self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash((self.field, self.normalized()))

    def is_identity(self) -> bool:
        rows = self.normalized()
        return all((x == 1) if i == j else (x == 0) for i, r in enumerate(rows) for j, x in enumerate(r))


def as_projective(T, field: Field = QQ) -> ProjectiveMatrix:
    if isinstance(T, ProjectiveMatrix):
        return T
    return ProjectiveMatrix(T, field)


@dataclass(frozen=True)
class MarkedMap:
    """A projective linear map ``T`` together with marked points ``v_1..v_n``."""

    T: ProjectiveMatrix
    points: tuple[Vector, ...]

    def __post_init__(self):
        pts = tuple(vector(v, self.T.field) for v in self.points)
        for v in pts:
            if len(v) != self.T.size:
                raise DimensionError(f"point of length {len(v)} for a map on {self.T.size} coordinates")
            if is_zero_vector(v):
                raise ValueError("marked points must be nonzero")
        object.__setattr__(self, "points", pts)

    @classmethod
    def build(cls, T, points: Sequence[Sequence], field: Field = QQ) -> "MarkedMap":
        return cls(as_projective(T, field), tuple(points))

    @property
    def field(self) -> Field:
        return self.T.field

    @property
    def N(self) -> int:
        return self.T.N

    @property
    def n(self) -> int:
        return len(self.points)

    def normalized_points(self) -> tuple[Vector, ...]:
        return tuple(normalize_projective(v, self.field) for v in self.points)


@dataclass(frozen=True)
class Sheaf:
    """The line bundle ``O(q, m_1, ..., m_n)``."""

    q: int
    m: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if int(self.q) < 1:
            raise ValueError("q must be a positive integer")
        if any(x < 1 for x in self.m):
            raise ValueError("point weights must be positive integers")

    @classmethod
    def uniform(cls, q: int, n: int) -> "Sheaf":
        return cls(q, (1,) * n)
