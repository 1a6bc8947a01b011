"""Dyck-path profiles of square matrices.

A profile is the tightest Dyck path in the gridlines of an ``(N+1) x (N+1)``
matrix that keeps every nonzero entry on its upper-right side.  Paths are
words in ``D`` (down one row) and ``R`` (right one column), read from the
top-left corner.  Matrices that are not strictly upper-triangular get a
*lower* path (it starts with ``D`` and never rises above the diagonal);
strictly upper-triangular matrices get an *upper* path.

Entry indices are 1-based ``(row, col)`` pairs throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

LOWER = "lower"
UPPER = "upper"


class TrivialProfileError(ValueError):
    """The zero matrix has no profile."""


Entry = tuple[int, int]


def support(M) -> frozenset[Entry]:
    """1-based positions of the nonzero entries of a matrix-like object."""
    rows = getattr(M, "rows", M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return frozenset((i + 1, j + 1) for i, r in enumerate(rows) for j, x in enumerate(r) if x != 0)


def _size(M) -> int:
    return len(getattr(M, "rows", M))


@dataclass(frozen=True)
class Profile:
    word: str
    orientation: str

    def __post_init__(self):
        w = self.word
        if len(w) % 2 or set(w) - {"D", "R"} or w.count("D") != w.count("R") or not w:
            raise ValueError(f"not a balanced D/R word: {w!r}")
        if self.orientation == LOWER:
            ok = w[0] == "D" and _prefix_ok(w, lambda d, r: r <= d)
        elif self.orientation == UPPER:
            ok = w[0] == "R" and _prefix_ok(w, lambda d, r: r >= d)
            if w == "R" * (len(w) // 2) + "D" * (len(w) // 2):
                raise ValueError("the empty upper path is the trivial profile")
        else:
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if not ok:
            raise ValueError(f"{w!r} is not a {self.orientation} Dyck path")

    @property
    def N(self) -> int:
        return len(self.word) // 2 - 1

    def columns_left(self) -> tuple[int, ...]:
        """``c_i``: columns lying left of the path in row ``i`` (1-based rows)."""
        out, r = [], 0
        for ch in self.word:
            if ch == "R":
                r += 1
            else:
                out.append(r)
        return tuple(out)

    def contains(self, entry: Entry) -> bool:
        i, j = entry
        return j > self.columns_left()[i - 1]

    def to_json(self) -> dict:
        return {"word": self.word, "orientation": self.orientation}

    def __str__(self) -> str:
        return f"{self.word} ({self.orientation})"


def _prefix_ok(word: str, pred) -> bool:
    d = r = 0
    for ch in word:
        if ch == "D":
            d += 1
        else:
            r += 1
        if not pred(d, r):
            return False
    return True


def is_upper_triangular(supp: Iterable[Entry]) -> bool:
    return all(i <= j for i, j in supp)


def is_strictly_upper(supp: Iterable[Entry]) -> bool:
    return all(i < j for i, j in supp)


def _profile_from_support(supp: frozenset[Entry], size: int) -> Profile:
    if not supp:
        raise TrivialProfileError("the zero matrix has only the trivial profile")
    lower = not is_strictly_upper(supp)
    mincol = [size + 1] * (size + 2)
    for i, j in supp:
        mincol[i] = min(mincol[i], j)
    # gap[i]: columns that may sit left of the path in row i, i.e. left of
    # every nonzero entry in rows i..N+1.
    gap = [size] * (size + 2)
    for i in range(size, 0, -1):
        gap[i] = min(gap[i + 1], mincol[i] - 1)
    cols = [min(i - 1, gap[i]) if lower else gap[i] for i in range(1, size + 1)]
    word, prev = [], 0
    for c in cols:
        word.append("R" * (c - prev) + "D")
        prev = c
    word.append("R" * (size - prev))
    return Profile("".join(word), LOWER if lower else UPPER)


def profile(M) -> Profile:
    """Profile of a nonzero square matrix (raw rows or a ProjectiveMatrix)."""
    return _profile_from_support(support(M), _size(M))


def pivotal_entries(p: Profile) -> tuple[Entry, ...]:
    """Entries sitting in a ``DR`` corner of the path, top-left to bottom-right."""
    out = []
    d = r = 0
    w = p.word
    for k, ch in enumerate(w):
        if ch == "D":
            d += 1
            if k + 1 < len(w) and w[k + 1] == "R":
                out.append((d, r + 1))
        else:
            r += 1
    return tuple(out)


def outweighs(a: Entry, b: Entry, N: int) -> bool:
    """Whether entry ``a`` outweighs entry ``b`` in an ``(N+1)``-square matrix."""
    (i, j), (i2, j2) = a, b
    for x in (i, j, i2, j2):
        if not 1 <= x <= N + 1:
            raise ValueError("entry index out of range")
    if a == b:
        return False
    if i > j:
        if i2 > j2:
            return i >= i2 and j <= j2
        return True
    if i == j:
        return i2 < j2
    if i2 < j2:
        return i >= i2 and j <= j2
    return False


def minimal_entries(M) -> frozenset[Entry]:
    """Nonzero entries not outweighed by any other nonzero entry."""
    supp = support(M)
    if not supp:
        raise TrivialProfileError("the zero matrix has no minimal entries")
    N = _size(M) - 1
    return frozenset(a for a in supp if not any(outweighs(b, a, N) for b in supp))


@dataclass(frozen=True)
class ControlMatrix:
    """Vertices of a corner polyhedron as an ``N x kappa`` matrix of columns."""

    n_rows: int
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise ValueError("a control matrix has at least one column")
        blocks = []
        signs = set()
        for c in cols:
            if len(c) != self.n_rows:
                raise ValueError("column length differs from n_rows")
            nz = [k for k, x in enumerate(c) if x != 0]
            if not nz:
                if len(cols) != 1:
                    raise ValueError("a zero column must be the only column")
                continue
            vals = {c[k] for k in nz}
            if len(vals) != 1 or vals - {1, -1} or nz != list(range(nz[0], nz[-1] + 1)):
                raise ValueError(f"column {c} is not a contiguous +-1 block")
            signs |= vals
            blocks.append((nz[0], nz[-1]))
        if len(signs) > 1:
            raise ValueError("columns mix signs")
        for (t0, u0), (t1, u1) in zip(blocks, blocks[1:]):
            if not (t0 < t1 and u0 < u1):
                raise ValueError("columns are not in canonical order")

    @property
    def kappa(self) -> int:
        return len(self.columns)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.columns))

    def to_json(self) -> dict:
        return {"N": self.n_rows, "columns": [list(c) for c in self.columns]}


def entry_weight(i: int, j: int, N: int) -> tuple[int, ...]:
    """s-coordinates of the weight of matrix entry ``(i, j)``."""
    if not (1 <= i <= N + 1 and 1 <= j <= N + 1):
        raise ValueError("entry index out of range")
    w = [0] * N
    if i > j:
        for k in range(j, i):
            w[k - 1] = -1
    elif i < j:
        for k in range(i, j):
            w[k - 1] = 1
    return tuple(w)


def control_matrix(M) -> ControlMatrix:
    supp = support(M)
    N = _size(M) - 1
    p = _profile_from_support(supp, N + 1)
    if is_upper_triangular(supp) and not is_strictly_upper(supp):
        return ControlMatrix(N, ((0,) * N,))
    cols = [entry_weight(i, j, N) for i, j in pivotal_entries(p) if i != j]
    return ControlMatrix(N, tuple(cols))


def enumerate_profiles(N: int) -> list[Profile]:
    """All lower Dyck paths and all nontrivial upper ones, sorted with D < R."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return list(_enumerate_profiles(N))


@lru_cache(maxsize=None)
def _enumerate_profiles(N: int) -> tuple[Profile, ...]:
    L = 2 * N + 2
    out = []
    for downs in combinations(range(L), N + 1):
        s = set(downs)
        word = "".join("D" if k in s else "R" for k in range(L))
        for orient in (LOWER, UPPER):
            try:
                out.append(Profile(word, orient))
            except ValueError:
                pass
    return tuple(sorted(out, key=lambda p: p.word))


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def matrix_from_support(entries: Iterable[Entry], N: int) -> tuple[tuple[int, ...], ...]:
    """0/1 matrix with ones at the given 1-based entries."""
    s = set(entries)
    return tuple(tuple(1 if (i, j) in s else 0 for j in range(1, N + 2)) for i in range(1, N + 2))


def weights_of(entries: Sequence[Entry], N: int) -> list[tuple[int, ...]]:
    return [entry_weight(i, j, N) for i, j in entries]
