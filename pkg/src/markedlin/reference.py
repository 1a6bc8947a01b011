"""Catalogue of worked corner-polyhedron examples with known answers.

Each example fixes entries that must be nonzero and entries left free; both
the sparsest and the densest 0/1 realizations are checked, since profiles,
control matrices and facets may not depend on the free entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .polyhedra import corner_facets
from .profiles import Entry, control_matrix, matrix_from_support, pivotal_entries, profile


@dataclass(frozen=True)
class ReferenceExample:
    name: str
    N: int
    nonzero: tuple[Entry, ...]
    free: tuple[Entry, ...]
    word: str
    orientation: str
    control: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[tuple[int, ...], str], ...]

    def realizations(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        yield matrix_from_support(self.nonzero, self.N)
        yield matrix_from_support(self.nonzero + self.free, self.N)


def _all(N):
    return [(i, j) for i in range(1, N + 2) for j in range(1, N + 2)]


def generic(N: int) -> ReferenceExample:
    bold = ((N + 1, 1),)
    return ReferenceExample(
        "generic", N, bold, tuple(e for e in _all(N) if e not in bold),
        "D" * (N + 1) + "R" * (N + 1), "lower",
        ((-1,) * N,),
        tuple(((i,), "F-1B") for i in range(1, N + 1)),
    )


def most_degenerate(N: int) -> ReferenceExample:
    return ReferenceExample(
        "most-degenerate", N, ((1, N + 1),), (),
        "R" * N + "DR" + "D" * N, "upper",
        ((1,) * N,),
        tuple(((i,), "F-2B") for i in range(1, N + 1)),
    )


def main_stair(N: int) -> ReferenceExample:
    return ReferenceExample(
        "main-stair", N, ((1, 1),), tuple((i, j) for i, j in _all(N) if i <= j and (i, j) != (1, 1)),
        "DR" * (N + 1), "lower",
        ((0,) * N,),
        tuple(((i,), "F-1A") for i in range(1, N + 1)),
    )


def _subsets(N):
    from itertools import combinations

    for g in range(1, N + 1):
        yield from combinations(range(1, N + 1), g)


def lower_stair(N: int) -> ReferenceExample:
    bold = tuple((i + 1, i) for i in range(1, N + 1))
    free = tuple((i, j) for i, j in _all(N) if i <= j <= i + 1)
    return ReferenceExample(
        "lower-stair", N, bold, free,
        "D" + "DR" * N + "R", "lower",
        tuple(tuple(-1 if r == c else 0 for r in range(N)) for c in range(N)),
        tuple((I, "F-1B") for I in _subsets(N)),
    )


def upper_stair(N: int) -> ReferenceExample:
    bold = tuple((i, i + 1) for i in range(1, N + 1))
    free = tuple((i, j) for i, j in _all(N) if j > i + 1)
    return ReferenceExample(
        "upper-stair", N, bold, free,
        "RD" * (N + 1), "upper",
        tuple(tuple(1 if r == c else 0 for r in range(N)) for c in range(N)),
        tuple(((i,), "F-2A") for i in range(1, N + 1)) + ((tuple(range(1, N + 1)), "F-2B"),),
    )


def elaborate_lower() -> ReferenceExample:
    N = 7
    bold = ((3, 1), (5, 2), (8, 7))
    free = []
    for i in (1, 2, 3):
        free += [(i, j) for j in range(1, 9)]
    for i in (4, 5):
        free += [(i, j) for j in range(2, 9)]
    free += [(6, 7), (6, 8), (7, 7), (7, 8), (8, 8)]
    listed_1b = [(1,), (2,), (3,), (4,), (7,), (1, 3), (1, 4), (1, 7), (1, 3, 7), (1, 4, 7)]
    return ReferenceExample(
        "elaborate-lower-N7", N, bold, tuple(e for e in free if e not in bold),
        "DDDRDDRRRRDRDDRR", "lower",
        ((-1, -1, 0, 0, 0, 0, 0), (0, -1, -1, -1, 0, 0, 0), (0, 0, 0, 0, 0, 0, -1)),
        tuple(sorted([((5,), "F-1A"), ((6,), "F-1A")] + [(I, "F-1B") for I in listed_1b],
                     key=lambda f: (len(f[0]), f[0]))),
    )


def strictly_upper_5x5() -> ReferenceExample:
    return ReferenceExample(
        "strictly-upper-5x5", 4, ((1, 3), (2, 4)), ((1, 4), (1, 5), (2, 5)),
        "RRDRDRRDDD", "upper",
        ((1, 1, 0, 0), (0, 1, 1, 0)),
        (((1,), "F-2A"), ((2,), "F-2B"), ((3,), "F-2A"), ((4,), "F-2A"), ((1, 3), "F-2B")),
    )


def catalogue() -> list[ReferenceExample]:
    out = []
    for N in (1, 2, 3, 4):
        out += [generic(N), most_degenerate(N), main_stair(N)]
    out += [lower_stair(2), upper_stair(2), elaborate_lower(), strictly_upper_5x5()]
    return out


@dataclass(frozen=True)
class Comparison:
    example: str
    realization: int
    field: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def compare(ex: ReferenceExample) -> list[Comparison]:
    """Compare profile, pivotal entries, control matrix and facets."""
    out = []
    for k, M in enumerate(ex.realizations()):
        p = profile(M)
        out.append(Comparison(ex.name, k, "profile", (ex.word, ex.orientation), (p.word, p.orientation)))
        ctrl = control_matrix(M).columns
        out.append(Comparison(ex.name, k, "control", ex.control, ctrl))
        P = corner_facets(M)
        got = tuple((f.I, f.kind) for f in P.facets)
        out.append(Comparison(ex.name, k, "facets", ex.facets, got))
        piv = [e for e in pivotal_entries(p) if e[0] != e[1]] if ctrl != ((0,) * ex.N,) else []
        out.append(Comparison(ex.name, k, "nonzero-pivots", True, all(e in ex.nonzero for e in piv)))
    return out
