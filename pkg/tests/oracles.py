"""Brute-force oracles that share no code with the closed forms under test."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy


def all_subsets(N):
    for g in range(1, N + 1):
        yield from combinations(range(1, N + 1), g)


def weight(i, j, N):
    # e_i - e_j in simple-root coordinates: s_k = x_1 + ... + x_k
    x = [0] * (N + 1)
    x[i - 1] += 1
    x[j - 1] -= 1
    s, acc = [], 0
    for k in range(N):
        acc += x[k]
        s.append(acc)
    return tuple(s)


def raw_weights(M):
    N = len(M) - 1
    return {weight(i + 1, j + 1, N) for i, r in enumerate(M) for j, x in enumerate(r) if x != 0}


def face_dimension(W, I, N):
    """Dimension of the face of conv(W) + orthant minimised by s_I."""
    vals = {w: sum(w[i - 1] for i in I) for w in W}
    c = min(vals.values())
    low = [w for w in W if vals[w] == c]
    gens = [[a - b for a, b in zip(w, low[0])] for w in low[1:]]
    gens += [[1 if k == j else 0 for k in range(N)] for j in range(N) if j + 1 not in I]
    if not gens:
        return 0, c
    return sympy.Matrix(gens).rank(), c


def brute_facets(M):
    """All 0/1 facet normals with their constants, found by face rank."""
    N = len(M) - 1
    W = raw_weights(M)
    out = []
    for I in all_subsets(N):
        d, c = face_dimension(W, I, N)
        if d == N - 1:
            out.append((I, c))
    return out


def zero_one_matrices(size):
    for bits in product((0, 1), repeat=size * size):
        if any(bits):
            yield tuple(tuple(bits[r * size:(r + 1) * size]) for r in range(size))


def sympy_charpoly(rows):
    """det(xI - A) coefficients, lowest degree first."""
    x = sympy.Symbol("x")
    p = sympy.Matrix([[sympy.Rational(str(v)) for v in r] for r in rows]).charpoly(x)
    return tuple(Fraction(str(c)) for c in reversed(p.all_coeffs()))
