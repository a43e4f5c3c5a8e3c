"""Independent reference computations used to check the library from scratch.

Nothing here shares code with the implementation paths it cross-checks: the
hull oracle tests all support pairs for dominance, the determinant oracle is
plain fraction Gaussian elimination, and root counting goes through numpy.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def hull_oracle(points):
    """Compact lower-left hull vertices via the all-pairs dominance test.

    A pair (a, b) spans a hull edge iff every support point lies weakly above
    the line through a and b; the vertex chain is assembled from the maximal
    such edges sorted by slope, steepest first.
    """
    pts = sorted(set(points))
    top = min(pts, key=lambda p: (p[0], p[1]))
    bottom = min(pts, key=lambda p: (p[1], p[0]))
    if top == bottom:
        return [top]
    edges = []
    for a in pts:
        for b in pts:
            if a[0] < b[0] and a[1] > b[1]:
                above = all(
                    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) >= 0
                    for c in pts
                )
                if above:
                    edges.append((a, b))
    maximal = []
    for a, b in edges:
        contained = False
        for c, d in edges:
            if (c, d) == (a, b):
                continue
            if (_collinear(c, d, a) and _collinear(c, d, b)
                    and _between(c, d, a) and _between(c, d, b)):
                contained = True
                break
        if not contained:
            maximal.append((a, b))
    maximal.sort(key=lambda e: Fraction(e[0][1] - e[1][1], e[1][0] - e[0][0]), reverse=True)
    chain = [maximal[0][0]]
    for a, b in maximal:
        assert a == chain[-1], "oracle edges must chain up"
        chain.append(b)
    assert chain[0] == top and chain[-1] == bottom
    return chain


def _collinear(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])


def _between(a, b, c):
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0])


def det_fraction(matrix):
    """Determinant of a square Fraction matrix by ordinary elimination."""
    m = [list(map(Fraction, row)) for row in matrix]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if m[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] * inv
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
    return det


def sylvester_matrix(fc, gc):
    """Sylvester matrix from descending coefficient lists."""
    n = len(fc) - 1
    m = len(gc) - 1
    size = n + m
    rows = []
    for r in range(m):
        row = [Fraction(0)] * size
        for k, c in enumerate(fc):
            row[r + k] = Fraction(c)
        rows.append(row)
    for r in range(n):
        row = [Fraction(0)] * size
        for k, c in enumerate(gc):
            row[r + k] = Fraction(c)
        rows.append(row)
    return rows


def distinct_root_count(coeffs, merge_tol=1e-6):
    """Number of distinct roots after merging numerically coincident ones.

    `coeffs` ascending.  Double roots of exact input split by about the
    square root of machine precision under companion-matrix root finding, so
    the merge radius sits well above that and below genuine separations.
    """
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return 0
    roots = np.roots(list(reversed(cs)))
    merged = []
    for r in roots:
        for c in merged:
            if abs(r - c) <= merge_tol * max(1.0, abs(c)):
                break
        else:
            merged.append(r)
    return len(merged)


def min_rule(c1, c2):
    return min(c1[0] * c2[1], c2[0] * c1[1])
