"""Newton polygons, side and associated polynomials, the nondegeneracy test,
and the decomposition of a nondegenerate germ into branch classes with their
pairwise intersection numbers.

Conventions: the polygon is the lower-left hull of the exponent support plus
the positive quadrant; `sides` keeps the compact faces ordered from steepest
(touching the vertical axis) to shallowest (touching the horizontal axis).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MPoly, UPoly, Z, X, Y, squarefree_info
from .curves import PlaneSeries

Point = tuple[int, int]


class PolygonError(ValueError):
    pass


@dataclass(frozen=True)
class Side:
    """A compact face, from its high-j endpoint down to its high-i endpoint."""

    from_pt: Point
    to_pt: Point
    lattice_points: tuple[Point, ...]
    n: int  # height
    m: int  # width
    d: int  # gcd(n, m) = number of primitive steps

    @property
    def slope(self) -> Fraction:
        return Fraction(self.n, self.m)


def _make_side(top: Point, bottom: Point) -> Side:
    n = top[1] - bottom[1]
    m = bottom[0] - top[0]
    if n <= 0 or m <= 0:
        raise PolygonError(f"degenerate side {top}-{bottom}")
    d = math.gcd(n, m)
    step = (m // d, -(n // d))
    pts = tuple((top[0] + k * step[0], top[1] + k * step[1]) for k in range(d + 1))
    return Side(from_pt=top, to_pt=bottom, lattice_points=pts, n=n, m=m, d=d)


@dataclass(frozen=True)
class NewtonPolygon:
    sides: tuple[Side, ...]
    top: Point
    bottom: Point

    def vertices(self) -> tuple[Point, ...]:
        if not self.sides:
            return (self.top,)
        return tuple([self.sides[0].from_pt] + [s.to_pt for s in self.sides])

    def height(self) -> int:
        return self.top[1] - self.bottom[1]


def newton_polygon_from_points(points) -> NewtonPolygon:
    pts = sorted(set(points))
    if not pts:
        raise PolygonError("empty support")
    # staircase of dominance-minimal points (lowest j at each i, j decreasing)
    stair: list[Point] = []
    best_j = None
    for p in pts:  # ascending i, ascending j at equal i
        if stair and stair[-1][0] == p[0]:
            continue
        if best_j is None or p[1] < best_j:
            stair.append(p)
            best_j = p[1]
    # convex chain along the staircase; a clockwise or straight turn means the
    # middle point is on or above the chord, so it is not a vertex
    hull: list[Point] = []
    for p in stair:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    top, bottom = hull[0], hull[-1]
    sides = tuple(_make_side(hull[k], hull[k + 1]) for k in range(len(hull) - 1))
    return NewtonPolygon(sides=sides, top=top, bottom=bottom)


def newton_polygon(f: PlaneSeries) -> NewtonPolygon:
    if f.is_zero():
        raise PolygonError("Newton polygon of the zero series")
    return newton_polygon_from_points(f.support())


def _require_side(f: PlaneSeries, side: Side):
    poly = newton_polygon(f)
    for s in poly.sides:
        if s.from_pt == side.from_pt and s.to_pt == side.to_pt:
            return
    raise PolygonError(f"{side.from_pt}-{side.to_pt} is not a side of the polygon")


def side_polynomial(f: PlaneSeries, side: Side) -> MPoly:
    """Sum of the terms of f supported on the side (as a polynomial in x, y)."""
    _require_side(f, side)
    out = MPoly.zero()
    for i, j in side.lattice_points:
        c = f.coeff(i, j)
        if not c.is_zero():
            out = out + c * MPoly.monomial(1, {X: i, Y: j})
    return out


def associated_polynomial(f: PlaneSeries, side: Side) -> UPoly:
    """Side polynomial evaluated at (1, z) and divided by z^(min j on the side)."""
    _require_side(f, side)
    j0 = side.to_pt[1]
    out = MPoly.zero()
    for i, j in side.lattice_points:
        c = f.coeff(i, j)
        if not c.is_zero():
            out = out + c * MPoly.var(Z, j - j0)
    F = UPoly.from_mpoly(out, Z)
    assert F.deg == side.n, "associated polynomial must have the side height as degree"
    return F


def associated_from_points(points_with_coeffs, j0: int) -> UPoly:
    """Associated polynomial built directly from (j, coefficient) pairs."""
    out = MPoly.zero()
    for j, c in points_with_coeffs:
        out = out + c * MPoly.var(Z, j - j0)
    return UPoly.from_mpoly(out, Z)


@dataclass(frozen=True)
class SideVerdict:
    side: Side
    squarefree: bool
    path: str  # "concrete" or "symbolic"
    associated: UPoly


@dataclass(frozen=True)
class NondegReport:
    verdict: str  # "nondegenerate" | "degenerate" | "generically_nondegenerate"
    sides: tuple[SideVerdict, ...]

    @property
    def nondegenerate(self) -> bool:
        return self.verdict != "degenerate"


def is_nondegenerate(f: PlaneSeries) -> NondegReport:
    """Squarefree test of every associated polynomial.

    A side checked through the symbolic route only certifies the generic
    member, so the overall verdict is downgraded accordingly.
    """
    poly = newton_polygon(f)
    verdicts = []
    any_symbolic = False
    all_ok = True
    for side in poly.sides:
        F = associated_polynomial(f, side)
        ok, path = squarefree_info(F)
        any_symbolic |= path == "symbolic"
        all_ok &= ok
        verdicts.append(SideVerdict(side=side, squarefree=ok, path=path, associated=F))
    if not all_ok:
        verdict = "degenerate"
    elif any_symbolic:
        verdict = "generically_nondegenerate"
    else:
        verdict = "nondegenerate"
    return NondegReport(verdict=verdict, sides=tuple(verdicts))


# -- branch classes and intersection numbers -----------------------------------


@dataclass(frozen=True)
class BranchClass:
    """d branch(es) whose value semigroup is generated by {a0, a1}."""

    a0: int
    a1: int
    count: int = 1

    def __post_init__(self):
        if math.gcd(self.a0, self.a1) != 1:
            raise PolygonError("branch class generators must be coprime")
        if self.a0 > self.a1:
            raise PolygonError("branch class must be ordered a0 <= a1")

    @property
    def smooth(self) -> bool:
        return self.a0 == 1

    def key(self) -> tuple[int, int]:
        return (self.a0, self.a1)


def pair_intersection(c1: tuple[int, int], c2: tuple[int, int]) -> int:
    return min(c1[0] * c2[1], c2[0] * c1[1])


@dataclass(frozen=True)
class TopologyReport:
    """Branch class multiset plus the intersection table over the individual
    branches (classes expanded by count, in sorted class order)."""

    branches: tuple[BranchClass, ...]
    intersections: tuple[tuple[int, ...], ...]

    def expanded_keys(self) -> list[tuple[int, int]]:
        out = []
        for cls in self.branches:
            out.extend([cls.key()] * cls.count)
        return out


def topology_from_classes(keys) -> TopologyReport:
    counted = Counter(keys)
    classes = tuple(BranchClass(a0=k[0], a1=k[1], count=c) for k, c in sorted(counted.items()))
    individual = []
    for cls in classes:
        individual.extend([cls.key()] * cls.count)
    n = len(individual)
    table = tuple(
        tuple(0 if r == c else pair_intersection(individual[r], individual[c]) for c in range(n))
        for r in range(n)
    )
    return TopologyReport(branches=classes, intersections=table)


def oka_decomposition(polygon: NewtonPolygon) -> TopologyReport:
    """Branch classes of a nondegenerate germ read off the polygon.

    Each side of height n and width m contributes gcd(n, m) branches with
    semigroup generators {n/d, m/d}; two branches meet with multiplicity
    min(a0*b1, b0*a1).  Callers are responsible for the squarefree hypothesis.
    """
    if polygon.top[0] != 0:
        raise PolygonError("support must touch the vertical axis (x divides the series?)")
    if polygon.bottom[1] != 0:
        raise PolygonError("support must touch the horizontal axis (y divides the series?)")
    if not polygon.sides:
        raise PolygonError("polygon has no compact side")
    keys = []
    for side in polygon.sides:
        pair = tuple(sorted((side.n // side.d, side.m // side.d)))
        keys.extend([pair] * side.d)
    return topology_from_classes(keys)


def oka_report(f: PlaneSeries) -> TopologyReport:
    """Concrete route: check nondegeneracy exactly, then decompose."""
    report = is_nondegenerate(f)
    if report.verdict == "degenerate":
        bad = [v.side for v in report.sides if not v.squarefree]
        raise PolygonError(f"series is Newton degenerate on side(s) {bad}")
    return oka_decomposition(newton_polygon(f))


def minkowski_sum(p1: NewtonPolygon, p2: NewtonPolygon) -> NewtonPolygon:
    """Polygon whose side multiset is the slope-sorted merge of both."""
    top = (p1.top[0] + p2.top[0], p1.top[1] + p2.top[1])
    vectors = [(s.m, s.n) for s in p1.sides] + [(s.m, s.n) for s in p2.sides]
    vectors.sort(key=lambda mn: Fraction(mn[1], mn[0]), reverse=True)
    merged: list[tuple[int, int]] = []
    for m, n in vectors:
        if merged and Fraction(merged[-1][1], merged[-1][0]) == Fraction(n, m):
            merged[-1] = (merged[-1][0] + m, merged[-1][1] + n)
        else:
            merged.append((m, n))
    sides = []
    cur = top
    for m, n in merged:
        nxt = (cur[0] + m, cur[1] - n)
        sides.append(_make_side(cur, nxt))
        cur = nxt
    assert cur == (p1.bottom[0] + p2.bottom[0], p1.bottom[1] + p2.bottom[1])
    return NewtonPolygon(sides=tuple(sides), top=top, bottom=cur)
