"""Predicted polar geometry for branches with a two-generator semigroup <p, q>.

For the generic family member y^p - x^q + sum a[i,j] x^i y^j the general polar
has, at each height j < p, a lowest possible x-exponent; those points assemble
into a predicted Newton polygon governed by the continued fraction of q/p.
This module builds that polygon, the associated polynomial of each side, the
coefficient locus outside which the prediction holds with every side
squarefree, and the resulting branch topology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .algebra import A, B, MPoly, UPoly, X, Y, Z, discriminant, squarefree_split, strip_content
from .cfrac import ContinuedFraction, ConvergentSeq, continued_fraction, convergents
from .curves import CurveError, coefficient_g1
from .newton import NewtonPolygon, Point, TopologyReport, _make_side, oka_decomposition

__all__ = [
    "LocusError",
    "DegeneracyLocus",
    "build_locus",
    "min_x_exponent",
    "edge_term",
    "predicted_polygon_g1",
    "predicted_side_polynomial_g1",
    "degeneracy_locus_g1",
    "predicted_topology_g1",
    "polar_model_g1",
    "PolarModelG1",
]


class LocusError(ValueError):
    pass


@dataclass(frozen=True)
class DegeneracyLocus:
    """Coefficient conditions whose union of zero sets must be avoided.

    Each group is a simultaneous-vanishing condition: the member it encodes
    fails only where every polynomial of the group is zero.  All pinned
    families produce singleton groups, in which case `generators` is the flat
    hypersurface list.
    """

    groups: tuple[tuple[MPoly, ...], ...]

    @property
    def generators(self) -> tuple[MPoly, ...]:
        for g in self.groups:
            if len(g) != 1:
                raise LocusError(
                    "locus involves a simultaneous-vanishing condition; "
                    "use .groups for the full description"
                )
        return tuple(g[0] for g in self.groups)

    def is_empty(self) -> bool:
        return not self.groups

    def vanishes_at(self, assignment) -> bool:
        """True when some group vanishes identically at the assignment."""
        return any(all(p.evaluate(assignment) == 0 for p in group) for group in self.groups)


def build_locus(raw_conditions) -> DegeneracyLocus:
    """Normalize raw vanishing conditions into a degeneracy locus.

    Every raw condition is a polynomial in the pencil parameters a, b and the
    family coefficients.  It fails for a general pencil point exactly when all
    its (a, b)-coefficients vanish; coefficients that are nonzero constants
    therefore kill the condition.  Single surviving coefficients are content
    stripped and split into squarefree factors.
    """
    groups: list[tuple[MPoly, ...]] = []
    seen: set[tuple[MPoly, ...]] = set()
    for raw in raw_conditions:
        if raw.is_zero():
            raise LocusError("identically zero raw condition")
        coeffs = list(raw.coefficients_in([A, B]).values())
        if any(c.is_constant() for c in coeffs):
            continue
        keep = [v for c in coeffs for v in c.variables()]
        if len(coeffs) == 1:
            c = strip_content(coeffs[0], keep)
            for factor, _mult in squarefree_split(c):
                if factor.is_constant():
                    continue
                group = (factor,)
                if group not in seen:
                    seen.add(group)
                    groups.append(group)
        else:
            group = tuple(sorted((strip_content(c, keep) for c in coeffs),
                                 key=lambda p: (p.total_degree(), p.render())))
            if group not in seen:
                seen.add(group)
                groups.append(group)
    groups.sort(key=lambda g: (len(g), [(p.total_degree(), p.render()) for p in g]))
    return DegeneracyLocus(groups=tuple(groups))


def min_x_exponent(p: int, q: int, j: int) -> int:
    """Least x-exponent that can occur with y^j in the generic polar."""
    if not 0 <= j <= p - 1:
        raise CurveError(f"need 0 <= j <= {p - 1}, got {j}")
    return q - ((j + 1) * q) // p


def edge_term(p: int, q: int, j: int) -> MPoly:
    """The polar term sitting at the lowest point of height j.

    The y-derivative always contributes; the x-derivative joins it exactly
    when the two lowest exponents coincide.
    """
    alpha = min_x_exponent(p, q, j)
    coeff = (j + 1) * MPoly.var(B) * coefficient_g1(p, q, alpha, j + 1)
    if ((j + 1) * q) // p == (j * q) // p + 1:
        factor = q - (j * q) // p
        coeff = coeff + factor * MPoly.var(A) * coefficient_g1(p, q, alpha + 1, j)
    return coeff * MPoly.monomial(1, {X: alpha, Y: j})


@dataclass(frozen=True)
class PolarModelG1:
    p: int
    q: int
    cf: ContinuedFraction
    conv: ConvergentSeq
    low_points: tuple[Point, ...]  # (min x-exponent, j) for j = 0..p-1
    edge_terms: tuple[MPoly, ...]  # indexed by j
    sides: tuple[tuple[Point, ...], ...]  # ascending j within a side; bottom side first
    side_polys: tuple[UPoly, ...]
    side_heights: tuple[int, ...]  # heights j whose edge term must not vanish
    raw_conditions: tuple[MPoly, ...]
    locus: DegeneracyLocus
    topology: TopologyReport

    def predicted_polygon(self) -> NewtonPolygon:
        return _polygon_from_side_points(self.sides)

    def predicted_points(self) -> tuple[Point, ...]:
        out = []
        for pts in self.sides:
            out.extend(pts)
        return tuple(sorted(set(out)))


def _edge_coeff(term: MPoly) -> MPoly:
    """Strip the x^i y^j monomial off an edge term."""
    out = {}
    for mono, c in term.terms.items():
        rest = tuple((v, e) for v, e in mono if v not in (X, Y))
        out[rest] = out.get(rest, 0) + c
    return MPoly(out)


def _polygon_from_side_points(sides) -> NewtonPolygon:
    """Sides given bottom-first with ascending-j points, as a polygon."""
    built = tuple(_make_side(pts[-1], pts[0]) for pts in reversed(sides))
    return NewtonPolygon(sides=built, top=built[0].from_pt, bottom=built[-1].to_pt)


@lru_cache(maxsize=None)
def polar_model_g1(p: int, q: int) -> PolarModelG1:
    if not (2 <= p < q) or math.gcd(p, q) != 1:
        raise CurveError(f"need coprime 2 <= p < q, got ({p}, {q})")
    cf = continued_fraction(q, p)
    conv = convergents(cf)
    s = cf.s
    pc = [pair[0] for pair in conv.pairs]
    qc = [pair[1] for pair in conv.pairs]

    terms = []
    for j in range(p):
        t = edge_term(p, q, j)
        for v in t.variables():
            if v.kind == "aij":
                w = v.i * p + v.j * q
                assert p * q < w < p * q + p, "edge term coefficient outside the safe weight window"
        terms.append(t)

    low_points = tuple((min_x_exponent(p, q, j), j) for j in range(p))

    sides: list[tuple[Point, ...]] = []
    heights: list[list[int]] = []
    for k in range(0, s):
        if 2 * k + 2 > s:
            break
        start = (q - qc[2 * k], pc[2 * k] - 1)
        hs = [pc[2 * k] - 1 + l * pc[2 * k + 1] for l in range(cf.h[2 * k + 2] + 1)]
        pts = [(start[0] - l * qc[2 * k + 1], start[1] + l * pc[2 * k + 1])
               for l in range(cf.h[2 * k + 2] + 1)]
        sides.append(tuple(pts))
        heights.append(hs)
    if s % 2 == 1:
        pts = [(q - qc[s - 1], pc[s - 1] - 1), (0, p - 1)]
        sides.append(tuple(pts))
        heights.append([pc[s - 1] - 1, p - 1])

    for pts in sides:
        for (x, j) in pts:
            assert (x, j) == low_points[j], "predicted side point off the low-point profile"

    side_polys = []
    for pts in sides:
        j0 = pts[0][1]
        F = MPoly.zero()
        for (_x, j) in pts:
            F = F + _edge_coeff(terms[j]) * MPoly.var(Z, j - j0)
        side_polys.append(UPoly.from_mpoly(F, Z))
    for F, pts in zip(side_polys, sides):
        assert F.deg == pts[-1][1] - pts[0][1], "side polynomial degree must match the side height"

    lam = sorted({j for hs in heights for j in hs})
    raw = [_edge_coeff(terms[j]) for j in lam]
    raw += [discriminant(F) for F in side_polys if F.deg >= 1]
    locus = build_locus(raw)

    polygon = _polygon_from_side_points(sides)
    assert sum(side.n for side in polygon.sides) == p - 1, \
        "side heights must add up to the polar multiplicity"
    return PolarModelG1(
        p=p, q=q, cf=cf, conv=conv,
        low_points=low_points,
        edge_terms=tuple(terms),
        sides=tuple(sides),
        side_polys=tuple(side_polys),
        side_heights=tuple(lam),
        raw_conditions=tuple(raw),
        locus=locus,
        topology=oka_decomposition(polygon),
    )


def predicted_polygon_g1(p: int, q: int) -> tuple[tuple[Point, ...], ...]:
    """Predicted sides as lattice-point lists, bottom side first."""
    return polar_model_g1(p, q).sides


def predicted_side_polynomial_g1(p: int, q: int, k: int) -> UPoly:
    model = polar_model_g1(p, q)
    if not 0 <= k < len(model.side_polys):
        raise CurveError(f"side index {k} out of range")
    return model.side_polys[k]


def degeneracy_locus_g1(p: int, q: int) -> DegeneracyLocus:
    return polar_model_g1(p, q).locus


def predicted_topology_g1(p: int, q: int) -> TopologyReport:
    return polar_model_g1(p, q).topology
