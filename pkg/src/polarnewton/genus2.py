"""Predicted polar geometry for branches with semigroup <2p, 2q, 2pq+d>.

A generic member is f1^2 + f2 with f1 in the two-generator family and f2 a
tail starting at weight 2pq+d.  The general polar splits as
2*f1*P(f1) + P(f2); its Newton polygon consists of the genus-one predicted
sides shifted by (q, 0) plus one steeper side joining (0, 2p-1) to (q, p-1).
This module builds the polygon, the side polynomials, the degeneracy locus,
the predicted topology, and the semigroup classifier for nondegenerate
general polars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .algebra import A, B, MPoly, UPoly, X, Y, Z, bvar, discriminant
from .curves import CurveError
from .genus1 import (
    DegeneracyLocus,
    PolarModelG1,
    _edge_coeff,
    _polygon_from_side_points,
    build_locus,
    min_x_exponent,
    polar_model_g1,
)
from .newton import NewtonPolygon, Point, TopologyReport, oka_decomposition

__all__ = [
    "tail_min_x_exponent",
    "edge_term_parts_g2",
    "predicted_polygon_g2",
    "predicted_side_polynomial_g2",
    "degeneracy_locus_g2",
    "predicted_topology_g2",
    "polar_model_g2",
    "PolarModelG2",
    "lpq_side_points",
    "classify_nondegenerate",
    "Classification",
    "InvalidSemigroupError",
]


def tail_min_x_exponent(p: int, q: int, d: int, j: int) -> int:
    """Least x-exponent occurring with y^j in the polar of the weight->=2pq+d tail."""
    if not 0 <= j <= 2 * p - 2:
        raise CurveError(f"need 0 <= j <= {2 * p - 2}, got {j}")
    beta = 2 * q - ((j + 1) * q - d) // p
    x_route = 2 * q - (j * q + p - d) // p
    assert beta <= x_route, "y-derivative route must give the lower exponent"
    if j <= p - 1:
        assert beta >= min_x_exponent(p, q, j) + q, "tail terms must not undercut the product part"
    return beta


def _tail_term_coeff(p: int, q: int, d: int, j: int) -> MPoly:
    """Coefficient of the lowest tail-polar term at height j."""
    beta = tail_min_x_exponent(p, q, d, j)
    w = beta * p + (j + 1) * q
    assert 2 * p * q + d <= w < 2 * p * q + d + p, "tail coefficient outside the safe weight window"
    coeff = (j + 1) * MPoly.var(B) * MPoly.var(bvar(beta, j + 1))
    x_route = 2 * q - (j * q + p - d) // p
    if beta == x_route:
        coeff = coeff + (x_route + 1) * MPoly.var(A) * MPoly.var(bvar(beta + 1, j))
    return coeff


@dataclass(frozen=True)
class EdgeTermG2:
    product_part: MPoly  # from 2 * f1 * P(f1)
    tail_part: MPoly | None  # from P(f2) when it reaches the same point
    term: MPoly  # the combined lowest term at this height


def edge_term_parts_g2(p: int, q: int, d: int, j: int) -> EdgeTermG2:
    """Lowest polar term at height j for the genus-two family (e1 = 2)."""
    if j == 2 * p - 1:
        g = p * MPoly.var(B) * MPoly.monomial(1, {Y: 2 * p - 1})
        return EdgeTermG2(product_part=g, tail_part=None, term=2 * g)
    if not 0 <= j <= p - 1:
        raise CurveError(f"need 0 <= j <= {p - 1} or j = {2 * p - 1}, got {j}")
    from .genus1 import edge_term

    g = -MPoly.monomial(1, {X: q}) * edge_term(p, q, j)
    alpha = min_x_exponent(p, q, j)
    beta = tail_min_x_exponent(p, q, d, j)
    if beta == alpha + q:
        h = _tail_term_coeff(p, q, d, j) * MPoly.monomial(1, {X: beta, Y: j})
        return EdgeTermG2(product_part=g, tail_part=h, term=2 * g + h)
    return EdgeTermG2(product_part=g, tail_part=None, term=2 * g)


def lpq_side_points(p: int, q: int, e1: int = 2) -> tuple[Point, ...]:
    """Lattice points of the steep side contributed by f1^(e1-1) * P(f1)."""
    return tuple((i * q, (e1 - i) * p - 1) for i in range(e1))


@dataclass(frozen=True)
class PolarModelG2:
    p: int
    q: int
    d: int
    g1: PolarModelG1
    i0: int
    j0: int
    tail_min_x: tuple[int, ...]  # indexed by j = 0..2p-2
    edge_terms: dict
    sides: tuple[tuple[Point, ...], ...]  # bottom side first; steep side last
    side_polys: tuple[UPoly, ...]
    side_heights: tuple[int, ...]
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


@lru_cache(maxsize=None)
def polar_model_g2(p: int, q: int, d: int) -> PolarModelG2:
    if not (2 <= p < q) or math.gcd(p, q) != 1:
        raise CurveError(f"need coprime 2 <= p < q, got ({p}, {q})")
    if d < 1 or d % 2 == 0:
        raise CurveError(f"need odd d >= 1, got {d}")
    g1 = polar_model_g1(p, q)
    threshold = 2 * p * q + d
    j0 = next(j for j in range(p) if (threshold - j * q) % p == 0)
    i0 = (threshold - j0 * q) // p

    heights = sorted(set(g1.side_heights) | {2 * p - 1})
    terms = {j: edge_term_parts_g2(p, q, d, j) for j in heights}

    sides = tuple(tuple((x + q, j) for (x, j) in pts) for pts in g1.sides)
    sides = sides + (tuple(sorted(lpq_side_points(p, q, 2), key=lambda pt: pt[1])),)

    side_polys = []
    for pts in sides[:-1]:
        j0_side = pts[0][1]
        F = MPoly.zero()
        for (_x, j) in pts:
            F = F + _edge_coeff(terms[j].term) * MPoly.var(Z, j - j0_side)
        side_polys.append(UPoly.from_mpoly(F, Z))
    F = _edge_coeff(terms[2 * p - 1].term) * MPoly.var(Z, p) + _edge_coeff(terms[p - 1].term)
    side_polys.append(UPoly.from_mpoly(F, Z))
    for Fk, pts in zip(side_polys, sides):
        assert Fk.deg == pts[-1][1] - pts[0][1], "side polynomial degree must match the side height"

    raw = [_edge_coeff(terms[j].term) for j in heights]
    raw += [discriminant(Fk) for Fk in side_polys if Fk.deg >= 1]
    locus = build_locus(raw)

    polygon = _polygon_from_side_points(sides)
    assert polygon.top == (0, 2 * p - 1)
    return PolarModelG2(
        p=p, q=q, d=d, g1=g1, i0=i0, j0=j0,
        tail_min_x=tuple(tail_min_x_exponent(p, q, d, j) for j in range(2 * p - 1)),
        edge_terms=terms,
        sides=sides,
        side_polys=tuple(side_polys),
        side_heights=tuple(heights),
        raw_conditions=tuple(raw),
        locus=locus,
        topology=oka_decomposition(polygon),
    )


def predicted_polygon_g2(p: int, q: int, d: int) -> tuple[tuple[Point, ...], ...]:
    return polar_model_g2(p, q, d).sides


def predicted_side_polynomial_g2(p: int, q: int, d: int, k: int) -> UPoly:
    model = polar_model_g2(p, q, d)
    if not 0 <= k < len(model.side_polys):
        raise CurveError(f"side index {k} out of range")
    return model.side_polys[k]


def degeneracy_locus_g2(p: int, q: int, d: int) -> DegeneracyLocus:
    return polar_model_g2(p, q, d).locus


def predicted_topology_g2(p: int, q: int, d: int) -> TopologyReport:
    return polar_model_g2(p, q, d).topology


# -- classifier ------------------------------------------------------------


class InvalidSemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    nondegenerate: bool
    genus: int
    reason: str


def _validate_semigroup(gens) -> list[int]:
    v = [int(g) for g in gens]
    if len(v) < 2:
        raise InvalidSemigroupError("need at least two minimal generators (positive genus)")
    if any(g < 1 for g in v):
        raise InvalidSemigroupError("generators must be positive")
    if sorted(v) != v or len(set(v)) != len(v):
        raise InvalidSemigroupError("generators must be strictly increasing")
    if v[0] < 2:
        raise InvalidSemigroupError("v0 must be at least 2 for a singular branch")
    e = [v[0]]
    for k in range(1, len(v)):
        ek = math.gcd(e[k - 1], v[k])
        if ek == e[k - 1]:
            raise InvalidSemigroupError(f"generator {v[k]} does not drop the gcd chain")
        e.append(ek)
    if e[-1] != 1:
        raise InvalidSemigroupError("gcd of the generators must be 1")
    for k in range(1, len(v) - 1):
        n_k = e[k - 1] // e[k]
        if v[k + 1] <= n_k * v[k]:
            raise InvalidSemigroupError(
                f"v{k + 1} = {v[k + 1]} must exceed {n_k} * v{k} = {n_k * v[k]}"
            )
    return v


def classify_nondegenerate(gens) -> Classification:
    """Decide from the value semigroup whether the general member of the
    equisingularity class has a Newton nondegenerate general polar."""
    v = _validate_semigroup(gens)
    genus = len(v) - 1
    if genus == 1:
        return Classification(True, 1, f"genus 1 semigroup <{v[0]},{v[1]}>")
    if genus == 2:
        e1 = math.gcd(v[0], v[1])
        p, q = v[0] // e1, v[1] // e1
        d = v[2] - e1 * p * q
        assert d >= 1 and math.gcd(e1, d) == 1
        if e1 == 2:
            return Classification(
                True, 2, f"genus 2 with e1=2: <2*{p},2*{q},2*{p}*{q}+{d}>, d={d} odd"
            )
        return Classification(
            False, 2,
            f"genus 2 with e1={e1} > 2: the side through (0,{e1 * p - 1}) has associated "
            f"polynomial proportional to (z^{p}-1)^{e1 - 1}, which has multiple roots",
        )
    return Classification(
        False, genus,
        f"genus {genus} >= 3: the general polar always carries a branch of genus above 1",
    )
