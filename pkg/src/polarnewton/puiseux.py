"""Numeric Newton-Puiseux expansion of concrete plane-curve polynomials.

Branches through the origin are developed side by side on successive Newton
polygons.  Exponent bookkeeping is exact (Fractions produced by polygon
slopes); coefficients start as exact rationals and become complex floats as
soon as a computed root enters a substitution.  Root multiplicities at the
first, still-exact level are read off a rational squarefree decomposition;
deeper levels fall back to clustering with a relative tolerance.

From a finished expansion the module recovers the characteristic exponents,
the genus, the value semigroup and numeric pairwise intersection numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import qpoly_yun
from .curves import PlaneSeries
from .newton import newton_polygon_from_points

DROP_ACC = 1e-9  # cancellation cutoff relative to accumulated contributions
# Root clustering must merge the numeric splitting of an exact multiple root,
# which is about sqrt(machine epsilon) ~ 1.5e-8 for a double root, so the
# radius sits two decades above that and well below genuine separations.
CLUSTER_REL = 1e-6
COEFF_REL = 1e-8  # relative tolerance for coefficient comparisons

_MAX_STEPS = 4000


class PuiseuxError(ValueError):
    pass


class InsufficientDepthError(PuiseuxError):
    """Raised when a comparison would need terms beyond the computed order."""


@dataclass(frozen=True)
class PuiseuxBranch:
    """One branch: x = t^n, y = sum over terms of c * t^(n * exponent)."""

    n: int
    terms: tuple[tuple[Fraction, complex], ...]  # ascending exponents (in x-units)
    char_exponents: tuple[int, ...]  # (beta0; beta1, ..., beta_g)
    genus: int
    semigroup: tuple[int, ...] | None
    reached: Fraction | None  # terms are complete strictly below this x-order; None = exact

    def class_key(self):
        if self.genus == 0:
            return (1,)
        return tuple(self.semigroup[:2])


@dataclass
class _Raw:
    terms: list[tuple[Fraction, complex]]
    mult: int
    exact: bool
    reached: Fraction | None


def _poly_dict(f: PlaneSeries) -> dict[tuple[int, int], Fraction]:
    if not f.is_concrete():
        raise PuiseuxError("expansion needs a concrete series over the rationals")
    out = {}
    for (i, j) in f.support():
        out[(i, j)] = f.coeff(i, j).constant_value()
    return out


def _compact_sides(p: dict):
    """Compact polygon sides of the support, with the support points on each."""
    poly = newton_polygon_from_points(p.keys())
    out = []
    for side in poly.sides:
        pts = [pt for pt in side.lattice_points if pt in p]
        nbar = side.n // side.d
        mbar = side.m // side.d
        out.append((side, pts, nbar, mbar))
    return out


def _edge_roots(p: dict, side, pts, exact: bool, cluster_tol: float):
    """Roots (value, multiplicity) of the associated polynomial of a side."""
    j0 = side.to_pt[1]
    deg = side.n
    coeffs = [Fraction(0) if exact else 0j] * (deg + 1)
    for (i, j) in pts:
        coeffs[j - j0] = p[(i, j)]
    if exact:
        out = []
        for fac, mult in qpoly_yun(coeffs):
            if len(fac) == 2:
                roots = [complex(-fac[0] / fac[1])]
            else:
                roots = np.roots([complex(c) for c in reversed(fac)]).tolist()
            out.extend((r, mult) for r in roots)
        return out
    roots = np.roots([complex(c) for c in reversed(coeffs)]).tolist()
    roots.sort(key=lambda z: (z.real, z.imag))
    clusters: list[list[complex]] = []
    for r in roots:
        placed = False
        for cl in clusters:
            ref = cl[0]
            if abs(r - ref) <= cluster_tol * max(1.0, abs(ref)):
                cl.append(r)
                placed = True
                break
        if not placed:
            clusters.append([r])
    return [(sum(cl) / len(cl), len(cl)) for cl in clusters]


def _substituted(p: dict, nbar: int, mbar: int, c: complex) -> dict:
    """p(x^nbar, x^mbar * (c + y)) divided by the minimal x-power.

    A coefficient that is tiny relative to the total magnitude that flowed
    into it is floating-point debris from an exact cancellation and is
    dropped; a coefficient that is small outright but arrived clean is kept.
    """
    vmin = min(i * nbar + j * mbar for (i, j) in p)
    out: dict[tuple[int, int], complex] = {}
    acc: dict[tuple[int, int], float] = {}
    for (i, j), coeff in p.items():
        base = complex(coeff)
        xpow = i * nbar + j * mbar - vmin
        for k in range(j + 1):
            val = base * math.comb(j, k) * (c ** (j - k))
            key = (xpow, k)
            out[key] = out.get(key, 0j) + val
            acc[key] = acc.get(key, 0.0) + abs(val)
    out = {k: v for k, v in out.items() if v != 0 and abs(v) > DROP_ACC * acc[k]}
    if (0, 0) in out:
        raise PuiseuxError("substituted root does not vanish on the side; tolerance failure")
    return out


def puiseux_expand(f: PlaneSeries, depth: int = 0,
                   min_order: Fraction | int | None = None,
                   cluster_tol: float = CLUSTER_REL) -> list[tuple[PuiseuxBranch, int]]:
    """All branches at the origin, grouped up to conjugacy, with multiplicities.

    `depth` adds polygon iterations past the point where a branch separates;
    by default each branch runs 2n extra steps, which is more than enough for
    the characteristic data (no new ramification can appear after separation).
    `min_order` forces every branch's terms to be complete below that x-order.
    """
    if f.is_zero():
        raise PuiseuxError("cannot expand the zero series")
    p0 = _poly_dict(f)
    xval = min(i for (i, _j) in p0)
    if xval > 0:  # divide out the x-axis component; it carries no y-branch
        p0 = {(i - xval, j): c for (i, j), c in p0.items()}
    if (0, 0) in p0:
        raise PuiseuxError("series does not vanish at the origin")
    if all(j == 0 for (_i, j) in p0):
        raise PuiseuxError("series has no y-dependence")
    weier_deg = min(j for (i, j) in p0 if i == 0)
    min_order = Fraction(min_order) if min_order is not None else Fraction(0)

    raws: list[_Raw] = []
    stack = [(p0, True, Fraction(1), Fraction(0), [], 0)]
    steps = 0
    while stack:
        p, exact, u, offset, terms, post_sep = stack.pop()
        steps += 1
        if steps > _MAX_STEPS:
            raise PuiseuxError("expansion exceeded the step budget")
        jmin = min(j for (_i, j) in p)
        if jmin > 0:
            raws.append(_Raw(terms=list(terms), mult=jmin, exact=True, reached=None))
            p = {(i, j - jmin): c for (i, j), c in p.items()}
            if all(j == 0 for (_i, j) in p):
                continue
        if all(j == 0 for (_i, j) in p):
            continue
        if (0, 0) in p:
            continue  # unit times x-powers: no branch through the origin left
        separated = (0, 1) in p
        n_cand = u.denominator
        if separated and post_sep >= max(2 * n_cand, depth) and offset >= min_order:
            raws.append(_Raw(terms=list(terms), mult=1, exact=False, reached=offset + u))
            continue
        for side, pts, nbar, mbar in _compact_sides(p):
            for c, mult in _edge_roots(p, side, pts, exact, cluster_tol):
                try:
                    child = _substituted(p, nbar, mbar, c)
                except OverflowError as exc:
                    raise PuiseuxError(
                        "coefficient magnitudes overflowed; request a smaller order"
                    ) from exc
                new_u = u / nbar
                new_offset = offset + u * Fraction(mbar, nbar)
                new_terms = terms + [(new_offset, complex(c))]
                stack.append((child, False, new_u, new_offset, new_terms,
                              post_sep + 1 if separated else 0))
    total = sum(r.mult for r in raws)
    if total != weier_deg:
        raise PuiseuxError(f"expansion count {total} does not match the y-order {weier_deg}")
    branches = _group_conjugates(raws)
    return branches


def _lcm(nums) -> int:
    out = 1
    for v in nums:
        out = out * v // math.gcd(out, v)
    return out


def _conjugate_terms(terms, n: int, k: int):
    w = cmath.exp(2j * cmath.pi * k / n)
    return [(e, c * w ** int(e * n)) for (e, c) in terms]


def _terms_close(t1, t2) -> bool:
    if len(t1) != len(t2):
        return False
    for (e1, c1), (e2, c2) in zip(t1, t2):
        if e1 != e2:
            return False
        if abs(c1 - c2) > COEFF_REL * max(1.0, abs(c1), abs(c2)):
            return False
    return True


def _group_conjugates(raws: list[_Raw]) -> list[tuple[PuiseuxBranch, int]]:
    used = [False] * len(raws)
    out: list[tuple[PuiseuxBranch, int]] = []
    for idx, raw in enumerate(raws):
        if used[idx]:
            continue
        n = _lcm([e.denominator for (e, _c) in raw.terms]) if raw.terms else 1
        members = [idx]
        for jdx in range(idx + 1, len(raws)):
            if used[jdx]:
                continue
            other = raws[jdx]
            if other.mult != raw.mult:
                continue
            if [e for e, _ in other.terms] != [e for e, _ in raw.terms]:
                continue
            if any(_terms_close(other.terms, _conjugate_terms(raw.terms, n, k)) for k in range(n)):
                members.append(jdx)
                used[jdx] = True
        used[idx] = True
        if len(members) != n:
            raise PuiseuxError(
                f"conjugacy class size {len(members)} does not match ramification {n}"
            )
        rep = min((raws[m] for m in members),
                  key=lambda r: [(float(e), round(cmath.phase(c), 9) % (2 * math.pi), abs(c))
                                 for (e, c) in r.terms])
        reached = None
        for m in members:
            r = raws[m].reached
            if r is not None:
                reached = r if reached is None else min(reached, r)
        char = _char_exponents(rep.terms, n)
        genus = len(char) - 1
        semi = semigroup_from_char(char)
        out.append((PuiseuxBranch(n=n, terms=tuple(rep.terms), char_exponents=char,
                                  genus=genus, semigroup=semi, reached=reached), raw.mult))
    out.sort(key=lambda bm: (bm[0].n, [float(e) for e, _ in bm[0].terms[:1]],
                             [round(cmath.phase(c), 6) for _, c in bm[0].terms[:1]]))
    return out


def _char_exponents(terms, n: int) -> tuple[int, ...]:
    lam = sorted({int(e * n) for (e, _c) in terms})
    if lam and lam[0] < n:
        # branch tangent to the vertical axis: its y-order is below its
        # x-order, so the standard characteristic reading does not apply
        if lam[0] == 1:
            return (1,)  # multiplicity one: smooth regardless of orientation
        raise PuiseuxError(
            "singular branch tangent to the vertical axis; expand the series "
            "with x and y exchanged to read its characteristic exponents"
        )
    chars = [n]
    e = n
    for l in lam:
        if e == 1:
            break
        if l % e != 0:
            chars.append(l)
            e = math.gcd(e, l)
    assert e == 1 or not terms, "exponent gcd chain must reach 1"
    return tuple(chars)


def semigroup_from_char(char) -> tuple[int, ...]:
    """Minimal semigroup generators from the characteristic sequence."""
    ch = [int(c) for c in char]
    if not ch or ch[0] < 1:
        raise PuiseuxError("invalid characteristic sequence")
    if len(ch) == 1:
        if ch[0] != 1:
            raise PuiseuxError("a singular branch needs at least one characteristic exponent")
        return (1,)
    if any(ch[k] >= ch[k + 1] for k in range(len(ch) - 1)):
        raise PuiseuxError("characteristic exponents must increase strictly")
    e = [ch[0]]
    for b in ch[1:]:
        e.append(math.gcd(e[-1], b))
        if e[-1] == e[-2]:
            raise PuiseuxError("each characteristic exponent must drop the gcd chain")
    if e[-1] != 1:
        raise PuiseuxError("characteristic exponents must be globally coprime")
    v = [ch[0], ch[1]]
    for k in range(1, len(ch) - 1):
        v.append((e[k - 1] // e[k]) * v[k] + ch[k + 1] - ch[k])
    return tuple(v)


def intersection_numeric(b1: PuiseuxBranch, b2: PuiseuxBranch, tol: float = COEFF_REL) -> int:
    """Intersection number of two distinct branches from their parametrizations.

    Sums, over the conjugates of the second branch, the contact order with
    the first, and scales by the first ramification index.  Raises when the
    computed terms cannot separate a pair of conjugates.
    """
    limit_candidates = [r for r in (b1.reached, b2.reached) if r is not None]
    limit = min(limit_candidates) if limit_candidates else None
    total = Fraction(0)
    t1 = dict(b1.terms)
    for k in range(b2.n):
        t2 = dict(_conjugate_terms(list(b2.terms), b2.n, k))
        exps = sorted(set(t1) | set(t2))
        contact = None
        for e in exps:
            c1 = t1.get(e, 0j)
            c2 = t2.get(e, 0j)
            if abs(c1 - c2) > tol * max(1.0, abs(c1), abs(c2)):
                contact = e
                break
        if contact is None or (limit is not None and contact >= limit):
            raise InsufficientDepthError(
                "contact order not resolved by the computed terms; expand deeper"
            )
        total += contact
    value = total * b1.n
    if value.denominator != 1:
        raise PuiseuxError(f"intersection number came out fractional: {value}")
    return int(value)


def reconstruction_residual(f: PlaneSeries, branch: PuiseuxBranch,
                            order_slack: int = 0) -> float:
    """Largest relative residual coefficient of f(t^n, y(t)) below the
    guaranteed order; small values certify the expansion."""
    p = _poly_dict(f)
    n = branch.n
    if branch.reached is None:
        # exact parametrization: evaluate without truncation
        ymax = max((int(e * n) for e, _ in branch.terms), default=1)
        t_limit = 1 + max(i * n + j * ymax for (i, j) in p)
    else:
        t_limit = int(branch.reached * n) - order_slack
    yt = {int(e * n): c for e, c in branch.terms}

    def mul_trunc(s1: dict, s2: dict) -> dict:
        out: dict[int, complex] = {}
        for e1, c1 in s1.items():
            for e2, c2 in s2.items():
                if e1 + e2 >= t_limit:
                    continue
                out[e1 + e2] = out.get(e1 + e2, 0j) + c1 * c2
        return out

    ypow: dict[int, dict[int, complex]] = {0: {0: 1.0 + 0j}}
    maxj = max(j for (_i, j) in p)
    for j in range(1, maxj + 1):
        ypow[j] = mul_trunc(ypow[j - 1], yt)
    total: dict[int, complex] = {}
    scale = 0.0
    for (i, j), c in p.items():
        for e, cv in ypow[j].items():
            te = i * n + e
            if te >= t_limit:
                continue
            val = complex(c) * cv
            total[te] = total.get(te, 0j) + val
            scale = max(scale, abs(val))
    if scale == 0.0:
        return 0.0
    worst = max((abs(v) for v in total.values()), default=0.0)
    return worst / scale
