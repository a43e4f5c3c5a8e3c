"""Plane-curve series, the normal-form families, the polar operator and the
text parser for curve expressions.

A `PlaneSeries` is a polynomial in x, y whose coefficients may involve the
pencil parameters a, b and the family coefficients a[i,j], b[i,j].  The
normal-form families carry only the finitely many coefficient variables below
a weight bound; the polygon predictions are insensitive to the omitted
higher-weight terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import A, B, MPoly, Var, X, Y, avar, bvar


class CurveError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class PlaneSeries:
    """Polynomial in x, y over the coefficient variables."""

    poly: MPoly
    truncation_weight: int | None = None

    def support(self) -> set[tuple[int, int]]:
        pts = set()
        for mono in self.poly.terms:
            i = j = 0
            for v, e in mono:
                if v == X:
                    i = e
                elif v == Y:
                    j = e
            pts.add((i, j))
        return pts

    def coeff(self, i: int, j: int) -> MPoly:
        """Coefficient of x^i y^j as a polynomial in the remaining variables."""
        out = {}
        for mono, c in self.poly.terms.items():
            ii = jj = 0
            rest = []
            for v, e in mono:
                if v == X:
                    ii = e
                elif v == Y:
                    jj = e
                else:
                    rest.append((v, e))
            if (ii, jj) == (i, j):
                key = tuple(rest)
                out[key] = out.get(key, Fraction(0)) + c
        return MPoly(out)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_concrete(self) -> bool:
        return self.poly.variables() <= {X, Y}

    def render(self) -> str:
        return self.poly.render()


@dataclass(frozen=True)
class PolarParams:
    """The pencil point (a : b); not both coordinates zero."""

    a: MPoly
    b: MPoly

    def __post_init__(self):
        if self.a.is_zero() and self.b.is_zero():
            raise CurveError("(a, b) must not be (0, 0)")

    @classmethod
    def symbolic(cls) -> "PolarParams":
        return cls(MPoly.var(A), MPoly.var(B))

    @classmethod
    def concrete(cls, a, b) -> "PolarParams":
        return cls(MPoly.const(Fraction(a)), MPoly.const(Fraction(b)))


def polar(f: PlaneSeries, params: PolarParams | None = None) -> PlaneSeries:
    """a*df/dx + b*df/dy for the pencil point (a : b)."""
    if params is None:
        params = PolarParams.symbolic()
    p = params.a * f.poly.deriv(X) + params.b * f.poly.deriv(Y)
    return PlaneSeries(p, truncation_weight=f.truncation_weight)


def substitute(f: PlaneSeries, assignment: Mapping[Var, Fraction]) -> PlaneSeries:
    """Instantiate every non-x,y variable; the result is a concrete series."""
    missing = sorted(v for v in f.poly.variables() if v not in (X, Y) and v not in assignment)
    if missing:
        raise CurveError("missing values for: " + ", ".join(v.name for v in missing))
    table = {v: Fraction(val) for v, val in assignment.items()}
    out = f.poly.subs({v: MPoly.const(c) for v, c in table.items()})
    return PlaneSeries(out, truncation_weight=f.truncation_weight)


# -- normal-form families -----------------------------------------------------


def coefficient_g1(p: int, q: int, i: int, j: int) -> MPoly:
    """Coefficient of x^i y^j in the generic y^p - x^q + sum a[i,j] x^i y^j.

    The two distinguished monomials carry the constants +1 and -1; everything
    of weight above p*q is a free family variable.
    """
    if (i, j) == (0, p):
        return MPoly.const(1)
    if (i, j) == (q, 0):
        return MPoly.const(-1)
    if i * p + j * q <= p * q:
        raise CurveError(f"({i},{j}) is not in the support of the genus-1 family")
    return MPoly.var(avar(i, j))


@dataclass(frozen=True)
class FamilyG1:
    p: int
    q: int
    weight_bound: int
    coeff_vars: tuple[Var, ...]
    generic: PlaneSeries


def generic_member_g1(p: int, q: int, weight_bound: int | None = None) -> FamilyG1:
    if not (2 <= p < q):
        raise CurveError(f"need 2 <= p < q, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise CurveError(f"p={p}, q={q} are not coprime")
    bound = weight_bound if weight_bound is not None else p * q + p + q
    poly = MPoly.var(Y, p) - MPoly.var(X, q)
    cvars = []
    for i in range(0, bound // p + 1):
        for j in range(0, (bound - i * p) // q + 1):
            w = i * p + j * q
            if p * q < w <= bound:
                v = avar(i, j)
                cvars.append(v)
                poly = poly + MPoly.monomial(1, {X: i, Y: j}) * MPoly.var(v)
    return FamilyG1(p=p, q=q, weight_bound=bound, coeff_vars=tuple(sorted(cvars)),
                    generic=PlaneSeries(poly, truncation_weight=bound))


@dataclass(frozen=True)
class FamilyG2:
    p: int
    q: int
    d: int
    e1: int
    i0: int
    j0: int
    weight_bound: int
    a_vars: tuple[Var, ...]
    b_vars: tuple[Var, ...]
    f1: PlaneSeries
    f2: PlaneSeries
    generic: PlaneSeries


def generic_member_g2(p: int, q: int, d: int, e1: int = 2,
                      weight_bound: int | None = None) -> FamilyG2:
    """Generic f1^e1 + f2 with value semigroup <e1*p, e1*q, e1*p*q + d>."""
    if not (2 <= p < q):
        raise CurveError(f"need 2 <= p < q, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise CurveError(f"p={p}, q={q} are not coprime")
    if d < 1:
        raise CurveError("need d >= 1")
    if e1 < 2 or math.gcd(e1, d) != 1:
        raise CurveError(f"need e1 >= 2 and gcd(e1, d) = 1, got e1={e1}, d={d}")
    fam1 = generic_member_g1(p, q)
    threshold = e1 * p * q + d
    # unique (i0, j0) on i*p + j*q = threshold with 0 <= j0 < p
    j0 = next(j for j in range(p) if (threshold - j * q) % p == 0)
    i0 = (threshold - j0 * q) // p
    assert i0 >= 0
    bound = weight_bound if weight_bound is not None else threshold + 2 * p
    f2 = MPoly.monomial(1, {X: i0, Y: j0}) * MPoly.var(bvar(i0, j0))
    bvars = [bvar(i0, j0)]
    for i in range(0, bound // p + 1):
        for j in range(0, (bound - i * p) // q + 1):
            w = i * p + j * q
            if threshold < w <= bound:
                v = bvar(i, j)
                bvars.append(v)
                f2 = f2 + MPoly.monomial(1, {X: i, Y: j}) * MPoly.var(v)
    poly = fam1.generic.poly ** e1 + f2
    return FamilyG2(p=p, q=q, d=d, e1=e1, i0=i0, j0=j0, weight_bound=bound,
                    a_vars=fam1.coeff_vars, b_vars=tuple(sorted(bvars)),
                    f1=fam1.generic, f2=PlaneSeries(f2, truncation_weight=bound),
                    generic=PlaneSeries(poly, truncation_weight=bound))


# -- expression parser ---------------------------------------------------------
#
# expr    := ('+'|'-')? term (('+'|'-') term)*
# term    := factor ('*' factor)*
# factor  := base ('^' natural)?
# base    := rational | var | '(' expr ')'
# var     := 'x' | 'y' | 'a' | 'b' | ('a'|'b') '[' natural ',' natural ']'
# rational:= natural ('/' natural)?


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start:self.pos])

    def expr(self) -> MPoly:
        sign = 1
        c = self.peek()
        if c in "+-":
            self.pos += 1
            sign = -1 if c == "-" else 1
        out = self.term() * sign
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                out = out + self.term()
            elif c == "-":
                self.pos += 1
                out = out - self.term()
            else:
                return out

    def term(self) -> MPoly:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def factor(self) -> MPoly:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.natural()
        return base

    def base(self) -> MPoly:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if c.isdigit():
            num = self.natural()
            if self.peek() == "/":
                self.pos += 1
                den = self.natural()
                if den == 0:
                    raise self.error("zero denominator")
                return MPoly.const(Fraction(num, den))
            return MPoly.const(num)
        if c.isalpha():
            name = c
            self.pos += 1
            if name not in ("x", "y", "a", "b"):
                self.pos -= 1
                raise self.error(f"unknown identifier {name!r}")
            if name in ("a", "b") and self.peek() == "[":
                self.pos += 1
                i = self.natural()
                self.take(",")
                j = self.natural()
                self.take("]")
                return MPoly.var(avar(i, j) if name == "a" else bvar(i, j))
            return MPoly.var(Var(name))
        raise self.error("expected a number, a variable or '('")


def parse_series(text: str) -> PlaneSeries:
    parser = _Parser(text)
    parser.skip_ws()
    if parser.pos >= len(text):
        raise ParseError("empty expression", 0)
    poly = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return PlaneSeries(poly)
