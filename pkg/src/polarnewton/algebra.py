"""Exact computer-algebra kernel.

Coefficients are `fractions.Fraction` throughout and nothing in this module
rounds.  Multivariate polynomials are sparse maps from monomials to nonzero
rationals; univariate polynomials over that ring get a dense layout, which is
what the Sylvester/discriminant machinery wants.

The variable alphabet is closed: x, y, z, the two pencil parameters a, b, and
the doubly indexed family coefficients a[i,j], b[i,j].
"""

from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

__all__ = [
    "AlgebraError",
    "Var",
    "X",
    "Y",
    "Z",
    "A",
    "B",
    "avar",
    "bvar",
    "var_from_name",
    "MPoly",
    "UPoly",
    "resultant",
    "discriminant",
    "is_squarefree",
    "squarefree_info",
    "mpoly_gcd",
    "strip_content",
    "squarefree_part",
    "squarefree_split",
    "qpoly_gcd",
    "qpoly_yun",
]

# Render/sort order: pencil and family coefficients first, geometry last.
_KIND_ORDER = {"a": 0, "b": 1, "aij": 2, "bij": 3, "x": 4, "y": 5, "z": 6}
_INDEXED = ("aij", "bij")

_NAME_RE = re.compile(r"^([ab])\[(\d+),(\d+)\]$")


class AlgebraError(ValueError):
    """Raised on domain errors in the exact kernel."""


@dataclass(frozen=True)
class Var:
    """An indeterminate from the closed alphabet.

    Equality is by name; the total order is lexicographic on (kind, i, j),
    which keeps printing deterministic.  The sort key and hash are hot paths
    of the polynomial arithmetic, so both are precomputed.
    """

    kind: str
    i: int = -1
    j: int = -1

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise AlgebraError(f"unknown variable kind {self.kind!r}")
        if self.kind in _INDEXED:
            if self.i < 0 or self.j < 0:
                raise AlgebraError("indexed variables need i, j >= 0")
        elif (self.i, self.j) != (-1, -1):
            raise AlgebraError(f"variable {self.kind!r} takes no indices")
        key = (_KIND_ORDER[self.kind], self.i, self.j)
        object.__setattr__(self, "sort_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __hash__(self) -> int:
        return self._hash

    @property
    def name(self) -> str:
        if self.kind in _INDEXED:
            return f"{self.kind[0]}[{self.i},{self.j}]"
        return self.kind

    def __lt__(self, other: "Var") -> bool:
        return self.sort_key < other.sort_key

    def __repr__(self) -> str:
        return self.name


X = Var("x")
Y = Var("y")
Z = Var("z")
A = Var("a")
B = Var("b")


def avar(i: int, j: int) -> Var:
    return Var("aij", i, j)


def bvar(i: int, j: int) -> Var:
    return Var("bij", i, j)


def var_from_name(name: str) -> Var:
    if name in ("x", "y", "z", "a", "b"):
        return Var(name)
    m = _NAME_RE.match(name)
    if m:
        kind = "aij" if m.group(1) == "a" else "bij"
        return Var(kind, int(m.group(2)), int(m.group(3)))
    raise AlgebraError(f"unknown variable name {name!r}")


# A monomial is a tuple of (Var, exponent) pairs, sorted by variable, with
# strictly positive exponents.  The empty tuple is the constant monomial.
Mono = tuple


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        k1, k2 = v1.sort_key, v2.sort_key
        if k1 == k2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif k1 < k2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_deg(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_div(m1: Mono, m2: Mono) -> Mono | None:
    """m1 / m2, or None when not divisible."""
    out = dict(m1)
    for v, e in m2:
        r = out.get(v, 0) - e
        if r < 0:
            return None
        if r == 0:
            out.pop(v, None)
        else:
            out[v] = r
    return tuple(sorted(out.items(), key=lambda ve: ve[0].sort_key))


# Graded lexicographic order over the Var order, as a cached sortable key:
# total degree first, then pairs (negated var rank, exponent).  At equal
# degree no monomial tuple can be a strict prefix of another, so plain tuple
# comparison realizes the lexicographic rule "a positive exponent on an
# earlier variable wins".  The negated twin inverts the order for min-heaps.
_KEY_CACHE: dict[Mono, tuple] = {}
_NEG_KEY_CACHE: dict[Mono, tuple] = {}


def _MONO_KEY(m: Mono) -> tuple:
    key = _KEY_CACHE.get(m)
    if key is None:
        deg = 0
        parts = []
        for v, e in m:
            deg += e
            r0, r1, r2 = v.sort_key
            parts.append(((-r0, -r1, -r2), e))
        key = (deg, tuple(parts))
        _KEY_CACHE[m] = key
    return key


def _MONO_NEG_KEY(m: Mono) -> tuple:
    key = _NEG_KEY_CACHE.get(m)
    if key is None:
        deg = 0
        parts = []
        for v, e in m:
            deg += e
            parts.append((v.sort_key, -e))
        key = (-deg, tuple(parts))
        _NEG_KEY_CACHE[m] = key
    return key


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator, b.numerator), math.lcm(a.denominator, b.denominator))


class MPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        self._terms: dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self._terms[m] = c
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, v: Var, e: int = 1) -> "MPoly":
        if e < 0:
            raise AlgebraError("negative exponent")
        if e == 0:
            return cls.const(1)
        return cls({((v, e),): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, powers: Mapping[Var, int]) -> "MPoly":
        mono = tuple(sorted(((v, e) for v, e in powers.items() if e), key=lambda ve: ve[0].sort_key))
        if any(e < 0 for _, e in mono):
            raise AlgebraError("negative exponent")
        return cls({mono: Fraction(coeff)})

    one = classmethod(lambda cls: cls.const(1))

    # -- queries -----------------------------------------------------------

    @property
    def terms(self) -> dict[Mono, Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise AlgebraError("not a constant polynomial")
        return self._terms[()]

    def variables(self) -> frozenset[Var]:
        out = set()
        for m in self._terms:
            for v, _ in m:
                out.add(v)
        return frozenset(out)

    def degree_in(self, v: Var) -> int:
        """Max exponent of v; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        best = 0
        for m in self._terms:
            for w, e in m:
                if w == v and e > best:
                    best = e
        return best

    def min_degree_in(self, v: Var) -> int:
        if not self._terms:
            return 0
        best = None
        for m in self._terms:
            e = 0
            for w, ee in m:
                if w == v:
                    e = ee
            best = e if best is None else min(best, e)
        return best or 0

    def total_degree(self) -> int:
        return max((_mono_deg(m) for m in self._terms), default=0)

    def leading(self) -> tuple[Mono, Fraction]:
        if not self._terms:
            raise AlgebraError("zero polynomial has no leading term")
        m = max(self._terms, key=_MONO_KEY)
        return m, self._terms[m]

    # -- ring operations ----------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        p = MPoly.__new__(MPoly)
        p._terms = out
        p._hash = None
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly.__new__(MPoly)
        p._terms = {m: -c for m, c in self._terms.items()}
        p._hash = None
        return p

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if not self._terms or not o._terms:
            return MPoly.zero()
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        p = MPoly.__new__(MPoly)
        p._terms = out
        p._hash = None
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("exponent must be a non-negative integer")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution -------------------------------------------

    def deriv(self, v: Var) -> "MPoly":
        out: dict[Mono, Fraction] = {}
        for m, c in self._terms.items():
            e = 0
            for w, ee in m:
                if w == v:
                    e = ee
            if e == 0:
                continue
            rest = tuple((w, ee) for w, ee in m if w != v)
            if e > 1:
                rest = _mono_mul(rest, ((v, e - 1),))
            s = out.get(rest, Fraction(0)) + c * e
            if s == 0:
                out.pop(rest, None)
            else:
                out[rest] = s
        p = MPoly.__new__(MPoly)
        p._terms = out
        p._hash = None
        return p

    def subs(self, assignment: Mapping[Var, "MPoly | Fraction | int"]) -> "MPoly":
        """Substitute variables (partially); unmentioned variables survive."""
        table = {v: (s if isinstance(s, MPoly) else MPoly.const(s)) for v, s in assignment.items()}
        out = MPoly.zero()
        for m, c in self._terms.items():
            term = MPoly.const(c)
            for v, e in m:
                term = term * (table[v] ** e if v in table else MPoly.var(v, e))
            out = out + term
        return out

    def evaluate(self, assignment: Mapping[Var, Fraction]) -> Fraction:
        """Evaluate fully; every variable present must be assigned."""
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for v, e in m:
                if v not in assignment:
                    raise AlgebraError(f"no value for {v.name}")
                val *= Fraction(assignment[v]) ** e
            total += val
        return total

    def coefficients_in(self, vars: Sequence[Var]) -> dict[tuple[int, ...], "MPoly"]:
        """Collect by the exponents of `vars`: {exponent-tuple: coefficient}."""
        vs = list(vars)
        out: dict[tuple[int, ...], dict[Mono, Fraction]] = {}
        for m, c in self._terms.items():
            exps = []
            rest = []
            md = dict(m)
            for v in vs:
                exps.append(md.pop(v, 0))
            rest = tuple(sorted(md.items(), key=lambda ve: ve[0].sort_key))
            bucket = out.setdefault(tuple(exps), {})
            bucket[rest] = bucket.get(rest, Fraction(0)) + c
        result = {}
        for k, terms in out.items():
            p = MPoly(terms)
            if not p.is_zero():
                result[k] = p
        return result

    # -- normalization ---------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of the coefficients)."""
        if not self._terms:
            return Fraction(0)
        return reduce(_frac_gcd, (abs(c) for c in self._terms.values()))

    def primitive_normalized(self) -> "MPoly":
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        c = self.content()
        _, lead = self.leading()
        if lead < 0:
            c = -c
        p = MPoly.__new__(MPoly)
        p._terms = {m: v / c for m, v in self._terms.items()}
        p._hash = None
        return p

    def divexact(self, other: "MPoly | Fraction | int") -> "MPoly":
        """Exact division; raises AlgebraError when the quotient is not exact.

        Leading terms are consumed in descending order through a heap, so a
        reduction step costs the divisor size, not the remainder size.
        """
        o = self._coerced(other)
        if o is None or o.is_zero():
            raise AlgebraError("division by zero polynomial")
        if o.is_constant():
            c = o.constant_value()
            p = MPoly.__new__(MPoly)
            p._terms = {m: v / c for m, v in self._terms.items()}
            p._hash = None
            return p
        rem = dict(self._terms)
        out: dict[Mono, Fraction] = {}
        gm, gc = o.leading()
        rest = [(m2, c2) for m2, c2 in o._terms.items() if m2 != gm]
        heap = [(_MONO_NEG_KEY(m), m) for m in rem]
        heapq.heapify(heap)
        while heap:
            _, rm = heapq.heappop(heap)
            c = rem.pop(rm, None)
            if c is None:  # stale heap entry
                continue
            qm = _mono_div(rm, gm)
            if qm is None:
                raise AlgebraError("not an exact multiple")
            qc = c / gc
            out[qm] = qc
            for m2, c2 in rest:
                m = _mono_mul(qm, m2)
                if m in rem:
                    s = rem[m] - qc * c2
                    if s == 0:
                        del rem[m]
                    else:
                        rem[m] = s
                else:
                    rem[m] = -qc * c2
                    heapq.heappush(heap, (_MONO_NEG_KEY(m), m))
        return MPoly(out)

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms in descending graded-lex order."""
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=_MONO_KEY, reverse=True):
            c = self._terms[m]
            factors = "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in m)
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{mag}*{factors}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MPoly({self.render()})"


class UPoly:
    """Dense univariate polynomial in `main` over the multivariate ring."""

    __slots__ = ("main", "coeffs")

    def __init__(self, main: Var, coeffs: Iterable[MPoly]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        for c in cs:
            if main in c.variables():
                raise AlgebraError("coefficient contains the main variable")
        self.main = main
        self.coeffs = tuple(cs)

    @classmethod
    def from_mpoly(cls, p: MPoly, main: Var) -> "UPoly":
        buckets: dict[int, dict[Mono, Fraction]] = {}
        for m, c in p.terms.items():
            e = 0
            rest = []
            for v, ee in m:
                if v == main:
                    e = ee
                else:
                    rest.append((v, ee))
            bucket = buckets.setdefault(e, {})
            key = tuple(rest)
            bucket[key] = bucket.get(key, Fraction(0)) + c
        deg = max(buckets, default=-1)
        return cls(main, [MPoly(buckets.get(k, {})) for k in range(deg + 1)])

    def to_mpoly(self) -> MPoly:
        out = MPoly.zero()
        for e, c in enumerate(self.coeffs):
            out = out + c * MPoly.var(self.main, e)
        return out

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> MPoly:
        if self.is_zero():
            raise AlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> MPoly:
        return self.coeffs[k] if 0 <= k <= self.deg else MPoly.zero()

    def derivative(self) -> "UPoly":
        return UPoly(self.main, [self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def scale(self, f: MPoly) -> "UPoly":
        return UPoly(self.main, [c * f for c in self.coeffs])

    def has_constant_coeffs(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def as_fractions(self) -> tuple[Fraction, ...]:
        if not self.has_constant_coeffs():
            raise AlgebraError("coefficients are not constants")
        return tuple(c.constant_value() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.main == other.main and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.main, self.coeffs))

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in range(self.deg, -1, -1):
            c = self.coeffs[e]
            if c.is_zero():
                continue
            zpow = "" if e == 0 else (self.main.name if e == 1 else f"{self.main.name}^{e}")
            if c.is_constant() and not zpow:
                parts.append(str(c.constant_value()))
            elif c == MPoly.const(1):
                parts.append(zpow)
            elif c.is_constant():
                parts.append(f"{c.constant_value()}*{zpow}")
            else:
                parts.append(f"({c.render()})*{zpow}" if zpow else f"({c.render()})")
        return " + ".join(parts)

    def __repr__(self):
        return f"UPoly({self.render()})"


# -- resultants -----------------------------------------------------------
#
# The Sylvester determinant runs fraction-free over integer-coefficient
# polynomials (denominators cleared once per input); plain int arithmetic is
# several times faster than Fraction and Bareiss keeps every division exact.

IPoly = dict  # Mono -> int


def _ipoly_mul(a: IPoly, b: IPoly) -> IPoly:
    if not a or not b:
        return {}
    out: IPoly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2)
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _ipoly_sub(a: IPoly, b: IPoly) -> IPoly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) - c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _ipoly_divexact(a: IPoly, b: IPoly) -> IPoly:
    if not b:
        raise AlgebraError("division by zero polynomial")
    if not a:
        return {}
    if len(b) == 1 and () in b:
        d = b[()]
        out = {}
        for m, c in a.items():
            q, r = divmod(c, d)
            if r:
                raise AlgebraError("not an exact multiple")
            out[m] = q
        return out
    rem = dict(a)
    out: IPoly = {}
    gm = max(b, key=_MONO_KEY)
    gc = b[gm]
    rest = [(m2, c2) for m2, c2 in b.items() if m2 != gm]
    heap = [(_MONO_NEG_KEY(m), m) for m in rem]
    heapq.heapify(heap)
    while heap:
        _, rm = heapq.heappop(heap)
        c = rem.pop(rm, None)
        if c is None:
            continue
        qm = _mono_div(rm, gm)
        if qm is None:
            raise AlgebraError("not an exact multiple")
        qc, r = divmod(c, gc)
        if r:
            raise AlgebraError("not an exact multiple")
        out[qm] = qc
        for m2, c2 in rest:
            m = _mono_mul(qm, m2)
            if m in rem:
                s = rem[m] - qc * c2
                if s:
                    rem[m] = s
                else:
                    del rem[m]
            else:
                rem[m] = -qc * c2
                heapq.heappush(heap, (_MONO_NEG_KEY(m), m))
    return out


def _to_ipoly(p: MPoly, scale: int) -> IPoly:
    out = {}
    for m, c in p.terms.items():
        v = c * scale
        assert v.denominator == 1
        out[m] = v.numerator
    return out


def _bareiss_det_int(mat: list[list[IPoly]]) -> IPoly:
    """Fraction-free determinant; every intermediate division is exact."""
    n = len(mat)
    if n == 0:
        return {(): 1}
    m = [row[:] for row in mat]
    sign = 1
    prev: IPoly = {(): 1}
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((r for r in range(k + 1, n) if m[r][k]), None)
            if pivot is None:
                return {}
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _ipoly_sub(_ipoly_mul(m[k][k], m[i][j]), _ipoly_mul(m[i][k], m[k][j]))
                m[i][j] = _ipoly_divexact(num, prev)
            m[i][k] = {}
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = {mono: -c for mono, c in det.items()}
    return det


def resultant(F: UPoly, G: UPoly) -> MPoly:
    """Determinant of the Sylvester matrix of F and G in their main variable."""
    if F.is_zero() or G.is_zero():
        raise AlgebraError("resultant of the zero polynomial")
    if F.main != G.main:
        raise AlgebraError("main variables differ")
    n, m = F.deg, G.deg
    size = n + m
    if size == 0:
        return MPoly.const(1)
    lf = math.lcm(*(c.denominator for p in F.coeffs for c in p.terms.values()))
    lg = math.lcm(*(c.denominator for p in G.coeffs for c in p.terms.values()))
    fc = [_to_ipoly(F.coeff(n - k), lf) for k in range(n + 1)]  # descending
    gc = [_to_ipoly(G.coeff(m - k), lg) for k in range(m + 1)]
    rows: list[list[IPoly]] = []
    for r in range(m):
        row = [{} for _ in range(size)]
        for k, c in enumerate(fc):
            row[r + k] = c
        rows.append(row)
    for r in range(n):
        row = [{} for _ in range(size)]
        for k, c in enumerate(gc):
            row[r + k] = c
        rows.append(row)
    det = _bareiss_det_int(rows)
    scale = Fraction(1, lf**m * lg**n)
    return MPoly({mono: scale * c for mono, c in det.items()})


def discriminant(F: UPoly) -> MPoly:
    """(-1)^(n(n-1)/2) * Res(F, F') / lc(F); the division is exact."""
    n = F.deg
    if n < 1:
        raise AlgebraError("discriminant needs degree >= 1")
    r = resultant(F, F.derivative())
    if (n * (n - 1) // 2) % 2:
        r = -r
    return r.divexact(F.lc)


# -- univariate rational helpers ---------------------------------------------


def _qtrim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def qpoly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    b = _qtrim(list(b))
    if not b:
        raise AlgebraError("division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = _qtrim(a)
    while len(r) >= len(b):
        f = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = f
        for i, bc in enumerate(b):
            r[k + i] -= f * bc
        r = _qtrim(r)
    return q, r


def qpoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd over the rationals."""
    f, g = _qtrim(list(a)), _qtrim(list(b))
    while g:
        _, r = qpoly_divmod(f, g)
        f, g = g, r
    if f:
        lead = f[-1]
        f = [c / lead for c in f]
    return f


def _qderiv(c: Sequence[Fraction]) -> list[Fraction]:
    return [c[k] * k for k in range(1, len(c))]


def _qsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _qtrim(out)


def qpoly_yun(c: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun squarefree decomposition: list of (monic factor, multiplicity)."""
    f = _qtrim(list(c))
    if len(f) <= 1:
        return []
    g = qpoly_gcd(f, _qderiv(f))
    if len(g) == 1:
        lead = f[-1]
        return [([x / lead for x in f], 1)]
    ci = _qtrim(qpoly_divmod(f, g)[0])
    di = _qsub(qpoly_divmod(_qderiv(f), g)[0], _qderiv(ci))
    out = []
    i = 1
    while len(ci) > 1:
        ai = qpoly_gcd(ci, di)
        if len(ai) > 1:
            out.append((ai, i))
        ci = _qtrim(qpoly_divmod(ci, ai)[0])
        di = _qsub(qpoly_divmod(di, ai)[0], _qderiv(ci))
        i += 1
    return out


def squarefree_info(F: UPoly) -> tuple[bool, str]:
    """Squarefree verdict plus which route decided it.

    Constant coefficients: gcd(F, F') must be constant ("concrete").
    Otherwise: the discriminant must be nonzero as a polynomial ("symbolic"),
    which is a statement about the generic member only.
    """
    if F.is_zero():
        raise AlgebraError("squarefree test on the zero polynomial")
    if F.has_constant_coeffs():
        c = F.as_fractions()
        if len(c) == 1:
            return True, "concrete"
        g = qpoly_gcd(c, _qderiv(list(c)))
        return len(g) == 1, "concrete"
    if F.deg < 1:
        return True, "symbolic"
    return not discriminant(F).is_zero(), "symbolic"


def is_squarefree(F: UPoly) -> bool:
    return squarefree_info(F)[0]


# -- multivariate gcd and squarefree structure -------------------------------


def _prem(F: UPoly, G: UPoly) -> UPoly:
    """Pseudo-remainder of F by G (both in the same main variable)."""
    R = F
    glc = G.lc
    while not R.is_zero() and R.deg >= G.deg:
        shift = R.deg - G.deg
        head = R.lc
        newc = [c * glc for c in R.coeffs]
        for k, gc in enumerate(G.coeffs):
            newc[shift + k] = newc[shift + k] - head * gc
        R = UPoly(F.main, newc)
    return R


def _upoly_content(F: UPoly) -> MPoly:
    c = MPoly.zero()
    for coeff in F.coeffs:
        c = mpoly_gcd(c, coeff)
    return c


def _coprime_by_evaluation(Fp: UPoly, Gp: UPoly) -> bool:
    """Deterministic coprimality certificate for primitive inputs.

    Evaluating every non-main variable at a point where neither leading
    coefficient vanishes can only preserve the main degree of any common
    divisor (leading coefficients of divisors divide the leading
    coefficients), so a trivial univariate gcd proves the primitive parts
    coprime.  Failure to certify is inconclusive.
    """
    others = sorted((Fp.lc.variables() | Gp.lc.variables()
                     | {v for c in Fp.coeffs for v in c.variables()}
                     | {v for c in Gp.coeffs for v in c.variables()}))
    import random as _random

    rng = _random.Random(0x5EED)
    for _ in range(6):
        point = {v: Fraction(rng.randint(-19, 19)) for v in others}
        try:
            if Fp.lc.evaluate(point) == 0 or Gp.lc.evaluate(point) == 0:
                continue
            fu = [c.evaluate(point) for c in Fp.coeffs]
            gu = [c.evaluate(point) for c in Gp.coeffs]
        except AlgebraError:
            return False
        if len(qpoly_gcd(fu, gu)) == 1:
            return True
    return False


def _subresultant_gcd(Fp: UPoly, Gp: UPoly) -> UPoly:
    """Last member of the subresultant remainder sequence of primitive inputs
    with deg Fp >= deg Gp >= 1; exact divisions keep coefficient growth tame."""
    A, B = Fp, Gp
    g = MPoly.const(1)
    h = MPoly.const(1)
    while True:
        delta = A.deg - B.deg
        R = _prem(A, B)
        if R.is_zero():
            return B
        divisor = g * h**delta
        R = UPoly(R.main, [c.divexact(divisor) for c in R.coeffs])
        A, B = B, R
        if B.deg == 0:
            return B
        g = A.lc
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).divexact(h ** (delta - 1))


def mpoly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Gcd in Q[vars], primitive with positive leading coefficient."""
    if f.is_zero():
        return g.primitive_normalized()
    if g.is_zero():
        return f.primitive_normalized()
    if f.is_constant() or g.is_constant():
        return MPoly.const(1)
    vs = sorted(f.variables() | g.variables())
    v = vs[-1]
    F = UPoly.from_mpoly(f, v)
    G = UPoly.from_mpoly(g, v)
    if F.deg == 0:
        return mpoly_gcd(F.coeffs[0], _upoly_content(G))
    if G.deg == 0:
        return mpoly_gcd(G.coeffs[0], _upoly_content(F))
    cf = _upoly_content(F)
    cg = _upoly_content(G)
    c = mpoly_gcd(cf, cg)
    Fp = UPoly(v, [x.divexact(cf) for x in F.coeffs])
    Gp = UPoly(v, [x.divexact(cg) for x in G.coeffs])
    if Fp.deg < Gp.deg:
        Fp, Gp = Gp, Fp
    if _coprime_by_evaluation(Fp, Gp):
        return c.primitive_normalized() if not c.is_constant() else MPoly.const(1)
    last = _subresultant_gcd(Fp, Gp)
    if last.deg == 0:
        return c.primitive_normalized() if not c.is_constant() else MPoly.const(1)
    cont = _upoly_content(last)
    prim = UPoly(v, [x.divexact(cont) for x in last.coeffs])
    return (c * prim.to_mpoly()).primitive_normalized()


def strip_content(g: MPoly, keep: Iterable[Var]) -> MPoly:
    """Drop the monomial factor on variables outside `keep` and the rational
    content, then normalize the leading sign."""
    if g.is_zero():
        raise AlgebraError("strip_content of zero")
    keep_set = set(keep)
    out = g
    for v in sorted(g.variables()):
        if v in keep_set:
            continue
        e = out.min_degree_in(v)
        if e > 0:
            out = out.divexact(MPoly.var(v, e))
    return out.primitive_normalized()


def squarefree_part(g: MPoly, main: Var) -> MPoly:
    """g / gcd(g, dg/dmain), content-cleared; identity when main is absent."""
    if g.is_zero():
        raise AlgebraError("squarefree_part of zero")
    if g.degree_in(main) <= 0:
        return g
    d = mpoly_gcd(g, g.deriv(main))
    return g.divexact(d).primitive_normalized()


def squarefree_split(g: MPoly) -> list[tuple[MPoly, int]]:
    """Multiplicity-graded squarefree factors over all variables.

    Returns normalized pairwise-coprime factors f_k with g = unit * prod f_k^k.
    """
    if g.is_zero():
        raise AlgebraError("squarefree_split of zero")
    g = g.primitive_normalized()
    if g.is_constant():
        return []
    d = g
    for v in sorted(g.variables()):
        d = mpoly_gcd(d, g.deriv(v))
    radical = g.divexact(d).primitive_normalized()
    if d.is_constant():
        return [(radical, 1)]
    sub = squarefree_split(d)
    rad_d = MPoly.const(1)
    for fac, _ in sub:
        rad_d = rad_d * fac
    a1 = radical.divexact(rad_d).primitive_normalized()
    out: list[tuple[MPoly, int]] = []
    if not a1.is_constant():
        out.append((a1, 1))
    out.extend((fac, mult + 1) for fac, mult in sub)
    return out
