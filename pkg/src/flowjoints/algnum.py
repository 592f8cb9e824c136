"""Exact real algebraic numbers: rationals, or a square-free integer defining
polynomial plus an open isolating interval. Equality and ordering are decided
exactly by polynomial gcds and interval refinement."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import univar
from .univar import (
    eval_at,
    gcd_poly,
    isolate_real_roots,
    refine_interval,
    squarefree_part,
    to_int_primitive,
)


def _divisors(n: int, cap: int = 10 ** 9) -> list:
    """Positive divisors by trial division; empty if n exceeds the cap."""
    n = abs(n)
    if n == 0 or n > cap:
        return []
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _identify_rational(sf: Sequence[int], lo: Fraction, hi: Fraction):
    """The rational root inside an isolating interval, if one exists.

    Any rational root p/q of a primitive integer polynomial has q dividing the
    leading coefficient; the interval is assumed narrow, so few candidates.
    """
    qs = _divisors(sf[-1], cap=10 ** 6)
    for q in qs:
        p_lo = lo * q
        p_hi = hi * q
        p = p_lo.numerator // p_lo.denominator + 1
        if p_hi - p > 8:
            continue    # window too wide for this denominator; stay an interval
        while p < p_hi:
            cand = Fraction(p, q)
            if lo < cand < hi and eval_at(list(sf), cand) == 0:
                return cand
            p += 1
    return None


class AlgebraicNumber:
    """A real algebraic number with exact arithmetic-free comparisons."""

    __slots__ = ("rat", "poly", "lo", "hi")

    def __init__(self, rat: Fraction | None = None,
                 poly: tuple[int, ...] | None = None,
                 interval: tuple[Fraction, Fraction] | None = None):
        if rat is not None:
            self.rat = Fraction(rat)
            self.poly = None
            self.lo = self.hi = self.rat
            return
        if poly is None or interval is None:
            raise ValueError("need either a rational or (poly, interval)")
        self.rat = None
        self.poly = tuple(int(c) for c in poly)
        self.lo, self.hi = Fraction(interval[0]), Fraction(interval[1])

    def __getstate__(self):
        return (self.rat, self.poly, self.lo, self.hi)

    def __setstate__(self, state):
        for name, value in zip(self.__slots__, state):
            object.__setattr__(self, name, value)

    @classmethod
    def from_rational(cls, r) -> "AlgebraicNumber":
        return cls(rat=Fraction(r))

    @classmethod
    def roots_of(cls, coeffs: Sequence) -> list:
        """All real roots of a rational polynomial, sorted ascending.

        Rational roots are reported exactly: each isolating interval is
        shrunk and scanned for candidates p/q with q dividing the leading
        coefficient (capped; a missed oversized case stays a valid interval).
        """
        sf = to_int_primitive(squarefree_part(coeffs))
        out = []
        for item in isolate_real_roots(sf):
            if item[0] == "rat":
                out.append(cls(rat=item[1]))
                continue
            lo, hi = refine_interval(sf, item[1], item[2], Fraction(1, 64))
            rat = _identify_rational(sf, lo, hi)
            if rat is not None:
                out.append(cls(rat=rat))
            else:
                out.append(cls(poly=sf, interval=(lo, hi)))
        return out

    @property
    def is_rational(self) -> bool:
        return self.rat is not None

    def refine(self, width: Fraction) -> None:
        if self.rat is not None or self.hi - self.lo <= width:
            return
        self.lo, self.hi = refine_interval(list(self.poly), self.lo, self.hi, width)

    def approx(self, digits: int = 15) -> Fraction:
        self.refine(Fraction(1, 10 ** digits))
        return (self.lo + self.hi) / 2

    def to_decimal(self, digits: int = 15) -> str:
        from decimal import Decimal, getcontext

        getcontext().prec = digits + 5
        a = self.approx(digits + 2)
        return str(Decimal(a.numerator) / Decimal(a.denominator))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber(rat=Fraction(other))
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.rat is not None and other.rat is not None:
            return self.rat == other.rat
        if self.rat is not None:
            return other._equals_rational(self.rat)
        if other.rat is not None:
            return self._equals_rational(other.rat)
        g = to_int_primitive(gcd_poly(list(self.poly), list(other.poly)))
        if univar.degree(g) < 1:
            return False
        # equal iff some common root of g lies in both isolating intervals
        for item in isolate_real_roots(g):
            if item[0] == "rat":
                if self._equals_rational(item[1]) and other._equals_rational(item[1]):
                    return True
            else:
                cand = AlgebraicNumber(poly=g, interval=(item[1], item[2]))
                if self._same_root(cand) and other._same_root(cand):
                    return True
        return False

    def _equals_rational(self, r: Fraction) -> bool:
        if self.rat is not None:
            return self.rat == r
        if eval_at(list(self.poly), r) != 0:
            return False
        return self.lo < r < self.hi

    def _same_root(self, cand: "AlgebraicNumber") -> bool:
        """cand's root is a root of self.poly; decide whether it is self's root.

        Only cand shrinks: its root cannot sit on self's endpoints (those are
        non-roots of self.poly), so strict nesting or disjointness is reached.
        """
        while True:
            if cand.hi <= self.lo or cand.lo >= self.hi:
                return False
            if self.lo < cand.lo and cand.hi < self.hi:
                return True
            cand.refine((cand.hi - cand.lo) / 4)

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber(rat=Fraction(other))
        if self == other:
            return False
        a, b = self, other
        while not (a.hi < b.lo or b.hi < a.lo):
            a.refine((a.hi - a.lo) / 4 if a.rat is None else Fraction(0))
            b.refine((b.hi - b.lo) / 4 if b.rat is None else Fraction(0))
            if a.rat is not None and b.rat is not None:
                return a.rat < b.rat
        return a.hi < b.lo

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __hash__(self):
        # rationals hash consistently; algebraic numbers fall back to a class constant,
        # so dict/set use degrades to equality scans (counts stay exact)
        if self.rat is not None:
            return hash(self.rat)
        return hash(("algebraic",))

    def sort_key(self):
        return _SortProxy(self)

    def repr_exact(self) -> str:
        if self.rat is not None:
            return f"{self.rat.numerator}/{self.rat.denominator}"
        body = ",".join(str(c) for c in self.poly)
        return f"root[{body}]@({self.lo},{self.hi})"

    def __repr__(self):
        if self.rat is not None:
            return f"AlgebraicNumber({self.rat})"
        return f"AlgebraicNumber({self.to_decimal(12)}..., poly={list(self.poly)})"


class _SortProxy:
    __slots__ = ("value",)

    def __init__(self, value: AlgebraicNumber):
        self.value = value

    def __lt__(self, other: "_SortProxy") -> bool:
        return self.value < other.value

    def __eq__(self, other: "_SortProxy") -> bool:
        return self.value == other.value


class AlgebraicPoint:
    """Point with algebraic-number coordinates; equality is exact per coordinate."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[AlgebraicNumber]):
        self.coords = tuple(
            c if isinstance(c, AlgebraicNumber) else AlgebraicNumber(rat=Fraction(c))
            for c in coords
        )

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.coords)

    def rational_coords(self) -> tuple:
        if not self.is_rational:
            raise ValueError("point has irrational coordinates")
        return tuple(c.rat for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicPoint):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(tuple(hash(c) for c in self.coords))

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def repr_exact(self) -> str:
        return "(" + ";".join(c.repr_exact() for c in self.coords) + ")"

    def __repr__(self):
        return f"AlgebraicPoint{self.repr_exact()}"
