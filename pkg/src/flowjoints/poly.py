"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a dict mapping exponent tuples to nonzero Fractions,
kept in graded-lexicographic order (leading term first) so that equality,
hashing, printing, and serialization are all structural and deterministic.
No floating point enters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class PolyError(ValueError):
    pass


def _grlex_key(exps: tuple) -> tuple:
    # graded lex, negated exponents so that plain sort() puts the leading term first
    return (-sum(exps), tuple(-e for e in exps))


class Poly:
    """Polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        if nvars < 0:
            raise PolyError(f"nvars must be nonnegative, got {nvars}")
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise PolyError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
                if any(e < 0 for e in exps):
                    raise PolyError(f"negative exponent in {exps}")
                coeff = Fraction(coeff)
                if coeff != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
        ordered = {}
        for exps in sorted(clean, key=_grlex_key):
            if clean[exps] != 0:
                ordered[exps] = clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.nvars, dict(self.terms)))

    # ------------------------------------------------------------------ constructors

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, value: Scalar, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def var(cls, index: int, nvars: int) -> "Poly":
        if not 0 <= index < nvars:
            raise PolyError(f"variable index {index} out of range for nvars={nvars}")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, coeff: Scalar, exps: Sequence[int], nvars: int) -> "Poly":
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    # ------------------------------------------------------------------ predicates

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise PolyError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(exps[index] for exps in self.terms)

    def depends_on(self, index: int) -> bool:
        return any(exps[index] > 0 for exps in self.terms)

    # ------------------------------------------------------------------ arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise PolyError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return Poly(self.nvars)
            return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return Poly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self.terms.items())))

    # ------------------------------------------------------------------ calculus / evaluation

    def partial(self, index: int) -> "Poly":
        """Exact partial derivative with respect to variable ``index``."""
        terms = {}
        for exps, c in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            key = tuple(v - 1 if i == index else v for i, v in enumerate(exps))
            terms[key] = terms.get(key, Fraction(0)) + c * e
        return Poly(self.nvars, terms)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise PolyError(f"point has dimension {len(point)}, expected {self.nvars}")
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def subs(self, mapping: Mapping[int, "Poly | Scalar"]) -> "Poly":
        """Substitute polynomials (sharing this nvars) for selected variables."""
        if not mapping:
            return self
        subs = {}
        for idx, val in mapping.items():
            if isinstance(val, (int, Fraction)):
                val = Poly.const(val, self.nvars)
            if val.nvars != self.nvars:
                raise PolyError("substitution polynomial has mismatched nvars")
            subs[idx] = val
        result = Poly(self.nvars)
        for exps, c in self.terms.items():
            term = Poly.const(c, self.nvars)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                factor = subs[i] if i in subs else Poly.var(i, self.nvars)
                term = term * factor ** e
            result = result + term
        return result

    def compose(self, args: Sequence["Poly"]) -> "Poly":
        """Full composition: substitute ``args[i]`` (all sharing one nvars) for variable i."""
        if len(args) != self.nvars:
            raise PolyError(f"compose needs {self.nvars} arguments, got {len(args)}")
        if not args:
            return self
        m = args[0].nvars
        for a in args:
            if a.nvars != m:
                raise PolyError("composition arguments must share nvars")
        result = Poly(m)
        for exps, c in self.terms.items():
            term = Poly.const(c, m)
            for a, e in zip(args, exps):
                if e:
                    term = term * a ** e
            result = result + term
        return result

    def extend(self, nvars: int, shift: int = 0) -> "Poly":
        """Reinterpret in a larger variable ring, variable i becoming i + shift."""
        if nvars < self.nvars + shift:
            raise PolyError("target ring too small")
        terms = {}
        for exps, c in self.terms.items():
            key = (0,) * shift + exps + (0,) * (nvars - self.nvars - shift)
            terms[key] = c
        return Poly(nvars, terms)

    def coeff_map(self, index: int) -> dict:
        """Coefficients of powers of variable ``index``, as polynomials in the remaining ring."""
        out: dict = {}
        for exps, c in self.terms.items():
            e = exps[index]
            rest = tuple(v if i != index else 0 for i, v in enumerate(exps))
            out.setdefault(e, {})[rest] = c
        return {e: Poly(self.nvars, t) for e, t in out.items()}

    def to_dense(self) -> list:
        """Dense ascending coefficient list; requires nvars == 1."""
        if self.nvars != 1:
            raise PolyError("to_dense requires a univariate polynomial")
        if not self.terms:
            return []
        deg = max(e[0] for e in self.terms)
        coeffs = [Fraction(0)] * (deg + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return coeffs

    @classmethod
    def from_dense(cls, coeffs: Iterable[Scalar]) -> "Poly":
        return cls(1, {(i,): Fraction(c) for i, c in enumerate(coeffs) if Fraction(c) != 0})

    # ------------------------------------------------------------------ text format

    def format(self, names: Sequence[str] | None = None) -> str:
        """Canonical text form: sum of ``c/d*x1^a1*...*xn^an`` terms, leading term first."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i+1}" for i in range(self.nvars)]
        parts = []
        for exps, c in self.terms.items():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            coeff = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if factors:
                body = "*".join(factors) if coeff == "1" else coeff + "*" + "*".join(factors)
            else:
                body = coeff
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.format()!r})"

    def __str__(self) -> str:
        return self.format()


def parse_poly(text: str, nvars: int, names: Sequence[str] | None = None) -> Poly:
    """Parse the canonical text form back into a Poly (bit-exact round trip)."""
    if names is None:
        names = [f"x{i+1}" for i in range(nvars)]
    index = {n: i for i, n in enumerate(names)}
    s = text.strip()
    if not s:
        raise PolyError("empty polynomial text")
    if s == "0":
        return Poly(nvars)
    # split into signed terms
    chunks = []
    sign = 1
    pos = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    buf = ""
    depth_guard = s[pos:]
    for ch in depth_guard:
        if ch in "+-" and buf and buf[-1] in " ":
            chunks.append((sign, buf.strip()))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
    chunks.append((sign, buf.strip()))
    terms: dict = {}
    for sign, chunk in chunks:
        if not chunk:
            raise PolyError(f"malformed term in {text!r}")
        coeff = Fraction(1)
        exps = [0] * nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise PolyError(f"empty factor in term {chunk!r}")
            if factor[0].isdigit():
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as exc:
                    raise PolyError(f"bad coefficient {factor!r}") from exc
            else:
                name, _, power = factor.partition("^")
                if name not in index:
                    raise PolyError(f"unknown variable {name!r}")
                e = 1
                if power:
                    if not power.isdigit():
                        raise PolyError(f"bad exponent {power!r}")
                    e = int(power)
                exps[index[name]] += e
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff
    return Poly(nvars, terms)
