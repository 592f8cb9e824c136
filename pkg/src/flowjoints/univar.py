"""Univariate exact polynomial utilities: gcd, square-free part, real root
isolation by Descartes sign-variation bisection, and resultant elimination.

Dense polynomials are ascending coefficient lists. Root isolation operates on
integer coefficient lists; isolating intervals are open, with rational
endpoints that are not roots, each containing exactly one real root.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd, lcm
from typing import Sequence

from .poly import Poly, PolyError


def strip(coeffs: Sequence) -> list:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(coeffs: Sequence) -> int:
    return len(strip(coeffs)) - 1


def eval_at(coeffs: Sequence, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(list(coeffs)):
        total = total * x + Fraction(c)
    return total


def derivative(coeffs: Sequence) -> list:
    return strip([Fraction(c) * i for i, c in enumerate(coeffs)][1:])


def to_int_primitive(coeffs: Sequence) -> list:
    """Scale a rational polynomial to coprime integer coefficients, positive leading."""
    cs = strip(coeffs)
    if not cs:
        return []
    denom = 1
    for c in cs:
        denom = lcm(denom, c.denominator)
    ints = [int(c * denom) for c in cs]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def divmod_poly(num: Sequence, den: Sequence) -> tuple[list, list]:
    num, den = strip(num), strip(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    dlead = den[-1]
    while len(rem) >= len(den):
        f = rem[-1] / dlead
        k = len(rem) - len(den)
        quot[k] = f
        for i, c in enumerate(den):
            rem[k + i] -= f * c
        rem = strip(rem)
        if not rem:
            break
    return strip(quot), rem


def gcd_poly(a: Sequence, b: Sequence) -> list:
    """Monic gcd over the rationals (Euclid); [] only if both inputs are zero."""
    a, b = strip(a), strip(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def squarefree_part(coeffs: Sequence) -> list:
    """f / gcd(f, f'), monic; the square-free polynomial with the same real roots."""
    f = strip(coeffs)
    if degree(f) < 1:
        return f
    g = gcd_poly(f, derivative(f))
    q, r = divmod_poly(f, g)
    assert not r
    lead = q[-1]
    return [c / lead for c in q]


# ---------------------------------------------------------------- root isolation


def sign_variations(coeffs: Sequence) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _reverse_shift1(coeffs: list) -> list:
    # x^n * f(1/x) followed by x -> x+1: variation count bounds roots of f in (0,1)
    rev = list(reversed(coeffs))
    # Taylor shift by 1 via repeated synthetic division
    out = list(rev)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += out[j + 1]
    return out


def root_bound(coeffs: Sequence) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    cs = strip(coeffs)
    if len(cs) <= 1:
        return Fraction(1)
    lead = abs(cs[-1])
    return Fraction(1) + max(abs(c) for c in cs[:-1]) / lead


def isolate_real_roots(int_coeffs: Sequence[int]) -> list:
    """Isolating data for all real roots of a square-free integer polynomial.

    Returns a sorted list of entries, each either ("rat", r) for an exact
    rational root or ("int", lo, hi) for an open isolating interval.
    """
    f = [Fraction(c) for c in strip(int_coeffs)]
    if len(f) <= 1:
        return []
    out = []
    # root at zero
    if f[0] == 0:
        out.append(("rat", Fraction(0)))
        while f[0] == 0:
            f = f[1:]
    B = root_bound(f)

    def positive_roots(g: list) -> list:
        """Roots of g in (0, B) via bisection on dyadic subintervals of (0, B)."""
        results = []
        # scale to (0,1): h(x) = g(Bx)
        h = [c * B ** i for i, c in enumerate(g)]
        stack = [(Fraction(0), Fraction(1), h)]
        while stack:
            lo, hi, p = stack.pop()
            v = sign_variations(_reverse_shift1(p))
            if v == 0:
                continue
            if v == 1:
                results.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            # p_left(x) = p(x/2) scaled, p_right(x) = p((x+1)/2) scaled
            left = [c / Fraction(2 ** i) for i, c in enumerate(p)]
            right = _taylor_shift_half(p)
            if eval_at(p, Fraction(1, 2)) == 0:
                results.append(("exact", mid))
            stack.append((lo, mid, left))
            stack.append((mid, hi, right))
        cleaned = []
        for item in results:
            if item[0] == "exact":
                cleaned.append(("rat", item[1] * B))
            else:
                lo, hi = item
                cleaned.append(("raw", lo * B, hi * B))
        return cleaned

    def _taylor_shift_half(p: list) -> list:
        # q(x) = p((x+1)/2)
        scaled = [c / Fraction(2 ** i) for i, c in enumerate(p)]
        out_ = list(scaled)
        n = len(out_)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out_[j] += out_[j + 1]
        return out_

    pos = positive_roots(f)
    neg_poly = [c if i % 2 == 0 else -c for i, c in enumerate(f)]
    neg = positive_roots(neg_poly)
    for item in neg:
        if item[0] == "rat":
            out.append(("rat", -item[1]))
        else:
            out.append(("raw", -item[2], -item[1]))
    out.extend(pos)

    # normalize raw intervals: endpoint roots belong to sibling boxes (reported
    # exactly at split time), and a variation-1 box may hold zero interior roots
    final = []
    for item in out:
        if item[0] == "rat":
            final.append(("rat", item[1]))
            continue
        cleaned = _clean_interval(f, item[1], item[2])
        if cleaned is not None:
            final.append(cleaned)
    final.sort(key=lambda it: it[1])
    # remove duplicate rational roots discovered by both the exact and corner paths
    dedup = []
    for it in final:
        if dedup and it[0] == "rat" and dedup[-1][0] == "rat" and it[1] == dedup[-1][1]:
            continue
        dedup.append(it)
    return dedup


def _clean_interval(f: list, lo: Fraction, hi: Fraction):
    """Shrink a variation-1 box to an open isolating interval with non-root,
    sign-straddling endpoints; returns ("rat", r) if the interior root is hit
    exactly, ("int", lo, hi) normally, or None if the box held no interior root.

    Endpoint roots are simple (square-free input), so the sign of f adjacent to
    an endpoint root is the sign of its derivative there; a single interior root
    exists iff the signs adjacent to the two endpoints differ.
    """
    df = derivative(f)
    flo, fhi = eval_at(f, lo), eval_at(f, hi)
    sig_lo = (eval_at(df, lo) > 0) if flo == 0 else (flo > 0)
    sig_hi = (eval_at(df, hi) < 0) if fhi == 0 else (fhi > 0)
    if sig_lo == sig_hi:
        return None
    while flo == 0 or fhi == 0:
        if flo == 0:
            cand = lo + (hi - lo) / 4
            fc = eval_at(f, cand)
            if fc == 0:
                return ("rat", cand)
            if (fc > 0) == sig_lo:
                lo, flo = cand, fc
            else:
                hi, fhi = cand, fc
        else:
            cand = hi - (hi - lo) / 4
            fc = eval_at(f, cand)
            if fc == 0:
                return ("rat", cand)
            if (fc > 0) == sig_hi:
                hi, fhi = cand, fc
            else:
                lo, flo = cand, fc
    return ("int", lo, hi)


def refine_interval(int_coeffs: Sequence[int], lo: Fraction, hi: Fraction,
                    width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (sign change required) down to the given width."""
    flo = eval_at(int_coeffs, lo)
    fhi = eval_at(int_coeffs, hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise ValueError("interval endpoints must straddle the root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = eval_at(int_coeffs, mid)
        if fm == 0:
            eps = (hi - lo) / 8
            lo, hi = mid - eps, mid + eps
            flo = eval_at(int_coeffs, lo)
            fhi = eval_at(int_coeffs, hi)
            if flo == 0 or fhi == 0:
                raise ValueError("endpoint landed on a root during refinement")
            continue
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, hi


def count_roots_in(int_coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Number of real roots of a square-free integer polynomial in the open interval."""
    roots = isolate_real_roots(int_coeffs)
    count = 0
    for item in roots:
        if item[0] == "rat":
            if lo < item[1] < hi:
                count += 1
        else:
            _, rlo, rhi = item
            rlo, rhi = rlo, rhi
            # refine until decidable
            while not (rhi <= lo or rlo >= hi or (lo < rlo and rhi < hi)):
                rlo, rhi = refine_interval(int_coeffs, rlo, rhi, (rhi - rlo) / 4)
            if lo < rlo and rhi < hi:
                count += 1
    return count


# ---------------------------------------------------------------- resultants


def det_fraction(matrix: list) -> Fraction:
    """Determinant by fraction Gaussian elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(v) for v in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def sylvester_resultant(a: Sequence, b: Sequence, deg_a: int, deg_b: int) -> Fraction:
    """Resultant with *formal* degrees (leading zeros retained), for specialization."""
    if deg_a < 0 or deg_b < 0:
        raise ValueError("formal degrees must be nonnegative")
    a = list(a) + [Fraction(0)] * (deg_a + 1 - len(a))
    b = list(b) + [Fraction(0)] * (deg_b + 1 - len(b))
    n = deg_a + deg_b
    if n == 0:
        return Fraction(1)
    rows = []
    for i in range(deg_b):
        row = [Fraction(0)] * n
        for j, c in enumerate(reversed(a)):
            row[i + j] = Fraction(c)
        rows.append(row)
    for i in range(deg_a):
        row = [Fraction(0)] * n
        for j, c in enumerate(reversed(b)):
            row[i + j] = Fraction(c)
        rows.append(row)
    return det_fraction(rows)


def lagrange_interpolate(points: Sequence[tuple]) -> list:
    """Exact interpolating polynomial (ascending dense coefficients)."""
    result = [Fraction(0)]
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = _mul_dense(num, [-xj, Fraction(1)])
            denom *= xi - xj
        scale = Fraction(yi) / denom
        term = [c * scale for c in num]
        result = _add_dense(result, term)
    return strip(result)


def _mul_dense(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _add_dense(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def resultant_eliminate(a: Poly, b: Poly, elim: int) -> Poly:
    """Resultant of two bivariate polynomials with respect to variable ``elim``.

    Returns a univariate Poly in the remaining variable. Computed by sampling
    the kept variable and interpolating the Sylvester determinant, with formal
    degrees fixed by the unspecialized coefficient polynomials so that degree
    drops at sample points cannot corrupt the result.
    """
    if a.nvars != 2 or b.nvars != 2:
        raise PolyError("resultant_eliminate expects bivariate polynomials")
    keep = 1 - elim
    da, db = a.degree_in(elim), b.degree_in(elim)
    if da < 0 or db < 0:
        raise PolyError("resultant of the zero polynomial")
    ca = {e: p for e, p in a.coeff_map(elim).items()}
    cb = {e: p for e, p in b.coeff_map(elim).items()}
    deg_keep_a = max((p.degree_in(keep) for p in ca.values()), default=0)
    deg_keep_b = max((p.degree_in(keep) for p in cb.values()), default=0)
    bound = db * deg_keep_a + da * deg_keep_b + 1
    samples = []
    x = 0
    while len(samples) < bound:
        xv = Fraction(x)
        av = [eval_keep(ca.get(e), keep, xv) for e in range(da + 1)]
        bv = [eval_keep(cb.get(e), keep, xv) for e in range(db + 1)]
        samples.append((xv, sylvester_resultant(av, bv, da, db)))
        x = -x if x > 0 else -x + 1
    coeffs = lagrange_interpolate(samples)
    return Poly.from_dense(coeffs)


def eval_keep(p: Poly | None, keep: int, value: Fraction) -> Fraction:
    if p is None:
        return Fraction(0)
    point = [Fraction(0), Fraction(0)]
    point[keep] = value
    return p.eval(point)
