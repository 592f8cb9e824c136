"""Exact curve-curve intersection, tangency, incidence sets, joints, weighted
multijoint sums, and bound-report evaluation.

Intersections are found by eliminating one parameter with resultants, isolating
real roots of the eliminant by sign-variation bisection, and back-substituting
exactly (rational roots) or through a degree-one pinning component (algebraic
roots). Every reported record is certified: the parameter values satisfy all
coordinate equations exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from decimal import Decimal, getcontext, localcontext
from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import exactla, univar
from .algnum import AlgebraicNumber, AlgebraicPoint, _identify_rational
from .flows import Curve, eval_curve
from .poly import Poly, PolyError
from .univar import (
    gcd_poly,
    resultant_eliminate,
    squarefree_part,
    strip,
    to_int_primitive,
)


class InfiniteIntersectionError(ValueError):
    """The two curves share a common component (their intersection is not finite)."""


class UnsupportedIntersectionError(NotImplementedError):
    """Irrational intersection parameters without a degree-one pinning component."""


@dataclass(frozen=True)
class IncidenceRecord:
    id1: str
    id2: str
    point: AlgebraicPoint
    params: tuple          # (s on curve 1, t on curve 2) as AlgebraicNumbers
    tangential: bool | None = None   # set for planar graph-curve pairs, else None


# ---------------------------------------------------------------- intersection core


def _gcd_many(polys: list) -> list:
    g: list = []
    for p in polys:
        g = gcd_poly(g, p)
        if univar.degree(g) == 0:
            return g
    return g


def _alg_roots(dense) -> list:
    return AlgebraicNumber.roots_of(dense)


def _alg_is_root(dense, alpha: AlgebraicNumber) -> bool:
    dense = strip(dense)
    if not dense:
        return True
    if alpha.is_rational:
        return univar.eval_at(dense, alpha.rat) == 0
    g = gcd_poly(dense, [Fraction(c) for c in alpha.poly])
    if univar.degree(g) < 1:
        return False
    return any(alpha == r for r in _alg_roots(g))


def _interval_eval(dense, lo: Fraction, hi: Fraction) -> tuple:
    """Interval-arithmetic enclosure of a polynomial over [lo, hi] (Horner)."""
    alo = ahi = Fraction(0)
    for c in reversed(strip(dense)):
        products = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(products) + c, max(products) + c
    return alo, ahi


def _alg_image(alpha: AlgebraicNumber, q: Poly) -> AlgebraicNumber:
    """The algebraic number q(alpha) for a univariate rational polynomial q."""
    if alpha.is_rational:
        return AlgebraicNumber(rat=q.eval([alpha.rat]))
    dense = q.to_dense() or [Fraction(0)]
    if univar.degree(dense) < 1:
        return AlgebraicNumber(rat=dense[0] if dense else Fraction(0))
    # defining polynomial: res_x(F(x), y - q(x))
    F = Poly.from_dense([Fraction(c) for c in alpha.poly]).extend(2)
    y = Poly.var(1, 2)
    qq = q.extend(2)
    R = resultant_eliminate(F, y - qq, 0)
    R_sf = to_int_primitive(squarefree_part(R.to_dense()))
    if univar.degree(R_sf) == 1:
        return AlgebraicNumber(rat=Fraction(-R_sf[0], R_sf[1]))
    while True:
        ylo, yhi = _interval_eval(dense, alpha.lo, alpha.hi)
        pad = (yhi - ylo) or Fraction(1, 2)
        ylo, yhi = ylo - pad / 2, yhi + pad / 2
        if univar.eval_at(R_sf, ylo) != 0 and univar.eval_at(R_sf, yhi) != 0:
            if univar.count_roots_in(R_sf, ylo, yhi) == 1:
                value = AlgebraicNumber(poly=R_sf, interval=(ylo, yhi))
                value.refine(Fraction(1, 64))
                rat = _identify_rational(R_sf, value.lo, value.hi)
                return value if rat is None else AlgebraicNumber(rat=rat)
        alpha.refine((alpha.hi - alpha.lo) / 4)


def _point_at(curve: Curve, s: AlgebraicNumber) -> AlgebraicPoint:
    return AlgebraicPoint([_alg_image(s, p) for p in curve.param])


def _solve_on_curve(curve: Curve, target: Sequence[Fraction]) -> list:
    """Parameter values where the curve passes through an exact rational point."""
    constraints = []
    for p, v in zip(curve.param, target):
        d = p - Poly.const(v, 1)
        if d.is_zero:
            continue
        if d.is_constant:
            return []
        constraints.append(d.to_dense())
    if not constraints:
        raise InfiniteIntersectionError("curve is the single target point")
    g = _gcd_many(constraints)
    if univar.degree(g) < 1:
        return []
    return _alg_roots(g)


def _intersect_params(c1: Curve, c2: Curve, _swapped: bool = False) -> list:
    """All (s, t, point) with c1(s) == c2(t); exact."""
    if c1.is_singleton and c2.is_singleton:
        if c1.base_point == c2.base_point:
            zero = AlgebraicNumber(rat=Fraction(0))
            return [(zero, zero, AlgebraicPoint(list(c1.base_point)))]
        return []
    if c2.is_singleton:
        pt = AlgebraicPoint(list(c2.base_point))
        zero = AlgebraicNumber(rat=Fraction(0))
        return [(s, zero, pt) for s in _solve_on_curve(c1, c2.base_point)]
    if c1.is_singleton:
        pt = AlgebraicPoint(list(c1.base_point))
        zero = AlgebraicNumber(rat=Fraction(0))
        return [(zero, t, pt) for t in _solve_on_curve(c2, c1.base_point)]

    # bivariate differences D_i(s, t) = c1_i(s) - c2_i(t), s = var 0, t = var 1
    diffs = []
    for p, q in zip(c1.param, c2.param):
        diffs.append(p.extend(2) - q.extend(2, shift=1))
    s_only, t_only, mixed = [], [], []
    for d in diffs:
        if d.is_zero:
            continue
        dep_s, dep_t = d.depends_on(0), d.depends_on(1)
        if not dep_s and not dep_t:
            return []           # contradictory constant difference
        if dep_s and dep_t:
            mixed.append(d)
        elif dep_s:
            s_only.append(d)
        else:
            t_only.append(d)
    if not (s_only or t_only or mixed):
        raise InfiniteIntersectionError("identical parametrizations")

    # eliminate t: direct s-constraints plus resultants of t-bearing pairs
    s_polys = [_univar_dense(d, 0) for d in s_only]
    t_bearing = mixed + t_only
    for a, b in itertools.combinations(t_bearing, 2):
        if a in t_only and b in t_only:
            continue
        r = resultant_eliminate(a, b, 1)
        s_polys.append(r.to_dense() or [Fraction(0)])
    if mixed and not s_polys:
        raise InfiniteIntersectionError("curves share a common component")
    if not mixed:
        # decoupled systems: s and t constrained independently
        g_s = _gcd_many(s_polys)
        g_t = _gcd_many([_univar_dense(d, 1) for d in t_only])
        if univar.degree(g_s) < 1 or univar.degree(g_t) < 1:
            return []
        out = []
        for s in _alg_roots(g_s):
            pt = _point_at(c1, s)
            for t in _alg_roots(g_t):
                out.append((s, t, pt))
        return out

    g = _gcd_many([p for p in s_polys if strip(p)])
    if not strip(g) or all(not strip(p) for p in s_polys):
        raise InfiniteIntersectionError("curves share a common component")
    if univar.degree(g) < 1:
        return []

    roots = _alg_roots(g)
    if any(not r.is_rational for r in roots) and _pin_index(c2) is None:
        # algebraic parameters need a degree-one component to pin; try the
        # other curve before giving up
        if not _swapped and _pin_index(c1) is not None:
            flipped = _intersect_params(c2, c1, _swapped=True)
            return [(s, t, pt) for (t, s, pt) in flipped]
        raise UnsupportedIntersectionError(
            "irrational intersection parameter and no degree-one component to pin"
        )
    results = []
    for s in roots:
        if s.is_rational:
            results.extend(_back_substitute_rational(c1, c2, t_bearing, s))
        else:
            results.extend(_back_substitute_algebraic(c1, c2, diffs, s))
    return results


def _univar_dense(d: Poly, var: int) -> list:
    coeffs = d.coeff_map(var)
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, p in coeffs.items():
        out[e] = p.constant_value()
    return out


def _back_substitute_rational(c1, c2, t_bearing, s: AlgebraicNumber) -> list:
    sv = s.rat
    t_polys = []
    for d in t_bearing:
        sub = d.subs({0: Poly.const(sv, 2)})
        t_polys.append(_univar_dense(sub, 1) if not sub.is_zero else [])
    t_polys = [p for p in t_polys if strip(p)]
    if not t_polys:
        raise InfiniteIntersectionError("one-parameter family of common points")
    h = _gcd_many(t_polys)
    if univar.degree(h) < 1:
        return []
    pt = AlgebraicPoint([AlgebraicNumber(rat=p.eval([sv])) for p in c1.param])
    return [(s, t, pt) for t in _alg_roots(h)]


def _pin_index(curve: Curve) -> int | None:
    """Index of a component that is degree one in the curve parameter."""
    for i, p in enumerate(curve.param):
        if p.degree_in(0) == 1:
            return i
    return None


def _back_substitute_algebraic(c1, c2, diffs, s: AlgebraicNumber) -> list:
    # a degree-one component q(t) = a t + b of c2 pins t = (P_i(s) - b)/a as a
    # polynomial in s; every other constraint then reduces to a univariate check
    idx = _pin_index(c2)
    dense_q = c2.param[idx].to_dense()
    b, a = dense_q[0], dense_q[1]
    psi = (c1.param[idx] - Poly.const(b, 1)) * Fraction(1, a)
    for d in diffs:
        if d.is_zero:
            continue
        u = d.subs({1: psi.extend(2)})       # substitute t = psi(s)
        if not _alg_is_root(_collapse_to_s(u), s):
            return []
    t = _alg_image(s, psi)
    pt = _point_at(c1, s)
    return [(s, t, pt)]


def _collapse_to_s(u: Poly) -> list:
    if u.is_zero:
        return []
    if u.depends_on(1):
        raise AssertionError("substitution failed to eliminate t")
    return _univar_dense(u, 0)


def intersect_curves(c1: Curve, c2: Curve) -> list:
    """All real common points of two curves, as certified incidence records."""
    if c1.ambient_dim != c2.ambient_dim:
        raise PolyError("curves live in different ambient dimensions")
    raw = _intersect_params(c1, c2)
    # one record per common point: a pair meeting at k points contributes k
    records = []
    for s, t, pt in raw:
        if any(pt == r.point for r in records):
            continue
        records.append(IncidenceRecord(
            id1=c1.id, id2=c2.id, point=pt, params=(s, t),
            tangential=_tangential_at(c1, c2, s),
        ))
    return records


def _is_graph(curve: Curve) -> bool:
    return curve.ambient_dim == 2 and curve.param[0] == Poly.var(0, 1)


def _tangential_at(c1: Curve, c2: Curve, s: AlgebraicNumber) -> bool | None:
    if not (_is_graph(c1) and _is_graph(c2)):
        return None
    d = (c1.param[1] - c2.param[1]).to_dense()
    g = gcd_poly(d, univar.derivative(d))
    if univar.degree(g) < 1:
        return False
    return _alg_is_root(g, s)


# ---------------------------------------------------------------- incidence sets


def incidence_set(l1: Sequence[Curve], l2: Sequence[Curve]) -> tuple:
    """Union of pairwise intersections, deduplicated per unordered pair.

    Returns (records, count) with a deterministic record order; the count is
    the number of (pair, common point) incidences.
    """
    for curves in (l1, l2):
        ids = [c.id for c in curves]
        if len(set(ids)) != len(ids):
            raise PolyError("curve ids must be unique within a family")
    seen = set()
    records = []
    for a in l1:
        for b in l2:
            if a.id == b.id:
                continue
            key = (a.id, b.id) if a.id <= b.id else (b.id, a.id)
            if key in seen:
                continue
            seen.add(key)
            records.extend(intersect_curves(a, b))
    records.sort(key=lambda r: (r.id1, r.id2, r.params[0].sort_key()))
    return records, len(records)


def tangent_pair(c1: Curve, c2: Curve) -> bool:
    """Whether two planar graph-curves intersect tangentially.

    Implemented as the general double-root test: the difference of the graph
    polynomials has a real multiple root, i.e. gcd(p - q, (p - q)') has a real
    root.
    """
    if not (_is_graph(c1) and _is_graph(c2)):
        raise PolyError("tangent_pair expects planar graph-curves u -> (u, p(u))")
    d = (c1.param[1] - c2.param[1]).to_dense()
    if not strip(d):
        raise InfiniteIntersectionError("identical curves")
    g = gcd_poly(d, univar.derivative(d))
    if univar.degree(g) < 1:
        return False
    sf = to_int_primitive(squarefree_part(g))
    return bool(univar.isolate_real_roots(sf))


def tangency_criterion(da: int, db: int, dc: int) -> bool:
    """Closed-form tangency test for parabola differences (a, b, c).

    4*da*dc == db**2 detects the double root except in the degenerate family
    db == dc == 0, da != 0 whose members share no point at all.
    """
    if da == 0 and db == 0 and dc == 0:
        raise InfiniteIntersectionError("identical curves")
    if db == 0 and dc == 0:
        return False
    return 4 * da * dc == db * db


def count_tangent_pairs(n: int) -> int:
    """Unordered tangent pairs in the parabola grid, by the difference method.

    For each realizable difference triple satisfying the tangency criterion,
    adds the number of ordered grid pairs realizing it and halves at the end;
    never enumerates curve pairs.
    """
    if n < 1:
        raise ValueError("grid size must be >= 1")
    ca, cb, cc = n ** 3, n ** 2, n
    total = 0
    for da in range(-ca, ca + 1):
        for dc in range(-cc, cc + 1):
            prod = da * dc
            if prod < 0:
                continue
            r = isqrt(4 * prod)
            if r * r != 4 * prod or r > cb:
                continue
            if r == 0 and dc == 0:
                continue    # da != 0 has no common point; da == 0 is the identical pair
            count = (ca + 1 - abs(da)) * (cb + 1 - r) * (cc + 1 - abs(dc))
            total += 2 * count if r > 0 else count
    assert total % 2 == 0
    return total // 2


# ---------------------------------------------------------------- joints


def _dedup_points(items) -> list:
    """Group (point, payload) pairs by exact point equality."""
    buckets: dict = {}
    order = []
    for pt, payload in items:
        h = hash(pt)
        found = None
        for entry in buckets.get(h, []):
            if entry[0] == pt:
                found = entry
                break
        if found is None:
            found = (pt, [])
            buckets.setdefault(h, []).append(found)
            order.append(found)
        found[1].append(payload)
    return order


def detect_joints(curves: Sequence[Curve], v_dim: int) -> list:
    """Joints of a curve family: intersection points where the generating
    fields' coordinates span the full declared space.

    Returns [(point, multiplicity)] sorted by point; the multiplicity is the
    number of ordered v_dim-tuples of distinct curves through the point whose
    generator coordinates span.
    """
    for c in curves:
        if c.generator_coords is None or len(c.generator_coords) != v_dim:
            raise PolyError(f"curve {c.id} lacks generator_coords of dimension {v_dim}")
    by_id = {c.id: c for c in curves}
    if len(by_id) != len(curves):
        raise PolyError("curve ids must be unique")
    hits = []
    curve_list = sorted(curves, key=lambda c: c.id)
    for a, b in itertools.combinations(curve_list, 2):
        for rec in intersect_curves(a, b):
            hits.append((rec.point, a.id))
            hits.append((rec.point, b.id))
    joints = []
    for pt, ids in _dedup_points(hits):
        unique_ids = sorted(set(ids))
        coords = [by_id[i].generator_coords for i in unique_ids]
        if exactla.rank(coords) < v_dim:
            continue
        mult = 0
        for combo in itertools.combinations(range(len(coords)), v_dim):
            if exactla.rank([coords[i] for i in combo]) == v_dim:
                mult += 1
        from math import factorial
        joints.append((pt, mult * factorial(v_dim)))
    joints.sort(key=lambda item: item[0].sort_key())
    return joints


def _dec_power(value: int, num: int, den: int, digits: int) -> Decimal:
    """value ** (num/den) to the stated precision; exact for perfect powers."""
    if value < 0:
        raise ValueError("negative base")
    with localcontext() as ctx:
        ctx.prec = digits + 10
        if value == 0:
            return Decimal(0)
        root = round(value ** (1.0 / den)) if den > 1 else value
        for cand in {root - 1, root, root + 1}:
            if cand >= 0 and cand ** den == value:
                return Decimal(cand) ** num
        return (Decimal(value).ln() * num / den).exp()


def multijoint_sum(families: Sequence[Sequence[Curve]], n: int,
                   digits: int = 50) -> tuple:
    """Weighted multijoint count sum_p m(p)^{1/(n-1)}.

    m(p) is the number of ordered n-tuples of concurrent curves, one drawn from
    each family in order, whose generator coordinates span. Returns
    (Decimal sum at the stated precision, [(point, m)] details).
    """
    if n < 2:
        raise ValueError("need n >= 2 families")
    if len(families) != n:
        raise ValueError(f"expected {n} families, got {len(families)}")
    if any(not fam for fam in families):
        return Decimal(0), []
    v_dim = None
    for fam in families:
        for c in fam:
            if c.generator_coords is None:
                raise PolyError(f"curve {c.id} lacks generator_coords")
            if v_dim is None:
                v_dim = len(c.generator_coords)
            elif len(c.generator_coords) != v_dim:
                raise PolyError("generator_coords dimensions disagree")
    hits = []
    for i, j in itertools.combinations(range(n), 2):
        for a in families[i]:
            for b in families[j]:
                for rec in intersect_curves(a, b):
                    hits.append((rec.point, (i, a)))
                    hits.append((rec.point, (j, b)))
    details = []
    total = Decimal(0)
    for pt, payloads in _dedup_points(hits):
        per_family: list = [[] for _ in range(n)]
        seen_ids = [set() for _ in range(n)]
        for fam_idx, curve in payloads:
            if curve.id not in seen_ids[fam_idx]:
                seen_ids[fam_idx].add(curve.id)
                per_family[fam_idx].append(curve)
        if any(not fam for fam in per_family):
            continue
        m = 0
        for tup in itertools.product(*per_family):
            coords = [c.generator_coords for c in tup]
            if exactla.rank(coords) == v_dim:
                m += 1
        if m > 0:
            details.append((pt, m))
            total += _dec_power(m, 1, n - 1, digits)
    details.sort(key=lambda item: item[0].sort_key())
    with localcontext() as ctx:
        ctx.prec = digits
        total = +total
    return total, details


# ---------------------------------------------------------------- bound reports


@dataclass
class BoundReport:
    n: int
    counts: dict
    rhs: dict = dc_field(default_factory=dict)
    ratios: dict = dc_field(default_factory=dict)
    flags: list = dc_field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "counts": {k: v for k, v in sorted(self.counts.items())},
            "rhs": {k: str(v) for k, v in sorted(self.rhs.items())},
            "ratios": {k: str(v) for k, v in sorted(self.ratios.items())},
            "flags": list(self.flags),
        }

    def table(self) -> str:
        lines = [f"bounds report (n={self.n})"]
        for k, v in sorted(self.counts.items()):
            lines.append(f"  {k:<24} {v}")
        for k in sorted(self.rhs):
            lines.append(f"  rhs:{k:<20} {self.rhs[k]}")
            if k in self.ratios:
                lines.append(f"  lhs/rhs:{k:<16} {self.ratios[k]}")
        for f in self.flags:
            lines.append(f"  ! {f}")
        return "\n".join(lines)


def bound_report(counts: dict, n: int, digits: int = 50) -> BoundReport:
    """Evaluate the theorem right-hand sides available from the given counts.

    Recognized count keys: n_l (single-family curves), n_j (joints),
    n_l1/n_l2 (two families), n_i (incidences). Ratios are LHS/RHS decimals at
    the stated precision.
    """
    rep = BoundReport(n=n, counts=dict(counts))

    def ratio(lhs, rhs: Decimal) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits
            if rhs == 0:
                return Decimal(0)
            return +(Decimal(lhs) / rhs)

    if "n_l" in counts:
        rhs = _dec_power(counts["n_l"], n, n - 1, digits)
        rep.rhs["joints"] = rhs
        if "n_j" in counts:
            rep.ratios["joints"] = ratio(counts["n_j"], rhs)
    if "n_l1" in counts and "n_l2" in counts:
        l1, l2 = counts["n_l1"], counts["n_l2"]
        if n < 3:
            rep.flags.append("multijoint bound needs n >= 3 (exponent (n-1)/(2n-3))")
        else:
            with localcontext() as ctx:
                ctx.prec = digits + 10
                main = _dec_power(l1 * l2, n - 1, 2 * n - 3, digits)
                rhs = Decimal(l1) + Decimal(l2) + main
            rep.rhs["multijoint"] = rhs
            if "n_i" in counts:
                rep.ratios["multijoint"] = ratio(counts["n_i"], rhs)
        with localcontext() as ctx:
            ctx.prec = digits + 10
            a = Decimal(l1) + _dec_power(l1, 1, n - 1, digits) * l2
            b = Decimal(l2) + _dec_power(l2, 1, n - 1, digits) * l1
            rhs = min(a, b)
        rep.rhs["simple_estimate"] = rhs
        if "n_i" in counts:
            rep.ratios["simple_estimate"] = ratio(counts["n_i"], rhs)
    if "family_sizes" in counts:
        sizes = counts["family_sizes"]
        with localcontext() as ctx:
            ctx.prec = digits + 10
            rhs = Decimal(1)
            for sz in sizes:
                rhs *= _dec_power(sz, 1, n - 1, digits)
        rep.rhs["loomis_whitney"] = rhs
        if "mj_sum" in counts:
            rep.ratios["loomis_whitney"] = ratio(counts["mj_sum"], rhs)
    return rep


# ---------------------------------------------------------------- output


def records_to_csv(records: Sequence[IncidenceRecord]) -> str:
    lines = ["id1,id2,point_repr,tangential"]
    for r in records:
        tang = "" if r.tangential is None else str(r.tangential).lower()
        lines.append(f"{r.id1},{r.id2},\"{r.point.repr_exact()}\",{tang}")
    return "\n".join(lines) + "\n"
