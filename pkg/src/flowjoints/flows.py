"""Exact polynomial flows e^{tX}, parametrized curves, and projection maps.

The flow map is the terminating Lie series: coordinate i of e^{tX}(x) is
sum_k t^k/k! (X^k x_i). Fields whose series fails to terminate within the
term cap are rejected as non-polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from math import factorial
from typing import Sequence

from .fields import VectorField, apply_field
from .poly import Poly, PolyError


class NonPolynomialFlowError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectionMap:
    """Polynomial map R^source_dim -> R^target_dim with target_dim < source_dim."""

    source_dim: int
    target_dim: int
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.target_dim:
            raise PolyError("component count must equal target_dim")
        if not self.target_dim < self.source_dim:
            raise PolyError("projection must strictly drop dimension")
        for c in comps:
            if c.nvars != self.source_dim:
                raise PolyError("projection components must live on the source space")
        object.__setattr__(self, "components", comps)

    def eval(self, point: Sequence) -> tuple:
        return tuple(c.eval(point) for c in self.components)


@dataclass(frozen=True)
class Curve:
    """Polynomial curve t -> param(t) with provenance.

    generator_coords, when present, are the coordinates of the generating
    vector field in a basis of the declared field space; they drive the joint
    span test without re-deriving the field from the parametrization.
    """

    id: str
    ambient_dim: int
    param: tuple
    base_point: tuple
    generator_coords: tuple | None = None
    family_tag: str = ""

    def __post_init__(self):
        params = tuple(self.param)
        base = tuple(Fraction(v) for v in self.base_point)
        coords = None if self.generator_coords is None else tuple(Fraction(v) for v in self.generator_coords)
        if len(params) != self.ambient_dim or len(base) != self.ambient_dim:
            raise PolyError("param and base_point must match ambient_dim")
        for p in params:
            if p.nvars != 1:
                raise PolyError("curve components must be univariate")
        if "|" in self.id:
            raise PolyError("curve id must not contain '|'")
        for p, b in zip(params, base):
            if p.eval([Fraction(0)]) != b:
                raise PolyError(f"curve {self.id}: param at t=0 differs from base_point")
        object.__setattr__(self, "param", params)
        object.__setattr__(self, "base_point", base)
        object.__setattr__(self, "generator_coords", coords)

    @property
    def is_singleton(self) -> bool:
        return all(p.is_constant for p in self.param)

    def degree(self) -> int:
        return max(p.total_degree() for p in self.param)


def flow_derivatives(field: VectorField, term_cap: int) -> list:
    """[X^k x_i] rows for k = 0.. until all vanish; raises if not terminating."""
    n = field.nvars
    rows = [[Poly.var(i, n) for i in range(n)]]
    for _ in range(term_cap + 1):
        prev = rows[-1]
        if all(p.is_zero for p in prev):
            return rows[:-1]
        rows.append([apply_field(field, p) for p in prev])
    if all(p.is_zero for p in rows[-1]):
        return rows[:-1]
    raise NonPolynomialFlowError(
        f"Lie series did not terminate within term_cap={term_cap}"
    )


def flow_map(field: VectorField, term_cap: int = 16) -> list:
    """Symbolic flow (x, t) -> e^{tX}(x) as polynomials in (x_1..x_n, t), t last."""
    n = field.nvars
    rows = flow_derivatives(field, term_cap)
    t = Poly.var(n, n + 1)
    out = []
    for i in range(n):
        acc = Poly.zero(n + 1)
        for k, row in enumerate(rows):
            term = row[i].extend(n + 1)
            if not term.is_zero:
                acc = acc + term * Fraction(1, factorial(k)) * t ** k
        out.append(acc)
    return out


def exp_flow(field: VectorField, base: Sequence, term_cap: int = 16,
             curve_id: str = "flow", family_tag: str = "adhoc",
             generator_coords: Sequence | None = None) -> Curve:
    """Integral curve of the field through the base point, exact in t.

    The construction is checked symbolically: dphi/dt must equal X(phi) as a
    polynomial identity in t.
    """
    n = field.nvars
    if len(base) != n:
        raise PolyError("base point dimension mismatch")
    base = [Fraction(v) for v in base]
    rows = flow_derivatives(field, term_cap)
    params = []
    for i in range(n):
        terms = {}
        for k, row in enumerate(rows):
            v = row[i].eval(base)
            if v != 0:
                terms[(k,)] = Fraction(v, factorial(k))
        params.append(Poly(1, terms))
    curve = Curve(
        id=curve_id,
        ambient_dim=n,
        param=tuple(params),
        base_point=tuple(base),
        generator_coords=None if generator_coords is None else tuple(generator_coords),
        family_tag=family_tag,
    )
    if not flow_identity_holds(curve, field):
        raise PolyError("flow construction failed the dphi/dt = X(phi) identity")
    return curve


def flow_identity_holds(curve: Curve, field: VectorField) -> bool:
    """Check dphi/dt == X(phi) exactly, as univariate polynomial identities."""
    if field.nvars != curve.ambient_dim:
        return False
    for i in range(curve.ambient_dim):
        lhs = curve.param[i].partial(0)
        rhs = field.components[i].compose(list(curve.param))
        if lhs != rhs:
            return False
    return True


def project_curve(curve: Curve, proj: ProjectionMap) -> Curve:
    """Componentwise polynomial composition; keeps id, marks the family tag."""
    if curve.ambient_dim != proj.source_dim:
        raise PolyError("projection source dimension mismatch")
    params = tuple(c.compose(list(curve.param)) for c in proj.components)
    return Curve(
        id=curve.id,
        ambient_dim=proj.target_dim,
        param=params,
        base_point=proj.eval(curve.base_point),
        generator_coords=None,
        family_tag=(curve.family_tag + "|proj") if curve.family_tag else "proj",
    )


def eval_curve(curve: Curve, t) -> tuple:
    t = Fraction(t)
    return tuple(p.eval([t]) for p in curve.param)


# ---------------------------------------------------------------- built-in fields


def heisenberg_fields() -> tuple:
    """(X, Y, T) on R^3 with coordinates (x, y, t)."""
    x = Poly.var(0, 3)
    y = Poly.var(1, 3)
    one = Poly.const(1, 3)
    zero = Poly.zero(3)
    X = VectorField(3, (one, zero, Fraction(-1, 2) * y))
    Y = VectorField(3, (zero, one, Fraction(1, 2) * x))
    T = VectorField(3, (zero, zero, one))
    return X, Y, T


def heisenberg_omega_field(m) -> VectorField:
    """X_omega for omega proportional to (m, 1): m*X + Y (rational slope m = cot theta)."""
    X, Y, _ = heisenberg_fields()
    return Fraction(m) * X + Y


def heisenberg_projections() -> tuple:
    """(pi_X, pi_Y): planar charts annihilated by X resp. Y."""
    x = Poly.var(0, 3)
    y = Poly.var(1, 3)
    t = Poly.var(2, 3)
    pi_x = ProjectionMap(3, 2, (y, t + Fraction(1, 2) * x * y))
    pi_y = ProjectionMap(3, 2, (x, t - Fraction(1, 2) * x * y))
    return pi_x, pi_y


def moment_curve_polys(d: int, nvars: int, t_index: int) -> list:
    """gamma(t) = (t, t^2, ..., t^d) as polynomials in a larger ring."""
    t = Poly.var(t_index, nvars)
    return [t ** (i + 1) for i in range(d)]


def moment_fields(d: int) -> tuple:
    """(X1, X2) on R^{d+1} = (x_1..x_d, t): X1 = d/dt, X2 = d/dt - gamma'(t).grad_x."""
    if d < 1:
        raise PolyError("moment dimension must be >= 1")
    n = d + 1
    t = Poly.var(d, n)
    zero = Poly.zero(n)
    one = Poly.const(1, n)
    x1 = VectorField(n, tuple([zero] * d + [one]))
    comps = [-(Fraction(i + 1) * t ** i) for i in range(d)] + [one]
    x2 = VectorField(n, tuple(comps))
    return x1, x2


def moment_projections(d: int) -> tuple:
    """(pi_1, pi_2) with pi_1(x,t) = x and pi_2(x,t) = x + gamma(t)."""
    n = d + 1
    xs = [Poly.var(i, n) for i in range(d)]
    gamma = moment_curve_polys(d, n, d)
    pi1 = ProjectionMap(n, d, tuple(xs))
    pi2 = ProjectionMap(n, d, tuple(x + g for x, g in zip(xs, gamma)))
    return pi1, pi2


def xray_fields(n: int) -> tuple:
    """(X1, X2) on R^n = (x_1..x_{n-2}, s, t): X1 = d/ds, X2 = d/dt - s*gamma'(t).grad_x."""
    if n < 3:
        raise PolyError("x-ray setting needs n >= 3")
    d = n - 2
    s = Poly.var(d, n)
    t = Poly.var(d + 1, n)
    zero = Poly.zero(n)
    one = Poly.const(1, n)
    x1 = VectorField(n, tuple([zero] * d + [one, zero]))
    comps = [-(s * Fraction(i + 1) * t ** i) for i in range(d)] + [zero, one]
    x2 = VectorField(n, tuple(comps))
    return x1, x2


def xray_projections(n: int) -> tuple:
    """(pi_1, pi_2) with pi_1(x,s,t) = (x,t) and pi_2(x,s,t) = (s, x + s*gamma(t))."""
    d = n - 2
    xs = [Poly.var(i, n) for i in range(d)]
    s = Poly.var(d, n)
    t = Poly.var(d + 1, n)
    gamma = moment_curve_polys(d, n, d + 1)
    pi1 = ProjectionMap(n, n - 1, tuple(xs + [t]))
    pi2 = ProjectionMap(n, n - 1, tuple([s] + [x + s * g for x, g in zip(xs, gamma)]))
    return pi1, pi2


# ---------------------------------------------------------------- curve records


def _fmt_frac(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _parse_frac(token: str) -> Fraction:
    num, sep, den = token.partition("/")
    if not sep:
        raise ValueError(f"rational token {token!r} must be 'p/q'")
    return Fraction(int(num), int(den))


def curve_to_record(curve: Curve) -> str:
    base = ",".join(_fmt_frac(v) for v in curve.base_point)
    coords = "-" if curve.generator_coords is None else ",".join(
        _fmt_frac(v) for v in curve.generator_coords
    )
    comps = []
    for p in curve.param:
        dense = p.to_dense() or [Fraction(0)]
        comps.append(",".join(_fmt_frac(c) for c in dense))
    return "|".join(
        [curve.id, curve.family_tag, str(curve.ambient_dim), base, coords, ":".join(comps)]
    )


def curve_from_record(line: str) -> Curve:
    parts = line.rstrip("\n").split("|")
    if len(parts) != 6:
        raise ValueError(f"expected 6 '|'-separated fields, got {len(parts)}")
    cid, tag, dim_s, base_s, coords_s, param_s = parts
    dim = int(dim_s)
    base = tuple(_parse_frac(tok) for tok in base_s.split(",")) if base_s else ()
    coords = None if coords_s == "-" else tuple(_parse_frac(tok) for tok in coords_s.split(","))
    params = []
    for comp in param_s.split(":"):
        dense = [_parse_frac(tok) for tok in comp.split(",")]
        params.append(Poly.from_dense(dense))
    return Curve(
        id=cid,
        ambient_dim=dim,
        param=tuple(params),
        base_point=base,
        generator_coords=coords,
        family_tag=tag,
    )
