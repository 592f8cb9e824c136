"""Curve family generators and the square-sieve counting utilities.

Every generator is deterministic for a fixed (spec, seed): grid kinds iterate
in lexicographic order, random kinds draw from a seeded generator.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .flows import (
    Curve,
    curve_from_record,
    curve_to_record,
    exp_flow,
    heisenberg_fields,
    heisenberg_omega_field,
    moment_curve_polys,
)
from .poly import Poly, PolyError

KINDS = (
    "heisenberg_x",
    "heisenberg_y",
    "heisenberg_omega",
    "parabola_grid",
    "moment_translates",
    "xray",
    "axis_parallel",
    "point_grid",
    "custom_file",
)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    parameters: dict = dc_field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FamilyError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")


def _frac(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


def _base_tuples(raw) -> list:
    return [tuple(_frac(v) for v in row) for row in raw]


def generate(spec: FamilySpec) -> list:
    """Generate the curve family described by the spec (deterministic)."""
    gen = _GENERATORS.get(spec.kind)
    if gen is None:
        raise FamilyError(f"no generator for kind {spec.kind!r}")
    return gen(spec)


def _heisenberg_bases(spec: FamilySpec, chart_key: str) -> list:
    p = spec.parameters
    given = sum(k in p for k in ("bases", chart_key, "chart_grid", "random_count"))
    if given != 1:
        raise FamilyError(
            f"{spec.kind} needs exactly one of bases/{chart_key}/chart_grid/random_count"
        )
    if "bases" in p:
        return _base_tuples(p["bases"])
    if chart_key in p:
        pts = _base_tuples(p[chart_key])
        if spec.kind == "heisenberg_x":
            # X-curve through (0, p, q) projects to the chart point (p, q)
            return [(Fraction(0), a, b) for a, b in pts]
        # Y-curve through (a, 0, b) projects to the chart line v = a u + b
        return [(a, Fraction(0), b) for a, b in pts]
    if "chart_grid" in p:
        ka, kb = (int(v) for v in p["chart_grid"])
        if ka < 1 or kb < 1:
            raise FamilyError("chart_grid entries must be >= 1")
        if spec.kind == "heisenberg_x":
            return [(Fraction(0), Fraction(a), Fraction(b))
                    for a in range(ka) for b in range(kb)]
        return [(Fraction(a), Fraction(0), Fraction(b))
                for a in range(ka) for b in range(kb)]
    count = int(p["random_count"])
    bound = int(p.get("bound", 8))
    rng = random.Random(spec.seed)
    return [tuple(Fraction(rng.randint(-bound, bound)) for _ in range(3))
            for _ in range(count)]


def _gen_heisenberg_x(spec: FamilySpec) -> list:
    X, _, _ = heisenberg_fields()
    out = []
    for i, base in enumerate(_heisenberg_bases(spec, "chart_points")):
        out.append(exp_flow(X, base, curve_id=f"hx{i}", family_tag="heisenberg_x",
                            generator_coords=(1, 0, 0)))
    return out


def _gen_heisenberg_y(spec: FamilySpec) -> list:
    _, Y, _ = heisenberg_fields()
    out = []
    for i, base in enumerate(_heisenberg_bases(spec, "chart_lines")):
        out.append(exp_flow(Y, base, curve_id=f"hy{i}", family_tag="heisenberg_y",
                            generator_coords=(0, 1, 0)))
    return out


def _gen_heisenberg_omega(spec: FamilySpec) -> list:
    p = spec.parameters
    if "slopes" not in p or "bases" not in p:
        raise FamilyError("heisenberg_omega needs slopes and bases")
    slopes = [_frac(v) for v in p["slopes"]]
    bases = _base_tuples(p["bases"])
    out = []
    for i, m in enumerate(slopes):
        fld = heisenberg_omega_field(m)
        for j, base in enumerate(bases):
            out.append(exp_flow(fld, base, curve_id=f"hw{i}_{j}",
                                family_tag="heisenberg_omega",
                                generator_coords=(m, 1, 0)))
    return out


def _gen_parabola_grid(spec: FamilySpec) -> list:
    n = int(spec.parameters.get("N", 0))
    if n < 1:
        raise FamilyError("parabola_grid needs N >= 1")
    u = Poly.var(0, 1)
    out = []
    for a in range(n ** 3 + 1):
        for b in range(n ** 2 + 1):
            for c in range(n + 1):
                graph = Poly.const(a, 1) + b * u + c * u ** 2
                out.append(Curve(
                    id=f"p{a}_{b}_{c}", ambient_dim=2, param=(u, graph),
                    base_point=(Fraction(0), Fraction(a)),
                    family_tag="parabola_grid",
                ))
    return out


def _gen_point_grid(spec: FamilySpec) -> list:
    n = int(spec.parameters.get("N", 0))
    if n < 1:
        raise FamilyError("point_grid needs N >= 1")
    out = []
    for x in range(n + 1):
        for y in range(3 * n ** 3 + 1):
            out.append(Curve(
                id=f"q{x}_{y}", ambient_dim=2,
                param=(Poly.const(x, 1), Poly.const(y, 1)),
                base_point=(Fraction(x), Fraction(y)),
                family_tag="point_grid",
            ))
    return out


def _gen_moment_translates(spec: FamilySpec) -> list:
    p = spec.parameters
    d = int(p.get("d", 0))
    if d < 1:
        raise FamilyError("moment_translates needs d >= 1")
    translates = _base_tuples(p.get("translates", []))
    if not translates:
        raise FamilyError("moment_translates needs a translate list")
    for row in translates:
        if len(row) != d:
            raise FamilyError(f"translate {row} has dimension {len(row)}, expected {d}")
    a_raw = p.get("a", 1)
    t0 = _frac(p.get("t0", 0))
    u = Poly.var(0, 1)
    gamma = [(t0 + u) ** (i + 1) for i in range(d)]
    out = []
    for j, y0 in enumerate(translates):
        if a_raw == "inf":
            # linear member: y0 - gamma'(t0) u
            comps = tuple(
                Poly.const(y0[i], 1) - Fraction(i + 1) * t0 ** i * u
                for i in range(d)
            )
        else:
            a = _frac(a_raw)
            comps = tuple(Poly.const(y0[i], 1) - a * gamma[i] for i in range(d))
        out.append(Curve(
            id=f"m{j}", ambient_dim=d, param=comps,
            base_point=tuple(c.eval([Fraction(0)]) for c in comps),
            family_tag="moment_translates",
        ))
    return out


def _gen_xray(spec: FamilySpec) -> list:
    from .flows import xray_fields

    p = spec.parameters
    n = int(p.get("n", 0))
    if n < 3:
        raise FamilyError("xray needs n >= 3")
    which = int(p.get("field", 1))
    if which not in (1, 2):
        raise FamilyError("xray field must be 1 or 2")
    bases = _base_tuples(p.get("bases", []))
    if not bases:
        raise FamilyError("xray needs a base list")
    fld = xray_fields(n)[which - 1]
    coords = (1, 0) if which == 1 else (0, 1)
    out = []
    for i, base in enumerate(bases):
        if len(base) != n:
            raise FamilyError(f"base {base} has dimension {len(base)}, expected {n}")
        out.append(exp_flow(fld, base, curve_id=f"xr{which}_{i}",
                            family_tag="xray", generator_coords=coords))
    return out


def _gen_axis_parallel(spec: FamilySpec) -> list:
    p = spec.parameters
    n = int(p.get("n", 0))
    k = int(p.get("k", 0))
    if n < 2 or k < 1:
        raise FamilyError("axis_parallel needs n >= 2 and k >= 1")
    u = Poly.var(0, 1)
    out = []
    for axis in range(n):
        rest = [i for i in range(n) if i != axis]
        for combo in _lex_product(k, n - 1):
            base = [Fraction(0)] * n
            for idx, v in zip(rest, combo):
                base[idx] = Fraction(v)
            params = []
            for i in range(n):
                params.append(u if i == axis else Poly.const(base[i], 1))
            coords = tuple(Fraction(1 if i == axis else 0) for i in range(n))
            tag = "_".join(str(v) for v in combo)
            out.append(Curve(
                id=f"ax{axis}_{tag}", ambient_dim=n, param=tuple(params),
                base_point=tuple(base), generator_coords=coords,
                family_tag="axis_parallel",
            ))
    return out


def _lex_product(k: int, length: int) -> list:
    out = [[]]
    for _ in range(length):
        out = [prefix + [v] for prefix in out for v in range(k)]
    return [tuple(row) for row in out]


def _gen_custom_file(spec: FamilySpec) -> list:
    path = spec.parameters.get("path")
    if not path:
        raise FamilyError("custom_file needs a path")
    return load_family(path)


_GENERATORS = {
    "heisenberg_x": _gen_heisenberg_x,
    "heisenberg_y": _gen_heisenberg_y,
    "heisenberg_omega": _gen_heisenberg_omega,
    "parabola_grid": _gen_parabola_grid,
    "point_grid": _gen_point_grid,
    "moment_translates": _gen_moment_translates,
    "xray": _gen_xray,
    "axis_parallel": _gen_axis_parallel,
    "custom_file": _gen_custom_file,
}


# ---------------------------------------------------------------- square sieve


def squarefree_part(c: int) -> int:
    """psi(c): the smallest positive integer with c / psi(c) a perfect square."""
    if c < 1:
        raise ValueError("squarefree_part needs a positive integer")
    psi = 1
    d = 2
    while d * d <= c:
        if c % d == 0:
            e = 0
            while c % d == 0:
                c //= d
                e += 1
            if e % 2:
                psi *= d
        d += 1
    return psi * c


def count_square_triples(n: int) -> tuple:
    """Solutions of 4ac = b^2 in [0,n^3] x [0,n^2] x [0,n].

    Iterates (a, c) pairs and tests 4ac for squareness with the exact integer
    square root; O(n^4) integer operations.
    """
    if n < 1:
        raise ValueError("grid size must be >= 1")
    ca, cb, cc = n ** 3, n ** 2, n
    triples = []
    for a in range(ca + 1):
        for c in range(cc + 1):
            s = 4 * a * c
            r = isqrt(s)
            if r * r == s and r <= cb:
                triples.append((a, r, c))
    triples.sort()
    return len(triples), triples


# ---------------------------------------------------------------- curve files


def save_family(curves: Sequence[Curve], path: str) -> None:
    """Write curves in the line-delimited record format (atomic)."""
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for c in curves:
            fh.write(curve_to_record(c) + "\n")
    os.replace(tmp, path)


def load_family(path: str) -> list:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(curve_from_record(line))
            except (ValueError, PolyError) as exc:
                raise FamilyError(f"{path}:{lineno}: {exc}") from exc
    return out


# ---------------------------------------------------------------- spec parsing


def _decode_value(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text and "[" not in text:
        try:
            frac = Fraction(text)
            return str(frac)   # keep fractions as strings; generators coerce
        except (ValueError, ZeroDivisionError):
            pass
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_family_inline(text: str) -> FamilySpec:
    """Parse the compact flag syntax ``kind:key=value;key=value``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    params = {}
    seed = 0
    if rest.strip():
        for chunk in rest.split(";"):
            key, sep, value = chunk.partition("=")
            if not sep:
                raise FamilyError(f"malformed family parameter {chunk!r}")
            key = key.strip()
            if key == "seed":
                seed = int(value)
            else:
                params[key] = _decode_value(value)
    return FamilySpec(kind=kind, parameters=params, seed=seed)


def parse_family_config(text: str) -> FamilySpec:
    """Parse a key-value config file: one ``key = value`` pair per line,
    ``kind`` mandatory, ``#`` comments allowed."""
    kind = None
    params = {}
    seed = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FamilyError(f"line {lineno}: expected key = value")
        key = key.strip()
        if key == "kind":
            kind = value.strip()
        elif key == "seed":
            seed = int(value)
        else:
            params[key] = _decode_value(value)
    if kind is None:
        raise FamilyError("config is missing the kind key")
    return FamilySpec(kind=kind, parameters=params, seed=seed)
