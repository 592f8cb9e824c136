"""Polynomial vector fields, Lie brackets, bracket-generated algebras,
spanning tests, and the continuum exponent formula."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactla
from .poly import Poly, PolyError


@dataclass(frozen=True)
class VectorField:
    """n-tuple of coefficient polynomials: X = sum_i components[i] * d/dx_i."""

    nvars: int
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.nvars:
            raise PolyError(f"field needs {self.nvars} components, got {len(comps)}")
        for c in comps:
            if not isinstance(c, Poly) or c.nvars != self.nvars:
                raise PolyError("all components must be Poly over the same variables")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, nvars: int) -> "VectorField":
        return cls(nvars, tuple(Poly.zero(nvars) for _ in range(nvars)))

    @classmethod
    def coordinate(cls, index: int, nvars: int) -> "VectorField":
        comps = [Poly.zero(nvars) for _ in range(nvars)]
        comps[index] = Poly.const(1, nvars)
        return cls(nvars, tuple(comps))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        if other.nvars != self.nvars:
            raise PolyError("dimension mismatch")
        return VectorField(self.nvars, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "VectorField":
        return VectorField(self.nvars, tuple(Fraction(scalar) * c for c in self.components))

    def __neg__(self) -> "VectorField":
        return (-1) * self

    def eval(self, point: Sequence) -> list:
        return [c.eval(point) for c in self.components]

    def format(self, names=None) -> str:
        return "[" + ", ".join(c.format(names) for c in self.components) + "]"


@dataclass(frozen=True)
class BracketWord:
    """Finite word over generator indices 1..m; names an iterated bracket."""

    letters: tuple

    def __post_init__(self):
        letters = tuple(int(v) for v in self.letters)
        if not letters:
            raise ValueError("bracket word must be nonempty")
        if any(v < 1 for v in letters):
            raise ValueError("letters are 1-based generator indices")
        object.__setattr__(self, "letters", letters)

    def degree_vector(self, m: int) -> tuple:
        if any(v > m for v in self.letters):
            raise IndexError(f"word {self.letters} indexes past {m} generators")
        return tuple(self.letters.count(j + 1) for j in range(m))

    def __len__(self):
        return len(self.letters)


def apply_field(field: VectorField, f: Poly) -> Poly:
    """Derivation Xf = sum_i X^i * df/dx_i."""
    if f.nvars != field.nvars:
        raise PolyError(f"dimension mismatch: field {field.nvars}, poly {f.nvars}")
    out = Poly.zero(f.nvars)
    for i, comp in enumerate(field.components):
        if not comp.is_zero:
            out = out + comp * f.partial(i)
    return out


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    """[X,Y], with components X(Y^i) - Y(X^i)."""
    if x.nvars != y.nvars:
        raise PolyError("dimension mismatch")
    comps = tuple(
        apply_field(x, y.components[i]) - apply_field(y, x.components[i])
        for i in range(x.nvars)
    )
    return VectorField(x.nvars, comps)


def iterated_bracket(generators: Sequence[VectorField], word: BracketWord) -> tuple:
    """Right-nested bracket [X_{w1},[X_{w2},[...]]] and the letter-count degree vector."""
    m = len(generators)
    degree = word.degree_vector(m)
    current = generators[word.letters[-1] - 1]
    for letter in reversed(word.letters[:-1]):
        current = lie_bracket(generators[letter - 1], current)
    return current, degree


def _field_vector(field: VectorField, monomials: dict) -> list:
    """Flatten a field into a coefficient vector over a shared (component, monomial) basis."""
    vec = []
    for i, comp in enumerate(field.components):
        for exps in monomials[i]:
            vec.append(comp.terms.get(exps, Fraction(0)))
    return vec


def _shared_monomials(fields: Sequence[VectorField]) -> dict:
    nvars = fields[0].nvars
    mono = {i: set() for i in range(nvars)}
    for f in fields:
        for i, comp in enumerate(f.components):
            mono[i].update(comp.terms.keys())
    return {i: sorted(s) for i, s in mono.items()}


@dataclass
class AlgebraResult:
    basis: list            # [(VectorField, BracketWord)] linearly independent over Q
    step: int | None       # largest word length with a nonzero bracket; None if cap exceeded
    cap_exceeded: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)


def generated_algebra(generators: Sequence[VectorField], step_cap: int = 8) -> AlgebraResult:
    """Basis of the span of all iterated brackets of length <= step_cap.

    Level k+1 brackets are generated from a spanning set of level k, which by
    bilinearity spans all right-nested length-(k+1) brackets. The nilpotency
    step is the last level with a nonzero bracket; if level step_cap is still
    nonzero the cap was exceeded and step is unknown.
    """
    if step_cap < 1:
        raise ValueError("step_cap must be >= 1")
    gens = list(generators)
    if not gens:
        return AlgebraResult([], None, False)
    nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise PolyError("generators must share nvars")

    level: list[tuple[VectorField, BracketWord]] = [
        (g, BracketWord((j + 1,))) for j, g in enumerate(gens)
    ]
    all_candidates: list[tuple[VectorField, BracketWord]] = []
    last_nonzero = 0
    cap_exceeded = False
    for k in range(1, step_cap + 1):
        nonzero = [(f, w) for f, w in level if not f.is_zero]
        if not nonzero:
            break
        last_nonzero = k
        # spanning subset of this level keeps the next level small
        mono = _shared_monomials([f for f, _ in nonzero])
        vecs = [_field_vector(f, mono) for f, _ in nonzero]
        keep = exactla.independent_subset(vecs)
        spanning = [nonzero[i] for i in keep]
        all_candidates.extend(spanning)
        level = [
            (lie_bracket(g, f), BracketWord((j + 1,) + w.letters))
            for j, g in enumerate(gens)
            for f, w in spanning
        ]
        if k == step_cap:
            # nilpotency at the cap is only certified if the next level dies
            cap_exceeded = any(not f.is_zero for f, _ in level)

    if not all_candidates:
        return AlgebraResult([], 0, False)
    mono = _shared_monomials([f for f, _ in all_candidates])
    vecs = [_field_vector(f, mono) for f, _ in all_candidates]
    keep = exactla.independent_subset(vecs)
    basis = [all_candidates[i] for i in keep]
    step = None if cap_exceeded else last_nonzero
    return AlgebraResult(basis, step, cap_exceeded)


def hormander_check(fields: Sequence[VectorField], point: Sequence, order_cap: int = 8) -> tuple:
    """Evaluate all iterated brackets up to order_cap at the point.

    Returns (rank, least order achieving full rank or None).
    """
    flds = list(fields)
    if not flds:
        return 0, None
    nvars = flds[0].nvars
    if len(point) != nvars:
        raise PolyError("point dimension mismatch")
    point = [Fraction(v) for v in point]

    echelon: list[list[Fraction]] = []

    def add_vector(vec: list) -> bool:
        row = list(vec)
        for e in echelon:
            lead = next((j for j, v in enumerate(e) if v != 0), None)
            if lead is not None and row[lead] != 0:
                f = row[lead] / e[lead]
                row = [a - f * b for a, b in zip(row, e)]
        if any(v != 0 for v in row):
            echelon.append(row)
            return True
        return False

    rank = 0
    achieved_at = None
    level = list(flds)
    for order in range(1, order_cap + 1):
        nonzero = [f for f in level if not f.is_zero]
        if not nonzero:
            break
        for f in nonzero:
            if add_vector(f.eval(point)):
                rank += 1
        if rank == nvars and achieved_at is None:
            achieved_at = order
            break
        # spanning subset before bracketing up
        mono = _shared_monomials(nonzero)
        keep = exactla.independent_subset([_field_vector(f, mono) for f in nonzero])
        level = [lie_bracket(g, nonzero[i]) for g in flds for i in keep]
    return rank, achieved_at


def continuum_exponents(words: Sequence[BracketWord], m: int) -> tuple:
    """Exponents p_j = (sum_i sum_l deg_l w_i - 1) / (sum_i deg_j w_i).

    Returns (list of Fractions, degenerate flag); the degenerate flag marks a
    zero numerator, where all exponents are reported as 0.
    """
    degs = [w.degree_vector(m) for w in words]
    numerator = sum(sum(d) for d in degs) - 1
    denominators = [sum(d[j] for d in degs) for j in range(m)]
    for j, d in enumerate(denominators):
        if d == 0:
            raise ZeroDivisionError(f"generator {j + 1} unused by the given words")
    if numerator == 0:
        return tuple(Fraction(0) for _ in range(m)), True
    return tuple(Fraction(numerator, d) for d in denominators), False
