"""Canonical monomial order, homogeneous forms, and projective points.

The monomial order is fixed once for the whole package: degree-d
monomials in x_0..x_n are listed in descending lexicographic order of
their exponent vectors (graded-lex with x_0 > x_1 > ... > x_n).  Every
coefficient vector, matrix row, and serialized form is indexed by this
order, which is what makes fixtures bit-exact.

Enumerations of scalar classes (forms up to scalar, normalized
projective points) share one scheme: the representative has its first
nonzero entry equal to 1 ("pivot"), entries before the pivot are zero,
and entries after it run through canonical element indices with the
entry right after the pivot varying fastest.  Every enumerated object
therefore has a stable integer index, and the census splits index
ranges across threads without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import BudgetExceeded, RaggedInput, RangeError, TowerMismatch
from .fields import FieldElement, FieldTower


@dataclass(frozen=True)
class ParamSet:
    """Ambient dimension n, degree d, base field size q."""

    n: int
    d: int
    q: int

    def __post_init__(self):
        if self.n < 1 or self.d < 0 or self.q < 2:
            raise RangeError(f"bad parameters (n={self.n}, d={self.d}, q={self.q})")

    @property
    def m(self) -> int:
        """Number of degree-d monomials in n+1 variables."""
        return comb(self.n + self.d, self.n)

    @property
    def r(self) -> int:
        """Number of degree-(d-1) monomials."""
        return comb(self.n + self.d - 1, self.n)


@lru_cache(maxsize=None)
def enumerate_monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors (i_0..i_n) with sum d, descending lex."""
    if n < 0 or d < 0:
        raise RangeError("n and d must be non-negative")

    def rec(vars_left: int, total: int):
        if vars_left == 0:
            return [(total,)]
        out = []
        for i0 in range(total, -1, -1):
            out.extend((i0,) + rest for rest in rec(vars_left - 1, total - i0))
        return out

    return tuple(rec(n, d))


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {m: i for i, m in enumerate(enumerate_monomials(n, d))}


class Form:
    """A homogeneous form as a dense coefficient vector over a level."""

    __slots__ = ("params", "tower", "level", "coeffs")

    def __init__(self, params: ParamSet, tower: FieldTower, level: int, coeffs):
        coeffs = tuple(
            c if isinstance(c, FieldElement) else tower.element(level, c) for c in coeffs
        )
        if len(coeffs) != params.m:
            raise RaggedInput(
                f"degree-{params.d} form in {params.n + 1} variables needs "
                f"{params.m} coefficients, got {len(coeffs)}"
            )
        for c in coeffs:
            if c.level != level or (c.tower is not tower and c.tower.key != tower.key):
                raise TowerMismatch("coefficient outside the stated level")
        self.params = params
        self.tower = tower
        self.level = level
        self.coeffs = coeffs

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    @property
    def raw_coeffs(self) -> tuple:
        return tuple(c.val for c in self.coeffs)

    def normalized(self) -> "Form":
        """Scalar-class representative: first nonzero coefficient scaled to 1."""
        for c in self.coeffs:
            if not c.is_zero:
                inv = c.inverse()
                return Form(
                    self.params, self.tower, self.level, [inv * x for x in self.coeffs]
                )
        raise RaggedInput("zero form has no scalar class")

    def monomials(self):
        return enumerate_monomials(self.params.n, self.params.d)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.params == other.params
            and self.level == other.level
            and self.tower.key == other.tower.key
            and self.raw_coeffs == other.raw_coeffs
        )

    def __hash__(self):
        return hash((self.params, self.level, self.raw_coeffs))

    def to_dict(self) -> dict:
        return {
            "n": self.params.n,
            "d": self.params.d,
            "q": self.params.q,
            "tower": self.tower.to_dict(),
            "level": self.level,
            "coefficients": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d: dict, tower: FieldTower | None = None) -> "Form":
        tower = tower or FieldTower.from_dict(d["tower"])
        params = ParamSet(d["n"], d["d"], d["q"])
        return cls(params, tower, d["level"], d["coefficients"])

    def __repr__(self):
        terms = []
        for mono, c in zip(self.monomials(), self.coeffs):
            if c.is_zero:
                continue
            vars_ = "*".join(
                f"x{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(mono)
                if e
            ) or "1"
            terms.append(f"({c.to_json()})*{vars_}")
        return " + ".join(terms) or "0"


class ProjectivePoint:
    """A point of P^n over a tower level, stored in normalized form.

    Normalization divides by the first nonzero coordinate, so equal
    projective classes are equal tuples.
    """

    __slots__ = ("tower", "level", "coords")

    def __init__(self, tower: FieldTower, level: int, coords):
        coords = [
            c if isinstance(c, FieldElement) else tower.element(level, c) for c in coords
        ]
        if not coords:
            raise RaggedInput("a point needs at least one coordinate")
        for c in coords:
            if c.level != level or (c.tower is not tower and c.tower.key != tower.key):
                raise TowerMismatch("coordinate outside the stated level")
        pivot = next((c for c in coords if not c.is_zero), None)
        if pivot is None:
            raise RaggedInput("all-zero coordinates do not define a point")
        self.tower = tower
        self.level = level
        if pivot.val == tower.one_raw(level):
            self.coords = tuple(coords)
        else:
            inv = pivot.inverse()
            self.coords = tuple(inv * c for c in coords)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def raw_coords(self) -> tuple:
        return tuple(c.val for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return (
            self.level == other.level
            and self.tower.key == other.tower.key
            and self.raw_coords == other.raw_coords
        )

    def __hash__(self):
        return hash((self.level, self.raw_coords))

    def to_dict(self) -> dict:
        return {
            "tower": self.tower.to_dict(),
            "level": self.level,
            "coordinates": [c.to_json() for c in self.coords],
        }

    @classmethod
    def from_dict(cls, d: dict, tower: FieldTower | None = None) -> "ProjectivePoint":
        tower = tower or FieldTower.from_dict(d["tower"])
        return cls(tower, d["level"], d["coordinates"])

    def __repr__(self):
        return "(" + " : ".join(repr(c.to_json()) for c in self.coords) + ")"


def eval_form(f: Form, P: ProjectivePoint) -> FieldElement:
    """The exact value sum(coeff_s * M_s(P)) in the common level."""
    if f.tower.key != P.tower.key:
        raise TowerMismatch("form and point live in different towers")
    level = max(f.level, P.level)
    tower = f.tower if f.level >= P.level else P.tower
    d = f.params.d
    if len(P.coords) != f.params.n + 1:
        raise RaggedInput("point dimension does not match the form")
    # coordinate powers up to d, computed once
    pows = []
    for c in P.coords:
        ce = c if c.level == level else c._promote(level)
        row = [tower.one(level)]
        for _ in range(d):
            row.append(row[-1] * ce)
        pows.append(row)
    total = tower.zero(level)
    for mono, coeff in zip(f.monomials(), f.coeffs):
        if coeff.is_zero:
            continue
        term = coeff if coeff.level == level else coeff._promote(level)
        for var, e in enumerate(mono):
            if e:
                term = term * pows[var][e]
        total = total + term
    return total


# -- scalar-class enumeration with stable indices -----------------------


def form_count(params: ParamSet, level_cardinality: int, up_to_scalar: bool = True) -> int:
    q, m = level_cardinality, params.m
    return (q**m - 1) // (q - 1) if up_to_scalar else q**m - 1


def form_at_index(params: ParamSet, tower: FieldTower, level: int, index: int) -> Form:
    """The index-th scalar class representative (deterministic)."""
    q = tower.cardinality(level)
    m = params.m
    if index < 0:
        raise RangeError("negative form index")
    pivot = 0
    while pivot < m:
        block = q ** (m - 1 - pivot)
        if index < block:
            break
        index -= block
        pivot += 1
    else:
        raise RangeError("form index out of range")
    coeffs = [tower.zero(level)] * pivot + [tower.one(level)]
    for _ in range(pivot + 1, m):
        coeffs.append(tower.element_at_index(level, index % q))
        index //= q
    return Form(params, tower, level, coeffs)


def enumerate_forms(
    params: ParamSet,
    tower: FieldTower,
    level: int,
    up_to_scalar: bool = True,
    start: int = 0,
    stop: int | None = None,
    budget: int | None = None,
):
    """Scalar classes (or all nonzero forms) in canonical index order.

    `start`/`stop` select an index subrange, which is how the census
    splits work across threads.
    """
    q = tower.cardinality(level)
    total = form_count(params, q, up_to_scalar)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} forms exceed budget {budget}")
    stop = total if stop is None else min(stop, total)
    if up_to_scalar:
        for i in range(start, stop):
            yield form_at_index(params, tower, level, i)
    else:
        scalars = [s for s in tower.elements(level) if not s.is_zero]
        classes = form_count(params, q, True)
        for i in range(start, stop):
            rep = form_at_index(params, tower, level, i % classes)
            s = scalars[i // classes]
            yield Form(params, tower, level, [s * c for c in rep.coeffs])


def point_count(n: int, level_cardinality: int) -> int:
    q = level_cardinality
    return (q ** (n + 1) - 1) // (q - 1)


def point_at_index(n: int, tower: FieldTower, level: int, index: int) -> ProjectivePoint:
    q = tower.cardinality(level)
    if index < 0:
        raise RangeError("negative point index")
    pivot = 0
    while pivot <= n:
        block = q ** (n - pivot)
        if index < block:
            break
        index -= block
        pivot += 1
    else:
        raise RangeError("point index out of range")
    coords = [tower.zero(level)] * pivot + [tower.one(level)]
    for _ in range(pivot + 1, n + 1):
        coords.append(tower.element_at_index(level, index % q))
        index //= q
    return ProjectivePoint(tower, level, coords)


def enumerate_projective_points(
    n: int,
    tower: FieldTower,
    level: int,
    start: int = 0,
    stop: int | None = None,
    budget: int | None = None,
):
    """Every point of P^n(level) exactly once, normalized, stable order."""
    total = point_count(n, tower.cardinality(level))
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} points exceed budget {budget}")
    stop = total if stop is None else min(stop, total)
    for i in range(start, stop):
        yield point_at_index(n, tower, level, i)


def multiply_forms(f: Form, g: Form) -> Form:
    """Product form of degree deg(f) + deg(g) over the common level."""
    if f.tower.key != g.tower.key or f.level != g.level:
        raise TowerMismatch("factors live in different fields")
    if f.params.n != g.params.n or f.params.q != g.params.q:
        raise RaggedInput("factors have different ambient parameters")
    n = f.params.n
    dsum = f.params.d + g.params.d
    out_params = ParamSet(n, dsum, f.params.q)
    idx = monomial_index(n, dsum)
    tower, level = f.tower, f.level
    acc = [tower.zero(level)] * out_params.m
    fm = enumerate_monomials(n, f.params.d)
    gm = enumerate_monomials(n, g.params.d)
    for ma, ca in zip(fm, f.coeffs):
        if ca.is_zero:
            continue
        for mb, cb in zip(gm, g.coeffs):
            if cb.is_zero:
                continue
            key = tuple(x + y for x, y in zip(ma, mb))
            t = idx[key]
            acc[t] = acc[t] + ca * cb
    return Form(out_params, tower, level, acc)
