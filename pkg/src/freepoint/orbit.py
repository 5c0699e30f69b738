"""Freeness of points via base-field linear algebra.

A point P in P^n(E) with [E : F_q] = m is "free" for degree d when the
m monomial values M_1(P), ..., M_m(P) are linearly independent over
F_q, equivalently when P lies on no degree-d hypersurface defined over
F_q.  The test flattens each monomial value to its coordinate vector
over F_q and computes one m-by-m rank.  A rank defect produces an
explicit witness: a kernel vector of the transposed system is exactly a
coefficient vector of a vanishing form.

Everything here is exact elimination over tower levels; no floating
point, no probabilistic shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeMismatch, RaggedInput, TowerMismatch
from .fields import FieldElement, FieldTower, coords_over, frobenius
from .forms import (
    Form,
    ParamSet,
    ProjectivePoint,
    enumerate_monomials,
    enumerate_projective_points,
    eval_form,
)

# -- exact elimination over a tower level (raw-value rows) --------------


def rref(tower: FieldTower, lvl: int, rows: list[list]) -> tuple[int, list[int], list[list]]:
    """Reduced row echelon form.  Returns (rank, pivot columns, rows).

    Deterministic: scans columns left to right, picks the first nonzero
    entry as pivot.  Input rows are not modified.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0, [], []
    width = len(rows[0])
    zero = tower.zero_raw(lvl)
    pivots = []
    rank = 0
    for col in range(width):
        pr = next((r for r in range(rank, len(rows)) if rows[r][col] != zero), None)
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        inv = tower.inv_raw(lvl, rows[rank][col])
        rows[rank] = [tower.mul_raw(lvl, inv, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != zero:
                c = rows[r][col]
                rows[r] = [
                    tower.sub_raw(lvl, x, tower.mul_raw(lvl, c, y))
                    for x, y in zip(rows[r], rows[rank])
                ]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rank, pivots, rows


def kernel_basis(tower: FieldTower, lvl: int, rows: list[list], width: int) -> list[list]:
    """Canonical basis of {v : rows @ v = 0}, one vector per free column,
    free columns ascending (the deterministic "first free column wins"
    order used for witness extraction)."""
    rank, pivots, R = rref(tower, lvl, rows)
    zero = tower.zero_raw(lvl)
    one = tower.one_raw(lvl)
    pivot_set = set(pivots)
    basis = []
    for j in range(width):
        if j in pivot_set:
            continue
        v = [zero] * width
        v[j] = one
        for r, c in enumerate(pivots):
            v[c] = tower.neg_raw(lvl, R[r][j])
        basis.append(v)
    return basis


def determinant(tower: FieldTower, lvl: int, rows: list[list]):
    """Exact determinant of a square matrix of raw values."""
    rows = [list(r) for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise RaggedInput("determinant needs a square matrix")
    zero = tower.zero_raw(lvl)
    det = tower.one_raw(lvl)
    sign = 1
    for col in range(n):
        pr = next((r for r in range(col, n) if rows[r][col] != zero), None)
        if pr is None:
            return zero
        if pr != col:
            rows[col], rows[pr] = rows[pr], rows[col]
            sign = -sign
        piv = rows[col][col]
        det = tower.mul_raw(lvl, det, piv)
        inv = tower.inv_raw(lvl, piv)
        for r in range(col + 1, n):
            if rows[r][col] != zero:
                c = tower.mul_raw(lvl, rows[r][col], inv)
                rows[r] = [
                    tower.sub_raw(lvl, x, tower.mul_raw(lvl, c, y))
                    for x, y in zip(rows[r], rows[col])
                ]
    return det if sign == 1 else tower.neg_raw(lvl, det)


def solve_linear(tower: FieldTower, lvl: int, rows: list[list], rhs: list):
    """One solution of rows @ x = rhs, or None if inconsistent.

    Free variables are set to zero, making the solution deterministic.
    """
    if len(rows) != len(rhs):
        raise RaggedInput("row/rhs length mismatch")
    if not rows:
        return []
    width = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rank, pivots, R = rref(tower, lvl, aug)
    zero = tower.zero_raw(lvl)
    if width in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = [zero] * width
    for r, c in enumerate(pivots):
        x[c] = R[r][width]
    return x


def rank_over_subfield(rows: list[list[FieldElement]]) -> int:
    """Row rank of vectors of field elements (all at one level)."""
    if not rows:
        return 0
    first = rows[0]
    if not first:
        return 0
    tower, lvl = first[0].tower, first[0].level
    width = len(first)
    raw = []
    for row in rows:
        if len(row) != width:
            raise RaggedInput("rows of unequal length")
        raw.append([c.val for c in row])
    rank, _, _ = rref(tower, lvl, raw)
    return rank


# -- the independence test ----------------------------------------------


class IndependenceMatrix:
    """The m-by-m matrix of flattened monomial values at a point.

    Row s holds coords_over(M_s(P), base); rank m over F_q is exactly
    freeness of P for degree d.  The determinant is basis-dependent, so
    only rank and the zero/nonzero verdict are contractual.
    """

    __slots__ = ("params", "tower", "base_level", "point", "rows", "_rank", "_det")

    def __init__(self, params: ParamSet, tower: FieldTower, base_level: int, point, rows):
        self.params = params
        self.tower = tower
        self.base_level = base_level
        self.point = point
        self.rows = rows  # list of list of raw values at base_level
        self._rank = None
        self._det = None

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank, _, _ = rref(self.tower, self.base_level, self.rows)
        return self._rank

    @property
    def det(self) -> FieldElement:
        if self._det is None:
            self._det = determinant(self.tower, self.base_level, self.rows)
        return FieldElement(self.tower, self.base_level, self._det)

    @property
    def is_free(self) -> bool:
        return self.rank == self.params.m


@dataclass(frozen=True)
class OrbitCertificate:
    """Verdict of the freeness test, with a vanishing form when not free."""

    params: ParamSet
    tower: FieldTower
    base_level: int
    point: ProjectivePoint
    free: bool
    witness_form: Form | None = None

    @property
    def verdict(self) -> str:
        return "free" if self.free else "lies-on-hypersurface"

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.params.q},
            "tower": self.tower.to_dict(),
            "base_level": self.base_level,
            "point": [c.to_json() for c in self.point.coords],
            "point_level": self.point.level,
            "verdict": self.verdict,
            "witness_form": [c.to_json() for c in self.witness_form.coeffs]
            if self.witness_form is not None
            else None,
        }


def monomial_value_matrix(
    P: ProjectivePoint, base_level: int, params: ParamSet
) -> IndependenceMatrix:
    """Rows = flattened monomial values at P, in canonical monomial order."""
    tower = P.tower
    if tower.extension_degree(P.level, base_level) != params.m:
        raise DegreeMismatch(
            f"point level has degree {tower.extension_degree(P.level, base_level)} "
            f"over the base, expected m = {params.m}"
        )
    if len(P.coords) != params.n + 1:
        raise DegreeMismatch("point dimension does not match params")
    d = params.d
    pows = []
    for c in P.coords:
        row = [tower.one_raw(P.level)]
        for _ in range(d):
            row.append(tower.mul_raw(P.level, row[-1], c.val))
        pows.append(row)
    rows = []
    for mono in enumerate_monomials(params.n, d):
        v = tower.one_raw(P.level)
        for var, e in enumerate(mono):
            if e:
                v = tower.mul_raw(P.level, v, pows[var][e])
        el = FieldElement(tower, P.level, v)
        rows.append([c.val for c in coords_over(el, base_level)])
    return IndependenceMatrix(params, tower, base_level, P, rows)


def is_free_point(P: ProjectivePoint, base_level: int, params: ParamSet) -> OrbitCertificate:
    """Decide freeness; on failure emit a vanishing form over the base.

    The witness is the kernel vector of the transposed value matrix for
    the first free column, re-read as form coefficients; by construction
    it is nonzero and vanishes at P.
    """
    mat = monomial_value_matrix(P, base_level, params)
    if mat.is_free:
        return OrbitCertificate(params, P.tower, base_level, P, True)
    m = params.m
    transpose = [[mat.rows[s][t] for s in range(m)] for t in range(m)]
    coeffs = kernel_basis(P.tower, base_level, transpose, m)[0]
    witness = Form(
        params,
        P.tower,
        base_level,
        [FieldElement(P.tower, base_level, c) for c in coeffs],
    )
    return OrbitCertificate(params, P.tower, base_level, P, False, witness)


def galois_orbit(P: ProjectivePoint, base_level: int) -> list[ProjectivePoint]:
    """Orbit of P under coordinate-wise Frobenius over the base level,
    P first, each point normalized."""
    tower = P.tower
    orbit = [P]
    current = P
    while True:
        nxt = ProjectivePoint(
            tower, P.level, [frobenius(c, base_level) for c in current.coords]
        )
        if nxt == P:
            return orbit
        orbit.append(nxt)
        current = nxt


def conditions_rank(points: list[ProjectivePoint], params: ParamSet) -> int:
    """Rank of the vanishing conditions the points impose on degree-d
    forms over F_q.

    Each point contributes [level : F_q] rows over F_q (the flattened
    coordinates of its monomial value vector); the rank equals
    m - dim{forms over F_q vanishing on all the points}.
    """
    if not points:
        return 0
    rows, arith = stacked_condition_rows(points, params)
    rank, _, _ = rref(arith[0], arith[1], rows)
    return rank


def stacked_condition_rows(points: list[ProjectivePoint], params: ParamSet):
    """Evaluation rows over F_q for all points; returns (rows, (tower, base))."""
    q = params.q
    ref = None
    rows = []
    for P in points:
        base = P.tower.level_of_cardinality(q)
        if base is None:
            raise TowerMismatch(f"point's tower has no level of cardinality {q}")
        prefix = (P.tower.p, P.tower.key[1][:base])
        if ref is None:
            ref = prefix
            arith = (P.tower, base)
        elif prefix != ref:
            raise TowerMismatch("points live over different base fields")
        if len(P.coords) != params.n + 1:
            raise RaggedInput("point dimension does not match params")
        k = P.tower.extension_degree(P.level, base)
        d = params.d
        pows = []
        for c in P.coords:
            row = [P.tower.one_raw(P.level)]
            for _ in range(d):
                row.append(P.tower.mul_raw(P.level, row[-1], c.val))
            pows.append(row)
        cols = []
        for mono in enumerate_monomials(params.n, d):
            v = P.tower.one_raw(P.level)
            for var, e in enumerate(mono):
                if e:
                    v = P.tower.mul_raw(P.level, v, pows[var][e])
            cols.append([c.val for c in coords_over(FieldElement(P.tower, P.level, v), base)])
        for t in range(k):
            rows.append([col[t] for col in cols])
    return rows, arith


@dataclass
class GreedyReport:
    """Outcome of the greedy independent-conditions loop."""

    success: bool
    points: list[ProjectivePoint]
    rank: int
    failed_at: int | None = None
    blocking_form: Form | None = None


def greedy_point_selection(params: ParamSet, tower: FieldTower, level: int) -> GreedyReport:
    """Greedily pick points of P^n(level) imposing independent conditions.

    Maintains the space V_i of degree-d forms over the level vanishing
    at the points chosen so far, takes the canonical first kernel form
    f_i, and scans for a point off it.  Over small fields f_i can be
    space-filling, in which case the report names the blocking form.
    """
    m = params.m
    rows: list[list] = []
    points: list[ProjectivePoint] = []
    for step in range(1, m + 1):
        basis = kernel_basis(tower, level, rows or [[tower.zero_raw(level)] * m], m)
        f = Form(
            params,
            tower,
            level,
            [FieldElement(tower, level, c) for c in basis[0]],
        )
        hit = None
        for P in enumerate_projective_points(params.n, tower, level):
            if not eval_form(f, P).is_zero:
                hit = P
                break
        if hit is None:
            return GreedyReport(False, points, len(rows), failed_at=step, blocking_form=f)
        points.append(hit)
        d = params.d
        pows = []
        for c in hit.coords:
            prow = [tower.one_raw(level)]
            for _ in range(d):
                prow.append(tower.mul_raw(level, prow[-1], c.val))
            pows.append(prow)
        row = []
        for mono in enumerate_monomials(params.n, d):
            v = tower.one_raw(level)
            for var, e in enumerate(mono):
                if e:
                    v = tower.mul_raw(level, v, pows[var][e])
            row.append(v)
        rows.append(row)
    rank, _, _ = rref(tower, level, rows)
    assert rank == m
    return GreedyReport(True, points, rank)
