"""Reducibility of homogeneous forms and exhaustive censuses.

A homogeneous form in at least two variables factors into homogeneous
forms, so trial division by every scalar-normalized form of degree at
most d/2 is a complete decision procedure for reducibility over any
coefficient field.  Division of one homogeneous form by another is
multivariate leading-term division (graded descending-lex order); when
the divisor really divides, the remainder reaches zero, otherwise a
leading monomial eventually fails to divide and we bail out.

Geometric reducibility: a form irreducible over the base field that
becomes reducible over the algebraic closure splits into conjugate
irreducible factors of equal degree d/e for some divisor e > 1 of d, so
it suffices to test reducibility over the degree-e extensions for each
such e, smallest e first.

Censuses walk every scalar class of degree-d forms and classify each
one.  A vectorized path covers the acceptance-scale censuses: when
d <= 3 and n = 2 and q >= d, reducibility over any field F ⊇ F_q is
equivalent to divisibility by a linear form over F (any nontrivial
split of degree <= 3 contains a linear factor), and divisibility of f
by a line L is equivalent to f vanishing at d+1 distinct points of L
(a nonzero degree-d binary form has at most d roots).  Vanishing is
F_p-linear in the flattened coefficients of f, so one matrix product
per line classifies the whole census at once.  The generic per-form
path is used everywhere else and doubles as a cross-check oracle.

Thread counts only split index ranges; aggregation is exact integer
addition, so results are bit-identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .bounds import u1, u2
from .errors import BudgetExceeded, RangeError
from .exactnum import QSqrt
from .fields import (
    FieldElement,
    FieldTower,
    basis_over,
    coords_over,
    embed,
    extended_tower,
    make_tower,
)
from .forms import (
    Form,
    ParamSet,
    enumerate_forms,
    enumerate_monomials,
    eval_form,
    form_at_index,
    form_count,
    monomial_index,
    point_at_index,
    point_count,
)

__all__ = [
    "divide_forms",
    "FactorizationReport",
    "is_reducible_over",
    "is_geometrically_reducible",
    "CensusReport",
    "census",
    "count_points",
    "SerreReport",
    "check_serre",
    "CafureMateraReport",
    "check_cafure_matera",
    "SpaceFillingReport",
    "check_space_filling",
    "cafure_matera_holds",
    "serre_bound",
]


def divide_forms(f: Form, g: Form) -> Form | None:
    """Quotient f/g as a form, or None when g does not divide f.

    Both forms must be homogeneous over the same tower level with
    0 < deg g <= deg f.
    """
    n = f.params.n
    if g.params.n != n or f.tower.key != g.tower.key or f.level != g.level:
        raise RangeError("division needs matching ambient space and field")
    if g.is_zero or g.params.d < 1 or g.params.d > f.params.d:
        raise RangeError("divisor degree must satisfy 1 <= deg g <= deg f")
    tower, level = f.tower, f.level
    dq = f.params.d - g.params.d
    qparams = ParamSet(n, dq, f.params.q)
    fmono = enumerate_monomials(n, f.params.d)
    gmono = enumerate_monomials(n, g.params.d)
    fidx = monomial_index(n, f.params.d)
    qidx = monomial_index(n, dq)
    g_lead = next(i for i, c in enumerate(g.coeffs) if not c.is_zero)
    g_lead_exp = gmono[g_lead]
    g_lead_inv = g.coeffs[g_lead].inverse()
    g_terms = [
        (gmono[i], c) for i, c in enumerate(g.coeffs) if i != g_lead and not c.is_zero
    ]
    rem = list(f.coeffs)
    quo = [tower.zero(level)] * qparams.m
    for _ in range(f.params.m):
        lead = next((i for i, c in enumerate(rem) if not c.is_zero), None)
        if lead is None:
            return Form(qparams, tower, level, quo)
        exp = tuple(a - b for a, b in zip(fmono[lead], g_lead_exp))
        if any(e < 0 for e in exp):
            return None
        c = rem[lead] * g_lead_inv
        quo[qidx[exp]] = c
        rem[lead] = tower.zero(level)
        for gm, gc in g_terms:
            t = fidx[tuple(a + b for a, b in zip(exp, gm))]
            rem[t] = rem[t] - c * gc
    return None  # pragma: no cover - loop always resolves within m steps


def _divisors_over_one(d: int) -> list[int]:
    return [e for e in range(2, d + 1) if d % e == 0]


def _lift_form(f: Form, tower: FieldTower, level: int) -> Form:
    """Re-tag f into a prefix-compatible extension tower at `level`."""
    coeffs = [embed(tower.adopt(c), level) for c in f.coeffs]
    return Form(f.params, tower, level, coeffs)


@dataclass
class FactorizationReport:
    """Base-field and (optionally) geometric reducibility verdicts.

    split_degree is 1 when the form is reducible over its own field,
    the smallest divisor e > 1 of d such that the form splits over the
    degree-e extension when it is irreducible but geometrically
    reducible, and None when geometrically irreducible (or when the
    geometric part was not requested).
    """

    form: Form
    base_reducible: bool
    base_witness: tuple[Form, Form] | None
    geometric_checked: bool = False
    geom_reducible: bool | None = None
    split_degree: int | None = None

    @property
    def verdict(self) -> str:
        if self.base_reducible:
            return "reducible"
        return "irreducible"

    @property
    def geometric_verdict(self) -> str | None:
        if not self.geometric_checked:
            return None
        return "geom-reducible" if self.geom_reducible else "geom-irreducible"

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "geometric_verdict": self.geometric_verdict,
            "split_degree": self.split_degree,
        }
        if self.base_witness is not None:
            g, h = self.base_witness
            out["witness"] = {"g": g.to_dict(), "h": h.to_dict()}
        return out


def _first_divisor_witness(
    f: Form, budget: int | None
) -> tuple[Form, Form] | None:
    """First (g, h) with f = g*h, deg g <= deg h, in enumeration order."""
    params = f.params
    level_q = f.tower.cardinality(f.level)
    tried = 0
    for i in range(1, params.d // 2 + 1):
        dparams = ParamSet(params.n, i, params.q)
        for g in enumerate_forms(dparams, f.tower, f.level):
            tried += 1
            if budget is not None and tried > budget:
                raise BudgetExceeded(
                    f"trial division exceeded {budget} candidate divisors "
                    f"(level cardinality {level_q})"
                )
            h = divide_forms(f, g)
            if h is not None:
                return g, h
    return None


def is_reducible_over(f: Form, level: int | None = None, budget: int | None = None) -> FactorizationReport:
    """Complete trial-division reducibility test over the given level.

    When `level` is above the form's own level the coefficients are
    embedded upward first.
    """
    if f.is_zero or f.params.d < 1:
        raise RangeError("need a nonzero form of degree >= 1")
    if level is not None and level != f.level:
        f = Form(f.params, f.tower, level, [embed(c, level) for c in f.coeffs])
    witness = _first_divisor_witness(f, budget)
    return FactorizationReport(f, witness is not None, witness)


def is_geometrically_reducible(
    f: Form, base_level: int | None = None, budget: int | None = None
) -> FactorizationReport:
    """Base verdict plus geometric verdict via the divisor extensions."""
    base_level = f.level if base_level is None else base_level
    rep = is_reducible_over(f, base_level, budget)
    rep.geometric_checked = True
    if rep.base_reducible:
        rep.geom_reducible = True
        rep.split_degree = 1
        return rep
    for e in _divisors_over_one(f.params.d):
        ext = extended_tower(f.tower, e)
        lifted = _lift_form(f, ext, len(ext.degrees))
        if _first_divisor_witness(lifted, budget) is not None:
            rep.geom_reducible = True
            rep.split_degree = e
            return rep
    rep.geom_reducible = False
    return rep


# -- vectorized census path ----------------------------------------------


def _fast_path_ok(params: ParamSet, tower: FieldTower, base_level: int) -> bool:
    q = tower.cardinality(base_level)
    return params.n == 2 and params.d <= 3 and q >= params.d and params.d >= 1


def _coeff_matrix(params: ParamSet, tower: FieldTower, base_level: int) -> np.ndarray:
    """All scalar classes, flattened to F_p coordinates, one column each.

    Column order matches form_at_index; row layout is coefficient-major,
    little-endian base-p digits within each coefficient.
    """
    p = tower.p
    q = tower.cardinality(base_level)
    jb = _ext_degree(q, p)
    m = params.m
    total = form_count(params, q)
    C = np.zeros((m * jb, total), dtype=np.int64)
    col = 0
    for pivot in range(m):
        block = q ** (m - 1 - pivot)
        idx = np.arange(block, dtype=np.int64)
        C[pivot * jb, col : col + block] = 1  # pivot coefficient is 1
        for t in range(m - 1 - pivot):
            digit = (idx // q**t) % q
            for d_ in range(jb):
                C[(pivot + 1 + t) * jb + d_, col : col + block] = (digit // p**d_) % p
        col += block
    return C


def _ext_degree(big: int, small: int) -> int:
    out = 0
    while big > 1:
        big //= small
        out += 1
    return out


def _line_rows(
    params: ParamSet,
    base_tower: FieldTower,
    base_level: int,
    line_tower: FieldTower,
    line_level: int,
    line: Form,
) -> np.ndarray:
    """Evaluation matrix of one line: rows test vanishing of a census
    form (flattened F_p coefficient column) at d+1 points of the line."""
    p = base_tower.p
    d = params.d
    monos = enumerate_monomials(params.n, d)
    q = base_tower.cardinality(base_level)
    jb = _ext_degree(q, p)
    base_basis = [
        embed(line_tower.adopt(b), line_level)
        for b in basis_over(base_tower, base_level, 0)
    ]
    kern = _line_points(line, d + 1)
    jext = _ext_degree(line_tower.cardinality(line_level), p)
    E = np.zeros((len(kern) * jext, params.m * jb), dtype=np.int64)
    for pi, P in enumerate(kern):
        powers = [
            [c ** 0, *[None] * d] for c in P.coords
        ]
        for ci, c in enumerate(P.coords):
            for e in range(1, d + 1):
                powers[ci][e] = powers[ci][e - 1] * c
        for k, mono in enumerate(monos):
            val = None
            for ci, e in enumerate(mono):
                if e:
                    term = powers[ci][e]
                    val = term if val is None else val * term
            if val is None:
                val = line_tower.one(line_level)
            for bb, b in enumerate(base_basis):
                flat = coords_over(b * val, 0)
                for cc, comp in enumerate(flat):
                    E[pi * jext + cc, k * jb + bb] = comp.val
    return E


def _line_points(line: Form, count: int) -> list:
    """`count` distinct points on the projective line V(line) in P^2."""
    from .orbit import kernel_basis

    tower, level = line.tower, line.level
    raw_row = [c.val for c in line.coeffs]
    kern = kernel_basis(tower, level, [raw_row], len(line.coeffs))
    v1 = [FieldElement(tower, level, v) for v in kern[0]]
    v2 = [FieldElement(tower, level, v) for v in kern[1]]
    pts = [_PointView(v1)]
    for s in tower.elements(level):
        if len(pts) >= count:
            break
        pts.append(_PointView([s * a + b for a, b in zip(v1, v2)]))
    if len(pts) < count:
        raise RangeError("line has too few points for the degree")
    return pts


class _PointView:
    """Unnormalized point coordinates (vanishing tests only)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = coords


def _chunk_ranges(total: int, threads: int) -> list[tuple[int, int]]:
    threads = max(1, threads)
    return [
        (t * total // threads, (t + 1) * total // threads) for t in range(threads)
    ]


def _fast_divisible(
    params: ParamSet,
    base_tower: FieldTower,
    base_level: int,
    line_tower: FieldTower,
    line_level: int,
    C: np.ndarray,
    threads: int,
) -> np.ndarray:
    """Boolean column mask: divisible by some line over the line level."""
    p = base_tower.p
    lparams = ParamSet(params.n, 1, params.q)
    out = np.zeros(C.shape[1], dtype=bool)
    lines = list(enumerate_forms(lparams, line_tower, line_level))
    mats = [
        _line_rows(params, base_tower, base_level, line_tower, line_level, ln)
        for ln in lines
    ]

    def run(rng):
        lo, hi = rng
        block = C[:, lo:hi]
        hit = np.zeros(hi - lo, dtype=bool)
        for E in mats:
            pending = ~hit
            if not pending.any():
                break
            Z = (E @ block[:, pending]) % p
            hit[pending] = ~Z.any(axis=0)
        return lo, hi, hit

    ranges = _chunk_ranges(C.shape[1], threads)
    if threads <= 1:
        results = [run(r) for r in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, ranges))
    for lo, hi, hit in results:
        out[lo:hi] = hit
    return out


def _fast_point_counts(
    params: ParamSet, tower: FieldTower, base_level: int, C: np.ndarray, threads: int
) -> np.ndarray:
    """|V(f)(F_q)| per census column, by evaluating at every point."""
    p = tower.p
    q = tower.cardinality(base_level)
    jb = _ext_degree(q, p)
    monos = enumerate_monomials(params.n, params.d)
    basis = basis_over(tower, base_level, 0)
    npts = point_count(params.n, q)
    E = np.zeros((npts * jb, params.m * jb), dtype=np.int64)
    for pi in range(npts):
        P = point_at_index(params.n, tower, base_level, pi)
        for k, mono in enumerate(monos):
            val = tower.one(base_level)
            for ci, e in enumerate(mono):
                for _ in range(e):
                    val = val * P.coords[ci]
            for bb, b in enumerate(basis):
                flat = coords_over(b * val, 0)
                for cc, comp in enumerate(flat):
                    E[pi * jb + cc, k * jb + bb] = comp.val
    counts = np.zeros(C.shape[1], dtype=np.int64)

    def run(rng):
        lo, hi = rng
        Z = (E @ C[:, lo:hi]) % p
        vanish = ~Z.reshape(npts, jb, hi - lo).any(axis=1)
        return lo, hi, vanish.sum(axis=0)

    ranges = _chunk_ranges(C.shape[1], threads)
    if threads <= 1:
        results = [run(r) for r in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, ranges))
    for lo, hi, cnt in results:
        counts[lo:hi] = cnt
    return counts


def _census_arrays(
    params: ParamSet,
    tower: FieldTower,
    base_level: int,
    budget: int,
    want_counts: bool,
    threads: int,
    force_generic: bool = False,
):
    """Per-class smallest splitting extension (0 = geometrically
    irreducible, 1 = reducible over the base) and optional point counts.
    """
    q = tower.cardinality(base_level)
    total = form_count(params, q)
    if total > budget:
        raise BudgetExceeded(f"census of {total} classes exceeds budget {budget}")
    fast = _fast_path_ok(params, tower, base_level) and not force_generic
    if fast:
        C = _coeff_matrix(params, tower, base_level)
        split = np.zeros(total, dtype=np.int64)
        over_base = _fast_divisible(
            params, tower, base_level, tower, base_level, C, threads
        )
        split[over_base] = 1
        for e in _divisors_over_one(params.d):
            ext = extended_tower(tower, e)
            over_ext = _fast_divisible(
                params, tower, base_level, ext, len(ext.degrees), C, threads
            )
            fresh = over_ext & (split == 0)
            split[fresh] = e
        counts = (
            _fast_point_counts(params, tower, base_level, C, threads)
            if want_counts
            else None
        )
        return split.tolist(), (None if counts is None else counts.tolist()), True

    ext_levels = []
    for e in _divisors_over_one(params.d):
        ext = extended_tower(tower, e)
        ext_levels.append((e, ext, len(ext.degrees)))
    pts = (
        [
            point_at_index(params.n, tower, base_level, i)
            for i in range(point_count(params.n, q))
        ]
        if want_counts
        else None
    )

    def classify_range(rng):
        lo, hi = rng
        spl = []
        cnts = [] if want_counts else None
        for idx in range(lo, hi):
            f = form_at_index(params, tower, base_level, idx)
            if _first_divisor_witness(f, None) is not None:
                spl.append(1)
            else:
                found = 0
                for e, ext, lvl in ext_levels:
                    lifted = _lift_form(f, ext, lvl)
                    if _first_divisor_witness(lifted, None) is not None:
                        found = e
                        break
                spl.append(found)
            if want_counts:
                cnts.append(sum(1 for P in pts if eval_form(f, P).is_zero))
        return lo, spl, cnts

    ranges = _chunk_ranges(total, threads)
    if threads <= 1:
        results = [classify_range(r) for r in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(classify_range, ranges))
    results.sort(key=lambda r: r[0])
    split = []
    counts = [] if want_counts else None
    for _, spl, cnts in results:
        split.extend(spl)
        if want_counts:
            counts.extend(cnts)
    return split, counts, False


@dataclass
class CensusReport:
    """Exact classification counts for one full census."""

    params: ParamSet
    q: int
    total: int
    count_red_base: int
    count_irr_geom_red: int
    count_geom_irr: int
    split_counts: dict[int, int]
    t1: Fraction
    t2: Fraction
    t: Fraction
    u1_bound: Fraction
    u2_bound: Fraction
    t1_within_bound: bool
    t2_within_bound: bool
    histogram: dict[int, int] | None
    fast_path: bool
    threads: int

    @property
    def conserved(self) -> bool:
        return (
            self.count_red_base + self.count_irr_geom_red + self.count_geom_irr
            == self.total
        )

    @property
    def degree_sum(self) -> int:
        return self.params.d * self.total

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.q},
            "total": str(self.total),
            "count_red_base": str(self.count_red_base),
            "count_irr_geom_red": str(self.count_irr_geom_red),
            "count_geom_irr": str(self.count_geom_irr),
            "split_counts": {str(k): str(v) for k, v in sorted(self.split_counts.items())},
            "t1": frac(self.t1),
            "t2": frac(self.t2),
            "t": frac(self.t),
            "u1": frac(self.u1_bound),
            "u2": frac(self.u2_bound),
            "t1_within_bound": self.t1_within_bound,
            "t2_within_bound": self.t2_within_bound,
            "histogram": None
            if self.histogram is None
            else {str(k): str(v) for k, v in sorted(self.histogram.items())},
            "degree_sum": str(self.degree_sum),
            "fast_path": self.fast_path,
        }


def _default_tower(q: int) -> tuple[FieldTower, int]:
    from .exactnum import prime_power

    p, k = prime_power(q)
    tower = make_tower(p)
    if k > 1:
        tower = extended_tower(tower, k)
    return tower, len(tower.degrees)


def census(
    params: ParamSet,
    tower: FieldTower | None = None,
    base_level: int | None = None,
    budget: int = 10**7,
    histogram: bool = False,
    threads: int = 1,
    force_generic: bool = False,
) -> CensusReport:
    """Classify every scalar class of degree-d forms over F_q.

    Exact counts and fractions; validates the census fractions against
    the closed-form bounds (t1 <= u1, t2 <= u2).
    """
    if tower is None:
        tower, base_level = _default_tower(params.q)
    elif base_level is None:
        base_level = tower.level_of_cardinality(params.q)
        if base_level is None:
            raise RangeError(f"tower has no level of cardinality {params.q}")
    q = tower.cardinality(base_level)
    if q != params.q:
        raise RangeError(f"level cardinality {q} != declared q {params.q}")
    split, counts, fast = _census_arrays(
        params, tower, base_level, budget, histogram, threads, force_generic
    )
    total = len(split)
    split_counts: dict[int, int] = {}
    for s in split:
        split_counts[s] = split_counts.get(s, 0) + 1
    red = split_counts.get(1, 0)
    geom_irr = split_counts.get(0, 0)
    irr_geom_red = total - red - geom_irr
    t1 = Fraction(red, total)
    t2 = Fraction(irr_geom_red, total)
    b1 = u1(params.n, params.d, q) if params.d >= 1 else Fraction(0)
    b2 = u2(params.n, params.d, q)
    hist = None
    if histogram:
        hist = {}
        for c in counts:
            hist[c] = hist.get(c, 0) + 1
    return CensusReport(
        params=params,
        q=q,
        total=total,
        count_red_base=red,
        count_irr_geom_red=irr_geom_red,
        count_geom_irr=geom_irr,
        split_counts=split_counts,
        t1=t1,
        t2=t2,
        t=t1 + t2,
        u1_bound=b1,
        u2_bound=b2,
        t1_within_bound=t1 <= b1,
        t2_within_bound=t2 <= b2,
        histogram=hist,
        fast_path=fast,
        threads=max(1, threads),
    )


def count_points(f: Form, level: int | None = None, budget: int = 10**7) -> int:
    """|{P in P^n(level) : f(P) = 0}| by exhaustive evaluation."""
    level = f.level if level is None else level
    if level != f.level:
        f = Form(f.params, f.tower, level, [embed(c, level) for c in f.coeffs])
    q = f.tower.cardinality(level)
    npts = point_count(f.params.n, q)
    if npts > budget:
        raise BudgetExceeded(f"{npts} points exceed budget {budget}")
    return sum(
        1
        for i in range(npts)
        if eval_form(f, point_at_index(f.params.n, f.tower, level, i)).is_zero
    )


def serre_bound(n: int, d: int, Q: int) -> int:
    """d*Q^(n-1) + Q^(n-2) + ... + Q + 1."""
    return d * Q ** (n - 1) + sum(Q**i for i in range(n - 1))


@dataclass
class SerreReport:
    params: ParamSet
    q: int
    bound: int
    total: int
    violations: int
    max_count: int
    attainers: int

    @property
    def all_pass(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.q},
            "bound": str(self.bound),
            "total": str(self.total),
            "violations": str(self.violations),
            "max_count": str(self.max_count),
            "attainers": str(self.attainers),
            "all_pass": self.all_pass,
        }


def check_serre(
    params: ParamSet,
    tower: FieldTower | None = None,
    base_level: int | None = None,
    budget: int = 10**7,
    threads: int = 1,
) -> SerreReport:
    """Point counts of every census member against the degree bound."""
    if tower is None:
        tower, base_level = _default_tower(params.q)
    q = tower.cardinality(base_level)
    _, counts, _ = _census_arrays(params, tower, base_level, budget, True, threads)
    bound = serre_bound(params.n, params.d, q)
    mx = max(counts)
    return SerreReport(
        params,
        q,
        bound,
        len(counts),
        sum(1 for c in counts if c > bound),
        mx,
        sum(1 for c in counts if c == bound),
    )


def cafure_matera_holds(count: int, n: int, d: int, Q: int) -> bool:
    """count <= (Q^(n-1)+...+1) + (d-1)(d-2) Q^(n-3/2) + 5 d^(13/3) Q^(n-2),
    decided exactly: the half-integer power lives in Q(sqrt(Q)); the cube
    root is handled by comparing cubes after a sign analysis."""
    series = sum(Q**i for i in range(n))
    # Delta = count - series - (d-1)(d-2) Q^(n-3/2), an element of Q(sqrt(Q))
    delta = QSqrt(count - series, -(d - 1) * (d - 2) * Q ** (n - 2), Q)
    if delta.sign() <= 0:
        return True
    # remaining test: Delta <= 5 d^(13/3) Q^(n-2), both sides positive
    lhs_cubed = delta * delta * delta
    rhs_cubed = QSqrt(125 * d**13 * Q ** (3 * (n - 2)), 0, Q)
    return (lhs_cubed - rhs_cubed).sign() <= 0


@dataclass
class CafureMateraReport:
    params: ParamSet
    q: int
    geom_irreducible: int
    violations: int
    max_count: int

    @property
    def all_pass(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.q},
            "geom_irreducible": str(self.geom_irreducible),
            "violations": str(self.violations),
            "max_count": str(self.max_count),
            "all_pass": self.all_pass,
        }


def check_cafure_matera(
    params: ParamSet,
    tower: FieldTower | None = None,
    base_level: int | None = None,
    budget: int = 10**7,
    threads: int = 1,
) -> CafureMateraReport:
    """Point counts of every geometrically irreducible census member
    against the irreducible-hypersurface bound, exactly in Q(sqrt(q))."""
    if tower is None:
        tower, base_level = _default_tower(params.q)
    q = tower.cardinality(base_level)
    split, counts, _ = _census_arrays(params, tower, base_level, budget, True, threads)
    geom_counts = [c for s, c in zip(split, counts) if s == 0]
    distinct = sorted(set(geom_counts))
    ok = {c: cafure_matera_holds(c, params.n, params.d, q) for c in distinct}
    return CafureMateraReport(
        params,
        q,
        len(geom_counts),
        sum(1 for c in geom_counts if not ok[c]),
        max(geom_counts) if geom_counts else 0,
    )


@dataclass
class SpaceFillingReport:
    params: ParamSet
    q: int
    point_total: int
    max_count: int
    space_filling: int
    first_example_index: int | None

    @property
    def none_filling(self) -> bool:
        return self.space_filling == 0

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.q},
            "point_total": str(self.point_total),
            "max_count": str(self.max_count),
            "space_filling": str(self.space_filling),
            "first_example_index": self.first_example_index,
            "none_filling": self.none_filling,
        }


def check_space_filling(
    params: ParamSet,
    tower: FieldTower | None = None,
    base_level: int | None = None,
    budget: int = 10**7,
    threads: int = 1,
) -> SpaceFillingReport:
    """Does any degree-d form over F_q vanish at every point of P^n(F_q)?

    For d <= q none can (the census confirms it); for d > q fillers may
    exist, e.g. the product of all q+1 linear forms on P^1.
    """
    if tower is None:
        tower, base_level = _default_tower(params.q)
    q = tower.cardinality(base_level)
    _, counts, _ = _census_arrays(params, tower, base_level, budget, True, threads)
    npts = point_count(params.n, q)
    filling = [i for i, c in enumerate(counts) if c == npts]
    return SpaceFillingReport(
        params,
        q,
        npts,
        max(counts),
        len(filling),
        filling[0] if filling else None,
    )
