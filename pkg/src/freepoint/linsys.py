"""Extremal linear systems of hypersurfaces, and the reducible locus.

Inside the parameter space P^(m-1) of degree-d hypersurfaces of P^n over
F_q (m = C(n+d, n), r = C(n+d-1, n)) two explicit constructions bracket
the reducibility question for linear systems:

  * `build_l_red`: the multiples of a fixed hyperplane H form an
    (r-1)-dimensional system whose F_q-members are all reducible;

  * `build_l_irr`: the degree-d forms over F_q vanishing at a point
    P in F_{q^r} that lies on no degree-(d-1) hypersurface over F_q
    contain an (m-1-r)-dimensional system whose F_q-members are all
    irreducible -- a proper factor would have degree at most d-1 and
    vanish at P.

`verify_members` checks those membership claims exhaustively at desk
scale, `intersection_dimension` certifies that systems of dimension
r (resp. m-r) meet L_irr (resp. L_red), and `reducible_locus_counts`
recounts the reducible hypersurfaces as deduplicated products of
lower-degree classes, an independent pipeline whose union count must
agree exactly with the factor census.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    BudgetExceeded,
    DegreeTooSmall,
    Exhausted,
    ParamMismatch,
    PointNotFree,
    RaggedInput,
    RangeError,
    SearchExhausted,
    TowerMismatch,
)
from .fields import FieldElement, FieldTower, extended_tower
from .forms import Form, ParamSet, ProjectivePoint, multiply_forms
from .orbit import is_free_point, kernel_basis, rref, stacked_condition_rows
from .search import SearchConfig, find_free_point, splitmix64
from .factor import _chunk_ranges, _default_tower, census, is_reducible_over


def _base_prefix(tower: FieldTower, level: int) -> tuple:
    """Identity of the subtower up to `level`; prefix-equal towers share
    raw representations and arithmetic at that level."""
    return (tower.p, tower.key[1][:level])


class LinearSystem:
    """A linear system of degree-d forms over one level, given by a basis.

    Basis independence is enforced at construction time by a rank check,
    so the projective dimension is always exactly len(basis) - 1.
    """

    __slots__ = ("params", "tower", "level", "basis", "kind", "metadata")

    def __init__(
        self,
        params: ParamSet,
        tower: FieldTower,
        level: int,
        basis,
        kind: str = "custom",
        metadata: dict | None = None,
    ):
        basis = list(basis)
        if not basis:
            raise RaggedInput("a linear system needs at least one basis form")
        for i, f in enumerate(basis):
            if f.params != params:
                raise ParamMismatch("basis form parameters differ from the system's")
            if f.level != level or _base_prefix(f.tower, level) != _base_prefix(tower, level):
                raise TowerMismatch("basis form outside the stated level")
            if f.tower.key != tower.key:
                # Same subfield reached through a taller tower: re-wrap the
                # raw coefficients so all members share one arithmetic.
                basis[i] = Form(
                    params, tower, level,
                    [FieldElement(tower, level, c.val) for c in f.coeffs],
                )
        rank, _, _ = rref(tower, level, [list(f.raw_coeffs) for f in basis])
        if rank != len(basis):
            raise RaggedInput("basis forms are linearly dependent")
        self.params = params
        self.tower = tower
        self.level = level
        self.basis = tuple(basis)
        self.kind = kind
        self.metadata = dict(metadata or {})

    @property
    def dimension(self) -> int:
        """Projective dimension of the system."""
        return len(self.basis) - 1

    @property
    def member_count(self) -> int:
        """Number of members up to scalars."""
        q = self.tower.cardinality(self.level)
        k = len(self.basis)
        return (q**k - 1) // (q - 1)

    def member_at_index(self, index: int) -> Form:
        """The index-th member up to scalars (deterministic order).

        Coefficient vectors are normalized pivot-first: the leading
        combination coefficient is 1 and the tail runs through F_q in
        canonical element order, mirroring the form enumeration.
        """
        q = self.tower.cardinality(self.level)
        k = len(self.basis)
        if index < 0:
            raise RangeError("negative member index")
        pivot = 0
        while pivot < k:
            block = q ** (k - 1 - pivot)
            if index < block:
                break
            index -= block
            pivot += 1
        else:
            raise RangeError("member index out of range")
        lam = [self.tower.zero(self.level)] * pivot + [self.tower.one(self.level)]
        for _ in range(pivot + 1, k):
            lam.append(self.tower.element_at_index(self.level, index % q))
            index //= q
        acc = [self.tower.zero(self.level)] * self.params.m
        for lj, f in zip(lam, self.basis):
            if lj.is_zero:
                continue
            for t, c in enumerate(f.coeffs):
                acc[t] = acc[t] + lj * c
        return Form(self.params, self.tower, self.level, acc)

    def members(self, start: int = 0, stop: int | None = None, budget: int | None = None):
        """All members up to scalars, in canonical index order."""
        total = self.member_count
        if budget is not None and total > budget:
            raise BudgetExceeded(f"{total} members exceed budget {budget}")
        stop = total if stop is None else min(stop, total)
        for i in range(start, stop):
            yield self.member_at_index(i)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": {"n": self.params.n, "d": self.params.d, "q": self.params.q},
            "tower": self.tower.to_dict(),
            "level": self.level,
            "basis": [[c.to_json() for c in f.coeffs] for f in self.basis],
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: dict, tower: FieldTower | None = None) -> "LinearSystem":
        tower = tower or FieldTower.from_dict(data["tower"])
        p = data["params"]
        params = ParamSet(p["n"], p["d"], p["q"])
        level = data["level"]
        basis = [Form(params, tower, level, coeffs) for coeffs in data["basis"]]
        return cls(params, tower, level, basis, data.get("kind", "custom"),
                   data.get("metadata"))

    def __repr__(self):
        return (
            f"LinearSystem(kind={self.kind!r}, n={self.params.n}, d={self.params.d}, "
            f"q={self.params.q}, dim={self.dimension})"
        )


def build_l_red(
    params: ParamSet,
    hyperplane: Form | None = None,
    tower: FieldTower | None = None,
    base_level: int | None = None,
) -> LinearSystem:
    """The system of degree-d multiples of a hyperplane; dimension r - 1.

    Defaults to the hyperplane x_0 = 0 over the plain base field.  Every
    member factors as hyperplane * (degree d-1 cofactor), so for d >= 2
    every member is reducible by construction.
    """
    if params.d < 2:
        raise DegreeTooSmall("reducible members need degree at least 2")
    if hyperplane is not None:
        tower, base_level = hyperplane.tower, hyperplane.level
        expected = ParamSet(params.n, 1, params.q)
        if hyperplane.params != expected:
            raise ParamMismatch("hyperplane must be a degree-1 form with matching n, q")
        if tower.cardinality(base_level) != params.q:
            raise TowerMismatch("hyperplane coefficients do not live in F_q")
        if hyperplane.is_zero:
            raise RaggedInput("zero form does not define a hyperplane")
    else:
        if tower is None:
            tower, base_level = _default_tower(params.q)
        elif base_level is None:
            base_level = tower.level_of_cardinality(params.q)
            if base_level is None:
                raise TowerMismatch(f"tower has no level of cardinality {params.q}")
        one = tower.one(base_level)
        zero = tower.zero(base_level)
        hyperplane = Form(
            ParamSet(params.n, 1, params.q),
            tower,
            base_level,
            [one] + [zero] * params.n,
        )
    lower = ParamSet(params.n, params.d - 1, params.q)
    basis = []
    for j in range(lower.m):
        coeffs = [tower.zero(base_level)] * lower.m
        coeffs[j] = tower.one(base_level)
        basis.append(multiply_forms(hyperplane, Form(lower, tower, base_level, coeffs)))
    return LinearSystem(
        params,
        tower,
        base_level,
        basis,
        kind="red",
        metadata={"hyperplane": [c.to_json() for c in hyperplane.coeffs]},
    )


@dataclass
class VanishingSpace:
    """Degree-d forms over F_q vanishing at a degree-(d-1)-free point.

    The point's coordinates generate F_{q^r} (r = C(n+d-1, n)), so its
    vanishing condition splits into at most r F_q-linear conditions on
    the m coefficients, and the measured dimension is at least m - r.
    """

    params: ParamSet
    point: ProjectivePoint
    base_level: int
    basis: list[Form]
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def guaranteed_minimum(self) -> int:
        return self.params.m - self.params.r

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.params.q},
            "point": [c.to_json() for c in self.point.coords],
            "point_level": self.point.level,
            "dimension": self.dimension,
            "guaranteed_minimum": self.guaranteed_minimum,
            "condition_rank": self.rank,
        }


def vanishing_space(P: ProjectivePoint, params: ParamSet, base_level: int | None = None) -> VanishingSpace:
    """Kernel basis of the evaluation conditions P imposes on degree-d forms.

    Requires P to be free for degree d-1 (no degree-(d-1) hypersurface
    over F_q through it); otherwise the construction's guarantee about
    irreducible members would be void and PointNotFree is raised.
    """
    if params.d < 2:
        raise DegreeTooSmall("the construction needs degree at least 2")
    tower = P.tower
    if base_level is None:
        base_level = tower.level_of_cardinality(params.q)
        if base_level is None:
            raise TowerMismatch(f"point's tower has no level of cardinality {params.q}")
    reduced = ParamSet(params.n, params.d - 1, params.q)
    cert = is_free_point(P, base_level, reduced)
    if not cert.free:
        raise PointNotFree(
            f"a degree-{reduced.d} form over F_{params.q} vanishes at the point: "
            f"{cert.witness_form!r}"
        )
    rows, _ = stacked_condition_rows([P], params)
    kern = kernel_basis(tower, base_level, rows, params.m)
    basis = [
        Form(params, tower, base_level, [FieldElement(tower, base_level, c) for c in v])
        for v in kern
    ]
    return VanishingSpace(params, P, base_level, basis, params.m - len(kern))


def build_l_irr(
    params: ParamSet,
    point: ProjectivePoint | None = None,
    tower: FieldTower | None = None,
    base_level: int | None = None,
    seed: int = 0,
    budget: int = 10**7,
) -> LinearSystem:
    """An (m-1-r)-dimensional system with every F_q-member irreducible.

    The generating point comes from the sweep search over F_{q^r} unless
    one is supplied; its coordinates are recorded in the metadata so the
    construction can be replayed.
    """
    if params.d < 2:
        raise DegreeTooSmall("irreducibility is only constrained from degree 2 on")
    reduced = ParamSet(params.n, params.d - 1, params.q)
    if point is None:
        if tower is None:
            tower, base_level = _default_tower(params.q)
        elif base_level is None:
            base_level = tower.level_of_cardinality(params.q)
            if base_level is None:
                raise TowerMismatch(f"tower has no level of cardinality {params.q}")
        if tower.top != base_level:
            raise ParamMismatch(
                "supply the free point explicitly when the tower already "
                "extends past the base level"
            )
        ext = extended_tower(tower, reduced.m)
        config = SearchConfig(strategy="sweep", seed=seed, budget=budget)
        try:
            cert = find_free_point(reduced, ext, config, base_level)
        except Exhausted as exc:
            raise SearchExhausted(
                f"no degree-{reduced.d}-free point found within budget {budget}"
            ) from exc
        point = cert.point
    vs = vanishing_space(point, params)
    take = params.m - params.r
    basis = vs.basis[:take]
    return LinearSystem(
        params,
        point.tower,
        vs.base_level,
        basis,
        kind="irr",
        metadata={
            "point": [c.to_json() for c in point.coords],
            "point_level": point.level,
            "seed": seed,
            "strategy": "sweep",
            "vanishing_dimension": vs.dimension,
            "basis_taken": take,
        },
    )


@dataclass
class MemberReport:
    """Outcome of factoring every member of a system up to scalars."""

    params: ParamSet
    kind: str
    predicate: str
    total: int
    checked: int
    counterexamples: list[dict] = field(default_factory=list)
    threads: int = 1

    @property
    def all_match(self) -> bool:
        return self.checked == self.total and not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.params.q},
            "kind": self.kind,
            "predicate": self.predicate,
            "total": self.total,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "all_match": self.all_match,
        }


def verify_members(
    system: LinearSystem,
    predicate: str,
    budget: int = 10**6,
    threads: int = 1,
) -> MemberReport:
    """Factor every F_q-member of the system and compare to the predicate.

    `predicate` is "reducible" or "irreducible"; a member with the
    opposite verdict is recorded as a counterexample (index, combination
    pivot layout and coefficients, plus the divisor witness if any).
    """
    if predicate not in ("reducible", "irreducible"):
        raise RaggedInput("predicate must be 'reducible' or 'irreducible'")
    total = system.member_count
    if total > budget:
        raise BudgetExceeded(f"{total} members exceed budget {budget}")
    expect_reducible = predicate == "reducible"

    def run(rng: tuple[int, int]) -> tuple[int, list[dict]]:
        checked = 0
        bad = []
        for i in range(rng[0], rng[1]):
            member = system.member_at_index(i)
            report = is_reducible_over(member)
            checked += 1
            if report.base_reducible != expect_reducible:
                entry = {
                    "index": i,
                    "coefficients": [c.to_json() for c in member.coeffs],
                    "verdict": report.verdict,
                }
                if report.base_witness is not None:
                    g, _ = report.base_witness
                    entry["divisor"] = [c.to_json() for c in g.coeffs]
                bad.append(entry)
        return checked, bad

    ranges = _chunk_ranges(total, threads)
    if len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            parts = list(pool.map(run, ranges))
    else:
        parts = [run(r) for r in ranges]
    checked = sum(c for c, _ in parts)
    counterexamples = [e for _, bad in parts for e in bad]
    return MemberReport(
        system.params, system.kind, predicate, total, checked, counterexamples, threads
    )


def _intersection_kernel(L1: LinearSystem, L2: LinearSystem) -> list[list]:
    if L1.params != L2.params:
        raise ParamMismatch("systems have different parameters")
    if L1.level != L2.level or _base_prefix(L1.tower, L1.level) != _base_prefix(
        L2.tower, L2.level
    ):
        raise TowerMismatch("systems live over different fields")
    m = L1.params.m
    rows = [
        [f.coeffs[t].val for f in L1.basis] + [g.coeffs[t].val for g in L2.basis]
        for t in range(m)
    ]
    return kernel_basis(L1.tower, L1.level, rows, len(L1.basis) + len(L2.basis))


def intersection_dimension(L1: LinearSystem, L2: LinearSystem) -> int:
    """Projective dimension of span(L1) ∩ span(L2); -1 when trivial.

    A kernel vector (a, b) of the stacked coefficient matrix encodes
    sum(a_i * basis1_i) = -sum(b_j * basis2_j), and that correspondence
    identifies the kernel with the intersection of the two spans.
    """
    return len(_intersection_kernel(L1, L2)) - 1


def intersection_member(L1: LinearSystem, L2: LinearSystem) -> Form | None:
    """A common member of both systems, or None when they do not meet."""
    kern = _intersection_kernel(L1, L2)
    if not kern:
        return None
    tower, level = L1.tower, L1.level
    alpha = kern[0][: len(L1.basis)]
    acc = [tower.zero(level)] * L1.params.m
    for a, f in zip(alpha, L1.basis):
        el = FieldElement(tower, level, a)
        if el.is_zero:
            continue
        for t, c in enumerate(f.coeffs):
            acc[t] = acc[t] + el * c
    member = Form(L1.params, tower, level, acc)
    # The alpha block cannot vanish on its own: independence of each
    # basis would then force the whole kernel vector to zero.
    return member.normalized()


def random_system(
    params: ParamSet,
    dim: int,
    seed: int,
    tower: FieldTower | None = None,
    base_level: int | None = None,
) -> LinearSystem:
    """A seeded pseudo-random system of the requested projective dimension.

    Coefficient digits come from the splitmix64 counter stream with
    rejection sampling, so the construction is reproducible and unbiased;
    dependent draws are discarded until the basis has full rank.
    """
    if dim < 0:
        raise RangeError("projective dimension must be nonnegative")
    if dim + 1 > params.m:
        raise RangeError(f"no independent family of {dim + 1} forms in dimension {params.m}")
    if tower is None:
        tower, base_level = _default_tower(params.q)
    elif base_level is None:
        base_level = tower.level_of_cardinality(params.q)
        if base_level is None:
            raise TowerMismatch(f"tower has no level of cardinality {params.q}")
    q = params.q
    limit = (2**64 // q) * q
    counter = 0

    def digit() -> int:
        nonlocal counter
        while True:
            x = splitmix64(seed, counter)
            counter += 1
            if x < limit:
                return x % q

    basis = []
    rows = []
    while len(basis) < dim + 1:
        coeffs = [tower.element_at_index(base_level, digit()) for _ in range(params.m)]
        form = Form(params, tower, base_level, coeffs)
        if form.is_zero:
            continue
        trial = rows + [list(form.raw_coeffs)]
        rank, _, _ = rref(tower, base_level, [list(r) for r in trial])
        if rank == len(trial):
            basis.append(form)
            rows = trial
    return LinearSystem(params, tower, base_level, basis, kind="custom",
                        metadata={"seed": seed})


@dataclass
class ReducibleLocusReport:
    """Exact reducible-hypersurface counts from the product pipeline.

    split_counts[i] counts scalar classes divisible as (degree i) *
    (degree d-i); the union deduplicates across splits and must agree
    with the factor census.  s = r + n - 1 is the dimension formula for
    the locus, and leading_ratio = union/q^s records the observed
    leading behavior.
    """

    params: ParamSet
    q: int
    split_counts: dict[int, int]
    union_count: int
    s_formula: int
    dim_formula: dict[int, int]
    leading_ratio: Fraction
    census_red_count: int | None = None

    @property
    def sum_counts(self) -> int:
        return sum(self.split_counts.values())

    @property
    def matches_census(self) -> bool | None:
        if self.census_red_count is None:
            return None
        return self.union_count == self.census_red_count

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "d": self.params.d, "q": self.params.q},
            "split_counts": {str(i): c for i, c in sorted(self.split_counts.items())},
            "union_count": self.union_count,
            "sum_counts": self.sum_counts,
            "s_formula": self.s_formula,
            "dim_formula": {str(i): v for i, v in sorted(self.dim_formula.items())},
            "leading_ratio": {
                "num": str(self.leading_ratio.numerator),
                "den": str(self.leading_ratio.denominator),
            },
            "census_red_count": self.census_red_count,
            "matches_census": self.matches_census,
        }


def reducible_locus_counts(
    params: ParamSet,
    tower: FieldTower | None = None,
    base_level: int | None = None,
    budget: int = 10**7,
    cross_check: bool = True,
    threads: int = 1,
) -> ReducibleLocusReport:
    """Count reducible degree-d classes as deduplicated products.

    For each split i + (d-i) = d the scalar classes of both degrees are
    multiplied pairwise; sets deduplicate within and across splits.  The
    union count is compared against the census's reducible count when
    cross_check is set (two independent pipelines, exact agreement).
    """
    if params.d < 2:
        raise DegreeTooSmall("degree-1 forms admit no splits")
    if tower is None:
        tower, base_level = _default_tower(params.q)
    elif base_level is None:
        base_level = tower.level_of_cardinality(params.q)
        if base_level is None:
            raise TowerMismatch(f"tower has no level of cardinality {params.q}")
    n, d, q = params.n, params.d, params.q
    splits = range(1, d // 2 + 1)
    cost = 0
    for i in splits:
        c1 = (q ** comb(n + i, n) - 1) // (q - 1)
        c2 = (q ** comb(n + d - i, n) - 1) // (q - 1)
        cost += c1 * c2
    if cost > budget:
        raise BudgetExceeded(f"{cost} products exceed budget {budget}")

    union: set[tuple] = set()
    split_counts: dict[int, int] = {}
    dim_formula: dict[int, int] = {}
    from .forms import enumerate_forms  # local import keeps module top uncluttered

    for i in splits:
        low = ParamSet(n, i, q)
        high = ParamSet(n, d - i, q)
        cofactors = list(enumerate_forms(high, tower, base_level))
        seen: set[tuple] = set()
        for f1 in enumerate_forms(low, tower, base_level):
            for f2 in cofactors:
                seen.add(multiply_forms(f1, f2).normalized().raw_coeffs)
        split_counts[i] = len(seen)
        union.update(seen)
        dim_formula[i] = comb(n + i, n) + comb(n + d - i, n) - 2

    census_red = None
    if cross_check:
        census_red = census(
            params, tower=tower, base_level=base_level, budget=budget, threads=threads
        ).count_red_base
    s = params.r + n - 1
    return ReducibleLocusReport(
        params,
        q,
        split_counts,
        len(union),
        s,
        dim_formula,
        Fraction(len(union), q**s),
        census_red,
    )
