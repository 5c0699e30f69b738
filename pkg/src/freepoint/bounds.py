"""Exact verification of the combinatorial inequality chain.

The quantities here control the proportion of degree-d hypersurfaces in
P^n over F_q that fail to be geometrically irreducible:

* N_i = C(n+d,d) - C(n+i,n) - C(n+d-i,n) and M_e = C(d+n,n) - e*C(d/e+n,n)
  are codimension counts;
* u1 = sum_{i=1..floor(d/2)} q^-N_i bounds the reducible proportion,
  u2 = sum_{e|d, e>1} q^-M_e the irreducible-but-geometrically-reducible
  proportion;
* v1, v2 are closed-form majorants of u1 + u2 for n >= 3 and n = 2
  respectively, and Theta(q,d) = (d-1)*q*v2, Psi(q,d) majorizes
  (d-1)*q*v1; both are at most 2 in their hypothesis ranges.

Every inequality is decided by the exact sign engine — values are
PowSum/Fraction/QSqrt, never floats.  Checks outside their hypotheses
are reported as skipped, never as failures.  `check_claim_chain`
verifies the point-count comparison that finishes the main counting
argument, replacing the cube root in 5*d^(13/3) by the smallest integer
D with D^3 >= 125*d^13 (a rational majorant that still closes the
inequality); `check_qd_case` handles the easy q > d degree argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import gmpy2

from .errors import HypothesisViolated, NotADivisor, ParamMismatch, RangeError
from .exactnum import PowSum, QSqrt, mixed_sign, qsqrt_sign, round_decimal  # noqa: F401

__all__ = [
    "n_i",
    "m_e",
    "u1",
    "u2",
    "u1_power_sum",
    "u2_power_sum",
    "v1",
    "v2",
    "theta",
    "psi",
    "LemmaCheck",
    "BoundsReport",
    "check_lemma_chain",
    "ClaimReport",
    "check_claim_chain",
    "QdReport",
    "check_qd_case",
    "theta_nonincreasing_in_q",
    "psi_grid_max_at_3",
    "exact_json",
    "qsqrt_sign",
]


def n_i(n: int, d: int, i: int) -> int:
    """C(n+d,d) - C(n+i,n) - C(n+d-i,n); may be -1 at i = 0."""
    if not (0 <= i <= d):
        raise RangeError(f"need 0 <= i <= d, got i={i}, d={d}")
    if n < 1:
        raise RangeError("need n >= 1")
    return comb(n + d, d) - comb(n + i, n) - comb(n + d - i, n)


def m_e(n: int, d: int, e: int) -> int:
    """C(d+n,n) - e*C(d/e+n,n) for a divisor e > 1 of d."""
    if n < 1:
        raise RangeError("need n >= 1")
    if e <= 1 or d % e != 0:
        raise NotADivisor(f"{e} is not a divisor > 1 of {d}")
    return comb(d + n, n) - e * comb(d // e + n, n)


def _check_q(q: int) -> None:
    if q < 2:
        raise RangeError("need q >= 2")


def u1_power_sum(n: int, d: int, q: int) -> PowSum:
    """sum over i = 1..floor(d/2) of q^(-N_i), as an exact power sum."""
    _check_q(q)
    if d < 1:
        raise RangeError("need d >= 1")
    pairs = []
    for i in range(1, d // 2 + 1):
        ni = n_i(n, d, i)
        if ni < 0:
            raise RangeError(f"negative exponent N_{i} = {ni}")
        pairs.append((Fraction(1), Fraction(-ni)))
    return PowSum(q, pairs)


def u2_power_sum(n: int, d: int, q: int) -> PowSum:
    """sum over divisors e > 1 of d of q^(-M_e), as an exact power sum."""
    _check_q(q)
    if d < 1:
        raise RangeError("need d >= 1")
    pairs = []
    for e in range(2, d + 1):
        if d % e == 0:
            me = m_e(n, d, e)
            if me < 0:
                raise RangeError(f"negative exponent M_{e} = {me}")
            pairs.append((Fraction(1), Fraction(-me)))
    return PowSum(q, pairs)


def u1(n: int, d: int, q: int) -> Fraction:
    return u1_power_sum(n, d, q).to_fraction()


def u2(n: int, d: int, q: int) -> Fraction:
    return u2_power_sum(n, d, q).to_fraction()


def v1(n: int, d: int, q: int) -> PowSum:
    """(3/2) q^(-n(n+d-1)/2 + n+1) + (d-1) q^(-(1/4)C(n,2)d^2 + d-1).

    Exponents may be half- or quarter-integers, so the value is returned
    as a PowSum; use .to_qsqrt() / .to_fraction() where they apply.
    """
    _check_q(q)
    if n < 1 or d < 1:
        raise RangeError("need n, d >= 1")
    return PowSum.of(
        q,
        (Fraction(3, 2), Fraction(-n * (n + d - 1), 2) + n + 1),
        (d - 1, -Fraction(comb(n, 2) * d * d, 4) + d - 1),
    )


def v2(d: int, q: int) -> PowSum:
    """(29/27) q^(2-d) + (d-1) q^(-(1/4)d^2 + d - 1)."""
    _check_q(q)
    if d < 1:
        raise RangeError("need d >= 1")
    return PowSum.of(
        q,
        (Fraction(29, 27), 2 - d),
        (d - 1, -Fraction(d * d, 4) + d - 1),
    )


def theta(q: int, d: int) -> PowSum:
    """Theta(q,d) = (d-1)*q*v2 = (d-1)((29/27)q^(3-d) + (d-1)q^(-d^2/4+d))."""
    return (d - 1) * v2(d, q).shifted(1)


def psi(q: int, d: int) -> PowSum:
    """Psi(q,d) = (d-1)((3/2)q^(5-(3/2)(d+2)) + (d-1)q^(-(3/4)d^2+d))."""
    _check_q(q)
    if d < 1:
        raise RangeError("need d >= 1")
    return (d - 1) * PowSum.of(
        q,
        (Fraction(3, 2), 5 - Fraction(3, 2) * (d + 2)),
        (d - 1, -Fraction(3, 4) * d * d + d),
    )


# -- report plumbing -----------------------------------------------------


def exact_json(value) -> dict:
    """Serialize an exact value (int / Fraction / QSqrt / PowSum) to JSON
    using string-encoded integers; never floats."""
    if isinstance(value, bool):
        raise RangeError("booleans are not exact values")
    if isinstance(value, int):
        return {"num": str(value), "den": "1"}
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, QSqrt):
        return value.to_dict()
    if isinstance(value, PowSum):
        try:
            return exact_json(value.to_fraction(max_power=4096))
        except RangeError:
            pass
        qs = value.to_qsqrt(max_power=4096)
        if qs is not None:
            return qs.to_dict()
        return value.serialize()
    raise RangeError(f"cannot serialize {type(value).__name__}")


def decimal_of(value, places: int) -> str:
    """Correctly rounded decimal rendering of an exact value."""
    if isinstance(value, bool):
        raise RangeError("booleans are not exact values")
    if isinstance(value, int):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return round_decimal(value, places)
    if isinstance(value, QSqrt):
        value = PowSum(value.q, [(value.a, 0), (value.b, Fraction(1, 2))])
    if isinstance(value, PowSum):
        return value.decimal(places)
    raise RangeError(f"cannot render {type(value).__name__}")


@dataclass
class LemmaCheck:
    """Outcome of one inequality check.

    holds is None exactly when the hypotheses are not met (skipped);
    slack is the exact margin (>= 0 means the inequality holds).
    """

    name: str
    applicable: bool
    holds: bool | None
    slack: object | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "slack": None if self.slack is None else exact_json(self.slack),
            "note": self.note,
        }


@dataclass
class BoundsReport:
    n: int
    d: int
    q: int
    n_values: list[int]
    m_values: dict[int, int]
    u1_value: PowSum
    u2_value: PowSum
    v1_value: PowSum
    v2_value: PowSum
    theta_value: PowSum
    psi_value: PowSum
    checks: list[LemmaCheck] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)

    def failed(self) -> list[LemmaCheck]:
        return [c for c in self.checks if c.applicable and not c.holds]

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.n, "d": self.d, "q": self.q},
            "n_values": [str(v) for v in self.n_values],
            "m_values": {str(e): str(v) for e, v in sorted(self.m_values.items())},
            "u1": exact_json(self.u1_value),
            "u2": exact_json(self.u2_value),
            "v1": exact_json(self.v1_value),
            "v2": exact_json(self.v2_value),
            "theta": exact_json(self.theta_value),
            "psi": exact_json(self.psi_value),
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
        }


def _nonneg(x) -> bool:
    """Exact `x >= 0` for int / Fraction / PowSum slack values."""
    if isinstance(x, PowSum):
        return x.sign() >= 0
    return x >= 0


def check_lemma_chain(n: int, d: int, q: int) -> BoundsReport:
    """Run every inequality in the chain at one parameter point.

    Each check gates on its own hypotheses; skipped checks carry
    holds=None.  Any applicable check that fails would contradict the
    underlying mathematics, so callers treat failures as showstoppers.
    """
    if n < 2 or d < 1:
        raise RangeError("chain needs n >= 2 and d >= 1")
    _check_q(q)
    nv = [n_i(n, d, i) for i in range(d + 1)]
    mv = {e: m_e(n, d, e) for e in range(2, d + 1) if d % e == 0}
    u1v = u1_power_sum(n, d, q)
    u2v = u2_power_sum(n, d, q)
    v1v = v1(n, d, q)
    v2v = v2(d, q)
    checks: list[LemmaCheck] = []

    def add(name, applicable, slack=None, note="", holds=None):
        if not applicable:
            checks.append(LemmaCheck(name, False, None, None, note))
        else:
            ok = _nonneg(slack) if holds is None else holds
            checks.append(LemmaCheck(name, True, ok, slack, note))

    # consecutive-gap bound: N_{i+1} - N_i >= d-2i-1 while 2(i+1) <= d
    idx = [i for i in range(d) if 2 * (i + 1) <= d]
    if idx:
        gaps = [nv[i + 1] - nv[i] - (d - 2 * i - 1) for i in idx]
        observed = min(nv[i + 1] - nv[i] for i in idx)
        add(
            "gap-consecutive",
            True,
            min(gaps),
            note=f"min observed gap {observed}; tested against d-2i-1",
        )
        # the gap equals a sum of d-2i-1 binomials C(n-2+j, n-2), j = i+2..d-i
        ident_ok = all(
            nv[i + 1] - nv[i]
            == sum(comb(n - 2 + j, n - 2) for j in range(i + 2, d - i + 1))
            and (d - i) - (i + 2) + 1 == d - 2 * i - 1
            for i in idx
        )
        add(
            "gap-identity",
            True,
            holds=ident_ok,
            slack=0 if ident_ok else -1,
            note="N_{i+1}-N_i equals the Pascal sum with exactly d-2i-1 terms",
        )
    else:
        add("gap-consecutive", False, note="no index with 2(i+1) <= d")
        add("gap-identity", False, note="no index with 2(i+1) <= d")
    # distance to the first term: N_{i+1} - N_1 >= d-3, valid for i >= 1
    idx1 = [i for i in idx if i >= 1]
    if idx1:
        add(
            "gap-to-first",
            True,
            min(nv[i + 1] - nv[1] - (d - 3) for i in idx1),
            note="i >= 1 only; at i = 0 the difference is 0 < d-3 for d > 3",
        )
    else:
        add("gap-to-first", False, note="needs an index with 1 <= i, 2(i+1) <= d")
    # N_1 >= n(n+d-1)/2 - (n+1)
    add(
        "n1-lower",
        d >= 1,
        Fraction(nv[1]) - (Fraction(n * (n + d - 1), 2) - (n + 1)) if d >= 1 else None,
    )
    # M_e >= C(e,2) C(n,2) (d/e)^2 - e + 1 and the weaker quarter bound
    if mv:
        add(
            "me-pair-lower",
            True,
            min(
                Fraction(me) - (comb(e, 2) * comb(n, 2) * Fraction(d, e) ** 2 - e + 1)
                for e, me in mv.items()
            ),
        )
        add(
            "me-quarter-lower",
            True,
            min(
                Fraction(me) - (Fraction(comb(n, 2) * d * d, 4) - d + 1)
                for me in mv.values()
            ),
        )
        add("divisor-count", True, (d - 1) - len(mv), note="at most d-1 divisors > 1")
    else:
        for nm in ("me-pair-lower", "me-quarter-lower", "divisor-count"):
            add(nm, False, note="no divisors e > 1")
    # bracket factor 1 + (d/2 - 1) q^(3-d), bounded by 29/27 resp. 3/2
    if d >= 2:
        bracket = PowSum.of(q, (1, 0), (Fraction(d, 2) - 1, 3 - d))
        add(
            "u1-bracket-29-27",
            q >= 3 and d >= 6,
            PowSum.rational(q, Fraction(29, 27)) - bracket
            if q >= 3 and d >= 6
            else None,
            note="maximum 29/27 attained at q=3, d=6",
        )
        add(
            "u1-bracket-3-2",
            q >= 3 and d >= 3,
            PowSum.rational(q, Fraction(3, 2)) - bracket
            if q >= 3 and d >= 3
            else None,
            note="maximum 3/2 attained at q=3, d=3",
        )
    # u1 against its two closed-form bounds
    add(
        "u1-n2-bound",
        n == 2 and q >= 3 and d >= 6,
        PowSum.of(q, (Fraction(29, 27), 2 - d)) - u1v
        if n == 2 and q >= 3 and d >= 6
        else None,
    )
    add(
        "u1-n3-bound",
        n >= 3 and q >= 3 and d >= 3,
        PowSum.of(q, (Fraction(3, 2), Fraction(-n * (n + d - 1), 2) + n + 1)) - u1v
        if n >= 3 and q >= 3 and d >= 3
        else None,
    )
    # u2 against its closed-form bound
    add(
        "u2-bound",
        q >= 3 and d >= 3,
        PowSum.of(q, (d - 1, -Fraction(comb(n, 2) * d * d, 4) + d - 1)) - u2v
        if q >= 3 and d >= 3
        else None,
    )
    # u1 + u2 <= v1 / v2 in the respective hypothesis ranges
    add(
        "t-le-v1",
        n >= 3 and q >= 3 and d >= 3,
        v1v - u1v - u2v if n >= 3 and q >= 3 and d >= 3 else None,
    )
    add(
        "t-le-v2",
        n == 2 and q >= 3 and d >= 6,
        v2v - u1v - u2v if n == 2 and q >= 3 and d >= 6 else None,
    )
    # (d-1) q v2 <= 2 via Theta, and (d-1) q v1 <= 2 via Psi
    if n == 2 and q >= 3 and d >= 6:
        lhs = (d - 1) * v2v.shifted(1)
        add("theta-identity", True, holds=(lhs - theta(q, d)).sign() == 0, slack=0)
        add("v2-times-dq", True, PowSum.rational(q, 2) - lhs)
    else:
        add("theta-identity", False, note="needs n=2, q>=3, d>=6")
        add("v2-times-dq", False, note="needs n=2, q>=3, d>=6")
    if n >= 3 and q >= 3 and d >= 3:
        lhs = (d - 1) * v1v.shifted(1)
        add(
            "v1-majorant-at-3",
            True,
            psi(q, d) - lhs,
            note="Psi substitutes n=3, the worst case for n >= 3",
        )
        add("v1-times-dq", True, PowSum.rational(q, 2) - lhs)
    else:
        add("v1-majorant-at-3", False, note="needs n>=3, q>=3, d>=3")
        add("v1-times-dq", False, note="needs n>=3, q>=3, d>=3")

    return BoundsReport(
        n, d, q, nv, mv, u1v, u2v, v1v, v2v, theta(q, d), psi(q, d), checks
    )


def theta_nonincreasing_in_q(d: int, qs: tuple[int, ...] = (3, 4, 5, 7, 9)) -> bool:
    """Theta(q,d) <= Theta(q',d) for q >= q' on the grid, decided exactly."""
    if d < 6:
        raise HypothesisViolated("Theta comparison needs d >= 6")

    def terms(qq):
        return [
            (Fraction(29, 27) * (d - 1), qq, Fraction(3 - d)),
            (Fraction((d - 1) * (d - 1)), qq, -Fraction(d * d, 4) + d),
        ]

    qs = sorted(qs)
    for lo_q, hi_q in zip(qs, qs[1:]):
        diff = terms(hi_q) + [(-c, b, g) for c, b, g in terms(lo_q)]
        if mixed_sign(diff) > 0:
            return False
    return True


def psi_grid_max_at_3(d_max: int = 40) -> bool:
    """Psi(3,d) <= Psi(3,3) for 3 <= d <= d_max, decided exactly."""
    top = psi(3, 3)
    return all((top - psi(3, d)).sign() >= 0 for d in range(3, d_max + 1))


@dataclass
class ClaimStep:
    name: str
    holds: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass
class ClaimReport:
    n: int
    d: int
    q: int
    m: int
    cube_majorant: int
    steps: list[ClaimStep]

    @property
    def all_pass(self) -> bool:
        return all(s.holds for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.n, "d": self.d, "q": self.q, "m": self.m},
            "cube_majorant": str(self.cube_majorant),
            "steps": [s.to_dict() for s in self.steps],
            "all_pass": self.all_pass,
        }


def _cube_root_ceiling(x: int) -> int:
    r, exact = gmpy2.iroot(x, 3)
    return int(r) if exact else int(r) + 1


def _power_exceeds(q: int, e: int, bound: int) -> bool:
    """q^e > bound, with early exit so e may be astronomically large."""
    acc = 1
    for _ in range(e):
        acc *= q
        if acc > bound:
            return True
    return acc > bound


def check_claim_chain(n: int, d: int, q: int, m: int) -> ClaimReport:
    """Verify the lower-order-term comparison that closes the counting
    argument, step by step, entirely in exact arithmetic.

    The irrational 5*d^(13/3) is replaced by the smallest integer D with
    D^3 >= 125*d^13; closing the inequality with D closes it a fortiori
    with the original term.
    """
    if n < 2 or d < 3 or q < 3:
        raise HypothesisViolated("claim chain needs n >= 2, d >= 3, q >= 3")
    if m != comb(n + d, n):
        raise ParamMismatch(f"m must equal C(n+d,n) = {comb(n + d, n)}, got {m}")
    steps: list[ClaimStep] = []

    floor_m = (d + 2) * (d + 1) // 2
    steps.append(
        ClaimStep(
            "m-at-least-triangular",
            m >= floor_m >= 10,
            {"m": str(m), "triangular": str(floor_m)},
        )
    )

    # geometric tail: q^(m(n-2)) + ... + 1 < q^(m(n-1)) / (1000 q)
    # reduces to q^m - 1 > 1000 q
    tail_ok = _power_exceeds(q, m, 1000 * q + 1)
    steps.append(
        ClaimStep("tail-vs-thousandth", tail_ok, {"inequality": "q^m - 1 > 1000q"})
    )

    cube = _cube_root_ceiling(125 * d**13)
    divided = PowSum.of(
        q,
        ((d - 1) * (d - 2), 1 - Fraction(m, 2)),
        (cube, 1 - m),
        (Fraction(1, 1000), 0),
    )
    lhs_minus_one = divided - 1
    steps.append(
        ClaimStep(
            "divided-form",
            lhs_minus_one.sign() < 0,
            {
                "statement": "(d-1)(d-2)q^(1-m/2) + 1/1000 + D q^(1-m) < 1",
                "cube_majorant": str(cube),
            },
        )
    )

    # (1 + 2/q) X + X/q == X + 3 X/q  (X = q^(m(n-1)); exact identity)
    merged = (
        PowSum.of(q, (1, 0), (2, -1), (1, -1)) - PowSum.of(q, (1, 0), (3, -1))
    ).sign() == 0
    steps.append(
        ClaimStep(
            "head-merge",
            merged,
            {"statement": "(1+2/q)X + X/q = X + 3X/q", "note": "exact equality"},
        )
    )

    steps.append(
        ClaimStep(
            "final-comparison",
            q + 3 <= q * q - q,
            {"lhs": str(q + 3), "rhs": str(q * q - q)},
        )
    )

    return ClaimReport(n, d, q, m, cube, steps)


@dataclass
class QdReport:
    n: int
    d: int
    q: int
    m: int
    lhs: int
    rhs: int
    holds: bool
    equality: bool

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.n, "d": self.d, "q": self.q, "m": self.m},
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
            "boundary": self.d == self.q - 1,
        }


def check_qd_case(n: int, d: int, q: int) -> QdReport:
    """Degree argument for q > d: a union of all degree-d hypersurfaces
    over F_q has degree d*(q^(m-1)+...+1) <= q^m - 1, hence cannot
    contain every point of P^n(F_{q^m}).  Equality holds iff d = q-1.
    """
    if q <= d:
        raise HypothesisViolated(f"needs q > d, got q={q}, d={d}")
    if n < 1 or d < 1:
        raise RangeError("need n, d >= 1")
    m = comb(n + d, n)
    rhs = q**m - 1
    lhs = d * (rhs // (q - 1))
    return QdReport(n, d, q, m, lhs, rhs, lhs <= rhs, lhs == rhs)
