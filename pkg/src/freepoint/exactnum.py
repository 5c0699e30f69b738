"""Exact arithmetic for power sums and quadratic surds.

Everything in the verification pipeline that is not an integer is one of:

* a rational number (``fractions.Fraction``),
* an element a + b*sqrt(q) of Q(sqrt(q)) (`QSqrt`),
* a finite sum  sum_i c_i * q^(g_i)  with rational coefficients c_i and
  rational exponents g_i over a fixed prime-power base q (`PowSum`).

Signs of all three are decided exactly, with no floating point anywhere:

* QSqrt by case analysis on the signs of a, b and comparison of a^2
  against b^2*q;
* PowSum by normalizing the base to its prime p, splitting the terms
  into clusters separated by large exponent gaps, evaluating each
  cluster exactly in the ring Z[p^(1/D)] (zero iff every coefficient of
  the reduced polynomial in p^(1/D) vanishes, since X^D - p is
  irreducible by Eisenstein), bounding the cluster away from zero by
  interval refinement with integer D-th roots, and dominating the tail
  by an early-exit power comparison.  Clusters are widened and the
  procedure restarted whenever domination fails, so the answer is
  always a proof.  Exponents of magnitude ~10^8 never materialize as
  integers; only intra-cluster gaps do.

For comparisons that mix different bases (e.g. values at q = 3 and
q = 5) `mixed_sign` canonicalizes every term to coeff * p^f with p prime
and f in [0, 1), merges exactly, and uses the linear independence of
distinct prime radicals over Q (denominators here are at most 4, the
classical textbook case) for the zero test, falling back to interval
refinement for the sign.  The mixed path materializes integer parts of
exponents and is only used at moderate scale.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm

import gmpy2

from .errors import RangeError

_MAX_CLUSTER_SPREAD = 10**6  # guard against materializing absurd powers


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p^k with p prime, or raise RangeError."""
    if q < 2:
        raise RangeError(f"{q} is not a prime power")
    for p in range(2, isqrt(q) + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise RangeError("base has two distinct prime factors")
            return p, k
    return q, 1


def _nth_root_interval(p: int, d: int, digits: int) -> tuple[Fraction, Fraction]:
    """Rational lo < p^(1/d) < hi with hi - lo = 10^-digits."""
    scale = 10**digits
    s, exact = gmpy2.iroot(p * scale**d, d)
    s = int(s)
    if exact:
        v = Fraction(s, scale)
        return v, v
    return Fraction(s, scale), Fraction(s + 1, scale)


def round_decimal(x: Fraction, places: int) -> str:
    """x rounded to `places` decimals, ties away from zero."""
    scale = 10**places
    if x >= 0:
        units = (x * scale + Fraction(1, 2)).__floor__()
        sign = ""
    else:
        units = (-x * scale + Fraction(1, 2)).__floor__()
        sign = "-" if units else ""
    whole, frac = divmod(units, scale)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


class QSqrt:
    """An exact element a + b*sqrt(q) of Q(sqrt(q)), q a fixed integer >= 2.

    When q is a perfect square the surd part folds into the rational
    part, so b = 0 is canonical there.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q: int):
        if q < 2:
            raise RangeError("QSqrt needs q >= 2")
        a, b = Fraction(a), Fraction(b)
        r = isqrt(q)
        if r * r == q and b:
            a += b * r
            b = Fraction(0)
        self.a, self.b, self.q = a, b, q

    def _same(self, other) -> "QSqrt":
        if isinstance(other, QSqrt):
            if other.q != self.q:
                raise RangeError("mixing different surds")
            return other
        return QSqrt(other, 0, self.q)

    def __add__(self, other):
        o = self._same(other)
        return QSqrt(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._same(other)
        return QSqrt(
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = self._same(other)
        except (RangeError, TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise RangeError("irrational QSqrt has no Fraction value")
        return self.a

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: |a| vs |b|*sqrt(q) decided by squaring
        lhs, rhs = a * a, b * b * self.q
        if lhs == rhs:
            return 0  # only possible when sqrt(q) is rational; folded already
        bigger_rational = lhs > rhs
        if a > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def to_dict(self) -> dict:
        return {
            "num": str(self.a.numerator),
            "den": str(self.a.denominator),
            "sqrt_coeff": {
                "num": str(self.b.numerator),
                "den": str(self.b.denominator),
            },
            "sqrt_of": self.q,
        }

    def __repr__(self):
        return f"QSqrt({self.a} + {self.b}*sqrt({self.q}))"


def qsqrt_sign(x: QSqrt) -> int:
    """Exact sign of a + b*sqrt(q): -1, 0, or +1."""
    return x.sign()


class PowSum:
    """An exact finite sum of rational multiples of powers of one base.

    Terms are kept canonical: a map exponent -> coefficient with no zero
    coefficients.  The base must be a prime power; exponents are
    arbitrary rationals (in practice denominators 1, 2 or 4).
    """

    __slots__ = ("base", "terms")

    def __init__(self, base: int, terms=None):
        self.base = base
        prime_power(base)  # validates
        canon: dict[Fraction, Fraction] = {}
        if terms:
            if isinstance(terms, dict):
                pairs = [(c, g) for g, c in terms.items()]
            else:
                pairs = list(terms)
            for coeff, exponent in pairs:
                c, g = Fraction(coeff), Fraction(exponent)
                if c:
                    acc = canon.get(g, Fraction(0)) + c
                    if acc:
                        canon[g] = acc
                    else:
                        canon.pop(g, None)
        self.terms = canon

    @classmethod
    def of(cls, base: int, *pairs) -> "PowSum":
        """PowSum.of(q, (c1, g1), (c2, g2), ...) builds sum c_i * q^g_i."""
        return cls(base, list(pairs))

    @classmethod
    def rational(cls, base: int, value) -> "PowSum":
        return cls(base, [(Fraction(value), Fraction(0))])

    def _same(self, other) -> "PowSum":
        if isinstance(other, PowSum):
            if other.base != self.base:
                raise RangeError("mixing PowSum bases; use mixed_sign")
            return other
        return PowSum(self.base, [(Fraction(other), Fraction(0))])

    def __add__(self, other):
        o = self._same(other)
        merged = dict(self.terms)
        out = PowSum(self.base)
        for g, c in o.terms.items():
            merged[g] = merged.get(g, Fraction(0)) + c
        out.terms = {g: c for g, c in merged.items() if c}
        return out

    __radd__ = __add__

    def __neg__(self):
        out = PowSum(self.base)
        out.terms = {g: -c for g, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowSum):
            o = self._same(other)
            acc: dict[Fraction, Fraction] = {}
            for g1, c1 in self.terms.items():
                for g2, c2 in o.terms.items():
                    g = g1 + g2
                    acc[g] = acc.get(g, Fraction(0)) + c1 * c2
            out = PowSum(self.base)
            out.terms = {g: c for g, c in acc.items() if c}
            return out
        c = Fraction(other)
        out = PowSum(self.base)
        if c:
            out.terms = {g: c * t for g, t in self.terms.items()}
        return out

    __rmul__ = __mul__

    def shifted(self, exponent) -> "PowSum":
        """Multiply by base^exponent (pure exponent shift)."""
        e = Fraction(exponent)
        out = PowSum(self.base)
        out.terms = {g + e: c for g, c in self.terms.items()}
        return out

    # -- exact sign ----------------------------------------------------

    def sign(self) -> int:
        """Exact sign by cluster domination; see the module docstring."""
        if not self.terms:
            return 0
        p, k = prime_power(self.base)
        terms = sorted(
            ((g * k, c) for g, c in self.terms.items()), key=lambda t: t[0], reverse=True
        )
        window = Fraction(128)
        total_spread = terms[0][0] - terms[-1][0]
        while True:
            verdict = _sign_attempt(p, terms, window)
            if verdict is not None:
                return verdict
            if window > total_spread:
                raise RangeError(
                    "sign undecided with all terms in one cluster (impossible)"
                )
            window *= 4

    @property
    def is_zero(self) -> bool:
        return self.sign() == 0

    def compare(self, other) -> int:
        """Sign of self - other."""
        return (self - self._same(other)).sign()

    # -- conversions -----------------------------------------------------

    def to_fraction(self, max_power: int = 100_000) -> Fraction:
        acc = Fraction(0)
        b = Fraction(self.base)
        for g, c in self.terms.items():
            if g.denominator != 1:
                raise RangeError("fractional exponent has no rational value")
            if abs(g) > max_power:
                raise RangeError("exponent too large to materialize")
            acc += c * b ** int(g)
        return acc

    def to_qsqrt(self, max_power: int = 100_000) -> QSqrt | None:
        """Exact QSqrt rendering when all exponents are half-integers
        of manageable size; None otherwise."""
        a = Fraction(0)
        b = Fraction(0)
        q = Fraction(self.base)
        for g, c in self.terms.items():
            if abs(g) > max_power:
                return None
            if g.denominator == 1:
                a += c * q ** int(g)
            elif g.denominator == 2:
                b += c * q ** int(g - Fraction(1, 2))
            else:
                return None
        return QSqrt(a, b, self.base)

    def interval(self, digits: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure of width shrinking with `digits`.

        Requires the full exponent spread to be moderate; intended for
        printing values, not for the sign decision.
        """
        if not self.terms:
            return Fraction(0), Fraction(0)
        p, k = prime_power(self.base)
        terms = [(g * k, c) for g, c in self.terms.items()]
        gmin = min(g for g, _ in terms)
        floor_gmin = gmin.__floor__()
        spread = max(g for g, _ in terms) - floor_gmin
        if spread > _MAX_CLUSTER_SPREAD:
            raise RangeError("value too spread out to print")
        lo, hi = _poly_interval(p, [(g - floor_gmin, c) for g, c in terms], digits)
        scale = Fraction(p) ** floor_gmin
        return lo * scale, hi * scale

    def decimal(self, places: int) -> str:
        """Correctly rounded fixed-point rendering."""
        digits = places + 8
        while True:
            lo, hi = self.interval(digits)
            slo, shi = round_decimal(lo, places), round_decimal(hi, places)
            if slo == shi:
                return slo
            digits *= 2
            if digits > 10_000:
                raise RangeError("value sits on a rounding boundary")

    def serialize(self) -> dict:
        return {
            "base": self.base,
            "terms": [
                {
                    "coeff": {"num": str(c.numerator), "den": str(c.denominator)},
                    "exponent": {"num": str(g.numerator), "den": str(g.denominator)},
                }
                for g, c in sorted(self.terms.items(), reverse=True)
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, PowSum):
            return NotImplemented
        return self.base == other.base and self.terms == other.terms

    def __hash__(self):
        return hash((self.base, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"PowSum({self.base}: 0)"
        body = " + ".join(
            f"({c})*{self.base}^({g})" for g, c in sorted(self.terms.items(), reverse=True)
        )
        return f"PowSum({body})"


def _cluster_sign(p: int, cluster: list) -> tuple[int, Fraction] | None:
    """Exact sign of sum c_i p^(g_i) for a cluster of bounded spread.

    Returns None when the cluster sums to exactly zero, else
    (sign, lower_bound) with 0 < lower_bound <= |sum| after factoring
    out p^(min exponent); the bound is relative to that factor.
    """
    gmin = cluster[-1][0]
    spread = cluster[0][0] - gmin
    if spread > _MAX_CLUSTER_SPREAD:
        raise RangeError("cluster spread exceeds the materialization guard")
    shifted = [(g - gmin, c) for g, c in cluster]
    dcount = lcm(*(g.denominator for g, _ in shifted))
    # reduce to a polynomial in theta = p^(1/D): coefficient per residue
    coeffs = [Fraction(0)] * dcount
    for g, c in shifted:
        t = int(g * dcount)
        quo, rem = divmod(t, dcount)
        coeffs[rem] += c * Fraction(p) ** quo
    if not any(coeffs):
        return None
    if dcount == 1:
        v = coeffs[0]
        return (1 if v > 0 else -1), abs(v)
    digits = 8
    while True:
        lo, hi = _theta_poly_interval(p, dcount, coeffs, digits)
        if lo > 0:
            return 1, lo
        if hi < 0:
            return -1, -hi
        digits *= 2
        if digits > 1_000_000:  # pragma: no cover - value would be zero
            raise RangeError("interval refinement failed to separate from zero")


def _theta_poly_interval(
    p: int, dcount: int, coeffs: list[Fraction], digits: int
) -> tuple[Fraction, Fraction]:
    tlo, thi = _nth_root_interval(p, dcount, digits)
    lo = hi = Fraction(0)
    plo, phi = Fraction(1), Fraction(1)
    for j in range(dcount):
        c = coeffs[j]
        if c > 0:
            lo += c * plo
            hi += c * phi
        elif c < 0:
            lo += c * phi
            hi += c * plo
        plo *= tlo
        phi *= thi
    return lo, hi


def _poly_interval(p: int, terms: list, digits: int) -> tuple[Fraction, Fraction]:
    """Interval for sum c_i p^(d_i), d_i >= 0 rationals of moderate size."""
    dcount = lcm(*(g.denominator for g, _ in terms))
    coeffs: dict[int, Fraction] = {}
    for g, c in terms:
        t = int(g * dcount)
        quo, rem = divmod(t, dcount)
        coeffs[rem] = coeffs.get(rem, Fraction(0)) + c * Fraction(p) ** quo
    if dcount == 1:
        v = coeffs.get(0, Fraction(0))
        return v, v
    tlo, thi = _nth_root_interval(p, dcount, digits)
    lo = hi = Fraction(0)
    for rem, c in coeffs.items():
        blo, bhi = tlo**rem, thi**rem
        if c > 0:
            lo += c * blo
            hi += c * bhi
        elif c < 0:
            lo += c * bhi
            hi += c * blo
    return lo, hi


def _dominates(coeff_mass: Fraction, bound: Fraction, gap: Fraction, p: int) -> bool:
    """True if coeff_mass < bound * p^gap, computed with early exit."""
    ratio = coeff_mass / bound
    steps = int(gap.__floor__())
    acc = 1
    for _ in range(steps):
        acc *= p
        if acc > ratio:
            return True
    return acc > ratio


def _sign_attempt(p: int, terms: list, window: Fraction) -> int | None:
    """One pass of cluster domination; None means the window must widen."""
    i, n = 0, len(terms)
    while i < n:
        j = i + 1
        while j < n and terms[j - 1][0] - terms[j][0] <= window:
            j += 1
        cluster = terms[i:j]
        res = _cluster_sign(p, cluster)
        if res is None:
            i = j
            continue
        sign, bound = res
        if j == n:
            return sign
        gap = cluster[-1][0] - terms[j][0]  # > window by construction
        mass = sum(abs(c) for _, c in terms[j:])
        if _dominates(mass, bound, gap, p):
            return sign
        return None
    return 0


def mixed_sign(entries: list[tuple[Fraction, int, Fraction]]) -> int:
    """Exact sign of sum coeff * base^exponent across different bases.

    Each entry is (coeff, base, exponent) with base a prime power.  All
    integer parts of exponents are materialized, so this path is for
    moderate exponents only.  The zero test rests on the linear
    independence over Q of products of distinct prime radicals
    p^(1/D); with the denominators at most 4 that arise here this is
    the classical case.
    """
    rational = Fraction(0)
    surds: dict[tuple[int, Fraction], Fraction] = {}
    for coeff, base, exponent in entries:
        c, g = Fraction(coeff), Fraction(exponent)
        if not c:
            continue
        p, k = prime_power(base)
        g = g * k
        z = g.__floor__()
        f = g - z
        scaled = c * Fraction(p) ** int(z)
        if f == 0:
            rational += scaled
        else:
            key = (p, f)
            surds[key] = surds.get(key, Fraction(0)) + scaled
    surds = {k: v for k, v in surds.items() if v}
    if not surds:
        return (rational > 0) - (rational < 0)
    digits = 8
    while True:
        lo = hi = rational
        for (p, f), c in surds.items():
            rlo, rhi = _nth_root_interval(p, f.denominator, digits)
            blo, bhi = rlo ** f.numerator, rhi ** f.numerator
            if c > 0:
                lo += c * blo
                hi += c * bhi
            else:
                lo += c * bhi
                hi += c * blo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        digits *= 2
        if digits > 1_000_000:  # pragma: no cover - nonzero by independence
            raise RangeError("interval refinement failed to separate from zero")
