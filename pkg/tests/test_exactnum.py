"""Exact surd/power-sum arithmetic and sign decisions."""

import json
from fractions import Fraction

import pytest

from freepoint import (
    PowSum,
    QSqrt,
    RangeError,
    mixed_sign,
    prime_power,
    qsqrt_sign,
    round_decimal,
)

HALF = Fraction(1, 2)


def test_prime_power_decomposition():
    assert prime_power(2) == (2, 1)
    assert prime_power(7) == (7, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(343) == (7, 3)
    with pytest.raises(RangeError):
        prime_power(12)
    with pytest.raises(RangeError):
        prime_power(1)


def test_round_decimal_ties_away_from_zero():
    assert round_decimal(Fraction(1, 8), 2) == "0.13"
    assert round_decimal(Fraction(-1, 8), 2) == "-0.13"
    assert round_decimal(Fraction(5, 2), 0) == "3"
    assert round_decimal(Fraction(-1, 1000), 2) == "0.00"  # no "-0.00"
    assert round_decimal(Fraction(7, 3), 3) == "2.333"


def test_qsqrt_arithmetic():
    x = QSqrt(1, 2, 3)  # 1 + 2*sqrt(3)
    y = QSqrt(2, -1, 3)  # 2 - sqrt(3)
    assert x + y == QSqrt(3, 1, 3)
    assert x - y == QSqrt(-1, 3, 3)
    # (1 + 2s)(2 - s) = 2 - s + 4s - 2*3 = -4 + 3s
    assert x * y == QSqrt(-4, 3, 3)
    assert 2 * x == QSqrt(2, 4, 3)
    assert 1 - y == QSqrt(-1, 1, 3)
    with pytest.raises(RangeError):
        x + QSqrt(1, 1, 5)
    with pytest.raises(RangeError):
        QSqrt(1, 1, 1)


def test_qsqrt_perfect_square_folds():
    z = QSqrt(1, 1, 4)  # 1 + sqrt(4) = 3
    assert z.is_rational
    assert z.to_fraction() == 3
    assert z == 3
    with pytest.raises(RangeError):
        QSqrt(0, 1, 3).to_fraction()


def test_qsqrt_sign_quadrants_and_near_ties():
    assert qsqrt_sign(QSqrt(0, 0, 2)) == 0
    assert qsqrt_sign(QSqrt(2, 0, 2)) == 1
    assert qsqrt_sign(QSqrt(0, -1, 2)) == -1
    assert qsqrt_sign(QSqrt(1, 1, 2)) == 1
    assert qsqrt_sign(QSqrt(-1, -1, 2)) == -1
    # 7 - 4*sqrt(3): 49 vs 48, barely positive
    assert qsqrt_sign(QSqrt(7, -4, 3)) == 1
    assert qsqrt_sign(QSqrt(-7, 4, 3)) == -1
    # 2 - sqrt(5): 4 vs 5, negative
    assert qsqrt_sign(QSqrt(2, -1, 5)) == -1
    assert qsqrt_sign(QSqrt(-2, 1, 5)) == 1


def test_powsum_canonicalization():
    s = PowSum(3, [(1, 1), (-1, 1), (Fraction(1, 2), 0)])
    assert s.terms == {Fraction(0): HALF}
    assert PowSum(3).sign() == 0
    assert PowSum.rational(3, Fraction(2, 7)).to_fraction() == Fraction(2, 7)
    with pytest.raises(RangeError):
        PowSum(12)


def test_powsum_addition_and_convolution():
    a = PowSum.of(3, (1, 1), (1, HALF))  # 3 + sqrt(3)
    b = PowSum.of(3, (1, HALF), (-1, 0))  # sqrt(3) - 1
    assert (a + b).terms == {Fraction(1): Fraction(1), HALF: Fraction(2), Fraction(0): Fraction(-1)}
    # (3 + s)(s - 1) = 3^(3/2) - 3^(1/2); the middle terms cancel exactly
    prod = a * b
    assert prod.terms == {Fraction(3, 2): Fraction(1), HALF: Fraction(-1)}
    # and the value equals 2*sqrt(3)
    assert (prod - PowSum.of(3, (2, HALF))).is_zero
    assert (a - a).is_zero
    assert (3 * b).terms == {HALF: Fraction(3), Fraction(0): Fraction(-3)}
    assert a.shifted(2).terms == {Fraction(3): Fraction(1), Fraction(5, 2): Fraction(1)}
    with pytest.raises(RangeError):
        a + PowSum.of(5, (1, 1))


def test_powsum_exact_zero_detection():
    s = PowSum.of(3, (1, HALF), (1, 0))  # 1 + sqrt(3)
    t = PowSum.of(3, (-1, HALF), (1, 0))  # 1 - sqrt(3)
    assert (s * t + 2).is_zero  # (1+s)(1-s) = 1 - 3 = -2
    # value zero without the term dict being empty: 2^2 - 4
    assert PowSum.of(2, (1, 2), (-4, 0)).sign() == 0
    # a vanishing leading cluster must not mask the tail
    assert PowSum.of(2, (1, 300), (-4, 298), (1, 0)).sign() == 1
    assert PowSum.of(2, (1, 300), (-4, 298), (-1, 0)).sign() == -1


def test_powsum_sign_with_huge_exponent_spread():
    # 3^(10^8) dominates 10^6 * 3^(10^7); no huge integer materializes
    assert PowSum.of(3, (1, 10**8), (-(10**6), 10**7)).sign() == 1
    assert PowSum.of(3, (-1, 10**8), (10**6, 10**7)).sign() == -1
    # domination also works against a large positive tail coefficient
    assert PowSum.of(3, (1, 10**8), (10**6, 10**7), (-(10**9), 0)).sign() == 1


def test_powsum_compare():
    assert PowSum.of(3, (1, 2)).compare(PowSum.of(3, (1, 1))) == 1
    assert PowSum.of(3, (1, 2)).compare(9) == 0
    assert PowSum.of(3, (1, HALF)).compare(2) == -1  # sqrt(3) < 2


def test_powsum_conversions():
    assert PowSum.of(3, (Fraction(5, 2), 3)).to_fraction() == Fraction(135, 2)
    with pytest.raises(RangeError):
        PowSum.of(3, (1, HALF)).to_fraction()
    with pytest.raises(RangeError):
        PowSum.of(3, (1, 10**8)).to_fraction()
    s = PowSum.of(5, (2, 0), (3, HALF))
    assert s.to_qsqrt() == QSqrt(2, 3, 5)
    assert PowSum.of(5, (1, Fraction(1, 4))).to_qsqrt() is None


def test_powsum_interval_and_decimal():
    s = PowSum.of(2, (1, HALF))  # sqrt(2)
    lo, hi = s.interval(6)
    assert lo < hi
    assert lo * lo < 2 < hi * hi
    assert hi - lo <= Fraction(1, 10**5)
    assert s.decimal(4) == "1.4142"
    assert PowSum.rational(3, Fraction(1, 8)).decimal(2) == "0.13"
    assert (-1 * s).decimal(2) == "-1.41"


def test_powsum_serialization_is_deterministic():
    s1 = PowSum.of(3, (Fraction(1, 3), HALF), (-2, 4))
    s2 = PowSum.of(3, (-2, 4), (Fraction(1, 3), HALF))
    assert s1 == s2
    assert json.dumps(s1.serialize()) == json.dumps(s2.serialize())
    doc = s1.serialize()
    assert doc["base"] == 3
    # descending exponent order, all values as strings
    assert [t["exponent"]["num"] for t in doc["terms"]] == ["4", "1"]
    assert doc["terms"][0]["coeff"] == {"num": "-2", "den": "1"}


def test_mixed_sign_across_bases():
    # 3*sqrt(2) - sqrt(5) > 0 since 18 > 5
    assert mixed_sign([(3, 2, HALF), (-1, 5, HALF)]) == 1
    assert mixed_sign([(-3, 2, HALF), (1, 5, HALF)]) == -1
    # sqrt(8) = 2*sqrt(2): same radical after canonicalization
    assert mixed_sign([(1, 8, HALF), (-2, 2, HALF)]) == 0
    # 3/2 - sqrt(3) < 0 since 9/4 < 3
    assert mixed_sign([(Fraction(3, 2), 9, 0), (-1, 3, HALF)]) == -1
    assert mixed_sign([(1, 3, 2), (-9, 2, 0)]) == 0
    assert mixed_sign([]) == 0
