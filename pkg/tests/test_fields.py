"""Tower arithmetic: construction, canonical indexing, Frobenius, coords."""

import pytest

from freepoint import (
    DivisionByZero,
    FieldTower,
    ModulusNotIrreducible,
    NotPrime,
    TowerMismatch,
    basis_over,
    coords_over,
    element_degree,
    embed,
    extended_tower,
    first_irreducible_modulus,
    frobenius,
    make_tower,
    reassemble,
)


def test_make_tower_rejects_non_primes():
    with pytest.raises(NotPrime):
        make_tower(4)
    with pytest.raises(NotPrime):
        make_tower(1)


def test_prime_field_arithmetic():
    t = make_tower(7)
    a = t.element(0, 3)
    b = t.element(0, 5)
    assert (a + b).val == 1
    assert (a * b).val == 1
    assert (a - b).val == 5
    assert (-a).val == 4
    assert (a / b).val == (3 * 3) % 7  # 5^-1 = 3 mod 7


def test_default_modulus_is_irreducible_and_deterministic():
    t = make_tower(3)
    m1 = first_irreducible_modulus(t, 0, 2)
    m2 = first_irreducible_modulus(t, 0, 2)
    assert m1 == m2
    # the adjoined generator satisfies the modulus
    ext = extended_tower(t, 2)
    g = ext.gen(1)
    acc = ext.zero(1)
    power = ext.one(1)
    for c in m1:
        acc = acc + ext.element(1, c) * power
        power = power * g
    assert acc.is_zero


def test_reducible_modulus_rejected():
    t = make_tower(3)
    # x^2 - 1 = (x-1)(x+1) over F_3
    with pytest.raises(ModulusNotIrreducible):
        extended_tower(t, 2, modulus=[2, 0, 1])


def test_field_cardinalities():
    t = extended_tower(extended_tower(make_tower(3), 2), 2)
    assert t.cardinality(0) == 3
    assert t.cardinality(1) == 9
    assert t.cardinality(2) == 81
    assert t.level_of_cardinality(9) == 1
    assert t.level_of_cardinality(10) is None
    assert t.extension_degree(2, 0) == 4


def test_element_index_round_trip():
    t = extended_tower(make_tower(3), 3)  # F_27
    seen = set()
    for i in range(27):
        x = t.element_at_index(1, i)
        assert t.element_index(x) == i
        seen.add(x.val)
    assert len(seen) == 27
    assert t.element_at_index(1, 0).is_zero
    assert t.element_at_index(1, 1).val == t.one_raw(1)


def test_elements_enumeration_matches_indexing():
    t = extended_tower(make_tower(2), 2)  # F_4
    elems = list(t.elements(1))
    assert len(elems) == 4
    assert [t.element_index(e) for e in elems] == [0, 1, 2, 3]


def test_inverses_in_f27():
    t = extended_tower(make_tower(3), 3)
    one = t.one(1)
    for i in range(1, 27):
        x = t.element_at_index(1, i)
        assert (x * x.inverse()).val == one.val
    with pytest.raises(DivisionByZero):
        t.zero(1).inverse()


def test_pow_matches_repeated_multiplication():
    t = extended_tower(make_tower(5), 2)
    g = t.gen(1)
    acc = t.one(1)
    for e in range(1, 8):
        acc = acc * g
        assert (g**e).val == acc.val
    # multiplicative group order
    assert (g ** (25 - 1)).val == t.one_raw(1)


def test_frobenius_fixes_base_and_generates_conjugates():
    t = extended_tower(make_tower(3), 4)  # F_81 / F_3
    for i in range(3):
        c = embed(t.element(0, i), 1)
        assert frobenius(c, 0).val == c.val
    g = t.gen(1)
    # x -> x^3 iterated 4 times is the identity on F_81
    x = g
    orbit = [x.val]
    for _ in range(3):
        x = frobenius(x, 0)
        orbit.append(x.val)
    assert len(set(orbit)) == 4  # generator has full degree
    assert frobenius(x, 0).val == g.val
    # frobenius is the q-power map
    assert frobenius(g, 0).val == (g**3).val


def test_frobenius_middle_level():
    t = extended_tower(extended_tower(make_tower(3), 2), 3)  # F_3 c F_9 c F_729
    g = t.gen(2)
    # over F_9 the map is x -> x^9
    assert frobenius(g, 1).val == (g**9).val


def test_coords_over_reassemble_round_trip():
    t = extended_tower(extended_tower(make_tower(3), 2), 2)  # F_81 over F_9 over F_3
    x = t.element_at_index(2, 47)
    for base in (0, 1, 2):
        cs = coords_over(x, base)
        assert len(cs) == t.extension_degree(2, base)
        assert reassemble(cs, 2).val == x.val
    # coordinates are F_q-linear
    y = t.element_at_index(2, 33)
    cx, cy, cxy = (coords_over(v, 0) for v in (x, y, x + y))
    assert [(a + b).val for a, b in zip(cx, cy)] == [c.val for c in cxy]


def test_basis_over_spans():
    t = extended_tower(make_tower(2), 3)  # F_8
    bas = basis_over(t, 1, 0)
    assert len(bas) == 3
    # 1, g, g^2
    g = t.gen(1)
    assert bas[0].val == t.one_raw(1)
    assert bas[1].val == g.val
    assert bas[2].val == (g * g).val


def test_element_degree():
    t = extended_tower(make_tower(3), 4)
    g = t.gen(1)
    assert element_degree(g, 0) == 4
    one = t.one(1)
    assert element_degree(one, 0) == 1
    # g^(80/8) spans the subfield of order 3^2: degree 2
    h = g ** ((81 - 1) // (9 - 1))
    assert element_degree(h, 0) == 2


def test_embed_up_and_mismatch():
    t = extended_tower(extended_tower(make_tower(3), 2), 2)
    a = t.element(0, 2)
    up = embed(a, 2)
    assert up.level == 2
    assert coords_over(up, 0)[0].val == 2
    with pytest.raises(TowerMismatch):
        embed(up, 0)  # no downward embedding


def test_tower_serialization_round_trip():
    t = extended_tower(make_tower(3), 10, modulus=[1, 1, 0, 0, 1] + [0] * 5 + [1])
    blob = t.to_dict()
    back = FieldTower.from_dict(blob)
    assert back.key == t.key
    g = back.gen(1)
    # a^10 + a^4 + a + 1 = 0 for the recorded modulus
    assert (g**10 + g**4 + g + back.one(1)).is_zero
