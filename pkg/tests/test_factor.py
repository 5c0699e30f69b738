"""Form division, reducibility verdicts, point counts, censuses."""

from fractions import Fraction

import pytest

from freepoint import (
    BudgetExceeded,
    Form,
    ParamSet,
    RangeError,
    cafure_matera_holds,
    census,
    check_cafure_matera,
    check_serre,
    check_space_filling,
    count_points,
    divide_forms,
    extended_tower,
    is_geometrically_reducible,
    is_reducible_over,
    make_tower,
    monomial_index,
    multiply_forms,
    serre_bound,
)


def _form(params, tower, level, entries):
    """Form from a {exponent tuple: coefficient} dict."""
    idx = monomial_index(params.n, params.d)
    coeffs = [0] * params.m
    for mono, c in entries.items():
        coeffs[idx[mono]] = c
    return Form(params, tower, level, coeffs)


def test_divide_forms_exact_quotient():
    t = make_tower(3)
    lin = ParamSet(1, 1, 3)
    g = _form(lin, t, 0, {(1, 0): 1, (0, 1): 1})  # x0 + x1
    h = _form(lin, t, 0, {(1, 0): 1, (0, 1): 2})  # x0 + 2 x1
    f = multiply_forms(g, h)
    assert divide_forms(f, g) == h
    assert divide_forms(f, h) == g
    # (x0 + x1) does not divide x0^2 + x1^2 over F_3
    sq = _form(ParamSet(1, 2, 3), t, 0, {(2, 0): 1, (0, 2): 1})
    assert divide_forms(sq, g) is None


def test_divide_forms_input_guards():
    t = make_tower(3)
    lin = ParamSet(1, 1, 3)
    g = _form(lin, t, 0, {(1, 0): 1})
    f = _form(ParamSet(1, 2, 3), t, 0, {(2, 0): 1})
    with pytest.raises(RangeError):
        divide_forms(g, f)  # divisor degree exceeds dividend degree
    with pytest.raises(RangeError):
        divide_forms(f, Form(lin, t, 0, [0, 0]))  # zero divisor
    t5 = make_tower(5)
    with pytest.raises(RangeError):
        divide_forms(f, _form(lin, t5, 0, {(1, 0): 1}))


def test_reducible_witness_multiplies_back():
    t = make_tower(3)
    f = _form(ParamSet(1, 2, 3), t, 0, {(2, 0): 1})  # x0^2
    rep = is_reducible_over(f)
    assert rep.base_reducible and rep.verdict == "reducible"
    g, h = rep.base_witness
    assert multiply_forms(g, h) == f
    doc = rep.to_dict()
    assert doc["verdict"] == "reducible" and "witness" in doc
    with pytest.raises(RangeError):
        is_reducible_over(Form(ParamSet(1, 2, 3), t, 0, [0, 0, 0]))


def test_geometric_split_degree_two():
    # x0^2 + x1^2 is irreducible over F_3 (-1 is a non-square) but
    # splits into conjugate lines over F_9
    t = make_tower(3)
    f = _form(ParamSet(1, 2, 3), t, 0, {(2, 0): 1, (0, 2): 1})
    assert not is_reducible_over(f).base_reducible
    rep = is_geometrically_reducible(f)
    assert not rep.base_reducible
    assert rep.geom_reducible and rep.split_degree == 2
    assert rep.geometric_verdict == "geom-reducible"


def test_geometric_split_degree_three():
    # homogenized t^3 - t + 1, irreducible over F_3, norm-splits over F_27
    t = make_tower(3)
    f = _form(
        ParamSet(1, 3, 3), t, 0, {(3, 0): 1, (1, 2): -1 % 3, (0, 3): 1}
    )
    rep = is_geometrically_reducible(f)
    assert not rep.base_reducible
    assert rep.geom_reducible and rep.split_degree == 3


def test_geometrically_irreducible_conic():
    # a smooth conic in P^2 stays irreducible over the closure
    t = make_tower(3)
    f = _form(
        ParamSet(2, 2, 3), t, 0, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}
    )
    rep = is_geometrically_reducible(f)
    assert rep.geom_reducible is False
    assert rep.split_degree is None
    assert rep.geometric_verdict == "geom-irreducible"
    # a base-reducible form short-circuits with split degree 1
    pair = _form(ParamSet(2, 2, 3), t, 0, {(1, 1, 0): 1})
    rep = is_geometrically_reducible(pair)
    assert rep.base_reducible and rep.split_degree == 1


def test_count_points_on_plane_curves():
    t = make_tower(3)
    plane = ParamSet(2, 1, 3)
    line = _form(plane, t, 0, {(1, 0, 0): 1})
    assert count_points(line) == 4  # q + 1
    quad = ParamSet(2, 2, 3)
    pair = _form(quad, t, 0, {(1, 1, 0): 1})  # x0 * x1
    assert count_points(pair) == 7  # 2(q+1) - 1
    conic = _form(quad, t, 0, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    assert count_points(conic) == 4  # smooth conic again has q + 1
    with pytest.raises(BudgetExceeded):
        count_points(line, budget=3)


def test_census_q2_exact_counts(census_222):
    r = census_222
    assert r.total == 63
    assert r.t1 == Fraction(4, 9)
    assert r.t2 == Fraction(1, 9)
    assert (r.count_red_base, r.count_irr_geom_red, r.count_geom_irr) == (28, 7, 28)
    assert r.conserved
    assert r.fast_path


def test_census_quadrics_q3(census_223):
    r = census_223
    assert r.total == 364
    assert (r.count_red_base, r.count_irr_geom_red) == (91, 39)
    assert r.t1 == Fraction(1, 4)
    assert r.t2 == Fraction(3, 28)
    assert r.t1_within_bound and r.t2_within_bound
    assert r.histogram == {1: 39, 4: 247, 7: 78}
    assert r.split_counts == {0: 234, 1: 91, 2: 39}
    assert r.degree_sum == 728


def test_census_cubics_q3(census_233):
    r = census_233
    assert r.total == 29524
    assert (r.count_red_base, r.count_irr_geom_red, r.count_geom_irr) == (
        4004,
        248,
        25272,
    )
    assert r.t1 == Fraction(91, 671)
    assert r.t2 == Fraction(62, 7381)
    assert r.u1_bound == Fraction(1, 3)
    assert r.u2_bound == Fraction(1, 3)
    assert r.t1_within_bound and r.t2_within_bound
    assert r.histogram[0] == 144
    assert r.histogram[10] == 52
    assert sum(r.histogram.values()) == 29524


def test_census_quadrics_q4(census_224):
    r = census_224
    assert r.total == 1365
    assert (r.count_red_base, r.count_irr_geom_red) == (231, 126)
    assert r.t1 == Fraction(11, 65)
    assert r.t2 == Fraction(6, 65)


def test_census_report_serialization(census_223):
    doc = census_223.to_dict()
    assert doc["total"] == "364"
    assert doc["t1"] == {"num": "1", "den": "4"}
    assert doc["histogram"]["7"] == "78"
    assert doc["fast_path"] is True
    # every numeric leaf is a string: exactness survives JSON
    assert all(isinstance(v, str) for v in doc["split_counts"].values())


def test_fast_path_matches_generic_classifier(census_223):
    slow = census(ParamSet(2, 2, 3), histogram=True, force_generic=True)
    assert not slow.fast_path
    assert slow.split_counts == census_223.split_counts
    assert slow.histogram == census_223.histogram
    assert slow.t1 == census_223.t1 and slow.t2 == census_223.t2


def test_census_thread_invariance(census_223):
    threaded = census(ParamSet(2, 2, 3), histogram=True, threads=3)
    assert threaded.split_counts == census_223.split_counts
    assert threaded.histogram == census_223.histogram


def test_census_guards():
    with pytest.raises(BudgetExceeded):
        census(ParamSet(2, 2, 3), budget=10)
    t = make_tower(3)
    with pytest.raises(RangeError):
        census(ParamSet(2, 2, 4), tower=t, base_level=0)
    with pytest.raises(RangeError):
        census(ParamSet(2, 2, 4), tower=t)
    # an explicit tower level works when the cardinality matches
    ext = extended_tower(t, 2)
    r = census(ParamSet(2, 2, 9), tower=ext, base_level=1, budget=10**6)
    assert r.q == 9 and r.conserved


def test_serre_bound_and_check():
    assert serre_bound(2, 2, 3) == 7
    assert serre_bound(3, 2, 3) == 2 * 9 + 3 + 1
    rep = check_serre(ParamSet(2, 2, 3))
    assert rep.all_pass
    assert rep.bound == 7
    assert rep.max_count == 7  # the bound is attained...
    assert rep.attainers == 78  # ...by every split pair of lines
    assert rep.violations == 0


def test_cafure_matera_exact_boundary():
    # threshold for (n,d,Q) = (2,3,3): 4 + 2*sqrt(3) + 5*3^(13/3) ~ 591.5
    assert cafure_matera_holds(591, 2, 3, 3)
    assert not cafure_matera_holds(592, 2, 3, 3)
    # far below the bound, the surd never enters
    assert cafure_matera_holds(4, 2, 3, 3)
    rep = check_cafure_matera(ParamSet(2, 2, 3))
    assert rep.all_pass
    assert rep.geom_irreducible == 234


def test_space_filling_census():
    # d <= q: no plane quadric over F_3 passes through all 13 points
    rep = check_space_filling(ParamSet(2, 2, 3))
    assert rep.none_filling
    assert rep.point_total == 13
    # d > q: x0*x1*(x0+x1) vanishes on all of P^1(F_2)
    rep = check_space_filling(ParamSet(1, 3, 2))
    assert not rep.none_filling
    assert rep.point_total == 3
    assert rep.max_count == 3
    assert rep.first_example_index is not None
