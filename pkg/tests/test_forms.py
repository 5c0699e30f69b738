"""Forms, points, canonical enumeration orders, and product arithmetic."""

import pytest

from freepoint import (
    BudgetExceeded,
    Form,
    ParamSet,
    ProjectivePoint,
    RaggedInput,
    TowerMismatch,
    enumerate_forms,
    enumerate_monomials,
    enumerate_projective_points,
    eval_form,
    extended_tower,
    form_at_index,
    form_count,
    make_tower,
    monomial_index,
    multiply_forms,
    point_at_index,
    point_count,
)


def test_param_set_sizes():
    assert ParamSet(2, 3, 3).m == 10
    assert ParamSet(2, 3, 3).r == 6
    assert ParamSet(2, 2, 3).m == 6
    assert ParamSet(1, 2, 3).m == 3
    assert ParamSet(3, 4, 5).m == 35


def test_monomials_descending_lex():
    assert enumerate_monomials(2, 2) == (
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
    )
    monos = enumerate_monomials(2, 3)
    assert len(monos) == 10
    assert all(sum(m) == 3 for m in monos)
    assert monos[0] == (3, 0, 0) and monos[-1] == (0, 0, 3)
    idx = monomial_index(2, 3)
    assert [idx[m] for m in monos] == list(range(10))


def test_form_counts():
    assert form_count(ParamSet(2, 2, 3), 3) == 364
    assert form_count(ParamSet(2, 3, 3), 3) == 29524
    assert form_count(ParamSet(2, 2, 3), 3, up_to_scalar=False) == 3**6 - 1


def test_form_at_index_enumerates_scalar_classes_once(tower_q3):
    params = ParamSet(1, 2, 3)
    total = form_count(params, 3)
    assert total == 13
    seen = set()
    for i in range(total):
        f = form_at_index(params, tower_q3, 0, i)
        # representative is pivot-normalized
        lead = next(c for c in f.coeffs if not c.is_zero)
        assert lead.val == tower_q3.one_raw(0)
        seen.add(f.raw_coeffs)
    assert len(seen) == total
    # every scalar class hit: normalize an exhaustive sweep
    classes = set()
    for a in range(3):
        for b in range(3):
            for c in range(3):
                if a == b == c == 0:
                    continue
                coeffs = [tower_q3.element(0, v) for v in (a, b, c)]
                classes.add(Form(params, tower_q3, 0, coeffs).normalized().raw_coeffs)
    assert classes == seen


def test_enumerate_forms_without_scalar_quotient(tower_q3):
    params = ParamSet(1, 1, 3)
    all_forms = list(enumerate_forms(params, tower_q3, 0, up_to_scalar=False))
    assert len(all_forms) == 3**2 - 1
    classes = {f.normalized().raw_coeffs for f in all_forms}
    assert len(classes) == 4  # (9-1)/(3-1)


def test_enumerate_forms_budget(tower_q3):
    with pytest.raises(BudgetExceeded):
        list(enumerate_forms(ParamSet(2, 3, 3), tower_q3, 0, budget=100))


def test_point_enumeration_normalized(tower_q3):
    total = point_count(2, 3)
    assert total == 13
    pts = list(enumerate_projective_points(2, tower_q3, 0))
    assert len(pts) == 13
    assert len(set(pts)) == 13
    for P in pts:
        lead = next(c for c in P.coords if not c.is_zero)
        assert lead.val == tower_q3.one_raw(0)
    # same point different scale collapses
    P = ProjectivePoint(tower_q3, 0, [2, 1, 0])
    Q = ProjectivePoint(tower_q3, 0, [1, 2, 0])
    assert P == Q


def test_point_at_index_round_trip(tower_q3):
    ext = extended_tower(tower_q3, 2)
    total = point_count(1, 9)
    assert total == 10
    pts = [point_at_index(1, ext, 1, i) for i in range(total)]
    assert len(set(pts)) == total


def test_eval_form(tower_q3):
    # f = x0^2 + 2 x1 x2 at (1 : 2 : 1) over F_3 -> 1 + 2*2*1 = 5 = 2
    params = ParamSet(2, 2, 3)
    coeffs = [1, 0, 0, 0, 2, 0]
    f = Form(params, tower_q3, 0, coeffs)
    P = ProjectivePoint(tower_q3, 0, [1, 2, 1])
    assert eval_form(f, P).val == 2
    # vanishing: x0^2 at (0 : 1 : 0)
    g = Form(params, tower_q3, 0, [1, 0, 0, 0, 0, 0])
    assert eval_form(g, ProjectivePoint(tower_q3, 0, [0, 1, 0])).is_zero


def test_multiply_forms(tower_q3):
    one_var = ParamSet(1, 1, 3)
    # (x0 + x1)(x0 - x1) = x0^2 - x1^2 = x0^2 + 2 x1^2 over F_3
    f = Form(one_var, tower_q3, 0, [1, 1])
    g = Form(one_var, tower_q3, 0, [1, 2])
    prod = multiply_forms(f, g)
    assert prod.params.d == 2
    assert prod.raw_coeffs == (1, 0, 2)


def test_multiply_forms_rejects_mismatches(tower_q3):
    t5 = make_tower(5)
    f3 = Form(ParamSet(1, 1, 3), tower_q3, 0, [1, 1])
    f5 = Form(ParamSet(1, 1, 5), t5, 0, [1, 1])
    with pytest.raises(TowerMismatch):
        multiply_forms(f3, f5)
    g = Form(ParamSet(2, 1, 3), tower_q3, 0, [1, 0, 0])
    with pytest.raises(RaggedInput):
        multiply_forms(f3, g)


def test_zero_form_has_no_class(tower_q3):
    f = Form(ParamSet(1, 1, 3), tower_q3, 0, [0, 0])
    assert f.is_zero
    with pytest.raises(RaggedInput):
        f.normalized()
    with pytest.raises(RaggedInput):
        ProjectivePoint(tower_q3, 0, [0, 0])


def test_form_serialization_round_trip(tower_q3):
    ext = extended_tower(tower_q3, 2)
    params = ParamSet(1, 2, 3)
    f = Form(params, ext, 1, [ext.gen(1), ext.one(1), ext.element_at_index(1, 5)])
    back = Form.from_dict(f.to_dict())
    assert back.raw_coeffs == f.raw_coeffs
    assert back.params == params
    P = ProjectivePoint(ext, 1, [ext.gen(1), ext.one(1)])
    assert ProjectivePoint.from_dict(P.to_dict()) == P
