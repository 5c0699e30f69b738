"""Extremal linear systems: construction, membership, intersections."""

import pytest

from freepoint import (
    BudgetExceeded,
    DegreeTooSmall,
    Form,
    LinearSystem,
    ParamMismatch,
    ParamSet,
    PointNotFree,
    ProjectivePoint,
    RaggedInput,
    RangeError,
    SearchConfig,
    TowerMismatch,
    build_l_irr,
    build_l_red,
    divide_forms,
    embed,
    eval_form,
    extended_tower,
    find_free_point,
    intersection_dimension,
    intersection_member,
    is_reducible_over,
    make_tower,
    multiply_forms,
    n_i,
    random_system,
    reducible_locus_counts,
    rref,
    vanishing_space,
    verify_members,
)

P223 = ParamSet(2, 2, 3)  # m = 6, r = 3


def _lift(f: Form, level: int) -> Form:
    return Form(f.params, f.tower, level, [embed(c, level) for c in f.coeffs])


def _in_span(system: LinearSystem, f: Form) -> bool:
    rows = [list(b.raw_coeffs) for b in system.basis]
    rank0, _, _ = rref(system.tower, system.level, [r[:] for r in rows])
    rank1, _, _ = rref(system.tower, system.level, rows + [list(f.raw_coeffs)])
    return rank0 == rank1


def test_l_red_hyperplane_multiples():
    L = build_l_red(P223)
    assert L.kind == "red"
    assert L.dimension == P223.r - 1 == 2
    assert L.member_count == 13
    members = list(L.members())
    assert len({f.raw_coeffs for f in members}) == 13
    hyper = Form(ParamSet(2, 1, 3), L.tower, L.level, [1, 0, 0])
    for f in members:
        assert divide_forms(f, hyper) is not None
    report = verify_members(L, "reducible")
    assert report.all_match and report.total == 13


def test_l_red_custom_hyperplane():
    t = make_tower(3)
    h = Form(ParamSet(2, 1, 3), t, 0, [1, 1, 2])
    L = build_l_red(P223, hyperplane=h)
    assert L.metadata["hyperplane"] == [1, 1, 2]
    assert verify_members(L, "reducible").all_match
    with pytest.raises(DegreeTooSmall):
        build_l_red(ParamSet(2, 1, 3))
    with pytest.raises(RaggedInput):
        build_l_red(P223, hyperplane=Form(ParamSet(2, 1, 3), t, 0, [0, 0, 0]))
    with pytest.raises(ParamMismatch):
        build_l_red(P223, hyperplane=Form(ParamSet(2, 2, 3), t, 0, [1, 0, 0, 0, 0, 0]))


def _free_point_223():
    # a point of P^2(F_27) on no line over F_3
    reduced = ParamSet(2, 1, 3)
    ext = extended_tower(make_tower(3), reduced.m)
    return find_free_point(reduced, ext, SearchConfig(strategy="sweep")).point


def test_vanishing_space_measures_codimension():
    P = _free_point_223()
    vs = vanishing_space(P, P223)
    assert vs.rank == P223.r == 3
    assert vs.dimension == vs.guaranteed_minimum == P223.m - P223.r
    for f in vs.basis:
        assert eval_form(_lift(f, P.level), P).is_zero
    doc = vs.to_dict()
    assert doc["dimension"] == 3 and doc["condition_rank"] == 3


def test_vanishing_space_rejects_non_free_points():
    ext = extended_tower(make_tower(3), 3)
    one = ext.one(1)
    rational = ProjectivePoint(ext, 1, [one, one, one])
    with pytest.raises(PointNotFree):
        vanishing_space(rational, P223)
    with pytest.raises(DegreeTooSmall):
        vanishing_space(rational, ParamSet(2, 1, 3))


def test_l_irr_members_all_irreducible():
    L = build_l_irr(P223)
    assert L.kind == "irr"
    assert L.dimension == P223.m - 1 - P223.r == 2
    assert L.member_count == 13
    report = verify_members(L, "irreducible")
    assert report.all_match and report.checked == 13
    meta = L.metadata
    assert meta["strategy"] == "sweep" and meta["seed"] == 0
    assert meta["vanishing_dimension"] == 3 and meta["basis_taken"] == 3
    # replaying the construction is deterministic
    assert build_l_irr(P223).to_dict() == L.to_dict()


def test_l_irr_over_q4():
    params = ParamSet(2, 2, 4)
    L = build_l_irr(params)
    assert L.member_count == 21
    assert verify_members(L, "irreducible").all_match


def test_l_irr_rejects_ambiguous_tower():
    ext = extended_tower(make_tower(3), 3)
    with pytest.raises(ParamMismatch):
        build_l_irr(P223, tower=ext, base_level=0)
    # supplying the point instead resolves the ambiguity
    L = build_l_irr(P223, point=_free_point_223())
    assert verify_members(L, "irreducible").all_match


def test_member_indexing_is_a_bijection():
    L = build_l_red(P223)
    seen = {L.member_at_index(i).raw_coeffs for i in range(L.member_count)}
    assert len(seen) == L.member_count
    with pytest.raises(RangeError):
        L.member_at_index(L.member_count)
    with pytest.raises(RangeError):
        L.member_at_index(-1)
    with pytest.raises(BudgetExceeded):
        list(L.members(budget=5))


def test_linear_system_construction_guards():
    t = make_tower(3)
    f1 = Form(P223, t, 0, [1, 0, 0, 0, 0, 0])
    f2 = Form(P223, t, 0, [2, 0, 0, 0, 0, 0])  # dependent on f1
    with pytest.raises(RaggedInput):
        LinearSystem(P223, t, 0, [f1, f2])
    with pytest.raises(RaggedInput):
        LinearSystem(P223, t, 0, [])
    with pytest.raises(ParamMismatch):
        LinearSystem(P223, t, 0, [Form(ParamSet(2, 1, 3), t, 0, [1, 0, 0])])


def test_basis_adoption_across_prefix_equal_towers():
    # forms built over an extension tower's base level drop into a
    # system declared over the plain base tower
    L = build_l_irr(P223)
    plain = make_tower(3)
    adopted = LinearSystem(P223, plain, 0, L.basis)
    assert adopted.to_dict()["tower"] == plain.to_dict()
    assert [f.raw_coeffs for f in adopted.basis] == [f.raw_coeffs for f in L.basis]


def test_red_and_irr_systems_are_disjoint():
    L_red = build_l_red(P223)
    L_irr = build_l_irr(P223)
    assert intersection_dimension(L_red, L_irr) == -1
    assert intersection_member(L_red, L_irr) is None
    # self-intersection returns the full system
    assert intersection_dimension(L_red, L_red) == L_red.dimension


def test_large_systems_must_meet_the_extremal_ones():
    L_red = build_l_red(P223)
    L_irr = build_l_irr(P223)
    for seed in (0, 1, 2):
        # projective dimension r meets the irreducible system...
        S = random_system(P223, P223.r, seed)
        assert intersection_dimension(S, L_irr) >= 0
        f = intersection_member(S, L_irr)
        assert _in_span(S, f) and _in_span(L_irr, f)
        assert not is_reducible_over(f).base_reducible
        # ...and dimension m - r meets the reducible one
        S = random_system(P223, P223.m - P223.r, seed)
        g = intersection_member(S, L_red)
        assert g is not None and _in_span(L_red, g)
        assert is_reducible_over(g).base_reducible


def test_intersection_input_guards():
    L = build_l_red(P223)
    other = build_l_red(ParamSet(2, 2, 4))
    with pytest.raises(ParamMismatch):
        intersection_dimension(L, other)
    params = ParamSet(1, 2, 9)
    t1 = extended_tower(make_tower(3), 2)
    t2 = extended_tower(make_tower(3), 2, modulus=[2, 2, 1])  # x^2+2x+2
    s1 = LinearSystem(params, t1, 1, [Form(params, t1, 1, [t1.one(1), t1.zero(1), t1.zero(1)])])
    s2 = LinearSystem(params, t2, 1, [Form(params, t2, 1, [t2.one(1), t2.zero(1), t2.zero(1)])])
    with pytest.raises(TowerMismatch):
        intersection_dimension(s1, s2)


def test_random_system_seeded_reproducibility():
    s1 = random_system(P223, 2, seed=5)
    s2 = random_system(P223, 2, seed=5)
    assert s1.to_dict() == s2.to_dict()
    s3 = random_system(P223, 2, seed=6)
    assert s1.to_dict() != s3.to_dict()
    assert random_system(P223, 0, seed=1).dimension == 0
    with pytest.raises(RangeError):
        random_system(P223, -1, seed=0)
    with pytest.raises(RangeError):
        random_system(P223, P223.m, seed=0)


def test_system_serialization_round_trip():
    for L in (build_l_red(P223), build_l_irr(P223)):
        doc = L.to_dict()
        back = LinearSystem.from_dict(doc)
        assert back.kind == L.kind
        assert back.metadata == L.metadata
        assert [f.raw_coeffs for f in back.basis] == [f.raw_coeffs for f in L.basis]
        assert back.to_dict() == doc


def test_verify_members_flags_counterexamples():
    t = make_tower(3)
    lin2 = ParamSet(1, 2, 3)
    f1 = Form(lin2, t, 0, [1, 0, 0])  # x0^2, reducible
    f2 = Form(lin2, t, 0, [1, 0, 1])  # x0^2 + x1^2, irreducible
    S = LinearSystem(lin2, t, 0, [f1, f2])
    rep = verify_members(S, "reducible")
    assert not rep.all_match
    assert len(rep.counterexamples) == 1
    entry = rep.counterexamples[0]
    assert entry["verdict"] == "irreducible" and "divisor" not in entry
    rep = verify_members(S, "irreducible")
    assert len(rep.counterexamples) == 3
    assert all("divisor" in e for e in rep.counterexamples)
    with pytest.raises(RaggedInput):
        verify_members(S, "prime")
    with pytest.raises(BudgetExceeded):
        verify_members(S, "reducible", budget=2)


def test_verify_members_thread_invariance():
    L = build_l_red(P223)
    r1 = verify_members(L, "reducible", threads=1)
    r4 = verify_members(L, "reducible", threads=4)
    d1, d4 = r1.to_dict(), r4.to_dict()
    assert d1 == d4


def test_reducible_locus_matches_census(census_223):
    rep = reducible_locus_counts(P223)
    assert rep.split_counts == {1: 91}
    assert rep.union_count == 91
    assert rep.census_red_count == census_223.count_red_base
    assert rep.matches_census
    assert rep.s_formula == P223.r + 2 - 1 == 4
    assert rep.dim_formula == {1: 4}
    doc = rep.to_dict()
    assert doc["leading_ratio"] == {"num": "91", "den": "81"}


def test_reducible_locus_multi_split_dimensions():
    params = ParamSet(1, 4, 3)
    rep = reducible_locus_counts(params, cross_check=False)
    assert sorted(rep.split_counts) == [1, 2]
    assert rep.sum_counts >= rep.union_count
    assert rep.matches_census is None
    # each split's dimension formula is the codimension complement:
    # dim_formula[i] = m - N_i - 2
    for i, dim in rep.dim_formula.items():
        assert dim == params.m - n_i(params.n, params.d, i) - 2
    for i, dim in reducible_locus_counts(P223).dim_formula.items():
        assert dim == P223.m - n_i(2, 2, i) - 2


def test_reducible_locus_guards():
    with pytest.raises(DegreeTooSmall):
        reducible_locus_counts(ParamSet(2, 1, 3))
    with pytest.raises(BudgetExceeded):
        reducible_locus_counts(ParamSet(2, 3, 3), budget=100)
