import dataclasses

import pytest

from effpath import pca
from effpath.core import identity as identity0, make_object, \
    synthesize_morphism as synthesize_morphism0
from effpath.eff1 import (
    NotNormalized, NotTrivial, adjequiv, check1, check_fibration1,
    check_homotopy1, check_morphism1, check_object1, classify_discrete_set,
    compose1, discrete1_decide, discrete1_phi_psi, enumerate_members1,
    fib_path_object1, fibration1_decide, fibrewise_homotopic1_decide,
    freyd_square1_check, hexp1, hexp_J1, hlevel1_check, homotopic1_decide,
    homotopy1_from_h1, homotopy_pullback1_check, identity1,
    identity_homotopy1, inflate, inflate_morphism, is_equivalence1_decide,
    is_standard_discrete1, mediate1, path_object1, pi_transpose1,
    pi_transpose1_round_trip, pi_type1, point1, product1, pullback1,
    resize1, synthesize_fibration1_witness, synthesize_morphism1,
    terminal_map1, terminal_object1, trivial1_decide, trivial1_section,
    truncate1, two_homotopic_decide, univalence_check_set, z2_homotopies,
    z2_object, z2_twist, _build_morphism1, _set_normalized,
)
from effpath.fixtures import (
    interval, line_bundle, set_bundle, swap_morphism, two,
    two_point_bundle, walking_pair, fixture_fibrations1, fixture_objects1,
)
from effpath.path import homotopic_decide, terminal_map


def _inflated_bundle():
    total, base, p = two_point_bundle()
    return inflate_morphism(p)


# --- objects and morphisms --------------------------------------------------

def test_cyclic_group_object_is_valid():
    assert check_object1(z2_object()).status == "valid"


def test_inflated_fixtures_are_valid():
    for fx in fixture_objects1().values():
        assert check1(fx.obj).status == "valid", fx.name


def test_fixture_fibration_morphisms_are_valid():
    for name, f in fixture_fibrations1().items():
        assert check1(f).status == "valid", name


def test_diverging_coherence_code_is_invalid():
    broken = dataclasses.replace(z2_object(), coh_assoc=pca.DIVERGE_C)
    v = check_object1(broken)
    assert v.status == "invalid" and "diverges" in v.reason


def test_wrong_structure_value_is_invalid():
    # a unit code returning a non-identity loop breaks a coherence target
    broken = dataclasses.replace(
        z2_object(), unit1=pca.tabulate({0: 1, 1: 1}))
    assert check_object1(broken).status == "invalid"


def test_fuel_exhaustion_is_unknown_not_invalid():
    assert check_object1(z2_object(), fuel=1).status == "unknown"


def test_twist_morphism_and_composite():
    A = z2_object()
    w = z2_twist(A)
    assert check_morphism1(w).status == "valid"
    ww = compose1(w, w)
    assert check_morphism1(ww).status == "valid"
    assert homotopic1_decide(ww, identity1(A)).status == "yes"


def test_mangled_tracking_is_invalid():
    A = z2_object()
    w = z2_twist(A)
    broken = dataclasses.replace(w, tracking1=pca.DIVERGE_C)
    assert check_morphism1(broken).status == "invalid"


def test_check1_dispatch():
    A = z2_object()
    f = terminal_map1(A)
    w = synthesize_fibration1_witness(f)
    assert check1(A).status == "valid"
    assert check1(f).status == "valid"
    assert check1(f, w).status == "valid"
    with pytest.raises(TypeError):
        check1("nonsense")


# --- fibrations -------------------------------------------------------------

def test_inflated_bundle_is_a_fibration():
    p1 = _inflated_bundle()
    d = fibration1_decide(p1)
    assert d.status == "yes"
    assert check_fibration1(p1, d.witness).status == "valid"


def test_terminal_maps_are_fibrations():
    for name, fx in fixture_objects1().items():
        assert fibration1_decide(terminal_map1(fx.obj)).status == "yes", name


# --- pullbacks --------------------------------------------------------------

def test_pullback_along_identity_is_the_total_space():
    p1 = _inflated_bundle()
    pb = pullback1(p1, identity1(p1.cod))
    assert len(pb.obj.cells) == len(p1.dom.cells)
    assert check_object1(pb.obj).status == "valid"
    assert pb.witness is not None
    assert is_equivalence1_decide(pb.to_f_dom).status == "yes"


def test_mediating_morphism_for_a_commuting_square():
    p1 = _inflated_bundle()
    pb = pullback1(p1, identity1(p1.cod))
    med = mediate1(pb, p1, identity1(p1.dom))
    assert med is not None
    assert check_morphism1(med).status == "valid"


def test_product_projections():
    A = z2_object()
    prod, pr1, pr2 = product1(A, A)
    assert len(prod.cells) == 4
    assert check_object1(prod).status == "valid"
    assert check_morphism1(pr1).status == "valid"
    assert check_morphism1(pr2).status == "valid"


# --- path objects -----------------------------------------------------------

def test_path_object_of_the_cyclic_group_has_eight_cells():
    bundle = path_object1(z2_object())
    assert len(bundle.obj.cells) == 8
    # the tabulated associator is large; the default budget reports unknown
    assert check_object1(bundle.obj).status == "unknown"
    big = 10 ** 7
    assert check_object1(bundle.obj, fuel=big).status == "valid"
    assert check_morphism1(bundle.r, fuel=big).status == "valid"
    assert check_morphism1(bundle.st, fuel=big).status == "valid"
    assert bundle.witness is not None
    assert check_fibration1(bundle.st, bundle.witness,
                            fuel=big).status == "valid"


def test_path_projections_are_discrete_set_fibrations():
    for name in ("I", "J", "2"):
        bundle = path_object1(fixture_objects1()[name].obj)
        assert discrete1_decide(bundle.st).status == "yes", name
        assert hlevel1_check(bundle.st, 0).status == "verified", name


def test_fibrewise_path_object():
    p1 = _inflated_bundle()
    bundle = fib_path_object1(p1)
    assert check_object1(bundle.obj).status == "valid"
    assert bundle.witness is not None


# --- homotopies -------------------------------------------------------------

def test_two_essentially_different_self_homotopies():
    A = z2_object()
    w = z2_twist(A)
    idA = identity1(A)
    H, K = z2_homotopies(A, w)
    assert check_homotopy1(idA, w, H).status == "valid"
    assert check_homotopy1(idA, w, K).status == "valid"
    assert two_homotopic_decide(idA, w, H, K).status == "no"


def test_identity_homotopy_is_two_homotopic_to_itself():
    idA = identity1(z2_object())
    H = identity_homotopy1(idA)
    assert two_homotopic_decide(idA, idA, H, H).status == "yes"


def test_homotopy_with_bad_filler_is_rejected():
    A = z2_object()
    idA = identity1(A)
    # naturality forces equal loops for id ~ id and unequal for id ~ twist
    assert homotopy1_from_h1(idA, idA, {0: 0, 1: 0}) is not None
    assert homotopy1_from_h1(idA, idA, {0: 0, 1: 1}) is None
    assert homotopy1_from_h1(idA, z2_twist(A), {0: 0, 1: 0}) is None
    assert homotopy1_from_h1(idA, z2_twist(A), {0: 0, 1: 42}) is None


def test_inflation_is_homotopy_faithful():
    for obj in (interval(), walking_pair()):
        sw = swap_morphism(obj)
        expected = homotopic_decide(identity0(obj), sw).status
        obj1 = inflate(obj)
        sw1 = inflate_morphism(sw, obj1, obj1)
        assert homotopic1_decide(identity1(obj1), sw1).status == expected


def test_fibrewise_homotopy_requires_equal_base_image():
    p1 = _inflated_bundle()
    idT = identity1(p1.dom)
    assert fibrewise_homotopic1_decide(idT, idT, p1).status == "yes"


# --- equivalences -----------------------------------------------------------

def test_twist_is_an_equivalence():
    d = is_equivalence1_decide(z2_twist())
    assert d.status == "yes"
    w = d.witness
    assert check_morphism1(w.inverse).status == "valid"


def test_collapse_is_not_an_equivalence():
    J1 = inflate(walking_pair())
    to_pt = terminal_map1(J1)
    assert is_equivalence1_decide(to_pt).status == "no"


def test_adjusted_equivalence_of_the_identity():
    I1 = inflate(interval())
    idI = identity1(I1)
    ih = identity_homotopy1(idI)
    adj = adjequiv(idI, idI, ih, ih)
    assert adj.M.status == "yes" and adj.N.status == "yes"
    assert check_homotopy1(idI, compose1(idI, idI),
                           adj.eta_prime).status == "valid"


def test_adjusted_equivalence_of_the_twist():
    A = z2_object()
    w = z2_twist(A)
    eq = is_equivalence1_decide(w).witness
    adj = adjequiv(w, eq.inverse, eq.eta, eq.eps)
    assert adj.M.status == "yes" and adj.N.status == "yes"
    gf = compose1(eq.inverse, w)
    assert check_homotopy1(identity1(A), gf, adj.eta_prime).status == "valid"


# --- trivial fibrations -----------------------------------------------------

def test_interval_over_point_is_trivial():
    f = fixture_fibrations1()["I->1"]
    assert trivial1_decide(f).status == "yes"
    w = synthesize_fibration1_witness(f)
    sec = trivial1_section(f, w)
    assert check_morphism1(sec.section).status == "valid"
    assert check_homotopy1(identity1(f.dom), compose1(sec.section, f),
                           sec.H).status == "valid"


def test_identity_fibration_sections_to_itself():
    I1 = inflate(interval())
    idI = identity1(I1)
    sec = trivial1_section(idI, synthesize_fibration1_witness(idI))
    assert sec.section.zero_map == {c: c for c in I1.cells}


def test_walking_pair_over_point_is_not_trivial():
    f = fixture_fibrations1()["J->1"]
    assert trivial1_decide(f).status == "no"
    w = synthesize_fibration1_witness(f)
    with pytest.raises(NotTrivial):
        trivial1_section(f, w)


# --- exponentials and homotopy pullbacks ------------------------------------

def test_function_space_members_are_tracked_morphisms():
    I1 = inflate(interval())
    exp = hexp1(I1, terminal_object1())
    members = enumerate_members1(exp)
    # maps 1 -> I correspond to the two points
    assert len({tuple(sorted(m.zero_map.items()))
                for m in members}) == 2
    for m in members:
        assert exp.virtual.contains(m) == "yes"
        # realizers are the three tracking codes; functoriality terms are
        # re-derivable properties, not structure
        assert exp.virtual.realizer_of(m) == pca.tuple_encode(
            m.tracking0, m.tracking1, m.tracking2)


def test_function_space_one_cells_are_homotopies():
    I1 = inflate(interval())
    exp = hexp1(I1, terminal_object1())
    f, g = enumerate_members1(exp)[:2]
    d = homotopic1_decide(f, g)
    assert d.status == "yes"
    n = pca.tuple_encode(d.witness.h1, d.witness.h2)
    assert exp.virtual.hom_status(f, g, n) == "yes"
    assert exp.virtual.hom_status(f, g, pca.tuple_encode(
        pca.DIVERGE_C, pca.DIVERGE_C)) in ("no", "unknown")


def test_walking_pair_exponential_of_the_cyclic_group():
    ej = hexp_J1(z2_object())
    assert len(ej.obj.cells) == 2
    assert check_object1(ej.obj).status == "valid"
    assert check_morphism1(ej.diag).status == "valid"
    assert check_morphism1(ej.ev0).status == "valid"
    assert check_morphism1(ej.ev1).status == "valid"


def test_homotopy_pullback_rejects_non_commuting_squares():
    p1 = _inflated_bundle()
    idT = identity1(p1.dom)
    # pulling p1 back along the identity base map gives the total space
    assert homotopy_pullback1_check(
        p1, identity1(p1.cod), p1, idT).status == "yes"
    # the diagonal into the self-pullback is not an equivalence
    assert homotopy_pullback1_check(p1, p1, idT, idT).status == "no"
    two1 = inflate(two())
    pt0, pt1 = point1(two1, two1.cells[0]), point1(two1, two1.cells[1])
    with pytest.raises(ValueError):
        homotopy_pullback1_check(pt0, pt1, identity1(pt0.dom),
                                 identity1(pt0.dom))


def test_freyd_square_detects_discreteness():
    assert freyd_square1_check(_inflated_bundle()).status == "yes"
    assert freyd_square1_check(
        fixture_fibrations1()["J->1"]).status == "no"


# --- dependent products -----------------------------------------------------

def _bundle_pi():
    total, base, p = two_point_bundle()
    T1, B1 = inflate(total), inflate(base)
    p1 = inflate_morphism(p, T1, B1)
    w = synthesize_fibration1_witness(p1)
    return p1, w, pi_type1(p1, w, identity1(T1))


def test_pi_of_the_identity_has_one_section_per_fibre_point():
    p1, w, pi = _bundle_pi()
    # each fibre point gives exactly one strict section of the identity
    assert len(pi.obj.cells) == len(p1.cod.cells)
    assert check_object1(pi.obj).status == "valid"
    assert check_morphism1(pi.proj).status == "valid"
    assert fibration1_decide(pi.proj).status == "yes"


def test_pi_realizers_exclude_functoriality_terms():
    p1, w, pi = _bundle_pi()
    for (a, skey), s in pi.sections.items():
        assert pi.virtual.realizer_of((a, s)) == pca.tuple_encode(
            pi.f.cod.realizer[a], s.tracking0, s.tracking1, s.tracking2)


def test_pi_evaluation_and_transpose_round_trip():
    p1, w, pi = _bundle_pi()
    assert check_morphism1(pi.ev).status == "valid"
    M = pi_transpose1(pi, pi.proj, pi.ev_domain, pi.ev)
    assert M is not None
    assert homotopic1_decide(M, identity1(pi.obj)).status == "yes"
    assert pi_transpose1_round_trip(pi, pi.proj, pi.ev_domain,
                                    pi.ev, M).status == "yes"


def test_pi_membership_rejects_non_sections():
    p1, w, pi = _bundle_pi()
    (a, skey), s = next(iter(pi.sections.items()))
    assert pi.virtual.contains((a, s)) == "yes"
    assert pi.virtual.contains((a, "not a morphism")) == "no"


# --- truncations ------------------------------------------------------------

def test_set_truncation_collapses_the_two_homotopies():
    A = z2_object()
    tr = truncate1(terminal_map1(A), 0)
    assert check_morphism1(tr.g).status == "valid"
    assert check_morphism1(tr.h).status == "valid"
    assert tr.witness is not None
    C = tr.g.cod
    one = {(i, j): {p: (p if i == j else 1 - p) for p in (0, 1)}
           for i in C.cells for j in C.cells}
    two_ = {(i, j, p, q): {n: n for n in C.hom2_of(i, j, p, q)}
            for i in C.cells for j in C.cells
            for p in (0, 1) for q in (0, 1)}
    wC = _build_morphism1(C, C, {0: 0, 1: 1}, one, two_)
    idC = identity1(C)
    H = homotopy1_from_h1(idC, wC, {0: 0, 1: 1})
    K = homotopy1_from_h1(idC, wC, {0: 1, 1: 0})
    assert two_homotopic_decide(idC, wC, H, K).status == "yes"
    assert hlevel1_check(tr.h, 0).status == "verified"


def test_prop_truncation_of_the_walking_pair_is_the_interval():
    f = fixture_fibrations1()["J->1"]
    tr = truncate1(f, -1)
    assert hlevel1_check(tr.h, -1).status == "verified"
    m = synthesize_morphism1(tr.g.cod, inflate(interval()),
                             {b: "0" for b in tr.g.cod.cells})
    assert m is not None
    assert is_equivalence1_decide(m).status == "yes"


def test_truncating_at_or_above_the_hlevel_changes_nothing():
    f = _inflated_bundle()  # already a fibration of sets
    tr = truncate1(f, 0)
    assert is_equivalence1_decide(tr.g).status == "yes"


# --- hlevels ----------------------------------------------------------------

def test_cyclic_group_hlevel_ladder():
    f = terminal_map1(z2_object())
    assert hlevel1_check(f, -2).status == "refuted"
    assert hlevel1_check(f, -1).status == "refuted"
    assert hlevel1_check(f, 0).status == "refuted"
    assert hlevel1_check(f, 1).status == "verified"


def test_every_fixture_fibration_is_a_fibration_of_groupoids():
    for name, f in fixture_fibrations1().items():
        assert hlevel1_check(f, 1).status == "verified", name


def test_inflated_hlevels_agree_with_the_lower_layer():
    fibs = fixture_fibrations1()
    assert hlevel1_check(fibs["I->1"], -2).status == "verified"
    assert hlevel1_check(fibs["J->1"], -1).status == "refuted"
    assert hlevel1_check(fibs["J->1"], 0).status == "verified"
    assert hlevel1_check(fibs["E2I"], 0).status == "verified"
    assert hlevel1_check(fibs["E2I"], -1).status == "refuted"


# --- discreteness -----------------------------------------------------------

def test_three_discreteness_criteria_agree():
    fibs = fixture_fibrations1()
    for name in ("I->1", "J->1", "2->1", "E2I", "Z2->1"):
        a = discrete1_phi_psi(fibs[name]).status
        b = discrete1_decide(fibs[name]).status
        c = freyd_square1_check(fibs[name]).status
        assert a == b == c, name


def test_loops_obstruct_discreteness():
    d = discrete1_decide(fixture_fibrations1()["Z2->1"])
    assert d.status == "no" and "two-connected" in d.reason


def test_quotient_collapses_realizer_twins():
    cells = ("x", "y")
    hom = {(a, b): {0} for a in cells for b in cells}
    obj = inflate(make_object(cells, {"x": 0, "y": 0}, hom, name="T"))
    d = discrete1_decide(terminal_map1(obj))
    assert d.status == "yes"
    assert len(d.witness.quotient.cells) == 1
    assert is_standard_discrete1(d.witness.standard)


# --- the universe of sets ---------------------------------------------------

def _set_fibration():
    total, base, f = set_bundle()
    f1 = inflate_morphism(f)
    w = synthesize_fibration1_witness(f1)
    assert w is not None
    return f1, w


def test_classification_of_a_set_bundle():
    f1, w = _set_fibration()
    assert _set_normalized(f1)
    cl = classify_discrete_set(f1, w)
    assert sorted(cl.k.zero["0"].cells) == [2, 3]
    assert sorted(cl.k.zero["1"].cells) == [4, 5]
    assert check_object1(cl.recovered).status == "valid"
    assert cl.comparison.status == "yes"


def test_classification_rejects_unnormalized_input():
    p1 = _inflated_bundle()
    w = synthesize_fibration1_witness(p1)
    with pytest.raises(NotNormalized):
        classify_discrete_set(p1, w)


def test_constant_fibre_classification_over_a_point():
    base = terminal_object1()
    cells = [("*", n) for n in (2, 4)]
    hom = {(x, y): frozenset({0}) for x in cells for y in cells}
    tot = inflate(make_object(cells, {c: c[1] for c in cells}, hom,
                              name="C2"))
    f = synthesize_morphism1(tot, base, {c: "*" for c in cells})
    w = synthesize_fibration1_witness(f)
    cl = classify_discrete_set(f, w)
    assert sorted(cl.k.zero["*"].cells) == [2, 4]
    assert cl.comparison.status == "yes"


def test_univalence_for_a_swap_of_constant_fibres():
    base = terminal_object1()
    cells = [("*", n) for n in (3, 5)]
    hom = {(x, y): frozenset({0}) for x in cells for y in cells}
    tot = inflate(make_object(cells, {c: c[1] for c in cells}, hom,
                              name="P2"))
    pf = synthesize_morphism1(tot, base, {c: "*" for c in cells})
    wm = synthesize_morphism1(tot, tot,
                              {("*", 3): ("*", 5), ("*", 5): ("*", 3)})
    H, d = univalence_check_set(wm, pf, pf)
    assert d.status == "yes"
    fwd = H["*"][0]
    assert fwd.zero_map[3] == 5 and fwd.zero_map[5] == 3


def test_univalence_obstruction_from_the_cyclic_group():
    # the two homotopies 1 ~ twist are not two-homotopic, so the universe
    # of sets cannot see a unique 1-cell for this self-equivalence
    A = z2_object()
    w = z2_twist(A)
    idA = identity1(A)
    H, K = z2_homotopies(A, w)
    assert homotopic1_decide(idA, w).status == "yes"
    assert two_homotopic_decide(idA, w, H, K).status == "no"


# --- resizing ---------------------------------------------------------------

def test_resize_of_a_line_bundle_is_an_isomorphism():
    total, base, f = line_bundle()
    f1 = inflate_morphism(f)
    rs = resize1(f1)
    assert len(rs.obj.cells) == len(f1.dom.cells)
    assert [d.status for d in rs.laws] == ["yes", "yes"]


def test_resize_collapses_realizer_twins():
    tr = truncate1(fixture_fibrations1()["J->1"], -1)
    rs = resize1(tr.h)
    assert len(rs.obj.cells) == 1
    assert [d.status for d in rs.laws] == ["yes", "yes"]
    assert discrete1_decide(rs.proj).status == "yes"
