import pytest

from effpath import pca
from effpath.core import check_morphism, compose, identity, synthesize_morphism
from effpath.constructions import (
    curry, curry_uniqueness_check, enumerate_members, freyd_square_check,
    hexp, hexp_J, hexp_J_morphism, homotopy_pullback_check,
    induced_fiber_map, pi_functor_map, pi_transpose,
    pi_transpose_round_trip, pi_type, transport, transport_properties_check,
)
from effpath.fixtures import interval, two, two_point_bundle, walking_pair
from effpath.path import (
    discrete_n, homotopic_decide, identity as _id, path_object, product,
    pullback, synthesize_fibration_witness, terminal_map, terminal_object,
)


# --- transport --------------------------------------------------------------

def _e2i_transport():
    total, base, p = two_point_bundle()
    w = synthesize_fibration_witness(p)
    assert w is not None
    return total, base, p, w


def test_transport_along_reflexivity_is_identity():
    total, base, p, w = _e2i_transport()
    tr = transport(p, w)
    assert tr.refl_law.status == "yes"


def test_transport_moves_fibre_points_along_the_cross_path():
    total, base, p, w = _e2i_transport()
    tr = transport(p, w)
    # the single path 0 -> 1 in the base carries each fibre-0 point to the
    # fibre-1 point with the same first coordinate
    assert tr.cell("e00", ("0", "1", 0)) == "e01"
    assert tr.cell("e10", ("0", "1", 0)) == "e11"
    assert tr.cell("e01", ("1", "0", 0)) == "e00"


def test_transport_commutes_with_pullback_projection():
    total, base, p, w = _e2i_transport()
    tr = transport(p, w)
    pb = pullback(p, identity(base))
    w2 = synthesize_fibration_witness(pb.to_g_dom)
    tr2 = transport(pb.to_g_dom, w2)
    for (c, b) in pb.obj.cells:
        for path in path_object(base).obj.cells:
            if path[0] != c:
                continue
            c2, b2 = tr2.cell((c, b), path)
            assert b2 == tr.cell(b, path)


def test_transport_properties_on_fixture_bundle():
    total, base, p, w = _e2i_transport()
    assert [d.status for d in transport_properties_check(p, w)] == ["yes"] * 3


def test_transport_properties_on_path_fibration_source():
    i = interval()
    bundle = path_object(i)
    s = synthesize_morphism(bundle.obj, i,
                            {x: x[0] for x in bundle.obj.cells}, name="s")
    w = synthesize_fibration_witness(s)
    assert w is not None
    props = transport_properties_check(s, w)
    assert props[2].status == "yes"
    assert [d.status for d in props] == ["yes"] * 3


def test_transport_properties_over_degenerate_base():
    i = interval()
    f = terminal_map(i)
    w = synthesize_fibration_witness(f)
    assert [d.status for d in transport_properties_check(f, w)] == ["yes"] * 3


# --- induced fibre maps -----------------------------------------------------

def test_reflexivity_homotopy_induces_an_identity_like_map():
    total, base, p, w = _e2i_transport()
    h = homotopic_decide(identity(base), identity(base))
    m, eq = induced_fiber_map(p, w, identity(base), identity(base), h.witness)
    assert eq.status == "yes"
    for (z, y) in m.dom.cells:
        assert m.zero_map[(z, y)] == (z, y)


def test_cross_path_homotopy_induces_the_fibre_bijection():
    total, base, p, w = _e2i_transport()
    one = terminal_object()
    f0 = synthesize_morphism(one, base, {"*": "0"})
    f1 = synthesize_morphism(one, base, {"*": "1"})
    h = homotopic_decide(f0, f1)
    assert h.status == "yes"
    m, eq = induced_fiber_map(p, w, f0, f1, h.witness)
    assert eq.status == "yes"
    assert m.zero_map == {("*", "e00"): ("*", "e01"),
                         ("*", "e10"): ("*", "e11")}


# --- J-exponentials ---------------------------------------------------------

def test_J_exponential_of_interval_is_the_diagonal():
    exp = hexp_J(interval())
    assert len(exp.obj.cells) == 2  # injective realizers force a0 = a1


def test_J_exponential_of_walking_pair_has_four_cells():
    exp = hexp_J(walking_pair())
    assert len(exp.obj.cells) == 4  # constant realizer admits every pair


def test_J_exponential_realizer_is_the_shared_one():
    for obj in (interval(), walking_pair(), two()):
        exp = hexp_J(obj)
        for (a0, a1) in exp.obj.cells:
            assert exp.obj.realizer[(a0, a1)] == obj.realizer[a0]


def test_J_exponential_squares_commute_strictly():
    total, base, p = two_point_bundle()
    expB, expA = hexp_J(total), hexp_J(base)
    pj = hexp_J_morphism(p, expB, expA)
    assert check_morphism(pj)
    for x in expB.obj.cells:
        assert expA.ev0.zero_map[pj.zero_map[x]] == \
            p.zero_map[expB.ev0.zero_map[x]]
    for b in total.cells:
        assert pj.zero_map[expB.diag.zero_map[b]] == \
            expA.diag.zero_map[p.zero_map[b]]


# --- homotopy pullbacks -----------------------------------------------------

def test_strict_pullback_square_is_a_homotopy_pullback():
    total, base, p = two_point_bundle()
    pb = pullback(p, identity(base))
    d = homotopy_pullback_check(p, identity(base), pb.to_g_dom, pb.to_f_dom)
    assert d.status == "yes"


def test_freyd_square_of_a_discrete_object_is_a_homotopy_pullback():
    assert freyd_square_check(terminal_map(two())).status == "yes"


def test_freyd_square_of_walking_pair_is_not_a_homotopy_pullback():
    assert freyd_square_check(terminal_map(walking_pair())).status == "no"


# --- exponentials up to homotopy --------------------------------------------

def test_powers_of_the_point_enumerate_cells():
    one = terminal_object()
    for obj, count in ((two(), 2), (interval(), 2)):
        members = enumerate_members(hexp(obj, one))
        assert len(members) == count
        for m in members:
            assert hexp(obj, one).virtual.contains(m) == "yes"


def test_power_of_point_identifies_shared_realizers():
    one = terminal_object()
    exp = hexp(walking_pair(), one)
    members = enumerate_members(exp)
    assert len(members) == 2
    # both point-selections carry the same tracking tables
    assert len({exp.virtual.realizer_of(m) for m in members}) == 1


def test_curry_of_projection_is_pointwise_projection():
    c_obj, b_obj = two(), interval()
    prod, p1, p2 = product(c_obj, b_obj)
    cur = curry(p2, c_obj, b_obj)
    exp = hexp(b_obj, b_obj)
    for c in c_obj.cells:
        m = cur[c]
        assert m.zero_map == {b: b for b in b_obj.cells}
        assert check_morphism(m)
        assert exp.virtual.contains(m) == "yes"


def test_evaluation_of_curried_map_matches_original():
    c_obj, b_obj = interval(), two()
    prod, p1, p2 = product(c_obj, b_obj)
    h = synthesize_morphism(prod, c_obj,
                            {(c, b): c for (c, b) in prod.cells},
                            name="proj1")
    cur = curry(h, c_obj, b_obj)
    exp = hexp(c_obj, b_obj)
    for c in c_obj.cells:
        for b in b_obj.cells:
            got = exp.eval_realizer(cur[c], b)
            assert got == c_obj.realizer[h.zero_map[(c, b)]]


def test_curry_uniqueness_against_resynthesized_competitors():
    c_obj, b_obj = two(), interval()
    prod, p1, p2 = product(c_obj, b_obj)
    cur = curry(p2, c_obj, b_obj)
    competitor = {c: synthesize_morphism(b_obj, b_obj, cur[c].zero_map)
                  for c in c_obj.cells}
    assert curry_uniqueness_check(cur, competitor).status == "yes"
    swapped = {c: synthesize_morphism(
        b_obj, b_obj, {"0": "1", "1": "0"}) for c in c_obj.cells}
    assert curry_uniqueness_check(cur, swapped).status == "yes"
    const = {c: synthesize_morphism(
        b_obj, b_obj, {"0": "0", "1": "0"}) for c in c_obj.cells}
    assert curry_uniqueness_check(cur, const).status == "yes"


# --- Pi-types ---------------------------------------------------------------

def _two_one_pi():
    """Pi along 2 -> 1 of a 4-point standard discrete fibration over 2."""
    t = two()
    f = terminal_map(t)
    wf = synthesize_fibration_witness(f)
    four = discrete_n(4, name="4")
    g = synthesize_morphism(four, t,
                            {"0": "0", "1": "0", "2": "1", "3": "1"},
                            name="4->2")
    assert g is not None
    return f, wf, g, t, four


def test_pi_along_identity_fibration_recovers_fibres():
    i = interval()
    total, base, p = two_point_bundle()
    f = identity(base)
    wf = synthesize_fibration_witness(f)
    pi = pi_type(f, wf, p)
    # one section per point of the total space: fibres are singletons
    assert len(pi.obj.cells) == len(total.cells)


def test_pi_of_standard_discrete_is_standard_discrete():
    f, wf, g, t, four = _two_one_pi()
    pi = pi_type(f, wf, g)
    assert len(pi.obj.cells) == 4  # 2 x 2 choices of section
    realizers = [pi.obj.realizer[k] for k in pi.obj.cells]
    assert len(set(realizers)) == len(realizers)


def test_pi_membership_accepts_exactly_the_sections():
    f, wf, g, t, four = _two_one_pi()
    pi = pi_type(f, wf, g)
    for key, s in pi.sections.items():
        assert pi.virtual.contains((key[0], s)) == "yes"
    bad = synthesize_morphism(pi.fibres["*"], four,
                              {"0": "0", "1": "0"})
    assert pi.virtual.contains(("*", bad)) == "no"  # not a section over "1"


def test_pi_transpose_round_trip():
    f, wf, g, t, four = _two_one_pi()
    pi = pi_type(f, wf, g)
    one = terminal_object()
    h = identity(one)
    pbW = pullback(f, h)
    m = synthesize_morphism(pbW.obj, four,
                            {("*", "0"): "0", ("*", "1"): "2"})
    assert m is not None
    M = pi_transpose(pi, h, pbW, m)
    assert M is not None and check_morphism(M)
    assert pi_transpose_round_trip(pi, h, pbW, m, M).status == "yes"


def test_pi_functor_map_collapses_sections():
    f, wf, g, t, four = _two_one_pi()
    piB = pi_type(f, wf, g)
    piA = pi_type(f, wf, identity(t))
    p = synthesize_morphism(four, t,
                            {"0": "0", "1": "0", "2": "1", "3": "1"})
    m = pi_functor_map(piB, piA, p)
    assert m is not None and check_morphism(m)
    assert len(piA.obj.cells) == 1
    assert len({m.zero_map[k] for k in piB.obj.cells}) == 1
