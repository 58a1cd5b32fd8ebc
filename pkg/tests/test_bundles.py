import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doublebundles import (AutGroup, CoreSection, Dims, DvsAut, DvsElement, InputError, LinearSection, NoOverlap,
                           ProductGroup, aut_apply, aut_compose, aut_inverse, dvs_add, pair, section_eval)
from doublebundles import linalg as la
from doublebundles.aut import ShiftedProjection, random_aut, random_element
from doublebundles.bundles import (AssocElement, BundleSection, CoverGraph, PrincipalCocycle, assoc_equal,
                                   assoc_fiber_op, aut_rep, assoc_pair, chart_change, cocycle_verify, dpb_cocycle_verify,
                                   dual_bundle, holonomy, move_to, product_rep, project_I, project_II,
                                   report_passed, section_change, section_check, semidirect_rep, transport)
from doublebundles.suites import bundle_fixtures

D111 = Dims(1, 1, 1)
seeds = st.integers(0, 2**32 - 1)


def q(a1, a2, a0, mu):
    return DvsAut.of([[a1]], [[a2]], [[a0]], [[[mu]]])


def pt(x, y, z):
    return DvsElement.of([x], [y], [z])


def cycle_with(h, dims=D111):
    e = DvsAut.identity(dims)
    return PrincipalCocycle(CoverGraph.cycle(3), AutGroup(dims), {(0, 1): e, (1, 2): e, (2, 0): h})


def complete_with(a, b, c, dims=D111, group=None):
    return PrincipalCocycle(CoverGraph.complete(3), group or AutGroup(dims), {(0, 1): a, (1, 2): b, (0, 2): c})


def test_cover_graph():
    c = CoverGraph.cycle(4)
    assert c.neighbours(0) == [1, 3]
    assert c.path(0, 2) == [0, 1, 2]
    assert c.connected
    assert not c.triples
    assert CoverGraph.complete(3).triples
    with pytest.raises(InputError):
        CoverGraph(3, frozenset({(0, 1)}), frozenset({(0, 1, 2)}))
    assert not CoverGraph(3, frozenset({(0, 1)}), frozenset()).connected


def test_cocycle_examples():
    h = q(2, 3, 5, 7)
    assert report_passed(cocycle_verify(cycle_with(h)))
    a = q(2, 3, 5, 7)
    assert report_passed(cocycle_verify(complete_with(a, aut_inverse(a), DvsAut.identity(D111))))
    bad = cocycle_verify(complete_with(a, aut_inverse(a), a))
    assert not bad["triple(0,1,2)"]["pass"]
    assert bad["triple(0,1,2)"]["counterexample"] == "g(0,1) g(1,2) != g(0,2)"


def test_missing_transition_rejected():
    with pytest.raises(InputError):
        PrincipalCocycle(CoverGraph.cycle(3), AutGroup(D111), {(0, 1): q(1, 1, 1, 0)})
    pc = cycle_with(q(1, 1, 1, 0), Dims(1, 1, 1))
    with pytest.raises(NoOverlap):
        PrincipalCocycle(CoverGraph(3, frozenset({(0, 1), (1, 2)}), frozenset()), AutGroup(D111),
                         {(0, 1): q(1, 1, 1, 0), (1, 2): q(1, 1, 1, 0)})(0, 2)
    assert pc(1, 1).equals(DvsAut.identity(D111))


def test_dpb_cocycle():
    rng = random.Random(0)
    dims = Dims(2, 2, 2)
    a, b = random_aut(rng, dims), random_aut(rng, dims)
    good = dpb_cocycle_verify(complete_with(a, b, aut_compose(a, b), dims))
    assert report_passed(good)
    assert any(k.startswith("phi1:") for k in good) and any(k.startswith("phi2:") for k in good)

    core = DvsAut(la.eye(2), la.eye(2), a.a0, a.mu)
    rep = dpb_cocycle_verify(complete_with(core, core, aut_compose(core, core), dims))
    assert report_passed(rep)
    assert rep["core_valued"]["overlaps"] == ["(0,1)", "(0,2)", "(1,2)"]

    broken = dpb_cocycle_verify(complete_with(a, b, aut_compose(a, b), dims, ShiftedProjection(dims)))
    assert broken["triple(0,1,2)"]["pass"]
    assert not broken["phi2:triple(0,1,2)"]["pass"]


def test_transport_examples():
    h = q(2, 3, 5, 7)
    pc, rep = cycle_with(h), aut_rep(D111)
    e = AssocElement(0, pt(1, 1, 1))
    assert transport(pc, rep, e, []) is e
    # the last step 2 -> 0 applies g(0,2) = h^-1
    out = transport(pc, rep, e, [0, 1, 2, 0])
    assert out.chart == 0 and out.value.equals(pt(Fr(1, 2), Fr(1, 3), Fr(-1, 30)))
    assert out.value.equals(aut_apply(aut_inverse(h), pt(1, 1, 1)))
    back = transport(pc, rep, out, [0, 2, 1, 0])
    assert back.value.equals(e.value)
    assert holonomy(pc, rep, [0, 1, 2, 0]).equals(aut_inverse(h))
    with pytest.raises(InputError):
        transport(pc, rep, e, [1, 2])


def test_fiber_op_same_chart():
    pc, rep = cycle_with(q(2, 3, 5, 7)), aut_rep(D111)
    out = assoc_fiber_op(pc, rep, "I", AssocElement(0, pt(1, 2, 3)), AssocElement(0, pt(1, 4, 5)))
    assert out.chart == 0 and out.value.equals(pt(1, 6, 8))


def test_dual_of_trivial_bundle_is_trivial():
    dims = Dims(2, 1, 1)
    rep = product_rep(dims)
    grp = rep.group
    e = grp.identity()
    pc = PrincipalCocycle(CoverGraph.cycle(3), grp, {(0, 1): e, (1, 2): e, (2, 0): e})
    dual = dual_bundle(pc, rep)
    assert dual.dims == dims.dual
    for k in pc.g:
        assert dual(pc(*k)).equals(DvsAut.identity(dims.dual))
    assert isinstance(grp, ProductGroup)


def test_section_examples():
    e = DvsAut.identity(D111)
    triv = cycle_with(e)
    rep = aut_rep(D111)
    lin = LinearSection(la.as_array([1]), la.as_array([[2]]))
    assert report_passed(section_check(triv, rep, BundleSection({0: lin, 1: lin, 2: lin})))

    t = CoreSection(la.as_array([5]), 1, 1)
    core_triv = cycle_with(q(2, 3, 1, 7))
    assert report_passed(section_check(core_triv, rep, BundleSection({0: t, 1: t, 2: t})))

    twisted = cycle_with(q(2, 3, 5, 7))
    rep_bad = section_check(twisted, rep, BundleSection({0: lin, 1: lin, 2: lin}))
    assert not rep_bad["overlap(0,2)"]["pass"]
    assert rep_bad["overlap(0,1)"]["pass"]


def test_section_change_matches_pointwise_transport():
    rng = random.Random(5)
    dims = Dims(2, 2, 2)
    a = random_aut(rng, dims)
    s = LinearSection(random_element(rng, dims).x, la.as_array([[1, 2], [0, Fr(1, 2)]]))
    new = section_change(a, s)
    for _ in range(5):
        y = random_element(rng, dims).y
        assert section_eval(new, a.a2.dot(y)).equals(aut_apply(a, section_eval(s, y)))


@pytest.fixture(scope="module")
def fixtures():
    return bundle_fixtures(Dims(2, 2, 2), 3)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(["cycle3", "complete3"]))
def test_fiber_ops_are_chart_independent(fixtures, seed, label):
    pc, rep = fixtures[label], aut_rep(Dims(2, 2, 2))
    rng = random.Random(seed)
    i, j = rng.choice(sorted(pc.cover.overlaps))
    u = random_element(rng, rep.dims)
    v = DvsElement(u.x, random_element(rng, rep.dims).y, random_element(rng, rep.dims).z)
    w = DvsElement(random_element(rng, rep.dims).x, u.y, random_element(rng, rep.dims).z)
    for side, other in (("I", v), ("II", w)):
        here = dvs_add(side, u, other)
        there = dvs_add(side, chart_change(pc, rep, AssocElement(i, u), j).value,
                        chart_change(pc, rep, AssocElement(i, other), j).value)
        assert chart_change(pc, rep, AssocElement(i, here), j).value.equals(there)
    moved = chart_change(pc, rep, AssocElement(i, u), j)
    g = rep(pc(j, i))
    assert la.equal(project_I(moved)[1], g.a1.dot(u.x))
    assert la.equal(project_II(moved)[1], g.a2.dot(u.y))


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(["cycle3", "complete3"]))
def test_pairing_is_chart_independent(fixtures, seed, label):
    pc, rep = fixtures[label], aut_rep(Dims(2, 2, 2))
    rng = random.Random(seed)
    i, j = rng.choice(sorted(pc.cover.overlaps))
    v = random_element(rng, rep.dims)
    wd = random_element(rng, rep.dims.dual)
    w = DvsElement(v.x, wd.y, wd.z)
    dual = dual_bundle(pc, rep)
    v2, w2 = chart_change(pc, rep, AssocElement(i, v), j), chart_change(pc, dual, AssocElement(i, w), j)
    assert pair(v2.value, w2.value) == pair(v, w)
    assert assoc_pair(pc, rep, AssocElement(i, v), AssocElement(i, w)) == pair(v, w)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_paths_agree_when_triples_hold(fixtures, seed):
    pc, rep = fixtures["complete3"], aut_rep(Dims(2, 2, 2))
    rng = random.Random(seed)
    e = AssocElement(0, random_element(rng, rep.dims))
    direct = transport(pc, rep, e, [0, 2])
    around = transport(pc, rep, e, [0, 1, 2])
    assert direct.value.equals(around.value)
    assert assoc_equal(pc, rep, direct, e)
    assert move_to(pc, rep, e, 2).value.equals(direct.value)


@pytest.mark.parametrize("make", [lambda: aut_rep(Dims(2, 1, 1)), lambda: product_rep(Dims(2, 1, 1)),
                                  lambda: semidirect_rep(2, 1)], ids=["aut", "product", "semidirect"])
def test_representations_are_homomorphisms(make):
    rep = make()
    rng = random.Random(1)
    for _ in range(20):
        g, h = rep.group.random(rng), rep.group.random(rng)
        assert rep(rep.group.multiply(g, h)).equals(aut_compose(rep(g), rep(h)))
        assert la.equal(rep.rho1(g), rep.group.project(g)[0])
