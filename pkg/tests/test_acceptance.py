"""Acceptance criteria 1-12, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible under
``pytest -v``) and then asserts, so a failure still reports its line.
"""

import json
import random
from fractions import Fraction as Fr
from pathlib import Path

import numpy as np
import pytest

from doublebundles import (DvsAut, DvsDer, DvsElement, Dims, aut_apply, aut_compose, aut_inverse, commutator_oracle,
                           der_bracket, der_exp, dual_rep, dvs_add, exp_linear_part, exp_twist_part, f_dual,
                           frame_act, frame_eval, frame_transition, pair)
from doublebundles import codec
from doublebundles import linalg as la
from doublebundles.algebra import der_from_vector, der_to_vector
from doublebundles.aut import random_aut, random_element
from doublebundles.bundles import AssocElement, aut_rep, chart_change, cocycle_verify, dual_bundle, project_I, \
    project_II, report_passed
from doublebundles.connections import AutAlgebraAmbient, DlaAmbient, splitting_connection_check
from doublebundles.dla import (build_double_algebra, ce_differential, cocycle_space, jacobi_check, random_cochain,
                               random_cocycle, split_conditions_hold, split_cocycle_check)
from doublebundles.suites import (bundle_fixtures, dla_fixtures, interchange_holds, interchange_quadruple,
                                  random_der, random_frame, trivial_product_dla)

DIMS = [Dims(1, 1, 1), Dims(2, 2, 2), Dims(3, 2, 1)]
FIX = Path(__file__).parent / "fixtures"


@pytest.fixture
def verdict(capsys):
    def report(n, failures, detail=""):
        ok = not failures
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        assert ok, failures[:5]
    return report


def q(a1, a2, a0, mu):
    return DvsAut.of([[a1]], [[a2]], [[a0]], [[[mu]]])


def pt(x, y, z):
    return DvsElement.of([x], [y], [z])


def dual_point(rng, dims, x):
    w = random_element(rng, dims.dual)
    return DvsElement(x, w.y, w.z)


def test_criterion_01_group_axioms(verdict):
    failures = []
    for dims in DIMS:
        rng = random.Random(100 + dims.n1)
        e = DvsAut.identity(dims)
        for t in range(500):
            a, b, c = random_aut(rng, dims), random_aut(rng, dims), random_aut(rng, dims)
            if not aut_compose(aut_compose(a, b), c).equals(aut_compose(a, aut_compose(b, c))):
                failures.append((dims, t, "associativity"))
            if not (aut_compose(e, a).equals(a) and aut_compose(a, e).equals(a)):
                failures.append((dims, t, "identity"))
            inv = aut_inverse(a)
            if not (aut_compose(a, inv).equals(e) and aut_compose(inv, a).equals(e)):
                failures.append((dims, t, "inverse"))
    verdict(1, failures, "500 triples at each of (1,1,1), (2,2,2), (3,2,1)")


def test_criterion_02_action_faithful(verdict):
    failures = []
    for dims in DIMS:
        rng = random.Random(200 + dims.n1)
        for t in range(500):
            a, b, v = random_aut(rng, dims), random_aut(rng, dims), random_element(rng, dims)
            if not aut_apply(aut_compose(a, b), v).equals(aut_apply(a, aut_apply(b, v))):
                failures.append((dims, t))
    verdict(2, failures, "500 samples per dims")


def test_criterion_03_interchange(verdict):
    failures = []
    rng = random.Random(300)
    for t in range(500):
        dims = DIMS[t % 3]
        if not interchange_holds(*interchange_quadruple(rng, dims)):
            failures.append(("trivial", dims, t))
    dims = Dims(2, 2, 2)
    rep = aut_rep(dims)
    fixtures = bundle_fixtures(dims, 3)
    for t in range(500):
        pc = fixtures["cycle3" if t % 2 else "complete3"]
        i, j = rng.choice(sorted(pc.cover.overlaps))
        quad = interchange_quadruple(rng, dims)
        moved = [chart_change(pc, rep, AssocElement(i, u), j).value for u in quad]
        u, v, w, s = quad
        here = dvs_add("II", dvs_add("I", u, v), dvs_add("I", w, s))
        if not interchange_holds(*moved) or \
                not chart_change(pc, rep, AssocElement(i, here), j).value.equals(
                    dvs_add("II", dvs_add("I", moved[0], moved[1]), dvs_add("I", moved[2], moved[3]))):
            failures.append(("fiber", t))
    verdict(3, failures, "500 quadruples on the trivial DVS, 500 on bundle fibers")


def test_criterion_04_anti_isomorphism(verdict):
    failures = []
    for dims in DIMS:
        rng = random.Random(400 + dims.n1)
        if not f_dual(DvsAut.identity(dims)).equals(DvsAut.identity(dims.dual)):
            failures.append((dims, "identity"))
        for t in range(500):
            a, b = random_aut(rng, dims), random_aut(rng, dims)
            if not f_dual(aut_compose(a, b)).equals(aut_compose(f_dual(b), f_dual(a))):
                failures.append((dims, t))
    # worked instance: (2,3,5,7) after (1,1,1,1)
    ab = aut_compose(q(2, 3, 5, 7), q(1, 1, 1, 1))
    target = q(Fr(1, 2), 5, 3, 6)
    if not (ab.equals(q(2, 3, 5, 12)) and f_dual(ab).equals(target)
            and aut_compose(f_dual(q(1, 1, 1, 1)), f_dual(q(2, 3, 5, 7))).equals(target)):
        failures.append("worked instance")
    verdict(4, failures, "500 pairs per dims and f((2,3,5,12)) = (1/2,5,3,6) both ways")


def test_criterion_05_pairing_invariance(verdict):
    failures = []
    for dims in DIMS:
        rng = random.Random(500 + dims.n1)
        for t in range(500):
            g, v = random_aut(rng, dims), random_element(rng, dims)
            w = dual_point(rng, dims, v.x)
            if pair(aut_apply(g, v), aut_apply(dual_rep(g), w)) != pair(v, w):
                failures.append((dims, t))
    g = q(2, 3, 5, 7)
    v = w = pt(1, 1, 1)
    worked = (pair(v, w), pair(aut_apply(g, v), aut_apply(dual_rep(g), w)))
    if worked != (2, 2):
        failures.append(("worked", worked))
    verdict(5, failures, "500 samples per dims and the worked value 2")


def _rel_err(est, ref):
    diff = der_to_vector(est.to_kind(la.FLOAT) - ref.to_kind(la.FLOAT)).astype(float)
    return float(np.max(np.abs(diff)) / np.max(np.abs(der_to_vector(ref).astype(float))))


def test_criterion_06_commutator_oracle(verdict):
    failures = []
    rng = random.Random(600)
    dims = Dims(2, 2, 2)
    ratios = []
    for t in range(100):
        X, Y = random_der(rng, dims), random_der(rng, dims)
        exact = der_bracket(X, Y)
        errs = [_rel_err(commutator_oracle(X, Y, h), exact) for h in (1e-2, 1e-3, 1e-4)]
        if errs[2] > 1e-3:
            failures.append((t, errs[2]))
        ratios += [errs[0] / errs[1], errs[1] / errs[2]]
    # linear decay: a tenfold smaller step gives roughly a tenfold smaller error
    med = float(np.median(ratios))
    if not 5 <= med <= 20:
        failures.append(("decay ratio", med))
    verdict(6, failures, f"100 samples at (2,2,2), median decay ratio per decade {med:.2f}")


def test_criterion_07_exponential(verdict):
    failures = []
    rng = random.Random(700)
    for t in range(30):
        dims = DIMS[t % 3]
        X = random_der(rng, dims, la.FLOAT, 0.5)
        lin = DvsDer(X.A1, X.A2, X.A0, X.alpha.scale(0.0))
        tw = DvsDer(0 * X.A1, 0 * X.A2, 0 * X.A0, X.alpha)
        if der_exp(lin, 1e-13).max_abs_diff(exp_linear_part(X)) > 1e-12:
            failures.append(("linear closed form", t))
        if der_exp(tw, 1e-13).max_abs_diff(exp_twist_part(X)) > 1e-12:
            failures.append(("twist closed form", t))
        s, u = rng.uniform(-1, 1), rng.uniform(-1, 1)
        if aut_compose(der_exp(X.scale(s)), der_exp(X.scale(u))).max_abs_diff(der_exp(X.scale(s + u))) > 1e-9:
            failures.append(("one-parameter", t))
    # d/dt exp(tX) at 0 is X, with an O(h) difference quotient error
    X = random_der(rng, Dims(2, 2, 2), la.FLOAT, 0.5)
    errs = []
    for h in (1e-2, 1e-3, 1e-4):
        g = der_exp(X.scale(h), 1e-14)
        quot = DvsDer((g.a1 - np.eye(2)) / h, (g.a2 - np.eye(2)) / h, (g.a0 - np.eye(2)) / h, g.mu.scale(1 / h))
        errs.append(float(np.max(np.abs(der_to_vector(quot - X).astype(float)))))
    for coarse, fine in zip(errs, errs[1:]):
        if not 5 <= coarse / fine <= 20:
            failures.append(("derivative order", errs))
    verdict(7, failures, "closed forms 1e-12, one-parameter 1e-9, derivative first order")


def test_criterion_08_jacobi(verdict):
    failures = []
    rng = random.Random(800)
    for t in range(300):
        dims = DIMS[t % 3]
        X, Y, Z = (random_der(rng, dims) for _ in range(3))
        jac = der_bracket(der_bracket(X, Y), Z) + der_bracket(der_bracket(Y, Z), X) + der_bracket(der_bracket(Z, X), Y)
        if not la.is_zero(der_to_vector(jac)):
            failures.append(("der_bracket", t))
    small = [(n, g1, g2, m, cocycle_space(g1.direct_sum(g2), m, 2)) for n, g1, g2, m in dla_fixtures()
             if max(g1.dim, g2.dim, m.dim) <= 3]
    built = 0
    for t in range(100):
        name, g1, g2, mod, space = small[t % len(small)]
        g = g1.direct_sum(g2)
        D = build_double_algebra(g1, g2, mod, random_cocycle(rng, g, mod, 2, space))
        rep = jacobi_check(D.algebra)
        built += 1
        if not all(v["pass"] for v in rep.values()):
            failures.append(("built", name, t))
    verdict(8, failures, f"300 derivation triples, {built} built algebras checked on all basis triples")


def test_criterion_09_split_criterion(verdict):
    failures = []
    rng = random.Random(900)
    counts = {}
    for name, g1, g2, mod in dla_fixtures():
        g = g1.direct_sum(g2)
        space = cocycle_space(g, mod, 2)
        closed = 0
        for t in range(100):
            c = random_cocycle(rng, g, mod, 2, space) if t % 2 else random_cochain(rng, g.dim, mod.dim, 2)
            d_zero = ce_differential(g, mod, c).is_zero()
            closed += d_zero
            if split_conditions_hold(split_cocycle_check(g1, g2, mod, c)) != d_zero:
                failures.append((name, t))
        counts[name] = closed
    verdict(9, failures, f"100 cochains on each of {len(counts)} fixtures")


def test_criterion_10_frames(verdict):
    failures = []
    rng = random.Random(1000)
    for t in range(300):
        dims = DIMS[t % 3]
        F, G, a = random_frame(rng, dims), random_frame(rng, dims), random_aut(rng, dims)
        if not frame_act(F, frame_transition(F, G)).equals(G):
            failures.append(("transitive", t))
        if not frame_transition(F, frame_act(F, a)).equals(a):
            failures.append(("free", t))
    for t in range(300):
        dims = DIMS[t % 3]
        F, a, xi = random_frame(rng, dims), random_aut(rng, dims), random_element(rng, dims)
        if not frame_eval(frame_act(F, a), aut_apply(aut_inverse(a), xi)).equals(frame_eval(F, xi)):
            failures.append(("well-defined", t))
    verdict(10, failures, "300 round trips and 300 reconstruction identities")


def test_criterion_11_bundles(verdict):
    failures = []
    good = codec.decode_bundle(json.loads((FIX / "good_cocycle.json").read_text()))
    broken = codec.decode_bundle(json.loads((FIX / "broken_cocycle.json").read_text()))
    if not report_passed(cocycle_verify(good[0])):
        failures.append("positive fixture")
    bad = cocycle_verify(broken[0])
    if report_passed(bad) or bad["triple(0,1,2)"]["counterexample"] != "g(0,1) g(1,2) != g(0,2)":
        failures.append("negative fixture")

    dims = Dims(2, 2, 2)
    rep = aut_rep(dims)
    rng = random.Random(1100)
    for label, pc in bundle_fixtures(dims, 3).items():
        if not report_passed(cocycle_verify(pc)):
            failures.append((label, "generated cocycle"))
        dual = dual_bundle(pc, rep)
        for i, j in sorted(pc.cover.overlaps):
            for src, dst in ((i, j), (j, i)):
                g = rep(pc(dst, src))
                for _ in range(20):
                    u, r = random_element(rng, dims), Fr(rng.randint(-4, 4), rng.randint(1, 3))
                    v = DvsElement(u.x, random_element(rng, dims).y, random_element(rng, dims).z)
                    w = DvsElement(random_element(rng, dims).x, u.y, random_element(rng, dims).z)
                    mv = lambda e: chart_change(pc, rep, AssocElement(src, e), dst).value  # noqa: E731
                    for side, other in (("I", v), ("II", w)):
                        if not mv(dvs_add(side, u, other)).equals(dvs_add(side, mv(u), mv(other))):
                            failures.append((label, src, dst, "addition " + side))
                    scaled = DvsElement(r * u.x, u.y, r * u.z)
                    if not mv(scaled).equals(DvsElement(r * mv(u).x, mv(u).y, r * mv(u).z)):
                        failures.append((label, src, dst, "scaling I"))
                    moved = AssocElement(dst, mv(u))
                    if not (la.equal(project_I(moved)[1], g.a1.dot(u.x))
                            and la.equal(project_II(moved)[1], g.a2.dot(u.y))):
                        failures.append((label, src, dst, "projections"))
                    wd = dual_point(rng, dims, u.x)
                    w2 = chart_change(pc, dual, AssocElement(src, wd), dst).value
                    if pair(mv(u), w2) != pair(u, wd):
                        failures.append((label, src, dst, "pairing"))
    verdict(11, failures, "fixtures, then chart independence on cycle3 and complete3")


def test_criterion_12_connections(verdict):
    failures = []
    triv = DlaAmbient(trivial_product_dla())
    if not all(v["pass"] for v in splitting_connection_check(triv, triv.canonical_section()).values()):
        failures.append("trivial product")
    dims = Dims(1, 1, 1)
    amb = AutAlgebraAmbient(dims)
    rep = splitting_connection_check(amb, amb.canonical_section())
    msg = rep["core_commutes"]["counterexample"] or ""
    if rep["core_commutes"]["pass"] or rep["connection"]["pass"] or "alpha=[1]" not in msg:
        failures.append(("aut canonical", rep["core_commutes"]))
    # oracle: bracket the core generator with each side generator directly
    e = la.eye(4)
    core = der_from_vector(e[3], dims)
    for k in (0, 1):
        br = der_to_vector(der_bracket(core, der_from_vector(e[k], dims)))
        if la.is_zero(br) or not la.is_zero(br[:3]):
            failures.append(("oracle", k, list(br)))
    if not rep["sides_commute"]["pass"]:
        failures.append("sides")
    verdict(12, failures, "trivial product passes, aut(1,1,1) canonical splitting fails the core condition")
