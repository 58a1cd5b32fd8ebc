import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doublebundles import (BilinearMap, Dims, DvsAut, DvsDer, ToleranceNotMet, aut_compose, commutator_oracle,
                           der_bracket, der_exp, exp_linear_part, exp_twist_part)
from doublebundles import linalg as la
from doublebundles.algebra import der_from_vector, der_project, der_to_vector, triangle_action
from doublebundles.suites import random_der

from oracles import block_exp, exp_error

D111 = Dims(1, 1, 1)
DIMS = [Dims(1, 1, 1), Dims(2, 2, 2), Dims(3, 2, 1), Dims(1, 0, 2)]
seeds = st.integers(0, 2**32 - 1)


def d(A1, A2, A0, alpha):
    return DvsDer.of([[A1]], [[A2]], [[A0]], [[[alpha]]])


def rel_err(est: DvsDer, ref: DvsDer) -> float:
    diff = np.max(np.abs(der_to_vector(est.to_kind(la.FLOAT) - ref.to_kind(la.FLOAT)).astype(float)))
    return float(diff / np.max(np.abs(der_to_vector(ref).astype(float))))


def test_bracket_examples():
    X, Y = d(1, 2, 3, 4), d(5, 6, 7, 8)
    assert der_bracket(X, X).equals(DvsDer.zero(D111))
    assert der_bracket(X, Y).equals(d(0, 0, 0, 16))


def test_bracket_linear_with_twist():
    rng = random.Random(0)
    dims = Dims(2, 2, 2)
    R = random_der(rng, dims)
    lin = DvsDer(R.A1, R.A2, R.A0, BilinearMap.zero(dims))
    nu = random_der(rng, dims).alpha
    tw = DvsDer(la.zeros((2, 2)), la.zeros((2, 2)), la.zeros((2, 2)), nu)
    expect = nu.postcompose(R.A0) - nu.precompose(R.A1, la.eye(2)) - nu.precompose(la.eye(2), R.A2)
    assert der_bracket(lin, tw).equals(DvsDer(la.zeros((2, 2)), la.zeros((2, 2)), la.zeros((2, 2)), expect))


def test_triangle_action_examples():
    one = la.as_array([[1]])
    z = la.zeros((1, 1))
    assert triangle_action(z, z, z, BilinearMap.of([[[4]]])).equals(BilinearMap.zero(D111))
    assert triangle_action(one, 2 * one, 3 * one, BilinearMap.of([[[4]]])).coeffs[0, 0, 0] == 0
    assert triangle_action(one, z, z, BilinearMap.of([[[1]]])).coeffs[0, 0, 0] == -1


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(DIMS))
def test_bracket_is_a_lie_bracket(seed, dims):
    rng = random.Random(seed)
    X, Y, Z = (random_der(rng, dims) for _ in range(3))
    assert der_bracket(X, Y).equals(DvsDer.zero(dims) - der_bracket(Y, X))
    jac = der_bracket(der_bracket(X, Y), Z) + der_bracket(der_bracket(Y, Z), X) + der_bracket(der_bracket(Z, X), Y)
    assert jac.equals(DvsDer.zero(dims))
    p1, p2 = der_project(der_bracket(X, Y))
    assert la.equal(p1, la.commutator(X.A1, Y.A1)) and la.equal(p2, la.commutator(X.A2, Y.A2))


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(DIMS))
def test_triangle_is_an_action(seed, dims):
    rng = random.Random(seed)
    X, Y, N = (random_der(rng, dims) for _ in range(3))
    C = der_bracket(X, Y)

    def act(Z, nu):
        return triangle_action(Z.A1, Z.A2, Z.A0, nu)

    lhs = act(C, N.alpha)
    rhs = act(X, act(Y, N.alpha)) - act(Y, act(X, N.alpha))
    assert lhs.equals(rhs)


def test_vector_round_trip():
    X = random_der(random.Random(2), Dims(3, 2, 1))
    assert der_from_vector(der_to_vector(X), X.dims).equals(X)


def test_exp_of_zero_is_identity():
    assert der_exp(DvsDer.zero(Dims(2, 2, 2))).equals(DvsAut.identity(Dims(2, 2, 2), la.FLOAT), tol=0.0)


@pytest.mark.parametrize("seed", range(10))
def test_exp_closed_forms(seed):
    rng = random.Random(seed)
    dims = DIMS[seed % len(DIMS)]
    X = random_der(rng, dims, la.FLOAT, 0.5)
    lin = DvsDer(X.A1, X.A2, X.A0, BilinearMap.zero(dims, la.FLOAT))
    tw = DvsDer(0 * X.A1, 0 * X.A2, 0 * X.A0, X.alpha)
    assert der_exp(lin, 1e-13).max_abs_diff(exp_linear_part(X)) <= 1e-12
    assert der_exp(tw, 1e-13).max_abs_diff(exp_twist_part(X)) <= 1e-12


@pytest.mark.parametrize("seed", range(20))
def test_exp_matches_block_matrix_exponential(seed):
    rng = random.Random(seed)
    dims = DIMS[seed % len(DIMS)]
    X = random_der(rng, dims, la.FLOAT, 0.5 + seed / 10)
    assert exp_error(der_exp(X, 1e-10), X) <= 1e-9


def test_exp_block_oracle_self_check():
    X = d(0, 0, 0, 3)
    a1, a2, a0, mu = block_exp(X)
    assert mu[0, 0, 0] == pytest.approx(3.0)
    assert a0[0, 0] == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(10))
def test_one_parameter_subgroup(seed):
    rng = random.Random(seed)
    X = random_der(rng, Dims(2, 2, 2), la.FLOAT, 0.5)
    s, t = rng.uniform(-1, 1), rng.uniform(-1, 1)
    lhs = aut_compose(der_exp(X.scale(s)), der_exp(X.scale(t)))
    assert lhs.max_abs_diff(der_exp(X.scale(s + t))) <= 1e-9


def test_exp_derivative_is_first_order():
    X = random_der(random.Random(4), Dims(2, 2, 2), la.FLOAT, 0.5)
    errs = []
    for h in (1e-3, 1e-4):
        g = der_exp(X.scale(h), 1e-14)
        diff = DvsDer((g.a1 - np.eye(2)) / h, (g.a2 - np.eye(2)) / h, (g.a0 - np.eye(2)) / h, g.mu.scale(1 / h))
        errs.append(np.max(np.abs(der_to_vector(diff - X).astype(float))))
    assert errs[1] < errs[0] / 5
    assert errs[0] <= 10 * 1e-3 * X.norm() ** 2


def test_exp_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        der_exp(d(1, 0, 0, 0), 0)
    with pytest.raises(ToleranceNotMet):
        der_exp(d(3, -2, 1, 5), 1e-30)


def test_commutator_oracle_example():
    est = commutator_oracle(d(1, 2, 3, 4), d(5, 6, 7, 8), 1e-4)
    assert abs(float(est.alpha.coeffs[0, 0, 0]) - 16) <= 1e-2 * 16
    same = commutator_oracle(d(1, 2, 3, 4), d(1, 2, 3, 4), 1e-4)
    assert np.max(np.abs(der_to_vector(same).astype(float))) <= 1e-2


def test_commutator_oracle_linear_blocks():
    A = la.as_array([[0, 1], [0, 0]])
    B = la.as_array([[0, 0], [1, 0]])
    z1 = la.zeros((1, 1))
    dims = Dims(2, 1, 1)
    X = DvsDer(A, z1, z1, BilinearMap.zero(dims))
    Y = DvsDer(B, z1, z1, BilinearMap.zero(dims))
    est = commutator_oracle(X, Y, 1e-4)
    assert np.allclose(est.A1.astype(float), la.commutator(A, B).astype(float), atol=1e-2)


def test_commutator_oracle_converges_linearly():
    rng = random.Random(11)
    X, Y = random_der(rng, Dims(2, 2, 2)), random_der(rng, Dims(2, 2, 2))
    exact = der_bracket(X, Y)
    errs = [rel_err(commutator_oracle(X, Y, h), exact) for h in (1e-2, 1e-3, 1e-4)]
    assert errs[2] <= 1e-3
    for coarse, fine in zip(errs, errs[1:]):
        assert 3 <= coarse / fine <= 30
