"""Independent reference computations used by the tests.

Aut(R^[n]) embeds into GL(V0 + V1 (x) V2) as

    [[a0, mu_flat],
     [0,  a1 (x) a2]]

and aut(R^[n]) into gl of the same space as [[A0, alpha], [0, A1 (x) I + I (x) A2]].
Composition and exponentials are then plain matrix operations.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import scipy.linalg

from doublebundles import BilinearMap, DvsAut, DvsDer
from doublebundles import linalg as la


def aut_block(a: DvsAut) -> np.ndarray:
    n0, n1, n2 = a.mu.shape
    top = np.concatenate([a.a0, a.mu.coeffs.reshape(n0, n1 * n2)], axis=1)
    bottom = np.concatenate([la.zeros((n1 * n2, n0)), np.kron(a.a1, a.a2)], axis=1)
    return np.concatenate([top, bottom], axis=0)


def compose_by_blocks(a: DvsAut, b: DvsAut) -> DvsAut:
    n0, n1, n2 = a.mu.shape
    m = aut_block(a).dot(aut_block(b))
    return DvsAut(a.a1.dot(b.a1), a.a2.dot(b.a2), m[:n0, :n0], BilinearMap(m[:n0, n0:].reshape(n0, n1, n2)))


def der_block(X: DvsDer) -> np.ndarray:
    n0, n1, n2 = X.alpha.shape
    A1, A2 = X.A1.astype(float), X.A2.astype(float)
    m = np.zeros((n0 + n1 * n2,) * 2)
    m[:n0, :n0] = X.A0.astype(float)
    m[:n0, n0:] = X.alpha.coeffs.astype(float).reshape(n0, n1 * n2)
    m[n0:, n0:] = np.kron(A1, np.eye(n2)) + np.kron(np.eye(n1), A2)
    return m


def block_exp(X: DvsDer):
    """(e^A1, e^A2, a0, mu) of exp X read off the block embedding."""
    n0, n1, n2 = X.alpha.shape
    e = scipy.linalg.expm(der_block(X))
    return (scipy.linalg.expm(X.A1.astype(float)), scipy.linalg.expm(X.A2.astype(float)),
            e[:n0, :n0], e[:n0, n0:].reshape(n0, n1, n2))


def exp_error(g: DvsAut, X: DvsDer) -> float:
    ref = block_exp(X)
    got = (g.a1, g.a2, g.a0, g.mu.coeffs)
    return max(float(np.max(np.abs(np.asarray(r, dtype=float) - np.asarray(x, dtype=float)), initial=0.0))
               for r, x in zip(ref, got))


def hand_apply(a: DvsAut, x, y, z):
    """(a1 x, a2 y, a0 z + mu(x, y)) with explicit loops."""
    n0, n1, n2 = a.mu.shape
    ax = [sum(a.a1[i][k] * x[k] for k in range(n1)) for i in range(n1)]
    ay = [sum(a.a2[j][k] * y[k] for k in range(n2)) for j in range(n2)]
    az = [sum(a.a0[s][k] * z[k] for k in range(n0))
          + sum(a.mu.coeffs[s][i][j] * x[i] * y[j] for i in range(n1) for j in range(n2))
          for s in range(n0)]
    return ax, ay, az


def rat(rng: random.Random, size: int = 4) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, 3))


def _eval(coeffs, vectors):
    out = coeffs
    for v in vectors:
        out = np.tensordot(v, out, axes=(0, 0))
    return out


def ce_on_vectors(structure, action, coeffs, vectors):
    """The CE differential of a cochain evaluated directly on arbitrary vectors."""
    p1 = len(vectors)
    val = 0
    for i in range(p1):
        rest = vectors[:i] + vectors[i + 1:]
        rho = np.einsum("g,gab->ab", vectors[i], action)
        val = val + (-1) ** i * rho.dot(_eval(coeffs, rest))
    for i in range(p1):
        for j in range(i + 1, p1):
            br = np.einsum("a,b,abk->k", vectors[i], vectors[j], structure)
            rest = [v for t, v in enumerate(vectors) if t not in (i, j)]
            val = val + (-1) ** (i + j) * _eval(coeffs, [br] + rest)
    return val
