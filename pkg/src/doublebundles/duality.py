"""Duality over V1.

The dual of R^[n] over V1 has side spaces V1 and V0*, and core V2*; its
dimensions are ``Dims(n1, n0, n2)``.  A dual element is stored as
``(x, eta0, zeta2)`` with ``eta0`` in V0* and ``zeta2`` in V2*.

The map ``f(a1, a2, a0, mu) = (a1^-1, a0^T, a2^T, mu*_I o a1^-1)`` reverses
products, and ``g -> f(g^-1)`` is the dual representation.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .aut import DvsAut, aut_inverse
from .dvs import BilinearMap, DvsElement
from .errors import BaseMismatch, DimMismatch


def mu_dual_I(mu: BilinearMap) -> BilinearMap:
    """The dual with respect to V1: <mu*(v1, eta0), v2> = <eta0, mu(v1, v2)>.

    Input is indexed [k][i][j] over (V0, V1, V2); the result is indexed
    [j][i][k] over (V2*, V1, V0*).
    """
    return BilinearMap(np.transpose(mu.coeffs, (2, 1, 0)).copy())


def f_dual(a: DvsAut) -> DvsAut:
    """The product-reversing bijection Aut(V) -> Aut(V*_I)."""
    inv1 = la.inverse(a.a1)
    twist = mu_dual_I(a.mu).precompose(inv1, la.eye(a.dims.n0, a.kind))
    return DvsAut(inv1, a.a0.T.copy(), a.a2.T.copy(), twist)


def f_dual_inverse(b: DvsAut) -> DvsAut:
    """Inverse of :func:`f_dual`, mapping Aut(V*_I) back to Aut(V)."""
    a1 = la.inverse(b.a1)
    # b.mu = mu*_I o a1^-1, so mu*_I = b.mu o a1
    mu_star = b.mu.precompose(a1, la.eye(b.dims.n2, b.kind))
    return DvsAut(a1, b.a0.T.copy(), b.a2.T.copy(), mu_dual_I(mu_star))


def dual_rep(g: DvsAut) -> DvsAut:
    """g -> f(g^-1), a homomorphism Aut(V) -> Aut(V*_I)."""
    return f_dual(aut_inverse(g))


def pair(v: DvsElement, w: DvsElement):
    """Fibre pairing <eta0, z> + <zeta2, y> over a shared V1 point ``x``.

    ``v = (x, y, z)`` lies in V and ``w = (x, eta0, zeta2)`` in V*_I.
    """
    if v.dims.dual != w.dims:
        raise DimMismatch(f"cannot pair elements over {v.dims} and {w.dims}")
    if not la.equal(v.x, w.x):
        raise BaseMismatch(f"pairing needs a common V1 point: {list(v.x)} vs {list(w.x)}")
    zero = la.scalar(0, v.kind)
    return sum(w.y * v.z, zero) + sum(w.z * v.y, zero)


def pairing_matrix(dims) -> np.ndarray:
    """Matrix of :func:`pair` on fibre coordinates (y, z) x (eta0, zeta2)."""
    n = dims.n2 + dims.n0
    m = la.zeros((n, n))
    for j in range(dims.n2):
        m[j, dims.n0 + j] = 1
    for k in range(dims.n0):
        m[dims.n2 + k, k] = 1
    return m
