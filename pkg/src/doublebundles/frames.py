"""Frames of a double vector space and the Aut(R^[n]) action on them.

A frame ``(U, V, W; mu)`` consists of bases of V1, V2, V0 (the columns of
``U``, ``V``, ``W``) and a decomposition, recorded by its twist ``mu``
relative to the canonical one.  It reads coordinates ``xi = (x, y, z)`` as

    frame_eval(F, xi) = (U x, V y, W z + mu(U x, V y)).

Right action.  ``frame_act(F, a)`` is fixed by requiring the reconstruction
``F xi = (F a)(a^-1 xi)`` for every ``xi``.  Writing ``a = (a1, a2, a0, m)``,
this gives

    F a = (U a1, V a2, W a0, mu + W o m o ((U a1)^-1 x (V a2)^-1)),

i.e. the new twist adds ``(U x, V y) -> W m(a1^-1 x, a2^-1 y)`` in the old
frame's coordinates.  Equivalently ``to_aut(F a) = to_aut(F) . a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .aut import DvsAut, aut_apply, aut_compose, aut_inverse
from .dvs import BilinearMap, Dims, DvsElement
from .errors import DimMismatch, Singular


@dataclass(frozen=True, eq=False)
class Frame:
    U: np.ndarray
    V: np.ndarray
    W: np.ndarray
    mu: BilinearMap

    def __post_init__(self):
        n0, n1, n2 = self.mu.shape
        for name, m, n in (("U", self.U, n1), ("V", self.V, n2), ("W", self.W, n0)):
            la.check_square(m, n, name)

    @classmethod
    def canonical(cls, dims: Dims, kind: str = la.RATIONAL) -> "Frame":
        return cls(la.eye(dims.n1, kind), la.eye(dims.n2, kind), la.eye(dims.n0, kind),
                   BilinearMap.zero(dims, kind))

    @classmethod
    def of(cls, U, V, W, mu, kind: str = la.RATIONAL) -> "Frame":
        return cls(la.as_array(U, kind), la.as_array(V, kind), la.as_array(W, kind), BilinearMap.of(mu, kind))

    @property
    def dims(self) -> Dims:
        n0, n1, n2 = self.mu.shape
        return Dims(n1, n2, n0)

    def equals(self, other: "Frame", tol: float | None = None) -> bool:
        return (la.equal(self.U, other.U, tol) and la.equal(self.V, other.V, tol)
                and la.equal(self.W, other.W, tol) and self.mu.equals(other.mu, tol))

    def __repr__(self):
        return (f"Frame(U={self.U.tolist()}, V={self.V.tolist()}, W={self.W.tolist()}, "
                f"mu={self.mu.coeffs.tolist()})")


def _check_invertible(F: Frame) -> None:
    for name, m in (("U", F.U), ("V", F.V), ("W", F.W)):
        if not la.is_invertible(m):
            raise Singular(f"frame block {name} is not a basis")


def frame_eval(F: Frame, xi: DvsElement) -> DvsElement:
    if xi.dims != F.dims:
        raise DimMismatch(f"coordinates over {xi.dims} for a frame over {F.dims}")
    return aut_apply(frame_to_aut(F), xi)


def frame_to_aut(F: Frame) -> DvsAut:
    """The automorphism xi -> F xi, namely (U, V, W, mu o (U x V))."""
    return DvsAut(F.U, F.V, F.W, F.mu.precompose(F.U, F.V))


def aut_to_frame(g: DvsAut) -> Frame:
    """Inverse of :func:`frame_to_aut`."""
    return Frame(g.a1, g.a2, g.a0, g.mu.precompose(la.inverse(g.a1), la.inverse(g.a2)))


def frame_act(F: Frame, a: DvsAut) -> Frame:
    if a.dims != F.dims:
        raise DimMismatch(f"automorphism over {a.dims} acting on a frame over {F.dims}")
    _check_invertible(F)
    U, V = F.U @ a.a1, F.V @ a.a2
    extra = a.mu.postcompose(F.W).precompose(la.inverse(U), la.inverse(V))
    return Frame(U, V, F.W @ a.a0, F.mu + extra)


def frame_transition(F: Frame, G: Frame) -> DvsAut:
    """The unique ``a`` with ``frame_act(F, a) == G``."""
    if F.dims != G.dims:
        raise DimMismatch(f"frames over {F.dims} and {G.dims}")
    _check_invertible(F)
    _check_invertible(G)
    return aut_compose(aut_inverse(frame_to_aut(F)), frame_to_aut(G))
