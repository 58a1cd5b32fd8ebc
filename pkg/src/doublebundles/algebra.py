"""The Lie algebra aut(V) of Aut(R^[n]).

Elements are quadruples ``(A1, A2, A0, alpha)`` with ``alpha`` a bilinear map
V1 x V2 -> V0.  The bracket is

    [(A, mu), (B, nu)] = ([A1,B1], [A2,B2], [A0,B0], A |> nu - B |> mu)

with the triangle action ``A |> nu = A0 o nu - nu o (A1 x I) - nu o (I x A2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import linalg as la
from .aut import DvsAut, aut_compose
from .dvs import BilinearMap, Dims
from .errors import DimMismatch, ToleranceNotMet

# Fourth-order symmetric composition (triple jump) weights.
_W1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
_W0 = -(2.0 ** (1.0 / 3.0)) / (2.0 - 2.0 ** (1.0 / 3.0))

_MAX_REFINEMENTS = 12


@dataclass(frozen=True, eq=False)
class DvsDer:
    A1: np.ndarray
    A2: np.ndarray
    A0: np.ndarray
    alpha: BilinearMap

    def __post_init__(self):
        n0, n1, n2 = self.alpha.shape
        for name, m, n in (("A1", self.A1, n1), ("A2", self.A2, n2), ("A0", self.A0, n0)):
            la.check_square(m, n, name)

    @classmethod
    def zero(cls, dims: Dims, kind: str = la.RATIONAL) -> "DvsDer":
        return cls(la.zeros((dims.n1, dims.n1), kind), la.zeros((dims.n2, dims.n2), kind),
                   la.zeros((dims.n0, dims.n0), kind), BilinearMap.zero(dims, kind))

    @classmethod
    def of(cls, A1, A2, A0, alpha, kind: str = la.RATIONAL) -> "DvsDer":
        return cls(la.as_array(A1, kind), la.as_array(A2, kind), la.as_array(A0, kind),
                   BilinearMap.of(alpha, kind))

    @property
    def dims(self) -> Dims:
        n0, n1, n2 = self.alpha.shape
        return Dims(n1, n2, n0)

    @property
    def kind(self) -> str:
        return self.alpha.kind if self.alpha.coeffs.size else la.kind_of(self.A1)

    def blocks(self) -> tuple[np.ndarray, ...]:
        return self.A1, self.A2, self.A0, self.alpha.coeffs

    def __add__(self, other: "DvsDer") -> "DvsDer":
        return DvsDer(self.A1 + other.A1, self.A2 + other.A2, self.A0 + other.A0, self.alpha + other.alpha)

    def __sub__(self, other: "DvsDer") -> "DvsDer":
        return DvsDer(self.A1 - other.A1, self.A2 - other.A2, self.A0 - other.A0, self.alpha - other.alpha)

    def scale(self, r) -> "DvsDer":
        return DvsDer(self.A1 * r, self.A2 * r, self.A0 * r, self.alpha.scale(r))

    def norm(self) -> float:
        """Largest absolute entry over all four blocks."""
        return max(la.max_abs(b) for b in self.blocks())

    def equals(self, other: "DvsDer", tol: float | None = None) -> bool:
        return all(la.equal(a, b, tol) for a, b in zip(self.blocks(), other.blocks()))

    def to_kind(self, kind: str) -> "DvsDer":
        return DvsDer(*(la.convert(b, kind) for b in self.blocks()[:3]),
                      BilinearMap(la.convert(self.alpha.coeffs, kind)))

    def __repr__(self):
        return (f"DvsDer(A1={self.A1.tolist()}, A2={self.A2.tolist()}, "
                f"A0={self.A0.tolist()}, alpha={self.alpha.coeffs.tolist()})")


def triangle_action(A1: np.ndarray, A2: np.ndarray, A0: np.ndarray, nu: BilinearMap) -> BilinearMap:
    n0, n1, n2 = nu.shape
    if A1.shape != (n1, n1) or A2.shape != (n2, n2) or A0.shape != (n0, n0):
        raise DimMismatch(f"matrices {A1.shape}, {A2.shape}, {A0.shape} do not act on a {nu.shape} tensor")
    return nu.postcompose(A0) - nu.precompose(A1, la.eye(n2, nu.kind)) - nu.precompose(la.eye(n1, nu.kind), A2)


def der_bracket(X: DvsDer, Y: DvsDer) -> DvsDer:
    if X.dims != Y.dims:
        raise DimMismatch(f"cannot bracket elements over {X.dims} and {Y.dims}")
    upsilon = (triangle_action(X.A1, X.A2, X.A0, Y.alpha)
               - triangle_action(Y.A1, Y.A2, Y.A0, X.alpha))
    return DvsDer(la.commutator(X.A1, Y.A1), la.commutator(X.A2, Y.A2),
                  la.commutator(X.A0, Y.A0), upsilon)


def der_project(X: DvsDer) -> tuple[np.ndarray, np.ndarray]:
    """Quotient map aut(V) -> gl(V1) + gl(V2)."""
    return X.A1, X.A2


# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------

def der_dimension(dims: Dims) -> int:
    return dims.n1 ** 2 + dims.n2 ** 2 + dims.n0 ** 2 + dims.n0 * dims.n1 * dims.n2


def der_to_vector(X: DvsDer) -> np.ndarray:
    """Flatten as (A1, A2, A0, alpha), each block row-major."""
    return np.concatenate([b.ravel() for b in X.blocks()])


def der_from_vector(v: np.ndarray, dims: Dims) -> DvsDer:
    v = np.asarray(v)
    if len(v) != der_dimension(dims):
        raise DimMismatch(f"vector of length {len(v)} for aut algebra of dimension {der_dimension(dims)}")
    sizes = [dims.n1 ** 2, dims.n2 ** 2, dims.n0 ** 2]
    o1, o2, o3 = np.cumsum(sizes)
    return DvsDer(v[:o1].reshape(dims.n1, dims.n1), v[o1:o2].reshape(dims.n2, dims.n2),
                  v[o2:o3].reshape(dims.n0, dims.n0), BilinearMap(v[o3:].reshape(dims.tensor_shape)))


# ---------------------------------------------------------------------------
# exponential
# ---------------------------------------------------------------------------

def _expm(m: np.ndarray) -> np.ndarray:
    if m.shape[0] == 0:
        return np.zeros((0, 0))
    return scipy.linalg.expm(m)


def exp_linear_part(X: DvsDer, t: float = 1.0) -> DvsAut:
    """exp t(A1, A2, A0, 0) = (e^{tA1}, e^{tA2}, e^{tA0}, 0)."""
    X = X.to_kind(la.FLOAT)
    return DvsAut(_expm(t * X.A1), _expm(t * X.A2), _expm(t * X.A0), BilinearMap.zero(X.dims, la.FLOAT))


def exp_twist_part(X: DvsDer, t: float = 1.0) -> DvsAut:
    """exp t(0, 0, 0, nu) = (I, I, I, t nu)."""
    X = X.to_kind(la.FLOAT)
    dims = X.dims
    return DvsAut(np.eye(dims.n1), np.eye(dims.n2), np.eye(dims.n0), X.alpha.scale(t))


def _strang(X: DvsDer, t: float) -> DvsAut:
    half = exp_linear_part(X, t / 2)
    return aut_compose(aut_compose(half, exp_twist_part(X, t)), half)


def _base_step(X: DvsDer, t: float) -> DvsAut:
    return aut_compose(aut_compose(_strang(X, _W1 * t), _strang(X, _W0 * t)), _strang(X, _W1 * t))


def _scaled_exp(X: DvsDer, k: int) -> DvsAut:
    g = _base_step(X, 2.0 ** -k)
    for _ in range(k):
        g = aut_compose(g, g)
    return g


def der_exp(X: DvsDer, tol: float = 1e-9) -> DvsAut:
    """Group exponential of ``X`` by scaling and squaring inside Aut(V).

    The base step over ``h = 2^-k`` is a fourth-order symmetric composition
    of the two closed-form exponentials (linear part and twist part); it is
    then squared ``k`` times with the exact group law.  ``k`` is refined until
    the error estimate from two successive levels (difference / 15, the
    fourth-order contraction) drops to ``tol / 16``; if rounding stalls the
    refinement first, the best level is accepted provided its estimate is
    within ``tol``.  Otherwise :class:`ToleranceNotMet` is raised.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    X = X.to_kind(la.FLOAT)
    norm = X.norm() * max(X.dims.n1, X.dims.n2, X.dims.n0, 1)
    if norm == 0.0:
        return DvsAut.identity(X.dims, la.FLOAT)
    k = max(0, math.ceil(math.log2(norm * 16)))
    prev = _scaled_exp(X, k)
    best, best_g = math.inf, prev
    for _ in range(_MAX_REFINEMENTS):
        k += 1
        cur = _scaled_exp(X, k)
        estimate = cur.max_abs_diff(prev) / 15.0
        if estimate < best:
            best, best_g = estimate, cur
        if estimate <= tol / 16:
            return cur
        if estimate > 4 * best:
            # rounding has taken over; further refinement only makes it worse
            break
        prev = cur
    if best <= tol:
        return best_g
    raise ToleranceNotMet(f"exponential could not be certified to {tol:g} (best error estimate {best:.3g})")


def commutator_oracle(X: DvsDer, Y: DvsDer, h: float) -> DvsDer:
    """Second-difference estimate of [X, Y] from the group commutator.

    C(h, h) = exp(hX) exp(hY) exp(-hX) exp(-hY) = e + h^2 [X, Y] + O(h^3),
    so (C(h, h) - e) / h^2 approximates the bracket with O(h) error.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if X.dims != Y.dims:
        raise DimMismatch(f"cannot compare elements over {X.dims} and {Y.dims}")
    X, Y = X.to_kind(la.FLOAT), Y.to_kind(la.FLOAT)
    tol = 1e-12
    c = aut_compose(aut_compose(der_exp(X.scale(h), tol), der_exp(Y.scale(h), tol)),
                    aut_compose(der_exp(X.scale(-h), tol), der_exp(Y.scale(-h), tol)))
    dims = X.dims
    h2 = h * h
    return DvsDer((c.a1 - np.eye(dims.n1)) / h2, (c.a2 - np.eye(dims.n2)) / h2,
                  (c.a0 - np.eye(dims.n0)) / h2, c.mu.scale(1.0 / h2))
