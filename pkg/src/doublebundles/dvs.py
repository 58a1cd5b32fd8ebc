"""The trivial double vector space R^[n] = V1 (+) V2 (+) V0.

An element is a triple ``(x, y, z)`` with ``x`` in V1, ``y`` in V2 and ``z`` in
the core V0.  The two vector-space structures are

* side I, the bundle V -> V1: fixes ``x`` and adds/scales ``(y, z)``;
* side II, the bundle V -> V2: fixes ``y`` and adds/scales ``(x, z)``.

Bilinear maps V1 x V2 -> V0 are stored as tensors indexed ``[k][i][j]``
(core index first).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import BaseMismatch, DimMismatch

SIDES = ("I", "II")


@dataclass(frozen=True)
class Dims:
    n1: int
    n2: int
    n0: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.n0) < 0:
            raise DimMismatch(f"negative dimension in {self}")

    @property
    def total(self) -> int:
        return self.n1 + self.n2 + self.n0

    @property
    def dual(self) -> "Dims":
        """Dimensions of the dual over V1: V2 and the core trade places."""
        return Dims(self.n1, self.n0, self.n2)

    @property
    def tensor_shape(self) -> tuple[int, int, int]:
        return (self.n0, self.n1, self.n2)

    @classmethod
    def parse(cls, text: str) -> "Dims":
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3:
            raise DimMismatch(f"expected n1,n2,n0 but got {text!r}")
        return cls(*parts)

    def __str__(self):
        return f"({self.n1},{self.n2},{self.n0})"


@dataclass(frozen=True, eq=False)
class BilinearMap:
    """A bilinear map V1 x V2 -> V0 with coefficients ``coeffs[k, i, j]``."""

    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.ndim != 3:
            raise DimMismatch(f"bilinear map needs a rank-3 tensor, got shape {self.coeffs.shape}")

    @classmethod
    def zero(cls, dims: Dims, kind: str = la.RATIONAL) -> "BilinearMap":
        return cls(la.zeros(dims.tensor_shape, kind))

    @classmethod
    def of(cls, data, kind: str = la.RATIONAL) -> "BilinearMap":
        return cls(la.as_array(data, kind))

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.coeffs.shape

    @property
    def kind(self) -> str:
        return la.kind_of(self.coeffs)

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        n0, n1, n2 = self.shape
        if len(x) != n1 or len(y) != n2:
            raise DimMismatch(f"cannot evaluate {self.shape} tensor on ({len(x)}, {len(y)})")
        if n0 == 0:
            return la.zeros((0,), self.kind)
        out = np.einsum("kij,i,j->k", self.coeffs, x, y)
        return out if n1 and n2 else la.zeros((n0,), self.kind)

    def __add__(self, other: "BilinearMap") -> "BilinearMap":
        _same_shape(self, other)
        return BilinearMap(self.coeffs + other.coeffs)

    def __sub__(self, other: "BilinearMap") -> "BilinearMap":
        _same_shape(self, other)
        return BilinearMap(self.coeffs - other.coeffs)

    def __neg__(self) -> "BilinearMap":
        return BilinearMap(-self.coeffs)

    def scale(self, r) -> "BilinearMap":
        return BilinearMap(self.coeffs * r)

    def precompose(self, b1: np.ndarray, b2: np.ndarray) -> "BilinearMap":
        """``mu o (b1 x b2)``: (x, y) -> mu(b1 x, b2 y)."""
        n0, n1, n2 = self.shape
        out_shape = (n0, b1.shape[1], b2.shape[1])
        if b1.shape[0] != n1 or b2.shape[0] != n2:
            raise DimMismatch("precomposition shapes do not match")
        if 0 in out_shape or 0 in self.shape:
            return BilinearMap(la.zeros(out_shape, self.kind))
        return BilinearMap(np.einsum("kpq,pi,qj->kij", self.coeffs, b1, b2))

    def postcompose(self, a0: np.ndarray) -> "BilinearMap":
        """``a0 o mu``."""
        n0, n1, n2 = self.shape
        if a0.shape[1] != n0:
            raise DimMismatch("postcomposition shapes do not match")
        out_shape = (a0.shape[0], n1, n2)
        if 0 in out_shape or n0 == 0:
            return BilinearMap(la.zeros(out_shape, self.kind))
        return BilinearMap(np.einsum("kl,lij->kij", a0, self.coeffs))

    def partial(self, x: np.ndarray) -> np.ndarray:
        """The linear map V2 -> V0, y -> mu(x, y), as an (n0 x n2) matrix."""
        n0, n1, n2 = self.shape
        if n1 == 0 or n0 == 0 or n2 == 0:
            return la.zeros((n0, n2), self.kind)
        return np.einsum("kij,i->kj", self.coeffs, x)

    def equals(self, other: "BilinearMap", tol: float | None = None) -> bool:
        return la.equal(self.coeffs, other.coeffs, tol)


def _same_shape(a: BilinearMap, b: BilinearMap) -> None:
    if a.shape != b.shape:
        raise DimMismatch(f"bilinear maps of shapes {a.shape} and {b.shape}")


@dataclass(frozen=True, eq=False)
class DvsElement:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    @classmethod
    def of(cls, x, y, z, kind: str = la.RATIONAL) -> "DvsElement":
        return cls(la.as_array(x, kind), la.as_array(y, kind), la.as_array(z, kind))

    @classmethod
    def core(cls, dims: Dims, z, kind: str = la.RATIONAL) -> "DvsElement":
        return cls(la.zeros((dims.n1,), kind), la.zeros((dims.n2,), kind), la.as_array(z, kind))

    @property
    def dims(self) -> Dims:
        return Dims(len(self.x), len(self.y), len(self.z))

    @property
    def kind(self) -> str:
        return la.kind_of(self.x)

    def is_core(self) -> bool:
        return la.is_zero(self.x) and la.is_zero(self.y)

    def equals(self, other: "DvsElement", tol: float | None = None) -> bool:
        return (la.equal(self.x, other.x, tol) and la.equal(self.y, other.y, tol)
                and la.equal(self.z, other.z, tol))

    def __repr__(self):
        return f"DvsElement(x={list(self.x)}, y={list(self.y)}, z={list(self.z)})"


def _check_dims(*elements: DvsElement) -> Dims:
    dims = elements[0].dims
    for e in elements[1:]:
        if e.dims != dims:
            raise DimMismatch(f"dimensions {e.dims} and {dims} differ")
    return dims


def zero_I(x: np.ndarray, dims: Dims) -> DvsElement:
    """Zero of the fibre over ``x`` for the side-I structure."""
    kind = la.kind_of(np.asarray(x))
    return DvsElement(np.asarray(x), la.zeros((dims.n2,), kind), la.zeros((dims.n0,), kind))


def zero_II(y: np.ndarray, dims: Dims) -> DvsElement:
    kind = la.kind_of(np.asarray(y))
    return DvsElement(la.zeros((dims.n1,), kind), np.asarray(y), la.zeros((dims.n0,), kind))


def dvs_add(side: str, u: DvsElement, v: DvsElement, tol: float | None = None) -> DvsElement:
    """Add two elements in the same side-I (fixed x) or side-II (fixed y) fibre."""
    _check_dims(u, v)
    if side == "I":
        if not la.equal(u.x, v.x, tol):
            raise BaseMismatch(f"+1 needs equal V1 components: {list(u.x)} vs {list(v.x)}")
        return DvsElement(u.x, u.y + v.y, u.z + v.z)
    if side == "II":
        if not la.equal(u.y, v.y, tol):
            raise BaseMismatch(f"+2 needs equal V2 components: {list(u.y)} vs {list(v.y)}")
        return DvsElement(u.x + v.x, u.y, u.z + v.z)
    raise ValueError(f"side must be 'I' or 'II', got {side!r}")


def dvs_scale(side: str, r, u: DvsElement) -> DvsElement:
    if side == "I":
        return DvsElement(u.x, r * u.y, r * u.z)
    if side == "II":
        return DvsElement(r * u.x, u.y, r * u.z)
    raise ValueError(f"side must be 'I' or 'II', got {side!r}")


def dvs_neg(side: str, u: DvsElement) -> DvsElement:
    return dvs_scale(side, -1, u)


# ---------------------------------------------------------------------------
# splittings and decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Splitting:
    """Linear splitting psi(v1, v2) = (v1, v2, mu(v1, v2)) in canonical coordinates."""

    mu: BilinearMap

    @classmethod
    def canonical(cls, dims: Dims, kind: str = la.RATIONAL) -> "Splitting":
        return cls(BilinearMap.zero(dims, kind))

    @property
    def dims(self) -> Dims:
        n0, n1, n2 = self.mu.shape
        return Dims(n1, n2, n0)

    def psi(self, v1: np.ndarray, v2: np.ndarray) -> DvsElement:
        return DvsElement(np.asarray(v1), np.asarray(v2), self.mu(v1, v2))

    def equals(self, other: "Splitting", tol: float | None = None) -> bool:
        return self.mu.equals(other.mu, tol)


def _check_vectors(dims: Dims, v1, v2, v0) -> None:
    if (len(v1), len(v2), len(v0)) != (dims.n1, dims.n2, dims.n0):
        raise DimMismatch(f"vectors of lengths {(len(v1), len(v2), len(v0))} for dims {dims}")


def decomposition_apply(s: Splitting, v1, v2, v0) -> DvsElement:
    """Decomposition Psi(v1, v2, v0) = (v1, v2, v0 + mu(v1, v2))."""
    _check_vectors(s.dims, v1, v2, v0)
    v1, v2, v0 = np.asarray(v1), np.asarray(v2), np.asarray(v0)
    return DvsElement(v1, v2, v0 + s.mu(v1, v2))


def decomposition_by_structure(s: Splitting, v1, v2, v0) -> DvsElement:
    """Same decomposition assembled from the DVS operations.

    psi(v1, v2) +2 (0_II(v2) +1 v0), where the core vector v0 is read as the
    core element (0, 0, v0).
    """
    _check_vectors(s.dims, v1, v2, v0)
    dims = s.dims
    core = DvsElement.core(dims, v0, la.kind_of(np.asarray(v0)))
    # 0_II(v2) and the core element both lie over x = 0
    inner = dvs_add("I", zero_II(np.asarray(v2), dims), core)
    return dvs_add("II", s.psi(np.asarray(v1), np.asarray(v2)), inner)


def splitting_translate(s: Splitting, m: BilinearMap) -> Splitting:
    if s.mu.shape != m.shape:
        raise DimMismatch(f"cannot translate a {s.mu.shape} splitting by {m.shape}")
    return Splitting(s.mu + m)


def splitting_translate_by_structure(s: Splitting, m: BilinearMap, v1, v2) -> DvsElement:
    """psi'(v1, v2) = (m(v1, v2) +1 0_II(v2)) +2 psi(v1, v2)."""
    dims = s.dims
    v1, v2 = np.asarray(v1), np.asarray(v2)
    core = DvsElement.core(dims, m(v1, v2), la.kind_of(v1))
    return dvs_add("II", dvs_add("I", core, zero_II(v2, dims)), s.psi(v1, v2))


def decomposition_transition(sa: Splitting, sb: Splitting) -> BilinearMap:
    """The twist ``m`` with Psi_a^{-1} o Psi_b = (id, id, id, m)."""
    if sa.mu.shape != sb.mu.shape:
        raise DimMismatch("splittings over different dimensions")
    return sb.mu - sa.mu


# ---------------------------------------------------------------------------
# linear and core sections of V -> V2
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearSection:
    """y -> (base, y, slope @ y); ``slope`` is an (n0 x n2) matrix."""

    base: np.ndarray
    slope: np.ndarray

    @property
    def dims(self) -> Dims:
        return Dims(len(self.base), self.slope.shape[1], self.slope.shape[0])

    def equals(self, other: "LinearSection", tol: float | None = None) -> bool:
        return la.equal(self.base, other.base, tol) and la.equal(self.slope, other.slope, tol)


@dataclass(frozen=True, eq=False)
class CoreSection:
    """The core-section embedding y -> (0, y, value)."""

    value: np.ndarray
    n1: int
    n2: int

    @property
    def dims(self) -> Dims:
        return Dims(self.n1, self.n2, len(self.value))

    def equals(self, other: "CoreSection", tol: float | None = None) -> bool:
        return la.equal(self.value, other.value, tol)


def section_eval(s: LinearSection | CoreSection, y) -> DvsElement:
    y = np.asarray(y)
    if len(y) != s.dims.n2:
        raise DimMismatch(f"section expects a V2 vector of length {s.dims.n2}, got {len(y)}")
    if isinstance(s, LinearSection):
        kind = la.kind_of(s.base)
        z = s.slope @ y if s.dims.n2 and s.dims.n0 else la.zeros((s.dims.n0,), kind)
        return DvsElement(s.base, y, z)
    dims = s.dims
    kind = la.kind_of(s.value)
    core = DvsElement.core(dims, s.value, kind)
    # c +1 0_II(y): both lie over x = 0
    return dvs_add("I", core, zero_II(y, dims))


def linear_section_base(s: LinearSection) -> np.ndarray:
    """The surjection onto V1 whose kernel is Hom(V2, V0)."""
    return s.base
