"""Connection conditions at the Lie algebra level.

An ambient algebra exposes coordinates, a bracket, the projection onto
``g1 + g2`` and bases of the marked subspaces ``k1`` (kernel of the
projection to g1), ``k2`` and the core ``g0``.  Two ambients are provided:
aut(R^[n]) and a :class:`~doublebundles.dla.DoubleLieAlgebra`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import DvsDer, der_bracket, der_dimension, der_from_vector, der_to_vector
from .dla import DoubleLieAlgebra
from .dvs import Dims
from .errors import DimMismatch, NotASection, PreconditionFailed

Report = dict[str, dict]


def _ok() -> dict:
    return {"pass": True, "counterexample": None}


def _fail(msg: str) -> dict:
    return {"pass": False, "counterexample": msg}


def _fmt(v: np.ndarray) -> str:
    return "[" + ", ".join(str(x) for x in v) + "]"


class Ambient:
    dim: int
    q1: int  # dim g1
    q2: int  # dim g2

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray: ...
    def quotient(self, u: np.ndarray) -> np.ndarray: ...
    def k1_basis(self) -> list[np.ndarray]: ...
    def k2_basis(self) -> list[np.ndarray]: ...
    def core_basis(self) -> list[np.ndarray]: ...

    def describe(self, u: np.ndarray) -> str:
        return _fmt(u)


class AutAlgebraAmbient(Ambient):
    """aut(R^[n]) in coordinates (A1, A2, A0, alpha), each block row-major."""

    def __init__(self, dims: Dims):
        self.dims = dims
        self.dim = der_dimension(dims)
        self.q1, self.q2 = dims.n1 ** 2, dims.n2 ** 2

    def bracket(self, u, v):
        return der_to_vector(der_bracket(der_from_vector(u, self.dims), der_from_vector(v, self.dims)))

    def quotient(self, u):
        return u[: self.q1 + self.q2]

    def _unit(self, i):
        return la.eye(self.dim)[i]

    def k1_basis(self):
        return [self._unit(i) for i in range(self.q1, self.dim)]

    def k2_basis(self):
        return [self._unit(i) for i in range(self.dim) if not self.q1 <= i < self.q1 + self.q2]

    def core_basis(self):
        return [self._unit(i) for i in range(self.q1 + self.q2, self.dim)]

    def canonical_section(self) -> np.ndarray:
        """s(A1, A2) = (A1, A2, 0, 0) as a dim x (q1 + q2) matrix."""
        q = self.q1 + self.q2
        s = la.zeros((self.dim, q))
        for i in range(q):
            s[i, i] = 1
        return s

    def element(self, u) -> DvsDer:
        return der_from_vector(u, self.dims)

    def describe(self, u) -> str:
        X = self.element(u)
        return (f"(A1={_fmt(X.A1.ravel())}, A2={_fmt(X.A2.ravel())}, "
                f"A0={_fmt(X.A0.ravel())}, alpha={_fmt(X.alpha.coeffs.ravel())})")


class DlaAmbient(Ambient):
    def __init__(self, dla: DoubleLieAlgebra):
        self.dla = dla
        self.dim = dla.dim
        self.q1, self.q2 = dla.n1, dla.n2

    def bracket(self, u, v):
        return self.dla.bracket(u, v)

    def quotient(self, u):
        return self.dla.quotient(u)

    def k1_basis(self):
        return self.dla.k1_basis()

    def k2_basis(self):
        return self.dla.k2_basis()

    def core_basis(self):
        return self.dla.core_basis()

    def canonical_section(self) -> np.ndarray:
        q = self.q1 + self.q2
        s = la.zeros((self.dim, q))
        for i in range(q):
            s[i, i] = 1
        return s


def _reduce(vectors, n: int) -> np.ndarray:
    """Row basis (as a k x n matrix) of the span of ``vectors``."""
    if not vectors:
        return la.zeros((0, n))
    m = np.array([la.as_array(v) for v in vectors], dtype=object).reshape(len(vectors), n)
    rows, _ = la._rref(m)
    rows = [r for r in rows if any(x != 0 for x in r)]
    return np.array(rows, dtype=object).reshape(len(rows), n) if rows else la.zeros((0, n))


@dataclass(frozen=True, eq=False)
class SubspaceSpec:
    ambient: Ambient
    basis: np.ndarray  # reduced rows

    @classmethod
    def span(cls, ambient: Ambient, vectors) -> "SubspaceSpec":
        for v in vectors:
            if len(v) != ambient.dim:
                raise DimMismatch(f"vector of length {len(v)} in an ambient of dimension {ambient.dim}")
        return cls(ambient, _reduce(list(vectors), ambient.dim))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def k1_subspace(ambient: Ambient) -> SubspaceSpec:
    return SubspaceSpec.span(ambient, ambient.k1_basis())


def k2_subspace(ambient: Ambient) -> SubspaceSpec:
    return SubspaceSpec.span(ambient, ambient.k2_basis())


def complement_check(H: SubspaceSpec, K: SubspaceSpec) -> Report:
    if H.ambient is not K.ambient and H.ambient.dim != K.ambient.dim:
        raise DimMismatch("subspaces live in different ambients")
    n = H.ambient.dim
    joint = la.rank(np.vstack([H.basis, K.basis])) if H.dim + K.dim else 0
    report = {
        "trivial_intersection": _ok() if joint == H.dim + K.dim else _fail(
            f"dim(H cap K) = {H.dim + K.dim - joint}"),
        "spans": _ok() if joint == n else _fail(f"dim(H + K) = {joint} < {n}"),
    }
    return report


def is_complement(H: SubspaceSpec, K: SubspaceSpec) -> bool:
    return all(v["pass"] for v in complement_check(H, K).values())


def dlg_connection_check(H1: SubspaceSpec, H2: SubspaceSpec) -> Report:
    """(H1, H2) is a connection iff H_i complements k_i and H1 cap H2 = 0."""
    amb = H1.ambient
    pre1 = complement_check(H1, k1_subspace(amb))
    pre2 = complement_check(H2, k2_subspace(amb))
    failed = [f"H{i} vs k{i}: {k}" for i, rep in ((1, pre1), (2, pre2))
              for k, v in rep.items() if not v["pass"]]
    if failed:
        raise PreconditionFailed("; ".join(failed))
    cap = complement_check(H1, H2)["trivial_intersection"]
    return {"H1_complements_k1": _ok(), "H2_complements_k2": _ok(), "H1_cap_H2_trivial": cap}


def splitting_connection_check(ambient: Ambient, s: np.ndarray, basis: np.ndarray | None = None) -> Report:
    """Bracket conditions for a splitting ``s: g1 + g2 -> g``.

    ``s`` is a ``dim x (q1 + q2)`` matrix with ``quotient o s = I``.  The
    conditions are evaluated on spanning pairs; ``basis`` (block diagonal
    over g1 and g2) optionally changes the spanning vectors used.
    """
    q1, q2 = ambient.q1, ambient.q2
    q = q1 + q2
    if s.shape != (ambient.dim, q):
        raise DimMismatch(f"splitting of shape {s.shape}, expected {(ambient.dim, q)}")
    cols = [s[:, i] for i in range(q)]
    for i, c in enumerate(cols):
        expect = la.eye(q)[i]
        if not la.equal(ambient.quotient(c), expect):
            raise NotASection(f"quotient of s(e{i}) is {_fmt(ambient.quotient(c))}")
    if basis is not None:
        cols = [s @ basis[:, i] for i in range(q)]
    s1, s2 = cols[:q1], cols[q1:]

    core = _ok()
    for k, z in enumerate(ambient.core_basis()):
        for i, c in enumerate(cols):
            b = ambient.bracket(z, c)
            if not la.is_zero(b):
                core = _fail(f"[{ambient.describe(z)}, {ambient.describe(c)}] = {ambient.describe(b)} != 0")
                break
        if not core["pass"]:
            break
    sides = _ok()
    for i, a in enumerate(s1):
        for j, b in enumerate(s2):
            br = ambient.bracket(a, b)
            if not la.is_zero(br):
                sides = _fail(f"[{ambient.describe(a)}, {ambient.describe(b)}] = {ambient.describe(br)} != 0")
                break
        if not sides["pass"]:
            break
    both = _ok() if core["pass"] and sides["pass"] else _fail(
        "; ".join(r["counterexample"] for r in (core, sides) if not r["pass"]))
    return {"connection": both, "core_commutes": core, "core_connection": core, "sides_commute": sides}
