"""Automorphisms of the trivial double vector space and double Lie groups.

An automorphism is a quadruple ``(a1, a2, a0, mu)`` acting by

    (x, y, z) -> (a1 x, a2 y, a0 z + mu(x, y))

and composing by

    (a1, a2, a0, mu) . (b1, b2, b0, nu) = (a1 b1, a2 b2, a0 b0, mu o (b1 x b2) + a0 o nu).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import linalg as la
from .dvs import BilinearMap, Dims, DvsElement
from .errors import DimMismatch, InputError

IN_K1 = "in_K1"
IN_K2 = "in_K2"
IN_G0 = "in_G0"
GENERAL = "general"


@dataclass(frozen=True, eq=False)
class DvsAut:
    a1: np.ndarray
    a2: np.ndarray
    a0: np.ndarray
    mu: BilinearMap

    def __post_init__(self):
        n0, n1, n2 = self.mu.shape
        for name, m, n in (("a1", self.a1, n1), ("a2", self.a2, n2), ("a0", self.a0, n0)):
            la.check_square(m, n, name)

    @classmethod
    def identity(cls, dims: Dims, kind: str = la.RATIONAL) -> "DvsAut":
        return cls(la.eye(dims.n1, kind), la.eye(dims.n2, kind), la.eye(dims.n0, kind),
                   BilinearMap.zero(dims, kind))

    @classmethod
    def of(cls, a1, a2, a0, mu, kind: str = la.RATIONAL) -> "DvsAut":
        return cls(la.as_array(a1, kind), la.as_array(a2, kind), la.as_array(a0, kind),
                   BilinearMap.of(mu, kind))

    @property
    def dims(self) -> Dims:
        n0, n1, n2 = self.mu.shape
        return Dims(n1, n2, n0)

    @property
    def kind(self) -> str:
        return la.kind_of(self.a1) if self.a1.size else self.mu.kind

    def equals(self, other: "DvsAut", tol: float | None = None) -> bool:
        return (self.dims == other.dims and la.equal(self.a1, other.a1, tol)
                and la.equal(self.a2, other.a2, tol) and la.equal(self.a0, other.a0, tol)
                and self.mu.equals(other.mu, tol))

    def max_abs_diff(self, other: "DvsAut") -> float:
        return max(la.max_abs(self.a1 - other.a1), la.max_abs(self.a2 - other.a2),
                   la.max_abs(self.a0 - other.a0), la.max_abs(self.mu.coeffs - other.mu.coeffs))

    def __mul__(self, other: "DvsAut") -> "DvsAut":
        return aut_compose(self, other)

    def __repr__(self):
        return (f"DvsAut(a1={self.a1.tolist()}, a2={self.a2.tolist()}, "
                f"a0={self.a0.tolist()}, mu={self.mu.coeffs.tolist()})")


def _matvec(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    if m.shape[0] == 0 or m.shape[1] == 0:
        return la.zeros((m.shape[0],), la.kind_of(m))
    return m @ v


def aut_apply(a: DvsAut, v: DvsElement) -> DvsElement:
    if a.dims != v.dims:
        raise DimMismatch(f"automorphism over {a.dims} applied to element over {v.dims}")
    return DvsElement(_matvec(a.a1, v.x), _matvec(a.a2, v.y), _matvec(a.a0, v.z) + a.mu(v.x, v.y))


def aut_compose(a: DvsAut, b: DvsAut) -> DvsAut:
    if a.dims != b.dims:
        raise DimMismatch(f"cannot compose automorphisms over {a.dims} and {b.dims}")
    mu = a.mu.precompose(b.a1, b.a2) + b.mu.postcompose(a.a0)
    return DvsAut(a.a1 @ b.a1, a.a2 @ b.a2, a.a0 @ b.a0, mu)


def aut_inverse(a: DvsAut) -> DvsAut:
    """(a1^-1, a2^-1, a0^-1, -a0^-1 o mu o (a1^-1 x a2^-1)); raises Singular."""
    i1, i2, i0 = la.inverse(a.a1), la.inverse(a.a2), la.inverse(a.a0)
    return DvsAut(i1, i2, i0, -(a.mu.precompose(i1, i2).postcompose(i0)))


def aut_power(a: DvsAut, k: int) -> DvsAut:
    out = DvsAut.identity(a.dims, a.kind)
    base = a if k >= 0 else aut_inverse(a)
    for _ in range(abs(k)):
        out = aut_compose(out, base)
    return out


def aut_project(a: DvsAut) -> tuple[np.ndarray, np.ndarray]:
    """The projection onto GL(V1) x GL(V2)."""
    return a.a1, a.a2


def aut_project_structural(a: DvsAut) -> tuple[np.ndarray, np.ndarray]:
    """Same projection read off the action: sigma_1 o a o 0_I and sigma_2 o a o 0_II."""
    dims = a.dims
    kind = a.kind
    cols1 = [aut_apply(a, DvsElement(e, la.zeros((dims.n2,), kind), la.zeros((dims.n0,), kind))).x
             for e in la.eye(dims.n1, kind)]
    cols2 = [aut_apply(a, DvsElement(la.zeros((dims.n1,), kind), e, la.zeros((dims.n0,), kind))).y
             for e in la.eye(dims.n2, kind)]
    return la.stack_columns(cols1, dims.n1, kind), la.stack_columns(cols2, dims.n2, kind)


def aut_classify(a: DvsAut, tol: float | None = None) -> str:
    trivial1 = la.equal(a.a1, la.eye(a.dims.n1, a.kind), tol)
    trivial2 = la.equal(a.a2, la.eye(a.dims.n2, a.kind), tol)
    if trivial1 and trivial2:
        return IN_G0
    if trivial1:
        return IN_K1
    if trivial2:
        return IN_K2
    return GENERAL


def in_K1(a: DvsAut) -> bool:
    return aut_classify(a) in (IN_K1, IN_G0)


def in_K2(a: DvsAut) -> bool:
    return aut_classify(a) in (IN_K2, IN_G0)


def aut_factor(a: DvsAut) -> tuple[DvsAut, DvsAut]:
    """Split ``a = k1 . k2`` with ``k1`` in K1 and ``k2`` in K2.

    ``k2 = (a1, I, I, 0)`` and ``k1 = (I, a2, a0, mu o (a1^-1 x I))``; the
    twist of ``k1`` is what the group law needs to reproduce ``mu`` after
    precomposition with ``a1``.
    """
    dims, kind = a.dims, a.kind
    k2 = DvsAut(a.a1, la.eye(dims.n2, kind), la.eye(dims.n0, kind), BilinearMap.zero(dims, kind))
    k1 = DvsAut(la.eye(dims.n1, kind), a.a2, a.a0,
                a.mu.precompose(la.inverse(a.a1), la.eye(dims.n2, kind)))
    return k1, k2


def aut_from_action(apply: Callable[[DvsElement], DvsElement], dims: Dims,
                    kind: str = la.RATIONAL) -> DvsAut:
    """Fit the quadruple of a DVS automorphism from its values on a spanning set.

    Uses the images of (e_i, 0, 0), (0, f_j, 0), (0, 0, l_k) and (e_i, f_j, 0).
    """
    z1, z2, z0 = la.zeros((dims.n1,), kind), la.zeros((dims.n2,), kind), la.zeros((dims.n0,), kind)
    e1, e2, e0 = la.eye(dims.n1, kind), la.eye(dims.n2, kind), la.eye(dims.n0, kind)
    a1 = la.stack_columns([apply(DvsElement(e, z2, z0)).x for e in e1], dims.n1, kind)
    a2 = la.stack_columns([apply(DvsElement(z1, f, z0)).y for f in e2], dims.n2, kind)
    a0 = la.stack_columns([apply(DvsElement(z1, z2, l)).z for l in e0], dims.n0, kind)
    mu = la.zeros(dims.tensor_shape, kind)
    for i in range(dims.n1):
        for j in range(dims.n2):
            both = apply(DvsElement(e1[i], e2[j], z0)).z
            # the images of (e_i, 0, 0) and (0, f_j, 0) have zero core part for an automorphism
            mu[:, i, j] = both - apply(DvsElement(e1[i], z2, z0)).z - apply(DvsElement(z1, e2[j], z0)).z
    return DvsAut(a1, a2, a0, BilinearMap(mu))


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random, size: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def random_array(rng: random.Random, shape, kind: str = la.RATIONAL) -> np.ndarray:
    n = int(np.prod(shape)) if len(shape) else 1
    if kind == la.RATIONAL:
        vals = [random_rational(rng) for _ in range(n)]
        return np.array(vals, dtype=object).reshape(shape)
    return np.array([rng.uniform(-2.0, 2.0) for _ in range(n)], dtype=float).reshape(shape)


def random_invertible(rng: random.Random, n: int, kind: str = la.RATIONAL) -> np.ndarray:
    while True:
        m = random_array(rng, (n, n), kind)
        if kind == la.FLOAT:
            m = m + 2.0 * np.eye(n)
            if n == 0 or abs(np.linalg.det(m)) > 1e-2:
                return m
        elif la.det(m) != 0:
            return m


def random_element(rng: random.Random, dims: Dims, kind: str = la.RATIONAL) -> DvsElement:
    return DvsElement(random_array(rng, (dims.n1,), kind), random_array(rng, (dims.n2,), kind),
                      random_array(rng, (dims.n0,), kind))


def random_bilinear(rng: random.Random, dims: Dims, kind: str = la.RATIONAL) -> BilinearMap:
    return BilinearMap(random_array(rng, dims.tensor_shape, kind))


def random_aut(rng: random.Random, dims: Dims, kind: str = la.RATIONAL) -> DvsAut:
    return DvsAut(random_invertible(rng, dims.n1, kind), random_invertible(rng, dims.n2, kind),
                  random_invertible(rng, dims.n0, kind), random_bilinear(rng, dims, kind))


# ---------------------------------------------------------------------------
# double Lie groups
# ---------------------------------------------------------------------------

class DoubleLieGroup:
    """A finite-dimensional double Lie group 1 -> G0 -> G -> G1 x G2 -> 1.

    Subclasses supply the group law, the projection ``project`` onto
    ``GL(n1) x GL(n2)``-valued pairs, the core inclusion, a set-theoretic
    section of the projection, and samplers.
    """

    name = "dlg"
    n1: int
    n2: int

    def identity(self) -> Any: ...
    def multiply(self, g, h) -> Any: ...
    def invert(self, g) -> Any: ...
    def equal(self, g, h) -> bool: ...
    def project(self, g) -> tuple[np.ndarray, np.ndarray]: ...
    def include_core(self, g0) -> Any: ...
    def core_preimage(self, g) -> Any:
        """The core element mapping to ``g``, or ``None`` when ``g`` is not in the image."""
    def section(self, g1: np.ndarray, g2: np.ndarray) -> Any: ...
    def random(self, rng: random.Random) -> Any: ...
    def random_core(self, rng: random.Random) -> Any: ...
    def core_multiply(self, a, b) -> Any: ...
    def core_equal(self, a, b) -> bool: ...

    def random_quotient(self, rng: random.Random) -> tuple[np.ndarray, np.ndarray]:
        return random_invertible(rng, self.n1), random_invertible(rng, self.n2)

    def in_K1(self, g) -> bool:
        return la.equal(self.project(g)[0], la.eye(self.n1))

    def in_K2(self, g) -> bool:
        return la.equal(self.project(g)[1], la.eye(self.n2))

    def in_G0(self, g) -> bool:
        return self.in_K1(g) and self.in_K2(g)

    def random_K1(self, rng):
        g1, g2 = self.random_quotient(rng)
        return self.multiply(self.section(la.eye(self.n1), g2), self.include_core(self.random_core(rng)))

    def random_K2(self, rng):
        g1, g2 = self.random_quotient(rng)
        return self.multiply(self.section(g1, la.eye(self.n2)), self.include_core(self.random_core(rng)))

    def factor(self, g) -> tuple[Any, Any]:
        """``g = k1 . k2``: k2 is the section over (g1, e), k1 absorbs the rest."""
        g1, _ = self.project(g)
        k2 = self.section(g1, la.eye(self.n2))
        return self.multiply(g, self.invert(k2)), k2


class AutGroup(DoubleLieGroup):
    """Aut(R^[n]) with kernel GL(V0) x| T."""

    name = "aut"

    def __init__(self, dims: Dims):
        self.dims = dims
        self.n1, self.n2 = dims.n1, dims.n2

    def identity(self):
        return DvsAut.identity(self.dims)

    def multiply(self, g, h):
        return aut_compose(g, h)

    def invert(self, g):
        return aut_inverse(g)

    def equal(self, g, h):
        return g.equals(h)

    def project(self, g):
        return aut_project(g)

    def include_core(self, g0):
        a0, mu = g0
        return DvsAut(la.eye(self.n1), la.eye(self.n2), a0, mu)

    def core_preimage(self, g):
        if aut_classify(g) != IN_G0:
            return None
        return g.a0, g.mu

    def section(self, g1, g2):
        return DvsAut(g1, g2, la.eye(self.dims.n0), BilinearMap.zero(self.dims))

    def random(self, rng):
        return random_aut(rng, self.dims)

    def random_core(self, rng):
        return random_invertible(rng, self.dims.n0), random_bilinear(rng, self.dims)

    def core_multiply(self, a, b):
        g = aut_compose(self.include_core(a), self.include_core(b))
        return g.a0, g.mu

    def core_equal(self, a, b):
        return la.equal(a[0], b[0]) and a[1].equals(b[1])

    def factor(self, g):
        return aut_factor(g)


class ProductGroup(DoubleLieGroup):
    """The trivial double Lie group GL(n1) x GL(n2) x GL(n0); elements are triples."""

    name = "product"

    def __init__(self, dims: Dims):
        self.dims = dims
        self.n1, self.n2, self.n0 = dims.n1, dims.n2, dims.n0

    def identity(self):
        return la.eye(self.n1), la.eye(self.n2), la.eye(self.n0)

    def multiply(self, g, h):
        return tuple(a @ b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(la.inverse(a) for a in g)

    def equal(self, g, h):
        return all(la.equal(a, b) for a, b in zip(g, h))

    def project(self, g):
        return g[0], g[1]

    def include_core(self, g0):
        return la.eye(self.n1), la.eye(self.n2), g0

    def core_preimage(self, g):
        if not (la.equal(g[0], la.eye(self.n1)) and la.equal(g[1], la.eye(self.n2))):
            return None
        return g[2]

    def section(self, g1, g2):
        return g1, g2, la.eye(self.n0)

    def random(self, rng):
        return (random_invertible(rng, self.n1), random_invertible(rng, self.n2),
                random_invertible(rng, self.n0))

    def random_core(self, rng):
        return random_invertible(rng, self.n0)

    def core_multiply(self, a, b):
        return a @ b

    def core_equal(self, a, b):
        return la.equal(a, b)


def contragredient_action(g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
    """Action of GL(n1) x GL(n2) on bilinear forms w -> w o (g1^-1 x g2^-1).

    Forms are flattened row-major from their (n1 x n2) coefficient matrix.
    """
    return np.kron(la.inverse(g1).T, la.inverse(g2).T)


class SemidirectGroup(DoubleLieGroup):
    """(GL(n1) x GL(n2)) x|_chi (R^m, +) for a linear action ``chi``.

    Elements are ``(g1, g2, v)`` with
    ``(g1, g2, v)(h1, h2, w) = (g1 h1, g2 h2, v + chi(g1, g2) w)``.
    """

    name = "semidirect"

    def __init__(self, n1: int, n2: int, m: int | None = None,
                 chi: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None):
        self.n1, self.n2 = n1, n2
        self.m = n1 * n2 if m is None else m
        if chi is None and self.m != n1 * n2:
            raise InputError("the default action needs m = n1 * n2")
        self.chi = chi or contragredient_action

    def _act(self, g1, g2, w):
        if self.m == 0:
            return w
        return self.chi(g1, g2) @ w

    def identity(self):
        return la.eye(self.n1), la.eye(self.n2), la.zeros((self.m,))

    def multiply(self, g, h):
        return g[0] @ h[0], g[1] @ h[1], g[2] + self._act(g[0], g[1], h[2])

    def invert(self, g):
        i1, i2 = la.inverse(g[0]), la.inverse(g[1])
        return i1, i2, -self._act(i1, i2, g[2])

    def equal(self, g, h):
        return all(la.equal(a, b) for a, b in zip(g, h))

    def project(self, g):
        return g[0], g[1]

    def include_core(self, g0):
        return la.eye(self.n1), la.eye(self.n2), g0

    def core_preimage(self, g):
        if not (la.equal(g[0], la.eye(self.n1)) and la.equal(g[1], la.eye(self.n2))):
            return None
        return g[2]

    def section(self, g1, g2):
        return g1, g2, la.zeros((self.m,))

    def random(self, rng):
        return random_invertible(rng, self.n1), random_invertible(rng, self.n2), random_array(rng, (self.m,))

    def random_core(self, rng):
        return random_array(rng, (self.m,))

    def core_multiply(self, a, b):
        return a + b

    def core_equal(self, a, b):
        return la.equal(a, b)


class ShiftedProjection(AutGroup):
    """Aut(R^[n]) with a deliberately mis-wired projection (a1, a2 + I).

    Negative control for :func:`dlg_verify`: the projection is not a homomorphism.
    """

    name = "aut-broken"

    def project(self, g):
        return g.a1, g.a2 + la.eye(self.n2)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _pair_equal(p, q) -> bool:
    return la.equal(p[0], q[0]) and la.equal(p[1], q[1])


def _quotient_mul(p, q):
    return p[0] @ q[0], p[1] @ q[1]


def dlg_verify(spec: DoubleLieGroup, trials: int = 100, seed: int = 0) -> dict[str, dict]:
    """Sample-check the double Lie group axioms of ``spec``.

    Returns a mapping from property name to ``{"pass": bool, "counterexample": str | None}``.
    """
    if not isinstance(spec, DoubleLieGroup):
        raise InputError(f"not a double Lie group spec: {spec!r}")
    results: dict[str, dict] = {}

    def run(name: str, check: Callable[[random.Random], str | None]) -> None:
        rng = random.Random(f"{seed}:{name}")
        for t in range(trials):
            bad = check(rng)
            if bad is not None:
                results[name] = {"pass": False, "counterexample": f"trial {t}: {bad}"}
                return
        results[name] = {"pass": True, "counterexample": None}

    def associativity(rng):
        g, h, k = spec.random(rng), spec.random(rng), spec.random(rng)
        if not spec.equal(spec.multiply(spec.multiply(g, h), k), spec.multiply(g, spec.multiply(h, k))):
            return f"(gh)k != g(hk) for g={g!r}, h={h!r}, k={k!r}"

    def inverse(rng):
        g = spec.random(rng)
        e = spec.identity()
        if not (spec.equal(spec.multiply(g, spec.invert(g)), e) and spec.equal(spec.multiply(spec.identity(), g), g)):
            return f"inverse/identity fails for g={g!r}"

    def homomorphism(rng):
        g, h = spec.random(rng), spec.random(rng)
        if not _pair_equal(spec.project(spec.multiply(g, h)), _quotient_mul(spec.project(g), spec.project(h))):
            return f"phi(gh) != phi(g)phi(h) for g={g!r}, h={h!r}"

    def kernel_is_core(rng):
        g = spec.random(rng)
        k = spec.multiply(spec.invert(spec.section(*spec.project(g))), g)
        if not spec.in_G0(k):
            return f"s(phi(g))^-1 g not in kernel for g={g!r}"
        g0 = spec.core_preimage(k)
        if g0 is None or not spec.equal(spec.include_core(g0), k):
            return f"kernel element {k!r} is not in the core image"
        c = spec.random_core(rng)
        if not spec.in_G0(spec.include_core(c)):
            return f"core element {c!r} does not project to the identity"

    def core_inclusion(rng):
        a, b = spec.random_core(rng), spec.random_core(rng)
        lhs = spec.include_core(spec.core_multiply(a, b))
        if not spec.equal(lhs, spec.multiply(spec.include_core(a), spec.include_core(b))):
            return f"i(ab) != i(a)i(b) for a={a!r}, b={b!r}"

    def normal_K1(rng):
        g, k = spec.random(rng), spec.random_K1(rng)
        if not spec.in_K1(k):
            return f"sampled K1 element {k!r} is not in K1"
        c = spec.multiply(spec.multiply(g, k), spec.invert(g))
        if not spec.in_K1(c):
            return f"g k g^-1 not in K1 for g={g!r}, k={k!r}"

    def normal_K2(rng):
        g, k = spec.random(rng), spec.random_K2(rng)
        if not spec.in_K2(k):
            return f"sampled K2 element {k!r} is not in K2"
        c = spec.multiply(spec.multiply(g, k), spec.invert(g))
        if not spec.in_K2(c):
            return f"g k g^-1 not in K2 for g={g!r}, k={k!r}"

    def factorization(rng):
        g = spec.random(rng)
        k1, k2 = spec.factor(g)
        if not (spec.in_K1(k1) and spec.in_K2(k2) and spec.equal(spec.multiply(k1, k2), g)):
            return f"g != k1 k2 with k1 in K1, k2 in K2 for g={g!r}"

    def diagrams(rng):
        k1, k2 = spec.random_K1(rng), spec.random_K2(rng)
        e1, e2 = la.eye(spec.n1), la.eye(spec.n2)
        p1, p2 = spec.project(k1), spec.project(k2)
        if not la.equal(p1[0], e1):
            return f"K1 element {k1!r} does not map into {{e}} x G2"
        if not la.equal(p2[1], e2):
            return f"K2 element {k2!r} does not map into G1 x {{e}}"
        c = spec.include_core(spec.random_core(rng))
        if not (spec.in_K1(c) and spec.in_K2(c)):
            return f"core element {c!r} not in K1 and K2"

    run("associativity", associativity)
    run("identity_inverse", inverse)
    run("projection_homomorphism", homomorphism)
    run("kernel_is_core", kernel_is_core)
    run("core_inclusion_homomorphism", core_inclusion)
    run("K1_normal", normal_K1)
    run("K2_normal", normal_K2)
    run("factorization_K1K2", factorization)
    run("diagrams_commute", diagrams)
    return dict(sorted(results.items()))
