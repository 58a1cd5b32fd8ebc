"""Double Lie algebras with abelian core built from 2-cocycles.

Lie algebras are given by structure constants ``c[i][j][k]`` with
``[e_i, e_j] = sum_k c[i][j][k] e_k``; modules by generator-indexed action
matrices.  Cochains of degree ``p`` are stored as full alternating tensors of
shape ``(n,) * p + (m,)``.  Everything here is exact.

Chevalley-Eilenberg differential, with hats marking omitted arguments:

    d w(x_0..x_p) = sum_i (-1)^i rho(x_i) w(..^x_i..)
                  + sum_{i<j} (-1)^(i+j) w([x_i, x_j], ..^x_i..^x_j..)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .errors import DimMismatch, InputError, NotACocycle

Report = dict[str, dict]


def _ok() -> dict:
    return {"pass": True, "counterexample": None}


def _fail(msg: str) -> dict:
    return {"pass": False, "counterexample": msg}


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    structure: np.ndarray

    def __post_init__(self):
        s = self.structure
        if s.ndim != 3 or not (s.shape[0] == s.shape[1] == s.shape[2]):
            raise DimMismatch(f"structure constants must be n x n x n, got {s.shape}")

    @classmethod
    def of(cls, data) -> "LieAlgebraSpec":
        return cls(la.as_array(data))

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebraSpec":
        return cls(la.zeros((n, n, n)))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return la.zeros((0,))
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def direct_sum(self, other: "LieAlgebraSpec") -> "LieAlgebraSpec":
        n, m = self.dim, other.dim
        c = la.zeros((n + m,) * 3)
        c[:n, :n, :n] = self.structure
        c[n:, n:, n:] = other.structure
        return LieAlgebraSpec(c)

    def change_basis(self, p: np.ndarray) -> "LieAlgebraSpec":
        """Structure constants in the basis ``f_a = sum_i p[i][a] e_i``."""
        q = la.inverse(p)
        return LieAlgebraSpec(np.einsum("ia,jb,ijk,ck->abc", p, p, self.structure, q))


@dataclass(frozen=True, eq=False)
class ModuleSpec:
    """``action[g]`` is the matrix of the ``g``-th generator on the carrier."""

    action: np.ndarray

    @classmethod
    def of(cls, data) -> "ModuleSpec":
        return cls(la.as_array(data))

    @classmethod
    def trivial(cls, n: int, m: int) -> "ModuleSpec":
        return cls(la.zeros((n, m, m)))

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def generators(self) -> int:
        return self.action.shape[0]

    def rho(self, x: np.ndarray) -> np.ndarray:
        if self.generators == 0:
            return la.zeros((self.dim, self.dim))
        return np.einsum("i,iab->ab", x, self.action)

    def restrict(self, start: int, stop: int) -> "ModuleSpec":
        return ModuleSpec(self.action[start:stop])

    def is_trivial(self) -> bool:
        return la.is_zero(self.action)

    @staticmethod
    def tensor(rho1: "ModuleSpec", rho2: "ModuleSpec") -> "ModuleSpec":
        """g1 + g2 acting on m1 (x) m2 by rho1 (x) 1 + 1 (x) rho2."""
        i1, i2 = la.eye(rho1.dim), la.eye(rho2.dim)
        mats = [np.kron(a, i2) for a in rho1.action] + [np.kron(i1, b) for b in rho2.action]
        return ModuleSpec(_stack(mats, rho1.dim * rho2.dim))


def _stack(mats, m: int) -> np.ndarray:
    if not mats:
        return la.zeros((0, m, m))
    return np.array([np.asarray(a, dtype=object) for a in mats], dtype=object).reshape(len(mats), m, m)


def _check_module(alg: LieAlgebraSpec, mod: ModuleSpec) -> None:
    if mod.generators != alg.dim:
        raise DimMismatch(f"module has {mod.generators} generators for an algebra of dimension {alg.dim}")


def module_check(alg: LieAlgebraSpec, mod: ModuleSpec) -> Report:
    """rho([e_i, e_j]) = [rho(e_i), rho(e_j)] on all basis pairs."""
    _check_module(alg, mod)
    basis = la.eye(alg.dim)
    for i, j in itertools.combinations(range(alg.dim), 2):
        lhs = mod.rho(alg.bracket(basis[i], basis[j]))
        if not la.equal(lhs, la.commutator(mod.action[i], mod.action[j])):
            return {"homomorphism": _fail(f"rho([e{i}, e{j}]) != [rho(e{i}), rho(e{j})]")}
    return {"homomorphism": _ok()}


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.ndim != self.degree + 1:
            raise DimMismatch(f"degree {self.degree} cochain needs {self.degree + 1} indices")

    @classmethod
    def zero(cls, n: int, m: int, degree: int) -> "Cochain":
        return cls(degree, la.zeros((n,) * degree + (m,)))

    @classmethod
    def of(cls, degree: int, data) -> "Cochain":
        return cls(degree, la.as_array(data))

    @classmethod
    def from_entries(cls, n: int, m: int, degree: int, entries: dict) -> "Cochain":
        """Build from values on increasing index tuples, extended alternatingly."""
        c = la.zeros((n,) * degree + (m,))
        for idx, val in entries.items():
            _set_alternating(c, tuple(idx), la.as_array(val))
        return cls(degree, c)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0] if self.degree else 0

    @property
    def m(self) -> int:
        return self.coeffs.shape[-1]

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.degree, self.coeffs + other.coeffs)

    def __call__(self, *args: np.ndarray) -> np.ndarray:
        out = self.coeffs
        for v in args:
            out = np.tensordot(v, out, axes=(0, 0)) if self.n else out[0]
        return out

    def equals(self, other: "Cochain") -> bool:
        return self.degree == other.degree and la.equal(self.coeffs, other.coeffs)

    def is_zero(self) -> bool:
        return la.is_zero(self.coeffs)

    def is_alternating(self) -> bool:
        for perm in itertools.permutations(range(self.degree)):
            t = np.transpose(self.coeffs, perm + (self.degree,))
            if not la.equal(t, self.coeffs * _perm_sign(perm)):
                return False
        return True


def _set_alternating(c: np.ndarray, idx: tuple, val) -> None:
    if len(set(idx)) < len(idx):
        return
    for perm in itertools.permutations(range(len(idx))):
        c[tuple(idx[p] for p in perm)] = val * _perm_sign(perm)


def ce_differential(alg: LieAlgebraSpec, mod: ModuleSpec, c: Cochain) -> Cochain:
    _check_module(alg, mod)
    n, p = alg.dim, c.degree
    if c.coeffs.shape != (n,) * p + (mod.dim,):
        raise DimMismatch(f"cochain of shape {c.coeffs.shape} over an algebra of dimension {n} "
                          f"and a module of dimension {mod.dim}")
    out = la.zeros((n,) * (p + 1) + (mod.dim,))
    s, w = alg.structure, c.coeffs
    for idx in itertools.combinations(range(n), p + 1):
        val = la.zeros((mod.dim,))
        for i in range(p + 1):
            rest = idx[:i] + idx[i + 1:]
            term = mod.action[idx[i]] @ w[rest] if mod.dim else val
            val = val + term if i % 2 == 0 else val - term
        for i, j in itertools.combinations(range(p + 1), 2):
            rest = tuple(x for t, x in enumerate(idx) if t not in (i, j))
            term = np.tensordot(s[idx[i], idx[j]], w[(slice(None),) + rest], axes=(0, 0))
            val = val + term if (i + j) % 2 == 0 else val - term
        _set_alternating(out, idx, val)
    return Cochain(p + 1, out)


# ---------------------------------------------------------------------------
# g1 + g2 splitting
# ---------------------------------------------------------------------------

def _sub_cochain(c: Cochain, ranges) -> Cochain:
    """Restrict argument ``t`` to the index range ``ranges[t]``."""
    return Cochain(c.degree, c.coeffs[tuple(slice(a, b) for a, b in ranges)])


def split_cochain(c: Cochain, n1: int) -> tuple[Cochain, Cochain, Cochain]:
    """Components (w20, w11, w02) of a 2-cochain on g1 + g2, each on the full space."""
    if c.degree != 2:
        raise InputError(f"only 2-cochains split, got degree {c.degree}")
    n = c.n
    if not 0 <= n1 <= n:
        raise InputError(f"split point {n1} outside 0..{n}")
    parts = []
    for mask in ((True, True), (True, False), (False, False)):
        out = la.zeros(c.coeffs.shape)
        g1 = slice(0, n1)
        g2 = slice(n1, n)
        if mask == (True, True):
            out[g1, g1] = c.coeffs[g1, g1]
        elif mask == (False, False):
            out[g2, g2] = c.coeffs[g2, g2]
        else:
            out[g1, g2] = c.coeffs[g1, g2]
            out[g2, g1] = c.coeffs[g2, g1]
        parts.append(Cochain(2, out))
    return tuple(parts)


def _commuting_report(mod: ModuleSpec, n1: int) -> dict:
    for x in range(n1):
        for a in range(n1, mod.generators):
            if not la.equal(la.commutator(mod.action[x], mod.action[a]), la.zeros((mod.dim, mod.dim))):
                return _fail(f"[rho1(e{x}), rho2(f{a - n1})] != 0")
    return _ok()


def split_cocycle_check(alg1: LieAlgebraSpec, alg2: LieAlgebraSpec, mod: ModuleSpec, c: Cochain) -> Report:
    """The split criterion for a 2-cochain on g1 + g2 to be closed.

    Conditions: w20 closed for g1, w02 closed for g2, and for every a in g2 and
    x in g1, d_g1(i_a w11) = rho2(a) o w20 and d_g2(i_x w11) = rho1(x) o w02,
    with i inserting into the first slot.
    """
    n1, n2 = alg1.dim, alg2.dim
    n = n1 + n2
    if mod.generators != n:
        raise InputError(f"module has {mod.generators} generators, expected {n}")
    if c.degree != 2 or c.coeffs.shape != (n, n, mod.dim):
        raise InputError(f"expected a 2-cochain of shape {(n, n, mod.dim)}, got {c.coeffs.shape}")
    commute = _commuting_report(mod, n1)
    if not commute["pass"]:
        raise InputError(f"rho1 and rho2 do not commute: {commute['counterexample']}")
    rho1, rho2 = mod.restrict(0, n1), mod.restrict(n1, n)
    w20 = _sub_cochain(c, [(0, n1), (0, n1)])
    w02 = _sub_cochain(c, [(n1, n), (n1, n)])
    report: Report = {"rho_commute": commute}

    d20 = ce_differential(alg1, rho1, w20)
    report["w20_closed"] = _ok() if d20.is_zero() else _fail("d_g1 w20 != 0")
    d02 = ce_differential(alg2, rho2, w02)
    report["w02_closed"] = _ok() if d02.is_zero() else _fail("d_g2 w02 != 0")

    report["mixed_g1"] = _ok()
    for a in range(n2):
        iota = Cochain(1, c.coeffs[n1 + a, :n1])
        lhs = ce_differential(alg1, rho1, iota).coeffs
        rhs = np.einsum("st,ijt->ijs", rho2.action[a], w20.coeffs) if n1 and mod.dim else lhs * 0
        if not la.equal(lhs, rhs):
            report["mixed_g1"] = _fail(f"d_g1(i_f{a} w11) != rho2(f{a}) o w20")
            break
    report["mixed_g2"] = _ok()
    for x in range(n1):
        iota = Cochain(1, c.coeffs[x, n1:])
        lhs = ce_differential(alg2, rho2, iota).coeffs
        rhs = np.einsum("st,ijt->ijs", rho1.action[x], w02.coeffs) if n2 and mod.dim else lhs * 0
        if not la.equal(lhs, rhs):
            report["mixed_g2"] = _fail(f"d_g2(i_e{x} w11) != rho1(e{x}) o w02")
            break
    return dict(sorted(report.items()))


def split_conditions_hold(report: Report) -> bool:
    return all(v["pass"] for v in report.values())


# ---------------------------------------------------------------------------
# wedge construction
# ---------------------------------------------------------------------------

def _require_closed(alg, mod, c, what) -> None:
    if not ce_differential(alg, mod, c).is_zero():
        raise InputError(f"{what} is not a cocycle")


def wedge_construct(alg1: LieAlgebraSpec, mod1: ModuleSpec, theta1: Cochain,
                    alg2: LieAlgebraSpec, mod2: ModuleSpec, theta2: Cochain,
                    w20: Cochain | None = None, w02: Cochain | None = None) -> tuple[ModuleSpec, Cochain]:
    """The 2-cochain w20 + theta1 ^ theta2 + w02 on g1 + g2.

    ``theta1 ^ theta2`` takes values in m1 (x) m2:

        (theta1 ^ theta2)(x + a, y + b) = theta1(x) (x) theta2(b) - theta1(y) (x) theta2(a).

    The carrier is m1 + m2 + m1 (x) m2, where the m1 (m2) summand is present
    only when ``w20`` (``w02``) is given; g2 acts trivially on m1, g1 on m2,
    and the tensor factor carries rho1 (x) 1 + 1 (x) rho2.  Returns the module
    and the cochain.
    """
    n1, n2, m1, m2 = alg1.dim, alg2.dim, mod1.dim, mod2.dim
    _check_module(alg1, mod1)
    _check_module(alg2, mod2)
    _require_closed(alg1, mod1, theta1, "theta1")
    _require_closed(alg2, mod2, theta2, "theta2")
    if w20 is not None:
        _require_closed(alg1, mod1, w20, "w20")
    if w02 is not None:
        _require_closed(alg2, mod2, w02, "w02")

    blocks = []  # (size, g1 action list, g2 action list)
    if w20 is not None:
        blocks.append((m1, list(mod1.action), [la.zeros((m1, m1))] * n2))
    if w02 is not None:
        blocks.append((m2, [la.zeros((m2, m2))] * n1, list(mod2.action)))
    t = ModuleSpec.tensor(mod1, mod2)
    blocks.append((m1 * m2, list(t.action[:n1]), list(t.action[n1:])))
    total = sum(b[0] for b in blocks)

    action = la.zeros((n1 + n2, total, total))
    off = 0
    for size, act1, act2 in blocks:
        for g, a in enumerate(act1 + act2):
            action[g, off:off + size, off:off + size] = a
        off += size

    n = n1 + n2
    coeffs = la.zeros((n, n, total))
    off = 0
    if w20 is not None:
        coeffs[:n1, :n1, off:off + m1] = w20.coeffs
        off += m1
    if w02 is not None:
        coeffs[n1:, n1:, off:off + m2] = w02.coeffs
        off += m2
    for x in range(n1):
        for b in range(n2):
            val = np.kron(theta1.coeffs[x], theta2.coeffs[b]) if m1 * m2 else la.zeros((0,))
            coeffs[x, n1 + b, off:] = val
            coeffs[n1 + b, x, off:] = -val
    return ModuleSpec(action), Cochain(2, coeffs)


# ---------------------------------------------------------------------------
# the double Lie algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DoubleLieAlgebra:
    """g1 + g2 + m with basis ordered (g1, g2, m)."""

    algebra: LieAlgebraSpec
    n1: int
    n2: int
    m: int

    @property
    def dim(self) -> int:
        return self.n1 + self.n2 + self.m

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.algebra.bracket(u, v)

    def quotient(self, u: np.ndarray) -> np.ndarray:
        return u[: self.n1 + self.n2]

    def _basis(self, start, stop) -> list[np.ndarray]:
        e = la.eye(self.dim)
        return [e[i] for i in range(start, stop)]

    def g1_basis(self):
        return self._basis(0, self.n1)

    def g2_basis(self):
        return self._basis(self.n1, self.n1 + self.n2)

    def core_basis(self):
        return self._basis(self.n1 + self.n2, self.dim)

    def k1_basis(self):
        """Kernel of the projection to g1: g2 + m."""
        return self._basis(self.n1, self.dim)

    def k2_basis(self):
        """Kernel of the projection to g2: g1 + m."""
        return self.g1_basis() + self.core_basis()


def jacobi_check(alg: LieAlgebraSpec) -> Report:
    s = alg.structure
    n = alg.dim
    report: Report = {"antisymmetry": _ok(), "jacobi": _ok()}
    for i in range(n):
        for j in range(i, n):
            if not la.equal(s[i, j], -s[j, i]):
                report["antisymmetry"] = _fail(f"c[{i}][{j}] != -c[{j}][{i}]")
                break
        if not report["antisymmetry"]["pass"]:
            break
    # J_ijk = [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
    if n:
        jac = (np.einsum("ijl,lkm->ijkm", s, s) + np.einsum("jkl,lim->ijkm", s, s)
               + np.einsum("kil,ljm->ijkm", s, s))
        for i, j, k in itertools.combinations_with_replacement(range(n), 3):
            if not la.is_zero(jac[i, j, k]):
                report["jacobi"] = _fail(f"Jacobi fails on (e{i}, e{j}, e{k})")
                break
    return report


def build_double_algebra(alg1: LieAlgebraSpec, alg2: LieAlgebraSpec, mod: ModuleSpec,
                         c: Cochain) -> DoubleLieAlgebra:
    """The bracket on g1 + g2 + m:

        [x + u, y + v] = [x, y] + w(x, y) + rho(x) v - rho(y) u

    with x, y in g1 + g2 and u, v in m.
    """
    report = split_cocycle_check(alg1, alg2, mod, c)
    if not split_conditions_hold(report):
        bad = ", ".join(k for k, v in report.items() if not v["pass"])
        raise NotACocycle(f"cochain fails: {bad}")
    g = alg1.direct_sum(alg2)
    if not module_check(g, mod)["homomorphism"]["pass"]:
        raise InputError("module action is not a Lie algebra homomorphism")
    n, m = g.dim, mod.dim
    s = la.zeros((n + m,) * 3)
    s[:n, :n, :n] = g.structure
    s[:n, :n, n:] = c.coeffs
    for p in range(n):
        # [e_p, u_s] = sum_t rho(e_p)[t][s] u_t
        s[p, n:, n:] = mod.action[p].T
        s[n:, p, n:] = -mod.action[p].T
    return DoubleLieAlgebra(LieAlgebraSpec(s), alg1.dim, alg2.dim, m)


# ---------------------------------------------------------------------------
# catalogue and random sampling
# ---------------------------------------------------------------------------

def affine_line() -> LieAlgebraSpec:
    """Two-dimensional [e0, e1] = e0."""
    c = la.zeros((2, 2, 2))
    c[0, 1, 0], c[1, 0, 0] = Fraction(1), Fraction(-1)
    return LieAlgebraSpec(c)


def heisenberg() -> LieAlgebraSpec:
    """[e0, e1] = e2."""
    c = la.zeros((3, 3, 3))
    c[0, 1, 2], c[1, 0, 2] = Fraction(1), Fraction(-1)
    return LieAlgebraSpec(c)


def sl2() -> LieAlgebraSpec:
    """Basis (h, e, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    c = la.zeros((3, 3, 3))
    for (i, j, k), v in {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1}.items():
        c[i, j, k], c[j, i, k] = Fraction(v), Fraction(-v)
    return LieAlgebraSpec(c)


def adjoint_module(alg: LieAlgebraSpec) -> ModuleSpec:
    # ad(e_i)[k][j] = c[i][j][k]
    return ModuleSpec(np.transpose(alg.structure, (0, 2, 1)).copy())


def dual_module(mod: ModuleSpec) -> ModuleSpec:
    return ModuleSpec(np.array([-a.T for a in mod.action], dtype=object).reshape(mod.action.shape))


def random_rational(rng: random.Random, size: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, 2))


def random_cochain(rng: random.Random, n: int, m: int, degree: int) -> Cochain:
    entries = {idx: [random_rational(rng) for _ in range(m)]
               for idx in itertools.combinations(range(n), degree)}
    return Cochain.from_entries(n, m, degree, entries)


def cochain_basis(n: int, m: int, degree: int) -> list[Cochain]:
    out = []
    for idx in itertools.combinations(range(n), degree):
        for s in range(m):
            val = la.zeros((m,))
            val[s] = Fraction(1)
            out.append(Cochain.from_entries(n, m, degree, {idx: val}))
    return out


def cocycle_space(alg: LieAlgebraSpec, mod: ModuleSpec, degree: int) -> list[Cochain]:
    """A basis of the closed cochains of the given degree (exact nullspace of d)."""
    basis = cochain_basis(alg.dim, mod.dim, degree)
    if not basis:
        return []
    images = [ce_differential(alg, mod, b).coeffs.ravel() for b in basis]
    mat = np.array(images, dtype=object).T
    null = la.nullspace(mat)
    out = []
    for col in range(null.shape[1]):
        acc = Cochain.zero(alg.dim, mod.dim, degree)
        for b, coef in zip(basis, null[:, col]):
            if coef != 0:
                acc = acc + Cochain(degree, b.coeffs * coef)
        out.append(acc)
    return out


def random_cocycle(rng: random.Random, alg: LieAlgebraSpec, mod: ModuleSpec, degree: int = 2,
                   space: list[Cochain] | None = None) -> Cochain:
    space = cocycle_space(alg, mod, degree) if space is None else space
    acc = Cochain.zero(alg.dim, mod.dim, degree)
    for b in space:
        acc = acc + Cochain(degree, b.coeffs * random_rational(rng))
    return acc


def random_basis_change(rng: random.Random, n: int) -> np.ndarray:
    while True:
        p = np.array([[random_rational(rng) for _ in range(n)] for _ in range(n)], dtype=object).reshape(n, n)
        if n == 0 or la.det(p) != 0:
            return p
