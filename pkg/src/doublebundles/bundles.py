"""Cocycle models of principal and double principal bundles.

The base is replaced by a finite cover: charts ``0..N-1``, a symmetric set of
overlaps and a set of triple overlaps.  A principal cocycle assigns a group
element ``g(i, j)`` to every overlap.  An element of an associated bundle is
a pair ``(chart, value)``, and the chart-change rule is

    value in chart j = rho(g(j, i)) . value in chart i.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from . import linalg as la
from .aut import AutGroup, DoubleLieGroup, DvsAut, ProductGroup, SemidirectGroup, aut_apply
from .duality import dual_rep, pair
from .dvs import BilinearMap, CoreSection, Dims, DvsElement, LinearSection, dvs_add, dvs_scale
from .errors import DimMismatch, InputError, NoOverlap

Report = dict[str, dict]


def _ok() -> dict:
    return {"pass": True, "counterexample": None}


def _fail(msg: str) -> dict:
    return {"pass": False, "counterexample": msg}


def report_passed(report: Report) -> bool:
    return all(entry["pass"] for entry in report.values())


@dataclass(frozen=True)
class CoverGraph:
    charts: int
    overlaps: frozenset = field(default_factory=frozenset)
    triples: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = set()
        for i, j in self.overlaps:
            if not (0 <= i < self.charts and 0 <= j < self.charts) or i == j:
                raise InputError(f"bad overlap ({i}, {j}) for {self.charts} charts")
            pairs.add((i, j))
            pairs.add((j, i))
        object.__setattr__(self, "overlaps", frozenset(pairs))
        for t in self.triples:
            i, j, k = t
            for p in ((i, j), (j, k), (i, k)):
                if p not in pairs:
                    raise InputError(f"triple {t} lacks the overlap {p}")
        object.__setattr__(self, "triples", frozenset(tuple(t) for t in self.triples))

    @classmethod
    def cycle(cls, n: int) -> "CoverGraph":
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> "CoverGraph":
        pairs = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
        triples = frozenset((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
        return cls(n, pairs, triples)

    def neighbours(self, i: int) -> list[int]:
        return sorted(j for a, j in self.overlaps if a == i)

    def path(self, start: int, end: int) -> list[int]:
        """A shortest overlap path, breadth first with lower indices preferred."""
        if start == end:
            return [start]
        parent = {start: None}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in self.neighbours(i):
                if j in parent:
                    continue
                parent[j] = i
                if j == end:
                    out = [j]
                    while parent[out[-1]] is not None:
                        out.append(parent[out[-1]])
                    return out[::-1]
                queue.append(j)
        raise NoOverlap(f"charts {start} and {end} are not connected")

    @property
    def connected(self) -> bool:
        try:
            for j in range(1, self.charts):
                self.path(0, j)
        except NoOverlap:
            return False
        return True


@dataclass
class RepSpec:
    """A double Lie group morphism ``rho: G -> Aut(R^[dims])``."""

    group: DoubleLieGroup
    dims: Dims
    rho: Callable[[Any], DvsAut]
    name: str = "rep"

    def __call__(self, g) -> DvsAut:
        return self.rho(g)

    def rho1(self, g) -> np.ndarray:
        return self.rho(g).a1

    def rho2(self, g) -> np.ndarray:
        return self.rho(g).a2


def aut_rep(dims: Dims) -> RepSpec:
    """The defining representation of Aut(R^[n])."""
    return RepSpec(AutGroup(dims), dims, lambda g: g, "aut")


def product_rep(dims: Dims) -> RepSpec:
    """GL(n1) x GL(n2) x GL(n0) acting blockwise with no twist."""

    def rho(g):
        return DvsAut(g[0], g[1], g[2], BilinearMap.zero(dims, la.kind_of(g[0])))

    return RepSpec(ProductGroup(dims), dims, rho, "product")


def semidirect_rep(n1: int, n2: int) -> RepSpec:
    """(GL(n1) x GL(n2)) x| Bil(n1, n2) acting on R^[(n1, n2, 1)].

    ``(g1, g2, v) -> (g1, g2, 1, T_v o (g1 x g2))`` where ``T_v`` is the
    bilinear form with row-major coefficients ``v``.  This is a homomorphism
    for the default (contragredient) action on forms.
    """
    dims = Dims(n1, n2, 1)
    group = SemidirectGroup(n1, n2)

    def rho(g):
        g1, g2, v = g
        form = BilinearMap(np.asarray(v).reshape(1, n1, n2))
        return DvsAut(g1, g2, la.eye(1, la.kind_of(g1)), form.precompose(g1, g2))

    return RepSpec(group, dims, rho, "semidirect")


class PrincipalCocycle:
    """Transition elements ``g(i, j)`` of a group over a cover.

    Missing reverse directions are filled with inverses; overlaps given in both
    directions are kept as given so that :func:`cocycle_verify` can test them.
    """

    def __init__(self, cover: CoverGraph, group: DoubleLieGroup, g: dict):
        self.cover = cover
        self.group = group
        self.g = {}
        for (i, j), val in g.items():
            if (i, j) not in cover.overlaps:
                raise InputError(f"transition given for ({i}, {j}), which is not an overlap")
            self.g[(i, j)] = val
        for i, j in cover.overlaps:
            if (i, j) not in self.g:
                if (j, i) not in self.g:
                    raise InputError(f"no transition for overlap ({i}, {j})")
                self.g[(i, j)] = group.invert(self.g[(j, i)])

    def __call__(self, i: int, j: int):
        if i == j:
            return self.group.identity()
        try:
            return self.g[(i, j)]
        except KeyError:
            raise NoOverlap(f"charts {i} and {j} do not overlap") from None

    def mapped(self, f: Callable, group) -> "PrincipalCocycle":
        out = PrincipalCocycle.__new__(PrincipalCocycle)
        out.cover, out.group = self.cover, group
        out.g = {k: f(v) for k, v in self.g.items()}
        return out


def _cocycle_report(cover: CoverGraph, g: Callable, multiply: Callable, equal: Callable,
                    identity, prefix: str = "") -> Report:
    report: Report = {}
    for i, j in sorted(cover.overlaps):
        if i < j:
            ok = equal(multiply(g(i, j), g(j, i)), identity)
            report[f"{prefix}inverse({i},{j})"] = _ok() if ok else _fail(
                f"g({i},{j}) g({j},{i}) != e")
    for i, j, k in sorted(cover.triples):
        ok = equal(multiply(g(i, j), g(j, k)), g(i, k))
        report[f"{prefix}triple({i},{j},{k})"] = _ok() if ok else _fail(
            f"g({i},{j}) g({j},{k}) != g({i},{k})")
    return report


def cocycle_verify(pc: PrincipalCocycle) -> Report:
    grp = pc.group
    return dict(sorted(_cocycle_report(pc.cover, pc, grp.multiply, grp.equal, grp.identity()).items()))


def dpb_cocycle_verify(pc: PrincipalCocycle) -> Report:
    """Cocycle conditions for G and for the two quotient families phi_1(g), phi_2(g).

    Overlaps whose transition lies in the core G0 are listed under
    ``core_valued`` (informational, always passing).
    """
    grp = pc.group
    report = cocycle_verify(pc)
    for side in (0, 1):
        n = grp.n1 if side == 0 else grp.n2
        proj = pc.mapped(lambda g, s=side: grp.project(g)[s], None)
        report.update(_cocycle_report(pc.cover, proj, lambda a, b: a @ b, la.equal, la.eye(n),
                                      prefix=f"phi{side + 1}:"))
    core = sorted(f"({i},{j})" for (i, j), g in pc.g.items() if i < j and grp.in_G0(g))
    report["core_valued"] = {"pass": True, "counterexample": None, "overlaps": core}
    return dict(sorted(report.items()))


# ---------------------------------------------------------------------------
# associated bundles
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AssocElement:
    chart: int
    value: DvsElement

    def __repr__(self):
        return f"AssocElement(chart={self.chart}, value={self.value!r})"


def chart_change(pc: PrincipalCocycle, rep: RepSpec, e: AssocElement, j: int) -> AssocElement:
    """Move ``e`` to an overlapping chart ``j``."""
    return AssocElement(j, aut_apply(rep(pc(j, e.chart)), e.value))


def transport(pc: PrincipalCocycle, rep: RepSpec, e: AssocElement, path: Iterable[int]) -> AssocElement:
    path = list(path)
    if not path:
        return e
    if path[0] != e.chart:
        raise InputError(f"path starts at chart {path[0]} but the element lives in chart {e.chart}")
    for j in path[1:]:
        e = chart_change(pc, rep, e, j)
    return e


def move_to(pc: PrincipalCocycle, rep: RepSpec, e: AssocElement, chart: int) -> AssocElement:
    return transport(pc, rep, e, pc.cover.path(e.chart, chart))


def holonomy(pc: PrincipalCocycle, rep: RepSpec, loop: list[int]) -> DvsAut:
    """The automorphism applied by transport around a closed chart path."""
    if not loop or loop[0] != loop[-1]:
        raise InputError("a loop must start and end at the same chart")
    h = DvsAut.identity(rep.dims)
    for a, b in zip(loop, loop[1:]):
        h = rep(pc(b, a)) * h
    return h


def assoc_fiber_op(pc: PrincipalCocycle, rep: RepSpec, side: str, e1: AssocElement,
                   e2: AssocElement) -> AssocElement:
    """``e1 +_side e2`` computed in the chart of ``e1``."""
    e2 = move_to(pc, rep, e2, e1.chart)
    return AssocElement(e1.chart, dvs_add(side, e1.value, e2.value))


def assoc_scale(side: str, r, e: AssocElement) -> AssocElement:
    return AssocElement(e.chart, dvs_scale(side, r, e.value))


def assoc_equal(pc: PrincipalCocycle, rep: RepSpec, e1: AssocElement, e2: AssocElement) -> bool:
    """Equality in the quotient: compare after moving ``e2`` to ``e1``'s chart."""
    return move_to(pc, rep, e2, e1.chart).value.equals(e1.value)


def project_I(e: AssocElement) -> tuple[int, np.ndarray]:
    return e.chart, e.value.x


def project_II(e: AssocElement) -> tuple[int, np.ndarray]:
    return e.chart, e.value.y


def dual_bundle(pc: PrincipalCocycle, rep: RepSpec) -> RepSpec:
    """The representation ``g -> dual_rep(rho(g))`` on the dual over V1."""
    return RepSpec(rep.group, rep.dims.dual, lambda g: dual_rep(rep(g)), f"dual-{rep.name}")


def assoc_pair(pc: PrincipalCocycle, rep: RepSpec, v: AssocElement, w: AssocElement):
    """Pair ``v`` in the bundle with ``w`` in its dual, in the chart of ``v``."""
    w = move_to(pc, dual_bundle(pc, rep), w, v.chart)
    return pair(v.value, w.value)


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

@dataclass
class BundleSection:
    """Per-chart local sections, all linear or all core."""

    local: dict[int, LinearSection | CoreSection]


def section_change(a: DvsAut, s: LinearSection | CoreSection) -> LinearSection | CoreSection:
    """The section ``y -> a . s(a2^-1 y)`` expressed in the new chart."""
    inv2 = la.inverse(a.a2)
    if isinstance(s, CoreSection):
        return CoreSection(a.a0 @ s.value if len(s.value) else s.value, s.n1, s.n2)
    base = a.a1 @ s.base if len(s.base) else s.base
    dims = s.dims
    if dims.n0 == 0 or dims.n2 == 0:
        return LinearSection(base, s.slope)
    slope = (a.a0 @ s.slope + a.mu.partial(s.base)) @ inv2
    return LinearSection(base, slope)


def section_check(pc: PrincipalCocycle, rep: RepSpec, s: BundleSection) -> Report:
    """Check ``s_j = rho(g(j,i)) o s_i o rho_2(g(i,j))`` on every ordered overlap."""
    missing = [i for i in range(pc.cover.charts) if i not in s.local]
    if missing:
        raise InputError(f"section missing on charts {missing}")
    kinds = {type(v) for v in s.local.values()}
    if len(kinds) != 1:
        raise InputError("a section must be linear on every chart or core on every chart")
    report: Report = {}
    for i, j in sorted(pc.cover.overlaps):
        si, sj = s.local[i], s.local[j]
        if si.dims != rep.dims or sj.dims != rep.dims:
            raise DimMismatch(f"section over {si.dims} for a bundle over {rep.dims}")
        expected = section_change(rep(pc(j, i)), si)
        ok = expected.equals(sj)
        report[f"overlap({i},{j})"] = _ok() if ok else _fail(
            f"chart {j} holds {sj!r}, transition from chart {i} gives {expected!r}")
    return report
