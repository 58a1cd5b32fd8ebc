"""Scalar handling and small dense linear algebra.

Exact values are numpy arrays of ``dtype=object`` holding
:class:`fractions.Fraction`; float values are ``float64`` arrays.  Every
routine here dispatches on the dtype, so the rest of the package is written
once for both scalar kinds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DimMismatch, Singular

RATIONAL = "rational"
FLOAT = "float"
SCALAR_KINDS = (RATIONAL, FLOAT)

DEFAULT_FLOAT_TOL = 1e-9


def kind_of(a: np.ndarray) -> str:
    return RATIONAL if a.dtype == object else FLOAT


def as_array(data, kind: str = RATIONAL) -> np.ndarray:
    """Build an array of the requested scalar kind from nested sequences.

    Strings ``"p/q"`` are accepted for the rational kind.
    """
    if kind == RATIONAL:
        arr = np.array(data, dtype=object)
        if arr.size:
            flat = [Fraction(v) if not isinstance(v, Fraction) else v for v in arr.ravel()]
            arr = np.array(flat, dtype=object).reshape(arr.shape)
        return arr
    if kind == FLOAT:
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.array([float(Fraction(v)) if isinstance(v, str) else float(v)
                            for v in arr.ravel()]).reshape(arr.shape)
        return arr.astype(float)
    raise ValueError(f"unknown scalar kind {kind!r}")


def convert(a: np.ndarray, kind: str) -> np.ndarray:
    if kind_of(a) == kind:
        return a
    if kind == FLOAT:
        return np.array([float(v) for v in a.ravel()], dtype=float).reshape(a.shape)
    return np.array([Fraction(v) for v in a.ravel()], dtype=object).reshape(a.shape)


def zeros(shape, kind: str = RATIONAL) -> np.ndarray:
    if kind == RATIONAL:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape, dtype=float)


def eye(n: int, kind: str = RATIONAL) -> np.ndarray:
    out = zeros((n, n), kind)
    one = Fraction(1) if kind == RATIONAL else 1.0
    for i in range(n):
        out[i, i] = one
    return out


def scalar(value, kind: str = RATIONAL):
    return Fraction(value) if kind == RATIONAL else float(value)


def equal(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> bool:
    """Exact equality for rational arrays, tolerance comparison for floats."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    if a.dtype == object and b.dtype == object:
        return bool(np.all(a == b))
    if tol is None:
        tol = DEFAULT_FLOAT_TOL
    return bool(np.all(np.abs(a.astype(float) - b.astype(float)) <= tol))


def is_zero(a: np.ndarray, tol: float | None = None) -> bool:
    return equal(a, zeros(np.shape(a), kind_of(np.asarray(a))), tol)


def max_abs(a: np.ndarray) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(max(abs(float(v)) for v in a.ravel()))


def check_square(m: np.ndarray, n: int | None = None, name: str = "matrix") -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1] or (n is not None and m.shape[0] != n):
        raise DimMismatch(f"{name} has shape {m.shape}, expected ({n}, {n})")


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------

def _rref(m: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    rows = [[Fraction(v) for v in row] for row in m]
    ncols = m.shape[1] if m.ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def inverse(m: np.ndarray) -> np.ndarray:
    """Matrix inverse; Gauss-Jordan over the rationals for exact input."""
    check_square(m)
    n = m.shape[0]
    if m.dtype != object:
        if n == 0:
            return np.zeros((0, 0))
        if abs(np.linalg.det(m)) < 1e-300 or np.linalg.cond(m) > 1e14:
            raise Singular("matrix is numerically singular")
        return np.linalg.inv(m)
    if n == 0:
        return zeros((0, 0))
    aug = np.concatenate([m, eye(n)], axis=1)
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is not invertible")
    return np.array([row[n:] for row in rows], dtype=object)


def is_invertible(m: np.ndarray) -> bool:
    try:
        inverse(m)
    except Singular:
        return False
    return True


def _integer_rows(m: np.ndarray) -> list[list[int]]:
    out = []
    for row in m:
        row = [Fraction(v) for v in row]
        den = math.lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def rank(m: np.ndarray, tol: float = 1e-10) -> int:
    """Rank of a matrix.

    Exact input goes through fraction-free (Bareiss) elimination after
    clearing row denominators, so all intermediate entries stay integral.
    """
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if m.dtype != object:
        return int(np.linalg.matrix_rank(m, tol=tol))
    a = _integer_rows(m)
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def det(m: np.ndarray) -> Fraction:
    check_square(m)
    n = m.shape[0]
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(v) for v in row] for row in m]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        out *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return sign * out


def nullspace(m: np.ndarray) -> np.ndarray:
    """Basis of the right kernel of an exact matrix, as columns."""
    nrows, ncols = m.shape
    if nrows == 0:
        return eye(ncols)
    rows, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = zeros((ncols, len(free)))
    for k, f in enumerate(free):
        basis[f, k] = Fraction(1)
        for r, p in enumerate(pivots):
            basis[p, k] = -rows[r][f]
    return basis


def stack_columns(vectors: Iterable[np.ndarray], length: int, kind: str = RATIONAL) -> np.ndarray:
    vectors = list(vectors)
    if not vectors:
        return zeros((length, 0), kind)
    return np.stack([np.asarray(v) for v in vectors], axis=1)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
