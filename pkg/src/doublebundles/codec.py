"""JSON encodings shared by the CLI.

Rationals are written as strings (``"3/4"``, ``"-2"``), floats as numbers,
matrices as row-major nested lists and bilinear maps as ``[k][i][j]`` lists.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import linalg as la
from .algebra import DvsDer
from .aut import AutGroup, DvsAut
from .bundles import CoverGraph, PrincipalCocycle, RepSpec, aut_rep
from .dvs import BilinearMap, Dims, DvsElement
from .errors import InputError
from .frames import Frame


def encode(value):
    """Recursively convert arrays and scalars into JSON-ready values."""
    if isinstance(value, np.ndarray):
        return [encode(v) for v in value] if value.ndim else encode(value.item())
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, DvsAut):
        return {"a1": encode(value.a1), "a2": encode(value.a2), "a0": encode(value.a0),
                "mu": encode(value.mu.coeffs)}
    if isinstance(value, DvsDer):
        return {"A1": encode(value.A1), "A2": encode(value.A2), "A0": encode(value.A0),
                "alpha": encode(value.alpha.coeffs)}
    if isinstance(value, Frame):
        return {"U": encode(value.U), "V": encode(value.V), "W": encode(value.W),
                "mu": encode(value.mu.coeffs)}
    if isinstance(value, DvsElement):
        return {"x": encode(value.x), "y": encode(value.y), "z": encode(value.z)}
    if isinstance(value, Dims):
        return {"n1": value.n1, "n2": value.n2, "n0": value.n0}
    return value


def dumps(value) -> str:
    return json.dumps(encode(value), sort_keys=True, indent=2)


def _field(obj: dict, key: str):
    if not isinstance(obj, dict):
        raise InputError(f"expected a JSON object, got {type(obj).__name__}")
    try:
        return obj[key]
    except KeyError:
        raise InputError(f"missing field {key!r}") from None


def decode_array(data, kind: str = la.RATIONAL, ndim: int | None = None) -> np.ndarray:
    try:
        arr = la.as_array(data, kind)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad numeric data: {exc}") from None
    if ndim is not None and arr.ndim != ndim and arr.size:
        raise InputError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    return arr


def _matrix(data, kind, n: int | None = None) -> np.ndarray:
    m = decode_array(data, kind)
    if m.size == 0 and n is not None:
        return la.zeros((n, n), kind)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    return m


def _tensor(data, kind, shape) -> BilinearMap:
    t = decode_array(data, kind)
    if t.size == 0:
        return BilinearMap(la.zeros(shape, kind))
    if t.shape != tuple(shape):
        raise InputError(f"bilinear map of shape {t.shape}, expected {tuple(shape)}")
    return BilinearMap(t)


def _wrap(build):
    try:
        return build()
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None


def decode_dims(obj) -> Dims:
    try:
        return Dims(int(_field(obj, "n1")), int(_field(obj, "n2")), int(_field(obj, "n0")))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad dims: {exc}") from None


def decode_aut(obj, kind: str = la.RATIONAL) -> DvsAut:
    a1, a2, a0 = (_matrix(_field(obj, k), kind) for k in ("a1", "a2", "a0"))
    mu = _tensor(_field(obj, "mu"), kind, (a0.shape[0], a1.shape[0], a2.shape[0]))
    return _wrap(lambda: DvsAut(a1, a2, a0, mu))


def decode_der(obj, kind: str = la.RATIONAL) -> DvsDer:
    A1, A2, A0 = (_matrix(_field(obj, k), kind) for k in ("A1", "A2", "A0"))
    alpha = _tensor(_field(obj, "alpha"), kind, (A0.shape[0], A1.shape[0], A2.shape[0]))
    return _wrap(lambda: DvsDer(A1, A2, A0, alpha))


def decode_frame(obj, kind: str = la.RATIONAL) -> Frame:
    U, V, W = (_matrix(_field(obj, k), kind) for k in ("U", "V", "W"))
    mu = _tensor(_field(obj, "mu"), kind, (W.shape[0], U.shape[0], V.shape[0]))
    return _wrap(lambda: Frame(U, V, W, mu))


def decode_element(obj, kind: str = la.RATIONAL) -> DvsElement:
    x, y, z = (decode_array(_field(obj, k), kind) for k in ("x", "y", "z"))
    for name, v in (("x", x), ("y", y), ("z", z)):
        if v.ndim != 1:
            raise InputError(f"component {name} must be a vector")
    return DvsElement(x, y, z)


def decode_bundle(obj) -> tuple[PrincipalCocycle, RepSpec]:
    """Bundle file: dims, charts, overlaps, triples, transitions {"i,j": quadruple}."""
    dims = decode_dims(_field(obj, "dims"))
    rep_name = obj.get("representation", "aut")
    if rep_name != "aut":
        raise InputError(f"unsupported representation {rep_name!r}")
    try:
        charts = int(_field(obj, "charts"))
        overlaps = frozenset(tuple(int(v) for v in p) for p in obj.get("overlaps", []))
        triples = frozenset(tuple(int(v) for v in t) for t in obj.get("triples", []))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad cover data: {exc}") from None
    if any(len(p) != 2 for p in overlaps) or any(len(t) != 3 for t in triples):
        raise InputError("overlaps are pairs and triples are triples")
    cover = CoverGraph(charts, overlaps, triples)
    g = {}
    for key, quad in _field(obj, "transitions").items():
        try:
            i, j = (int(v) for v in key.split(","))
        except ValueError:
            raise InputError(f"bad transition key {key!r}") from None
        a = decode_aut(quad)
        if a.dims != dims:
            raise InputError(f"transition {key} is over {a.dims}, bundle is over {dims}")
        g[(i, j)] = a
    rep = aut_rep(dims)
    return PrincipalCocycle(cover, AutGroup(dims), g), rep


def encode_bundle(pc: PrincipalCocycle, dims: Dims) -> dict:
    cover = pc.cover
    return {
        "dims": encode(dims),
        "charts": cover.charts,
        "overlaps": sorted([i, j] for i, j in cover.overlaps if i < j),
        "triples": sorted(list(t) for t in cover.triples),
        "transitions": {f"{i},{j}": encode(g) for (i, j), g in sorted(pc.g.items()) if i < j},
        "representation": "aut",
    }
