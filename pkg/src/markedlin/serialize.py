"""JSON encoding of instances, flags and verdicts.

Rationals are written as ``"p/q"`` strings (``"p"`` when integral) and
prime-field elements as ints; the field travels alongside as
``{"kind": "Q"}`` or ``{"kind": "gfp", "p": p}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .algebra import Field, field_from_json, field_to_json, scalar_to_json, span
from .flags import Flag, FlagType
from .maps import MarkedMap, ProjectiveMatrix, Sheaf
from .stability import BasisWitness, Mode, StabilityVerdict, Status, Witness


class InstanceError(ValueError):
    """Malformed or inconsistent input document."""


@dataclass(frozen=True)
class Instance:
    mm: MarkedMap
    sheaf: Sheaf
    mode: str = "auto"


def _matrix_to_json(rows) -> list:
    return [[scalar_to_json(x) for x in r] for r in rows]


def _scalar(x, field: Field):
    if isinstance(x, float):
        raise InstanceError("floating-point entries are not accepted; use integers or 'p/q' strings")
    try:
        return field(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"bad scalar {x!r}: {exc}") from exc


def matrix_from_json(obj, field: Field):
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InstanceError("a matrix is a list of rows")
    return tuple(tuple(_scalar(x, field) for x in r) for r in obj)


def instance_from_json(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    try:
        field = field_from_json(doc.get("field", {"kind": "Q"}))
    except (ValueError, KeyError, TypeError) as exc:
        raise InstanceError(str(exc)) from exc
    if "T" not in doc:
        raise InstanceError("instance needs a matrix 'T'")
    T = matrix_from_json(doc["T"], field)
    N = doc.get("N", len(T) - 1)
    if N != len(T) - 1:
        raise InstanceError(f"N={N} but T has {len(T)} rows")
    points = [tuple(_scalar(x, field) for x in v) for v in doc.get("points", [])]
    sh = doc.get("sheaf", {})
    q = sh.get("q", 1)
    m = sh.get("m", [1] * len(points))
    mode = str(doc.get("mode", "auto")).lower()
    if mode not in ("auto", "exact", "search"):
        raise InstanceError(f"unknown mode {mode!r}")
    try:
        mm = MarkedMap(ProjectiveMatrix(T, field), tuple(points))
        sheaf = Sheaf(int(q), tuple(m))
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    if len(sheaf.m) != mm.n:
        raise InstanceError(f"sheaf has {len(sheaf.m)} weights for {mm.n} points")
    return Instance(mm, sheaf, mode)


def instance_to_json(inst: Instance) -> dict:
    mm = inst.mm
    return {
        "N": mm.N,
        "field": field_to_json(mm.field),
        "T": _matrix_to_json(mm.T.rows),
        "points": _matrix_to_json(mm.points),
        "sheaf": {"q": inst.sheaf.q, "m": list(inst.sheaf.m)},
        "mode": inst.mode,
    }


def flag_from_json(obj, ambient_dim: int, field: Field) -> Flag:
    try:
        return Flag(ambient_dim, tuple(span(matrix_from_json(b, field), ambient_dim, field) for b in obj))
    except ValueError as exc:
        raise InstanceError(f"bad flag: {exc}") from exc


def _plain(x):
    if isinstance(x, Fraction):
        return scalar_to_json(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def verdict_to_json(v: StabilityVerdict) -> dict:
    out: dict[str, Any] = {"status": v.status.value, "mode": v.mode.value, "method": v.method}
    w = v.witness
    if isinstance(w, Witness):
        out["witness"] = {
            "kind": "flag",
            "flag": w.flag.to_json(),
            "flag_type": w.flag_type.value,
            "omega": scalar_to_json(w.omega),
            "bound": scalar_to_json(w.bound),
        }
    elif isinstance(w, BasisWitness):
        out["witness"] = {
            "kind": "basis",
            "flag": w.flag.to_json(),
            "eta": [scalar_to_json(x) for x in w.eta],
            "failed": w.failed,
        }
    else:
        out["witness"] = None
    out["meta"] = _plain(v.meta)
    return out


def verdict_from_json(obj: dict, ambient_dim: int, field: Field) -> StabilityVerdict:
    w = obj.get("witness")
    wit: Optional[object] = None
    if w is not None:
        flag = flag_from_json(w["flag"], ambient_dim, field)
        if w["kind"] == "flag":
            wit = Witness(flag, FlagType(w["flag_type"]), Fraction(w["omega"]), Fraction(w["bound"]))
        else:
            wit = BasisWitness(flag, tuple(Fraction(x) for x in w["eta"]), w["failed"])
    return StabilityVerdict(Status(obj["status"]), Mode(obj["mode"]), wit, obj.get("method", ""), obj.get("meta", {}))


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2)
