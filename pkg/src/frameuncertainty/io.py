"""JSON and CSV forms of vectors, systems, reports and certificates.

Floats are written with 17 significant digits so reports are byte-stable.
Non-finite floats become the strings "inf", "-inf" and "nan".
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from .extremal import FeasibilityCertificate
from .frames import FrameSystem
from .spaces import DomainError, MeasureSpace, Vector, as_exponent
from .uncertainty import BoundReport

CSV_COLUMNS = ("id", "lhs", "rhs", "slack", "holds", "equality", "q")


class InputError(ValueError):
    """Malformed JSON input."""


def fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x + 0.0, ".17g")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with fixed float formatting."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        s = fmt(obj)
        return s if math.isfinite(obj) else json.dumps(s)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _scalar(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict) and "re" in v:
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    raise InputError(f"cannot read scalar {v!r}")


def _scalar_json(z: complex, field: str):
    z = complex(z)
    return z.real if field == "real" else [z.real, z.imag]


# vectors

def vector_to_json(v: Vector) -> dict:
    if v.field == "real":
        entries = [[k, z.real] for k, z in v.entries.items()]
    else:
        entries = [[k, z.real, z.imag] for k, z in v.entries.items()]
    out = {"dim": v.dim, "entries": entries}
    if v.offset:
        out["offset"] = v.offset
    return out


def vector_from_json(obj: dict, offset: int | None = None, field: str | None = None) -> Vector:
    try:
        dim = int(obj["dim"])
        raw = obj.get("entries", [])
        off = int(obj.get("offset", 0)) if offset is None else offset
        entries = {}
        for e in raw:
            k = int(e[0])
            z = complex(float(e[1]), float(e[2]) if len(e) > 2 else 0.0)
            entries[k] = entries.get(k, 0) + z
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed vector JSON: {exc}") from None
    if field is None:
        field = "complex" if any(z.imag for z in entries.values()) else "real"
    try:
        return Vector(dim, entries, field=field, offset=off)
    except DomainError as exc:
        raise InputError(str(exc)) from None


def load_vectors(path: str, offset: int = 0) -> list[Vector]:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None
    if isinstance(obj, dict) and "vectors" in obj:
        obj = obj["vectors"]
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list):
        raise InputError(f"{path}: expected a vector or a list of vectors")
    return [vector_from_json(o, offset) for o in obj]


# systems

def system_to_json(sys: FrameSystem) -> dict:
    measure = {"kind": sys.space.kind, "n": sys.space.size}
    if not sys.space.is_counting:
        measure["weights"] = [float(w) for w in sys.space.weights]
    if sys.kind == "dense":
        rep = {
            "kind": "dense",
            "analysis": [[_scalar_json(z, sys.field) for z in row] for row in sys.analysis],
            "synthesis": [[_scalar_json(z, sys.field) for z in col] for col in sys.synthesis.T],
        }
    else:
        rep = {"kind": "diagonal", "r": str(sys.r)}
    return {"p": str(sys.p), "field": sys.field, "measure": measure, "repr": rep}


def system_from_json(obj: dict) -> FrameSystem:
    try:
        p = as_exponent(str(obj.get("p", "1")))
        field = obj.get("field", "complex")
        m = obj["measure"]
        space = MeasureSpace(m.get("kind", "finite"), int(m["n"]), m.get("weights"))
        rep = obj["repr"]
        if rep["kind"] == "dense":
            A = np.array([[_scalar(v) for v in row] for row in rep["analysis"]], dtype=complex)
            cols = np.array([[_scalar(v) for v in col] for col in rep["synthesis"]], dtype=complex)
            return FrameSystem(space, p, field, "dense", A, cols.T)
        if rep["kind"] == "diagonal":
            return FrameSystem(space, p, field, "diagonal", r=Fraction(str(rep.get("r", "1"))))
        raise InputError(f"unknown representation {rep['kind']!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed system JSON: {exc}") from None


def load_system(path: str) -> FrameSystem:
    with open(path) as fh:
        try:
            return system_from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None


# reports

def report_to_json(r: BoundReport) -> dict:
    out = {"id": r.id, "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack,
           "holds": r.holds, "equality": r.equality}
    if r.q is not None:
        out["q"] = r.q
    if r.side is not None:
        out["side"] = r.side
    if not r.bound_finite:
        out["bound_finite"] = False
    return out


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow([r.id, fmt(r.lhs), fmt(r.rhs), fmt(r.slack),
                    str(r.holds).lower(), str(r.equality).lower(),
                    "" if r.q is None else fmt(r.q)])
    return buf.getvalue()


def certificate_to_json(cert: FeasibilityCertificate, product: float) -> dict:
    return {
        "S": list(cert.S),
        "T": list(cert.T),
        "product": product,
        "witness": None if cert.witness is None else vector_to_json(cert.witness),
    }


def gram_to_csv(G) -> str:
    """Rows alpha, columns beta, entry moduli."""
    G = G.toarray() if hasattr(G, "toarray") else np.asarray(G)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + [str(j) for j in range(G.shape[1])])
    for i, row in enumerate(np.abs(G)):
        w.writerow([str(i)] + [fmt(v) for v in row])
    return buf.getvalue()
