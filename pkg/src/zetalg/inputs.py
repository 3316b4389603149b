"""Algebra descriptions: JSON input files and named built-ins."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import IntersectionArray, TableAlgebra, complete_graph, from_intersection_array, validate
from .errors import DomainError, InputSchemaError

BUILTIN_NAMES = ("kn:<n>", "petersen", "square", "gq21", "crown:<n>")

_ARRAYS = {
    "petersen": ((3, 2), (1, 1)),
    "square": ((2, 1), (1, 2)),
    "gq21": ((4, 2), (1, 2)),
}


def _param(name: str, prefix: str) -> int:
    text = name[len(prefix) :]
    try:
        return int(text)
    except ValueError:
        raise DomainError(f"built-in {name!r}: parameter {text!r} is not an integer") from None


def crown_array(n: int) -> IntersectionArray:
    """Intersection array of ``K_{n,n}`` minus a perfect matching."""
    if n < 3:
        raise DomainError(f"crown graph needs n >= 3, got {n}")
    return IntersectionArray((n - 1, n - 2, 1), (1, n - 2, n - 1))


def builtin(name: str) -> TableAlgebra:
    """Look up ``kn:<n>``, ``petersen``, ``square``, ``gq21`` or ``crown:<n>``."""
    key = name.strip().lower()
    if key.startswith("kn:"):
        return complete_graph(_param(key, "kn:"))
    if key.startswith("crown:"):
        return from_intersection_array(crown_array(_param(key, "crown:")))
    if key in _ARRAYS:
        b, c = _ARRAYS[key]
        return from_intersection_array(IntersectionArray(b, c))
    raise DomainError(f"unknown built-in {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise InputSchemaError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InputSchemaError(f"{where}: expected an integer or a decimal string, got {value!r}")


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list):
        raise InputSchemaError(f"{where}: expected a list")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(value)]


def algebra_from_dict(data: Any) -> TableAlgebra:
    """Build an algebra from the input schema.

    Either ``{"rank": r, "tensor": [[[...]]], "involution": [...]}`` or
    ``{"intersection_array": {"b": [...], "c": [...]}}``; an optional
    boolean ``"association_scheme"`` asks for integral multiplicities.
    """
    if not isinstance(data, dict):
        raise InputSchemaError("top level: expected a JSON object")
    scheme = data.get("association_scheme", None)
    if scheme is not None and not isinstance(scheme, bool):
        raise InputSchemaError("association_scheme: expected true or false")
    if "intersection_array" in data:
        arr = data["intersection_array"]
        if not isinstance(arr, dict):
            raise InputSchemaError("intersection_array: expected an object with keys b and c")
        for key in ("b", "c"):
            if key not in arr:
                raise InputSchemaError(f"intersection_array.{key}: missing")
        b = _int_list(arr["b"], "intersection_array.b")
        c = _int_list(arr["c"], "intersection_array.c")
        if len(b) != len(c) or not b:
            raise InputSchemaError("intersection_array: b and c must be non-empty and of equal length")
        for where, vals in (("intersection_array.b", b), ("intersection_array.c", c)):
            for i, x in enumerate(vals):
                if x <= 0:
                    raise InputSchemaError(f"{where}[{i}]: expected a positive integer, got {x}")
        return from_intersection_array(IntersectionArray(tuple(b), tuple(c)), association_scheme=True if scheme is None else scheme)
    if "tensor" not in data:
        raise InputSchemaError("tensor: missing (or give intersection_array)")
    tensor = data["tensor"]
    if not isinstance(tensor, list) or not tensor:
        raise InputSchemaError("tensor: expected a non-empty r x r x r nested list")
    r = len(tensor)
    if "rank" in data and _int(data["rank"], "rank") != r:
        raise InputSchemaError(f"rank: declared {data['rank']} but tensor has {r} planes")
    parsed = []
    for i, plane in enumerate(tensor):
        if not isinstance(plane, list) or len(plane) != r:
            raise InputSchemaError(f"tensor[{i}]: expected a list of {r} rows")
        rows = []
        for j, row in enumerate(plane):
            if not isinstance(row, list) or len(row) != r:
                raise InputSchemaError(f"tensor[{i}][{j}]: expected a list of {r} integers")
            rows.append([_int(x, f"tensor[{i}][{j}][{k}]") for k, x in enumerate(row)])
        parsed.append(rows)
    involution = data.get("involution")
    inv = _int_list(involution, "involution") if involution is not None else None
    if inv is not None and len(inv) != r:
        raise InputSchemaError(f"involution: expected {r} entries, got {len(inv)}")
    return validate(parsed, inv, association_scheme=bool(scheme))


def load_algebra(path: str | Path) -> TableAlgebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputSchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputSchemaError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None
    return algebra_from_dict(data)


def algebra_to_dict(T: TableAlgebra) -> dict:
    return {
        "rank": T.rank,
        "tensor": [[list(row) for row in plane] for plane in T.tensor],
        "involution": list(T.involution),
        "association_scheme": T.association_scheme,
    }
