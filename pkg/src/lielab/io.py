"""JSON documents for Lie rings.

Basis indices are 1-based in documents.  Scalars are ints (F_p), coefficient
lists (F_{p^k}) or "num/den" strings (Q).  Output uses sorted keys and a fixed
layout, so saving a loaded document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import DocumentError, JacobiError
from .fields import Field, field_from_descriptor
from .ring import LieRing

__all__ = ["FORMAT_VERSION", "to_document", "from_document", "dumps", "loads", "save", "load"]

FORMAT_VERSION = 1


def to_document(L: LieRing) -> dict:
    F = L.field
    return {
        "format_version": FORMAT_VERSION,
        "field": F.descriptor(),
        "dim": L.dim,
        "brackets": [[i + 1, j + 1, [F.encode(x) for x in v]] for (i, j), v in L.brackets.items()],
        "metadata": dict(L.metadata, name=L.name) if L.name else dict(L.metadata),
    }


def _scalar(F: Field, obj, where: str):
    if F.characteristic == 0:
        if not isinstance(obj, (str, int)) or isinstance(obj, bool):
            raise DocumentError(f"{where}: rational scalars are \"num/den\" strings, got {obj!r}")
        try:
            return F.coerce(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"{where}: bad rational {obj!r}") from exc
    if F.degree == 1:
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise DocumentError(f"{where}: F_{F.characteristic} scalars are integers, got {obj!r}")
        return F.coerce(obj)
    if not isinstance(obj, list) or len(obj) != F.degree or not all(isinstance(c, int) and not isinstance(c, bool) for c in obj):
        raise DocumentError(f"{where}: extension scalars are {F.degree} integer coefficients, got {obj!r}")
    return F.coerce(obj)


def from_document(doc, *, check: bool = True) -> LieRing:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("format_version", "field", "dim", "brackets"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    if doc["format_version"] != FORMAT_VERSION:
        raise DocumentError(f"format_version: unsupported {doc['format_version']!r}")
    try:
        F = field_from_descriptor(doc["field"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"field: {exc}") from exc
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError(f"dim: expected a positive integer, got {dim!r}")
    if not isinstance(doc["brackets"], list):
        raise DocumentError("brackets: expected a list")
    table = {}
    for n, entry in enumerate(doc["brackets"]):
        where = f"brackets[{n}]"
        if not (isinstance(entry, list) and len(entry) == 3):
            raise DocumentError(f"{where}: expected [i, j, coeffs]")
        i, j, coeffs = entry
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j)) or not 1 <= i < j <= dim:
            raise DocumentError(f"{where}: need 1 <= i < j <= {dim}, got i={i!r}, j={j!r}")
        if not isinstance(coeffs, list) or len(coeffs) != dim:
            raise DocumentError(f"{where}: coefficient list must have length {dim}")
        if (i - 1, j - 1) in table:
            raise DocumentError(f"{where}: pair ({i}, {j}) repeated")
        table[(i - 1, j - 1)] = [_scalar(F, c, f"{where}[{k}]") for k, c in enumerate(coeffs)]
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise DocumentError("metadata: expected an object")
    meta = dict(meta)
    name = meta.pop("name", "")
    try:
        return LieRing(F, dim, table, name=name if isinstance(name, str) else "", metadata=meta, check=check)
    except JacobiError as exc:
        raise DocumentError(f"brackets: {exc}") from exc


def dumps(L: LieRing) -> str:
    return json.dumps(to_document(L), sort_keys=True, indent=1) + "\n"


def loads(text: str, *, check: bool = True) -> LieRing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc, check=check)


def save(L: LieRing, path) -> None:
    Path(path).write_text(dumps(L))


def load(path, *, check: bool = True) -> LieRing:
    return loads(Path(path).read_text(), check=check)
