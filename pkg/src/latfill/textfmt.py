"""Plain-text and JSON forms of lattices.

Text form is either ``name:<tag>`` for a named lattice or ``gram:`` followed by
one line of space-separated integers per row.  A bare name is also accepted on
input.
"""

from __future__ import annotations

import json
from typing import Optional

from .lattice import Lattice, LatticeError
from .names import LatticeName, make


def parse_lattice(text: str) -> Lattice:
    s = text.strip()
    if not s:
        raise LatticeError("empty lattice description")
    if s.startswith("{"):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as e:
            raise LatticeError(f"malformed JSON lattice: {e}") from None
        return lattice_from_json(data)
    if s.startswith("name:"):
        return make(s[5:].strip())
    if s.startswith("gram:"):
        body = s[5:]
        lines = [ln for ln in body.replace(";", "\n").splitlines() if ln.strip()]
        try:
            rows = [[int(x) for x in ln.replace(",", " ").split()] for ln in lines]
        except ValueError:
            raise LatticeError("malformed Gram matrix: entries must be integers") from None
        return Lattice.from_rows(rows)
    return make(s)


def _named_tag(L: Lattice) -> Optional[str]:
    if not L.name:
        return None
    try:
        if make(L.name).gram == L.gram:
            return str(LatticeName.parse(L.name))
    except LatticeError:
        return None
    return None


def format_lattice(L: Lattice, prefer_name: bool = True) -> str:
    tag = _named_tag(L) if prefer_name else None
    if tag is not None:
        return f"name:{tag}"
    return "\n".join(["gram:"] + [" ".join(str(x) for x in row) for row in L.gram])


def lattice_to_json(L: Lattice) -> dict:
    out = {"rank": L.rank, "gram": [list(r) for r in L.gram]}
    tag = _named_tag(L)
    if tag is not None:
        out["name"] = tag
    return out


def lattice_from_json(data) -> Lattice:
    if not isinstance(data, dict) or "gram" not in data:
        raise LatticeError("JSON lattice needs a 'gram' field")
    gram = data["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise LatticeError("'gram' must be a list of rows")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in gram for x in r):
        raise LatticeError("Gram entries must be integers")
    return Lattice.from_rows(gram, name=data.get("name"))
