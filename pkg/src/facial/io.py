"""JSON formats for facial sets, bifacial sets, monoids, loops and reports.

Cell names are strings in files.  Non-string cells (tuples produced by the
constructions) are written as compact JSON text, so dumping twice gives the
same bytes.  Rationals are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .bar import FiniteMonoid
from .bifacial import BifacialSet
from .core import FacialMap, FacialSet, StructuralError
from .moore import MooreLoop
from .points import as_fraction


def plain(obj):
    """Convert to JSON-ready values: tuples to lists, Fractions to ``"p/q"``."""
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, (tuple, list)):
        return [plain(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def cell_name(c) -> str:
    return c if isinstance(c, str) else json.dumps(plain(c), separators=(",", ":"))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _require(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise StructuralError(f"missing field {key!r}", where)
    return data[key]


def _pair_key(key, arity, where):
    try:
        parts = tuple(int(x) for x in key.split(","))
    except (AttributeError, ValueError):
        raise StructuralError(f"bad table key {key!r}", where) from None
    if len(parts) != arity:
        raise StructuralError(f"table key {key!r} needs {arity} integers", where)
    return parts


# -- facial sets ---------------------------------------------------------------------

def facial_to_json(F: FacialSet) -> dict:
    faces, aug, con = F.tables()
    out = {
        "levels": [{"cells": [cell_name(c) for c in F.cells(k)], "basepoint": cell_name(F.basepoint(k))}
                   for k in range(F.top + 1)],
        "faces": {f"{k},{i}": {cell_name(a): cell_name(b) for a, b in t.items()}
                  for (k, i), t in sorted(faces.items())},
    }
    if aug is not None:
        out["augmentation"] = {
            "cells": [cell_name(c) for c in F.cells(-1)],
            "basepoint": cell_name(F.basepoint(-1)),
            "map": {cell_name(a): cell_name(b) for a, b in aug.items()},
        }
    if con is not None:
        out["contraction"] = {str(k): {cell_name(a): cell_name(b) for a, b in t.items()}
                              for k, t in sorted(con.items())}
    return out


def facial_from_json(data) -> FacialSet:
    levels = _require(data, "levels", "facial set")
    if not isinstance(levels, list) or not levels:
        raise StructuralError("levels must be a nonempty list", "levels")
    cells = [_require(lv, "cells", f"levels[{k}]") for k, lv in enumerate(levels)]
    bases = [_require(lv, "basepoint", f"levels[{k}]") for k, lv in enumerate(levels)]
    faces = {_pair_key(key, 2, "faces"): t for key, t in data.get("faces", {}).items()}
    kw = {}
    aug = data.get("augmentation")
    if aug is not None:
        kw = dict(aug_cells=_require(aug, "cells", "augmentation"),
                  aug_basepoint=_require(aug, "basepoint", "augmentation"),
                  augmentation=_require(aug, "map", "augmentation"))
    con = data.get("contraction")
    if con is not None:
        try:
            kw["contraction"] = {int(k): t for k, t in con.items()}
        except ValueError:
            raise StructuralError("contraction keys must be levels", "contraction") from None
    return FacialSet(cells, bases, faces, **kw)


def map_from_json(data, source: FacialSet, target: FacialSet) -> FacialMap:
    maps = _require(data, "maps", "facial map")
    return FacialMap(source, target, maps, data.get("minus_one"))


# -- bifacial sets ------------------------------------------------------------------

def bifacial_to_json(Z: BifacialSet) -> dict:
    rows, cols = Z.tables()
    out = {
        "K": Z.K, "P": Z.P,
        "grid": {f"{k},{p}": {"cells": [cell_name(c) for c in Z.cells(k, p)],
                              "basepoint": cell_name(Z.basepoint(k, p))}
                 for k in range(Z.K + 1) for p in range(-1, Z.P + 1)},
        "row_faces": {",".join(map(str, key)): {cell_name(a): cell_name(b) for a, b in t.items()}
                      for key, t in sorted(rows.items())},
        "col_faces": {",".join(map(str, key)): {cell_name(a): cell_name(b) for a, b in t.items()}
                      for key, t in sorted(cols.items())},
    }
    con = Z.contraction_tables()
    if con is not None:
        out["contraction"] = {f"{k},{p}": {cell_name(a): cell_name(b) for a, b in t.items()}
                              for (k, p), t in sorted(con.items())}
    return out


def bifacial_from_json(data) -> BifacialSet:
    grid = _require(data, "grid", "bifacial set")
    cells, bases = {}, {}
    for key, entry in grid.items():
        kp = _pair_key(key, 2, "grid")
        cells[kp] = _require(entry, "cells", f"grid[{key}]")
        bases[kp] = _require(entry, "basepoint", f"grid[{key}]")
    rows = {_pair_key(k, 3, "row_faces"): t for k, t in _require(data, "row_faces", "bifacial set").items()}
    cols = {_pair_key(k, 3, "col_faces"): t for k, t in _require(data, "col_faces", "bifacial set").items()}
    con = data.get("contraction")
    if con is not None:
        con = {_pair_key(k, 2, "contraction"): t for k, t in con.items()}
    return BifacialSet(cells, bases, rows, cols, con)


# -- monoids and loops ---------------------------------------------------------------

def monoid_to_json(M: FiniteMonoid) -> dict:
    return {"elements": [cell_name(x) for x in M.elements], "identity": cell_name(M.identity),
            "table": [[cell_name(M.mul(a, b)) for b in M.elements] for a in M.elements],
            "name": M.name}


def monoid_from_json(data) -> FiniteMonoid:
    elements = _require(data, "elements", "monoid")
    table = _require(data, "table", "monoid")
    if len(table) != len(elements) or any(len(r) != len(elements) for r in table):
        raise StructuralError("table must be square over the elements", "monoid.table")
    return FiniteMonoid(elements, _require(data, "identity", "monoid"), table,
                        name=data.get("name", "custom"))


def loop_to_json(w: MooreLoop) -> dict:
    return {"dim": w.dim, "breakpoints": [[plain(t), plain(x)] for t, x in w.breakpoints]}


def loop_from_json(data) -> MooreLoop:
    dim = _require(data, "dim", "loop")
    bps = _require(data, "breakpoints", "loop")
    try:
        return MooreLoop(dim, tuple((as_fraction(t), tuple(as_fraction(c) for c in x)) for t, x in bps))
    except (TypeError, ValueError) as exc:
        raise StructuralError(str(exc), "loop.breakpoints") from None


def loops_from_json(data) -> list:
    if isinstance(data, dict) and "loops" in data:
        return [loop_from_json(w) for w in data["loops"]]
    if isinstance(data, list):
        return [loop_from_json(w) for w in data]
    return [loop_from_json(data)]


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise StructuralError(f"cannot read input: {exc.strerror}", str(path)) from None
    except json.JSONDecodeError as exc:
        raise StructuralError(f"invalid JSON: {exc.msg} (line {exc.lineno})", str(path)) from None
