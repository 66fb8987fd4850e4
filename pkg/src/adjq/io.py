"""JSON-syntax file formats for quivers, coalgebras, algebras, maps and ideals.

Scalars are written as strings: "3/2" over Q, residues like "4" over F_p.
Omitted delta/counit/mult/unit entries are zero.
"""

from __future__ import annotations

import json
import os

from .algebra import FiniteAlgebra, AlgebraMap, TwoSidedIdeal, ideal_closure
from .coalgebra import Coalgebra, CoalgebraMap
from .errors import InputError
from .fields import field_descriptor, field_from_descriptor
from .linalg import Mat
from .quiver import KQuiver, Quiver


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def dump_json(obj, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


# --- quivers -----------------------------------------------------------------


def quiver_from_obj(obj) -> Quiver:
    try:
        vertices = obj["vertices"]
        arrows = [(a["name"], a["src"], a["tgt"]) for a in obj.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quiver object: {exc}") from None
    return Quiver(vertices, arrows)


def quiver_to_obj(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": n, "src": s, "tgt": t} for n, s, t in q.arrows],
    }


def _split_pair_key(key: str, vertices) -> tuple[str, str]:
    vset = set(vertices)
    hits = []
    parts = key.split(",")
    for cut in range(1, len(parts)):
        g = ",".join(parts[:cut])
        h = ",".join(parts[cut:])
        if g in vset and h in vset:
            hits.append((g, h))
    if len(hits) != 1:
        raise InputError(f"ambiguous or unknown arrow-space key {key!r}")
    return hits[0]


def kquiver_from_obj(obj) -> KQuiver:
    if "arrow_spaces" not in obj:
        return to_kquiver_from(obj)
    vertices = obj.get("vertices")
    if vertices is None:
        raise InputError("k-quiver object needs a vertex list")
    spaces = {}
    for key, val in obj["arrow_spaces"].items():
        pair = _split_pair_key(key, vertices)
        if isinstance(val, int):
            spaces[pair] = tuple(f"{pair[0]}_{pair[1]}_{i}" for i in range(val))
        else:
            spaces[pair] = tuple(val)
    return KQuiver(vertices, spaces)


def to_kquiver_from(obj) -> KQuiver:
    from .quiver import to_kquiver

    return to_kquiver(quiver_from_obj(obj))


def kquiver_to_obj(kq: KQuiver) -> dict:
    for v in kq.vertices:
        if "," in v:
            raise InputError("vertex labels with commas cannot be serialized")
    return {
        "vertices": list(kq.vertices),
        "arrow_spaces": {f"{g},{h}": list(names) for (g, h), names in kq.spaces.items()},
    }


def any_quiver_from_obj(obj) -> KQuiver:
    """Accept either a plain quiver or a k-quiver object."""
    if "arrow_spaces" in obj:
        return kquiver_from_obj(obj)
    return to_kquiver_from(obj)


# --- coalgebras and algebras --------------------------------------------------


def _coeff_map_to_vector(field, labels, obj, what: str):
    vec = [field.zero] * len(labels)
    index = {lbl: i for i, lbl in enumerate(labels)}
    for lbl, coeff in obj.items():
        if lbl not in index:
            raise InputError(f"{what} mentions unknown basis label {lbl!r}")
        vec[index[lbl]] = field.parse(str(coeff))
    return tuple(vec)


def coalgebra_from_obj(obj) -> Coalgebra:
    try:
        field = field_from_descriptor(obj["field"])
        labels = list(obj["basis"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed coalgebra object: {exc}") from None
    index = {lbl: i for i, lbl in enumerate(labels)}
    n = len(labels)
    delta = [[] for _ in range(n)]
    for lbl, terms in obj.get("delta", {}).items():
        if lbl not in index:
            raise InputError(f"delta mentions unknown basis label {lbl!r}")
        for term in terms:
            if len(term) != 3:
                raise InputError(f"delta term {term!r} must be [left, right, coeff]")
            l, r, coeff = term
            if l not in index or r not in index:
                raise InputError(f"delta term {term!r} mentions unknown labels")
            delta[index[lbl]].append((index[l], index[r], field.parse(str(coeff))))
    counit = _coeff_map_to_vector(field, labels, obj.get("counit", {}), "counit")
    grading = obj.get("grading")
    hints = obj.get("grouplikes")
    grouplike_hint = None
    if hints is not None:
        grouplike_hint = [_coeff_map_to_vector(field, labels, h, "grouplikes") for h in hints]
    c = Coalgebra(field, labels, delta, counit, grading=grading, grouplike_hint=grouplike_hint)
    if grouplike_hint is not None:
        for v in grouplike_hint:
            if not c.is_group_like(v):
                raise InputError("declared group-like is not group-like")
    return c


def coalgebra_to_obj(c: Coalgebra) -> dict:
    field = c.field
    obj = {
        "field": field_descriptor(field),
        "basis": list(c.labels),
        "delta": {},
        "counit": {},
    }
    for i, terms in enumerate(c.delta):
        if terms:
            obj["delta"][c.labels[i]] = [
                [c.labels[j], c.labels[k], field.format(co)] for j, k, co in terms
            ]
    for i, x in enumerate(c.counit):
        if x != field.zero:
            obj["counit"][c.labels[i]] = field.format(x)
    if c.grading is not None:
        obj["grading"] = list(c.grading)
    if c.grouplike_hint is not None:
        obj["grouplikes"] = [
            {c.labels[i]: field.format(x) for i, x in enumerate(v) if x != field.zero}
            for v in c.grouplike_hint
        ]
    return obj


def algebra_from_obj(obj) -> FiniteAlgebra:
    try:
        field = field_from_descriptor(obj["field"])
        labels = list(obj["basis"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra object: {exc}") from None
    index = {lbl: i for i, lbl in enumerate(labels)}
    n = len(labels)
    mult = [[[] for _ in range(n)] for _ in range(n)]
    for key, terms in obj.get("mult", {}).items():
        parts = key.split("*")
        hits = []
        for cut in range(1, len(parts)):
            l, r = "*".join(parts[:cut]), "*".join(parts[cut:])
            if l in index and r in index:
                hits.append((l, r))
        if len(hits) != 1:
            raise InputError(f"ambiguous or unknown product key {key!r}")
        l, r = hits[0]
        for term in terms:
            if len(term) != 2:
                raise InputError(f"mult term {term!r} must be [label, coeff]")
            lbl, coeff = term
            if lbl not in index:
                raise InputError(f"mult term {term!r} mentions an unknown label")
            mult[index[l]][index[r]].append((index[lbl], field.parse(str(coeff))))
    unit = _coeff_map_to_vector(field, labels, obj.get("unit", {}), "unit")
    return FiniteAlgebra(field, labels, mult, unit, grading=obj.get("grading"))


def algebra_to_obj(a: FiniteAlgebra) -> dict:
    field = a.field
    for lbl in a.labels:
        if "*" in lbl:
            raise InputError("basis labels with '*' cannot be serialized")
    obj = {
        "field": field_descriptor(field),
        "basis": list(a.labels),
        "mult": {},
        "unit": {},
    }
    for i in range(a.dim):
        for j in range(a.dim):
            if a.mult[i][j]:
                obj["mult"][f"{a.labels[i]}*{a.labels[j]}"] = [
                    [a.labels[k], field.format(co)] for k, co in a.mult[i][j]
                ]
    for i, x in enumerate(a.unit):
        if x != field.zero:
            obj["unit"][a.labels[i]] = field.format(x)
    if a.grading is not None:
        obj["grading"] = list(a.grading)
    return obj


# --- maps and ideals -----------------------------------------------------------


def _resolve(obj_or_path, base_dir: str):
    if isinstance(obj_or_path, str):
        path = obj_or_path
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return load_json(path)
    return obj_or_path


def _matrix_from_obj(field, rows, nrows, ncols) -> Mat:
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise InputError(f"matrix must be {nrows}x{ncols} (target dim x source dim)")
    return Mat(field, [[field.parse(str(x)) for x in row] for row in rows], ncols)


def coalgebra_map_from_obj(obj, base_dir: str = ".") -> CoalgebraMap:
    try:
        source = coalgebra_from_obj(_resolve(obj["source"], base_dir))
        target = coalgebra_from_obj(_resolve(obj["target"], base_dir))
        rows = obj["matrix"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed map object: {exc}") from None
    if source.field != target.field:
        raise InputError("map endpoints live over different fields")
    return CoalgebraMap(source, target, _matrix_from_obj(source.field, rows, target.dim, source.dim))


def coalgebra_map_to_obj(m: CoalgebraMap) -> dict:
    field = m.source.field
    return {
        "source": coalgebra_to_obj(m.source),
        "target": coalgebra_to_obj(m.target),
        "matrix": [[field.format(x) for x in row] for row in m.matrix.rows],
    }


def algebra_map_from_obj(obj, base_dir: str = ".") -> AlgebraMap:
    try:
        source = algebra_from_obj(_resolve(obj["source"], base_dir))
        target = algebra_from_obj(_resolve(obj["target"], base_dir))
        rows = obj["matrix"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed map object: {exc}") from None
    if source.field != target.field:
        raise InputError("map endpoints live over different fields")
    return AlgebraMap(source, target, _matrix_from_obj(source.field, rows, target.dim, source.dim))


def algebra_map_to_obj(m: AlgebraMap) -> dict:
    field = m.source.field
    return {
        "source": algebra_to_obj(m.source),
        "target": algebra_to_obj(m.target),
        "matrix": [[field.format(x) for x in row] for row in m.matrix.rows],
    }


def ideal_from_obj(obj, base_dir: str = ".") -> TwoSidedIdeal:
    try:
        algebra = algebra_from_obj(_resolve(obj["algebra"], base_dir))
        gens = obj["generators"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed ideal object: {exc}") from None
    vectors = [
        _coeff_map_to_vector(algebra.field, algebra.labels, g, "generator") for g in gens
    ]
    return ideal_closure(algebra, vectors)


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise InputError("top-level JSON value must be an object")
    if "matrix" in obj:
        src = obj.get("source")
        probe = src if isinstance(src, dict) else {}
        return "algebra-map" if "mult" in probe else "coalgebra-map"
    if "delta" in obj or "counit" in obj:
        return "coalgebra"
    if "mult" in obj or "unit" in obj:
        return "algebra"
    if "arrow_spaces" in obj:
        return "kquiver"
    if "arrows" in obj or "vertices" in obj:
        return "quiver"
    if "generators" in obj:
        return "ideal"
    raise InputError("cannot recognize the object kind from its keys")
