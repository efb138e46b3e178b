"""JSON documents for posets, semilattices, monoids, homs, towers and vectors.

Tables and maps are index based; rationals are ``"p/q"`` strings.  Every
document carries a ``kind`` tag.  :func:`dumps` emits canonical JSON
(sorted keys, input element order) so output can be compared byte for byte.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .bergman import BratteliTower, MatricialAlgebraShape, MultiplicityMatrix
from .boolean import Cone, SequentialSystem
from .monoid import FiniteCommutativeMonoid
from .order import FinitePoset, lower_sets
from .semilattice import FiniteSemilattice, SemilatticeHom
from .temperate import RationalVector, SetLatticeD

KINDS = ("poset", "semilattice", "monoid", "hom", "tower", "rational_vector",
         "set_lattice", "system", "rip")


class DocumentError(ValueError):
    """Malformed document; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass(frozen=True)
class LowerSetHom:
    """A 0-homomorphism H(P) -> H(Q) together with the posets it came from."""

    P: FinitePoset
    Q: FinitePoset
    hom: SemilatticeHom


@dataclass(frozen=True)
class PartialHom:
    """A homomorphism defined on a join-closed part of ``source`` (for extension)."""

    source: FiniteSemilattice
    target: FiniteSemilattice
    mapping: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RipInstance:
    n: int
    a: tuple
    b: tuple
    c: tuple
    d: tuple


def _need(doc: dict, key: str, typ=None, where: str = ""):
    name = f"{where}{key}"
    if key not in doc:
        raise DocumentError(name, "missing")
    v = doc[key]
    if typ is not None and not isinstance(v, typ):
        raise DocumentError(name, f"expected {typ.__name__ if isinstance(typ, type) else typ}")
    return v


def _index_table(rows, field):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError(field, "expected a list of lists")
    for r in rows:
        for v in r:
            if not isinstance(v, int) or isinstance(v, bool):
                raise DocumentError(field, f"entry {v!r} is not an integer index")
    return rows


def _rational(s, field):
    try:
        return Fraction(s) if isinstance(s, (str, int)) and not isinstance(s, bool) else _bad(field)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(field, f"{s!r} is not a rational 'p/q'") from None


def _bad(field):
    raise DocumentError(field, "expected a rational string 'p/q'")


def _read(source, base: str | None):
    if isinstance(source, dict):
        return source, base
    if isinstance(source, str):
        text = source.strip()
        if text.startswith("{"):
            try:
                return json.loads(text), base
            except json.JSONDecodeError as e:
                raise DocumentError("<text>", f"invalid JSON: {e}") from None
        path = source if base is None or os.path.isabs(source) else os.path.join(base, source)
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh), os.path.dirname(os.path.abspath(path))
        except json.JSONDecodeError as e:
            raise DocumentError(path, f"invalid JSON: {e}") from None
        except OSError as e:
            raise DocumentError(path, f"cannot read: {e.strerror}") from None
    raise DocumentError("<document>", "expected a JSON object, JSON text or a path")


def load(source, base: str | None = None) -> Any:
    """Parse and validate a document given as a dict, JSON text or file path."""
    doc, base = _read(source, base)
    if not isinstance(doc, dict):
        raise DocumentError("<document>", "top level must be an object")
    kind = _need(doc, "kind", str)
    if kind not in KINDS:
        raise DocumentError("kind", f"unknown kind {kind!r}")
    return _LOADERS[kind](doc, base)


def _load_semilattice(doc, base):
    labels = _need(doc, "elements", list)
    join = _index_table(_need(doc, "join", list), "join")
    return FiniteSemilattice(join, labels)


def _load_poset(doc, base):
    labels = [str(x) for x in _need(doc, "elements", list)]
    pairs = doc.get("covers", doc.get("relation", []))
    if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
        raise DocumentError("covers", "expected a list of [lower, upper] pairs")
    for p in pairs:
        for x in p:
            if str(x) not in labels:
                raise DocumentError("covers", f"unknown element {x!r}")
    return FinitePoset(labels, [(str(x), str(y)) for x, y in pairs])


def _load_monoid(doc, base):
    labels = _need(doc, "elements", list)
    add = _index_table(_need(doc, "add", list), "add")
    zero = doc.get("zero", 0)
    if not isinstance(zero, int):
        raise DocumentError("zero", "expected an element index")
    return FiniteCommutativeMonoid(add, zero, labels)


def _sub(doc, key, base):
    v = _need(doc, key)
    return load(v, base)


def _load_hom(doc, base):
    src, tgt = _sub(doc, "source", base), _sub(doc, "target", base)
    m = _need(doc, "map", list)
    if isinstance(src, FinitePoset) and isinstance(tgt, FinitePoset):
        HP, HQ = lower_sets(src), lower_sets(tgt)
        if len(m) != len(HP):
            raise DocumentError("map", f"expected one image per lower set of the source ({len(HP)})")
        index = {t.mask: i for i, t in enumerate(HQ.tags)}
        img = []
        for entry in m:
            if not isinstance(entry, list) or any(str(q) not in tgt.labels for q in entry):
                raise DocumentError("map", f"{entry!r} is not a list of target elements")
            mask = sum(1 << tgt.labels.index(str(q)) for q in entry)
            if mask not in index:
                raise DocumentError("map", f"{entry!r} is not a lower set of the target")
            img.append(index[mask])
        return LowerSetHom(src, tgt, SemilatticeHom(HP, HQ, img))
    if not (isinstance(src, FiniteSemilattice) and isinstance(tgt, FiniteSemilattice)):
        raise DocumentError("source", "hom source/target must both be semilattices or both posets")
    if "domain" in doc:
        dom = _need(doc, "domain", list)
        if len(dom) != len(m):
            raise DocumentError("map", "domain and map have different lengths")
        for x in dom + m:
            if not isinstance(x, int):
                raise DocumentError("domain", "indices must be integers")
        for x in dom:
            if not 0 <= x < len(src):
                raise DocumentError("domain", f"index {x} out of range")
        for v in m:
            if not 0 <= v < len(tgt):
                raise DocumentError("map", f"index {v} out of range")
        return PartialHom(src, tgt, tuple(zip(dom, m)))
    for v in m:
        if not isinstance(v, int):
            raise DocumentError("map", "indices must be integers")
    return SemilatticeHom(src, tgt, m)


def _load_tower(doc, base):
    levels = _need(doc, "levels", list)
    shapes = []
    for i, lv in enumerate(levels):
        if not isinstance(lv, dict) or not isinstance(lv.get("sizes"), list):
            raise DocumentError(f"levels[{i}]", "expected {\"sizes\": [...]}")
        shapes.append(MatricialAlgebraShape(lv["sizes"]))
    maps = _need(doc, "maps", list)
    if len(maps) != max(len(shapes) - 1, 0):
        raise DocumentError("maps", "need one matrix between consecutive levels")
    mats = [MultiplicityMatrix(tuple(tuple(r) for r in _index_table(s, f"maps[{i}]")), len(shapes[i + 1]))
            for i, s in enumerate(maps)]
    unital = doc.get("unital", False)
    if not isinstance(unital, bool):
        raise DocumentError("unital", "expected a boolean")
    return BratteliTower(tuple(shapes), tuple(mats), unital, doc.get("mode", "matricial"))


def _load_vector(doc, base):
    return RationalVector(_rational(e, "entries") for e in _need(doc, "entries", list))


def _load_set_lattice(doc, base):
    ground = [str(g) for g in _need(doc, "ground", list)]
    members = []
    for m in _need(doc, "members", list):
        if not isinstance(m, list) or any(str(x) not in ground for x in m):
            raise DocumentError("members", f"{m!r} is not a list of ground elements")
        members.append([ground.index(str(x)) for x in m])
    return SetLatticeD(ground, members)


def _load_system(doc, base):
    stages = []
    for i, s in enumerate(_need(doc, "stages", list)):
        st = load(s, base)
        if not isinstance(st, FiniteSemilattice):
            raise DocumentError(f"stages[{i}]", "expected a semilattice")
        stages.append(st)
    trans = _need(doc, "transitions", list)
    if len(trans) != max(len(stages) - 1, 0):
        raise DocumentError("transitions", "need one map between consecutive stages")
    system = SequentialSystem(stages, [SemilatticeHom(stages[i], stages[i + 1], m)
                                       for i, m in enumerate(trans)])
    if "cone" not in doc:
        return system, None
    cone = _need(doc, "cone", dict)
    apex = load(_need(cone, "apex", where="cone."), base)
    legs = _need(cone, "legs", list, "cone.")
    if len(legs) != len(stages):
        raise DocumentError("cone.legs", "need one leg per stage")
    return system, Cone(apex, [SemilatticeHom(stages[i], apex, m) for i, m in enumerate(legs)])


def _load_rip(doc, base):
    n = _need(doc, "n", int)

    def vec(key):
        v = _need(doc, key)
        v = [v] if isinstance(v, int) else v
        if not isinstance(v, list) or not all(isinstance(t, int) for t in v):
            raise DocumentError(key, "expected a list of integers")
        return tuple(v)

    return RipInstance(n, *(vec(k) for k in "abcd"))


_LOADERS = {
    "semilattice": _load_semilattice,
    "poset": _load_poset,
    "monoid": _load_monoid,
    "hom": _load_hom,
    "tower": _load_tower,
    "rational_vector": _load_vector,
    "set_lattice": _load_set_lattice,
    "system": _load_system,
    "rip": _load_rip,
}


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def to_document(obj) -> dict:
    """The canonical document of a loaded object."""
    if isinstance(obj, FiniteSemilattice):
        return {"kind": "semilattice", "elements": list(obj.labels),
                "join": [list(r) for r in obj.join]}
    if isinstance(obj, FinitePoset):
        return {"kind": "poset", "elements": list(obj.labels),
                "covers": [[obj.labels[x], obj.labels[y]] for x, y in obj.covers()]}
    if isinstance(obj, FiniteCommutativeMonoid):
        return {"kind": "monoid", "elements": list(obj.labels),
                "add": [list(r) for r in obj.add], "zero": obj.zero}
    if isinstance(obj, SemilatticeHom):
        return {"kind": "hom", "source": to_document(obj.source),
                "target": to_document(obj.target), "map": list(obj.map)}
    if isinstance(obj, PartialHom):
        return {"kind": "hom", "source": to_document(obj.source),
                "target": to_document(obj.target),
                "domain": [x for x, _ in obj.mapping], "map": [v for _, v in obj.mapping]}
    if isinstance(obj, LowerSetHom):
        HQ = obj.hom.target
        return {"kind": "hom", "source": to_document(obj.P), "target": to_document(obj.Q),
                "map": [[obj.Q.labels[q] for q in HQ.tags[v]] for v in obj.hom.map]}
    if isinstance(obj, BratteliTower):
        return {"kind": "tower", "levels": [{"sizes": list(s.block_sizes)} for s in obj.levels],
                "maps": [[list(r) for r in m.entries] for m in obj.maps],
                "unital": obj.unital, "mode": obj.mode}
    if isinstance(obj, RationalVector):
        return {"kind": "rational_vector", "entries": [_frac(e) for e in obj]}
    if isinstance(obj, SetLatticeD):
        return {"kind": "set_lattice", "ground": list(obj.ground),
                "members": [[obj.ground[i] for i in sorted(m)] for m in obj.members]}
    if isinstance(obj, SequentialSystem):
        return {"kind": "system", "stages": [to_document(s) for s in obj.stages],
                "transitions": [list(t.map) for t in obj.transitions]}
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], SequentialSystem):
        doc = to_document(obj[0])
        if obj[1] is not None:
            doc["cone"] = {"apex": to_document(obj[1].apex),
                           "legs": [list(l.map) for l in obj[1].legs]}
        return doc
    if isinstance(obj, RipInstance):
        return {"kind": "rip", "n": obj.n, "a": list(obj.a), "b": list(obj.b),
                "c": list(obj.c), "d": list(obj.d)}
    raise TypeError(f"no document form for {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical JSON text for a document or plain JSON-able value."""
    doc = obj if isinstance(obj, (dict, list)) else to_document(obj)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
