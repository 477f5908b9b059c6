"""JSON documents for groupoids, matched pairs, morphisms, representations and rotation pairs.

Every document is an object with a ``"kind"`` key. Arrows, objects, cells
and elements are referred to by integer ids (positions in their lists);
labels are stored as JSON values with tuples written as lists. Output uses
sorted keys, so ``dumps(load(text)) == text`` for any text this module wrote.

Loading checks structure only (shapes, id ranges, references). Whether the
tables satisfy the axioms is left to the validators, so that a CLI can tell
malformed input apart from a mathematical violation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .doubles import MatchedPairMorphism
from .groupoid import UNDEFINED, FiniteGroupoid, from_tables
from .matched import Cell, MatchedPair
from .reps import Representation
from .rotations import RotationPair

KINDS = ("groupoid", "matched_pair", "morphism", "representation", "rotation_pair", "workspace")


class DocumentError(ValueError):
    """The input is not a well-formed document."""


# ------------------------------------------------------------------ labels

def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    if isinstance(label, (str, int, bool)) or label is None:
        return label
    raise DocumentError(f"label {label!r} cannot be written as JSON")


def label_from_json(value):
    if isinstance(value, list):
        return tuple(label_from_json(x) for x in value)
    if isinstance(value, (dict, float)):
        raise DocumentError(f"unsupported label {value!r}")
    return value


def dumps(doc: dict, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not doc:
        raise DocumentError("a document must be a non-empty JSON object")
    if doc.get("kind") not in KINDS:
        raise DocumentError(f"unknown or missing kind {doc.get('kind')!r}; expected one of {', '.join(KINDS)}")
    return doc


# ------------------------------------------------------------- helpers

def _field(doc: dict, key: str, typ=list):
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, typ):
        raise DocumentError(f"field {key!r} has the wrong type")
    return value


def _ids(values, bound: int, what: str, allow_undefined: bool = False) -> tuple:
    out = []
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise DocumentError(f"{what}: expected integer ids, got {v!r}")
        if not (0 <= v < bound or (allow_undefined and v == UNDEFINED)):
            raise DocumentError(f"{what}: id {v} out of range")
        out.append(v)
    return tuple(out)


# ------------------------------------------------------------- groupoids

def groupoid_to_json(G: FiniteGroupoid) -> dict:
    n = len(G)
    return {
        "kind": "groupoid",
        "objects": [label_to_json(o) for o in G.objects],
        "arrows": [{"id": a, "label": label_to_json(G.arrows[a]), "src": G.src[a], "end": G.end[a]}
                   for a in range(n)],
        "comp": [[f, g, G.comp[f][g]] for f in range(n) for g in range(n) if G.comp[f][g] != UNDEFINED],
        "inv": [[a, G.inv[a]] for a in range(n) if G.inv[a] != UNDEFINED],
    }


def groupoid_from_json(doc: dict) -> FiniteGroupoid:
    """Identities are inferred as loops with ``comp(i, i) = i``; ``inv`` must agree with ``comp``."""
    objects = [label_from_json(o) for o in _field(doc, "objects")]
    k = len(objects)
    if not objects:
        raise DocumentError("a groupoid needs at least one object")
    records = _field(doc, "arrows")
    n = len(records)
    arrows, src, end = [None] * n, [0] * n, [0] * n
    seen = set()
    for r in records:
        if not isinstance(r, dict):
            raise DocumentError("arrows are objects with id, label, src and end")
        i = _ids([_field(r, "id", int)], n, "arrow id")[0]
        if i in seen:
            raise DocumentError(f"arrow id {i} repeated")
        seen.add(i)
        if "label" not in r:
            raise DocumentError(f"arrow {i} has no label")
        arrows[i] = label_from_json(r["label"])
        src[i] = _ids([_field(r, "src", int)], k, "src")[0]
        end[i] = _ids([_field(r, "end", int)], k, "end")[0]
    comp = [[UNDEFINED] * n for _ in range(n)]
    for t in _field(doc, "comp"):
        if not isinstance(t, list) or len(t) != 3:
            raise DocumentError("comp entries are [f, g, fg] triples")
        f, g, fg = _ids(t, n, "comp")
        if end[f] != src[g]:
            raise DocumentError(f"comp lists the non-composable pair [{f}, {g}]")
        if comp[f][g] != UNDEFINED:
            raise DocumentError(f"comp lists [{f}, {g}] twice")
        comp[f][g] = fg
    missing = [(f, g) for f in range(n) for g in range(n) if end[f] == src[g] and comp[f][g] == UNDEFINED]
    if missing:
        raise DocumentError(f"comp is missing the composable pair {list(missing[0])}")
    if len(set(map(repr, objects))) != k or len(set(map(repr, arrows))) != n:
        raise DocumentError("labels must be unique")
    G = from_tables(objects, arrows, src, end, comp)
    for t in _field(doc, "inv"):
        if not isinstance(t, list) or len(t) != 2:
            raise DocumentError("inv entries are [g, g⁻¹] pairs")
        g, gi = _ids(t, n, "inv")
        if G.inv[g] != UNDEFINED and G.inv[g] != gi:
            raise DocumentError(f"inv gives {gi} for arrow {g}, composition gives {G.inv[g]}")
    return G


# ---------------------------------------------------------- matched pairs

def _pair_body(M: MatchedPair) -> dict:
    return {
        "act_left": [[x, g, v] for (x, g), v in zip(M.cells, M.left_table)],
        "act_right": [[x, g, v] for (x, g), v in zip(M.cells, M.right_table)],
    }


def pair_to_json(M: MatchedPair) -> dict:
    doc = {"kind": "matched_pair", "vertical": groupoid_to_json(M.V), "horizontal": groupoid_to_json(M.H)}
    doc.update(_pair_body(M))
    return doc


def _action_table(doc: dict, key: str, V: FiniteGroupoid, H: FiniteGroupoid, bound: int) -> dict:
    out = {}
    for t in _field(doc, key):
        if not isinstance(t, list) or len(t) != 3:
            raise DocumentError(f"{key} entries are [x, g, result] triples")
        x = _ids(t[:1], len(H), key)[0]
        g = _ids(t[1:2], len(V), key)[0]
        v = _ids(t[2:], bound, key)[0]
        if H.end[x] != V.src[g]:
            raise DocumentError(f"{key} lists the non-composable pair [{x}, {g}]")
        if (x, g) in out:
            raise DocumentError(f"{key} lists [{x}, {g}] twice")
        out[(x, g)] = v
    return out


def _pair_from_parts(V: FiniteGroupoid, H: FiniteGroupoid, doc: dict) -> MatchedPair:
    if V.objects != H.objects:
        raise DocumentError("the two groupoids must share their objects, in the same order")
    left = _action_table(doc, "act_left", V, H, len(V))
    right = _action_table(doc, "act_right", V, H, len(H))
    expected = {(x, g) for x in range(len(H)) for g in range(len(V)) if H.end[x] == V.src[g]}
    if set(left) != expected or set(right) != expected:
        raise DocumentError("act_left and act_right must cover every composable pair")
    cells = tuple(Cell(x, g) for x, g in left)
    return MatchedPair(V, H, cells, tuple(left[c] for c in cells), tuple(right[c] for c in cells))


def pair_from_json(doc: dict) -> MatchedPair:
    V = groupoid_from_json(_field(doc, "vertical", dict))
    H = groupoid_from_json(_field(doc, "horizontal", dict))
    return _pair_from_parts(V, H, doc)


# -------------------------------------------------------------- morphisms

def morphism_to_json(m: MatchedPairMorphism) -> dict:
    return {"kind": "morphism", "source": pair_to_json(m.source), "target": pair_to_json(m.target),
            "alpha": list(m.alpha), "beta": list(m.beta)}


def _morphism_from_parts(S: MatchedPair, T: MatchedPair, doc: dict) -> MatchedPairMorphism:
    alpha = _ids(_field(doc, "alpha"), len(T.H), "alpha")
    beta = _ids(_field(doc, "beta"), len(S.V), "beta")
    if len(alpha) != len(S.H) or len(beta) != len(T.V):
        raise DocumentError("alpha maps source horizontal arrows, beta maps target vertical arrows")
    return MatchedPairMorphism(S, T, alpha, beta)


def morphism_from_json(doc: dict) -> MatchedPairMorphism:
    return _morphism_from_parts(pair_from_json(_field(doc, "source", dict)),
                                pair_from_json(_field(doc, "target", dict)), doc)


# -------------------------------------------------------- representations

def _rep_body(R: Representation) -> dict:
    return {
        "name": R.name,
        "elements": [label_to_json(e) for e in R.elements],
        "grading": list(R.grading),
        "action": sorted([x, e, v] for (x, e), v in R.action.items()),
    }


def rep_to_json(R: Representation) -> dict:
    doc = {"kind": "representation", "pair": pair_to_json(R.pair)}
    doc.update(_rep_body(R))
    return doc


def _rep_from_parts(M: MatchedPair, doc: dict) -> Representation:
    elements = tuple(label_from_json(e) for e in _field(doc, "elements"))
    n = len(elements)
    if len(set(map(repr, elements))) != n:
        raise DocumentError("element labels must be unique")
    grading = _ids(_field(doc, "grading"), len(M.V), "grading")
    if len(grading) != n:
        raise DocumentError("grading needs one entry per element")
    action = {}
    for t in _field(doc, "action"):
        if not isinstance(t, list) or len(t) != 3:
            raise DocumentError("action entries are [horizontal id, element id, element id]")
        x = _ids(t[:1], len(M.H), "action")[0]
        e, v = _ids(t[1:], n, "action")
        if (x, e) in action:
            raise DocumentError(f"action defined twice at {t[:2]}")
        action[(x, e)] = v
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name must be a string")
    p = tuple(M.V.src[g] for g in grading)
    q = tuple(M.V.end[g] for g in grading)
    return Representation(M, elements, p, q, grading, action, name)


def rep_from_json(doc: dict) -> Representation:
    return _rep_from_parts(pair_from_json(_field(doc, "pair", dict)), doc)


# ---------------------------------------------------------- rotation pairs

def rotation_pair_to_json(M: MatchedPair, pair: RotationPair) -> dict:
    return {"kind": "rotation_pair", "pair": pair_to_json(M), "xi": list(pair.xi), "eta": list(pair.eta)}


def _rotation_from_parts(M: MatchedPair, doc: dict) -> RotationPair:
    xi = _ids(_field(doc, "xi"), len(M.H), "xi")
    eta = _ids(_field(doc, "eta"), len(M.H), "eta")
    if len(xi) != len(M.V) or len(eta) != len(M.V):
        raise DocumentError("xi and eta map every vertical arrow to a horizontal one")
    return RotationPair(xi, eta)


def rotation_pair_from_json(doc: dict) -> tuple[MatchedPair, RotationPair]:
    M = pair_from_json(_field(doc, "pair", dict))
    return M, _rotation_from_parts(M, doc)


# -------------------------------------------------------------- workspace

@dataclass
class Workspace:
    """Named structures; pairs refer to groupoids and everything else to pairs by name."""
    groupoids: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    representations: dict = field(default_factory=dict)
    rotation_pairs: dict = field(default_factory=dict)   # name -> (pair name, RotationPair)

    def _groupoid_name(self, G: FiniteGroupoid, hint: str) -> str:
        for name, K in self.groupoids.items():
            if K is G:
                return name
        name = hint
        while name in self.groupoids:
            name += "'"
        self.groupoids[name] = G
        return name

    def pair_name(self, M: MatchedPair) -> str:
        for name, K in self.pairs.items():
            if K is M:
                return name
        raise KeyError("matched pair is not registered in this workspace")

    def add_pair(self, name: str, M: MatchedPair) -> None:
        if name in self.pairs:
            raise KeyError(f"pair {name!r} already exists")
        self._groupoid_name(M.V, f"{name}.V")
        self._groupoid_name(M.H, f"{name}.H")
        self.pairs[name] = M


def workspace_to_json(ws: Workspace) -> dict:
    gname = {id(G): name for name, G in ws.groupoids.items()}

    def pair_doc(M):
        if id(M.V) not in gname or id(M.H) not in gname:
            raise KeyError("a pair uses an unregistered groupoid")
        d = {"vertical": gname[id(M.V)], "horizontal": gname[id(M.H)]}
        d.update(_pair_body(M))
        return d

    def strip(doc):
        return {k: v for k, v in doc.items() if k != "kind"}

    return {
        "kind": "workspace",
        "groupoids": {n: strip(groupoid_to_json(G)) for n, G in ws.groupoids.items()},
        "pairs": {n: pair_doc(M) for n, M in ws.pairs.items()},
        "morphisms": {n: {"source": ws.pair_name(m.source), "target": ws.pair_name(m.target),
                          "alpha": list(m.alpha), "beta": list(m.beta)} for n, m in ws.morphisms.items()},
        "representations": {n: dict(_rep_body(R), pair=ws.pair_name(R.pair))
                            for n, R in ws.representations.items()},
        "rotation_pairs": {n: {"pair": pn, "xi": list(p.xi), "eta": list(p.eta)}
                           for n, (pn, p) in ws.rotation_pairs.items()},
    }


def workspace_from_json(doc: dict) -> Workspace:
    ws = Workspace()

    def section(key):
        value = doc.get(key, {})
        if not isinstance(value, dict) or not all(isinstance(v, dict) for v in value.values()):
            raise DocumentError(f"{key} must map names to objects")
        return value

    def ref(table, name, what):
        if not isinstance(name, str) or name not in table:
            raise DocumentError(f"unknown {what} {name!r}")
        return table[name]

    for n, g in section("groupoids").items():
        ws.groupoids[n] = groupoid_from_json(g)
    for n, p in section("pairs").items():
        V = ref(ws.groupoids, p.get("vertical"), "groupoid")
        H = ref(ws.groupoids, p.get("horizontal"), "groupoid")
        ws.pairs[n] = _pair_from_parts(V, H, p)
    for n, m in section("morphisms").items():
        ws.morphisms[n] = _morphism_from_parts(ref(ws.pairs, m.get("source"), "pair"),
                                               ref(ws.pairs, m.get("target"), "pair"), m)
    for n, r in section("representations").items():
        ws.representations[n] = _rep_from_parts(ref(ws.pairs, r.get("pair"), "pair"), r)
    for n, r in section("rotation_pairs").items():
        pn = r.get("pair")
        ws.rotation_pairs[n] = (pn, _rotation_from_parts(ref(ws.pairs, pn, "pair"), r))
    return ws


# ---------------------------------------------------------------- generic

def to_json(obj: Any, pair: MatchedPair | None = None) -> dict:
    if isinstance(obj, FiniteGroupoid):
        return groupoid_to_json(obj)
    if isinstance(obj, MatchedPair):
        return pair_to_json(obj)
    if isinstance(obj, MatchedPairMorphism):
        return morphism_to_json(obj)
    if isinstance(obj, Representation):
        return rep_to_json(obj)
    if isinstance(obj, RotationPair):
        if pair is None:
            raise ValueError("a rotation pair document needs its matched pair")
        return rotation_pair_to_json(pair, obj)
    if isinstance(obj, Workspace):
        return workspace_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(doc: dict):
    """Inverse of :func:`to_json`; rotation pairs come back as ``(pair, RotationPair)``."""
    kind = doc.get("kind")
    loader = {
        "groupoid": groupoid_from_json,
        "matched_pair": pair_from_json,
        "morphism": morphism_from_json,
        "representation": rep_from_json,
        "rotation_pair": rotation_pair_from_json,
        "workspace": workspace_from_json,
    }.get(kind)
    if loader is None:
        raise DocumentError(f"unknown kind {kind!r}")
    try:
        return loader(doc)
    except (TypeError, IndexError, KeyError) as exc:
        raise DocumentError(f"malformed {kind} document: {exc!r}") from exc


def loads(text: str):
    return from_json(parse(text))


def save(obj: Any, path: str, pair: MatchedPair | None = None, pretty: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(to_json(obj, pair), pretty))


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
