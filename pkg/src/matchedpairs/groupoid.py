"""Finite groupoids stored as dense tables.

Objects and arrows are dense integer ids with side tables of labels. The
composition table ``comp[f][g]`` holds the id of ``fg`` (written left to
right: first ``f``, then ``g``) or ``-1`` when ``end(f) != src(g)``.

Objects and identity arrows are kept distinct; ``ident[P]`` links them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from ._search import Conflict, search_maps
from .report import ValidationReport

UNDEFINED = -1


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    objects: tuple
    arrows: tuple
    src: tuple
    end: tuple
    comp: tuple
    ident: tuple
    inv: tuple

    def __post_init__(self):
        aidx = {a: i for i, a in enumerate(self.arrows)}
        oidx = {o: i for i, o in enumerate(self.objects)}
        if len(aidx) != len(self.arrows):
            raise ValueError("arrow labels must be unique")
        if len(oidx) != len(self.objects):
            raise ValueError("object labels must be unique")
        object.__setattr__(self, "_aidx", aidx)
        object.__setattr__(self, "_oidx", oidx)
        homs: dict = {}
        for a in range(len(self.arrows)):
            homs.setdefault((self.src[a], self.end[a]), []).append(a)
        object.__setattr__(self, "_homs", {k: tuple(v) for k, v in homs.items()})

    def __len__(self) -> int:
        return len(self.arrows)

    def __repr__(self) -> str:
        return f"FiniteGroupoid({len(self.objects)} objects, {len(self.arrows)} arrows)"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def mul(self, f: int, g: int) -> int | None:
        r = self.comp[f][g]
        return None if r == UNDEFINED else r

    def product(self, *arrows: int) -> int:
        """Compose a path of arrows; raises if some step is not composable."""
        acc = arrows[0]
        for g in arrows[1:]:
            r = self.comp[acc][g]
            if r == UNDEFINED:
                raise ValueError(f"arrows {self.arrows[acc]!r} and {self.arrows[g]!r} are not composable")
            acc = r
        return acc

    def arrow(self, label: Hashable) -> int:
        return self._aidx[label]

    def obj(self, label: Hashable) -> int:
        return self._oidx[label]

    def has_arrow(self, label: Hashable) -> bool:
        return label in self._aidx

    def hom(self, p: int, q: int) -> tuple:
        return self._homs.get((p, q), ())

    def is_identity(self, a: int) -> bool:
        return self.src[a] == self.end[a] and self.ident[self.src[a]] == a

    def identity_of(self, label: Hashable) -> int:
        return self.ident[self._oidx[label]]


def _infer_units(n_obj: int, src, end, comp) -> tuple[tuple, tuple]:
    n = len(src)
    ident = []
    for p in range(n_obj):
        cands = [a for a in range(n) if src[a] == p and end[a] == p and comp[a][a] == a]
        ident.append(cands[0] if cands else UNDEFINED)
    inv = []
    for a in range(n):
        found = UNDEFINED
        s, e = src[a], end[a]
        if ident[s] != UNDEFINED and ident[e] != UNDEFINED:
            for b in range(n):
                if comp[a][b] == ident[s] and comp[b][a] == ident[e]:
                    found = b
                    break
        inv.append(found)
    return tuple(ident), tuple(inv)


def from_tables(objects: Sequence, arrows: Sequence, src: Sequence[int], end: Sequence[int],
                comp: Sequence[Sequence[int]]) -> FiniteGroupoid:
    """Build a groupoid from id tables, inferring identities and inverses."""
    comp_t = tuple(tuple(row) for row in comp)
    ident, inv = _infer_units(len(objects), src, end, comp_t)
    return FiniteGroupoid(tuple(objects), tuple(arrows), tuple(src), tuple(end), comp_t, ident, inv)


def from_rule(objects: Sequence, arrows: Sequence, src: Callable, end: Callable,
              mul: Callable) -> FiniteGroupoid:
    """Build a groupoid from labels: ``src``/``end`` map arrow labels to object
    labels and ``mul(f, g)`` returns the label of ``fg`` for composable pairs."""
    objects = tuple(objects)
    arrows = tuple(arrows)
    oidx = {o: i for i, o in enumerate(objects)}
    aidx = {a: i for i, a in enumerate(arrows)}
    s = [oidx[src(a)] for a in arrows]
    e = [oidx[end(a)] for a in arrows]
    n = len(arrows)
    comp = [[UNDEFINED] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if e[i] == s[j]:
                comp[i][j] = aidx[mul(arrows[i], arrows[j])]
    return from_tables(objects, arrows, s, e, comp)


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    rep = ValidationReport("groupoid")
    n = len(G)
    lab = G.arrows
    for f in range(n):
        for g in range(n):
            fg = G.comp[f][g]
            composable = G.end[f] == G.src[g]
            if not rep.check((fg != UNDEFINED) == composable, "domain", (lab[f], lab[g])):
                continue
            if fg == UNDEFINED:
                continue
            if not (0 <= fg < n):
                rep.add("range", (lab[f], lab[g]))
                continue
            rep.check(G.src[fg] == G.src[f], "source", (lab[f], lab[g]))
            rep.check(G.end[fg] == G.end[g], "end", (lab[f], lab[g]))
    if not rep.ok:
        return rep
    for f in range(n):
        for g in range(n):
            fg = G.comp[f][g]
            if fg == UNDEFINED:
                continue
            for h in range(n):
                gh = G.comp[g][h]
                if gh == UNDEFINED:
                    continue
                rep.check(G.comp[fg][h] == G.comp[f][gh], "associativity", (lab[f], lab[g], lab[h]))
    for p in range(G.n_objects):
        i = G.ident[p]
        if not rep.check(i != UNDEFINED and G.src[i] == p and G.end[i] == p,
                         "identity", (G.objects[p],), "no identity arrow"):
            continue
        for f in range(n):
            if G.src[f] == p:
                rep.check(G.comp[i][f] == f, "unit", (lab[f],), "left unit")
            if G.end[f] == p:
                rep.check(G.comp[f][i] == f, "unit", (lab[f],), "right unit")
    if rep.ok:
        for f in range(n):
            g = G.inv[f]
            ok = (g != UNDEFINED and G.comp[f][g] == G.ident[G.src[f]]
                  and G.comp[g][f] == G.ident[G.end[f]])
            rep.check(ok, "inverse", (lab[f],))
    return rep


def _nonempty(P: Iterable) -> tuple:
    P = tuple(P)
    if not P:
        raise ValueError("object set must be nonempty")
    return P


def discrete(P: Iterable) -> FiniteGroupoid:
    """Identities only; the arrow at P is labelled P."""
    P = _nonempty(P)
    return from_rule(P, P, lambda a: a, lambda a: a, lambda f, g: f)


def coarse(P: Iterable) -> FiniteGroupoid:
    """One arrow (P, Q) for every ordered pair of objects."""
    P = _nonempty(P)
    arrows = [(p, q) for p in P for q in P]
    return from_rule(P, arrows, lambda a: a[0], lambda a: a[1], lambda f, g: (f[0], g[1]))


def opposite(G: FiniteGroupoid) -> FiniteGroupoid:
    n = len(G)
    comp = tuple(tuple(G.comp[g][f] for g in range(n)) for f in range(n))
    return FiniteGroupoid(G.objects, G.arrows, G.end, G.src, comp, G.ident, G.inv)


def group_groupoid(elements: Sequence, mul: Callable, obj: Hashable = "*") -> FiniteGroupoid:
    """A finite group viewed as a one-object groupoid."""
    return from_rule((obj,), elements, lambda a: obj, lambda a: obj, mul)


def perm_mul(p: tuple, q: tuple) -> tuple:
    """Product of permutations, first ``p`` then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


def symmetric_group(n: int) -> FiniteGroupoid:
    return group_groupoid(list(itertools.permutations(range(n))), perm_mul)


def cyclic_group(n: int) -> FiniteGroupoid:
    return group_groupoid(list(range(n)), lambda a, b: (a + b) % n)


def subgroupoid(G: FiniteGroupoid, arrows: Iterable[int]) -> FiniteGroupoid:
    """Wide subgroupoid on the given arrow ids (same objects, same labels)."""
    keep = sorted(set(arrows))
    pos = {a: i for i, a in enumerate(keep)}
    comp = []
    for f in keep:
        row = []
        for g in keep:
            fg = G.comp[f][g]
            if fg != UNDEFINED and fg not in pos:
                raise ValueError(f"arrow set not closed under composition at {G.arrows[f]!r}, {G.arrows[g]!r}")
            row.append(UNDEFINED if fg == UNDEFINED else pos[fg])
        comp.append(row)
    return from_tables(G.objects, [G.arrows[a] for a in keep], [G.src[a] for a in keep],
                       [G.end[a] for a in keep], comp)


def generated_subgroupoid(G: FiniteGroupoid, generators: Iterable[int]) -> FiniteGroupoid:
    found = set(G.ident) | set(generators)
    frontier = list(found)
    while frontier:
        new = []
        for f in frontier:
            for g in list(found):
                for a, b in ((f, g), (g, f)):
                    r = G.comp[a][b]
                    if r != UNDEFINED and r not in found:
                        found.add(r)
                        new.append(r)
            if G.inv[f] not in found:
                found.add(G.inv[f])
                new.append(G.inv[f])
        frontier = new
    return subgroupoid(G, found)


def isotropy_bundle(G: FiniteGroupoid) -> FiniteGroupoid:
    return subgroupoid(G, [a for a in range(len(G)) if G.src[a] == G.end[a]])


def is_group_bundle(G: FiniteGroupoid) -> bool:
    return all(s == e for s, e in zip(G.src, G.end))


def restricted_product(G: FiniteGroupoid, K: FiniteGroupoid) -> FiniteGroupoid:
    """Pairs of arrows with equal source and equal end, composed componentwise."""
    if G.objects != K.objects:
        raise ValueError("restricted product needs groupoids over the same base")
    pairs = [(g, k) for g in range(len(G)) for k in range(len(K))
             if G.src[g] == K.src[k] and G.end[g] == K.end[k]]
    pos = {pk: i for i, pk in enumerate(pairs)}
    n = len(pairs)
    comp = [[UNDEFINED] * n for _ in range(n)]
    for i, (g1, k1) in enumerate(pairs):
        for j, (g2, k2) in enumerate(pairs):
            if G.end[g1] == G.src[g2]:
                comp[i][j] = pos[(G.comp[g1][g2], K.comp[k1][k2])]
    return from_tables(G.objects, [(G.arrows[g], K.arrows[k]) for g, k in pairs],
                       [G.src[g] for g, _ in pairs], [G.end[g] for g, _ in pairs], comp)


def relabel_groupoid(G: FiniteGroupoid, object_label: Callable, arrow_label: Callable) -> FiniteGroupoid:
    return FiniteGroupoid(tuple(object_label(o) for o in G.objects),
                          tuple(arrow_label(a) for a in G.arrows),
                          G.src, G.end, G.comp, G.ident, G.inv)


def groupoids_equal(G: FiniteGroupoid, K: FiniteGroupoid) -> bool:
    """Equality of all tables after matching objects and arrows by label."""
    if set(G.objects) != set(K.objects) or set(G.arrows) != set(K.arrows):
        return False
    if len(G.objects) != len(K.objects) or len(G) != len(K):
        return False
    amap = [K.arrow(a) for a in G.arrows]
    omap = [K.obj(o) for o in G.objects]
    for a in range(len(G)):
        if omap[G.src[a]] != K.src[amap[a]] or omap[G.end[a]] != K.end[amap[a]]:
            return False
        for b in range(len(G)):
            ab = G.comp[a][b]
            kb = K.comp[amap[a]][amap[b]]
            if (ab == UNDEFINED) != (kb == UNDEFINED):
                return False
            if ab != UNDEFINED and amap[ab] != kb:
                return False
    return True


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class GroupoidMorphism:
    source: FiniteGroupoid
    target: FiniteGroupoid
    amap: tuple

    def __call__(self, a: int) -> int:
        return self.amap[a]

    def then(self, other: "GroupoidMorphism") -> "GroupoidMorphism":
        """First ``self``, then ``other``."""
        return GroupoidMorphism(self.source, other.target, tuple(other.amap[a] for a in self.amap))

    def object_map(self) -> tuple:
        out = []
        for p in range(self.source.n_objects):
            out.append(self.target.src[self.amap[self.source.ident[p]]])
        return tuple(out)

    def is_over_base(self) -> bool:
        return (self.source.objects == self.target.objects
                and all(self.amap[self.source.ident[p]] == self.target.ident[p]
                        for p in range(self.source.n_objects)))


def morphism_from_labels(G: FiniteGroupoid, K: FiniteGroupoid, fn: Callable) -> GroupoidMorphism:
    return GroupoidMorphism(G, K, tuple(K.arrow(fn(a)) for a in G.arrows))


def identity_morphism(G: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(G, G, tuple(range(len(G))))


def validate_groupoid_morphism(m: GroupoidMorphism, over_base: bool = True) -> ValidationReport:
    rep = ValidationReport("groupoid morphism")
    G, K = m.source, m.target
    if len(m.amap) != len(G) or any(not (0 <= v < len(K)) for v in m.amap):
        rep.add("shape", (), "arrow map is not total")
        return rep
    if over_base:
        if G.objects != K.objects:
            rep.add("base", (), "source and target bases differ")
            return rep
        for p in range(G.n_objects):
            rep.check(m.amap[G.ident[p]] == K.ident[p], "over-base", (G.objects[p],))
    for f in range(len(G)):
        for g in range(len(G)):
            fg = G.comp[f][g]
            if fg == UNDEFINED:
                continue
            rep.check(K.comp[m.amap[f]][m.amap[g]] == m.amap[fg], "multiplicative",
                      (G.arrows[f], G.arrows[g]))
    return rep


def kernel(alpha: GroupoidMorphism) -> FiniteGroupoid:
    """Arrows sent to identities; a group bundle when ``alpha`` is over the base."""
    if not alpha.is_over_base():
        raise ValueError("kernel is defined for morphisms over the base")
    K = alpha.target
    return subgroupoid(alpha.source, [a for a in range(len(alpha.source)) if K.is_identity(alpha.amap[a])])


def enumerate_groupoid_morphisms(G: FiniteGroupoid, K: FiniteGroupoid, object_map: Sequence[int] | None = None,
                                 bijective: bool = False, max_nodes: int | None = None):
    """Yield arrow maps (as tuples) of all morphisms G -> K inducing ``object_map``.

    With ``object_map=None`` both groupoids must share their base and the
    morphisms are the ones over it.
    """
    if object_map is None:
        if G.objects != K.objects:
            raise ValueError("morphisms over the base need equal bases")
        object_map = list(range(G.n_objects))
    n = len(G)

    def candidates(a, assign):
        cands = K.hom(object_map[G.src[a]], object_map[G.end[a]])
        if bijective:
            used = {v for v in assign if v is not None}
            cands = [c for c in cands if c not in used]
        return cands

    def propagate(assign, a, v):
        if K.src[v] != object_map[G.src[a]] or K.end[v] != object_map[G.end[a]]:
            raise Conflict
        forced = [(G.inv[a], K.inv[v])]
        for b in range(n):
            w = assign[b]
            if w is None:
                continue
            ab = G.comp[a][b]
            if ab != UNDEFINED:
                kw = K.comp[v][w]
                if kw == UNDEFINED:
                    raise Conflict
                forced.append((ab, kw))
            ba = G.comp[b][a]
            if ba != UNDEFINED:
                kw = K.comp[w][v]
                if kw == UNDEFINED:
                    raise Conflict
                forced.append((ba, kw))
        return forced

    accept = (lambda assign: len(set(assign)) == len(K)) if bijective else None
    if bijective and len(G) != len(K):
        return
    # identities first: they are forced and propagate cheaply
    order = list(G.ident) + [a for a in range(n) if a not in set(G.ident)]
    yield from search_maps(n, candidates, propagate, accept, max_nodes, order)


def find_groupoid_isomorphism(G: FiniteGroupoid, K: FiniteGroupoid, object_map: Sequence[int] | None = None):
    for amap in enumerate_groupoid_morphisms(G, K, object_map, bijective=True):
        return amap
    return None


def projections(G: FiniteGroupoid, K: FiniteGroupoid, GK: FiniteGroupoid | None = None):
    GK = restricted_product(G, K) if GK is None else GK
    p1 = GroupoidMorphism(GK, G, tuple(G.arrow(a[0]) for a in GK.arrows))
    p2 = GroupoidMorphism(GK, K, tuple(K.arrow(a[1]) for a in GK.arrows))
    return p1, p2


def mediating_morphism(a: GroupoidMorphism, b: GroupoidMorphism, GK: FiniteGroupoid | None = None) -> GroupoidMorphism:
    """The morphism ``f -> (a(f), b(f))`` into the restricted product."""
    GK = restricted_product(a.target, b.target) if GK is None else GK
    G, K = a.target, b.target
    return GroupoidMorphism(a.source, GK, tuple(
        GK.arrow((G.arrows[a.amap[f]], K.arrows[b.amap[f]])) for f in range(len(a.source))))


def check_restricted_product_universal(F: FiniteGroupoid, G: FiniteGroupoid, K: FiniteGroupoid) -> ValidationReport:
    """For every pair of morphisms F->G, F->K over the base, check that exactly
    one morphism F->G x_e K has them as components."""
    rep = ValidationReport("restricted product universal property")
    GK = restricted_product(G, K)
    p1, p2 = projections(G, K, GK)
    into_GK = [GroupoidMorphism(F, GK, m) for m in enumerate_groupoid_morphisms(F, GK)]
    for ma in enumerate_groupoid_morphisms(F, G):
        for mb in enumerate_groupoid_morphisms(F, K):
            a = GroupoidMorphism(F, G, ma)
            b = GroupoidMorphism(F, K, mb)
            med = mediating_morphism(a, b, GK)
            rep.check(validate_groupoid_morphism(med).ok, "mediating-morphism", (ma, mb))
            rep.check(med.then(p1).amap == ma and med.then(p2).amap == mb, "factorization", (ma, mb))
            hits = [m for m in into_GK if m.then(p1).amap == ma and m.then(p2).amap == mb]
            rep.check(len(hits) == 1, "uniqueness", (ma, mb), f"{len(hits)} candidates")
    return rep
