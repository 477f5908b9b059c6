"""Matched pairs of groupoids and their cells.

A matched pair has a vertical groupoid ``V`` (source ``t``, end ``b``) and a
horizontal groupoid ``H`` (source ``l``, end ``r``) over one base. A cell is a
pair ``(x, g)`` with ``r(x) == t(g)``, drawn as a square::

        x
     P ----> Q
     |       |
  x▷g|       | g
     v       v
     R ----> S
       x◁g

Both actions are stored as tables indexed by the cell list.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, NamedTuple, Sequence

from .groupoid import (UNDEFINED, FiniteGroupoid, coarse, discrete, enumerate_groupoid_morphisms, from_rule,
                       groupoids_equal, is_group_bundle, isotropy_bundle, opposite, relabel_groupoid,
                       subgroupoid, validate_groupoid)
from .report import ValidationReport


class Cell(NamedTuple):
    x: int  # horizontal arrow on top
    g: int  # vertical arrow on the right


class FactorizationError(ValueError):
    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class MatchedPair:
    V: FiniteGroupoid
    H: FiniteGroupoid
    cells: tuple
    left_table: tuple
    right_table: tuple

    def __post_init__(self):
        if self.V.objects != self.H.objects:
            raise ValueError("the two groupoids of a matched pair must share their base")
        object.__setattr__(self, "_cidx", {c: i for i, c in enumerate(self.cells)})

    def __repr__(self) -> str:
        return (f"MatchedPair(|P|={self.V.n_objects}, |V|={len(self.V)}, "
                f"|H|={len(self.H)}, cells={len(self.cells)})")

    @property
    def base(self) -> tuple:
        return self.V.objects

    def t(self, g: int) -> int:
        return self.V.src[g]

    def b(self, g: int) -> int:
        return self.V.end[g]

    def l(self, x: int) -> int:
        return self.H.src[x]

    def r(self, x: int) -> int:
        return self.H.end[x]

    def cell_index(self, x: int, g: int) -> int | None:
        return self._cidx.get((x, g))

    def left(self, x: int, g: int) -> int:
        """``x ▷ g``, an arrow of V."""
        return self.left_table[self._cidx[(x, g)]]

    def right(self, x: int, g: int) -> int:
        """``x ◁ g``, an arrow of H."""
        return self.right_table[self._cidx[(x, g)]]

    def cell_labels(self, i: int) -> tuple:
        x, g = self.cells[i]
        return (self.H.arrows[x], self.V.arrows[g])


def build_pair(V: FiniteGroupoid, H: FiniteGroupoid, left: Callable[[int, int], int],
               right: Callable[[int, int], int]) -> MatchedPair:
    """Tabulate the actions given as functions on arrow ids."""
    cells = tuple(Cell(x, g) for x in range(len(H)) for g in range(len(V)) if H.end[x] == V.src[g])
    return MatchedPair(V, H, cells, tuple(left(x, g) for x, g in cells),
                       tuple(right(x, g) for x, g in cells))


def build_pair_from_labels(V: FiniteGroupoid, H: FiniteGroupoid, left: Callable, right: Callable) -> MatchedPair:
    """Like :func:`build_pair` with the actions given on labels."""
    return build_pair(V, H,
                      lambda x, g: V.arrow(left(H.arrows[x], V.arrows[g])),
                      lambda x, g: H.arrow(right(H.arrows[x], V.arrows[g])))


# ------------------------------------------------------------------ checks

def validate_matched_pair(M: MatchedPair) -> ValidationReport:
    rep = ValidationReport("matched pair")
    V, H = M.V, M.H
    rep.extend(validate_groupoid(V), "vertical:")
    rep.extend(validate_groupoid(H), "horizontal:")
    if not rep.ok:
        return rep
    nc = len(M.cells)
    if len(M.left_table) != nc or len(M.right_table) != nc:
        rep.add("table-shape", (), "action tables do not match the cell list")
        return rep
    for (x, g), lg, rx in zip(M.cells, M.left_table, M.right_table):
        if not (0 <= lg < len(V)) or not (0 <= rx < len(H)):
            rep.add("table-range", (H.arrows[x], V.arrows[g]))
    if not rep.ok:
        return rep
    hl, vl = H.arrows, V.arrows
    for (x, g), lg, rx in zip(M.cells, M.left_table, M.right_table):
        w = (hl[x], vl[g])
        rep.check(V.src[lg] == H.src[x], "left-action-source", w)
        rep.check(H.end[rx] == V.end[g], "right-action-end", w)
        rep.check(V.end[lg] == H.src[rx], "corner", w)
    if not rep.ok:
        return rep
    for g in range(len(V)):
        rep.check(M.left(H.ident[V.src[g]], g) == g, "left-action-unit", (vl[g],))
    for x in range(len(H)):
        rep.check(M.right(x, V.ident[H.end[x]]) == x, "right-action-unit", (hl[x],))
    for x, g in M.cells:
        for y in range(len(H)):
            xy = H.comp[y][x]
            if xy != UNDEFINED:
                # y ▷ (x ▷ g) = yx ▷ g
                rep.check(M.left(y, M.left(x, g)) == M.left(xy, g), "left-action-composition",
                          (hl[y], hl[x], vl[g]))
        for f in range(len(V)):
            gf = V.comp[g][f]
            if gf == UNDEFINED:
                continue
            xg = M.right(x, g)
            rep.check(M.right(xg, f) == M.right(x, gf), "right-action-composition", (hl[x], vl[g], vl[f]))
            # x ▷ gf = (x ▷ g)((x ◁ g) ▷ f)
            rhs = V.comp[M.left(x, g)][M.left(xg, f)]
            rep.check(M.left(x, gf) == rhs, "left-multiplicative", (hl[x], vl[g], vl[f]))
        for y in range(len(H)):
            yx = H.comp[y][x]
            if yx == UNDEFINED:
                continue
            # yx ◁ g = (y ◁ (x ▷ g))(x ◁ g)
            rhs = H.comp[M.right(y, M.left(x, g))][M.right(x, g)]
            rep.check(M.right(yx, g) == rhs, "right-multiplicative", (hl[y], hl[x], vl[g]))
    return rep


def check_derived_identities(M: MatchedPair) -> ValidationReport:
    """The eight consequences of the axioms involving units and inverses."""
    rep = ValidationReport("derived identities")
    V, H = M.V, M.H
    vi, hi = V.inv, H.inv
    hl, vl = H.arrows, V.arrows
    for x in range(len(H)):
        rep.check(M.left(x, V.ident[H.end[x]]) == V.ident[H.src[x]], "left-unit-arrow", (hl[x],))
    for g in range(len(V)):
        rep.check(M.right(H.ident[V.src[g]], g) == H.ident[V.end[g]], "right-unit-arrow", (vl[g],))
    for x, g in M.cells:
        w = (hl[x], vl[g])
        lg, rx = M.left(x, g), M.right(x, g)
        rep.check(vi[lg] == M.left(rx, vi[g]), "left-inverse", w)
        rep.check(hi[rx] == M.right(hi[x], lg), "right-inverse", w)
        rep.check(M.left(hi[rx], vi[lg]) == vi[g], "inverse-cell-left", w)
        rep.check(M.right(hi[rx], vi[lg]) == hi[x], "inverse-cell-right", w)
        # g⁻¹ (x⁻¹ ▷ f) = (x ◁ g)⁻¹ ▷ ((x ▷ g)⁻¹ f)   for t(f) = l(x)
        for f in range(len(V)):
            if V.src[f] != H.src[x]:
                continue
            lhs = V.comp[vi[g]][M.left(hi[x], f)]
            rhs = M.left(hi[rx], V.comp[vi[lg]][f])
            rep.check(lhs == rhs, "left-mixed", (hl[x], vl[g], vl[f]))
        # (y ◁ g⁻¹) x⁻¹ = (y (x ◁ g)⁻¹) ◁ (x ▷ g)⁻¹   for r(y) = b(g)
        for y in range(len(H)):
            if H.end[y] != V.end[g]:
                continue
            lhs = H.comp[M.right(y, vi[g])][hi[x]]
            rhs = M.right(H.comp[y][hi[rx]], vi[lg])
            rep.check(lhs == rhs, "right-mixed", (hl[x], vl[g], hl[y]))
    return rep


# ------------------------------------------------------------------ cells

def cell_left(M: MatchedPair, A: Cell) -> int:
    return M.left(*A)


def cell_bottom(M: MatchedPair, A: Cell) -> int:
    return M.right(*A)


def cell_horizontal_compose(M: MatchedPair, A: Cell, B: Cell) -> Cell | None:
    """``A`` to the left of ``B``; defined when the right edge of A is the left edge of B."""
    (x, g), (y, f) = A, B
    if g != M.left(y, f):
        return None
    return Cell(M.H.comp[x][y], f)


def cell_vertical_compose(M: MatchedPair, A: Cell, C: Cell) -> Cell | None:
    """``A`` on top of ``C``; defined when the bottom of A is the top of C."""
    (x, g1), (z, g2) = A, C
    if z != M.right(x, g1):
        return None
    return Cell(x, M.V.comp[g1][g2])


def cell_inverse(M: MatchedPair, A: Cell) -> Cell:
    x, g = A
    return Cell(M.H.inv[M.right(x, g)], M.V.inv[M.left(x, g)])


def cell_transpose(M: MatchedPair, A: Cell) -> Cell:
    """The same square read as a cell of :func:`dual`."""
    return Cell(M.left(*A), M.right(*A))


def identity_cell_h(M: MatchedPair, g: int) -> Cell:
    """Cell with identity top and bottom and ``g`` on both sides."""
    return Cell(M.H.ident[M.V.src[g]], g)


def identity_cell_v(M: MatchedPair, x: int) -> Cell:
    """Cell with identity sides and ``x`` on top and bottom."""
    return Cell(x, M.V.ident[M.H.end[x]])


# ------------------------------------------------------------ constructions

def dual(M: MatchedPair) -> MatchedPair:
    """Swap the roles: H becomes vertical and V horizontal."""
    V, H = M.V, M.H
    return build_pair(
        H, V,
        lambda f, y: H.inv[M.right(H.inv[y], V.inv[f])],
        lambda f, y: V.inv[M.left(H.inv[y], V.inv[f])],
    )


def opposite_pair(M: MatchedPair) -> MatchedPair:
    """Pair ``(V, H^op)``: the cell ``(x, g)`` becomes ``(x⁻¹, g)`` with bottom ``(x ◁ g)⁻¹``."""
    V, H = M.V, M.H
    return build_pair(V, opposite(H),
                      lambda y, g: M.left(H.inv[y], g),
                      lambda y, g: H.inv[M.right(H.inv[y], g)])


def coopposite_pair(M: MatchedPair) -> MatchedPair:
    """Pair ``(V^op, H)`` obtained by reversing the vertical arrows."""
    V, H = M.V, M.H
    return build_pair(opposite(V), H,
                      lambda x, k: V.inv[M.left(x, V.inv[k])],
                      lambda x, k: M.right(x, V.inv[k]))


def make_initial(P) -> MatchedPair:
    """Vertical coarse groupoid, horizontal discrete; the initial object."""
    V, H = coarse(P), discrete(P)
    return build_pair_from_labels(V, H, lambda p, pq: pq, lambda p, pq: pq[1])


def make_terminal(P) -> MatchedPair:
    """Vertical discrete groupoid, horizontal coarse; the terminal object."""
    V, H = discrete(P), coarse(P)
    return build_pair_from_labels(V, H, lambda pq, q: pq[0], lambda pq, q: pq)


def make_MXY(X, Y) -> MatchedPair:
    """Base X×Y, horizontal arrows (x, x', y), vertical arrows (x, y, y')."""
    X, Y = tuple(X), tuple(Y)
    if not X or not Y:
        raise ValueError("both factors must be nonempty")
    P = [(x, y) for x in X for y in Y]
    H_arrows = [(x, x2, y) for x in X for x2 in X for y in Y]
    V_arrows = [(x, y, y2) for x in X for y in Y for y2 in Y]
    H = from_rule(P, H_arrows, lambda a: (a[0], a[2]), lambda a: (a[1], a[2]),
                  lambda f, g: (f[0], g[1], f[2]))
    V = from_rule(P, V_arrows, lambda a: (a[0], a[1]), lambda a: (a[0], a[2]),
                  lambda f, g: (f[0], f[1], g[2]))
    # top (x,x',y), right (x',y,y')  ->  left (x,y,y'), bottom (x,x',y')
    return build_pair_from_labels(V, H, lambda h, v: (h[0], v[1], v[2]), lambda h, v: (h[0], h[1], v[2]))


def make_semi(G: FiniteGroupoid, side: str = "vertical") -> MatchedPair:
    """``(G, discrete)`` for side ``"vertical"``, ``(discrete, G)`` for ``"horizontal"``."""
    D = discrete(G.objects)
    if side == "vertical":
        return build_pair(G, D, lambda x, f: f, lambda x, f: D.ident[G.end[f]])
    if side == "horizontal":
        return build_pair(D, G, lambda x, p: D.ident[G.src[x]], lambda x, p: x)
    raise ValueError("side must be 'vertical' or 'horizontal'")


def make_bundle_action(G: FiniteGroupoid, N: FiniteGroupoid, action: Callable, side: str = "right") -> MatchedPair:
    """Matched pair from an action of ``G`` on a group bundle ``N`` by automorphisms.

    side ``"right"``: pair ``(G, N)``, ``n ▷ g = g`` and ``action(n, g) = n ◁ g``
    (labels), an automorphism ``N(t g) -> N(b g)``.
    side ``"left"``: pair ``(N, G)``, ``action(x, n) = x ▷ n`` and ``x ◁ n = x``.
    """
    if not is_group_bundle(N):
        raise ValueError("N must be a group bundle")
    if G.objects != N.objects:
        raise ValueError("G and N must share their base")
    if side == "right":
        M = build_pair(G, N, lambda n, g: g, lambda n, g: N.arrow(action(N.arrows[n], G.arrows[g])))
        for g in range(len(G)):
            fiber = N.hom(G.src[g], G.src[g])
            for n in fiber:
                for m in fiber:
                    lhs = M.right(N.comp[n][m], g)
                    rhs = N.comp[M.right(n, g)][M.right(m, g)]
                    if lhs != rhs:
                        raise FactorizationError("action is not by automorphisms",
                                                 (N.arrows[n], N.arrows[m], G.arrows[g]))
    elif side == "left":
        M = build_pair(N, G, lambda x, n: N.arrow(action(G.arrows[x], N.arrows[n])), lambda x, n: x)
        for x in range(len(G)):
            fiber = N.hom(G.end[x], G.end[x])
            for n in fiber:
                for m in fiber:
                    lhs = M.left(x, N.comp[n][m])
                    rhs = N.comp[M.left(x, n)][M.left(x, m)]
                    if lhs != rhs:
                        raise FactorizationError("action is not by automorphisms",
                                                 (G.arrows[x], N.arrows[n], N.arrows[m]))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return M


def make_conjugation_pair(H: FiniteGroupoid) -> MatchedPair:
    """``(⊔H(P,P), H)`` with ``x ▷ n = x n x⁻¹`` and trivial right action."""
    N = isotropy_bundle(H)

    def conj(x, n):
        xi, ni = H.arrow(x), H.arrow(n)
        return H.arrows[H.product(xi, ni, H.inv[xi])]

    return make_bundle_action(H, N, conj, side="left")


def factor_tables(D: FiniteGroupoid, v_ids: Sequence[int], h_ids: Sequence[int]) -> dict:
    """Map each arrow of D to its unique decomposition ``f y`` (f in V, y in H).

    Raises :class:`FactorizationError` naming an arrow with zero or several
    decompositions.
    """
    found: dict = {a: [] for a in range(len(D))}
    for f in v_ids:
        for y in h_ids:
            fy = D.comp[f][y]
            if fy != UNDEFINED:
                found[fy].append((f, y))
    for a, decs in found.items():
        if len(decs) != 1:
            raise FactorizationError(f"arrow {D.arrows[a]!r} has {len(decs)} decompositions", D.arrows[a])
    return {a: decs[0] for a, decs in found.items()}


def pair_from_subgroupoids(D: FiniteGroupoid, v_ids: Sequence[int], h_ids: Sequence[int]) -> MatchedPair:
    """Matched pair of an exact factorization ``D = V H``: ``xg = (x ▷ g)(x ◁ g)``."""
    v_ids, h_ids = sorted(set(v_ids)), sorted(set(h_ids))
    dec = factor_tables(D, v_ids, h_ids)
    V, H = subgroupoid(D, v_ids), subgroupoid(D, h_ids)
    vpos = {a: i for i, a in enumerate(v_ids)}
    hpos = {a: i for i, a in enumerate(h_ids)}

    def both(x, g):
        f, y = dec[D.comp[h_ids[x]][v_ids[g]]]
        return vpos[f], hpos[y]

    return build_pair(V, H, lambda x, g: both(x, g)[0], lambda x, g: both(x, g)[1])


def make_group_pair(sigma: FiniteGroupoid, F: Sequence, G: Sequence) -> MatchedPair:
    """One-object matched pair ``(F, G)`` from an exact factorization ``Σ = F G``.

    ``F`` and ``G`` are given as arrow labels of ``sigma``.
    """
    if sigma.n_objects != 1:
        raise ValueError("sigma must be a one-object groupoid")
    return pair_from_subgroupoids(sigma, [sigma.arrow(a) for a in F], [sigma.arrow(a) for a in G])


# ----------------------------------------------------- equality and isomorphism

def relabel_pair(M: MatchedPair, object_label: Callable, v_label: Callable, h_label: Callable) -> MatchedPair:
    return MatchedPair(relabel_groupoid(M.V, object_label, v_label), relabel_groupoid(M.H, object_label, h_label),
                       M.cells, M.left_table, M.right_table)


def pairs_equal(M1: MatchedPair, M2: MatchedPair) -> bool:
    """Equality of every table, matching objects and arrows by label."""
    if not (groupoids_equal(M1.V, M2.V) and groupoids_equal(M1.H, M2.H)):
        return False
    if len(M1.cells) != len(M2.cells):
        return False
    for (x, g), lg, rx in zip(M1.cells, M1.left_table, M1.right_table):
        x2, g2 = M2.H.arrow(M1.H.arrows[x]), M2.V.arrow(M1.V.arrows[g])
        if M2.cell_index(x2, g2) is None:
            return False
        if M2.V.arrows[M2.left(x2, g2)] != M1.V.arrows[lg]:
            return False
        if M2.H.arrows[M2.right(x2, g2)] != M1.H.arrows[rx]:
            return False
    return True


@dataclass(frozen=True)
class PairIsomorphism:
    """Base bijection with covariant arrow bijections on both groupoids."""
    object_map: tuple
    vmap: tuple
    hmap: tuple


def check_pair_isomorphism(M1: MatchedPair, M2: MatchedPair, iso: PairIsomorphism) -> ValidationReport:
    rep = ValidationReport("matched pair isomorphism")
    om, vm, hm = iso.object_map, iso.vmap, iso.hmap
    for name, G, K, amap in (("vertical", M1.V, M2.V, vm), ("horizontal", M1.H, M2.H, hm)):
        if sorted(amap) != list(range(len(K))) or len(G) != len(K):
            rep.add(name + "-bijection", ())
            continue
        for a in range(len(G)):
            rep.check(K.src[amap[a]] == om[G.src[a]] and K.end[amap[a]] == om[G.end[a]],
                      name + "-endpoints", (G.arrows[a],))
            for c in range(len(G)):
                ac = G.comp[a][c]
                if ac != UNDEFINED:
                    rep.check(K.comp[amap[a]][amap[c]] == amap[ac], name + "-multiplicative",
                              (G.arrows[a], G.arrows[c]))
    if sorted(om) != list(range(len(M2.base))):
        rep.add("base-bijection", ())
    if not rep.ok:
        return rep
    for x, g in M1.cells:
        x2, g2 = hm[x], vm[g]
        if not rep.check(M2.cell_index(x2, g2) is not None, "cells", (M1.H.arrows[x], M1.V.arrows[g])):
            continue
        rep.check(M2.left(x2, g2) == vm[M1.left(x, g)], "left-action", (M1.H.arrows[x], M1.V.arrows[g]))
        rep.check(M2.right(x2, g2) == hm[M1.right(x, g)], "right-action", (M1.H.arrows[x], M1.V.arrows[g]))
    return rep


def iso_from_labels(M1: MatchedPair, M2: MatchedPair, object_label: Callable, v_label: Callable,
                    h_label: Callable) -> PairIsomorphism:
    """Build a candidate isomorphism from explicit label correspondences."""
    return PairIsomorphism(tuple(M2.V.obj(object_label(o)) for o in M1.base),
                           tuple(M2.V.arrow(v_label(a)) for a in M1.V.arrows),
                           tuple(M2.H.arrow(h_label(a)) for a in M1.H.arrows))


def find_pair_isomorphism(M1: MatchedPair, M2: MatchedPair, hint: PairIsomorphism | None = None):
    """Return a :class:`PairIsomorphism` or ``None``; tries ``hint`` first."""
    if hint is not None and check_pair_isomorphism(M1, M2, hint).ok:
        return hint
    if (len(M1.base), len(M1.V), len(M1.H), len(M1.cells)) != (len(M2.base), len(M2.V), len(M2.H), len(M2.cells)):
        return None
    for om in itertools.permutations(range(len(M2.base))):
        h_isos = list(enumerate_groupoid_morphisms(M1.H, M2.H, om, bijective=True))
        if not h_isos:
            continue
        for vm in enumerate_groupoid_morphisms(M1.V, M2.V, om, bijective=True):
            for hm in h_isos:
                ok = True
                for x, g in M1.cells:
                    x2, g2 = hm[x], vm[g]
                    if (M2.cell_index(x2, g2) is None or M2.left(x2, g2) != vm[M1.left(x, g)]
                            or M2.right(x2, g2) != hm[M1.right(x, g)]):
                        ok = False
                        break
                if ok:
                    return PairIsomorphism(tuple(om), vm, hm)
    return None
