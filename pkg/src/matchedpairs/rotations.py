"""Rotations, matched pairs of rotations, and the braidings they induce.

A rotation is a morphism ``κ: V -> H`` over the base with
``y κ(g) = κ(y ▷ g)(y ◁ g)`` for every cell ``(y, g)``. A matched pair of
rotations ``(ξ, η)`` additionally satisfies, for ``b(g) == t(f)``::

    b(η(g) ▷ f) == b(ξ(f)⁻¹ ▷ g⁻¹)
    (η(g) ▷ f)(ξ(f)⁻¹ ▷ g⁻¹)⁻¹ == g f

and induces the braiding
``c(e, d) = (η|e| ▷ d, (ξ(|d|)⁻¹ ◁ |e|⁻¹) ▷ e)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ._search import Conflict, SizeGuardExceeded, search_maps
from .diagonal import diagonal_groupoid
from .groupoid import UNDEFINED, GroupoidMorphism, validate_groupoid_morphism
from .matched import MatchedPair
from .report import ValidationReport
from .reps import (Representation, RepMorphism, enumerate_rep_morphisms, expansion, identity_rep_morphism,
                   rep_H, rep_HP_g, rep_HV, rep_V, sections, rep_H_sigma, tensor, terminal_morphism,
                   unit_rep, validate_rep_morphism)


@dataclass(frozen=True)
class RotationPair:
    xi: tuple
    eta: tuple


def _morphism_report(M: MatchedPair, kappa: Sequence[int], rep: ValidationReport) -> None:
    V, H = M.V, M.H
    for g in range(len(V)):
        k = kappa[g]
        rep.check(H.src[k] == V.src[g] and H.end[k] == V.end[g], "over-base", (V.arrows[g],))
    if not rep.ok:
        return
    for f in range(len(V)):
        for g in range(len(V)):
            fg = V.comp[f][g]
            if fg != UNDEFINED:
                rep.check(kappa[fg] == H.comp[kappa[f]][kappa[g]], "multiplicative", (V.arrows[f], V.arrows[g]))


def check_rotation(M: MatchedPair, kappa: Sequence[int]) -> ValidationReport:
    """Direct check: morphism over the base, then the rotation identity on every cell."""
    rep = ValidationReport("rotation")
    if len(kappa) != len(M.V):
        rep.add("shape", ())
        return rep
    _morphism_report(M, kappa, rep)
    if not rep.ok:
        return rep
    H = M.H
    for y, g in M.cells:
        lhs = H.comp[y][kappa[g]]
        rhs = H.comp[kappa[M.left(y, g)]][M.right(y, g)]
        rep.check(lhs == rhs, "rotation", (H.arrows[y], M.V.arrows[g]))
    return rep


def check_rotation_via_diagonal(M: MatchedPair, kappa: Sequence[int], D=None) -> ValidationReport:
    """Second route: ``(g, x) -> κ(g) x`` must be a groupoid morphism on the diagonal."""
    rep = ValidationReport("rotation (diagonal route)")
    V, H = M.V, M.H
    D = diagonal_groupoid(M) if D is None else D
    amap = []
    for gl, xl in D.arrows:
        k = kappa[V.arrow(gl)]
        kx = H.comp[k][H.arrow(xl)] if 0 <= k < len(H) else UNDEFINED
        if not rep.check(kx != UNDEFINED, "composable", (gl, xl)):
            return rep
        amap.append(kx)
    rep.extend(validate_groupoid_morphism(GroupoidMorphism(D, H, tuple(amap))))
    return rep


def is_rotation(M: MatchedPair, kappa: Sequence[int]) -> bool:
    return check_rotation(M, kappa).ok


def check_rotation_pair(M: MatchedPair, xi: Sequence[int], eta: Sequence[int],
                        derived: bool = True) -> ValidationReport:
    """Both rotations, the two defining identities, and (optionally) the three consequences."""
    rep = ValidationReport("matched pair of rotations")
    rep.extend(check_rotation(M, xi), "xi:")
    rep.extend(check_rotation(M, eta), "eta:")
    if not rep.ok:
        return rep
    V, H = M.V, M.H
    for g in range(len(V)):
        gi = V.inv[g]
        for f in range(len(V)):
            if V.end[g] != V.src[f]:
                continue
            wit = (V.arrows[g], V.arrows[f])
            a = M.left(eta[g], f)                 # η(g) ▷ f
            xf = H.inv[xi[f]]                     # ξ(f)⁻¹
            b = M.left(xf, gi)                    # ξ(f)⁻¹ ▷ g⁻¹
            if not rep.check(V.end[a] == V.end[b], "endpoints", wit):
                continue
            rep.check(V.comp[a][V.inv[b]] == V.comp[g][f], "factorization", wit)
            if not derived:
                continue
            c = M.right(xf, gi)                   # ξ(f)⁻¹ ◁ g⁻¹
            d = M.right(eta[g], f)                # η(g) ◁ f
            rep.check(xi[a] == H.inv[c], "derived-xi", wit)
            rep.check(H.inv[eta[b]] == d, "derived-eta", wit)
            rep.check(H.comp[eta[g]][xi[f]] == H.comp[H.inv[c]][d], "derived-product", wit)
    return rep


def is_matched_rotation_pair(M: MatchedPair, xi: Sequence[int], eta: Sequence[int]) -> bool:
    return check_rotation_pair(M, xi, eta).ok


def enumerate_rotations(M: MatchedPair, max_nodes: int | None = 200_000):
    """All rotations ``V -> H`` (tuples), by propagation search.

    A value ``κ(g)`` forces ``κ(g⁻¹)``, products with assigned arrows, and
    ``κ(y ▷ g) = y κ(g) (y ◁ g)⁻¹`` for every ``y`` ending at ``t(g)``.
    """
    V, H = M.V, M.H
    n = len(V)
    ending_at = [[y for y in range(len(H)) if H.end[y] == p] for p in range(len(M.base))]

    def candidates(g, assign):
        return H.hom(V.src[g], V.end[g])

    def propagate(assign, g, v):
        if H.src[v] != V.src[g] or H.end[v] != V.end[g]:
            raise Conflict
        forced = [(V.inv[g], H.inv[v])]
        for f in range(n):
            w = assign[f]
            if w is None:
                continue
            fg = V.comp[f][g]
            if fg != UNDEFINED:
                forced.append((fg, H.comp[w][v]))
            gf = V.comp[g][f]
            if gf != UNDEFINED:
                forced.append((gf, H.comp[v][w]))
        for y in ending_at[V.src[g]]:
            forced.append((M.left(y, g), H.comp[H.comp[y][v]][H.inv[M.right(y, g)]]))
        return forced

    order = list(V.ident) + [g for g in range(n) if g not in set(V.ident)]
    yield from search_maps(n, candidates, propagate, None, max_nodes, order)


def brute_force_rotations(M: MatchedPair, max_candidates: int = 200_000) -> list:
    """Independent oracle: test every endpoint-compatible map with both routes."""
    V, H = M.V, M.H
    choices = [H.hom(V.src[g], V.end[g]) for g in range(len(V))]
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_candidates:
        raise SizeGuardExceeded(f"{total} candidate maps exceed the limit {max_candidates}")
    D = diagonal_groupoid(M)
    found = []
    for kappa in itertools.product(*choices):
        direct = check_rotation(M, kappa).ok
        via = check_rotation_via_diagonal(M, kappa, D).ok
        if direct != via:
            raise AssertionError(f"rotation routes disagree on {kappa}")
        if direct:
            found.append(tuple(kappa))
    return found


def enumerate_rotation_pairs(M: MatchedPair, rotations: list | None = None,
                             max_nodes: int | None = 200_000) -> list[RotationPair]:
    rots = list(enumerate_rotations(M, max_nodes)) if rotations is None else rotations
    out = []
    for xi in rots:
        for eta in rots:
            if check_rotation_pair(M, xi, eta, derived=False).ok:
                out.append(RotationPair(xi, eta))
    return out


def canonical_double_pair(M: MatchedPair, DM: MatchedPair) -> RotationPair:
    """On the double: ``ξ(γ, x) = (id r(x), x⁻¹)`` and ``η(γ, x) = (γ, id b(γ))``."""
    V, H = M.V, M.H
    xi, eta = [], []
    for gl, xl in DM.V.arrows:
        g, x = V.arrow(gl), H.arrow(xl)
        xi.append(DM.H.arrow((V.arrows[V.ident[H.end[x]]], H.arrows[H.inv[x]])))
        eta.append(DM.H.arrow((gl, H.arrows[H.ident[V.end[g]]])))
    return RotationPair(tuple(xi), tuple(eta))


# ------------------------------------------------------------------ braidings

def braiding(M: MatchedPair, pair: RotationPair, E: Representation, D: Representation,
             ED: Representation | None = None, DE: Representation | None = None,
             strict: bool = True) -> RepMorphism:
    """``c_{E,D}: E ⊗ D -> D ⊗ E``.

    Raises ``ValueError`` when the formula leaves ``D ⊗ E`` (only possible for
    an invalid rotation pair); with ``strict=False`` such entries are ``None``.
    """
    ED = tensor(M, E, D) if ED is None else ED
    DE = tensor(M, D, E) if DE is None else DE
    V, H = M.V, M.H
    out = []
    for i, j in ED.components:
        ge, gd = E.grading[i], D.grading[j]
        d2 = D.action.get((pair.eta[ge], j))
        xf = H.inv[pair.xi[gd]]
        x = M.right(xf, V.inv[ge]) if H.end[xf] == V.src[V.inv[ge]] else None
        e2 = E.action.get((x, i))
        k = None if d2 is None or e2 is None else DE.pair_index(d2, e2)
        if k is None and strict:
            raise ValueError(f"not a matched pair of rotations: braiding undefined at "
                             f"{(E.elements[i], D.elements[j])!r}")
        out.append(k)
    return RepMorphism(ED, DE, tuple(out))


def _triples_left(T: Representation) -> list:
    """Index triples of ``(A ⊗ B) ⊗ C`` elements."""
    AB = T.factors[0]
    return [(*AB.components[ab], c) for ab, c in T.components]


def _triples_right(T: Representation) -> list:
    """Index triples of ``A ⊗ (B ⊗ C)`` elements."""
    BC = T.factors[1]
    return [(a, *BC.components[bc]) for a, bc in T.components]


class _Tensors:
    def __init__(self, M):
        self.M = M
        self.cache = {}

    def __call__(self, A, B):
        key = (id(A), id(B))
        if key not in self.cache:
            self.cache[key] = (A, B, tensor(self.M, A, B))
        return self.cache[key][2]


def _tensor_map(S: Representation, T: Representation, f: Sequence[int], g: Sequence[int]) -> tuple:
    """``f ⊗ g`` between tensor products given by component maps."""
    return tuple(T.pair_index(f[i], g[j]) for i, j in S.components)


def default_certification_fleet(M: MatchedPair, max_size: int = 24) -> list[Representation]:
    gens = [unit_rep(M), rep_V(M), rep_H(M), rep_HV(M)]
    secs = sections(M, 2)
    gens += [rep_H_sigma(M, s) for s in secs[1:]]
    gens += [rep_HP_g(M, g) for g in range(min(2, len(M.V)))]
    gens = [R for R in gens if len(R) <= max_size]
    fleet = list(gens)
    for A in gens[1:4]:
        for B in gens[1:4]:
            T = tensor(M, A, B)
            if 0 < len(T) <= max_size:
                fleet.append(T)
    return fleet


def certify_braiding(M: MatchedPair, pair: RotationPair, fleet: list[Representation] | None = None,
                     morphisms: list[RepMorphism] | None = None, max_product: int = 4096) -> ValidationReport:
    """Isomorphism, naturality, both hexagons and unit triviality over a representation fleet.

    Products whose carrier would exceed ``max_product`` elements are skipped.
    """
    rep = ValidationReport("braiding")
    fleet = default_certification_fleet(M) if fleet is None else fleet
    T = _Tensors(M)
    cache: dict = {}

    def c(A, B):
        key = (id(A), id(B))
        if key not in cache:
            cache[key] = braiding(M, pair, A, B, T(A, B), T(B, A), strict=False)
        return cache[key]

    def defined(*maps):
        return all(None not in m.fmap for m in maps)

    def small(*Rs):
        n = 1
        for R in Rs:
            n *= max(1, len(R))
        return n <= max_product

    # (i) isomorphisms
    for A in fleet:
        for B in fleet:
            if not small(A, B):
                continue
            m = c(A, B)
            if not rep.check(defined(m), "isomorphism", (A.name, B.name), "map leaves the target"):
                continue
            sub = validate_rep_morphism(m)
            rep.check(sub.ok, "isomorphism", (A.name, B.name), "" if sub.ok else str(sub.first()))
            rep.check(m.is_bijective(), "isomorphism", (A.name, B.name), "not bijective")

    # (iv) unit
    U = next((R for R in fleet if R.name == "1"), unit_rep(M))
    for A in fleet:
        cAU, cUA = c(A, U), c(U, A)
        if not defined(cAU, cUA):
            continue
        AU, UA = T(A, U), T(U, A)
        for k, (i, u) in enumerate(AU.components):
            rep.check(UA.components[cAU.fmap[k]] == (u, i), "unit", (A.name, A.elements[i]))
        for k, (u, i) in enumerate(UA.components):
            rep.check(AU.components[cUA.fmap[k]] == (i, u), "unit", (A.name, A.elements[i]))

    # (ii) naturality
    morphisms = default_morphisms(M, fleet) if morphisms is None else morphisms
    for phi in morphisms:
        A, A2 = phi.source, phi.target
        for B in fleet:
            if not small(A, B) or not small(A2, B) or not defined(c(A, B), c(A2, B), c(B, A), c(B, A2)):
                continue
            ident_B = range(len(B))
            lhs = c(A, B).then(RepMorphism(T(B, A), T(B, A2), _tensor_map(T(B, A), T(B, A2), ident_B, phi.fmap)))
            rhs = RepMorphism(T(A, B), T(A2, B), _tensor_map(T(A, B), T(A2, B), phi.fmap, ident_B)).then(c(A2, B))
            rep.check(lhs.fmap == rhs.fmap, "naturality-left", (A.name, A2.name, B.name))
            lhs = c(B, A).then(RepMorphism(T(A, B), T(A2, B), _tensor_map(T(A, B), T(A2, B), phi.fmap, ident_B)))
            rhs = RepMorphism(T(B, A), T(B, A2), _tensor_map(T(B, A), T(B, A2), ident_B, phi.fmap)).then(c(B, A2))
            rep.check(lhs.fmap == rhs.fmap, "naturality-right", (B.name, A.name, A2.name))

    # (iii) hexagons, compared on index triples
    for A in fleet:
        for B in fleet:
            for C in fleet:
                if not small(A, B, C):
                    continue
                BC, AB = T(B, C), T(A, B)
                if not defined(c(A, BC), c(AB, C), c(A, B), c(A, C), c(B, C)):
                    continue
                big = c(A, BC)                       # A ⊗ (B ⊗ C) -> (B ⊗ C) ⊗ A
                cAB, cAC = c(A, B), c(A, C)
                src = T(A, BC)
                dst_trip = _triples_left(T(BC, A))
                ok = True
                for k, (a, bc) in enumerate(src.components):
                    b, cc = BC.components[bc]
                    b1, a1 = T(B, A).components[cAB.fmap[T(A, B).pair_index(a, b)]]
                    c2, a2 = T(C, A).components[cAC.fmap[T(A, C).pair_index(a1, cc)]]
                    if dst_trip[big.fmap[k]] != (b1, c2, a2):
                        ok = False
                        rep.add("hexagon-left", (A.name, B.name, C.name, A.elements[a], B.elements[b], C.elements[cc]))
                        break
                big = c(AB, C)                       # (A ⊗ B) ⊗ C -> C ⊗ (A ⊗ B)
                cBC, cAC = c(B, C), c(A, C)
                src = T(AB, C)
                dst_trip = _triples_right(T(C, AB))
                for k, (ab, cc) in enumerate(src.components):
                    a, b = AB.components[ab]
                    c1, b1 = T(C, B).components[cBC.fmap[T(B, C).pair_index(b, cc)]]
                    c2, a2 = T(C, A).components[cAC.fmap[T(A, C).pair_index(a, c1)]]
                    if dst_trip[big.fmap[k]] != (c2, a2, b1):
                        rep.add("hexagon-right", (A.name, B.name, C.name, A.elements[a], B.elements[b], C.elements[cc]))
                        break
                rep.checked += 1 if ok else 0
    return rep


def default_morphisms(M: MatchedPair, fleet: list[Representation], per_pair: int = 3) -> list[RepMorphism]:
    """Terminal maps, expansions, identities and a few searched intertwiners between fleet members."""
    out = []
    VR = next((R for R in fleet if R.name == "V"), None)
    for R in fleet:
        out.append(identity_rep_morphism(R))
        if VR is not None:
            out.append(terminal_morphism(R, VR))
    HV = next((R for R in fleet if R.name == "HV"), None)
    if HV is not None:
        for R in fleet[:6]:
            for e in range(min(len(R), 3)):
                S = next((F for F in fleet if F.name == f"H×{{{M.V.arrows[R.grading[e]]!r}}}"), None)
                if S is not None:
                    out.append(expansion(R, e, S))
    small = [R for R in fleet if len(R) <= 12]
    for A in small:
        for B in small:
            for k, fmap in enumerate(enumerate_rep_morphisms(A, B, max_nodes=20_000)):
                if k >= per_pair:
                    break
                out.append(RepMorphism(A, B, fmap))
    return out


def braidings_distinct(M: MatchedPair, pairs: list[RotationPair]) -> bool:
    """Different rotation pairs give different braidings on ``HV ⊗ HV``."""
    HV = rep_HV(M)
    T1 = tensor(M, HV, HV)
    tables = {braiding(M, p, HV, HV, T1, T1).fmap for p in pairs}
    return len(tables) == len(pairs)


def double_braiding(M: MatchedPair, DM: MatchedPair, E: Representation, D: Representation,
                    ED: Representation | None = None, DE: Representation | None = None) -> RepMorphism:
    """The closed formula on the double, ``c(e, d) = (|e|_V ▷ d, (|d|_H ◁ |e|_V⁻¹) ▷ e)``.

    Here ``|e| = (γ, x)`` in the vertical groupoid of the double; ``γ`` acts
    as ``(γ, id)`` and the original ``◁`` result ``y`` as ``(id, y)``.
    """
    ED = tensor(DM, E, D) if ED is None else ED
    DE = tensor(DM, D, E) if DE is None else DE
    V, H = M.V, M.H
    VD, HD = DM.V, DM.H
    out = []
    for i, j in ED.components:
        gl, _ = VD.arrows[E.grading[i]]
        _, xl = VD.arrows[D.grading[j]]
        g = V.arrow(gl)
        along = HD.arrow((gl, H.arrows[H.ident[V.end[g]]]))
        y = M.right(H.arrow(xl), V.inv[g])
        embedded = HD.arrow((V.arrows[V.ident[H.src[y]]], H.arrows[y]))
        out.append(DE.pair_index(D.act(along, j), E.act(embedded, i)))
    return RepMorphism(ED, DE, tuple(out))
