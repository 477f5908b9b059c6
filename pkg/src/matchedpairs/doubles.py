"""Morphisms of matched pairs and generalized doubles.

A morphism from ``(VV, HH)`` to ``(V, H)`` is a pair ``(alpha, beta)`` with
``alpha: HH -> H`` covariant and ``beta: V -> VV`` contravariant, both over
the base, such that

    beta(alpha(h) ▷ g) = h ▷ beta(g)      alpha(h ◁ beta(g)) = alpha(h) ◁ g.

The generalized double of such a morphism is the matched pair
``(VV ×ₑ H^op, V ⋈ HH)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagonal import diagonal_groupoid
from .groupoid import (GroupoidMorphism, enumerate_groupoid_morphisms, opposite, restricted_product,
                       validate_groupoid_morphism)
from .matched import MatchedPair, PairIsomorphism, build_pair, dual, make_initial, make_terminal
from .report import ValidationReport


@dataclass(frozen=True, eq=False)
class MatchedPairMorphism:
    source: MatchedPair   # (VV, HH)
    target: MatchedPair   # (V, H)
    alpha: tuple          # HH -> H
    beta: tuple           # V -> VV

    def __repr__(self) -> str:
        return f"MatchedPairMorphism({self.source!r} -> {self.target!r})"


def validate_morphism(m: MatchedPairMorphism) -> ValidationReport:
    rep = ValidationReport("matched pair morphism")
    S, T = m.source, m.target
    if S.base != T.base:
        rep.add("base", (), "source and target bases differ")
        return rep
    rep.extend(validate_groupoid_morphism(GroupoidMorphism(S.H, T.H, m.alpha)), "alpha:")
    rep.extend(validate_groupoid_morphism(GroupoidMorphism(T.V, S.V, m.beta)), "beta:")
    if not rep.ok:
        return rep
    a, b = m.alpha, m.beta
    for h in range(len(S.H)):
        for g in range(len(T.V)):
            if S.H.end[h] != T.V.src[g]:
                continue
            w = (S.H.arrows[h], T.V.arrows[g])
            rep.check(b[T.left(a[h], g)] == S.left(h, b[g]), "left-compatible", w)
            rep.check(a[S.right(h, b[g])] == T.right(a[h], g), "right-compatible", w)
    return rep


def compose_morphisms(m2: MatchedPairMorphism, m1: MatchedPairMorphism) -> MatchedPairMorphism:
    """``m2`` after ``m1``; the beta legs compose in the opposite order."""
    return MatchedPairMorphism(m1.source, m2.target,
                               tuple(m2.alpha[h] for h in m1.alpha),
                               tuple(m1.beta[g] for g in m2.beta))


def morphisms_equal(m1: MatchedPairMorphism, m2: MatchedPairMorphism) -> bool:
    return m1.alpha == m2.alpha and m1.beta == m2.beta


def identity_morphism(M: MatchedPair) -> MatchedPairMorphism:
    return MatchedPairMorphism(M, M, tuple(range(len(M.H))), tuple(range(len(M.V))))


def initial_morphism(M: MatchedPair, initial: MatchedPair | None = None) -> MatchedPairMorphism:
    """The unique morphism from the initial pair over the same base."""
    I = make_initial(M.base) if initial is None else initial
    alpha = tuple(M.H.ident[I.H.src[p]] for p in range(len(I.H)))
    beta = tuple(I.V.arrow((M.base[M.V.src[g]], M.base[M.V.end[g]])) for g in range(len(M.V)))
    return MatchedPairMorphism(I, M, alpha, beta)


def terminal_morphism(M: MatchedPair, terminal: MatchedPair | None = None) -> MatchedPairMorphism:
    """The unique morphism to the terminal pair over the same base."""
    T = make_terminal(M.base) if terminal is None else terminal
    alpha = tuple(T.H.arrow((M.base[M.H.src[x]], M.base[M.H.end[x]])) for x in range(len(M.H)))
    beta = tuple(M.V.ident[T.V.src[p]] for p in range(len(T.V)))
    return MatchedPairMorphism(M, T, alpha, beta)


def enumerate_morphisms(S: MatchedPair, T: MatchedPair, max_nodes: int | None = None):
    """All morphisms of matched pairs ``S -> T`` (exhaustive)."""
    betas = list(enumerate_groupoid_morphisms(T.V, S.V, max_nodes=max_nodes))
    for alpha in enumerate_groupoid_morphisms(S.H, T.H, max_nodes=max_nodes):
        for beta in betas:
            m = MatchedPairMorphism(S, T, alpha, beta)
            if validate_morphism(m).ok:
                yield m


def pullback_pair(m: MatchedPairMorphism) -> MatchedPair:
    """The pair ``(V, HH)`` with ``h ⇀ g = alpha(h) ▷ g`` and ``h ↼ g = h ◁ beta(g)``."""
    S, T = m.source, m.target
    return build_pair(T.V, S.H,
                      lambda h, g: T.left(m.alpha[h], g),
                      lambda h, g: S.right(h, m.beta[g]))


def generalized_double(m: MatchedPairMorphism) -> MatchedPair:
    """The pair ``(VV ×ₑ H^op, V ⋈ HH)``.

    For a cell with horizontal arrow ``(g, h)`` and vertical arrow ``(γ, x)``,
    put ``Ω = alpha(h ◁ γ) x alpha(h)⁻¹``. Then

        (g, h) ⇀ (γ, x) = (beta(g) (h ▷ γ) beta(Ω ▷ g⁻¹), Ω ◁ g⁻¹)
        (g, h) ↼ (γ, x) = ((Ω ◁ g⁻¹) ▷ g, h ◁ γ)
    """
    S, T = m.source, m.target
    VV, HH, V, H = S.V, S.H, T.V, T.H
    a, b = m.alpha, m.beta
    vert = restricted_product(VV, opposite(H))
    horiz = diagonal_groupoid(pullback_pair(m))
    # decode composite labels back to ids once
    vparts = [(VV.arrow(gl), H.arrow(xl)) for gl, xl in vert.arrows]
    hparts = [(V.arrow(gl), HH.arrow(hl)) for gl, hl in horiz.arrows]
    vpos = {p: i for i, p in enumerate(vparts)}
    hpos = {p: i for i, p in enumerate(hparts)}
    memo: dict = {}

    def both(i: int, j: int):
        key = (i, j)
        if key not in memo:
            g, h = hparts[i]
            gam, x = vparts[j]
            h_gam = S.right(h, gam)
            omega = H.product(a[h_gam], x, H.inv[a[h]])
            gi = V.inv[g]
            om_l, om_r = T.left(omega, gi), T.right(omega, gi)
            new_v = (VV.product(b[g], S.left(h, gam), b[om_l]), om_r)
            new_h = (T.left(om_r, g), h_gam)
            memo[key] = (vpos[new_v], hpos[new_h])
        return memo[key]

    return build_pair(vert, horiz, lambda i, j: both(i, j)[0], lambda i, j: both(i, j)[1])


def double(M: MatchedPair) -> MatchedPair:
    """The double ``(V ×ₑ H^op, V ⋈ H)``."""
    return generalized_double(identity_morphism(M))


def dual_morphism(m: MatchedPairMorphism, source_dual: MatchedPair | None = None,
                  target_dual: MatchedPair | None = None) -> MatchedPairMorphism:
    """``(beta, alpha)`` as a morphism from dual(target) to dual(source)."""
    return MatchedPairMorphism(dual(m.target) if source_dual is None else source_dual,
                               dual(m.source) if target_dual is None else target_dual,
                               m.beta, m.alpha)


def _by_labels(D_from, D_to, fn):
    return tuple(D_to.arrow(fn(lab)) for lab in D_from.arrows)


def check_triangle(ab: MatchedPairMorphism, phipsi: MatchedPairMorphism,
                   chiomega: MatchedPairMorphism) -> bool:
    """Does ``chiomega`` after ``ab`` equal ``phipsi``?"""
    return morphisms_equal(compose_morphisms(chiomega, ab), phipsi)


def functoriality_maps(ab: MatchedPairMorphism, phipsi: MatchedPairMorphism, chiomega: MatchedPairMorphism,
                       doubles: tuple | None = None):
    """Morphisms induced on generalized doubles by a commuting triangle.

    ``ab: A -> B``, ``phipsi: A -> C``, ``chiomega: B -> C``. Returns
    ``D(phipsi) -> D(chiomega)`` (horizontal leg ``(g, h) -> (g, alpha(h))``,
    vertical leg ``(γ, x) -> (beta(γ), x)``) and ``D(phipsi) -> D(ab)``
    (horizontal leg ``(g, h) -> (omega(g), h)``, vertical leg
    ``(γ, x) -> (γ, chi(x))``).
    """
    if not check_triangle(ab, phipsi, chiomega):
        raise ValueError("triangle does not commute")
    if doubles is None:
        doubles = (generalized_double(phipsi), generalized_double(chiomega), generalized_double(ab))
    D_pp, D_co, D_ab = doubles
    A, B = ab.source, ab.target
    C = phipsi.target
    sharp1 = MatchedPairMorphism(
        D_pp, D_co,
        _by_labels(D_pp.H, D_co.H, lambda l: (l[0], B.H.arrows[ab.alpha[A.H.arrow(l[1])]])),
        _by_labels(D_co.V, D_pp.V, lambda l: (A.V.arrows[ab.beta[B.V.arrow(l[0])]], l[1])))
    sharp2 = MatchedPairMorphism(
        D_pp, D_ab,
        _by_labels(D_pp.H, D_ab.H, lambda l: (B.V.arrows[chiomega.beta[C.V.arrow(l[0])]], l[1])),
        _by_labels(D_ab.V, D_pp.V, lambda l: (l[0], C.H.arrows[chiomega.alpha[B.H.arrow(l[1])]])))
    return sharp1, sharp2


def inclusion_morphism(m: MatchedPairMorphism, D: MatchedPair | None = None) -> MatchedPairMorphism:
    """``(ι, π)`` from the source pair into ``D(m)``: ``ι(h) = (id l(h), h)``, ``π(γ, x) = γ``."""
    S, T = m.source, m.target
    D = generalized_double(m) if D is None else D
    iota = tuple(D.H.arrow((T.V.arrows[T.V.ident[S.H.src[h]]], S.H.arrows[h])) for h in range(len(S.H)))
    pi = tuple(S.V.arrow(gl) for gl, _ in D.V.arrows)
    return MatchedPairMorphism(S, D, iota, pi)


def gendouble_dual_iso(m: MatchedPairMorphism, D_ab: MatchedPair | None = None,
                       D_ba: MatchedPair | None = None) -> MatchedPairMorphism:
    """Isomorphism ``D(alpha, beta) -> D(beta, alpha)``.

    Horizontal leg ``(g, h) -> ((h⁻¹ ◁ beta(g)⁻¹)⁻¹, (alpha(h)⁻¹ ▷ g⁻¹)⁻¹)``;
    vertical leg ``(x, γ) -> (γ⁻¹, x⁻¹)``.
    """
    S, T = m.source, m.target
    a, b = m.alpha, m.beta
    D_ab = generalized_double(m) if D_ab is None else D_ab
    D_ba = generalized_double(dual_morphism(m)) if D_ba is None else D_ba

    def horiz(lab):
        g, h = T.V.arrow(lab[0]), S.H.arrow(lab[1])
        gi = T.V.inv[g]
        k = S.H.inv[S.right(S.H.inv[h], S.V.inv[b[g]])]
        f = T.V.inv[T.left(T.H.inv[a[h]], gi)]
        return (S.H.arrows[k], T.V.arrows[f])

    def vert(lab):
        x, gam = T.H.arrow(lab[0]), S.V.arrow(lab[1])
        return (S.V.arrows[S.V.inv[gam]], T.H.arrows[T.H.inv[x]])

    return MatchedPairMorphism(D_ab, D_ba, _by_labels(D_ab.H, D_ba.H, horiz), _by_labels(D_ba.V, D_ab.V, vert))


def is_bijective(m: MatchedPairMorphism) -> bool:
    return (sorted(m.alpha) == list(range(len(m.target.H)))
            and sorted(m.beta) == list(range(len(m.source.V))))


def as_pair_isomorphism(m: MatchedPairMorphism) -> PairIsomorphism:
    """Turn a bijective morphism into a covariant isomorphism (invert the beta leg)."""
    vmap = [0] * len(m.beta)
    for g, gg in enumerate(m.beta):
        vmap[gg] = g
    return PairIsomorphism(tuple(range(len(m.source.base))), tuple(vmap), tuple(m.alpha))


def morphisms_mutually_inverse(m1: MatchedPairMorphism, m2: MatchedPairMorphism) -> bool:
    """Check ``m2 ∘ m1`` and ``m1 ∘ m2`` are identities, matching arrows by label."""
    if len(m1.alpha) != len(m2.alpha) or len(m1.beta) != len(m2.beta):
        return False
    S1, T1, S2, T2 = m1.source, m1.target, m2.source, m2.target
    ok = True
    # horizontal legs: S1.H -> T1.H ~ S2.H -> T2.H ~ S1.H
    for i in range(len(S1.H)):
        j = S2.H.arrow(T1.H.arrows[m1.alpha[i]])
        ok &= T2.H.arrows[m2.alpha[j]] == S1.H.arrows[i]
    for i in range(len(S2.H)):
        j = S1.H.arrow(T2.H.arrows[m2.alpha[i]])
        ok &= T1.H.arrows[m1.alpha[j]] == S2.H.arrows[i]
    # vertical legs run backwards: T1.V -> S1.V ~ T2.V -> S2.V ~ T1.V
    for i in range(len(T1.V)):
        j = T2.V.arrow(S1.V.arrows[m1.beta[i]])
        ok &= S2.V.arrows[m2.beta[j]] == T1.V.arrows[i]
    for i in range(len(T2.V)):
        j = T1.V.arrow(S2.V.arrows[m2.beta[i]])
        ok &= S1.V.arrows[m1.beta[j]] == T2.V.arrows[i]
    return bool(ok)
