"""The diagonal groupoid of a matched pair and exact factorizations.

Arrows of the diagonal are corner pairs ``(f, y)`` with ``b(f) == l(y)``;
the product fills the middle corner with a cell::

    (f, y)(h, z) = (f (y ▷ h), (y ◁ h) z)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .groupoid import (UNDEFINED, FiniteGroupoid, GroupoidMorphism, from_tables, kernel,
                       validate_groupoid_morphism)
from .matched import (MatchedPair, factor_tables, make_bundle_action, pair_from_subgroupoids,
                      relabel_pair)
from .report import ValidationReport


def diagonal_groupoid(M: MatchedPair) -> FiniteGroupoid:
    V, H = M.V, M.H
    pairs = [(f, y) for f in range(len(V)) for y in range(len(H)) if V.end[f] == H.src[y]]
    pos = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    comp = [[UNDEFINED] * n for _ in range(n)]
    for i, (f, y) in enumerate(pairs):
        for j, (h, z) in enumerate(pairs):
            if H.end[y] != V.src[h]:
                continue
            comp[i][j] = pos[(V.comp[f][M.left(y, h)], H.comp[M.right(y, h)][z])]
    return from_tables(V.objects, [(V.arrows[f], H.arrows[y]) for f, y in pairs],
                       [V.src[f] for f, _ in pairs], [H.end[y] for _, y in pairs], comp)


def diagonal_embeddings(M: MatchedPair, D: FiniteGroupoid | None = None):
    """The morphisms ``f -> (f, id b(f))`` and ``y -> (id l(y), y)``."""
    D = diagonal_groupoid(M) if D is None else D
    V, H = M.V, M.H
    ev = GroupoidMorphism(V, D, tuple(D.arrow((V.arrows[f], H.arrows[H.ident[V.end[f]]])) for f in range(len(V))))
    eh = GroupoidMorphism(H, D, tuple(D.arrow((V.arrows[V.ident[H.src[y]]], H.arrows[y])) for y in range(len(H))))
    return ev, eh


@dataclass(frozen=True)
class Factorization:
    """An ambient groupoid with two wide subgroupoids (given by arrow ids).

    ``v_label``/``h_label`` optionally rename the arrows of the recovered
    pair; ``decomposition`` maps each arrow to its ``(f, y)`` factors.
    """
    D: FiniteGroupoid
    v_ids: tuple
    h_ids: tuple
    decomposition: dict
    v_label: Callable | None = None
    h_label: Callable | None = None


def factorization(D: FiniteGroupoid, v_ids: Sequence[int], h_ids: Sequence[int], v_label=None,
                  h_label=None) -> Factorization:
    """Verify exactness by counting decompositions; raises with a witness arrow."""
    v_ids, h_ids = tuple(sorted(set(v_ids))), tuple(sorted(set(h_ids)))
    return Factorization(D, v_ids, h_ids, factor_tables(D, v_ids, h_ids), v_label, h_label)


def canonical_factorization(M: MatchedPair, D: FiniteGroupoid | None = None) -> Factorization:
    D = diagonal_groupoid(M) if D is None else D
    ev, eh = diagonal_embeddings(M, D)
    return factorization(D, ev.amap, eh.amap, v_label=lambda a: a[0], h_label=lambda a: a[1])


def matched_pair_from_factorization(F: Factorization) -> MatchedPair:
    M = pair_from_subgroupoids(F.D, F.v_ids, F.h_ids)
    if F.v_label is None and F.h_label is None:
        return M
    vl = F.v_label or (lambda a: a)
    hl = F.h_label or (lambda a: a)
    return relabel_pair(M, lambda o: o, vl, hl)


def semidirect_product(G: FiniteGroupoid, N: FiniteGroupoid, action: Callable) -> FiniteGroupoid:
    """Diagonal of the pair where ``G`` acts on the bundle ``N`` from the right."""
    return diagonal_groupoid(make_bundle_action(G, N, action, side="right"))


def semidirect_projection(G: FiniteGroupoid, N: FiniteGroupoid, SD: FiniteGroupoid):
    """Projection ``(g, n) -> g`` and its section ``g -> (g, id b(g))``."""
    proj = GroupoidMorphism(SD, G, tuple(G.arrow(a[0]) for a in SD.arrows))
    sec = GroupoidMorphism(G, SD, tuple(SD.arrow((G.arrows[g], N.arrows[N.ident[G.end[g]]]))
                                        for g in range(len(G))))
    return proj, sec


def split_reconstruction(alpha: GroupoidMorphism, section: GroupoidMorphism):
    """For a split ``alpha: G -> K`` over the base, rebuild ``G`` as ``K ⋉ ker(alpha)``.

    ``K`` acts on the kernel by ``n ◁ k = σ(k)⁻¹ n σ(k)``. Returns the
    semidirect product and the comparison map ``(k, n) -> σ(k) n``.
    """
    G, K = alpha.source, alpha.target
    N = kernel(alpha)

    def act(n, k):
        s = section.amap[K.arrow(k)]
        return G.arrows[G.product(G.inv[s], G.arrow(n), s)]

    SD = semidirect_product(K, N, act)
    comparison = GroupoidMorphism(SD, G, tuple(
        G.product(section.amap[K.arrow(k)], G.arrow(n)) for k, n in SD.arrows))
    return SD, comparison


def check_universal_diagonal(M: MatchedPair, F: FiniteGroupoid, alpha: GroupoidMorphism,
                             beta: GroupoidMorphism) -> ValidationReport:
    """Check that ``alpha: H -> F`` and ``beta: V -> F`` factor uniquely through the diagonal.

    The hypothesis is that each cell maps to a commuting square,
    ``alpha(y) beta(h) = beta(y ▷ h) alpha(y ◁ h)``; the mediating morphism is
    ``(f, y) -> beta(f) alpha(y)``.
    """
    rep = ValidationReport("diagonal universal property")
    rep.extend(validate_groupoid_morphism(alpha), "alpha:")
    rep.extend(validate_groupoid_morphism(beta), "beta:")
    if not rep.ok:
        return rep
    V, H = M.V, M.H
    for y, h in M.cells:
        lhs = F.comp[alpha.amap[y]][beta.amap[h]]
        rhs = F.comp[beta.amap[M.left(y, h)]][alpha.amap[M.right(y, h)]]
        rep.check(lhs == rhs, "commuting-cell", (H.arrows[y], V.arrows[h]))
    if not rep.ok:
        return rep
    D = diagonal_groupoid(M)
    ev, eh = diagonal_embeddings(M, D)
    med = GroupoidMorphism(D, F, tuple(
        F.comp[beta.amap[V.arrow(fl)]][alpha.amap[H.arrow(yl)]] for fl, yl in D.arrows))
    rep.extend(validate_groupoid_morphism(med), "mediating:")
    rep.check(ev.then(med).amap == beta.amap, "restricts-to-beta", ())
    rep.check(eh.then(med).amap == alpha.amap, "restricts-to-alpha", ())
    # uniqueness: every arrow is the product of its two embedded factors
    for i, (fl, yl) in enumerate(D.arrows):
        rep.check(D.comp[ev.amap[V.arrow(fl)]][eh.amap[H.arrow(yl)]] == i, "generated-by-factors", (fl, yl))
    return rep
