"""Set-theoretic representations of a matched pair.

A representation is a set ``E`` with anchors ``p, q: E -> base``, a grading
``|e|`` in V with ``p = t|e|`` and ``q = b|e|``, and a left action of H
(``x ▷ e`` defined when ``r(x) == p(e)``) compatible with the grading:
``|x ▷ e| = x ▷ |e|``.

The tensor product is strict: ``(E ⊗ F) ⊗ K`` and ``E ⊗ (F ⊗ K)`` are
compared through the obvious identification of triples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from ._search import Conflict, search_maps
from .doubles import MatchedPairMorphism
from .matched import MatchedPair
from .report import ValidationReport


@dataclass(frozen=True, eq=False)
class Representation:
    pair: MatchedPair
    elements: tuple
    p: tuple
    q: tuple
    grading: tuple
    action: dict
    name: str = ""
    factors: tuple | None = None      # (R1, R2) when built by tensor()
    components: tuple | None = None   # (i, j) per element when built by tensor()

    def __post_init__(self):
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("element labels must be unique")
        object.__setattr__(self, "_idx", idx)
        if self.components is not None:
            object.__setattr__(self, "_cpos", {c: i for i, c in enumerate(self.components)})

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Representation({self.name or '?'}, {len(self)} elements)"

    def index(self, label) -> int:
        return self._idx[label]

    def act(self, x: int, e: int) -> int:
        return self.action[(x, e)]

    def pair_index(self, i: int, j: int) -> int | None:
        """Element ``(i, j)`` of a tensor product, if present."""
        return self._cpos.get((i, j))

    def fibers(self) -> dict:
        out: dict = {}
        for e, g in enumerate(self.grading):
            out.setdefault(g, []).append(e)
        return out


def build_rep(M: MatchedPair, elements: Sequence, grading: Sequence[int], act: Callable[[int, int], int],
              name: str = "", **extra) -> Representation:
    """Anchors come from the grading; ``act(x, e)`` is tabulated on its domain."""
    V, H = M.V, M.H
    p = tuple(V.src[g] for g in grading)
    q = tuple(V.end[g] for g in grading)
    action = {}
    for e in range(len(elements)):
        for x in range(len(H)):
            if H.end[x] == p[e]:
                action[(x, e)] = act(x, e)
    return Representation(M, tuple(elements), p, q, tuple(grading), action, name, **extra)


def validate_representation(M: MatchedPair, R: Representation) -> ValidationReport:
    rep = ValidationReport(f"representation {R.name}".strip())
    V, H = M.V, M.H
    lab = R.elements
    n = len(R)
    for e in range(n):
        g = R.grading[e]
        rep.check(R.p[e] == V.src[g] and R.q[e] == V.end[g], "grading-anchors", (lab[e],))
    if not rep.ok:
        return rep
    for e in range(n):
        for x in range(len(H)):
            if H.end[x] != R.p[e]:
                continue
            v = R.action.get((x, e))
            if not rep.check(v is not None and 0 <= v < n, "action-domain", (H.arrows[x], lab[e])):
                continue
            rep.check(R.p[v] == H.src[x], "action-source", (H.arrows[x], lab[e]))
            rep.check(R.grading[v] == M.left(x, R.grading[e]), "action-grading", (H.arrows[x], lab[e]))
    if not rep.ok:
        return rep
    for e in range(n):
        rep.check(R.act(H.ident[R.p[e]], e) == e, "action-unit", (lab[e],))
        for x in range(len(H)):
            if H.end[x] != R.p[e]:
                continue
            xe = R.act(x, e)
            for y in range(len(H)):
                yx = H.comp[y][x]
                if yx >= 0:
                    rep.check(R.act(y, xe) == R.act(yx, e), "action-composition",
                              (H.arrows[y], H.arrows[x], lab[e]))
    return rep


def tensor(M: MatchedPair, R1: Representation, R2: Representation) -> Representation:
    """``E ⊗ F``: pairs with ``q(e) == p(f)``, ``x ▷ (e, f) = (x ▷ e, (x ◁ |e|) ▷ f)``."""
    V = M.V
    comps = tuple((i, j) for i in range(len(R1)) for j in range(len(R2)) if R1.q[i] == R2.p[j])
    pos = {c: k for k, c in enumerate(comps)}
    grading = [V.comp[R1.grading[i]][R2.grading[j]] for i, j in comps]

    def act(x, k):
        i, j = comps[k]
        return pos[(R1.act(x, i), R2.act(M.right(x, R1.grading[i]), j))]

    elements = [(R1.elements[i], R2.elements[j]) for i, j in comps]
    name = f"({R1.name}⊗{R2.name})"
    return build_rep(M, elements, grading, act, name, factors=(R1, R2), components=comps)


def unit_rep(M: MatchedPair) -> Representation:
    """The base itself: ``|P| = id P`` and ``x ▷ r(x) = l(x)``."""
    V, H = M.V, M.H
    return build_rep(M, M.base, [V.ident[p] for p in range(len(M.base))], lambda x, e: H.src[x], "1")


def rep_V(M: MatchedPair) -> Representation:
    """V with identity grading and the action ``x ▷ g``."""
    return build_rep(M, M.V.arrows, range(len(M.V)), M.left, "V")


def rep_H(M: MatchedPair) -> Representation:
    """H acting on itself by left multiplication, graded by ``id l(x)``."""
    V, H = M.V, M.H
    return build_rep(M, H.arrows, [V.ident[H.src[x]] for x in range(len(H))],
                     lambda y, x: H.comp[y][x], "H")


def _cell_subrep(M: MatchedPair, cells: Sequence[tuple[int, int]], name: str) -> Representation:
    V, H = M.V, M.H
    cells = list(cells)
    pos = {c: i for i, c in enumerate(cells)}

    def act(y, i):
        x, g = cells[i]
        return pos[(H.comp[y][x], g)]

    return build_rep(M, [(H.arrows[x], V.arrows[g]) for x, g in cells],
                     [M.left(x, g) for x, g in cells], act, name)


def rep_HV(M: MatchedPair) -> Representation:
    """The cells, with ``y ▷ (x, g) = (yx, g)`` and ``|(x, g)| = x ▷ g``."""
    return _cell_subrep(M, M.cells, "HV")


def sections(M: MatchedPair, limit: int | None = None):
    """Maps ``σ`` choosing an arrow of V starting at each object."""
    V = M.V
    choices = [[g for g in range(len(V)) if V.src[g] == p] for p in range(len(M.base))]
    it = itertools.product(*choices)
    return list(itertools.islice(it, limit)) if limit is not None else list(it)


def rep_H_sigma(M: MatchedPair, sigma: Sequence[int]) -> Representation:
    """Subrepresentation of cells ``(x, σ(r(x)))``."""
    H = M.H
    return _cell_subrep(M, [(x, sigma[H.end[x]]) for x in range(len(H))], f"H_σ{tuple(sigma)}")


def rep_HP_g(M: MatchedPair, g: int) -> Representation:
    """Subrepresentation of cells ``(x, g)`` for fixed ``g``."""
    H = M.H
    return _cell_subrep(M, [(x, g) for x in range(len(H)) if H.end[x] == M.V.src[g]],
                        f"H×{{{M.V.arrows[g]!r}}}")


# ----------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: Representation
    target: Representation
    fmap: tuple

    def __call__(self, e: int) -> int:
        return self.fmap[e]

    def then(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, other.target, tuple(other.fmap[v] for v in self.fmap))

    def is_bijective(self) -> bool:
        return sorted(self.fmap) == list(range(len(self.target)))


def validate_rep_morphism(m: RepMorphism) -> ValidationReport:
    rep = ValidationReport("representation morphism")
    R1, R2 = m.source, m.target
    if len(m.fmap) != len(R1) or any(not (0 <= v < len(R2)) for v in m.fmap):
        rep.add("shape", ())
        return rep
    H = R1.pair.H
    for e in range(len(R1)):
        v = m.fmap[e]
        rep.check(R2.grading[v] == R1.grading[e], "grading", (R1.elements[e],))
        for x in range(len(H)):
            if H.end[x] == R1.p[e]:
                rep.check(m.fmap[R1.act(x, e)] == R2.act(x, v), "intertwining", (H.arrows[x], R1.elements[e]))
    return rep


def identity_rep_morphism(R: Representation) -> RepMorphism:
    return RepMorphism(R, R, tuple(range(len(R))))


def enumerate_rep_morphisms(R1: Representation, R2: Representation, fixed: dict | None = None,
                            max_nodes: int | None = None):
    """All grading-preserving intertwiners ``R1 -> R2`` (as tuples)."""
    H = R1.pair.H
    fib2 = R2.fibers()
    dom = [[x for x in range(len(H)) if H.end[x] == R1.p[e]] for e in range(len(R1))]

    def candidates(e, assign):
        return fib2.get(R1.grading[e], [])

    def propagate(assign, e, v):
        if R2.grading[v] != R1.grading[e]:
            raise Conflict
        return [(R1.act(x, e), R2.act(x, v)) for x in dom[e]]

    order = list(range(len(R1)))
    if fixed:
        order = list(fixed) + [e for e in order if e not in fixed]

        def candidates(e, assign, _c=candidates):  # noqa: F811
            return [fixed[e]] if e in fixed else _c(e, assign)

    yield from search_maps(len(R1), candidates, propagate, None, max_nodes, order)


def terminal_morphism(R: Representation, target: Representation | None = None) -> RepMorphism:
    """``e -> |e|`` into the representation V."""
    VR = rep_V(R.pair) if target is None else target
    return RepMorphism(R, VR, tuple(R.grading))


def expansion(R: Representation, e: int, source: Representation | None = None) -> RepMorphism:
    """``(x, g) -> x ▷ e`` from the cells over ``g = |e|``."""
    M = R.pair
    S = rep_HP_g(M, R.grading[e]) if source is None else source
    return RepMorphism(S, R, tuple(R.act(M.H.arrow(xl), e) for xl, _ in S.elements))


def psi_iso(M: MatchedPair, HV: Representation | None = None, VH: Representation | None = None) -> RepMorphism:
    """``(x, g) -> (x ▷ g, x ◁ g)`` from the cells to ``V ⊗ H``."""
    HV = rep_HV(M) if HV is None else HV
    VH = tensor(M, rep_V(M), rep_H(M)) if VH is None else VH
    return RepMorphism(HV, VH, tuple(VH.pair_index(M.left(x, g), M.right(x, g)) for x, g in M.cells))


def psi_inverse(M: MatchedPair, VH: Representation, HV: Representation) -> RepMorphism:
    """``(g, x) -> ((x⁻¹ ◁ g⁻¹)⁻¹, (x⁻¹ ▷ g⁻¹)⁻¹)``."""
    V, H = M.V, M.H
    out = []
    for g, x in VH.components:
        xi, gi = H.inv[x], V.inv[g]
        out.append(M.cell_index(H.inv[M.right(xi, gi)], V.inv[M.left(xi, gi)]))
    return RepMorphism(VH, HV, tuple(out))


def restrict(m: MatchedPairMorphism, R: Representation) -> Representation:
    """Pull back along ``(alpha, beta)``: ``h ▷ e = alpha(h) ▷ e``, grading ``beta(|e|)``."""
    S = m.source
    action = {(h, e): R.act(m.alpha[h], e) for h in range(len(S.H)) for e in range(len(R))
              if S.H.end[h] == R.p[e]}
    return Representation(S, R.elements, R.p, R.q, tuple(m.beta[g] for g in R.grading), action,
                          f"res({R.name})", None, R.components)


def reps_equal(R1: Representation, R2: Representation) -> bool:
    return (R1.elements == R2.elements and R1.p == R2.p and R1.q == R2.q
            and R1.grading == R2.grading and R1.action == R2.action)


def standard_fleet(M: MatchedPair, max_size: int = 32, max_sections: int = 4, depth: int = 2) -> list:
    """Unit, V, H, cells, cell subrepresentations, and tensor products of these.

    Only representations with at most ``max_size`` elements are kept.
    """
    base = [unit_rep(M), rep_V(M), rep_H(M), rep_HV(M)]
    for sigma in sections(M, max_sections):
        base.append(rep_H_sigma(M, sigma))
    for g in range(len(M.V)):
        base.append(rep_HP_g(M, g))
    fleet = [R for R in base if len(R) <= max_size]
    if depth >= 2:
        first = list(fleet)
        for R1 in first:
            for R2 in first:
                if len(R1) * len(R2) > 4 * max_size:
                    continue
                T = tensor(M, R1, R2)
                if 0 < len(T) <= max_size:
                    fleet.append(T)
    return fleet


def check_tensor_associativity(M: MatchedPair, E: Representation, F: Representation,
                               K: Representation) -> ValidationReport:
    """``(E ⊗ F) ⊗ K`` and ``E ⊗ (F ⊗ K)`` agree on triples, tables included."""
    rep = ValidationReport("tensor associativity")
    EF_K = tensor(M, tensor(M, E, F), K)
    E_FK = tensor(M, E, tensor(M, F, K))
    EF, FK = EF_K.factors[0], E_FK.factors[1]
    left = {}
    for k, (ef, c) in enumerate(EF_K.components):
        a, b = EF.components[ef]
        left[(a, b, c)] = k
    right = {}
    for k, (a, fk) in enumerate(E_FK.components):
        b, c = FK.components[fk]
        right[(a, b, c)] = k
    if not rep.check(set(left) == set(right), "carrier", ()):
        return rep
    H = M.H
    for t, k1 in left.items():
        k2 = right[t]
        rep.check(EF_K.p[k1] == E_FK.p[k2] and EF_K.q[k1] == E_FK.q[k2], "anchors", t)
        rep.check(EF_K.grading[k1] == E_FK.grading[k2], "grading", t)
        for x in range(len(H)):
            if H.end[x] != EF_K.p[k1]:
                continue
            i1 = EF_K.act(x, k1)
            i2 = E_FK.act(x, k2)
            ef, c = EF_K.components[i1]
            a2, fk = E_FK.components[i2]
            rep.check((*EF.components[ef], c) == (a2, *FK.components[fk]), "action", (H.arrows[x], *t))
    return rep


def check_unit_laws(M: MatchedPair, R: Representation, unit: Representation | None = None) -> ValidationReport:
    """``R ⊗ 1`` and ``1 ⊗ R`` are ``R`` via ``(e, q(e)) <-> e`` and ``(p(e), e) <-> e``."""
    rep = ValidationReport("tensor unit")
    U = unit_rep(M) if unit is None else unit
    RU, UR = tensor(M, R, U), tensor(M, U, R)
    if not rep.check(len(RU) == len(R) and len(UR) == len(R), "carrier", ()):
        return rep
    for T, proj in ((RU, lambda c: c[0]), (UR, lambda c: c[1])):
        for k, c in enumerate(T.components):
            e = proj(c)
            rep.check(T.grading[k] == R.grading[e], "grading", (R.elements[e],))
            for x in range(len(M.H)):
                if M.H.end[x] == T.p[k]:
                    rep.check(proj(T.components[T.act(x, k)]) == R.act(x, e), "action",
                              (M.H.arrows[x], R.elements[e]))
    return rep
