"""The Drinfeld double of k(V, H) and its identification with k(D(V, H)).

The dual of ``H = k(V, H)`` is realized as ``k(H, V)`` through the
transposition pairing. The double is ``H* ⊗ H`` with

    (φ ⊗ h)(φ' ⊗ h') = ⟨S(h1), φ'1⟩ φ'2 φ ⊗ h2 h' ⟨h3, φ'3⟩

modulo the ideal generated by the source/target relations. That ideal
turns out to be spanned by the basis tensors that are not *admissible*, so
the quotient is represented on admissible pairs and products are reduced by
dropping the other terms (``check_relation_ideal`` verifies this on a given
pair).
"""
from __future__ import annotations

from .doubles import double
from .hopf import Element, WeakHopfAlgebra, build_weak_hopf, duality_pairing
from .linalg import solve_sparse
from .matched import MatchedPair, dual
from .report import ValidationReport
from .rotations import canonical_double_pair


class DrinfeldDouble:
    def __init__(self, M: MatchedPair, W: WeakHopfAlgebra | None = None, Wd: WeakHopfAlgebra | None = None):
        self.pair = M
        self.W = build_weak_hopf(M) if W is None else W
        self.Wd = build_weak_hopf(dual(M)) if Wd is None else Wd
        self.perm = duality_pairing(self.W, self.Wd)          # basis of H -> dual basis element
        self.inv_perm = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            self.inv_perm[p] = i
        self.basis = [(phi, h) for phi in range(self.Wd.n) for h in range(self.W.n) if self.admissible(phi, h)]
        self.index = {b: k for k, b in enumerate(self.basis)}
        # Δ⁽²⁾ of the dual, keyed by (outer legs) -> middle legs
        self._dual_legs = []
        for phi in range(self.Wd.n):
            d: dict = {}
            for p1, p2, p3 in self.Wd.delta2_basis(phi):
                d.setdefault((p1, p3), []).append(p2)
            self._dual_legs.append(d)
        self._sweedler_cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def admissible(self, phi: int, h: int) -> bool:
        """``t(f) == l(x)`` and ``b(x ▷ g) == l(y⁻¹ ◁ f⁻¹)`` for ``φ = (f, y)``, ``h = (x, g)``."""
        M = self.pair
        V, H = M.V, M.H
        f, y = self.Wd.cells[phi]
        x, g = self.W.cells[h]
        if V.src[f] != H.src[x]:
            return False
        return V.end[M.left(x, g)] == H.src[M.right(H.inv[y], V.inv[f])]

    def label(self, k: int):
        phi, h = self.basis[k]
        return (self.Wd.label(phi), self.W.label(h))

    # ------------------------------------------------------------ products
    def _sweedler(self, h: int, phi2: int) -> list:
        """Terms ``(φ'2, h2)`` of ``⟨S(h1), φ'1⟩ φ'2 ⊗ h2 ⟨h3, φ'3⟩``."""
        key = (h, phi2)
        hit = self._sweedler_cache.get(key)
        if hit is not None:
            return hit
        W, perm, legs = self.W, self.perm, self._dual_legs[phi2]
        out = []
        for h1, h2, h3 in W.delta2_basis(h):
            for p2 in legs.get((perm[W.antipode_basis(h1)], perm[h3]), ()):
                out.append((p2, h2))
        self._sweedler_cache[key] = out
        return out

    def full_product(self, a: tuple, b: tuple) -> Element:
        """Product in ``H* ⊗ H`` of basis tensors ``a = (φ, h)`` and ``b = (φ', h')``, unreduced."""
        phi, h = a
        phi2, h2 = b
        W, Wd = self.W, self.Wd
        out: dict = {}
        for p2, k2 in self._sweedler(h, phi2):
            left = Wd.basis_mul(p2, phi)
            right = W.basis_mul(k2, h2)
            if left is not None and right is not None:
                out[(left, right)] = out.get((left, right), 0) + 1
        return Element(out)

    def reduce(self, t: Element) -> Element:
        """Image in the quotient, over admissible indices."""
        return Element.accumulate((self.index[k], v) for k, v in t if k in self.index)

    def mul_basis(self, i: int, j: int) -> Element:
        return self.reduce(self.full_product(self.basis[i], self.basis[j]))

    def mul(self, a: Element, b: Element) -> Element:
        out = Element()
        for i, u in a:
            for j, v in b:
                out = out + self.mul_basis(i, j).scale(u * v)
        return out

    def product_rows(self):
        """Yield ``(i, {j: product})`` for every admissible ``i``, sharing the Sweedler part across ``j``."""
        W, Wd = self.W, self.Wd
        by_phi: dict = {}
        for j, (phi2, h2) in enumerate(self.basis):
            by_phi.setdefault(phi2, []).append((j, h2))
        for i, (phi, h) in enumerate(self.basis):
            row: dict = {}
            for phi2, entries in by_phi.items():
                terms = []
                for p2, k2 in self._sweedler(h, phi2):
                    left = Wd.basis_mul(p2, phi)
                    if left is not None:
                        terms.append((left, k2))
                for j, h2 in entries:
                    acc: dict = {}
                    for left, k2 in terms:
                        right = W.basis_mul(k2, h2)
                        if right is not None:
                            k = self.index.get((left, right))
                            if k is not None:
                                acc[k] = acc.get(k, 0) + 1
                    if acc:
                        row[j] = Element(acc)
            yield i, row

    def unit_full(self) -> Element:
        """``ε ⊗ 1`` in ``H* ⊗ H``; ``ε`` is the unit of the dual."""
        return WeakHopfAlgebra.tensor(self.Wd.unit(), self.W.unit())

    def unit(self) -> Element:
        return self.reduce(self.unit_full())


def drinfeld_double(M: MatchedPair) -> DrinfeldDouble:
    return DrinfeldDouble(M)


# -------------------------------------------------------------- relations

def relation_elements(DD: DrinfeldDouble) -> list[Element]:
    """``φ ⊗ zh − ⟨z, ε1⟩ε2 φ ⊗ h`` (target ``z``) and ``φ ⊗ zh − ⟨z, ε2⟩ε1 φ ⊗ h`` (source ``z``)."""
    W, Wd, perm = DD.W, DD.Wd, DD.perm
    d_eps = Wd.delta(Wd.unit())

    def pair_with(z: Element, p: int):
        return sum((u for i, u in z if perm[i] == p), 0)

    coeffs = []
    for zs, leg in ((W.target_idempotents(), 0), (W.source_idempotents(), 1)):
        for z in zs:
            elt = Element.accumulate((k[1 - leg], u * pair_with(z, k[leg])) for k, u in d_eps)
            coeffs.append((z, elt))
    out = []
    for z, e_z in coeffs:
        for phi in range(Wd.n):
            left_phi = Wd.mul(e_z, Wd.e(phi))
            for h in range(W.n):
                zh = W.mul(z, W.e(h))
                first = Element.accumulate(((phi, k), u) for k, u in zh)
                second = Element.accumulate(((p, h), u) for p, u in left_phi)
                rel = first - second
                if rel:
                    out.append(rel)
    return out


def check_relation_ideal(DD: DrinfeldDouble) -> ValidationReport:
    """The relations span exactly the non-admissible basis tensors, and that span is a two-sided ideal."""
    rep = ValidationReport("double relations")
    rels = relation_elements(DD)
    nonadm = [(p, h) for p in range(DD.Wd.n) for h in range(DD.W.n) if (p, h) not in DD.index]
    for r in rels:
        bad = [k for k in r.support() if k in DD.index]
        rep.check(not bad, "relation-in-span", (bad[0] if bad else (),))
    res = solve_sparse(((r.terms, 0) for r in rels), nonadm)
    rep.check(res.rank == len(nonadm), "relations-span", (res.rank, len(nonadm)))
    allb = [(p, h) for p in range(DD.Wd.n) for h in range(DD.W.n)]
    for a in nonadm:
        for b in allb:
            for t in (DD.full_product(a, b), DD.full_product(b, a)):
                bad = [k for k in t.support() if k in DD.index]
                rep.check(not bad, "ideal", (a, b))
    return rep


def certify_double_algebra(DD: DrinfeldDouble, triple_limit: int = 64) -> ValidationReport:
    """Unit laws always; associativity on all basis triples when ``dim <= triple_limit``."""
    rep = ValidationReport(f"Drinfeld double (dim {DD.dim})")
    one = DD.unit()
    for i in range(DD.dim):
        e = Element.basis(i)
        rep.check(DD.mul(one, e) == e and DD.mul(e, one) == e, "unit", (DD.label(i),))
    if DD.dim <= triple_limit:
        table = {i: row for i, row in DD.product_rows()}

        def mul(x: Element, j: int) -> Element:
            out = Element()
            for i, u in x:
                out = out + table[i].get(j, Element()).scale(u)
            return out

        for i in range(DD.dim):
            for j in range(DD.dim):
                ij = table[i].get(j, Element())
                for k in range(DD.dim):
                    lhs = mul(ij, k)
                    rhs = Element()
                    for m, u in table[j].get(k, Element()):
                        rhs = rhs + table[i].get(m, Element()).scale(u)
                    rep.check(lhs == rhs, "associativity", (DD.label(i), DD.label(j), DD.label(k)))
    return rep


# ------------------------------------------------------------ isomorphism

def drinfeld_iso(DD: DrinfeldDouble, DM: MatchedPair | None = None) -> tuple[list[int], MatchedPair]:
    """``(f, y) ⊗ (x, g) -> ((f⁻¹, x), (g, (x ◁ g)⁻¹ (y⁻¹ ◁ f⁻¹) x))`` as cell indices of the double pair."""
    M = DD.pair
    V, H = M.V, M.H
    DM = double(M) if DM is None else DM
    images = []
    for phi, h in DD.basis:
        f, y = DD.Wd.cells[phi]
        x, g = DD.W.cells[h]
        z = H.comp[H.comp[H.inv[M.right(x, g)]][M.right(H.inv[y], V.inv[f])]][x]
        horiz = DM.H.arrow((V.arrows[V.inv[f]], H.arrows[x]))
        vert = DM.V.arrow((V.arrows[g], H.arrows[z]))
        images.append(DM.cell_index(horiz, vert))
    return images, DM


def certify_drinfeld_iso(DD: DrinfeldDouble, DM: MatchedPair | None = None,
                         WD: WeakHopfAlgebra | None = None) -> ValidationReport:
    """Bijective on bases, unital, and multiplicative on every pair of basis elements."""
    rep = ValidationReport("Drinfeld double isomorphism")
    images, DM = drinfeld_iso(DD, DM)
    WD = build_weak_hopf(DM) if WD is None else WD
    rep.check(DD.dim == WD.n, "dimension", (DD.dim, WD.n))
    rep.check(sorted(images) == list(range(WD.n)), "bijective", ())
    if not rep.ok:
        return rep
    rep.check(DD.unit().map_keys(lambda k: images[k]) == WD.unit(), "unit", ())
    for i, row in DD.product_rows():
        for j in range(DD.dim):
            lhs = row.get(j, Element()).map_keys(lambda k: images[k])
            k = WD.basis_mul(images[i], images[j])
            rep.check(lhs == (Element() if k is None else Element.basis(k)), "multiplicative",
                      (DD.label(i), DD.label(j)))
    return rep


def check_vanishing_rule(DD: DrinfeldDouble) -> ValidationReport:
    """A basis product is nonzero exactly when

    ``f' g = (x' ▷ g')(y'⁻¹ ▷ f'⁻¹)⁻¹`` and ``x y' = (y⁻¹ ◁ f⁻¹)⁻¹ (x ◁ g)``.
    """
    rep = ValidationReport("double vanishing rule")
    M = DD.pair
    V, H = M.V, M.H
    for i, row in DD.product_rows():
        phi, h = DD.basis[i]
        f, y = DD.Wd.cells[phi]
        x, g = DD.W.cells[h]
        for j in range(DD.dim):
            phi2, h2 = DD.basis[j]
            f2, y2 = DD.Wd.cells[phi2]
            x2, g2 = DD.W.cells[h2]
            fg = V.comp[f2][g]
            rhs1 = V.comp[M.left(x2, g2)][V.inv[M.left(H.inv[y2], V.inv[f2])]]
            xy = H.comp[x][y2]
            rhs2 = H.comp[H.inv[M.right(H.inv[y], V.inv[f])]][M.right(x, g)]
            cond = fg != -1 and fg == rhs1 and xy != -1 and xy == rhs2
            rep.check(cond == (j in row), "vanishing", (DD.label(i), DD.label(j)))
    return rep


def canonical_r_pullback(DD: DrinfeldDouble, DM: MatchedPair | None = None, WD: WeakHopfAlgebra | None = None):
    """The R-matrix of the canonical rotation pair on the double pair, pulled back along the isomorphism."""
    from .hopf import r_matrix
    images, DM = drinfeld_iso(DD, DM)
    WD = build_weak_hopf(DM) if WD is None else WD
    back = {c: k for k, c in enumerate(images)}
    R = r_matrix(WD, canonical_double_pair(DD.pair, DM))
    return R.map_keys(lambda key: (back[key[0]], back[key[1]])), R


def dual_basis_element(DD: DrinfeldDouble) -> Element:
    """``Σ_a (ε ⊗ a) ⊗ (a* ⊗ 1)`` over the basis of H, each leg reduced to the quotient."""
    one_d, one = DD.Wd.unit(), DD.W.unit()
    out: dict = {}
    for a in range(DD.W.n):
        left = DD.reduce(Element.accumulate(((p, a), u) for p, u in one_d))
        right = DD.reduce(Element.accumulate(((DD.perm[a], h), u) for h, u in one))
        for i, u in left:
            for j, v in right:
                out[(i, j)] = out.get((i, j), 0) + u * v
    return Element(out)


def check_transported_r(DD: DrinfeldDouble, DM: MatchedPair | None = None,
                        WD: WeakHopfAlgebra | None = None) -> ValidationReport:
    """The canonical rotation pair's R, pulled back, has the dual-basis element as its weak inverse."""
    from .hopf import solve_r_bar
    rep = ValidationReport("transported R-matrix")
    images, DM = drinfeld_iso(DD, DM)
    WD = build_weak_hopf(DM) if WD is None else WD
    back = {c: k for k, c in enumerate(images)}
    pulled, R = canonical_r_pullback(DD, DM, WD)
    R_bar, res = solve_r_bar(WD, R)
    rep.check(res.unique, "inverse-unique", ())
    pulled_bar = R_bar.map_keys(lambda key: (back[key[0]], back[key[1]]))
    rep.check(pulled_bar == dual_basis_element(DD), "dual-basis-is-inverse", ())
    return rep
