"""One check per acceptance criterion; each prints a PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for the lines alone, or pytest for the
same checks with the lines repeated in the terminal summary.
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from matchedpairs import fleet
from matchedpairs.diagonal import canonical_factorization, diagonal_groupoid, matched_pair_from_factorization
from matchedpairs.doubles import (as_pair_isomorphism, compose_morphisms, double, dual_morphism,
                                  functoriality_maps, gendouble_dual_iso, generalized_double, identity_morphism,
                                  initial_morphism, is_bijective, morphisms_mutually_inverse, terminal_morphism,
                                  validate_morphism)
from matchedpairs.drinfeld import DrinfeldDouble, certify_drinfeld_iso, check_vanishing_rule
from matchedpairs.groupoid import coarse, symmetric_group
from matchedpairs.hopf import (build_weak_hopf, certify_drinfeld_element, certify_r_matrix, certify_weak_hopf,
                               check_linearization_monoidal, check_phi_identities, check_regular_module,
                               drinfeld_element_formula, r_matrix)
from matchedpairs.matched import (check_derived_identities, check_pair_isomorphism, coopposite_pair, dual,
                                  find_pair_isomorphism, make_conjugation_pair, make_initial, make_MXY,
                                  make_semi, make_terminal, pairs_equal, relabel_pair, validate_matched_pair)
from matchedpairs.reps import (check_tensor_associativity, check_unit_laws, enumerate_rep_morphisms, expansion,
                               psi_inverse, psi_iso, rep_HP_g, rep_HV, rep_V, standard_fleet, tensor,
                               terminal_morphism as rep_terminal, validate_rep_morphism)
from matchedpairs.rotations import (brute_force_rotations, canonical_double_pair, certify_braiding,
                                    check_rotation_pair, default_certification_fleet, enumerate_rotation_pairs,
                                    enumerate_rotations)

from test_rotations import FROZEN_COUNTS, FROZEN_DOUBLE_COUNTS

ALL = list(fleet.BUILDERS)
SMALL = list(fleet.SMALL)
RESULTS: dict[int, bool] = {}


class Failures(list):
    def expect(self, cond, what):
        if not cond:
            self.append(what)


def criterion_1(out: Failures):
    for name in ALL:
        M = fleet.get(name)
        out.expect(validate_matched_pair(M).ok, f"{name}: axioms")
        out.expect(check_derived_identities(M).ok, f"{name}: derived identities")


def criterion_2(out: Failures):
    for name in ALL:
        M = fleet.get(name)
        back = matched_pair_from_factorization(canonical_factorization(M, diagonal_groupoid(M)))
        out.expect(pairs_equal(back, M), f"{name}: round trip")
    M = fleet.s3_pair()
    D = diagonal_groupoid(M)
    S = symmetric_group(3)
    to_s3 = [S.comp[S.arrow(f)][S.arrow(y)] for f, y in D.arrows]
    out.expect(sorted(to_s3) == list(range(6)), "S3 diagonal: bijection")
    table_ok = all(to_s3[D.comp[a][b]] == S.comp[to_s3[a]][to_s3[b]] for a in range(6) for b in range(6))
    out.expect(table_ok, "S3 diagonal: multiplication table")


def criterion_3(out: Failures):
    for P in ("A", "AB", "ABC"):
        DI = relabel_pair(double(make_initial(P)), lambda o: o, lambda a: a[1], lambda a: a[0])
        out.expect(pairs_equal(DI, make_terminal(P)), f"double(initial {P})")
        DT = relabel_pair(double(make_terminal(P)), lambda o: o, lambda a: a[0], lambda a: a[1])
        out.expect(pairs_equal(DT, make_terminal(P)), f"double(terminal {P})")
    D = double(make_MXY([0, 1], ["a", "b"]))
    T = make_terminal([(x, y) for x in (0, 1) for y in ("a", "b")])
    out.expect(find_pair_isomorphism(D, T) is not None, "double(M(2,2))")
    for label, H in (("coarse2", coarse("AB")), ("S3", symmetric_group(3))):
        C = coopposite_pair(make_conjugation_pair(H))
        out.expect(find_pair_isomorphism(double(make_semi(H, "horizontal")), C) is not None, f"easy double {label}")
    for name in ALL:
        M = fleet.get(name)
        out.expect(find_pair_isomorphism(generalized_double(initial_morphism(M)), dual(M)) is not None,
                   f"{name}: D(initial) vs dual")
        for kind in ("identity", "initial", "terminal"):
            m = fleet.standard_morphisms(M)[kind]
            f = gendouble_dual_iso(m)
            g = gendouble_dual_iso(dual_morphism(m), f.target, f.source)
            ok = (validate_morphism(f).ok and validate_morphism(g).ok and is_bijective(f)
                  and morphisms_mutually_inverse(f, g)
                  and check_pair_isomorphism(f.source, f.target, as_pair_isomorphism(f)).ok)
            out.expect(ok, f"{name}/{kind}: gendouble-dual")


def criterion_4(out: Failures):
    for name in ALL:
        M = fleet.get(name)
        for kind, m in fleet.standard_morphisms(M).items():
            D = generalized_double(m)
            out.expect(validate_matched_pair(D).ok and check_derived_identities(D).ok, f"{name}/{kind}")
        if name not in SMALL:
            continue
        init, term, ident = initial_morphism(M), terminal_morphism(M), identity_morphism(M)
        triangles = [(ident, ident, ident), (init, init, ident), (init, compose_morphisms(term, init), term),
                     (ident, term, term)]
        for k, (ab, pp, co) in enumerate(triangles):
            for s in functoriality_maps(ab, pp, co):
                out.expect(validate_morphism(s).ok, f"{name}: triangle {k}")
                out.expect(validate_matched_pair(s.source).ok and validate_matched_pair(s.target).ok,
                           f"{name}: triangle {k} doubles")


def criterion_5(out: Failures):
    for name in ALL:
        M = fleet.get(name)
        fl = standard_fleet(M, max_size=16)
        base = fl[:5]
        for E in base:
            out.expect(check_unit_laws(M, E).ok, f"{name}: unit laws {E.name}")
            for F in base:
                for K in base:
                    if len(E) * len(F) * len(K) <= 4096:
                        out.expect(check_tensor_associativity(M, E, F, K).ok, f"{name}: associativity")
        VR = rep_V(M)
        for R in fl[:8]:
            out.expect(list(enumerate_rep_morphisms(R, VR)) == [rep_terminal(R, VR).fmap], f"{name}: terminal")
        R = rep_HV(M)
        for e in range(len(R)):
            S = rep_HP_g(M, R.grading[e])
            seed = S.index((M.H.arrows[M.H.ident[R.p[e]]], M.V.arrows[R.grading[e]]))
            m = expansion(R, e, S)
            unique = list(enumerate_rep_morphisms(S, R, fixed={seed: e})) == [m.fmap]
            out.expect(unique and validate_rep_morphism(m).ok, f"{name}: expansion at {e}")
        psi = psi_iso(M)
        inv = psi_inverse(M, psi.target, psi.source)
        ok = (validate_rep_morphism(psi).ok and validate_rep_morphism(inv).ok and psi.is_bijective()
              and psi.then(inv).fmap == tuple(range(len(psi.source))))
        out.expect(ok, f"{name}: psi")


def criterion_6(out: Failures):
    for name, counts in FROZEN_COUNTS.items():
        M = fleet.get(name)
        rots = list(enumerate_rotations(M))
        if name in SMALL:
            out.expect(sorted(rots) == sorted(brute_force_rotations(M)), f"{name}: brute force")
        pairs = enumerate_rotation_pairs(M, rots)
        out.expect((len(rots), len(pairs)) == counts, f"{name}: counts")
        for p in pairs:
            out.expect(check_rotation_pair(M, p.xi, p.eta).ok, f"{name}: rotation pair identities")
            if name in SMALL:
                out.expect(certify_braiding(M, p).ok, f"{name}: braiding")
    for name, counts in FROZEN_DOUBLE_COUNTS.items():
        M = fleet.get(name)
        DM = double(M)
        pairs = enumerate_rotation_pairs(DM)
        out.expect(len(pairs) == counts[1], f"D{name}: counts")
        can = canonical_double_pair(M, DM)
        out.expect(can in pairs, f"D{name}: canonical pair found")
        if len(DM.cells) <= 36:
            out.expect(certify_braiding(DM, can).ok, f"D{name}: canonical braiding")


def criterion_7(out: Failures):
    for name in ALL:
        W = build_weak_hopf(fleet.get(name))
        out.expect(certify_weak_hopf(W).ok, f"{name}: weak Hopf axioms")
        out.expect(all(W.antipode_basis(W.antipode_basis(i)) == i for i in range(W.n)), f"{name}: S^2")
    W = build_weak_hopf(fleet.get("initial3"))
    out.expect(W.n == 9, "initial3 dimension")
    out.expect(all(W.basis_mul(i, j) == (i if i == j else None) for i in range(9) for j in range(9)),
               "initial3 orthogonal idempotents")
    W = build_weak_hopf(fleet.get("terminal3"))
    out.expect(W.n == 9, "terminal3 dimension")
    # the basis cell with top arrow (P, Q) is the matrix unit e_PQ
    unit = [W.label(i)[0] for i in range(9)]
    for i in range(9):
        for j in range(9):
            (p, q), (q2, r) = unit[i], unit[j]
            k = W.basis_mul(i, j)
            expect = unit.index((p, r)) if q == q2 else None
            out.expect(k == expect, f"terminal3 matrix units {unit[i]} {unit[j]}")


def _rotation_cases():
    for name in ALL:
        M = fleet.get(name)
        for p in enumerate_rotation_pairs(M):
            yield name, M, p
    for name in ("MXY22", "S3", "C6", "semi_h_S3"):
        M = fleet.get(name)
        DM = double(M)
        for p in enumerate_rotation_pairs(DM):
            yield f"D{name}", DM, p


def criterion_8(out: Failures):
    for name, M, p in _rotation_cases():
        W = build_weak_hopf(M)
        R = r_matrix(W, p)
        out.expect(certify_r_matrix(W, R).ok, f"{name}: R-matrix")
        out.expect(certify_drinfeld_element(W, p, R, powers=range(-2, 4)).ok, f"{name}: Drinfeld element")
        out.expect(check_phi_identities(M, p).ok, f"{name}: phi")
        u = drinfeld_element_formula(W, p)
        power = W.unit()
        for n in range(1, 4):
            power = W.mul(power, u)
            out.expect(drinfeld_element_formula(W, p, n) == power, f"{name}: u^{n}")


def criterion_9(out: Failures):
    for name in ALL:
        M = fleet.get(name)
        DD = DrinfeldDouble(M)
        out.expect(DD.dim == len(double(M).cells), f"{name}: admissible count")
        out.expect(certify_drinfeld_iso(DD).ok, f"{name}: isomorphism")
        out.expect(check_vanishing_rule(DD).ok, f"{name}: vanishing rule")


def criterion_10(out: Failures):
    for name in ALL:
        M = fleet.get(name)
        W = build_weak_hopf(M)
        reps = default_certification_fleet(M)[:6]
        for A in reps:
            for B in reps:
                if len(A) * len(B) <= 1296:
                    out.expect(check_linearization_monoidal(W, A, B, tensor(M, A, B)).ok,
                               f"{name}: Lin({A.name} ⊗ {B.name})")
        out.expect(check_regular_module(W, rep_HV(M)), f"{name}: regular module")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def run_criterion(n: int) -> Failures:
    out = Failures()
    CRITERIA[n](out)
    RESULTS[n] = not out
    status = "PASS" if not out else f"FAIL ({len(out)}: {out[0]})"
    print(f"criterion {n}: {status}", flush=True)
    return out


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    failures = run_criterion(n)
    assert not failures, failures[:5]


if __name__ == "__main__":
    bad = [n for n in sorted(CRITERIA) if run_criterion(n)]
    sys.exit(1 if bad else 0)
