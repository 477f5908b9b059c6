import pytest
from hypothesis import given, settings, strategies as st

from matchedpairs import fleet
from matchedpairs.doubles import identity_morphism, inclusion_morphism, initial_morphism, terminal_morphism as pair_terminal
from matchedpairs.reps import (RepMorphism, Representation, check_tensor_associativity, check_unit_laws,
                               enumerate_rep_morphisms, expansion, identity_rep_morphism, psi_inverse, psi_iso,
                               rep_H, rep_H_sigma, rep_HP_g, rep_HV, rep_V, reps_equal, restrict, sections,
                               standard_fleet, tensor, terminal_morphism, unit_rep, validate_rep_morphism,
                               validate_representation)

from conftest import ALL


@pytest.mark.parametrize("name", ALL)
def test_standard_fleet_validates(name):
    M = fleet.get(name)
    for R in standard_fleet(M):
        rep = validate_representation(M, R)
        assert rep.ok, (R.name, str(rep))


def test_named_representations():
    M = fleet.get("MXY22")
    assert len(rep_HV(M)) == 16
    H = rep_H(M)
    assert all(H.grading[i] == M.V.ident[M.H.src[i]] for i in range(len(M.H)))
    U = unit_rep(M)
    assert validate_representation(M, U).ok
    I = fleet.get("initial3")
    VI = rep_V(I)
    assert VI.elements == I.V.arrows and VI.grading == tuple(range(len(I.V)))


def test_corrupted_grading_is_reported():
    M = fleet.get("S3")
    R = rep_HV(M)
    grading = list(R.grading)
    grading[0] = (grading[0] + 1) % len(M.V)
    bad = Representation(M, R.elements, R.p, R.q, tuple(grading), R.action, "bad")
    rep = validate_representation(M, bad)
    assert not rep.ok and rep.violations[0].witness


def test_tensor_grading_is_product():
    M = fleet.get("MXY22")
    V = rep_V(M)
    VV = tensor(M, V, V)
    for (i, j), g in zip(VV.components, VV.grading):
        assert g == M.V.comp[V.grading[i]][V.grading[j]]


@pytest.mark.parametrize("name", ALL)
def test_tensor_is_strictly_associative_and_unital(name):
    M = fleet.get(name)
    fl = standard_fleet(M, max_size=16)
    base = fl[:5]
    for E in base:
        assert check_unit_laws(M, E).ok
        for F in base:
            for K in base:
                if len(E) * len(F) * len(K) <= 4096:
                    rep = check_tensor_associativity(M, E, F, K)
                    assert rep.ok, str(rep)


def test_associativity_example_from_sections():
    M = fleet.get("MXY22")
    sigma0 = sections(M, 1)[0]
    Hs, V = rep_H_sigma(M, sigma0), rep_V(M)
    assert check_tensor_associativity(M, Hs, V, V).ok


@pytest.mark.parametrize("name", ALL)
def test_terminal_morphism_is_unique(name):
    M = fleet.get(name)
    VR = rep_V(M)
    for R in standard_fleet(M, max_size=16)[:8]:
        t = terminal_morphism(R, VR)
        assert validate_rep_morphism(t).ok
        found = list(enumerate_rep_morphisms(R, VR))
        assert found == [t.fmap]
    assert terminal_morphism(VR, VR).fmap == tuple(range(len(VR)))
    HV = rep_HV(M)
    assert terminal_morphism(HV, VR).fmap == tuple(M.left(x, g) for x, g in M.cells)


@pytest.mark.parametrize("name", ALL)
def test_expansion_exists_and_is_unique(name):
    M = fleet.get(name)
    R = rep_HV(M)
    for e in range(len(R)):
        S = rep_HP_g(M, R.grading[e])
        m = expansion(R, e, S)
        assert validate_rep_morphism(m).ok
        seed = S.index((M.H.arrows[M.H.ident[R.p[e]]], M.V.arrows[R.grading[e]]))
        assert m(seed) == e
        assert len(list(enumerate_rep_morphisms(S, R, fixed={seed: e}))) == 1


def test_expansion_is_injective_for_free_elements():
    M = fleet.get("S3")
    R = rep_HV(M)
    # H acts freely on the cells by left multiplication
    for e in range(len(R)):
        m = expansion(R, e)
        assert len(set(m.fmap)) == len(m.fmap)


@pytest.mark.parametrize("name", ALL)
def test_psi_is_an_isomorphism(name):
    M = fleet.get(name)
    psi = psi_iso(M)
    inv = psi_inverse(M, psi.target, psi.source)
    assert validate_rep_morphism(psi).ok and validate_rep_morphism(inv).ok
    assert psi.is_bijective()
    assert psi.then(inv).fmap == tuple(range(len(psi.source)))
    assert inv.then(psi).fmap == tuple(range(len(psi.target)))


@pytest.mark.parametrize("name", ALL)
def test_restriction(name):
    M = fleet.get(name)
    fl = standard_fleet(M, max_size=16)[:6]
    ident = identity_morphism(M)
    init = initial_morphism(M)
    for R in fl:
        assert reps_equal(restrict(ident, R), R)
        F = restrict(init, R)
        assert validate_representation(init.source, F).ok
        assert (F.elements, F.p, F.q) == (R.elements, R.p, R.q)
        # the initial pair has only identity horizontal arrows, so the action is trivial
        assert all(v == e for (x, e), v in F.action.items())


def test_restriction_along_inclusion_into_double():
    from matchedpairs.doubles import double
    M = fleet.get("MXY22")
    D = double(M)
    inc = inclusion_morphism(identity_morphism(M), D)
    for R in standard_fleet(D, max_size=16)[:6]:
        assert validate_representation(M, restrict(inc, R)).ok


def test_trivial_representations_are_fixed_by_restriction_from_terminal():
    M = fleet.get("S3")
    term = pair_terminal(M)
    U = unit_rep(term.target)
    res = restrict(term, U)
    assert validate_representation(M, res).ok
    assert reps_equal(res, Representation(M, U.elements, U.p, U.q, res.grading, res.action, res.name))


def test_identity_rep_morphism():
    M = fleet.get("S3")
    R = rep_HV(M)
    m = identity_rep_morphism(R)
    assert validate_rep_morphism(m).ok and m.is_bijective()


def test_non_intertwiner_is_reported():
    M = fleet.get("S3")
    R = rep_HV(M)
    fib = R.fibers()
    # send every element to the first element of its fiber: grading-preserving, but not equivariant
    collapse = tuple(fib[R.grading[e]][0] for e in range(len(R)))
    rep = validate_rep_morphism(RepMorphism(R, R, collapse))
    assert rep.laws() == {"intertwining"}


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["S3", "MXY22", "conj_coarse2", "semi_h_S3", "C6"]), st.data())
def test_random_tensor_triples_associate(name, data):
    M = fleet.get(name)
    fl = standard_fleet(M, max_size=12)
    E, F, K = (data.draw(st.sampled_from(fl)) for _ in range(3))
    assert check_tensor_associativity(M, E, F, K).ok
