import itertools

import pytest

from matchedpairs import fleet
from matchedpairs.doubles import (MatchedPairMorphism, as_pair_isomorphism, compose_morphisms, double,
                                  dual_morphism, enumerate_morphisms, functoriality_maps, gendouble_dual_iso,
                                  generalized_double, identity_morphism, inclusion_morphism, initial_morphism,
                                  is_bijective, morphisms_equal, morphisms_mutually_inverse, pullback_pair,
                                  terminal_morphism, validate_morphism)
from matchedpairs.groupoid import coarse, symmetric_group
from matchedpairs.matched import (check_derived_identities, check_pair_isomorphism, coopposite_pair, dual,
                                  find_pair_isomorphism, make_conjugation_pair, make_initial, make_MXY,
                                  make_semi, make_terminal, pairs_equal, relabel_pair, validate_matched_pair)

from conftest import ALL, SMALL

MORPHISM_KINDS = ["identity", "initial", "terminal", "initial;terminal"]


@pytest.mark.parametrize("name", ALL)
def test_standard_morphisms_validate(name):
    for kind, m in fleet.standard_morphisms(fleet.get(name)).items():
        assert validate_morphism(m).ok, kind


@pytest.mark.parametrize("name", [n for n in ALL if n != "conj_S3"])
@pytest.mark.parametrize("kind", MORPHISM_KINDS)
def test_generalized_double_is_a_matched_pair(name, kind):
    m = fleet.standard_morphisms(fleet.get(name))[kind]
    D = generalized_double(m)
    rep = validate_matched_pair(D)
    assert rep.ok, str(rep)
    assert check_derived_identities(D).ok


def test_generalized_double_of_the_largest_fleet_pair():
    M = fleet.get("conj_S3")
    for kind in MORPHISM_KINDS:
        D = generalized_double(fleet.standard_morphisms(M)[kind])
        assert validate_matched_pair(D).ok and check_derived_identities(D).ok


def test_double_of_initial_and_terminal_is_terminal():
    for P in ("A", "AB", "ABC"):
        DI = relabel_pair(double(make_initial(P)), lambda o: o, lambda a: a[1], lambda a: a[0])
        assert pairs_equal(DI, make_terminal(P))
        DT = relabel_pair(double(make_terminal(P)), lambda o: o, lambda a: a[0], lambda a: a[1])
        assert pairs_equal(DT, make_terminal(P))


def test_double_of_mxy_is_terminal_over_four_points():
    D = double(make_MXY([0, 1], ["a", "b"]))
    T = make_terminal([(x, y) for x in (0, 1) for y in ("a", "b")])
    assert find_pair_isomorphism(D, T) is not None


@pytest.mark.parametrize("H", [coarse("AB"), symmetric_group(3)], ids=["coarse2", "S3"])
def test_double_of_horizontal_semi_pair_is_coopposite_conjugation(H):
    D = double(make_semi(H, "horizontal"))
    C = coopposite_pair(make_conjugation_pair(H))
    assert find_pair_isomorphism(D, C) is not None


@pytest.mark.parametrize("name", SMALL)
def test_initial_double_is_dual_and_terminal_double_is_original(name):
    M = fleet.get(name)
    assert find_pair_isomorphism(generalized_double(initial_morphism(M)), dual(M)) is not None
    assert find_pair_isomorphism(generalized_double(terminal_morphism(M)), M) is not None


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("kind", ["identity", "initial", "terminal"])
def test_gendouble_dual_isomorphisms_are_mutually_inverse(name, kind):
    m = fleet.standard_morphisms(fleet.get(name))[kind]
    f = gendouble_dual_iso(m)
    g = gendouble_dual_iso(dual_morphism(m), f.target, f.source)
    assert validate_morphism(f).ok and validate_morphism(g).ok
    assert is_bijective(f) and is_bijective(g)
    assert morphisms_mutually_inverse(f, g)
    assert check_pair_isomorphism(f.source, f.target, as_pair_isomorphism(f)).ok


def test_composition_laws():
    M = fleet.get("MXY22")
    ident = identity_morphism(M)
    term = terminal_morphism(M)
    assert morphisms_equal(compose_morphisms(term, ident), term)
    selfmaps = list(enumerate_morphisms(M, M))
    assert selfmaps
    for a, b, c in itertools.islice(itertools.product(selfmaps, repeat=3), 200):
        assert morphisms_equal(compose_morphisms(c, compose_morphisms(b, a)),
                               compose_morphisms(compose_morphisms(c, b), a))


@pytest.mark.parametrize("P", ["A", "AB", "ABC"])
def test_initial_to_terminal_morphism_is_unique(P):
    I, T = make_initial(P), make_terminal(P)
    found = list(enumerate_morphisms(I, T))
    assert len(found) == 1
    assert morphisms_equal(found[0], compose_morphisms(terminal_morphism(I, T), initial_morphism(I, I)))


def test_pullback_pairs():
    M = fleet.get("S3")
    assert pairs_equal(pullback_pair(identity_morphism(M)), M)
    for m in fleet.standard_morphisms(M).values():
        assert validate_matched_pair(pullback_pair(m)).ok


@pytest.mark.parametrize("name", SMALL)
def test_inclusion_morphism(name):
    M = fleet.get(name)
    for kind in ("identity", "initial"):
        m = fleet.standard_morphisms(M)[kind]
        inc = inclusion_morphism(m)
        assert validate_morphism(inc).ok


def _triangles(M):
    """Commuting triangles built from the standard morphisms into and out of M."""
    init, term, ident = initial_morphism(M), terminal_morphism(M), identity_morphism(M)
    I = init.source
    yield ident, ident, ident                                   # degenerate
    yield init, init, ident                                     # apex M, left leg initial
    yield init, compose_morphisms(term, init), term             # I -> M -> T
    yield ident, term, term
    yield identity_morphism(I), init, init


@pytest.mark.parametrize("name", SMALL)
def test_functoriality_maps_are_morphisms(name):
    M = fleet.get(name)
    for ab, pp, co in _triangles(M):
        s1, s2 = functoriality_maps(ab, pp, co)
        assert validate_morphism(s1).ok and validate_morphism(s2).ok


def test_degenerate_triangle_gives_identities():
    M = fleet.get("MXY22")
    ident = identity_morphism(M)
    s1, s2 = functoriality_maps(ident, ident, ident)
    for s in (s1, s2):
        assert s.alpha == tuple(range(len(s.target.H))) and s.beta == tuple(range(len(s.source.V)))


def test_non_commuting_triangle_is_rejected():
    M = fleet.get("S3")
    selfmaps = list(enumerate_morphisms(M, M))
    ident = identity_morphism(M)
    other = next(m for m in selfmaps if not morphisms_equal(m, ident))
    with pytest.raises(ValueError):
        functoriality_maps(ident, other, ident)


def test_corrupted_morphism_is_reported():
    M = fleet.get("S3")
    m = identity_morphism(M)
    bad = MatchedPairMorphism(M, M, (1, 1), m.beta)
    assert not validate_morphism(bad).ok
