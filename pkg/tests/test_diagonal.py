import pytest

from matchedpairs import fleet
from matchedpairs.diagonal import (canonical_factorization, check_universal_diagonal, diagonal_embeddings,
                                   diagonal_groupoid, factorization, matched_pair_from_factorization,
                                   semidirect_product, semidirect_projection, split_reconstruction)
from matchedpairs.groupoid import (GroupoidMorphism, coarse, cyclic_group, discrete, find_groupoid_isomorphism,
                                   isotropy_bundle, symmetric_group, validate_groupoid,
                                   validate_groupoid_morphism)
from matchedpairs.matched import find_pair_isomorphism, make_initial, make_semi, pairs_equal

from conftest import ALL


@pytest.mark.parametrize("name", ALL)
def test_factorization_round_trip(name):
    M = fleet.get(name)
    D = diagonal_groupoid(M)
    assert validate_groupoid(D).ok
    assert len(D) == sum(1 for f in range(len(M.V)) for y in range(len(M.H)) if M.V.end[f] == M.H.src[y])
    assert pairs_equal(matched_pair_from_factorization(canonical_factorization(M, D)), M)


@pytest.mark.parametrize("name", ALL)
def test_embeddings_are_injective_morphisms(name):
    M = fleet.get(name)
    ev, eh = diagonal_embeddings(M)
    for m in (ev, eh):
        assert validate_groupoid_morphism(m).ok
        assert len(set(m.amap)) == len(m.amap)


def test_s3_diagonal_is_s3():
    M = fleet.s3_pair()
    D = diagonal_groupoid(M)
    S = symmetric_group(3)
    # (f, y) corresponds to the product f y in S3
    to_s3 = [S.comp[S.arrow(f)][S.arrow(y)] for f, y in D.arrows]
    assert sorted(to_s3) == list(range(6))
    for a in range(6):
        for b in range(6):
            assert to_s3[D.comp[a][b]] == S.comp[to_s3[a]][to_s3[b]]


def test_s3_factorization_recovers_group_pair():
    S = symmetric_group(3)
    F = factorization(S, [S.arrow(a) for a in fleet.S3_ROTATIONS], [S.arrow(a) for a in fleet.S3_TRANSPOSITION])
    assert pairs_equal(matched_pair_from_factorization(F), fleet.s3_pair())


def test_non_exact_factorization_raises():
    S = symmetric_group(3)
    with pytest.raises(ValueError):
        factorization(S, [S.arrow(a) for a in fleet.S3_ROTATIONS], [S.arrow(a) for a in fleet.S3_ROTATIONS])


def test_small_diagonals():
    I = make_initial("ABC")
    assert find_groupoid_isomorphism(diagonal_groupoid(I), coarse("ABC")) is not None
    G = coarse("PQ")
    assert find_groupoid_isomorphism(diagonal_groupoid(make_semi(G, "vertical")), G) is not None
    F = factorization(G, range(len(G)), G.ident)
    assert find_pair_isomorphism(matched_pair_from_factorization(F), make_semi(G, "vertical")) is not None


def test_semidirect_c2_on_c3_is_s3():
    G = cyclic_group(2)
    N = isotropy_bundle(cyclic_group(3))
    SD = semidirect_product(G, N, lambda n, g: (-n) % 3 if g else n)
    assert validate_groupoid(SD).ok and len(SD) == 6
    assert find_groupoid_isomorphism(SD, symmetric_group(3)) is not None
    trivial = semidirect_product(coarse("PQ"), discrete("PQ"), lambda n, g: g[1])
    assert find_groupoid_isomorphism(trivial, coarse("PQ")) is not None
    proj, sec = semidirect_projection(G, N, SD)
    assert validate_groupoid_morphism(proj).ok and validate_groupoid_morphism(sec).ok
    assert sec.then(proj).amap == tuple(range(len(G)))


def test_split_reconstruction():
    S = symmetric_group(3)
    C2 = cyclic_group(2)
    # sign map S3 -> C2 with section 1 -> (1 0 2)
    sign = GroupoidMorphism(S, C2, tuple(0 if a in fleet.S3_ROTATIONS else 1 for a in S.arrows))
    section = GroupoidMorphism(C2, S, (S.arrow((0, 1, 2)), S.arrow((1, 0, 2))))
    assert validate_groupoid_morphism(sign).ok and validate_groupoid_morphism(section).ok
    SD, comparison = split_reconstruction(sign, section)
    assert validate_groupoid_morphism(comparison).ok
    assert sorted(comparison.amap) == list(range(6))


@pytest.mark.parametrize("name", ["S3", "MXY22", "conj_coarse2", "initial2", "semi_h_S3"])
def test_universal_property_of_diagonal(name):
    M = fleet.get(name)
    D = diagonal_groupoid(M)
    ev, eh = diagonal_embeddings(M, D)
    assert check_universal_diagonal(M, D, eh, ev).ok


def test_universal_property_fails_for_non_commuting_cells():
    M = fleet.s3_pair()
    S = symmetric_group(3)
    # V = C3 is normal, so H acts on it by conjugation; a trivial alpha cannot match
    alpha = GroupoidMorphism(M.H, S, tuple(S.ident[0] for _ in M.H.arrows))
    beta = GroupoidMorphism(M.V, S, tuple(S.arrow(a) for a in M.V.arrows))
    rep = check_universal_diagonal(M, S, alpha, beta)
    assert "commuting-cell" in rep.laws()
