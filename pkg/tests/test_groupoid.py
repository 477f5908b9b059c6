from hypothesis import given, settings, strategies as st

from matchedpairs.groupoid import (UNDEFINED, FiniteGroupoid, check_restricted_product_universal, coarse,
                                   cyclic_group, discrete, from_tables, generated_subgroupoid, groupoids_equal,
                                   identity_morphism, is_group_bundle, isotropy_bundle, kernel, opposite,
                                   restricted_product, symmetric_group, validate_groupoid)


def corrupt(G: FiniteGroupoid, f: int, g: int, value: int) -> FiniteGroupoid:
    comp = [list(row) for row in G.comp]
    comp[f][g] = value
    return FiniteGroupoid(G.objects, G.arrows, G.src, G.end, tuple(map(tuple, comp)), G.ident, G.inv)


def test_discrete_and_coarse_sizes():
    assert len(discrete(["P"])) == 1
    D3 = discrete("PQR")
    assert len(D3) == 3 and all(D3.comp[a][a] == a for a in range(3))
    C2 = coarse("PQ")
    assert len(C2) == 4
    assert C2.arrows[C2.inv[C2.arrow(("P", "Q"))]] == ("Q", "P")
    assert len(coarse("PQR")) == 9
    for G in (discrete("PQR"), coarse("PQ"), coarse("PQR"), symmetric_group(3), cyclic_group(6)):
        assert validate_groupoid(G).ok


def test_corrupted_coarse_composition_is_reported_at_the_witness():
    G = coarse("PQ")
    pq, qp = G.arrow(("P", "Q")), G.arrow(("Q", "P"))
    bad = corrupt(G, pq, qp, pq)
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert rep.laws() & {"source", "end", "inverse", "unit", "associativity"}
    assert any(("P", "Q") in v.witness for v in rep.violations)


def test_opposite():
    D = discrete("PQ")
    assert groupoids_equal(opposite(D), D)
    C = coarse("PQ")
    assert groupoids_equal(opposite(opposite(C)), C)
    S = symmetric_group(3)
    Sop = opposite(S)
    for f in range(6):
        for g in range(6):
            assert Sop.comp[f][g] == S.comp[g][f]


def test_restricted_product_examples():
    G = coarse("PQ")
    iso = restricted_product(G, discrete("PQ"))
    assert len(iso) == len(isotropy_bundle(G)) == 2
    assert len(restricted_product(coarse("PQ"), coarse("PQ"))) == 4
    DD = restricted_product(discrete("PQR"), discrete("PQR"))
    assert len(DD) == 3 and validate_groupoid(DD).ok


def test_restricted_product_universal_property():
    for F, G, K in [
        (coarse("PQ"), coarse("PQ"), coarse("PQ")),
        (discrete("PQ"), coarse("PQ"), discrete("PQ")),
        (coarse("PQR"), coarse("PQR"), discrete("PQR")),
        (cyclic_group(2), cyclic_group(2), cyclic_group(3)),
    ]:
        assert check_restricted_product_universal(F, G, K).ok


def test_kernels_and_bundles():
    C = coarse("PQ")
    assert len(kernel(identity_morphism(C))) == 2
    assert is_group_bundle(discrete("PQ"))
    assert not is_group_bundle(C)
    assert is_group_bundle(isotropy_bundle(symmetric_group(3)))
    assert is_group_bundle(isotropy_bundle(C))


def test_generated_subgroupoid_of_s3():
    S = symmetric_group(3)
    rot = generated_subgroupoid(S, [S.arrow((1, 2, 0))])
    assert len(rot) == 3 and validate_groupoid(rot).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=9))
def test_cyclic_groups_validate(n):
    G = cyclic_group(n)
    assert validate_groupoid(G).ok
    assert len(G) == n


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.data())
def test_random_corruption_of_coarse_is_detected(n, data):
    G = coarse([chr(ord("A") + i) for i in range(n)])
    pairs = [(f, g) for f in range(len(G)) for g in range(len(G)) if G.comp[f][g] != UNDEFINED]
    f, g = data.draw(st.sampled_from(pairs))
    value = data.draw(st.sampled_from([a for a in range(len(G)) if a != G.comp[f][g]] or [UNDEFINED]))
    assert not validate_groupoid(corrupt(G, f, g, value)).ok


def test_from_tables_infers_units():
    G = from_tables(["*"], ["e", "a"], [0, 0], [0, 0], [[0, 1], [1, 0]])
    assert G.ident == (0,) and G.inv == (0, 1)
    assert validate_groupoid(G).ok
