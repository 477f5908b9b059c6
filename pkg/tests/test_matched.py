import pytest
from hypothesis import given, settings, strategies as st

from matchedpairs import fleet
from matchedpairs.groupoid import coarse, cyclic_group, discrete, isotropy_bundle, symmetric_group
from matchedpairs.matched import (Cell, FactorizationError, MatchedPair, cell_horizontal_compose, cell_inverse,
                                  cell_transpose, cell_vertical_compose, check_derived_identities,
                                  coopposite_pair, dual, find_pair_isomorphism, identity_cell_h, identity_cell_v,
                                  iso_from_labels, make_bundle_action, make_conjugation_pair, make_group_pair,
                                  make_initial, make_MXY, make_semi, make_terminal, opposite_pair, pairs_equal,
                                  validate_matched_pair)

from conftest import ALL


def with_tables(M: MatchedPair, left=None, right=None) -> MatchedPair:
    return MatchedPair(M.V, M.H, M.cells, tuple(left or M.left_table), tuple(right or M.right_table))


@pytest.mark.parametrize("name", ALL)
def test_every_constructor_output_validates(name):
    M = fleet.get(name)
    rep = validate_matched_pair(M)
    assert rep.ok, str(rep)
    der = check_derived_identities(M)
    assert der.ok, str(der)


def test_initial_and_terminal_shapes():
    for n in (1, 2, 3):
        P = "ABC"[:n]
        I, T = make_initial(P), make_terminal(P)
        assert (len(I.V), len(I.H)) == (n * n, n)
        assert (len(T.V), len(T.H)) == (n, n * n)
    one_i, one_t = make_initial("A"), make_terminal("A")
    assert len(one_i.cells) == len(one_t.cells) == 1


def test_mxy_shapes_and_degenerations():
    M = make_MXY([0, 1], ["a", "b"])
    assert (len(M.base), len(M.H), len(M.V)) == (4, 8, 8)
    assert find_pair_isomorphism(make_MXY([0], ["a", "b"]), make_initial(["a", "b"])) is not None
    assert find_pair_isomorphism(make_MXY([0, 1], ["a"]), make_terminal([0, 1])) is not None


def test_corrupted_initial_action_is_reported():
    M = make_initial("ABC")
    right = list(M.right_table)
    right[1] = (right[1] + 1) % len(M.H)
    rep = validate_matched_pair(with_tables(M, right=right))
    assert not rep.ok
    v = rep.violations[0]
    assert v.witness and v.law in {"right-action-end", "corner"}


def test_endpoint_preserving_corruption_breaks_right_multiplicativity():
    M = fleet.get("S3")
    right = list(M.right_table)
    right[-1] = M.H.comp[right[-1]][1]
    rep = validate_matched_pair(with_tables(M, right=right))
    assert not rep.ok
    assert rep.laws() & {"right-multiplicative", "right-action-composition", "right-action-unit"}


@pytest.mark.parametrize("name", ALL)
def test_dual_is_involutive_and_transposes_cells(name):
    M = fleet.get(name)
    D = dual(M)
    assert validate_matched_pair(D).ok
    assert pairs_equal(dual(D), M)
    for i, A in enumerate(M.cells):
        T = cell_transpose(M, A)
        assert D.cell_index(*T) is not None
        # reading the transposed cell back gives the original square
        assert cell_transpose(D, T) == Cell(*A)


def test_dual_examples():
    assert pairs_equal(dual(make_initial("AB")), make_terminal("AB"))
    assert pairs_equal(dual(make_terminal("AB")), make_initial("AB"))
    assert find_pair_isomorphism(dual(make_MXY([0, 1], ["a", "b"])), make_MXY(["a", "b"], [0, 1])) is not None
    G = coarse("AB")
    assert pairs_equal(dual(make_semi(G, "vertical")), make_semi(G, "horizontal"))


@pytest.mark.parametrize("name", ALL)
def test_opposite_and_coopposite(name):
    M = fleet.get(name)
    op, coop = opposite_pair(M), coopposite_pair(M)
    assert validate_matched_pair(op).ok and validate_matched_pair(coop).ok
    assert pairs_equal(opposite_pair(op), M)
    assert pairs_equal(coopposite_pair(coop), M)
    H = M.H
    for x, g in M.cells:
        # inverting the horizontal arrows of a cell gives a cell of the opposite pair
        assert op.left(H.inv[x], g) == M.left(x, g)
        assert op.right(H.inv[x], g) == H.inv[M.right(x, g)]


def test_initial_is_isomorphic_to_its_opposite():
    M = make_initial("ABC")
    op = opposite_pair(M)
    hint = iso_from_labels(M, op, lambda o: o, lambda g: g, lambda x: x)
    assert find_pair_isomorphism(M, op, hint) is not None


@pytest.mark.parametrize("name", ALL)
def test_cell_operations(name):
    M = fleet.get(name)
    for A in M.cells:
        inv = cell_inverse(M, A)
        assert M.cell_index(*inv) is not None
        assert cell_inverse(M, inv) == A
        x, g = A
        assert cell_horizontal_compose(M, A, identity_cell_h(M, g)) == A
        assert cell_vertical_compose(M, identity_cell_v(M, x), A) == A
        bottom = identity_cell_v(M, M.right(x, g))
        assert cell_vertical_compose(M, A, bottom) == A


def test_group_pairs():
    M = make_group_pair(symmetric_group(3), fleet.S3_ROTATIONS, fleet.S3_TRANSPOSITION)
    assert (len(M.V), len(M.H)) == (3, 2)
    C6 = fleet.c6_pair()
    # both factors are normal in an abelian group, so the actions are trivial
    for (x, g), lg, rx in zip(C6.cells, C6.left_table, C6.right_table):
        assert (lg, rx) == (g, x)
    with pytest.raises(ValueError):
        make_group_pair(symmetric_group(3), fleet.S3_ROTATIONS, fleet.S3_ROTATIONS)


def test_trivial_factor_gives_semi_pair():
    S = symmetric_group(3)
    M = make_group_pair(S, list(S.arrows), [(0, 1, 2)])
    assert find_pair_isomorphism(M, make_semi(S, "vertical")) is not None


def test_conjugation_pairs():
    C = make_conjugation_pair(coarse("PQ"))
    assert len(C.V) == 2 and all(C.V.is_identity(a) for a in range(2))
    S = make_conjugation_pair(symmetric_group(3))
    assert len(S.V) == 6 and validate_matched_pair(S).ok
    assert validate_matched_pair(coopposite_pair(S)).ok


def test_non_automorphic_bundle_action_is_rejected():
    G = cyclic_group(2)
    N = isotropy_bundle(cyclic_group(3))
    with pytest.raises(FactorizationError) as err:
        # translation by 1 is a bijection of C3 but not an automorphism
        make_bundle_action(G, N, lambda n, g: (n + g) % 3, side="right")
    assert err.value.witness


def test_automorphic_bundle_action():
    G = cyclic_group(2)
    N = isotropy_bundle(cyclic_group(3))
    M = make_bundle_action(G, N, lambda n, g: (-n) % 3 if g else n, side="right")
    assert validate_matched_pair(M).ok and check_derived_identities(M).ok


def test_semi_pairs():
    assert validate_matched_pair(make_semi(coarse("PQ"), "vertical")).ok
    assert validate_matched_pair(make_semi(cyclic_group(3), "horizontal")).ok
    with pytest.raises(ValueError):
        make_semi(discrete("P"), "diagonal")


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3))
def test_mxy_family_validates(m, n):
    M = make_MXY(list(range(m)), ["abc"[i] for i in range(n)])
    assert validate_matched_pair(M).ok
    assert check_derived_identities(M).ok
    assert len(M.cells) == (m * m * n) * n


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([n for n in ALL if n != "conj_S3"]), st.data())
def test_random_action_corruption_is_detected(name, data):
    M = fleet.get(name)
    i = data.draw(st.sampled_from(range(len(M.cells))))
    left = list(M.left_table)
    left[i] = data.draw(st.sampled_from([a for a in range(len(M.V)) if a != left[i]] or [left[i]]))
    if tuple(left) != M.left_table:
        assert not validate_matched_pair(with_tables(M, left=left)).ok
