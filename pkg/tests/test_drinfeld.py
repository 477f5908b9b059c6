import pytest

from matchedpairs import fleet
from matchedpairs.doubles import double
from matchedpairs.drinfeld import (DrinfeldDouble, canonical_r_pullback, certify_double_algebra,
                                   certify_drinfeld_iso, check_relation_ideal, check_transported_r,
                                   check_vanishing_rule, dual_basis_element, drinfeld_iso, relation_elements)
from matchedpairs.hopf import Element, build_weak_hopf, certify_r_matrix

from conftest import SMALL

RELATION_PAIRS = ["initial2", "terminal2", "MXY21", "MXY22", "S3", "conj_coarse2", "semi_v_coarse2"]


@pytest.mark.parametrize("name", SMALL)
def test_admissible_count_equals_double_cells(name):
    M = fleet.get(name)
    DD = DrinfeldDouble(M)
    # two independent counts: admissible pairs, and cells of the double pair
    assert DD.dim == len(double(M).cells)
    assert all(DD.admissible(p, h) for p, h in DD.basis)


def test_initial_double_has_terminal_dimension():
    for n in (1, 2, 3):
        assert DrinfeldDouble(fleet.get(f"initial{n}")).dim == build_weak_hopf(fleet.get(f"terminal{n}")).n


@pytest.mark.parametrize("name", SMALL)
def test_iso_certified(name):
    rep = certify_drinfeld_iso(DrinfeldDouble(fleet.get(name)))
    assert rep.ok, str(rep)


def test_iso_certified_on_conj_s3():
    DD = DrinfeldDouble(fleet.get("conj_S3"))
    assert DD.dim == 1296
    assert certify_drinfeld_iso(DD).ok


@pytest.mark.parametrize("name", SMALL)
def test_vanishing_rule(name):
    assert check_vanishing_rule(DrinfeldDouble(fleet.get(name))).ok


@pytest.mark.parametrize("name", ["MXY22", "S3", "conj_coarse2", "initial3"])
def test_associative_and_unital(name):
    DD = DrinfeldDouble(fleet.get(name))
    rep = certify_double_algebra(DD, triple_limit=40)
    assert rep.ok, str(rep)
    assert rep.checked >= DD.dim + DD.dim ** 3


@pytest.mark.parametrize("name", RELATION_PAIRS)
def test_relations_form_ideal_of_non_admissible_tensors(name):
    DD = DrinfeldDouble(fleet.get(name))
    assert check_relation_ideal(DD).ok


def test_relations_are_nontrivial_off_the_one_object_case():
    DD = DrinfeldDouble(fleet.get("MXY22"))
    assert relation_elements(DD)
    assert DD.dim < DD.W.n * DD.Wd.n


def test_reduce_drops_non_admissible_terms():
    DD = DrinfeldDouble(fleet.get("MXY22"))
    bad = next((p, h) for p in range(DD.Wd.n) for h in range(DD.W.n) if not DD.admissible(p, h))
    assert DD.reduce(Element.basis(bad)) == Element()


@pytest.mark.parametrize("name", SMALL)
def test_transported_canonical_r(name):
    DD = DrinfeldDouble(fleet.get(name))
    assert check_transported_r(DD).ok


@pytest.mark.parametrize("name", ["S3", "MXY22"])
def test_pulled_back_r_is_quasitriangular(name):
    M = fleet.get(name)
    DD = DrinfeldDouble(M)
    DM = double(M)
    WD = build_weak_hopf(DM)
    pulled, R = canonical_r_pullback(DD, DM, WD)
    assert certify_r_matrix(WD, R).ok
    images, _ = drinfeld_iso(DD, DM)
    assert pulled.map_keys(lambda k: (images[k[0]], images[k[1]])) == R
    # the dual-basis element is the weak inverse of R; on a group the two differ
    if len(M.base) == 1:
        assert dual_basis_element(DD) != pulled


def test_unit_maps_to_unit():
    M = fleet.get("C6")
    DD = DrinfeldDouble(M)
    images, DM = drinfeld_iso(DD)
    assert DD.unit().map_keys(lambda k: images[k]) == build_weak_hopf(DM).unit()
