import pytest

from starhankel import functionals as fn
from starhankel.certify.search import sharpness_search
from starhankel.genclass import coeffs_from_schur


def _modulus_at(fid, sp):
    vals = fn.hankel_values_from_a(*coeffs_from_schur(sp).as_tuple())
    return abs(vals[fid])


@pytest.fixture(scope="module")
def h22():
    return sharpness_search("H22", 200, seed=0)


def test_h22_sharp_value_and_location(h22):
    assert h22.best_modulus == pytest.approx(0.25, abs=1e-6)
    z1, z2, _, _ = h22.argmax.as_tuple()
    assert abs(z1) <= 1e-3 and abs(abs(z2) - 1) <= 1e-3


def test_inverse_sharp_value_and_location():
    res = sharpness_search("INV_H22", 200, seed=0)
    assert res.best_modulus == pytest.approx(5 / 12, abs=1e-6)
    assert abs(res.argmax.z1 - 1) <= 1e-3


def test_h21_sharp_value():
    res = sharpness_search("H21", 100, seed=3)
    assert res.best_modulus == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("fid", ["H21", "H22", "LOG_H21", "INV_H22", "H31"])
def test_best_modulus_matches_reevaluation(fid):
    res = sharpness_search(fid, 20, seed=1)
    assert abs(res.best_modulus - _modulus_at(fid, res.argmax)) <= 1e-12
    assert res.starts == 20
    assert 0 <= res.converged_fraction <= 1


def test_search_is_reproducible():
    a = sharpness_search("LOG_H21", 30, seed=5)
    b = sharpness_search("LOG_H21", 30, seed=5)
    assert a == b


def test_search_independent_of_workers():
    a = sharpness_search("H22", 24, seed=9, workers=1)
    b = sharpness_search("H22", 24, seed=9, workers=3)
    assert a.best_modulus == b.best_modulus
    assert a.argmax.as_tuple() == b.argmax.as_tuple()


def test_search_validation():
    with pytest.raises(ValueError):
        sharpness_search("H33", 10)
    with pytest.raises(ValueError):
        sharpness_search("H22", 0)
