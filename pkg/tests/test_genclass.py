import numpy as np
import pytest

from starhankel.genclass import (
    CaratheodoryPrefix,
    CoeffPrefix,
    DomainError,
    HerglotzMeasure,
    SchurPoint,
    a_from_p,
    caratheodory_from_schur,
    coeffs_from_caratheodory,
    coeffs_from_schur,
    extremal,
    function_from_p,
    function_from_schur,
    herglotz_series,
    membership_check,
    p_from_z,
    random_herglotz,
    random_member,
    random_schur_arrays,
    random_schur_point,
    rotate_member,
    schur_from_caratheodory,
)
from starhankel.series import (
    NormalizedSeries,
    TruncatedSeries,
    exp_series,
)


# -- independent oracle: Schur recursion on plain coefficient arrays ------------------------------

def _conv(a, b, n):
    return np.convolve(a, b)[: n + 1]


def _recip(a, n):
    out = np.zeros(n + 1, complex)
    out[0] = 1 / a[0]
    for k in range(1, n + 1):
        out[k] = -np.dot(a[1 : k + 1], out[k - 1 :: -1][:k]) / a[0]
    return out


def schur_recursion_p(zs, n=4):
    """p = (1 + z phi)/(1 - z phi), phi_k = (z_k + z phi_{k+1})/(1 + conj(z_k) z phi_{k+1})."""
    phi = np.zeros(n + 1, complex)
    for zk in reversed(zs):
        zphi = np.concatenate([[0], phi[:n]])
        num = zphi.copy()
        num[0] += zk
        den = np.conj(zk) * zphi
        den[0] += 1
        phi = _conv(num, _recip(den, n), n)
    zphi = np.concatenate([[0], phi[:n]])
    one_plus = zphi.copy()
    one_plus[0] += 1
    one_minus = -zphi
    one_minus[0] += 1
    return _conv(one_plus, _recip(one_minus, n), n)[1:]


# -- types -----------------------------------------------------------------------------------------------

def test_schur_point_rejects_outside_disk():
    SchurPoint(1, 1j, -1, 0)
    with pytest.raises(ValueError):
        SchurPoint(1.01, 0, 0, 0)


def test_caratheodory_prefix_bound():
    with pytest.raises(ValueError):
        CaratheodoryPrefix(2.1, 0, 0, 0)


def test_herglotz_validation():
    HerglotzMeasure(((0.0, 0.25), (7.0, 0.75)))
    with pytest.raises(ValueError):
        HerglotzMeasure(((0.0, -0.5), (1.0, 1.5)))
    with pytest.raises(ValueError):
        HerglotzMeasure(((0.0, 0.5), (1.0, 0.4)))
    assert 0 <= HerglotzMeasure(((7.0, 1.0),)).thetas[0] < 2 * np.pi


# -- Schur / Caratheodory maps ----------------------------------------------------------------------------

def test_zero_schur_point():
    assert caratheodory_from_schur(SchurPoint(0, 0, 0, 0)).as_tuple() == (0, 0, 0, 0)


def test_boundary_point_mass():
    cp = caratheodory_from_schur(SchurPoint(1, 0.3j, 0.5, -0.2))
    assert np.allclose(cp.as_tuple(), (2, 2, 2, 2))


def test_antipodal_atoms():
    cp = caratheodory_from_schur(SchurPoint(0, 1, 0.4 - 0.1j, 0.7j))
    assert np.allclose(cp.as_tuple(), (0, 2, 0, 2))
    p = herglotz_series(HerglotzMeasure(((0.0, 0.5), (np.pi, 0.5))), 4)
    assert np.allclose(p.coeffs[1:], cp.as_tuple())


def test_p_from_z_matches_schur_recursion():
    rng = np.random.default_rng(8)
    z = random_schur_arrays(rng, 500)
    p = np.array(p_from_z(*z))
    for i in range(500):
        want = schur_recursion_p([z[k][i] for k in range(4)])
        assert np.allclose(p[:, i], want, atol=1e-13)


def test_p_from_z_real_z1_matches_recursion_near_boundary():
    rng = np.random.default_rng(9)
    z = random_schur_arrays(rng, 200, radius=1.0, real_z1=True)
    p = np.array(p_from_z(*z))
    for i in range(200):
        assert np.allclose(p[:, i], schur_recursion_p([z[k][i] for k in range(4)]), atol=1e-13)


def test_inverse_of_zero_prefix():
    assert schur_from_caratheodory(CaratheodoryPrefix(0, 0, 0, 0)).as_tuple() == (0, 0, 0, 0)


def test_inverse_degenerate_layer():
    sp = schur_from_caratheodory(CaratheodoryPrefix(2, 2, 2, 2))
    assert np.allclose(sp.as_tuple(), (1, 0, 0, 0))
    assert sp.degenerate_at == 2


def test_inverse_round_trip_of_ones():
    cp = CaratheodoryPrefix(1, 1, 1, 1)
    back = caratheodory_from_schur(schur_from_caratheodory(cp))
    assert np.allclose(back.as_tuple(), cp.as_tuple(), atol=1e-10, rtol=0)


def test_inverse_unattainable_prefix():
    with pytest.raises(DomainError) as info:
        schur_from_caratheodory(CaratheodoryPrefix(1.5, 0.2, 0, 0))
    assert info.value.layer == 2
    with pytest.raises(DomainError) as info:
        schur_from_caratheodory(CaratheodoryPrefix(2, 0, 0, 0))
    assert info.value.layer == 2


def test_schur_round_trip_interior():
    rng = np.random.default_rng(12)
    for _ in range(2000):
        sp = random_schur_point(rng, radius=0.95)
        back = schur_from_caratheodory(caratheodory_from_schur(sp))
        assert np.allclose(back.as_tuple(), sp.as_tuple(), atol=1e-9, rtol=0)


# -- coefficients ------------------------------------------------------------------------------------------

def test_coeffs_zero():
    assert coeffs_from_caratheodory(CaratheodoryPrefix(0, 0, 0, 0)).as_tuple() == (0, 0, 0, 0)


def test_coeffs_of_z_exp_z():
    c = coeffs_from_caratheodory(CaratheodoryPrefix(2, 2, 2, 2))
    assert np.allclose(c.as_tuple(), (1, 1 / 2, 1 / 6, 1 / 24), atol=1e-15)
    f = exp_series(TruncatedSeries.variable(4)).mul_z()
    assert np.allclose(c.as_tuple(), f.coeffs[2:6])


def test_coeffs_of_z_exp_half_z2():
    c = coeffs_from_caratheodory(CaratheodoryPrefix(0, 2, 0, 2))
    assert np.allclose(c.as_tuple(), (0, 1 / 2, 0, 1 / 8), atol=1e-15)


def test_coefficient_bound_from_schur_samples():
    rng = np.random.default_rng(13)
    a = np.array(a_from_p(*p_from_z(*random_schur_arrays(rng, 100_000))))
    bounds = 1 / np.arange(1, 5)[:, None]
    assert np.all(np.abs(a) <= bounds + 1e-9)
    c = coeffs_from_schur(SchurPoint(0.3, 0.2j, 0, 0))
    assert c.within_coefficient_bounds()


def test_coeff_prefix_rotation():
    c = CoeffPrefix(0.5, 0.25j, 0.1, 0.05)
    r = c.rotate(0.4)
    n = np.arange(2, 6)
    assert np.allclose(r.as_tuple(), np.array(c.as_tuple()) * np.exp(1j * (n - 1) * 0.4))


# -- Herglotz series and function construction ----------------------------------------------------------

def test_herglotz_single_atom():
    p = herglotz_series(HerglotzMeasure(((0.0, 1.0),)), 8)
    assert np.allclose(p.coeffs, [1] + [2] * 8)


def test_herglotz_antipodal_pattern():
    p = herglotz_series(HerglotzMeasure(((0.0, 0.5), (np.pi, 0.5))), 8)
    assert np.allclose(p.coeffs, [1, 0, 2, 0, 2, 0, 2, 0, 2], atol=1e-15)


def test_herglotz_quarter_turn():
    p = herglotz_series(HerglotzMeasure(((0.0, 0.5), (np.pi / 2, 0.5))), 4)
    assert np.allclose(p.coeffs[1:], [1 + 1j, 0, 1 - 1j, 2], atol=1e-15)


def test_function_from_constant_p():
    f = function_from_p(TruncatedSeries.constant(1, 6))
    assert np.allclose(f.coeffs, TruncatedSeries.variable(7).coeffs)


def test_function_from_half_plane_p():
    p = herglotz_series(HerglotzMeasure(((0.0, 1.0),)), 8)
    assert np.allclose(function_from_p(p).coeffs, extremal(2, 9).coeffs, atol=1e-14)


def test_function_from_antipodal_p():
    p = herglotz_series(HerglotzMeasure(((0.0, 0.5), (np.pi, 0.5))), 8)
    assert np.allclose(function_from_p(p).coeffs, extremal(3, 9).coeffs, atol=1e-14)


def test_series_route_matches_closed_form():
    rng = np.random.default_rng(14)
    for _ in range(2000):
        p = herglotz_series(random_herglotz(rng), 7)
        f = function_from_p(p)
        want = coeffs_from_caratheodory(CaratheodoryPrefix.from_series(p)).as_tuple()
        assert np.allclose(f.coeffs[2:6], want, atol=1e-10, rtol=0)


def test_function_from_schur_matches_closed_form():
    rng = np.random.default_rng(15)
    for _ in range(500):
        sp = random_schur_point(rng)
        f = function_from_schur(sp)
        assert np.allclose(f.coeffs[2:6], coeffs_from_schur(sp).as_tuple(), atol=1e-10, rtol=0)


def test_coefficient_bound_on_members():
    rng = np.random.default_rng(16)
    n = np.arange(2, 10)
    for _ in range(10_000):
        f = random_member(rng, 10)
        assert np.all(np.abs(f.coeffs[2:10]) <= 1 / (n - 1) + 1e-9)


def test_members_are_reproducible():
    a = random_member(np.random.default_rng(5), 12)
    b = random_member(np.random.default_rng(5), 12)
    assert np.array_equal(a.coeffs, b.coeffs)


# -- extremal family ---------------------------------------------------------------------------------------

def test_extremal_two():
    assert np.allclose(extremal(2, 5).coeffs, [0, 1, 1, 1 / 2, 1 / 6, 1 / 24], atol=1e-15)


def test_extremal_three():
    assert np.allclose(extremal(3, 5).coeffs, [0, 1, 0, 1 / 2, 0, 1 / 8], atol=1e-15)


def test_extremal_four():
    assert np.allclose(extremal(4, 7).coeffs, [0, 1, 0, 0, 1 / 3, 0, 0, 1 / 18], atol=1e-15)


def test_extremal_coefficient():
    for n in range(2, 10):
        assert extremal(n, 12)[n] == pytest.approx(1 / (n - 1), abs=1e-15)


def test_extremal_rejects_small_n():
    with pytest.raises(ValueError):
        extremal(1, 6)


# -- membership -------------------------------------------------------------------------------------------

def test_membership_identity():
    ok, worst = membership_check(NormalizedSeries.identity(8))
    assert ok and worst <= 1e-15


def test_membership_extremal_three():
    ok, worst = membership_check(extremal(3, 24), radii=(0.5, 0.9), angles_per_radius=360)
    assert ok
    assert worst == pytest.approx(0.81, abs=1e-6)


def test_membership_rejects_large_a2():
    f = NormalizedSeries(TruncatedSeries.from_coeffs([0, 1, 2], 6).coeffs)
    ok, worst = membership_check(f, radii=(0.9,))
    assert not ok and worst > 1


def test_membership_radius_validation():
    with pytest.raises(ValueError):
        membership_check(extremal(2, 12), radii=(0.5, 1.0))


def test_rotation_preserves_membership():
    rng = np.random.default_rng(18)
    for _ in range(50):
        f = random_member(rng, 24)
        ok, worst = membership_check(f)
        ok_r, worst_r = membership_check(rotate_member(f, 2 * np.pi * rng.random()))
        assert ok and ok_r
        # rotation permutes the sampled circle points only approximately
        assert worst_r == pytest.approx(worst, abs=5e-3)
