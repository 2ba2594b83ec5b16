import math
from fractions import Fraction as F

import numpy as np
import pytest

from starhankel.certify import envelopes
from starhankel.certify.bnb import certify_max
from starhankel.certify.envelopes import (
    ExpansionMismatchError,
    build_gamma,
    build_gamma_i,
    build_R,
    build_S,
    gamma34_gap,
    gamma_envelope_value,
    gamma_parts_value,
    h31_from_decomposition,
    h_decomposition,
    scalar_chains,
)
from starhankel.certify.interval import CompiledPolynomial, Encloser, fraction_interval, mul, power
from starhankel.certify.polynomial import BoxPolynomial
from starhankel.certify.roots import gradient_roots
from starhankel.functionals import hankel_values_from_a
from starhankel.genclass import a_from_p, p_from_z, random_schur_arrays


@pytest.fixture(scope="module")
def gamma_cert():
    return certify_max(build_gamma(), 1e-6)


def _random_points(rng, poly, n=10_000):
    lo = np.array([float(a) for a, _ in poly.box])
    hi = np.array([float(b) for _, b in poly.box])
    return lo + (hi - lo) * rng.random((n, poly.dims))


# -- polynomials ------------------------------------------------------------------------------------------

def test_polynomial_algebra_and_exact_evaluation():
    x, y = BoxPolynomial.variables(2)
    p = (x + 2 * y) ** 2 - x * y / 3
    assert p.exact(F(1, 2), F(1, 3)) == (F(1, 2) + F(2, 3)) ** 2 - F(1, 18)
    assert p(F(1, 2), F(1, 3)) == p.exact(F(1, 2), F(1, 3))
    assert p.degree == 2
    assert (p - p).is_zero
    assert p.derivative(0) == 2 * x + 4 * y - y / 3
    assert p.substitute(1, 0) == BoxPolynomial.variables(1)[0] ** 2


def test_polynomial_float_evaluation_matches_exact():
    rng = np.random.default_rng(1)
    g = build_gamma()
    pts = rng.random((50, 3))
    vals = g.evaluate(pts)
    for pt, v in zip(pts, vals):
        assert v == pytest.approx(float(g.exact(*pt)), abs=1e-12)


def test_r_and_s_equal_gamma_sums():
    g1, g2, g3, g4 = build_gamma_i()
    assert (build_R() - (g1 + g2 + g3)).is_zero
    assert (build_S() - (g1 + g2 + g4)).is_zero


def test_expansion_mismatch_is_caught(monkeypatch):
    original = envelopes._R_expanded
    monkeypatch.setattr(envelopes, "_R_expanded", lambda: original() + BoxPolynomial.variables(2)[0] ** 3)
    with pytest.raises(ExpansionMismatchError):
        build_R()


def test_gamma_on_x_equal_one():
    g = build_gamma()
    for y in (F(k, 7) for k in range(8)):
        for u in (F(k, 5) for k in range(6)):
            assert g(1, y, u) == 1


def test_r_on_y_equal_zero():
    R = build_R()
    (x,) = BoxPolynomial.variables(1)
    assert R.substitute(1, 0) == (x**3 - 4 * x**2 + 4) ** 2


def test_gamma_at_origin_corner():
    assert build_gamma()(0, 0, 1) == 16
    assert build_gamma(exact_h1=True)(0, 0, 1) == 16


def test_point_values():
    R, S = build_R(), build_S()
    assert R(0, 0) == 16
    assert R(F(1, 2), 1) == 10
    assert S(F(1, 2), 1) == 10
    assert S(0, F(2, 3)) == F(28, 3)
    for y in (F(k, 11) for k in range(12)):
        assert R(1, y) == 1 and S(1, y) == 1


def test_exact_h1_gamma_differs_only_in_one_term():
    x, y, _ = BoxPolynomial.variables(3)
    diff = build_gamma(exact_h1=True) - build_gamma()
    assert diff == 2 * x**4 * (1 - x**2) * y


# -- intervals -----------------------------------------------------------------------------------------------

def test_fraction_interval_contains_value():
    for c in (F(1, 3), F(-5, 12), F(10**20 + 1, 7), F(0)):
        lo, hi = fraction_interval(c)
        assert F(lo) <= c <= F(hi)


def test_interval_ops_contain_samples():
    rng = np.random.default_rng(2)
    lo = rng.normal(size=1000)
    hi = lo + rng.random(1000)
    lo2 = rng.normal(size=1000)
    hi2 = lo2 + rng.random(1000)
    t = rng.random(1000)
    a = lo + t * (hi - lo)
    b = lo2 + t[::-1] * (hi2 - lo2)
    mlo, mhi = mul(lo, hi, lo2, hi2)
    assert np.all((mlo <= a * b) & (a * b <= mhi))
    for k in (2, 3, 4, 5):
        plo, phi = power(lo, hi, k)
        assert np.all((plo <= a**k) & (a**k <= phi))


def test_enclosures_contain_point_values():
    rng = np.random.default_rng(3)
    g = build_gamma()
    enc = Encloser(g)
    lo = rng.random((200, 3)) * 0.8
    hi = lo + rng.random((200, 3)) * 0.2
    nat_lo, nat_hi = CompiledPolynomial(g).enclose(lo, hi)
    b_lo, b_hi = enc.bounds(lo, hi)
    for _ in range(20):
        pts = lo + (hi - lo) * rng.random((200, 3))
        v = np.array([float(g.exact(*p)) for p in pts])
        assert np.all((nat_lo <= v) & (v <= nat_hi))
        assert np.all((b_lo <= v) & (v <= b_hi))


# -- certificates ----------------------------------------------------------------------------------------------

def test_gamma_certificate(gamma_cert):
    c = gamma_cert
    assert c.ok
    assert 16 <= c.certified_upper <= 16 + 1e-6
    assert math.dist(c.witness, (0, 0, 1)) <= 1e-3
    assert c.attained_exact == 16
    assert c.attained_lower <= c.certified_upper
    assert c.gap <= c.epsilon


def test_exact_h1_gamma_certificate():
    c = certify_max(build_gamma(exact_h1=True), 1e-6)
    assert c.ok and 16 <= c.certified_upper <= 16 + 1e-6


def test_r_on_top_edge():
    c = certify_max(build_R().substitute(1, 1), 1e-9)
    assert c.ok
    assert c.certified_upper == pytest.approx(10, abs=1e-9)
    assert c.witness[0] == pytest.approx(0.5, abs=1e-3)


def test_s_on_left_edge():
    # S(0, y) = 9y(2 - y^2): its maximum on [0, 1] is 4 sqrt(6) at y = sqrt(2/3),
    # above the value 28/3 taken at y = 2/3
    S0 = build_S().substitute(0, 0)
    (y,) = BoxPolynomial.variables(1)
    assert S0 == 9 * y * (2 - y**2)
    c = certify_max(S0, 1e-9)
    assert c.ok
    assert c.certified_upper == pytest.approx(4 * math.sqrt(6), abs=1e-9)
    assert c.witness[0] == pytest.approx(math.sqrt(2 / 3), abs=1e-3)
    assert c.certified_upper > 28 / 3 and c.certified_upper < 10


def test_full_r_and_s():
    r = certify_max(build_R(), 1e-9)
    s = certify_max(build_S(), 1e-9)
    assert r.ok and r.certified_upper == pytest.approx(16, abs=1e-9)
    assert s.ok and s.certified_upper < 16
    assert s.certified_upper > 10  # S exceeds 10 inside (0,1)^2
    assert math.dist(s.witness, (0.529019, 0.681474)) <= 1e-3


@pytest.mark.parametrize("name,target", [("chain-h22", F(1, 4)), ("chain-log", F(1, 16)), ("chain-inv", F(5, 12))])
def test_scalar_chains(name, target):
    poly, t = scalar_chains()[name]
    assert t == target
    c = certify_max(poly, 1e-13)
    assert c.ok
    assert abs(c.certified_upper - float(target)) <= 1e-12
    assert c.attained_exact == target


def test_scalar_chain_endpoint_values():
    ch = scalar_chains()
    assert ch["chain-h22"][0](0) == F(1, 4)
    assert ch["chain-log"][0](0) == F(1, 16)
    assert ch["chain-inv"][0](1) == F(5, 12)


def test_certificate_soundness_spot_check(gamma_cert):
    rng = np.random.default_rng(4)
    certs = [(build_gamma(), gamma_cert), (build_R(), certify_max(build_R(), 1e-9)),
             (build_S(), certify_max(build_S(), 1e-9))]
    certs += [(p, certify_max(p, 1e-13)) for p, _ in scalar_chains().values()]
    for poly, cert in certs:
        pts = _random_points(rng, poly)
        assert np.max(poly.evaluate(pts)) <= cert.certified_upper + 1e-12


def test_monotone_refinement():
    for poly in (build_gamma(), build_S(), build_R().substitute(1, 1)):
        ups = [certify_max(poly, 1e-3 / 2**k).certified_upper for k in range(10)]
        assert all(b <= a for a, b in zip(ups, ups[1:]))


def test_budget_and_depth_statuses():
    c = certify_max(build_gamma(), 1e-9, max_boxes=50)
    assert c.status == "budget_exhausted" and not c.ok
    assert c.certified_upper >= 16
    d = certify_max(build_S(), 1e-12, depth_cap=4)
    assert d.status == "depth_exhausted"
    assert d.certified_upper >= d.attained_lower
    with pytest.raises(ValueError):
        certify_max(build_gamma(), 0.0)


def test_certificate_dict_round_trip(gamma_cert):
    d = gamma_cert.to_dict()
    assert set(d) >= {"objective", "certified_upper", "attained_lower", "witness", "boxes_processed",
                      "max_depth", "epsilon", "status"}
    assert d["attained_exact"] == "16"


# -- case split and decomposition ----------------------------------------------------------------------------

def test_case_split_envelope():
    rng = np.random.default_rng(5)
    x, y, u = rng.random((3, 20_000))
    g1, g2, g3, g4 = gamma_parts_value(x, y)
    gamma = gamma_envelope_value(x, y, u, exact_h1=False)
    R = build_R().evaluate(np.column_stack([x, y]))
    S = build_S().evaluate(np.column_stack([x, y]))
    case1 = g3 >= g4
    # case 1: convex in u, the maximum sits at u = 0 or u = 1
    assert np.all(gamma[case1] <= np.maximum(R, S)[case1] + 1e-12)
    # case 2: the u^2 term is non-positive
    assert np.all(gamma[~case1] <= S[~case1] + 1e-12)


def test_h_decomposition_examples():
    h = h_decomposition(0.0, 0.0)
    assert np.allclose(h, (0, 0, -16, 0))
    for z2 in (0.3 + 0.4j, -1.0, 0.0):
        assert np.allclose(h_decomposition(1.0, z2), (-1, 0, 0, 0))


def test_h_decomposition_requires_real_z1():
    with pytest.raises(ValueError):
        h_decomposition(0.5j, 0.1)


def test_h_decomposition_matches_direct_route():
    rng = np.random.default_rng(6)
    z = random_schur_arrays(rng, 10_000, real_z1=True)
    direct = hankel_values_from_a(*a_from_p(*p_from_z(*z)))["H31"]
    assert np.max(np.abs(h31_from_decomposition(*z) - direct)) <= 1e-10


@pytest.mark.parametrize("exact_h1", [False, True])
def test_decomposition_oracle(exact_h1):
    rng = np.random.default_rng(7)
    z = random_schur_arrays(rng, 100_000)
    h31 = np.abs(hankel_values_from_a(*a_from_p(*p_from_z(*z)))["H31"])
    env = gamma_envelope_value(np.abs(z[0]), np.abs(z[1]), np.abs(z[2]), exact_h1=exact_h1) / 144
    assert np.all(h31 <= env + 1e-12)


# -- critical points -----------------------------------------------------------------------------------------------

def test_s_has_one_interior_critical_point():
    res = gradient_roots("S", ((0, 1), (0, 1)))
    assert len(res.roots) == 1
    assert math.dist(res.roots[0], (0.529019, 0.681474)) <= 1e-3


def test_r_has_no_interior_critical_point():
    assert gradient_roots("R", ((0, 1), (0, 1))).roots == []


def test_r_root_outside_unit_square():
    res = gradient_roots("R", ((-0.3, 0.0), (0.9, 1.0)))
    assert len(res.roots) == 1
    assert math.dist(res.roots[0], (-0.157665, 0.966163)) <= 1e-3


def test_gradient_roots_validation():
    with pytest.raises(ValueError):
        gradient_roots("S", grid=16)
    with pytest.raises(ValueError):
        gradient_roots("T")


def test_gamma34_gap():
    assert gamma34_gap(0.529019, 0.681474) == pytest.approx(0.676099, abs=1e-4)
    assert all(gamma34_gap(1, F(k, 5)) == 0 for k in range(6))
    assert gamma34_gap(0, 0) == 16
    assert isinstance(gamma34_gap(F(1, 3), F(1, 2)), F)
