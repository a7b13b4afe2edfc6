import math

import pytest

import ergodlab as el

BETA = "0.41421356237309504880168872420969807856967187537694"
WEYL3 = {"variant": "weyl", "params": {"beta": BETA, "L": 3}}


def test_frac_arithmetic():
    half = el.Frac.from_decimal("0.5")
    assert half.bits == 1 << 127
    assert half + half == el.Frac()
    assert el.Frac.from_rational(1, 4).to_real() == 0.25
    assert el.Frac.from_bits((1 << 128) - 1) + el.Frac.from_bits(1) == el.Frac()
    assert el.int_mul(el.Frac.from_rational(1, 4), 6) == half
    assert el.dist(el.Frac.from_decimal("0.1"), el.Frac.from_decimal("0.9")) == pytest.approx(0.2)
    with pytest.raises(ValueError):
        el.Frac.from_decimal("1.5")


def test_weyl_orbit_matches_closed_form():
    beta = el.Frac.from_decimal(BETA)
    points = el.orbit(WEYL3, 50, exact=True)
    for n, p in enumerate(points):
        assert p == el.weyl_closed_form(beta, 3, n)
    rows = el.orbit({"variant": "rotation", "params": {"delta": ["0.5"]}}, 4)
    assert rows == [[0.0], [0.5], [0.0], [0.5]]


def test_lacunary():
    seq = el.furstenberg_sequence(3)
    assert seq["v"] == [1, 4, 21]
    assert seq["alpha"] == (1179649, 2097152)
    assert el.small_divisor_bound_holds(3, 1) and el.small_divisor_bound_holds(3, 2)
    assert el.H_eval(el.Frac(), 3, "inv") == pytest.approx(11 / 3, rel=1e-15)
    alpha = el.Frac.from_rational(*seq["alpha"])
    x = el.Frac.from_rational(3, 10)
    assert abs(el.h_eval(x) - (el.H_eval(x + alpha) - el.H_eval(x))) <= 1e-12


def test_theta():
    oracle = 1 + 2 * sum(math.exp(-math.pi * m * m) for m in range(1, 21))
    assert abs(el.theta_eval(0.0, 0.0, 0.0) - oracle) <= 1e-12
    a, b, c = (el.Frac.from_decimal(s) for s in ("0.1", "0.2", "0.3"))
    assert abs(el.nil_function(7, a, b, c)) <= 1.1


def test_diagnostics():
    chi = {"kind": "character", "coeffs": [1, 0, 0]}
    assert el.eigen_correlation(WEYL3, chi, el.Frac.from_decimal(BETA), 10000) == pytest.approx(1.0, abs=1e-12)
    const = {"kind": "constant", "re": "1"}
    assert el.birkhoff_average(WEYL3, const, 100) == 1.0
    dev = el.uniform_deviation(WEYL3, {"kind": "character", "coeffs": [0, 0, 1]}, 4000, threads=2)
    assert [n for n, _ in dev] == [1000, 2000, 4000]
    grid = [el.Frac.from_rational(i, 10) for i in range(10)]
    assert el.star_discrepancy(grid) == pytest.approx(0.1)
    assert el.m_joining_report(count=200).startswith("statistic,N,value_re,value_im,meta\nx_offset_identity,200,1,")


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        el.orbit({"variant": "spiral"}, 3)
    with pytest.raises(ValueError):
        el.orbit(WEYL3, 0)
