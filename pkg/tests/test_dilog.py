import cmath
import math

import mpmath
import numpy as np
import pytest

from shadowvol.dilog import clog, dilog, dilog_zderiv

PI2_6 = math.pi ** 2 / 6


def random_points(n, seed, scale=3.0):
    rng = np.random.default_rng(seed)
    return scale * (rng.normal(size=n) + 1j * rng.normal(size=n))


def test_special_values():
    assert dilog(0) == 0
    assert abs(dilog(1) - PI2_6) < 1e-13
    assert abs(dilog(-1) + PI2_6 / 2) < 1e-14
    assert abs(dilog(0.5) - (PI2_6 / 2 - math.log(2) ** 2 / 2)) < 1e-14


def test_cut_is_continuous_from_below():
    assert dilog(2).imag == pytest.approx(-math.pi * math.log(2), rel=1e-14)
    assert abs(dilog(2) - dilog(2 - 1e-14j)) < 1e-10


@pytest.mark.parametrize("seed", range(4))
def test_against_mpmath(seed):
    for z in random_points(250, seed):
        ref = complex(mpmath.polylog(2, z))
        assert abs(dilog(z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_near_unit_circle_against_mpmath():
    for theta in np.linspace(0.01, 2 * math.pi - 0.01, 200):
        for r in (0.98, 1.0, 1.02):
            z = r * cmath.exp(1j * theta)
            ref = complex(mpmath.polylog(2, z))
            assert abs(dilog(z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_reflection_identity():
    for z in random_points(1000, 11):
        lhs = dilog(z) + dilog(1 - z)
        rhs = PI2_6 - clog(z) * clog(1 - z)
        assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(rhs))


def test_inversion_identity():
    for z in random_points(1000, 12):
        if z.imag == 0:
            continue
        lhs = dilog(z) + dilog(1 / z)
        rhs = -PI2_6 - clog(-z) ** 2 / 2
        assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(rhs))


def test_derivative_against_finite_difference():
    h = 1e-6
    for z in random_points(50, 13, 1.5):
        fd = z * (dilog(z + h) - dilog(z - h)) / (2 * h)
        assert abs(fd - dilog_zderiv(z)) < 1e-6 * max(1.0, abs(fd))


def test_zderiv_singular():
    with pytest.raises(ZeroDivisionError):
        dilog_zderiv(1)


def test_clog_negative_real():
    assert clog(-2) == complex(math.log(2), math.pi)
    assert clog(complex(-2, -0.0)).imag == math.pi
