"""Principal-branch complex dilogarithm.

Branch conventions, used consistently by every caller in the package:

* ``clog`` is the principal logarithm with imaginary part in (-pi, pi];
  a negative real argument gets +i*pi whatever the sign of its zero
  imaginary part.
* ``dilog`` has its cut on [1, inf) and takes the value continuous from
  below there, e.g. Im Li2(2) = -pi*log(2).  This is the branch that
  satisfies d/dz Li2(z) = -clog(1 - z) / z on the cut as well.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

PI2_6 = math.pi ** 2 / 6


def clog(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real < 0:
        return complex(math.log(-z.real), math.pi)
    return cmath.log(z)


def _bernoulli(n_max):
    b = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += Fraction(math.comb(m + 1, k)) * b[k]
        b.append(-acc / (m + 1))
    return b


# Coefficients B_n / (n+1)! of Li2(z) = sum_n c_n u^(n+1), u = -log(1 - z).
# Odd Bernoulli numbers past B_1 vanish, so only even n contribute after n = 1.
_N_TERMS = 40
_COEF = [float(bn / math.factorial(n + 1)) for n, bn in enumerate(_bernoulli(_N_TERMS))]


def _li2_core(z: complex) -> complex:
    # valid for |z| <= 1, Re z <= 1/2, where |u| < 1.9 well inside radius 2*pi
    u = -cmath.log(1 - z)
    u2 = u * u
    total = _COEF[0] * u + _COEF[1] * u2
    term = u
    for n in range(2, _N_TERMS + 1, 2):
        term *= u2
        total += _COEF[n] * term
    return total


def _li2_series(z: complex) -> complex:
    total, zk = 0j, z
    for k in range(1, 60):
        total += zk / (k * k)
        zk *= z
    return total


def dilog(z) -> complex:
    """Li2(z) on the principal branch (see module docstring for the cut)."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6)
    if abs(z) > 1:
        # inversion: Li2(z) = -pi^2/6 - log(-z)^2 / 2 - Li2(1/z)
        lz = clog(-z)
        return -PI2_6 - 0.5 * lz * lz - dilog(1 / z)
    if z.real > 0.5:
        # reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return PI2_6 - clog(z) * clog(1 - z) - dilog(1 - z)
    if abs(z) <= 0.5:
        return _li2_series(z)
    return _li2_core(z)


def dilog_zderiv(z) -> complex:
    """``z * d/dz Li2(z) = -log(1 - z)``; singular at z = 1."""
    z = complex(z)
    if z == 1:
        raise ZeroDivisionError("log singularity of Li2' at z = 1")
    return -clog(1 - z)
