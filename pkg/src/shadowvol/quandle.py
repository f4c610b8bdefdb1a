"""Conjugation quandle of parabolic elements of PSL(2, C).

A parabolic element is stored as a column vector ``(alpha, beta)`` in
C^2 minus the origin.  The representative is kept as given; ``(a, b)`` and
``(-a, -b)`` describe the same group element but are *not* identified here.
"""

from __future__ import annotations

from dataclasses import dataclass


class _Infinity:
    """The point at infinity of CP^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

# A Hopf value is either a complex number or INFINITY.


@dataclass(frozen=True)
class ParabolicElement:
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("parabolic element must be a nonzero vector")

    def __neg__(self):
        return ParabolicElement(-self.alpha, -self.beta)

    def __mul__(self, other):
        if isinstance(other, ParabolicElement):
            return star(self, other)
        return NotImplemented

    def __iter__(self):
        yield self.alpha
        yield self.beta

    def scaled(self, lam):
        return ParabolicElement(lam * self.alpha, lam * self.beta)

    def norm(self):
        return (abs(self.alpha) ** 2 + abs(self.beta) ** 2) ** 0.5

    def distance(self, other):
        return (abs(self.alpha - other.alpha) ** 2 + abs(self.beta - other.beta) ** 2) ** 0.5

    def matrix(self):
        """The PSL(2, C) representative ((1+ab, -a^2), (b^2, 1-ab))."""
        a, b = self.alpha, self.beta
        return ((1 + a * b, -a * a), (b * b, 1 - a * b))


def star(a: ParabolicElement, b: ParabolicElement) -> ParabolicElement:
    """Right action ``a * b``: conjugate ``a`` by ``b``."""
    g, d = b.alpha, b.beta
    x, y = a.alpha, a.beta
    return ParabolicElement((1 + g * d) * x - g * g * y, d * d * x + (1 - g * d) * y)


def star_inv(a: ParabolicElement, b: ParabolicElement) -> ParabolicElement:
    """Inverse right action, so that ``star_inv(star(a, b), b) == a``."""
    g, d = b.alpha, b.beta
    x, y = a.alpha, a.beta
    return ParabolicElement((1 - g * d) * x + g * g * y, -d * d * x + (1 + g * d) * y)


def hopf(a: ParabolicElement):
    """Fixed point ``alpha / beta`` of ``a`` on CP^1."""
    if a.beta == 0:
        return INFINITY
    return a.alpha / a.beta


def mobius_apply(a: ParabolicElement, z):
    """Image of ``z`` under the Moebius transformation of ``a``."""
    return _apply(a.matrix(), z)


def _apply(m, z):
    (m00, m01), (m10, m11) = m
    if z is INFINITY:
        return INFINITY if m10 == 0 else m00 / m10
    den = m10 * z + m11
    if den == 0:
        return INFINITY
    return (m00 * z + m01) / den


def mobius_inverse_apply(a: ParabolicElement, z):
    """Image of ``z`` under the inverse transformation of ``a``."""
    (m00, m01), (m10, m11) = a.matrix()
    return _apply(((m11, -m01), (-m10, m00)), z)


def hopf_close(z, w, tol=1e-10):
    """Equality of CP^1 points; finite values compare within ``tol``."""
    if z is INFINITY or w is INFINITY:
        return z is w
    return abs(z - w) <= tol


def hopf_separated(a: ParabolicElement, b: ParabolicElement, tol=1e-8) -> bool:
    """True when ``h(a)`` and ``h(b)`` are distinct points of CP^1.

    Measured by the chordal distance, which treats infinity like any other
    point: |det(a, b)| / (|a| |b|).
    """
    return abs(det2(a, b)) / (a.norm() * b.norm()) > tol


def det2(a: ParabolicElement, b: ParabolicElement) -> complex:
    return a.alpha * b.beta - b.alpha * a.beta


def cross_ratio(v0, v1, v2, v3, tol=1e-12) -> complex:
    """Cross-ratio ``[h(v0), h(v1), h(v2), h(v3)]`` through determinants.

    Raises DegenerateConfigurationError when a denominator vanishes.
    """
    from .errors import DegenerateConfigurationError

    d02 = det2(v0, v2)
    d13 = det2(v1, v3)
    if abs(d02) <= tol * v0.norm() * v2.norm() or abs(d13) <= tol * v1.norm() * v3.norm():
        raise DegenerateConfigurationError("cross-ratio denominator vanishes (repeated Hopf values)")
    return det2(v0, v3) * det2(v1, v2) / (d02 * d13)


def parabolic_from_pair(pair) -> ParabolicElement:
    """Build from ``(alpha, beta)`` where each entry is complex, a number or [re, im]."""
    return ParabolicElement(_to_complex(pair[0]), _to_complex(pair[1]))


def _to_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        re, im = x
        return complex(float(re), float(im))
    if isinstance(x, str):
        return complex(x.replace(" ", "").replace("i", "j"))
    return complex(x)


__all__ = [
    "INFINITY",
    "ParabolicElement",
    "star",
    "star_inv",
    "hopf",
    "mobius_apply",
    "mobius_inverse_apply",
    "hopf_close",
    "hopf_separated",
    "det2",
    "cross_ratio",
    "parabolic_from_pair",
]
