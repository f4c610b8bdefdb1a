"""Explicit solution of the hyperbolicity equations and the complex volume.

Given a shadow-coloring (arc colors, region colors ``s_k`` and a point
``p``), the region variables ``w_k = det(p, s_k)`` solve every equation
``exp(w_k dW/dw_k) = 1`` and ``W_0(w)`` equals ``i (vol + i cs)`` mod pi^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coloring import ShadowColoring, check_lemma1, p_is_valid
from .diagram import LinkDiagram
from .errors import DegenerateConfigurationError, PipelineCheckError, SingularPointError
from .potential import PotentialFunction, build_potential, eval_W0, residuals
from .quandle import cross_ratio, det2, hopf_separated, star

PI2 = math.pi ** 2

# Shape-parameter identities at one crossing.  Each entry:
# (label, orientation, four vertex names, numerator slot, denominator slot).
# Orientation -1 means the tetrahedron is negatively oriented and the shape
# parameter is the inverse of the cross-ratio.
_POSITIVE = (
    ("w_d/w_a", +1, ("p*k", "p", "k", "s*k"), "d", "a"),
    ("w_b/w_c", -1, ("p*k", "p", "k", "s*l*k"), "b", "c"),
    ("w_b/w_a", +1, ("p", "l*k", "s*k", "s*l*k"), "b", "a"),
    ("w_d/w_c", -1, ("p", "l", "s", "s*l"), "d", "c"),
)
_NEGATIVE = (
    ("w_a/w_b", -1, ("p", "p*k", "k", "s*l*k"), "a", "b"),
    ("w_c/w_d", +1, ("p", "p*k", "k", "s*k"), "c", "d"),
    ("w_c/w_b", +1, ("p", "l*k", "s*l*k", "s*k"), "c", "b"),
    ("w_a/w_d", -1, ("p", "l", "s*l", "s"), "a", "d"),
)
_SLOT = {"a": 0, "b": 1, "c": 2, "d": 3}


@dataclass(frozen=True)
class CrossRatioCheck:
    crossing: int
    label: str
    lhs: complex  # cross-ratio from the coloring
    rhs: complex  # ratio of region variables
    error: float


@dataclass(frozen=True)
class NondegeneracyCheck:
    crossing: int
    pair: tuple
    passed: bool


@dataclass
class VolumeReport:
    w0: np.ndarray
    max_residual: float
    cross_ratio_checks: list
    nondegeneracy: list
    W0_raw: complex
    vol: float
    cs: float
    sign_choices: tuple = ()
    extra: dict = field(default_factory=dict)

    @property
    def complex_volume(self) -> complex:
        return complex(self.vol, self.cs)

    def to_dict(self) -> dict:
        return {
            "w0": [_pair(z) for z in self.w0],
            "max_residual": self.max_residual,
            "cross_ratio_checks": [
                {
                    "crossing": c.crossing + 1,
                    "identity": c.label,
                    "lhs": _pair(c.lhs),
                    "rhs": _pair(c.rhs),
                    "error": c.error,
                }
                for c in self.cross_ratio_checks
            ],
            "max_cross_ratio_error": max((c.error for c in self.cross_ratio_checks), default=0.0),
            "nondegeneracy": {
                "passed": all(c.passed for c in self.nondegeneracy),
                "pairs_checked": len(self.nondegeneracy),
                "failures": [
                    {"crossing": c.crossing + 1, "pair": list(c.pair)}
                    for c in self.nondegeneracy
                    if not c.passed
                ],
            },
            "W0_raw": _pair(self.W0_raw),
            "vol": self.vol,
            "cs": self.cs,
            "sign_choices": list(self.sign_choices),
            **self.extra,
        }


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def reduce_cs(x: float) -> float:
    """Representative of ``x`` mod pi^2 in (-pi^2/2, pi^2/2]."""
    r = x - PI2 * round(x / PI2)
    if r <= -PI2 / 2:
        r += PI2
    elif r > PI2 / 2:
        r -= PI2
    return r


def mod_pi2_distance(x: float, y: float) -> float:
    return abs(reduce_cs(x - y))


def solution_w0(region, p) -> np.ndarray:
    w = np.array([det2(p, s) for s in region], dtype=complex)
    zero = np.flatnonzero(np.abs(w) == 0)
    if zero.size:
        raise PipelineCheckError("solution", f"w{zero[0] + 1} = det(p, s{zero[0] + 1}) vanishes")
    return w


def crossing_vertices(diagram: LinkDiagram, coloring: ShadowColoring, j: int) -> dict:
    """Named vectors at crossing ``j``: k = over arc, l = under arc right of it, s = region d."""
    d = diagram.data[j]
    k = coloring.arc[d.over_arc]
    l = coloring.arc[d.right_under_arc]
    a, b, c, dd = (coloring.region[q] for q in d.quadrants)
    s = dd
    if d.sign > 0:
        sl, sk = c, a
    else:
        sl, sk = a, c
    p = coloring.p
    return {
        "k": k,
        "l": l,
        "l*k": star(l, k),
        "s": s,
        "s*l": sl,
        "s*k": sk,
        "s*l*k": b,
        "p": p,
        "p*k": star(p, k),
    }


def check_cross_ratios(diagram: LinkDiagram, coloring: ShadowColoring, w0) -> list:
    checks = []
    for j, d in enumerate(diagram.data):
        v = crossing_vertices(diagram, coloring, j)
        for label, orient, names, num, den in _POSITIVE if d.sign > 0 else _NEGATIVE:
            try:
                cr = cross_ratio(*(v[n] for n in names))
            except DegenerateConfigurationError as ex:
                raise DegenerateConfigurationError(f"crossing {j + 1}, identity {label}: {ex}") from None
            lhs = cr if orient > 0 else 1 / cr
            rhs = w0[d.quadrants[_SLOT[num]]] / w0[d.quadrants[_SLOT[den]]]
            checks.append(CrossRatioCheck(j, label, lhs, complex(rhs), abs(lhs - rhs)))
    return checks


def check_nondegeneracy(diagram: LinkDiagram, coloring: ShadowColoring, tol=1e-8) -> list:
    """Pairwise Hopf distinctness of the tetrahedron vertices at every crossing."""
    checks = []
    for j in range(diagram.n_crossings):
        v = crossing_vertices(diagram, coloring, j)
        pairs = []
        for x, y, z in (
            ("k", "s", "s*k"),
            ("k", "s*l", "s*l*k"),
            ("l", "s", "s*l"),
            ("l*k", "s*k", "s*l*k"),
        ):
            pairs += [(x, y), (y, z), (x, z)]
        pairs += [("p", n) for n in ("k", "l", "l*k", "s", "s*l", "s*k", "s*l*k")]
        pairs += [("p*k", "k"), ("p*k", "p")]
        for x, y in pairs:
            checks.append(NondegeneracyCheck(j, (x, y), hopf_separated(v[x], v[y], tol)))
    return checks


def complex_volume(
    diagram: LinkDiagram,
    coloring: ShadowColoring,
    pf: PotentialFunction | None = None,
    tolerance=1e-9,
    sign_choices=(),
) -> VolumeReport:
    """Run every stage and assemble a report; the first failing stage raises."""
    if pf is None:
        pf = build_potential(diagram)
    if not check_lemma1(diagram, coloring.arc, coloring.region):
        raise PipelineCheckError("region_coloring", "region coloring has colliding Hopf values")
    if not p_is_valid(coloring.arc, coloring.region, coloring.p):
        raise PipelineCheckError("p", "h(p) coincides with an arc or region Hopf value")
    w0 = solution_w0(coloring.region, coloring.p)
    try:
        res = residuals(pf, w0)
    except SingularPointError as ex:
        raise PipelineCheckError("residuals", str(ex)) from None
    max_res = float(res.max())
    if max_res > tolerance:
        raise PipelineCheckError("residuals", f"max residual {max_res:.3e} exceeds {tolerance:g}")
    try:
        crs = check_cross_ratios(diagram, coloring, w0)
    except DegenerateConfigurationError as ex:
        raise PipelineCheckError("cross_ratios", str(ex)) from None
    for c in crs:
        if c.error > tolerance * max(1.0, abs(c.rhs)):
            raise PipelineCheckError(
                "cross_ratios", f"crossing {c.crossing + 1}: {c.label} off by {c.error:.3e}"
            )
    nd = check_nondegeneracy(diagram, coloring)
    failed = [c for c in nd if not c.passed]
    if failed:
        raise PipelineCheckError(
            "nondegeneracy", f"crossing {failed[0].crossing + 1}: coincident vertices {failed[0].pair}"
        )
    W0 = eval_W0(pf, w0)
    return VolumeReport(
        w0=w0,
        max_residual=max_res,
        cross_ratio_checks=crs,
        nondegeneracy=nd,
        W0_raw=W0,
        vol=W0.imag,
        cs=reduce_cs(-W0.real),
        sign_choices=tuple(sign_choices),
    )
