"""Potential function of a link diagram and the hyperbolicity equations.

Every crossing contributes one bracket built from its four quadrant
variables (a, b, c, d).  For a positive crossing::

    W_j = -Li2(c/b) - Li2(c/d) + Li2(ac/(bd)) + Li2(b/a) + Li2(d/a)
          - pi^2/6 + log(b/a) log(d/a)

and a negative crossing contributes the negative of that expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagram import LinkDiagram
from .dilog import clog, dilog, dilog_zderiv
from .errors import SingularPointError

PI2 = math.pi ** 2

# (coefficient, numerator slots, denominator slots) for the positive bracket;
# slots index (a, b, c, d) = (0, 1, 2, 3)
_A, _B, _C, _D = range(4)
_LI2_TERMS = (
    (-1, (_C,), (_B,)),
    (-1, (_C,), (_D,)),
    (+1, (_A, _C), (_B, _D)),
    (+1, (_B,), (_A,)),
    (+1, (_D,), (_A,)),
)


@dataclass(frozen=True)
class CrossingTerm:
    sign: int
    slots: tuple  # region-variable indices for (a, b, c, d)


@dataclass(frozen=True)
class PotentialFunction:
    terms: tuple
    n_vars: int

    def __str__(self):
        return format_potential(self)


def build_potential(diagram: LinkDiagram) -> PotentialFunction:
    terms = tuple(CrossingTerm(d.sign, tuple(d.quadrants)) for d in diagram.data)
    return PotentialFunction(terms, diagram.n_regions)


def _ratio(w, num, den, slots):
    z = 1 + 0j
    for s in num:
        z *= w[slots[s]]
    for s in den:
        z /= w[slots[s]]
    return z


def _check_nonzero(w):
    w = np.asarray(w, dtype=complex)
    bad = np.flatnonzero(w == 0)
    if bad.size:
        raise SingularPointError(f"region variable w{bad[0] + 1} is zero")
    return w


def eval_W(pf: PotentialFunction, w) -> complex:
    """Value of the potential at ``w`` (principal branches throughout)."""
    w = _check_nonzero(w)
    total = 0j
    for term in pf.terms:
        total += _eval_term(term, w)
    return total


def _eval_term(term, w):
    sl = term.slots
    val = 0j
    for coef, num, den in _LI2_TERMS:
        val += coef * dilog(_ratio(w, num, den, sl))
    val += -PI2 / 6 + clog(w[sl[_B]] / w[sl[_A]]) * clog(w[sl[_D]] / w[sl[_A]])
    return term.sign * val


def grad_W(pf: PotentialFunction, w) -> np.ndarray:
    """Vector of ``w_k * dW/dw_k``."""
    w = _check_nonzero(w)
    g = np.zeros(pf.n_vars, dtype=complex)
    for j, term in enumerate(pf.terms):
        sl = term.slots
        for coef, num, den in _LI2_TERMS:
            z = _ratio(w, num, den, sl)
            try:
                dz = coef * term.sign * dilog_zderiv(z)
            except ZeroDivisionError:
                raise SingularPointError(
                    f"crossing {j + 1}: Li2 argument equals 1 (term {_fmt_ratio(num, den, sl)})"
                ) from None
            for s in num:
                g[sl[s]] += dz
            for s in den:
                g[sl[s]] -= dz
        lb = clog(w[sl[_B]] / w[sl[_A]])
        ld = clog(w[sl[_D]] / w[sl[_A]])
        g[sl[_B]] += term.sign * ld
        g[sl[_D]] += term.sign * lb
        g[sl[_A]] -= term.sign * (lb + ld)
    return g


def residuals(pf: PotentialFunction, w) -> np.ndarray:
    """``|exp(w_k dW/dw_k) - 1|`` for each k; zero exactly at solutions."""
    return np.abs(np.exp(grad_W(pf, w)) - 1)


def eval_W0(pf: PotentialFunction, w, log_shifts=None) -> complex:
    """``W - sum_k (w_k dW/dw_k) log w_k``.

    ``log_shifts`` optionally moves ``log w_k`` to another sheet by
    ``2*pi*i*log_shifts[k]``; at a solution this only changes the result
    by a multiple of pi^2.
    """
    w = _check_nonzero(w)
    g = grad_W(pf, w)
    logs = np.array([clog(x) for x in w])
    if log_shifts is not None:
        logs = logs + 2j * math.pi * np.asarray(log_shifts)
    return eval_W(pf, w) - complex(np.sum(g * logs))


def _dist_to_cut(z, start):
    # distance from z to the ray (start - inf, start] or [start, inf); sign of start picks the ray
    if (start > 0 and z.real >= start) or (start <= 0 and z.real <= start):
        return abs(z.imag)
    return abs(z - start)


def cut_distance(pf: PotentialFunction, w) -> float:
    """Smallest relative distance of any Li2 or log argument from its branch cut.

    Li2 arguments are measured against [1, inf), log arguments against
    (-inf, 0].  Finite differences are only trustworthy when this is well
    above the step size.
    """
    w = _check_nonzero(w)
    worst = math.inf
    for term in pf.terms:
        sl = term.slots
        for _, num, den in _LI2_TERMS:
            z = _ratio(w, num, den, sl)
            worst = min(worst, _dist_to_cut(z, 1.0) / max(1.0, abs(z)))
        for z in (w[sl[_B]] / w[sl[_A]], w[sl[_D]] / w[sl[_A]]):
            worst = min(worst, _dist_to_cut(z, 0.0) / abs(z))
    return worst


def numeric_gradient(pf: PotentialFunction, w, h=1e-6):
    """Central differences of W along the real and imaginary axes.

    Returns two estimates of ``w_k dW/dw_k``; for a holomorphic W they agree.
    """
    w = _check_nonzero(w)
    g_re = np.zeros(pf.n_vars, dtype=complex)
    g_im = np.zeros(pf.n_vars, dtype=complex)
    for k in range(pf.n_vars):
        step = h * max(1.0, abs(w[k]))
        e = np.zeros(pf.n_vars, dtype=complex)
        e[k] = step
        g_re[k] = w[k] * (eval_W(pf, w + e) - eval_W(pf, w - e)) / (2 * step)
        e[k] = 1j * step
        g_im[k] = w[k] * (eval_W(pf, w + e) - eval_W(pf, w - e)) / (2j * step)
    return g_re, g_im


def _fmt_var(k):
    return f"w{k + 1}"


def _fmt_product(slots_used, sl):
    counts = {}
    for s in slots_used:
        counts[sl[s]] = counts.get(sl[s], 0) + 1
    parts = []
    for k in sorted(counts):
        parts.append(_fmt_var(k) + (f"^{counts[k]}" if counts[k] > 1 else ""))
    return "*".join(parts), len(parts) > 1 or any(c > 1 for c in counts.values())


def _fmt_ratio(num, den, sl):
    n, _ = _fmt_product(num, sl)
    d, compound = _fmt_product(den, sl)
    return f"{n}/({d})" if compound else f"{n}/{d}"


def format_term(term: CrossingTerm) -> str:
    sl = term.slots
    pieces = []
    for coef, num, den in _LI2_TERMS:
        sign = "+" if coef * term.sign > 0 else "-"
        pieces.append(f"{sign} Li2({_fmt_ratio(num, den, sl)})")
    s = term.sign
    pieces.append(("-" if s > 0 else "+") + " pi^2/6")
    pieces.append(
        ("+" if s > 0 else "-")
        + f" log({_fmt_ratio((_B,), (_A,), sl)})*log({_fmt_ratio((_D,), (_A,), sl)})"
    )
    text = " ".join(pieces)
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return "{" + text + "}"


def format_potential(pf: PotentialFunction) -> str:
    """One bracket per crossing, in crossing order."""
    return "\n".join(("W = " if j == 0 else "  + ") + format_term(t) for j, t in enumerate(pf.terms))
