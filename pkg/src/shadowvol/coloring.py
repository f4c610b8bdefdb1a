"""Shadow-colorings: arc colors, region colors and the auxiliary point p.

Region rule: if a region colored ``s`` lies on the right of a directed arc
colored ``x``, the region on its left is colored ``s * x``.  The same rule
governs under-arcs at a crossing: the under-arc on the right of the over-arc
``x`` is carried to ``(that color) * x`` on the left, up to sign.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .diagram import LinkDiagram
from .errors import ArcColoringError, ColoringSearchError
from .quandle import ParabolicElement, hopf, hopf_separated, star, star_inv

log = logging.getLogger(__name__)

HOPF_TOL = 1e-8


@dataclass(frozen=True)
class ShadowColoring:
    arc: tuple  # ParabolicElement per arc
    region: tuple  # ParabolicElement per region
    p: ParabolicElement


@dataclass(frozen=True)
class ArcCheck:
    signs: tuple  # +1 / -1 per crossing: which sign realizes the relation
    residuals: tuple  # relative residual per crossing


@dataclass(frozen=True)
class HopfCheckResult:
    passed: bool
    violations: tuple  # (arc, right region, left region) triples with a Hopf collision

    def __bool__(self):
        return self.passed


def _rel_dist(x: ParabolicElement, y: ParabolicElement) -> float:
    return x.distance(y) / max(1.0, y.norm())


def arc_residuals(diagram: LinkDiagram, colors) -> ArcCheck:
    signs, res = [], []
    for d in diagram.data:
        k = colors[d.over_arc]
        m = star(colors[d.right_under_arc], k)
        target = colors[d.left_under_arc]
        plus, minus = _rel_dist(m, target), _rel_dist(m, -target)
        signs.append(1 if plus <= minus else -1)
        res.append(min(plus, minus))
    return ArcCheck(tuple(signs), tuple(res))


def verify_arc_coloring(diagram: LinkDiagram, colors, tol=1e-9) -> ArcCheck:
    """Check the crossing relation ``a_out = +-(a_in * a_over)`` everywhere.

    Returns the per-crossing sign choices; raises ArcColoringError naming the
    worst crossing otherwise.
    """
    if len(colors) != diagram.n_arcs:
        raise ArcColoringError(f"expected {diagram.n_arcs} arc colors, got {len(colors)}")
    check = arc_residuals(diagram, colors)
    worst = int(np.argmax(check.residuals))
    if check.residuals[worst] > tol:
        raise ArcColoringError(
            f"crossing {worst + 1}: arc relation violated (residual {check.residuals[worst]:.3e}); "
            "the arc colors do not define a representation",
            crossing=worst,
            residual=check.residuals[worst],
        )
    return check


def propagate_regions(diagram: LinkDiagram, arc, seed_region: int, seed_color, tol=1e-9) -> tuple:
    """Region colors determined by one seed, by breadth-first search of the dual graph."""
    n = diagram.n_regions
    if not 0 <= seed_region < n:
        raise ColoringSearchError(f"no region with index {seed_region}")
    nbrs = [[] for _ in range(n)]
    for es in diagram.edge_sides.values():
        nbrs[es.right].append((es.left, arc[es.arc], True))
        nbrs[es.left].append((es.right, arc[es.arc], False))
    colors = [None] * n
    colors[seed_region] = seed_color
    queue = deque([seed_region])
    while queue:
        r = queue.popleft()
        for other, x, to_left in nbrs[r]:
            if colors[other] is None:
                colors[other] = star(colors[r], x) if to_left else star_inv(colors[r], x)
                queue.append(other)
    for es in diagram.edge_sides.values():
        expected = star(colors[es.right], arc[es.arc])
        err = _rel_dist(expected, colors[es.left])
        if err > tol:
            raise ColoringSearchError(
                f"region colors inconsistent across edge {es.edge} (error {err:.3e}); "
                "arc colors or diagram are faulty"
            )
    return tuple(colors)


def arc_region_triples(diagram: LinkDiagram):
    """Distinct ``(arc, right region, left region)`` incidences."""
    seen = []
    for e in sorted(diagram.edge_sides):
        es = diagram.edge_sides[e]
        t = (es.arc, es.right, es.left)
        if t not in seen:
            seen.append(t)
    return seen


def check_lemma1(diagram: LinkDiagram, arc, region, tol=HOPF_TOL) -> HopfCheckResult:
    """Pairwise distinct Hopf values for every (a_k, s, s * a_k) around every arc."""
    bad = []
    for k, r, l in arc_region_triples(diagram):
        a, s, sa = arc[k], region[r], region[l]
        if not (hopf_separated(a, s, tol) and hopf_separated(s, sa, tol) and hopf_separated(sa, a, tol)):
            bad.append((k, r, l))
    return HopfCheckResult(not bad, tuple(bad))


def _random_element(rng, bound) -> ParabolicElement:
    while True:
        x, y = (int(v) for v in rng.integers(-bound, bound + 1, size=2))
        if x or y:
            return ParabolicElement(x, y)


def find_region_coloring(
    diagram: LinkDiagram,
    arc,
    rng_seed=0,
    seed_color=None,
    seed_region=0,
    max_attempts=1000,
    tol=HOPF_TOL,
):
    """Region coloring satisfying the Hopf-distinctness condition.

    With ``seed_color`` given, only that seed is tried.  Otherwise seeds with
    small integer entries are drawn (the bound grows with every attempt) until
    one works.
    """
    if seed_color is not None:
        region = propagate_regions(diagram, arc, seed_region, seed_color)
        result = check_lemma1(diagram, arc, region, tol)
        if not result:
            raise ColoringSearchError(
                f"seed color for region {seed_region + 1} gives colliding Hopf values "
                f"at {len(result.violations)} arc/region triples"
            )
        return region
    rng = np.random.default_rng(rng_seed)
    for attempt in range(max_attempts):
        s = _random_element(rng, 10 + attempt)
        if not all(hopf_separated(s, a, tol) for a in arc):
            continue
        region = propagate_regions(diagram, arc, seed_region, s)
        if check_lemma1(diagram, arc, region, tol):
            log.debug("region coloring found after %d attempts", attempt + 1)
            return region
    raise ColoringSearchError(f"no valid region coloring in {max_attempts} attempts")


def p_is_valid(arc, region, p, tol=HOPF_TOL) -> bool:
    return all(hopf_separated(p, x, tol) for x in (*arc, *region))


def find_p(arc, region, rng_seed=0, candidate=None, max_attempts=1000, tol=HOPF_TOL):
    """Auxiliary point whose Hopf value avoids every arc and region color."""
    if candidate is not None:
        if not p_is_valid(arc, region, candidate, tol):
            hits = [
                f"{name}{i + 1}"
                for name, group in (("a", arc), ("s", region))
                for i, x in enumerate(group)
                if not hopf_separated(candidate, x, tol)
            ]
            raise ColoringSearchError(f"p = {candidate} shares its Hopf value with {', '.join(hits)}")
        return candidate
    rng = np.random.default_rng(rng_seed)
    for attempt in range(max_attempts):
        p = _random_element(rng, 10 + attempt)
        if p_is_valid(arc, region, p, tol):
            _assert_p_moves(arc, p, tol)
            return p
    raise ColoringSearchError(f"no valid p in {max_attempts} attempts")


def _assert_p_moves(arc, p, tol):
    # h(p * a) == h(a) would force h(p) == h(a), already excluded
    for a in arc:
        assert hopf_separated(star(p, a), a, tol), (p, a)


def shadow_coloring(
    diagram: LinkDiagram,
    arc,
    rng_seed=0,
    seed_color=None,
    seed_region=0,
    p=None,
    tol=HOPF_TOL,
) -> ShadowColoring:
    region = find_region_coloring(
        diagram, arc, rng_seed=rng_seed, seed_color=seed_color, seed_region=seed_region, tol=tol
    )
    p = find_p(arc, region, rng_seed=rng_seed, candidate=p, tol=tol)
    return ShadowColoring(tuple(arc), tuple(region), p)


def hopf_values(colors):
    return [hopf(c) for c in colors]
