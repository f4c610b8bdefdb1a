import numpy as np
import pytest

from shadowvol.coloring import (
    check_lemma1,
    find_p,
    find_region_coloring,
    arc_region_triples,
    p_is_valid,
    propagate_regions,
    shadow_coloring,
    verify_arc_coloring,
)
from shadowvol.errors import ArcColoringError, ColoringSearchError
from shadowvol.quandle import ParabolicElement, hopf_separated, star

from conftest import CORPUS, T_MINUS
from shadowvol.cli import load_job

P = ParabolicElement


def fig8_regions(t):
    return [P(1, 1), P(0, 1), P(-t - 1, t + 2), P(-2 * t - 1, 2 * t + 3), P(-2 * t - 1, t + 4), P(1, t + 2)]


TREFOIL_REGIONS = [P(-1, 2), P(1, 2), P(-1, 3), P(0, 1), P(1, 1), P(-2, 3)]


def assert_same(xs, ys, tol=1e-12):
    assert len(xs) == len(ys)
    for x, y in zip(xs, ys):
        assert x.distance(y) < tol, (x, y)


def test_arc_colors_verify(fig8_job, fig8_conj_job, trefoil_job, corpus_job):
    for job in (fig8_job, fig8_conj_job, trefoil_job, corpus_job):
        check = verify_arc_coloring(job.diagram, job.arc_colors)
        assert max(check.residuals) < 1e-9
        assert set(check.signs) <= {1, -1}


def test_perturbed_arc_color_fails(fig8_job):
    colors = list(fig8_job.arc_colors)
    colors[2] = P(colors[2].alpha + 1e-3, colors[2].beta)
    with pytest.raises(ArcColoringError) as info:
        verify_arc_coloring(fig8_job.diagram, colors)
    assert info.value.residual > 1e-6
    assert info.value.crossing is not None


def test_fig8_region_colors(fig8_job):
    region = propagate_regions(fig8_job.diagram, fig8_job.arc_colors, 0, P(1, 1))
    assert_same(region, fig8_regions(T_MINUS))


def test_fig8_conjugate_region_colors(fig8_conj_job):
    region = propagate_regions(fig8_conj_job.diagram, fig8_conj_job.arc_colors, 0, P(1, 1))
    assert_same(region, fig8_regions(T_MINUS.conjugate()))


def test_trefoil_region_colors(trefoil_job):
    region = propagate_regions(trefoil_job.diagram, trefoil_job.arc_colors, 0, P(-1, 2))
    assert_same(region, TREFOIL_REGIONS)


def test_one_step_propagation(fig8_job):
    d, arc = fig8_job.diagram, fig8_job.arc_colors
    region = propagate_regions(d, arc, 0, P(1, 1))
    es = next(es for es in d.edge_sides.values() if es.right == 0)
    moved = propagate_regions(d, arc, es.left, star(P(1, 1), arc[es.arc]))
    assert_same(moved, region)


def test_sign_insensitivity(corpus_job):
    d, arc = corpus_job.diagram, corpus_job.arc_colors
    base = propagate_regions(d, arc, 0, P(2, -1))
    for k in range(len(arc)):
        flipped = list(arc)
        flipped[k] = -flipped[k]
        assert propagate_regions(d, flipped, 0, P(2, -1)) == base


def test_hopf_distinct_on_reference_colorings(fig8_job, trefoil_job):
    assert check_lemma1(fig8_job.diagram, fig8_job.arc_colors, fig8_regions(T_MINUS))
    assert check_lemma1(trefoil_job.diagram, trefoil_job.arc_colors, TREFOIL_REGIONS)


def test_triples_cover_every_edge(corpus_job):
    d = corpus_job.diagram
    triples = arc_region_triples(d)
    assert {(es.arc, es.right, es.left) for es in d.edge_sides.values()} == set(triples)


def test_hopf_collision_detected(fig8_job):
    d, arc = fig8_job.diagram, fig8_job.arc_colors
    # seed region 1 with the color of an arc bounding it
    k = next(es.arc for es in d.edge_sides.values() if 0 in (es.left, es.right))
    region = propagate_regions(d, arc, 0, arc[k].scaled(2))
    result = check_lemma1(d, arc, region)
    assert not result
    assert result.violations


def test_seed_color_passthrough(trefoil_job):
    region = find_region_coloring(trefoil_job.diagram, trefoil_job.arc_colors, seed_color=P(-1, 2))
    assert_same(region, TREFOIL_REGIONS)


def test_bad_seed_color_rejected(fig8_job):
    with pytest.raises(ColoringSearchError):
        find_region_coloring(fig8_job.diagram, fig8_job.arc_colors, seed_color=fig8_job.arc_colors[1])


def test_random_search_is_valid_and_deterministic(corpus_job):
    d, arc = corpus_job.diagram, corpus_job.arc_colors
    r1 = find_region_coloring(d, arc, rng_seed=7)
    assert check_lemma1(d, arc, r1)
    assert find_region_coloring(d, arc, rng_seed=7) == r1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_search_within_ten_attempts(name):
    job = load_job(CORPUS[name])
    for seed in range(100):
        region = find_region_coloring(job.diagram, job.arc_colors, rng_seed=seed, max_attempts=10)
        find_p(job.arc_colors, region, rng_seed=seed, max_attempts=10)


def conjugated(arc, rng):
    # g a_k for a random g in SL(2, C); star is equivariant, so the relations survive
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m /= np.sqrt(np.linalg.det(m))
    return [P(*(m @ np.array([a.alpha, a.beta]))) for a in arc]


def test_conjugated_coloring_still_verifies(corpus_job):
    arc = conjugated(corpus_job.arc_colors, np.random.default_rng(1))
    verify_arc_coloring(corpus_job.diagram, arc)


def test_large_seed_passes_first_try(corpus_job):
    d = corpus_job.diagram
    rng = np.random.default_rng(0)
    arc = conjugated(corpus_job.arc_colors, rng)
    passed = 0
    for _ in range(100):
        s = P(1, int(rng.integers(10**3, 10**6)))
        if all(hopf_separated(s, a) for a in arc) and check_lemma1(d, arc, propagate_regions(d, arc, 0, s)):
            passed += 1
    assert passed >= 95


def test_find_p_accepts_reference_candidate(fig8_job, trefoil_job):
    assert find_p(fig8_job.arc_colors, fig8_regions(T_MINUS), candidate=P(2, 1)) == P(2, 1)
    assert find_p(trefoil_job.arc_colors, TREFOIL_REGIONS, candidate=P(2, 1)) == P(2, 1)


def test_find_p_rejects_arc_color(fig8_job):
    arc = fig8_job.arc_colors
    with pytest.raises(ColoringSearchError, match="a1"):
        find_p(arc, fig8_regions(T_MINUS), candidate=arc[0])


def test_find_p_rejects_region_color(trefoil_job):
    with pytest.raises(ColoringSearchError, match="s1"):
        find_p(trefoil_job.arc_colors, TREFOIL_REGIONS, candidate=P(-2, 4))


def test_find_p_random(corpus_job):
    d, arc = corpus_job.diagram, corpus_job.arc_colors
    region = find_region_coloring(d, arc, rng_seed=3)
    p = find_p(arc, region, rng_seed=3)
    assert p_is_valid(arc, region, p)
    assert find_p(arc, region, rng_seed=3) == p
    assert all(hopf_separated(star(p, a), a) for a in arc)
    assert p.alpha == int(p.alpha.real) and p.beta == int(p.beta.real)


def test_shadow_coloring_bundle(trefoil_job):
    col = shadow_coloring(trefoil_job.diagram, trefoil_job.arc_colors, seed_color=P(-1, 2), p=P(2, 1))
    assert col.p == P(2, 1)
    assert_same(col.region, TREFOIL_REGIONS)
