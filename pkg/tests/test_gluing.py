import random

import pytest

from loopfloer import (
    Loop,
    Slope,
    glue_is_lspace,
    is_lspace_slope,
    lspace_aligned,
    pair_is_lspace,
)
from loopfloer.detection import SlopeSet
from loopfloer.gluing import aligned_intervals
from loopfloer.plumbing import cfd, n_t_tree
from conftest import random_good_bounded_tree


def s(text):
    return Slope.parse(text)


def test_solid_torus_branch():
    e = Loop.from_text("e")
    tre = Loop.from_text("a1 b1 c-2")
    # reciprocal of the longitude 0 is infinity, an L-space slope of the knot
    assert glue_is_lspace(e, tre)
    assert glue_is_lspace(e, e)
    # the dual solid torus has longitude infinity: tests slope 0 on the knot
    assert not glue_is_lspace(Loop.from_text("e*"), tre)
    assert is_lspace_slope(tre, s("0")) is False


def test_both_sides_solid_torus_like():
    e = Loop.from_text("e")
    estar = Loop.from_text("e*")
    assert glue_is_lspace(e, e)  # longitudes 0 and 0: reciprocal inf != 0
    assert not glue_is_lspace(estar, e)  # longitude inf pairs with slope 0 of e
    assert glue_is_lspace(estar, estar)


def test_aligned_intervals_cases():
    all_but_zero = SlopeSet.all_except(s("0"))
    all_but_inf = SlopeSet.all_except(s("inf"))
    trefoil_arc = SlopeSet.closed_arc(s("inf"), s("-1"))
    # reciprocal of {0} is infinity, inside the interior of AllExcept(0)
    assert aligned_intervals(all_but_zero, all_but_zero)
    # reciprocal of {inf} is 0, excluded from AllExcept(0)? 0 != inf: fine
    assert aligned_intervals(all_but_inf, all_but_zero) is False
    assert aligned_intervals(SlopeSet.empty(), all_but_zero) is False
    # trefoil against itself: non-strict reciprocals [-1, 0] land outside
    assert not aligned_intervals(trefoil_arc, trefoil_arc)


def test_gluing_matches_pairing_on_named_pairs():
    pool = [
        [Loop.from_text("e")],
        [Loop.from_text("e*")],
        [Loop.from_text("d1 d0")],
        [Loop.from_text("a1 b1 c-2")],
        [Loop.from_text("a1 b1 c1")],
        cfd(n_t_tree(2)),
        [Loop.from_text("d-4 d-3")],
    ]
    for i in range(len(pool)):
        for j in range(len(pool)):
            g = glue_is_lspace(pool[i], pool[j])
            p = pair_is_lspace(pool[i], pool[j])
            assert g == p, (i, j, g, p)


def test_gluing_symmetry_random():
    rng = random.Random(21)
    pool = []
    while len(pool) < 10:
        loops = cfd(random_good_bounded_tree(rng))
        if sum(len(l) for l in loops) <= 20:
            pool.append(loops)
    for i in range(len(pool)):
        for j in range(i, len(pool)):
            assert glue_is_lspace(pool[i], pool[j]) == glue_is_lspace(
                pool[j], pool[i]
            )


def test_alignment_invariant_under_matched_twists():
    from loopfloer.twists import twist

    l1 = [Loop.from_text("a1 b1 c-2")]
    l2 = [Loop.from_text("a1 b1 c1")]
    base = lspace_aligned(l1, l2)
    for n in (1, -2, 3):
        t1 = [twist(x, "tw", n) for x in l1]
        t2 = [twist(x, "du", n) for x in l2]
        assert lspace_aligned(t1, t2) == base


def test_gluing_propagates_interval_errors():
    # two solid-torus-like components with different longitudes do not form
    # a manifold invariant; the interval intersection refuses them
    loops = [Loop.from_text("e"), Loop.from_text("d1")]
    with pytest.raises(ValueError):
        lspace_aligned(loops, [Loop.from_text("a1 b1 c-2")])
