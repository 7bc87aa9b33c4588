"""Per-edge score estimators against closed-form and dense oracles.

The two exactly solvable families:

  * the line: the grounded ground problem behind the star score is a series
    chain of 2(r+1) unit resistors, giving score (2r+2)/(2r+3);
  * the regular tree: the branch impedance seen from the root edge obeys
    T_r = 1/(d-1), T_j = (1 + T_{j+1})/(d-1), score 2 T_0 / (1 + 2 T_0).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from pytest import approx

from hodgedim import (Subspace, ball, corollary4_table, diamond_score,
                      dim_window, edge_ball, family_from_window, family_edge,
                      folner_profile, hd_score, induced_window, lemma3_check,
                      make_family, origin_edge, score_report, sigma,
                      star_score, window_edge_ids)
from conftest import dense_star_projection


def line_star_oracle(r: int) -> float:
    return float(Fraction(2 * r + 2, 2 * r + 3))


def tree_star_oracle(d: int, r: int) -> float:
    t = Fraction(1, d - 1)
    for _ in range(r):
        t = (1 + t) / (d - 1)
    return float(2 * t / (1 + 2 * t))


TOL = 1e-10


def test_line_star_scores(z1):
    e = origin_edge(z1)
    for r in (1, 2, 3, 4, 8):
        assert star_score(z1, e, r) == approx(line_star_oracle(r), abs=1e-10)


def test_line_diamond_zero(z1):
    e = origin_edge(z1)
    for r in (1, 2, 4):
        assert diamond_score(z1, e, r) == 0.0


def test_line_hd(z1):
    e = origin_edge(z1)
    assert hd_score(z1, e, 1) == approx(1 / 5, abs=1e-10)


@pytest.mark.parametrize("d", [3, 4])
def test_tree_star_scores(d):
    fam = make_family("tree", d)
    e = origin_edge(fam)
    for r in (1, 2, 4, 6):
        assert star_score(fam, e, r) == approx(tree_star_oracle(d, r), abs=1e-9)


def test_tree_diamond_exactly_zero(tree3):
    # cycle rank 0 windows shortcut the solve entirely
    e = origin_edge(tree3)
    assert diamond_score(tree3, e, 5) == 0.0


def test_z2_star_against_dense(z2):
    e = origin_edge(z2)
    for r in (1, 2):
        w = edge_ball(z2, e, r)
        k, sign = w.edge_lookup(e)
        u = np.zeros(w.n_edges)
        u[k] = sign
        expect = float(u @ dense_star_projection(w, u, embedded=True))
        assert star_score(z2, e, r) == approx(expect, abs=1e-9)


def test_z2_diamond_against_dense(z2):
    e = origin_edge(z2)
    w = edge_ball(z2, e, 1)
    k, sign = w.edge_lookup(e)
    u = np.zeros(w.n_edges)
    u[k] = sign
    free = float(u @ dense_star_projection(w, u, embedded=False))
    assert diamond_score(z2, e, 1) == approx(1.0 - free, abs=1e-9)
    assert diamond_score(z2, e, 1) == approx(0.4, abs=1e-9)


def test_edge_ball_contains_both_endpoint_balls(z2):
    e = family_edge(z2, (0, 0), (1, 0))
    w = edge_ball(z2, e, 2)
    assert set(ball(z2, (0, 0), 2).vertices) <= set(w.vertices)
    assert set(ball(z2, (1, 0), 2).vertices) <= set(w.vertices)


def test_scores_partition(z2):
    e = origin_edge(z2)
    for r in (1, 3):
        s = star_score(z2, e, r)
        d = diamond_score(z2, e, r)
        h = hd_score(z2, e, r)
        assert s + d + h == approx(1.0, abs=1e-12)
        assert 0.0 <= min(s, d, h) and max(s, d, h) <= 1.0


def test_score_report_monotone(z2):
    e = origin_edge(z2)
    rep = score_report(z2, e, (1, 2, 4, 8))
    rep.validate()
    assert list(rep.star) == sorted(rep.star)
    assert list(rep.diamond) == sorted(rep.diamond)
    assert list(rep.hd) == sorted(rep.hd, reverse=True)


def test_score_report_needs_increasing_radii(z2):
    with pytest.raises(Exception):
        score_report(z2, origin_edge(z2), (4, 2))


def test_orientation_invariance(z2):
    e = family_edge(z2, (1, 0), (0, 0))
    assert star_score(z2, e, 1) == star_score(z2, e.canonical(), 1)


def test_translation_invariance(z2):
    a = star_score(z2, family_edge(z2, (0, 0), (1, 0)), 2)
    b = star_score(z2, family_edge(z2, (7, -3), (8, -3)), 2)
    assert a == approx(b, abs=1e-10)


def test_dim_window_full_is_one(z2):
    w = ball(z2, (0, 0), 2)
    assert dim_window(z2, w, Subspace.FULL, 3) == 1.0


def test_dim_window_additive(z2):
    w = ball(z2, (0, 0), 1)
    r = 2
    s = dim_window(z2, w, Subspace.STAR, r)
    d = dim_window(z2, w, Subspace.DIAMOND, r)
    h = dim_window(z2, w, Subspace.HD, r)
    assert s + d + h == approx(1.0, abs=1e-10)


def test_dim_window_jobs_identical(z2):
    w = ball(z2, (0, 0), 1)
    a = dim_window(z2, w, Subspace.HD, 2, jobs=1)
    b = dim_window(z2, w, Subspace.HD, 2, jobs=4)
    assert a == b


def test_triangle_diamond_third():
    """One independent cycle across three edges: diamond dimension 1/3 per
    edge, exactly."""
    z2 = make_family("diag_lattice")
    w = induced_window(z2, [(0, 0), (1, 0), (1, 1)])
    fam = family_from_window(w)
    assert dim_window(fam, w, Subspace.DIAMOND, 1) == approx(1 / 3, abs=1e-9)


def test_folner_profile(z2, tree3):
    rows = folner_profile(z2, (0, 0), (1, 2, 4, 8))
    ratios = [r.ratio_v for r in rows]
    assert ratios == sorted(ratios, reverse=True)
    assert rows[-1].ratio_v < 0.25
    # the tree's boundary never thins out
    trows = folner_profile(tree3, (), (2, 4, 6))
    assert min(r.ratio_v for r in trows) > 0.4


def test_lemma3_small_box(z2):
    box = induced_window(z2, [(i, j) for i in range(3) for j in range(3)])
    res = lemma3_check(z2, box, 12)
    assert res.holds
    assert res.lhs == approx(1.0 - dim_window(z2, box, Subspace.HD, 12),
                             abs=1e-9)
    assert res.rhs == approx(1.0 - len(sigma(box)) / box.n_edges)
    assert res.lhs >= res.rhs - 0.05


def test_cor4_columns(z2):
    rows = corollary4_table(z2, (0, 0), (1, 2), 2)
    assert [r.window_radius for r in rows] == [1, 2]
    assert [r.score_radius for r in rows] == [2, 4]
    for r in rows:
        assert 0.0 <= r.hd_dim_estimate <= 1.0
        assert 0.0 < r.sigma_over_e <= 1.0


def test_window_edge_ids(z2):
    w = ball(z2, (0, 0), 1)
    ids = window_edge_ids(w)
    assert len(ids) == w.n_edges
    for e in ids:
        assert e == e.canonical()
