from fractions import Fraction
import warnings
import numpy as np
import pytest
from kcolib.graph import Graph
from kcolib.decay import correlation_decay, count_paths, \
    disagree_prob, path_decay_sim


def quiet(*args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return path_decay_sim(*args, **kw)


def path(n):
    return Graph(n, [(i, i+1) for i in range(n-1)])


def test_disagree_prob():
    q = disagree_prob(4, [0, 1, 3, 4, 7])
    assert np.allclose(q, [0.25, 1/3, 1.0, 1.0, 1.0])


def test_count_paths_triangle():
    indptr = [0, 2, 4, 6]
    indices = [1, 2, 0, 2, 0, 1]
    mark = np.ones(3, dtype=bool)
    assert count_paths(indptr, indices, mark, 0, 3).tolist() == [1, 2, 2, 0]
    mark[1] = False
    assert count_paths(indptr, indices, mark, 0, 3).tolist() == [1, 1, 0, 0]


def test_trials_error():
    with pytest.raises(ValueError):
        path_decay_sim(100, 3, 10, 0, 5)


def test_few_trials_warn():
    with pytest.warns(UserWarning):
        path_decay_sim(100, 3, 10, 20, 3)


def test_large_k_vanishes():
    rep = quiet(500, 5, 10**6, 200, 4)
    assert rep.mean[0] == 1
    assert rep.mean[1] < 0.01
    assert rep.ratio < 0.01


def test_decay_below_threshold_ratio():
    rep = quiet(2000, 20, 50, 300, 6, seed=1)
    assert rep.ratio < 1
    assert np.all(rep.mean >= 0)


def test_growth_small_k():
    rep = quiet(2000, 20, 10, 20, 3, seed=2)
    assert rep.ratio > 1


def test_deterministic_workers():
    a = quiet(300, 4, 12, 40, 5, seed=3)
    b = quiet(300, 4, 12, 40, 5, seed=3, workers=2)
    assert np.array_equal(a.mean, b.mean)
    assert np.array_equal(a.stderr, b.stderr)


def test_csv(tmp_path):
    rep = quiet(200, 3, 20, 50, 12)
    fn = tmp_path / "decay.csv"
    rep.write_csv(fn)
    lines = fn.read_text().splitlines()
    assert lines[0] == "l,gamma,stderr"
    assert len(lines) == 14
    assert [int(s.split(',')[0]) for s in lines[1:]] == list(range(13))


def test_correlation_independent():
    g = Graph(4, [(0, 1), (2, 3)])
    rep = correlation_decay(g, 0, 3, 3)
    assert rep.deviation == 0 and rep.dist is None


def test_correlation_edge():
    rep = correlation_decay(Graph(2, [(0, 1)]), 0, 1, 3)
    assert rep.exact
    assert rep.deviation == Fraction(1, 3)


def test_correlation_decays_along_path():
    g = path(7)
    near = correlation_decay(g, 0, 2, 4)
    far = correlation_decay(g, 0, 6, 4)
    assert far.deviation < near.deviation
    assert far.dist == 6


def test_correlation_sampled():
    g = path(20)
    rep = correlation_decay(g, 0, 3, 4, samples=400, seed=1)
    assert not rep.exact
    assert rep.nsample == 400
    assert 0 <= rep.deviation < 0.3
    with pytest.raises(ValueError):
        correlation_decay(g, 0, 3, 4)


@pytest.mark.slow
def test_decay_direction_full():
    rep = path_decay_sim(5000, 20, 50, 2000, 8)
    assert rep.ratio_hi is not None and rep.ratio_hi < 1
    con = quiet(5000, 20, 10, 500, 3)
    assert con.ratio_lo is not None and con.ratio_lo > 1
