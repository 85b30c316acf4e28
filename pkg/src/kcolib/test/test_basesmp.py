from fractions import Fraction
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats
from kcolib.graph import CyclicComponentError, Graph, RandomStream, \
    UncolourableError, encode, iter_proper, uStatus, uStream
from kcolib.basesmp import CountTable, base_law, component_law, \
    count_component_colourings, count_tree_colourings, read_colourings, \
    sample_base, sample_component_colouring, spanning_tree, write_colourings


def cycle(n):
    return Graph(n, [(i, (i+1) % n) for i in range(n)])


@st.composite
def trees(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    es = [(draw(st.integers(0, v-1)), v) for v in range(1, n)]
    return Graph(n, es)


def test_tree_counts():
    p3 = Graph(3, [(0, 1), (1, 2)])
    total, t = count_tree_colourings(p3, [list(range(3))]*3, 3)
    assert total == 12
    assert t.cnt[t.root] == [4, 4, 4]
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert count_tree_colourings(star, [list(range(4))]*5, 4)[0] == 4*3**4


def test_list_counts():
    p3 = Graph(3, [(0, 1), (1, 2)])
    lists = [[0], [0, 1, 2], [0]]
    assert count_tree_colourings(p3, lists, 3)[0] == 2
    lists = [[0], [0], [1]]
    assert count_tree_colourings(p3, lists, 3)[0] == 0


def test_count_table_needs_tree():
    with pytest.raises(ValueError):
        CountTable(cycle(3), [list(range(3))]*3, 3)


@settings(max_examples=40, deadline=None)
@given(trees(), st.integers(2, 4))
def test_tree_count_matches_enumeration(t, k):
    total, _ = count_tree_colourings(t, [list(range(k))]*t.n, k)
    assert total == len(list(iter_proper(t, k)))
    assert total == k*(k-1)**(t.n-1)


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_cycle_counts(n, k):
    ref = (k-1)**n+(-1)**n*(k-1)
    assert count_component_colourings(cycle(n), k) == ref


def test_theta_count():
    g = Graph(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)])
    for k in (3, 4):
        assert count_component_colourings(g, k) == \
            len(list(iter_proper(g, k)))


def test_spanning_tree():
    tree, extra = spanning_tree(cycle(5))
    assert tree.nedge == 4
    assert extra == [(2, 3)]


def test_cyclic_cap():
    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(CyclicComponentError) as e:
        count_component_colourings(k4, 4)
    assert e.value.beta == 3
    assert count_component_colourings(k4, 4, c_max=3) == 24
    with pytest.raises(CyclicComponentError):
        sample_base(k4, 4, RandomStream(0))
    x = sample_base(k4, 4, RandomStream(0), brute=True)
    assert x.evaluate(k4) == uStatus.PROPER


def test_uncolourable():
    with pytest.raises(UncolourableError):
        sample_component_colouring(cycle(3), 2, RandomStream(0))
    with pytest.raises(UncolourableError):
        sample_base(Graph(2, [(0, 1)]), 1, RandomStream(0))


def test_sample_base_proper():
    g = Graph(9, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (6, 7), (7, 8),
                  (8, 5), (5, 7)])
    for seed in range(20):
        x = sample_base(g, 3, RandomStream(seed, (uStream.BASE,)))
        assert x.evaluate(g) == uStatus.PROPER


def test_sample_base_deterministic():
    g = Graph(6, [(0, 1), (1, 2), (3, 4)])
    a = sample_base(g, 5, RandomStream(4))
    b = sample_base(g, 5, RandomStream(4))
    assert a == b


def test_component_law_uniform():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)])
    law = component_law(g, 3)
    cols = list(iter_proper(g, 3))
    assert set(law) == set(cols)
    assert all(p == Fraction(1, len(cols)) for p in law.values())


def test_base_law_uniform():
    g = Graph(6, [(0, 1), (1, 2), (2, 0), (4, 5)])
    dist = base_law(g, 3)
    dist.check()
    cols = list(iter_proper(g, 3))
    assert dist.support == {encode(x, 3) for x in cols}
    assert all(dist.prob(encode(x, 3)) == Fraction(1, len(cols))
               for x in cols)


def test_sample_chisquare():
    g = cycle(4)
    cols = list(iter_proper(g, 3))
    idx = {x: i for i, x in enumerate(cols)}
    cnt = np.zeros(len(cols))
    st_ = RandomStream(9)
    for j in range(9000):
        x = sample_base(g, 3, st_.child(j))
        cnt[idx[tuple(x.x.tolist())]] += 1
    assert stats.chisquare(cnt).pvalue > 1e-4


def test_colouring_file(tmp_path):
    g = Graph(3, [(0, 1), (1, 2)])
    xs = [sample_base(g, 3, RandomStream(s)) for s in range(4)]
    fn = tmp_path / "c.txt"
    write_colourings(xs, fn, 3, 3, 0)
    hdr, ys = read_colourings(fn)
    assert hdr == {"n": 3, "k": 3, "seed": 0}
    assert ys == [tuple(x.x.tolist()) for x in xs]
