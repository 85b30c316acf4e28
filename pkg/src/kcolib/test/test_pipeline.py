import json
import warnings
import pytest
from kcolib.graph import Graph, RandomStream, edge, generate_gnp, \
    iter_proper, uMode, uStatus, uStream
from kcolib.basesmp import read_colourings
from kcolib.pipeline import RunConfig, bad_frequency, bench, \
    bits_per_vertex, rcsmp, run, sample_many


def gnp(n, d, seed):
    return generate_gnp(n, d, RandomStream(seed, (uStream.GEN,)))


def test_config_errors():
    with pytest.raises(ValueError):
        RunConfig(k=2)
    with pytest.raises(ValueError):
        RunConfig(k=3, seed=-1)
    with pytest.raises(ValueError):
        RunConfig(k=3, L=2)
    cfg = RunConfig(4, 1, uMode.RETRY)
    assert cfg.mode == uMode.RETRY and cfg.L is None and cfg.monlevel == 0


def test_tree_no_steps():
    t = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    x, log = run(t, RunConfig(3, 2))
    assert log.r == 0 and log.steps == []
    assert log.status == uStatus.PROPER
    assert x.evaluate(t) == uStatus.PROPER


def test_run_retry_proper():
    g = gnp(300, 3, 1)
    cfg = RunConfig(12, 5, uMode.RETRY)
    x, log = run(g, cfg)
    assert x.evaluate(g) == uStatus.PROPER
    assert log.r == len(log.steps) > 0
    assert log.unresolved_count == log.exhausted_count == 0
    assert log.random_bits_consumed > 0
    y, _ = run(g, cfg)
    assert x == y


def test_run_faithful_witness():
    g = gnp(200, 4, 3)
    for seed in range(5):
        x, log = run(g, RunConfig(3, seed, uMode.FAITHFUL))
        mono = set(x.monochromatic(g))
        assert mono <= {edge(v, u) for v, u in log.unresolved}
        assert (log.status == uStatus.IMPROPER) == bool(mono)


def test_step_records():
    g = gnp(150, 3, 2)
    _, log = run(g, RunConfig(5, 0))
    for i, rec in enumerate(log.steps):
        assert rec["i"] == i
        if not rec["bad"]:
            assert rec["q"] is None and rec["component_size"] == 0
        else:
            assert rec["component_size"] == len(rec["component"]) >= 1
    assert log.bad_count == sum(r["bad"] for r in log.steps)


def test_sample_many_matches_run():
    g = gnp(120, 3, 4)
    cfg = RunConfig(6, 9, uMode.RETRY)
    x, _ = run(g, cfg)
    xs, agg = sample_many(g, cfg, 1)
    assert xs[0] == x
    assert agg.runs == 1


def test_sample_many_workers(tmp_path):
    g = gnp(80, 3, 6)
    cfg = RunConfig(7, 3, uMode.RETRY)
    a, la = sample_many(g, cfg, 6)
    fn = tmp_path / "c.txt"
    b, lb = sample_many(g, cfg, 6, out=fn, workers=2)
    assert a == b
    assert la.bad_count == lb.bad_count
    hdr, ys = read_colourings(fn)
    assert hdr == {"n": 80, "k": 7, "seed": 3}
    assert ys == [tuple(x.x.tolist()) for x in a]
    with pytest.raises(ValueError):
        sample_many(g, cfg, 0)


def test_sample_many_covers_small():
    # 5-cycle, one deletion at L=3, the path never exhausts the palette
    g = Graph(5, [(i, (i+1) % 5) for i in range(5)])
    cols = set(iter_proper(g, 4))
    xs, agg = sample_many(g, RunConfig(4, 1, uMode.RETRY), 6000)
    assert agg.r == 6000 and agg.exhausted_count == 0
    seen = {tuple(x.x.tolist()) for x in xs}
    assert seen == cols


def test_density_warning():
    g = Graph(6, [(v, u) for v in range(6) for u in range(v+1, 6)])
    smp = rcsmp(RunConfig(3, 0))
    with pytest.warns(UserWarning):
        smp.prepare(g)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rcsmp(RunConfig(11, 0)).prepare(g)


def test_run_log_file(tmp_path):
    g = gnp(100, 3, 8)
    fn = tmp_path / "mon.txt"
    _, log = run(g, RunConfig(4, 0), logfile=fn)
    txt = fn.read_text()
    assert txt.strip().splitlines()[-1].startswith("run 0:")
    out = tmp_path / "log.jsonl"
    log.write(out)
    lines = out.read_text().splitlines()
    assert len(lines) == log.r+1
    assert json.loads(lines[-1])["summary"]["bad_count"] == log.bad_count


def test_bench_errors():
    with pytest.raises(ValueError):
        bench([200, 100], 3, 8, 1)
    with pytest.raises(ValueError):
        bench([], 3, 8, 1)


def test_bench_single_size():
    rep = bench([200], 3, 8, 2)
    assert rep.exponent is None
    assert len(rep.rows) == 1 and len(rep.rows[0]["times"]) == 2


def test_bench_fit():
    rep = bench([200, 400], 3, 8, 1)
    assert rep.exponent is not None


def test_bad_frequency():
    f, p, z, nstep = bad_frequency(400, 3, 5, 3)
    assert nstep > 0 and 0 <= f <= 1
    assert p == pytest.approx(0.2)
    assert abs(z) < 5


def test_bits_per_vertex():
    b = bits_per_vertex([200, 400], 3, 8)
    assert len(b) == 2
    assert all(0 < x < 20 for x in b)


@pytest.mark.slow
def test_bench_scaling():
    rep = bench([20000, 40000, 80000], 5, 12, 3)
    assert rep.exponent <= 2.3


@pytest.mark.slow
def test_retry_always_proper_large():
    for seed in range(5):
        g = gnp(10000, 5, seed)
        x, log = run(g, RunConfig(12, seed, uMode.RETRY))
        assert log.status == uStatus.PROPER


def test_sample_many_run_log(tmp_path):
    g = gnp(150, 3, 11)
    cfg = RunConfig(7, 2, uMode.RETRY)
    fa = tmp_path / "a.jsonl"
    fb = tmp_path / "b.jsonl"
    _, la = sample_many(g, cfg, 5, runlog=fa)
    _, lb = sample_many(g, cfg, 5, runlog=fb, workers=3)
    assert fa.read_text().splitlines()[:-1] == fb.read_text().splitlines()[:-1]
    recs = [json.loads(s) for s in fa.read_text().splitlines()]
    assert len(recs) == la.r+1
    assert [r["run"] for r in recs[:-1]] == \
        [j for j in range(5) for _ in range(la.r//5)]
    assert recs[-1]["summary"]["runs"] == 5
    assert lb.steps == la.steps
    # records are dropped when no run log is requested
    _, lc = sample_many(g, cfg, 5, workers=3)
    assert lc.steps == [] and lc.r == la.r


@pytest.mark.slow
def test_bad_frequency_pooled():
    f, p, z, nstep = bad_frequency(3000, 4, 12, 5)
    assert nstep >= 10**4
    assert abs(z) <= 5


@pytest.mark.slow
def test_bits_per_vertex_flat():
    b = bits_per_vertex([10**3, 10**4, 10**5], 5, 12)
    assert all(0 < x < 20 for x in b)
    # no growth with n
    assert b[2] <= 1.1*b[0] and b[1] <= 1.1*b[0]
