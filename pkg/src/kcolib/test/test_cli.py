import json
from kcolib.cli import main, uExit
from kcolib.graph import Colouring, read_graph, uStatus
from kcolib.basesmp import read_colourings


def test_gen_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["gen", "--n", "1000", "--d", "5", "--seed", "7",
                 "--out", str(a)]) == uExit.OK
    assert main(["gen", "--n", "1000", "--d", "5", "--seed", "7",
                 "--out", str(b)]) == uExit.OK
    assert a.read_bytes() == b.read_bytes()
    assert read_graph(a).n == 1000


def test_gen_bad_flags(capsys):
    assert main(["gen", "--n", "10", "--d", "-1"]) == uExit.USAGE
    assert "--d" in capsys.readouterr().err
    assert main(["gen", "--n", "0", "--d", "1"]) == uExit.USAGE
    assert main(["gen", "--n", "10"]) == uExit.USAGE
    assert main(["gen", "--n", "10", "--d", "1", "--bogus"]) == uExit.USAGE
    assert main([]) == uExit.USAGE


def test_sample(tmp_path):
    g = tmp_path / "g.json"
    out = tmp_path / "c.txt"
    log = tmp_path / "log.jsonl"
    trace = tmp_path / "mon.txt"
    main(["gen", "--n", "300", "--d", "3", "--seed", "1", "--out", str(g)])
    assert main(["sample", "--in", str(g), "--k", "12", "--seed", "1",
                 "--m", "10", "--out", str(out), "--log", str(log),
                 "--trace", str(trace)]) == uExit.OK
    hdr, xs = read_colourings(out)
    assert hdr == {"n": 300, "k": 12, "seed": 1}
    assert len(xs) == 10
    gr = read_graph(g)
    assert all(Colouring(x, 12).evaluate(gr) == uStatus.PROPER for x in xs)
    assert trace.read_text().strip().splitlines()[-1].startswith("run 9:")


def test_sample_run_log(tmp_path):
    g = tmp_path / "g.json"
    main(["gen", "--n", "300", "--d", "3", "--seed", "4", "--out", str(g)])
    txt = []
    for nw in ("1", "2"):
        log = tmp_path / "log{}.jsonl".format(nw)
        assert main(["sample", "--in", str(g), "--k", "7", "--m", "4",
                     "--workers", nw, "--out", str(tmp_path / "c.txt"),
                     "--log", str(log)]) == uExit.OK
        recs = [json.loads(s) for s in log.read_text().splitlines()]
        summ = recs[-1]["summary"]
        steps = recs[:-1]
        assert summ["runs"] == 4 and len(steps) == summ["r"] > 0
        for rec in steps:
            assert {"i", "bad", "q", "component_size", "resolved"} <= set(rec)
        assert [rec["run"] for rec in steps] == sorted(rec["run"]
                                                       for rec in steps)
        assert sum(rec["bad"] for rec in steps) == summ["bad_count"]
        txt.append([(rec["run"], rec["i"], rec["q"]) for rec in steps])
    assert txt[0] == txt[1]


def test_sample_errors(tmp_path):
    assert main(["sample", "--in", str(tmp_path / "none.json"), "--k", "5"]) \
        == uExit.IO
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["sample", "--in", str(bad), "--k", "5"]) == uExit.IO
    g = tmp_path / "g.json"
    main(["gen", "--n", "20", "--d", "2", "--out", str(g)])
    assert main(["sample", "--in", str(g), "--k", "2"]) == uExit.USAGE
    assert main(["sample", "--in", str(g), "--k", "5", "--mode", "x"]) \
        == uExit.USAGE


def test_schedule(tmp_path, capsys):
    g = tmp_path / "g.json"
    s = tmp_path / "s.json"
    main(["gen", "--n", "200", "--d", "3", "--seed", "2", "--out", str(g)])
    capsys.readouterr()
    assert main(["schedule", "--in", str(g), "--L", "4", "--d", "3",
                 "--out", str(s)]) == uExit.OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["replay_ok"]
    assert json.loads(s.read_text())["L"] == 4


def test_verify(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--suite", "bijection", "--max-n", "5", "--k", "3",
                 "--out", str(out)]) == uExit.OK
    recs = [json.loads(s) for s in out.read_text().splitlines()]
    assert recs and all(r["pass"] for r in recs)
    assert all("/" in v for r in recs for v in r["values"].values())
    assert main(["verify", "--suite", "nope"]) == uExit.USAGE


def test_analyze(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["analyze", "--n", "300", "--d", "3", "--k", "20",
                 "--trials", "50", "--lmax", "12", "--out", str(out)]) \
        == uExit.OK
    assert len(out.read_text().splitlines()) == 14
    assert main(["analyze", "--n", "300", "--d", "3", "--k", "20",
                 "--trials", "0"]) == uExit.USAGE


def test_bench(tmp_path, capsys):
    assert main(["bench", "--sizes", "200", "--d", "3", "--k", "8",
                 "--seeds", "1"]) == uExit.OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["exponent"] is None and len(rep["rows"]) == 1
    assert main(["bench", "--sizes", "400,200", "--d", "3", "--k", "8"]) \
        == uExit.USAGE
