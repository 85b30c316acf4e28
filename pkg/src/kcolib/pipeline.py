"""
module for the sampling pipeline

A run builds the deletion schedule, draws an exact uniform colouring of
the base graph and re-inserts the deleted edges one by one, repairing the
colouring with a q-switch whenever the inserted edge is monochromatic.

"""

import json
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
import numpy as np
from scipy import stats
from kcolib.graph import RandomStream, rCST, uMode, uStatus, uStream, \
    generate_gnp
from kcolib.schedule import auto_threshold, build_schedule
from kcolib.basesmp import sample_base, write_colourings
from kcolib.switching import step

# format definition for logging
fmt_bad = "step {:6d} ({:d},{:d}) bad  q={:d} size={:d} resolved={}\n"
fmt_end = "run {:d}: r={:d} bad={:d} unresolved={:d} status={}\n"


class RunConfig():
    """ class for run parameters """

    def __init__(self, k=3, seed=0, mode=uMode.FAITHFUL, L=None,
                 c_max=rCST.C_MAX, eps_warn=rCST.EPS_WARN):

        if k < 3:
            raise ValueError("k must be >= 3, got {}".format(k))
        if not 0 <= seed < rCST.SEED_MAX:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if L is not None and L < rCST.L_MIN:
            raise ValueError("L must be >= {}, got {}".format(rCST.L_MIN, L))

        # Colours and seed
        #
        self.k = k
        self.seed = seed
        self.mode = uMode(mode)

        # Schedule threshold, None selects it from n and the mean degree
        #
        self.L = L
        self.c_max = c_max
        self.eps_warn = eps_warn

        # Monitor level, >0 writes bad steps, >1 all step records
        #
        self.monlevel = 0


class RunLog():
    """ class for per-run statistics """

    def __init__(self, L=0, k=0, mode=uMode.FAITHFUL):
        self.L = L
        self.k = k
        self.mode = mode
        self.runs = 0
        self.r = 0
        self.bad_count = 0
        self.unresolved_count = 0
        self.exhausted_count = 0
        self.improper_count = 0
        self.random_bits_consumed = 0
        self.steps = []
        self.unresolved = []
        self.status = uStatus.UNCHECKED
        self.witness = None
        self.wall_time = {"schedule": 0.0, "base": 0.0, "steps": 0.0}

    def merge(self, other):
        """ accumulate counters and records of another run """
        self.runs += other.runs
        self.r += other.r
        self.bad_count += other.bad_count
        self.unresolved_count += other.unresolved_count
        self.exhausted_count += other.exhausted_count
        self.improper_count += other.improper_count
        self.random_bits_consumed += other.random_bits_consumed
        self.steps.extend(other.steps)
        self.unresolved.extend(other.unresolved)
        for key in self.wall_time:
            self.wall_time[key] += other.wall_time[key]

    def summary(self):
        return {"runs": self.runs, "L": self.L, "k": self.k,
                "mode": self.mode.name.lower(), "r": self.r,
                "bad_count": self.bad_count,
                "unresolved_count": self.unresolved_count,
                "exhausted_count": self.exhausted_count,
                "improper_count": self.improper_count,
                "random_bits_consumed": self.random_bits_consumed,
                "wall_time": self.wall_time}

    def write(self, path):
        """ step records as JSON lines followed by the summary """
        with open(path, 'w') as f:
            for rec in self.steps:
                f.write(json.dumps(rec, separators=(",", ":"))+"\n")
            f.write(json.dumps({"summary": self.summary()},
                               separators=(",", ":"))+"\n")


class rcsmp():
    """ class for random colouring sampling """

    def __init__(self, cfg, logfile=None):
        self.cfg = cfg
        self.monlevel = cfg.monlevel
        self.fout = None
        if logfile is not None:
            self.fout = open(logfile, 'w')
            self.monlevel = max(1, self.monlevel)
        self.schedule = None
        self.t_schedule = 0.0

    def close(self):
        if self.fout is not None:
            self.fout.close()
            self.fout = None

    def prepare(self, g):
        """ check the density condition and build the schedule """
        k = self.cfg.k
        dm = 2.0*g.nedge/g.n if g.n > 0 else 0.0
        if k < (2.0+self.cfg.eps_warn)*dm:
            warnings.warn("k={} below (2+{})*d for mean degree d={:.3f}".format(
                k, self.cfg.eps_warn, dm))
        L = self.cfg.L if self.cfg.L is not None else auto_threshold(g)
        t0 = time.perf_counter()
        self.schedule = build_schedule(g, L, dm)
        self.t_schedule = time.perf_counter()-t0
        return self.schedule

    def process(self, idx=0):
        """ run idx over the prepared schedule """
        s = self.schedule
        cfg = self.cfg
        log = RunLog(s.L, cfg.k, cfg.mode)
        log.runs = 1
        log.r = s.r
        log.wall_time["schedule"] = self.t_schedule
        st = RandomStream(cfg.seed, (uStream.RUN, idx))

        t0 = time.perf_counter()
        y = sample_base(s.base, cfg.k, st.child(uStream.BASE), cfg.c_max)
        t1 = time.perf_counter()
        log.wall_time["base"] = t1-t0

        w = s.base.copy()
        for i, (v, u) in enumerate(s.deletions):
            w.add_edge(v, u)
            out = step(w, v, u, y, st.child(uStream.STEP, i), cfg.mode,
                       inplace=True)
            y = out.colouring
            rec = out.record(i)
            rec["run"] = idx
            log.steps.append(rec)
            if out.bad:
                log.bad_count += 1
                if not out.resolved:
                    log.unresolved_count += 1
                    log.unresolved.append((v, u))
                if out.exhausted:
                    log.exhausted_count += 1
                    warnings.warn("run {}: palette exhausted at step {} "
                                  "({},{})".format(idx, i, v, u))
        log.wall_time["steps"] = time.perf_counter()-t1

        log.status = y.evaluate(w)
        log.witness = y.witness
        if log.status == uStatus.IMPROPER:
            log.improper_count = 1
        log.random_bits_consumed = st.bits
        return y, log

    def trace(self, idx, log):
        """ monitor trace of run idx, >0 bad steps, >1 every step record """
        if self.monlevel <= 0:
            return
        fo = self.fout if self.fout is not None else sys.stdout
        for rec in log.steps:
            if self.monlevel > 1:
                fo.write(json.dumps(rec, separators=(",", ":"))+"\n")
            elif rec["bad"]:
                v, u = self.schedule.deletions[rec["i"]]
                fo.write(fmt_bad.format(rec["i"], v, u, rec["q"],
                                        rec["component_size"],
                                        rec["resolved"]))
        fo.write(fmt_end.format(idx, log.r, log.bad_count,
                                log.unresolved_count,
                                log.status.name.lower()))


def run(g, cfg, logfile=None):
    """ one colouring of g with its run log """
    smp = rcsmp(cfg, logfile)
    try:
        smp.prepare(g)
        y, log = smp.process(0)
        smp.trace(0, log)
        return y, log
    finally:
        smp.close()


def _run_chunk(args):
    cfg, s, t_schedule, idxs, keep = args
    smp = rcsmp(cfg)
    smp.schedule = s
    smp.t_schedule = t_schedule
    out = []
    for j in idxs:
        try:
            y, log = smp.process(j)
        except ValueError as e:
            e.run_index = j
            raise
        if not keep:
            log.steps = []
        out.append((y, log))
    return out


def sample_many(g, cfg, m, out=None, logfile=None, workers=1, runlog=None):
    """ m independent runs over one schedule, in run-index order

    out receives the colouring file, runlog the JSON-lines step records of
    every run followed by the summary, logfile the monitor trace.
    """
    if m < 1:
        raise ValueError("m must be >= 1, got {}".format(m))
    smp = rcsmp(cfg, logfile)
    keep = runlog is not None or smp.monlevel > 0
    try:
        s = smp.prepare(g)
        agg = RunLog(s.L, cfg.k, cfg.mode)
        xs = []
        logs = []
        if workers <= 1:
            for j in range(m):
                try:
                    y, log = smp.process(j)
                except ValueError as e:
                    e.run_index = j
                    raise
                logs.append((j, y, log))
        else:
            chunks = [list(c) for c in np.array_split(np.arange(m), workers)
                      if len(c) > 0]
            jobs = [(cfg, s, smp.t_schedule, [int(j) for j in c], keep)
                    for c in chunks]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                res = [y for part in ex.map(_run_chunk, jobs) for y in part]
            logs = [(j, y, log) for j, (y, log) in enumerate(res)]
        for j, y, log in logs:
            smp.trace(j, log)
            if runlog is None:
                log.steps = []
            xs.append(y)
            agg.merge(log)
        # the schedule is shared, count its time once
        agg.wall_time["schedule"] = smp.t_schedule
    finally:
        smp.close()
    if out is not None:
        write_colourings(xs, out, g.n, cfg.k, cfg.seed)
    if runlog is not None:
        agg.write(runlog)
    return xs, agg


class BenchReport():
    """ class for runtime scaling results """

    def __init__(self, d, k, mode):
        self.d = d
        self.k = k
        self.mode = mode
        self.rows = []
        self.exponent = None
        self.stderr = None

    def todict(self):
        return {"d": self.d, "k": self.k, "mode": self.mode.name.lower(),
                "rows": self.rows, "exponent": self.exponent,
                "stderr": self.stderr}


def bench(sizes, d, k, seeds, mode=uMode.RETRY):
    """ median wall time per size and the fitted log-log exponent """
    if len(sizes) == 0 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be non-empty and strictly ascending")
    if seeds < 1:
        raise ValueError("seeds must be >= 1")
    rep = BenchReport(d, k, uMode(mode))
    for n in sizes:
        ts = []
        bits = []
        for seed in range(seeds):
            t0 = time.perf_counter()
            g = generate_gnp(n, d, RandomStream(seed, (uStream.GEN,)))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                _, log = run(g, RunConfig(k, seed, mode))
            ts.append(time.perf_counter()-t0)
            bits.append(log.random_bits_consumed)
        rep.rows.append({"n": n, "times": ts, "median": float(np.median(ts)),
                         "bits_per_vertex": float(np.mean(bits))/n})
    if len(sizes) >= 2:
        fit = stats.linregress(np.log(sizes),
                               np.log([row["median"] for row in rep.rows]))
        rep.exponent = float(fit.slope)
        rep.stderr = float(fit.stderr)
    return rep


def bad_frequency(n, d, k, seeds, mode=uMode.FAITHFUL):
    """ pooled fraction of bad steps, 1/k, z-score and number of steps """
    nbad = 0
    nstep = 0
    for seed in range(seeds):
        g = generate_gnp(n, d, RandomStream(seed, (uStream.GEN,)))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            _, log = run(g, RunConfig(k, seed, mode))
        nbad += log.bad_count
        nstep += log.r
    if nstep == 0:
        return 0.0, 1.0/k, 0.0, 0
    f = nbad/nstep
    p = 1.0/k
    sd = np.sqrt(p*(1-p)/nstep)
    return f, p, (f-p)/sd, nstep


def bits_per_vertex(sizes, d, k, seed=0, mode=uMode.RETRY):
    """ random bits consumed per vertex for each size """
    out = []
    for n in sizes:
        g = generate_gnp(n, d, RandomStream(seed, (uStream.GEN,)))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            _, log = run(g, RunConfig(k, seed, mode))
        out.append(log.random_bits_consumed/n)
    return out
