"""
module for the edge-deletion schedule

The schedule deletes, in canonical edge order, every edge whose shortest
containing cycle is at least L long. The deletions are kept in reverse so
that replaying them from the base graph G_0 rebuilds the input graph.

"""

import heapq
import json
from math import ceil, log
from kcolib.graph import RandomStream, rCST, uComp, uStream, edge, \
    ball, components, distance, generate_gnp, shortest_cycle_through_edge, \
    str2graph, _bidir_dist


class DeletionSchedule():
    """ class for base graph plus replay order of deleted edges """

    def __init__(self, base, deletions, L, source_n=0, source_d=0.0):
        self.base = base
        self.deletions = list(deletions)
        self.L = L
        self.source_n = source_n
        self.source_d = source_d

    def __repr__(self):
        return "DeletionSchedule(n={}, r={}, L={})".format(
            self.base.n, self.r, self.L)

    @property
    def r(self):
        return len(self.deletions)

    def replay(self, i):
        """ graph G_i with the first i deletions restored """
        if not 0 <= i <= self.r:
            raise ValueError("replay index {} out of [0, {}]".format(i, self.r))
        g = self.base.copy()
        for v, u in self.deletions[:i]:
            g.add_edge(v, u)
        return g

    def final(self):
        return self.replay(self.r)


class ScheduleReport():
    """ class for schedule audit results """

    def __init__(self):
        self.r = 0
        self.r_bound = 0.0
        self.r_ok = True
        self.ncomp = 0
        self.census = {t: 0 for t in uComp}
        self.max_cyclomatic = 0
        self.min_pair_distance = None
        self.distance_violations = 0
        self.adjacency_violations = 0
        self.base_long_cycles = 0
        self.replay_ok = None

    @property
    def ok(self):
        return self.r_ok and self.distance_violations == 0 and \
            self.adjacency_violations == 0 and self.base_long_cycles == 0 \
            and self.replay_ok is not False

    def todict(self):
        return {"r": self.r, "r_bound": self.r_bound, "r_ok": self.r_ok,
                "ncomp": self.ncomp,
                "census": {t.name.lower(): c for t, c in self.census.items()},
                "max_cyclomatic": self.max_cyclomatic,
                "min_pair_distance": self.min_pair_distance,
                "distance_violations": self.distance_violations,
                "adjacency_violations": self.adjacency_violations,
                "base_long_cycles": self.base_long_cycles,
                "replay_ok": self.replay_ok, "ok": self.ok}


def default_threshold(n, d):
    """ cycle threshold L = max(3, ceil(ln n / (9 ln d))) """
    if n < 2:
        raise ValueError("n must be >= 2 for a threshold, got {}".format(n))
    if d <= 1:
        raise ValueError("d must be > 1 for a threshold, got {}".format(d))
    return max(rCST.L_MIN, ceil(log(n)/(9.0*log(d))))


def auto_threshold(g):
    """ threshold from the mean degree, L_MIN for sparse inputs """
    dm = 2.0*g.nedge/g.n if g.n > 0 else 0.0
    if g.n < 2 or dm <= 1.0:
        return rCST.L_MIN
    return default_threshold(g.n, dm)


def build_schedule(g, L, d=None):
    """ delete long-cycle edges in canonical order until none remain """
    if L < rCST.L_MIN:
        raise ValueError("L must be >= {}, got {}".format(rCST.L_MIN, L))
    w = g.copy()
    heap = g.sorted_edges()
    queued = set(heap)
    short = set()
    dels = []
    # bridges stay bridges under deletion, short edges wait for a re-push
    while heap:
        e = heapq.heappop(heap)
        queued.discard(e)
        a, b = e
        dist = _bidir_dist(w, a, b, w.n, skip=e)
        if dist is None:
            continue
        if dist+1 < L:
            short.add(e)
            continue
        near = ball(w, (a, b), (L-1)//2) if short else {}
        w.remove_edge(a, b)
        dels.append(e)
        for x in near:
            for y in w.adj[x]:
                f = edge(x, y)
                if f in short:
                    short.discard(f)
                    if f not in queued:
                        heapq.heappush(heap, f)
                        queued.add(f)
    dels.reverse()
    if d is None:
        d = 2.0*g.nedge/g.n if g.n > 0 else 0.0
    return DeletionSchedule(w, dels, L, g.n, d)


def audit_schedule(s, g=None):
    """ recompute the schedule properties from scratch """
    rep = ScheduleReport()
    n = s.base.n
    rep.r = s.r
    if n > 0:
        rep.r_bound = (1.0+n**(-1.0/3.0))*s.source_d*n/2.0
    rep.r_ok = rep.r <= rep.r_bound or rep.r == 0

    comps = components(s.base)
    rep.ncomp = len(comps)
    for c in comps:
        rep.census[c.kind] += 1
        rep.max_cyclomatic = max(rep.max_cyclomatic, c.cyclomatic)

    for e in s.base.sorted_edges():
        ln = shortest_cycle_through_edge(s.base, e, n)
        if ln is not None and ln >= s.L:
            rep.base_long_cycles += 1

    w = s.base.copy()
    for v, u in s.deletions:
        if w.has_edge(v, u):
            rep.adjacency_violations += 1
            continue
        dv = distance(w, v, u, n)
        if dv is not None:
            if rep.min_pair_distance is None or dv < rep.min_pair_distance:
                rep.min_pair_distance = dv
            if dv < s.L-1:
                rep.distance_violations += 1
        w.add_edge(v, u)
    if g is not None:
        rep.replay_ok = w == g
    return rep


def schedule_census(n, d, seeds, L=None):
    """ audit schedules of G(n, d/n) over seeds 0..seeds-1 """
    if L is None:
        L = default_threshold(n, d)
    reps = []
    for seed in range(seeds):
        g = generate_gnp(n, d, RandomStream(seed, (uStream.GEN,)))
        s = build_schedule(g, L, d)
        reps.append(audit_schedule(s, g))
    return reps


def schedule2str(s):
    doc = {"L": s.L, "source_n": s.source_n, "source_d": s.source_d,
           "base": {"n": s.base.n,
                    "edges": [list(e) for e in s.base.sorted_edges()]},
           "deletions": [list(e) for e in s.deletions]}
    return json.dumps(doc, separators=(",", ":"))+"\n"


def write_schedule(s, path):
    with open(path, 'w') as f:
        f.write(schedule2str(s))


def str2schedule(txt):
    doc = json.loads(txt)
    if not isinstance(doc, dict) or not {"L", "base", "deletions"} <= set(doc):
        raise ValueError("schedule document needs 'L', 'base', 'deletions'")
    base = str2graph(json.dumps(doc["base"]))
    dels = [edge(*e) for e in doc["deletions"]]
    return DeletionSchedule(base, dels, int(doc["L"]),
                            int(doc.get("source_n", base.n)),
                            float(doc.get("source_d", 0.0)))


def read_schedule(path):
    with open(path, 'r') as f:
        return str2schedule(f.read())
