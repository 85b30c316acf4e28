"""
module for exact oracles and verification suites

All probabilities are exact: distributions hold integer weights over one
integer denominator and comparisons are made on fractions.

"""

import json
from enum import IntEnum
from fractions import Fraction
import networkx as nx
from kcolib.graph import ColouringDistribution, Graph, GuardError, \
    RandomStream, UncolourableError, rCST, uMode, uStream, decode, edge, \
    encode, components, generate_gnp, iter_proper
from kcolib.schedule import auto_threshold, build_schedule
from kcolib.basesmp import base_law
from kcolib.pipeline import RunConfig


class uSuite(IntEnum):
    """ class for verification suites """
    STEP_ALPHA = 0
    PIPELINE_TV = 1
    BIJECTION = 2
    DOMINATION = 3
    BASE_EXACT = 4
    MONOTONE = 5


SUITE_NAMES = {s: s.name.lower().replace('_', '-') for s in uSuite}


def suite_from_name(name):
    for s, nm in SUITE_NAMES.items():
        if nm == name:
            return s
    raise ValueError("unknown suite '{}'".format(name))


class AlphaReport():
    """ class for the pathological-event fractions of one step """

    def __init__(self, k):
        self.k = k
        self.first = {}     # (c,q): share of Omega(c,c) with u in Q_{c,q}
        self.second = {}    # (c,q): share of Omega(q,c) with u in Q_{q,c}
        self.beta = {}
        self.alpha = Fraction(0)
        self.degenerate = False

    def todict(self):
        return {"alpha": frac2str(self.alpha),
                "degenerate": self.degenerate,
                "beta": {"{},{}".format(*cq): frac2str(b)
                         for cq, b in sorted(self.beta.items())}}


def frac2str(f):
    f = Fraction(f)
    return "{}/{}".format(f.numerator, f.denominator)


def enumerate_proper(g, k, guard=rCST.GUARD_ENUM, fixed=None):
    """ all proper k-colourings in vertex-id backtracking order """
    if k**g.n > guard:
        raise GuardError("k^n = {}^{} exceeds guard {}".format(k, g.n, guard))
    return list(iter_proper(g, k, fixed))


def uniform_proper(g, k, cols=None):
    """ uniform distribution over proper colourings """
    if cols is None:
        cols = enumerate_proper(g, k)
    if not cols:
        raise UncolourableError("graph has no proper {}-colouring".format(k))
    return ColouringDistribution.uniform(g.n, k, [encode(x, k) for x in cols])


def tv_distance(a, b):
    """ exact total variation distance """
    if a.n != b.n or a.k != b.k:
        raise ValueError("distributions over different spaces "
                         "(n={}, k={}) vs (n={}, k={})".format(
                             a.n, a.k, b.n, b.k))
    s = 0
    for c in a.support | b.support:
        s += abs(a.weights.get(c, 0)*b.total-b.weights.get(c, 0)*a.total)
    return Fraction(s, 2*a.total*b.total)


def _component(g, x, v, q, skip=None):
    """ vertex set of the {x(v),q} component of tuple x reached from v """
    c = x[v]
    seen = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for y in g.adj[w]:
            if y in seen or (x[y] != c and x[y] != q):
                continue
            if skip is not None and edge(w, y) == skip:
                continue
            seen.add(y)
            stack.append(y)
    return seen


def _swap(x, comp, c, q):
    y = list(x)
    for w in comp:
        y[w] = q if x[w] == c else c
    return y


def _switched(g, x, k, v, q, u=None):
    """ q-switch of tuple colouring x, returns (colours, u reached) """
    comp = _component(g, x, v, q)
    return _swap(x, comp, x[v], q), u is not None and u in comp


def step_kernel(dist, g_next, v, u):
    """ push a distribution through one faithful STEP on edge {v,u} """
    k = dist.k
    n = dist.n
    w = {}
    skip = edge(v, u)
    for code, wt in dist.weights.items():
        x = decode(code, n, k)
        c = x[v]
        if c != x[u]:
            w[code] = w.get(code, 0)+wt*(k-1)
            continue
        for q in range(k):
            if q == c:
                continue
            cy = encode(_swap(x, _component(g_next, x, v, q, skip), c, q), k)
            w[cy] = w.get(cy, 0)+wt
    return ColouringDistribution(n, k, w, dist.total*(k-1))


def _schedule_for(g, cfg):
    L = cfg.L if cfg.L is not None else auto_threshold(g)
    return build_schedule(g, L)


def exact_output_distribution(g, cfg, guard=rCST.GUARD_BRANCH):
    """ exact law of the faithful pipeline output """
    if cfg.mode != uMode.FAITHFUL:
        raise ValueError("exact output law is defined for faithful mode only")
    s = _schedule_for(g, cfg)
    dist = base_law(s.base, cfg.k, cfg.c_max, guard)
    if len(dist.weights)*(cfg.k-1)**s.r > guard:
        raise GuardError("branch tree |Omega_0|*(k-1)^r exceeds {}".format(
            guard))
    w = s.base.copy()
    for v, u in s.deletions:
        w.add_edge(v, u)
        dist = step_kernel(dist, w, v, u)
    return dist


def _alpha(cols, g, v, u, k, kernel=None, codes=None):
    """ alpha report from the proper colourings of g = g_next - {v,u}

    With a kernel dict, the one-step image of the uniform law on cols is
    accumulated into it as integer weights over len(cols)*(k-1).
    """
    rep = AlphaReport(k)
    nc = {}
    hit = {}
    if kernel is not None and codes is None:
        codes = [encode(x, k) for x in cols]
    for i, x in enumerate(cols):
        a, b = x[v], x[u]
        if a == b:
            for q in range(k):
                if q == a:
                    continue
                comp = _component(g, x, v, q)
                hit[(a, q, 0)] = hit.get((a, q, 0), 0)+(u in comp)
                if kernel is not None:
                    cy = encode(_swap(x, comp, a, q), k)
                    kernel[cy] = kernel.get(cy, 0)+1
            nc[(a, 0)] = nc.get((a, 0), 0)+1
        else:
            # x lies in Omega(q,c) with q=a, c=b
            comp = _component(g, x, v, b)
            hit[(b, a, 1)] = hit.get((b, a, 1), 0)+(u in comp)
            nc[(b, a, 1)] = nc.get((b, a, 1), 0)+1
            if kernel is not None:
                kernel[codes[i]] = kernel.get(codes[i], 0)+k-1
    if not any(nc.get((c, 0), 0) for c in range(k)):
        rep.degenerate = True
        return rep
    for c in range(k):
        for q in range(k):
            if q == c:
                continue
            n1 = nc.get((c, 0), 0)
            n2 = nc.get((c, q, 1), 0)
            f1 = Fraction(hit.get((c, q, 0), 0), n1) if n1 else Fraction(0)
            f2 = Fraction(hit.get((c, q, 1), 0), n2) if n2 else Fraction(0)
            rep.first[(c, q)] = f1
            rep.second[(c, q)] = f2
            rep.beta[(c, q)] = max(f1, f2)
    rep.alpha = max(rep.beta.values())
    return rep


def alpha_exact(g_next, v, u, k, guard=rCST.GUARD_ENUM):
    """ alpha of inserting {v,u}, by enumeration of g_next - {v,u} """
    g = g_next.without_edge(v, u)
    return _alpha(enumerate_proper(g, k, guard), g, v, u, k)


def alpha_schedule(s, k, guard=rCST.GUARD_ENUM):
    """ alpha report of every step of a schedule """
    out = []
    w = s.base.copy()
    for v, u in s.deletions:
        out.append(_alpha(enumerate_proper(w, k, guard), w, v, u, k))
        w.add_edge(v, u)
    return out


def _step_accuracy(cols, g, v, u, k, codes=None):
    if codes is None:
        codes = [encode(x, k) for x in cols]
    good = [cx for x, cx in zip(cols, codes) if x[v] != x[u]]
    if not good:
        raise UncolourableError("no proper colouring after inserting {}".format(
            (v, u)))
    nu = ColouringDistribution.uniform(g.n, k, good)
    w = {}
    alpha = _alpha(cols, g, v, u, k, w, codes).alpha
    nu1 = ColouringDistribution(g.n, k, w, len(cols)*(k-1))
    tv = tv_distance(nu, nu1)
    return tv, alpha, tv <= alpha


def verify_step_accuracy(g_next, v, u, k, guard=rCST.GUARD_ENUM):
    """ TV between one faithful STEP and uniform, against alpha """
    g = g_next.without_edge(v, u)
    return _step_accuracy(enumerate_proper(g, k, guard), g, v, u, k)


def verify_pipeline_tv(g, k, L=None, guard=rCST.GUARD_BRANCH):
    """ TV of the exact pipeline output to uniform, against the alpha sum """
    cfg = RunConfig(k, 0, uMode.FAITHFUL, L)
    s = _schedule_for(g, cfg)
    mu = exact_output_distribution(g, cfg, guard)
    tv = tv_distance(mu, uniform_proper(g, k))
    sa = sum((a.alpha for a in alpha_schedule(s, k)), Fraction(0))
    return tv, sa, tv <= sa


def verify_base_exact(g, k, c_max=rCST.C_MAX):
    """ the base sampler law is exactly uniform """
    tv = tv_distance(base_law(g, k, c_max), uniform_proper(g, k))
    return tv, tv == 0


class BijectionReport():
    """ class for checks of the switch map between S(c,c) and S(q,c) """

    def __init__(self):
        self.sizes = {}
        self.range_violations = 0
        self.injective_violations = 0
        self.involution_violations = 0
        self.size_violations = 0
        self.pushforward_violations = 0

    @property
    def violations(self):
        return self.range_violations+self.injective_violations + \
            self.involution_violations+self.size_violations + \
            self.pushforward_violations


def verify_bijection(g, v, u, k, cols=None):
    """ H(.,q) maps S(c,c) one-to-one onto S(q,c) for all c != q """
    if cols is None:
        cols = enumerate_proper(g, k)
    rep = BijectionReport()
    for c in range(k):
        for q in range(k):
            if q == c:
                continue
            scc = []
            sqc = set()
            for x in cols:
                if x[v] == c and x[u] == c:
                    if not _switched(g, x, k, v, q, u)[1]:
                        scc.append(x)
                elif x[v] == q and x[u] == c:
                    if not _switched(g, x, k, v, c, u)[1]:
                        sqc.add(tuple(x))
            rep.sizes[(c, q)] = (len(scc), len(sqc))
            img = set()
            for x in scc:
                y = tuple(_switched(g, x, k, v, q, u)[0])
                if y not in sqc:
                    rep.range_violations += 1
                if y in img:
                    rep.injective_violations += 1
                img.add(y)
                if tuple(_switched(g, y, k, v, c, u)[0]) != tuple(x):
                    rep.involution_violations += 1
            if len(scc) != len(sqc):
                rep.size_violations += 1
            # uniform on S(c,c) pushed through H is uniform on S(q,c)
            if img != sqc:
                rep.pushforward_violations += 1
    return rep


def _qw(k, deg):
    return Fraction(1, k-deg) if k > deg else Fraction(1)


def product_measure(g, path, k):
    """ product-measure probability that the path is disagreeing """
    p = Fraction(1)
    for w in path[1:]:
        p *= _qw(k, g.deg(w))
    return p


def _check_path(g, path):
    if len(set(path)) != len(path):
        raise ValueError("path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError("{} is not a path of g".format(path))


def verify_domination(g, v, path, k, c, cols=None):
    """ disagreement-path probability against the product measure """
    if not path or path[0] != v:
        raise ValueError("path must start at v")
    _check_path(g, path)
    if cols is None:
        cols = enumerate_proper(g, k, fixed={v: c})
    cols = [x for x in cols if x[v] == c]
    pp = product_measure(g, path, k)
    if not cols:
        return Fraction(0), pp, True
    hit = 0
    for x in cols:
        for q in range(k):
            if q == c:
                continue
            comp = _component(g, x, v, q)
            hit += all(w in comp for w in path)
    pl = Fraction(hit, len(cols)*(k-1))
    return pl, pp, pl <= pp


def simple_paths(g, v, max_len):
    """ simple paths from v with at most max_len edges """
    out = [(v,)]
    stack = [(v,)]
    while stack:
        p = stack.pop()
        if len(p)-1 >= max_len:
            continue
        for y in g.adj[p[-1]]:
            if y not in p:
                out.append(p+(y,))
                stack.append(p+(y,))
    return sorted(out)


def domination_graphs(max_n):
    """ connected graphs of the atlas with 1 <= n <= max_n """
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            yield Graph(n, h.edges())


def verify_domination_sweep(max_n=6, max_len=3, k=4, c=0):
    """ domination over every root and short path of small connected graphs """
    nchk = 0
    bad = []
    for g in domination_graphs(max_n):
        cols = enumerate_proper(g, k)
        for v in range(g.n):
            cv = [x for x in cols if x[v] == c]
            for path in simple_paths(g, v, max_len):
                pl, pp, ok = verify_domination(g, v, list(path), k, c, cv)
                nchk += 1
                if not ok:
                    bad.append((sorted(g.edges), path, pl, pp))
    return nchk, bad


def verify_monotone(s, path, k):
    """ product measure of a path never decreases along the schedule """
    w = s.base.copy()
    ps = [product_measure(w, path, k)]
    for v, u in s.deletions:
        w.add_edge(v, u)
        ps.append(product_measure(w, path, k))
    return ps, all(a <= b for a, b in zip(ps, ps[1:]))


def _nxg(h):
    return Graph(h.number_of_nodes(), h.edges())


def fixture_corpus(max_n=8):
    """ named small graphs for the suites """
    fx = []
    for n in range(3, 9):
        fx.append(("path{}".format(n), _nxg(nx.path_graph(n))))
    for n in range(3, 9):
        fx.append(("cycle{}".format(n), _nxg(nx.cycle_graph(n))))
    for m in (3, 5, 7):
        fx.append(("star{}".format(m), _nxg(nx.star_graph(m))))
    fx.append(("bintree7", _nxg(nx.balanced_tree(2, 2))))
    k4 = nx.complete_graph(4)
    fx.append(("k4", _nxg(k4)))
    k4.remove_edge(0, 1)
    fx.append(("k4-e", _nxg(k4)))
    fx.append(("k2,3", _nxg(nx.complete_bipartite_graph(2, 3))))
    fx.append(("wheel5", _nxg(nx.wheel_graph(5))))
    fx.append(("wheel6", _nxg(nx.wheel_graph(6))))
    fx.append(("ladder6", _nxg(nx.ladder_graph(3))))
    fx.append(("ladder8", _nxg(nx.ladder_graph(4))))
    fx.append(("theta7", Graph(7, [(0, 1), (1, 6), (0, 2), (2, 3), (3, 6),
                                   (0, 4), (4, 5), (5, 6)])))
    c6 = nx.cycle_graph(6)
    c6.add_edge(0, 3)
    fx.append(("cycle6+chord", _nxg(c6)))
    fx.append(("tadpole6", Graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4),
                                     (4, 5)])))
    fx.append(("twotri", Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5),
                                   (3, 5)])))
    for seed in range(3):
        g = generate_gnp(8, 2.5, RandomStream(seed, (uStream.GEN, 8)))
        fx.append(("gnp8s{}".format(seed), g))
    return [(nm, g) for nm, g in fx if g.n <= max_n]


def _pairs(g):
    return [(v, u) for v in range(g.n) for u in range(v+1, g.n)
            if not g.has_edge(v, u)]


def _record(name, inputs, values, ok):
    return {"name": name, "inputs": inputs,
            "values": {key: frac2str(val) for key, val in values.items()},
            "pass": bool(ok)}


def run_suite(suite, ks=(3, 4, 5), max_n=8, max_len=3, guard=rCST.GUARD_ENUM):
    """ run one suite, one record per check """
    suite = uSuite(suite)
    nm = SUITE_NAMES[suite]
    recs = []

    if suite == uSuite.DOMINATION:
        for k in ks:
            nchk, bad = verify_domination_sweep(min(max_n, 6), max_len, k)
            recs.append(_record(nm, {"max_n": min(max_n, 6),
                                     "max_len": max_len, "k": k},
                                {"checks": nchk, "violations": len(bad)},
                                not bad))
        return recs

    for gname, g in fixture_corpus(max_n):
        for k in ks:
            if k**g.n > guard:
                continue
            inp = {"graph": gname, "n": g.n, "k": k}
            if suite == uSuite.STEP_ALPHA:
                cols = enumerate_proper(g, k, guard)
                codes = [encode(x, k) for x in cols]
                for v, u in _pairs(g):
                    if not any(x[v] != x[u] for x in cols):
                        continue
                    tv, a, ok = _step_accuracy(cols, g, v, u, k, codes)
                    recs.append(_record(nm, dict(inp, v=v, u=u),
                                        {"tv": tv, "alpha": a}, ok))
            elif suite == uSuite.BIJECTION:
                cols = enumerate_proper(g, k, guard)
                for v, u in _pairs(g):
                    rep = verify_bijection(g, v, u, k, cols)
                    recs.append(_record(nm, dict(inp, v=v, u=u),
                                        {"violations": rep.violations},
                                        rep.violations == 0))
            elif suite == uSuite.PIPELINE_TV:
                if k < 3:
                    continue
                s = build_schedule(g, auto_threshold(g))
                if s.r > 3 or not enumerate_proper(g, k, guard):
                    continue
                try:
                    tv, sa, ok = verify_pipeline_tv(g, k)
                except GuardError:
                    continue
                recs.append(_record(nm, dict(inp, r=s.r),
                                    {"tv": tv, "alpha_sum": sa}, ok))
            elif suite == uSuite.BASE_EXACT:
                # whole fixture as base graph when its cycles are few enough
                g0 = g
                if any(c.cyclomatic > rCST.C_MAX for c in components(g)):
                    g0 = build_schedule(g, auto_threshold(g)).base
                if not enumerate_proper(g0, k, guard):
                    continue
                try:
                    tv, ok = verify_base_exact(g0, k)
                except GuardError:
                    continue
                recs.append(_record(nm, dict(inp, base=g0 is not g),
                                    {"tv": tv}, ok))
            elif suite == uSuite.MONOTONE:
                s = build_schedule(g, auto_threshold(g))
                g0 = s.base
                for v in range(g.n):
                    for path in simple_paths(g0, v, max_len):
                        ps, ok = verify_monotone(s, list(path), k)
                        recs.append(_record(nm, dict(inp, path=list(path)),
                                            {"first": ps[0], "last": ps[-1]},
                                            ok))
    return recs


def write_report(recs, path=None):
    """ JSON-lines check records, stdout when no path """
    txt = "".join(json.dumps(r, separators=(",", ":"))+"\n" for r in recs)
    if path is None:
        print(txt, end="")
    else:
        with open(path, 'w') as f:
            f.write(txt)
    return all(r["pass"] for r in recs)
