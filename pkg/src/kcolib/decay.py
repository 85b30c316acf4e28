"""
module for disagreement-path decay and correlation decay experiments
"""

import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
import numpy as np
from scipy import stats
from scipy.sparse import csr_matrix
from kcolib.graph import RandomStream, rCST, uMode, uStream, distance, \
    gnp_edges, iter_proper
from kcolib.pipeline import RunConfig, sample_many

# format definition for the decay table
fmt_hdr = "l,gamma,stderr\n"
fmt_row = "{:d},{:.8e},{:.8e}\n"


class PathDecayReport():
    """ class for mean disagreement-path counts per length """

    def __init__(self, n, d, k, trials, l_max):
        self.n = n
        self.d = d
        self.k = k
        self.trials = trials
        self.l_max = l_max
        self.mean = np.zeros(l_max+1)
        self.stderr = np.zeros(l_max+1)
        self.ratio = None
        self.ratio_lo = None
        self.ratio_hi = None

    @property
    def lengths(self):
        return np.arange(self.l_max+1)

    def tocsv(self):
        txt = fmt_hdr
        for ll in range(self.l_max+1):
            txt += fmt_row.format(ll, self.mean[ll], self.stderr[ll])
        return txt

    def write_csv(self, path):
        with open(path, 'w') as f:
            f.write(self.tocsv())


def disagree_prob(k, deg):
    """ product-measure marginals q_w = 1/(k-deg), 1 when k <= deg """
    deg = np.asarray(deg, dtype=np.float64)
    q = np.ones_like(deg)
    m = deg < k
    q[m] = 1.0/(k-deg[m])
    return q


def count_paths(indptr, indices, mark, root, l_max):
    """ simple paths from root through marked vertices, by length """
    cnt = np.zeros(l_max+1, dtype=np.int64)
    cnt[0] = 1
    onpath = {root}
    stack = [(root, 0, iter(indices[indptr[root]:indptr[root+1]]))]
    while stack:
        x, ll, it = stack[-1]
        y = next(it, None)
        if y is None:
            stack.pop()
            onpath.discard(x)
            continue
        if not mark[y] or y in onpath:
            continue
        cnt[ll+1] += 1
        if ll+1 < l_max:
            onpath.add(y)
            stack.append((y, ll+1, iter(indices[indptr[y]:indptr[y+1]])))
    return cnt


def path_trial(n, d, k, l_max, seed, t):
    """ one trial of G(n,d/n) with product-measure marks, root 0 """
    rng = RandomStream(seed, (uStream.TRIAL, t)).rng
    v, u = gnp_edges(n, d/n, rng)
    deg = np.bincount(np.concatenate((v, u)), minlength=n)
    mark = rng.random(n) < disagree_prob(k, deg)
    mark[0] = True
    if l_max == 0:
        return np.ones(1, dtype=np.int64)
    # marked-only adjacency, both directions
    keep = mark[v] & mark[u]
    r = np.concatenate((v[keep], u[keep]))
    c = np.concatenate((u[keep], v[keep]))
    a = csr_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
    a.sort_indices()
    return count_paths(a.indptr, a.indices.tolist(), mark, 0, l_max)


def _trial_chunk(args):
    n, d, k, l_max, seed, ts = args
    return [path_trial(n, d, k, l_max, seed, t) for t in ts]


def path_decay_sim(n, d, k, trials, l_max, seed=0, workers=1):
    """ Monte Carlo mean path counts and the fitted geometric ratio """
    if trials < 1:
        raise ValueError("trials must be >= 1, got {}".format(trials))
    if l_max < 0:
        raise ValueError("l_max must be >= 0, got {}".format(l_max))
    if trials < 1000:
        warnings.warn("{} trials, the fitted ratio bounds are loose".format(
            trials))
    if workers <= 1:
        res = [path_trial(n, d, k, l_max, seed, t) for t in range(trials)]
    else:
        chunks = [c.tolist() for c in np.array_split(np.arange(trials),
                                                     workers) if len(c) > 0]
        res = []
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_trial_chunk,
                               [(n, d, k, l_max, seed, c) for c in chunks]):
                res.extend(part)
    cnt = np.vstack(res).astype(np.float64)

    rep = PathDecayReport(n, d, k, trials, l_max)
    rep.mean = cnt.mean(axis=0)
    rep.stderr = cnt.std(axis=0, ddof=1)/np.sqrt(trials) if trials > 1 \
        else np.zeros(l_max+1)
    fit_ratio(rep)
    return rep


def fit_ratio(rep):
    """ geometric ratio from log mean count against length, l >= 1 """
    ll = np.arange(1, rep.l_max+1)
    m = rep.mean[1:]
    ok = m > 0
    if ok.sum() == 0:
        rep.ratio = 0.0
        return rep
    if ok.sum() < 3:
        # too few points for bounds, ratio from the first step only
        rep.ratio = float(m[0]) if m[0] > 0 else 0.0
        return rep
    fit = stats.linregress(ll[ok], np.log(m[ok]))
    t = stats.t.ppf(0.975, int(ok.sum())-2)
    rep.ratio = float(np.exp(fit.slope))
    rep.ratio_lo = float(np.exp(fit.slope-t*fit.stderr))
    rep.ratio_hi = float(np.exp(fit.slope+t*fit.stderr))
    return rep


class CorrelationReport():
    """ class for conditional colour deviations at a pair of vertices """

    def __init__(self, v, u, k):
        self.v = v
        self.u = u
        self.k = k
        self.dist = None
        self.deviation = Fraction(0)
        self.exact = True
        self.stderr = 0.0
        self.flagged = False
        self.nsample = 0


def correlation_decay(g, v, u, k, samples=0, seed=0,
                      guard=rCST.GUARD_ENUM, workers=1):
    """ max over colours of |P[x(u)=c | x(v)=q] - 1/k| """
    rep = CorrelationReport(v, u, k)
    rep.dist = distance(g, v, u, g.n)
    if rep.dist is None:
        return rep

    cnt = np.zeros((k, k), dtype=np.int64)
    if k**g.n <= guard:
        for x in iter_proper(g, k):
            cnt[x[v], x[u]] += 1
        rep.nsample = int(cnt.sum())
        dev = Fraction(0)
        for q in range(k):
            nq = int(cnt[q].sum())
            if nq == 0:
                continue
            for c in range(k):
                dev = max(dev, abs(Fraction(int(cnt[q, c]), nq)-Fraction(1, k)))
        rep.deviation = dev
        return rep

    if samples < 1:
        raise ValueError("graph beyond the enumeration guard needs samples")
    rep.exact = False
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        xs, _ = sample_many(g, RunConfig(k, seed, uMode.RETRY), samples,
                            workers=workers)
    for x in xs:
        cnt[x.x[v], x.x[u]] += 1
    rep.nsample = samples
    nq = cnt.sum(axis=1)
    p = np.where(nq[:, None] > 0, cnt/np.maximum(nq, 1)[:, None], 1.0/k)
    rep.deviation = float(np.max(np.abs(p-1.0/k)))
    nmin = int(nq.min())
    rep.stderr = float(np.sqrt(0.25/max(nmin, 1)))
    if nmin < rCST.MIN_CELL:
        rep.flagged = True
        # widen to the worst-case binomial error
        rep.stderr = 0.5
        warnings.warn("correlation ({},{}): only {} samples for some colour of "
                      "v".format(v, u, nmin))
    return rep
