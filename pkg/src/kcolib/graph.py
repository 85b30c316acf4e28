"""
module for graph primitives, colourings and random streams

[1] V. Batagelj, U. Brandes, Efficient generation of large random networks,
    Physical Review E 71, 036113, 2005

"""

import json
from bisect import insort
from collections import deque
from enum import IntEnum
from fractions import Fraction
from math import gcd, lcm
import numpy as np


class rCST():
    """ class for constants """
    GUARD_ENUM = 10**8      # max k^n for exhaustive enumeration
    GUARD_BRANCH = 10**7    # max |Omega_0|*(k-1)^r for exact laws
    C_MAX = 2               # cyclomatic cap of base components
    L_MIN = 3               # smallest useful cycle threshold
    EPS_WARN = 0.01         # warn when k < (2+eps)*d
    LOG_CAP = 10**4         # store component vertex lists below this size
    BRUTE_MAX = 8           # brute-force too-cyclic components up to this size
    MIN_CELL = 30           # samples per conditioning colour, correlation
    SEED_MAX = 2**64


class uStatus(IntEnum):
    """ class for colouring validity """
    UNCHECKED = -1
    PROPER = 0
    IMPROPER = 1


class uComp(IntEnum):
    """ class for component types of the base graph """
    ISOLATED = 0
    TREE = 1
    UNICYCLIC = 2
    OTHER = 3


class uMode(IntEnum):
    """ class for STEP modes """
    FAITHFUL = 0
    RETRY = 1


class uStream(IntEnum):
    """ class for random stream phase labels """
    GEN = 0
    BASE = 1
    STEP = 2
    RUN = 3
    TRIAL = 4
    CORR = 5


class GuardError(ValueError):
    """ enumeration guard exceeded """


class UncolourableError(ValueError):
    """ component without proper colourings """

    def __init__(self, msg, vertex=-1):
        super().__init__(msg)
        self.vertex = vertex


class CyclicComponentError(ValueError):
    """ component above the cyclomatic cap """

    def __init__(self, msg, vertex=-1, beta=0):
        super().__init__(msg)
        self.vertex = vertex
        self.beta = beta


def edge(v, u):
    """ canonical (min, max) form of an undirected edge """
    return (v, u) if v < u else (u, v)


class Graph():
    """ class for undirected simple graph on vertices 0..n-1 """

    def __init__(self, n=0, edges=None):
        if n < 0:
            raise ValueError("n must be non-negative, got {}".format(n))
        self.n = n
        self.edges = set()
        self.adj = [[] for _ in range(n)]
        if edges is not None:
            for v, u in edges:
                e = self._newedge(v, u)
                self.edges.add(e)
                self.adj[e[0]].append(e[1])
                self.adj[e[1]].append(e[0])
            for a in self.adj:
                a.sort()

    def _chkv(self, v):
        if not 0 <= v < self.n:
            raise ValueError("vertex {} out of range [0, {})".format(v, self.n))

    def _newedge(self, v, u):
        v, u = int(v), int(u)
        self._chkv(v)
        self._chkv(u)
        if v == u:
            raise ValueError("self-loop at vertex {}".format(v))
        e = edge(v, u)
        if e in self.edges:
            raise ValueError("duplicate edge {}".format(e))
        return e

    def __repr__(self):
        return "Graph(n={}, m={})".format(self.n, len(self.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and \
            self.edges == other.edges

    @property
    def nedge(self):
        return len(self.edges)

    def deg(self, v):
        return len(self.adj[v])

    def degrees(self):
        return np.array([len(a) for a in self.adj], dtype=np.int64)

    def has_edge(self, v, u):
        return edge(v, u) in self.edges

    def add_edge(self, v, u):
        """ insert edge {v,u} keeping adjacency sorted """
        e = self._newedge(v, u)
        self.edges.add(e)
        insort(self.adj[e[0]], e[1])
        insort(self.adj[e[1]], e[0])

    def remove_edge(self, v, u):
        """ delete edge {v,u} """
        e = edge(v, u)
        if e not in self.edges:
            raise ValueError("edge {} not in graph".format(e))
        self.edges.remove(e)
        self.adj[e[0]].remove(e[1])
        self.adj[e[1]].remove(e[0])

    def copy(self):
        g = Graph(self.n)
        g.edges = set(self.edges)
        g.adj = [list(a) for a in self.adj]
        return g

    def with_edge(self, v, u):
        g = self.copy()
        g.add_edge(v, u)
        return g

    def without_edge(self, v, u):
        g = self.copy()
        g.remove_edge(v, u)
        return g

    def sorted_edges(self):
        return sorted(self.edges)

    def edge_array(self):
        """ edges as (m, 2) integer array in canonical order """
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array(self.sorted_edges(), dtype=np.int64)

    def check(self):
        """ assert symmetry and edge-set consistency """
        cnt = 0
        for v, a in enumerate(self.adj):
            if a != sorted(set(a)):
                raise ValueError("adjacency of {} not sorted/unique".format(v))
            for u in a:
                if u == v:
                    raise ValueError("self-loop at {}".format(v))
                if edge(v, u) not in self.edges:
                    raise ValueError("edge {} missing".format(edge(v, u)))
                if v not in self.adj[u]:
                    raise ValueError("asymmetric adjacency {}".format((v, u)))
            cnt += len(a)
        if cnt != 2*len(self.edges):
            raise ValueError("edge set inconsistent with adjacency")
        return True


class Component():
    """ class for a connected component """

    def __init__(self, vertices, nedge):
        self.vertices = vertices
        self.nedge = nedge

    @property
    def nv(self):
        return len(self.vertices)

    @property
    def cyclomatic(self):
        return self.nedge - self.nv + 1

    @property
    def kind(self):
        if self.nv == 1:
            return uComp.ISOLATED
        if self.cyclomatic == 0:
            return uComp.TREE
        if self.cyclomatic == 1:
            return uComp.UNICYCLIC
        return uComp.OTHER


class RandomStream():
    """ class for labelled deterministic random streams """

    def __init__(self, seed=0, label=(), acc=None):
        if not 0 <= int(seed) < rCST.SEED_MAX:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = int(seed)
        self.label = tuple(int(s) for s in label)
        self._rng = None
        # random bits are shared by the whole family of sub-streams
        self._acc = [0] if acc is None else acc

    @property
    def rng(self):
        if self._rng is None:
            ss = np.random.SeedSequence(self.seed, spawn_key=self.label)
            self._rng = np.random.Generator(np.random.PCG64(ss))
        return self._rng

    @property
    def bits(self):
        return self._acc[0]

    def child(self, *label):
        """ sub-stream with the label extended """
        return RandomStream(self.seed, self.label+tuple(label), self._acc)

    def randbelow(self, m):
        """ exact uniform integer in [0, m) for arbitrary-precision m """
        m = int(m)
        if m < 1:
            raise ValueError("empty range")
        if m == 1:
            return 0
        nb = (m-1).bit_length()
        self._acc[0] += nb
        mask = (1 << nb)-1
        nbyte = (nb+7)//8
        while True:
            r = int.from_bytes(self.rng.bytes(nbyte), 'little') & mask
            if r < m:
                return r

    def choose(self, weights):
        """ index drawn proportionally to non-negative integer weights """
        total = sum(weights)
        if total <= 0:
            raise ValueError("all weights are zero")
        # same law after dividing out the common factor
        gc = gcd(*weights)
        if gc > 1:
            weights = [w // gc for w in weights]
            total //= gc
        r = self.randbelow(total)
        for i, w in enumerate(weights):
            if r < w:
                return i
            r -= w
        raise ValueError("inconsistent weights")


def gnp_edges(n, p, rng):
    """ G(n,p) edge endpoints by geometric skipping over the pair index [1] """
    npair = n*(n-1)//2
    empty = np.zeros(0, dtype=np.int64)
    if p <= 0.0 or npair == 0:
        return empty, empty
    if p >= 1.0:
        idx = np.arange(npair, dtype=np.int64)
    else:
        mean = npair*p
        batch = int(mean+10.0*np.sqrt(mean)+64)
        pos = -1
        chunks = []
        while True:
            gaps = rng.geometric(p, size=batch).astype(np.int64)
            ps = pos+np.cumsum(gaps)
            chunks.append(ps[ps < npair])
            if ps[-1] >= npair:
                break
            pos = ps[-1]
        idx = np.concatenate(chunks)

    # row v holds pairs (v, v+1..n-1) starting at v*n-v*(v+1)/2
    #
    rows = np.arange(n, dtype=np.int64)
    off = rows*n-rows*(rows+1)//2
    v = np.searchsorted(off, idx, side='right')-1
    u = idx-off[v]+v+1
    return v, u


def generate_gnp(n, d, stream):
    """ Erdos-Renyi graph G(n, d/n) """
    if n < 1:
        raise ValueError("n must be >= 1, got {}".format(n))
    if d < 0 or d > n:
        raise ValueError("d must lie in [0, n], got {}".format(d))
    v, u = gnp_edges(n, d/n, stream.rng)
    return Graph(n, zip(v.tolist(), u.tolist()))


def _bidir_dist(g, a, b, cap, skip=None):
    """ shortest a-b distance avoiding edge skip, None if beyond cap """
    if a == b:
        return 0
    if cap < 1:
        return None
    da = {a: 0}
    db = {b: 0}
    fa = [a]
    fb = [b]
    ra = rb = 0
    while fa and fb and ra+rb < cap:
        if len(fa) <= len(fb):
            fa, best = _expand(g, fa, da, db, ra, skip)
            ra += 1
        else:
            fb, best = _expand(g, fb, db, da, rb, skip)
            rb += 1
        if best is not None:
            return best if best <= cap else None
    return None


def _expand(g, front, dist, other, r, skip):
    """ expand one BFS level, return new frontier and best meeting length """
    nxt = []
    best = None
    for x in front:
        for y in g.adj[x]:
            if skip is not None and edge(x, y) == skip:
                continue
            if y in other:
                t = r+1+other[y]
                if best is None or t < best:
                    best = t
            if y not in dist:
                dist[y] = r+1
                nxt.append(y)
    return nxt, best


def shortest_cycle_through_edge(g, e, cap):
    """ length of the shortest cycle containing e, None above cap """
    a, b = edge(*e)
    if not g.has_edge(a, b):
        raise ValueError("edge {} not in graph".format((a, b)))
    d = _bidir_dist(g, a, b, cap-1, skip=(a, b))
    return None if d is None else d+1


def distance(g, v, u, cap):
    """ graph distance, None when larger than cap """
    g._chkv(v)
    g._chkv(u)
    return _bidir_dist(g, v, u, cap)


def ball(g, roots, depth, skip=None):
    """ vertices within depth of any root """
    seen = {r: 0 for r in roots}
    q = deque(roots)
    while q:
        x = q.popleft()
        if seen[x] >= depth:
            continue
        for y in g.adj[x]:
            if skip is not None and edge(x, y) == skip:
                continue
            if y not in seen:
                seen[y] = seen[x]+1
                q.append(y)
    return seen


def components(g):
    """ connected components in order of their lowest vertex """
    mark = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if mark[s]:
            continue
        mark[s] = True
        vs = [s]
        q = deque([s])
        deg = 0
        while q:
            x = q.popleft()
            deg += len(g.adj[x])
            for y in g.adj[x]:
                if not mark[y]:
                    mark[y] = True
                    vs.append(y)
                    q.append(y)
        vs.sort()
        comps.append(Component(vs, deg//2))
    return comps


def subgraph(g, vertices):
    """ induced subgraph relabelled to 0..len-1 in vertex order """
    loc = {v: i for i, v in enumerate(vertices)}
    es = []
    for v in vertices:
        for u in g.adj[v]:
            if v < u and u in loc:
                es.append((loc[v], loc[u]))
    return Graph(len(vertices), es)


def iter_proper(g, k, fixed=None):
    """ proper k-colourings by backtracking in vertex-id order """
    n = g.n
    fixed = {} if fixed is None else fixed
    x = [-1]*n
    if n == 0:
        yield ()
        return
    # earlier neighbours only, colours of later vertices are not set yet
    prev = [[u for u in g.adj[v] if u < v] for v in range(n)]
    opts = [[fixed[v]] if v in fixed else list(range(k)) for v in range(n)]
    pos = [0]*n
    v = 0
    while v >= 0:
        if pos[v] < len(opts[v]):
            c = opts[v][pos[v]]
            pos[v] += 1
            if any(x[u] == c for u in prev[v]):
                continue
            x[v] = c
            if v == n-1:
                yield tuple(x)
            else:
                v += 1
                pos[v] = 0
        else:
            x[v] = -1
            v -= 1


class Colouring():
    """ class for a total colour assignment """

    def __init__(self, x, k):
        self.x = np.array(x, dtype=np.int64)
        self.k = k
        if self.x.size > 0 and (self.x.min() < 0 or self.x.max() >= k):
            raise ValueError("colours must lie in [0, {})".format(k))
        self.status = uStatus.UNCHECKED
        self.witness = None

    def __repr__(self):
        return "Colouring({}, k={})".format(self.x.tolist(), self.k)

    def __eq__(self, other):
        return isinstance(other, Colouring) and self.k == other.k and \
            np.array_equal(self.x, other.x)

    def __len__(self):
        return len(self.x)

    def copy(self):
        c = Colouring(self.x, self.k)
        c.status = self.status
        c.witness = self.witness
        return c

    def evaluate(self, g):
        """ set status against g with the first monochromatic edge """
        ea = g.edge_array()
        mono = np.nonzero(self.x[ea[:, 0]] == self.x[ea[:, 1]])[0] \
            if len(ea) else []
        if len(mono) == 0:
            self.status = uStatus.PROPER
            self.witness = None
        else:
            self.status = uStatus.IMPROPER
            self.witness = (int(ea[mono[0], 0]), int(ea[mono[0], 1]))
        return self.status

    def monochromatic(self, g):
        """ all monochromatic edges of g """
        ea = g.edge_array()
        if len(ea) == 0:
            return []
        mono = np.nonzero(self.x[ea[:, 0]] == self.x[ea[:, 1]])[0]
        return [(int(ea[i, 0]), int(ea[i, 1])) for i in mono]

    def encode(self):
        return encode(self.x, self.k)

    def tostr(self):
        return ",".join(str(c) for c in self.x.tolist())


def encode(x, k):
    """ base-k code with vertex 0 most significant """
    code = 0
    for c in x:
        code = code*k+int(c)
    return code


def decode(code, n, k):
    x = [0]*n
    for i in range(n-1, -1, -1):
        code, x[i] = divmod(code, k)
    return tuple(x)


class ColouringDistribution():
    """ class for exact distributions over colourings """

    def __init__(self, n, k, weights=None, total=1):
        self.n = n
        self.k = k
        # integer weights over one common denominator
        self.weights = {} if weights is None else weights
        self.total = total

    @classmethod
    def uniform(cls, n, k, codes):
        w = {c: 1 for c in codes}
        if not w:
            raise ValueError("uniform distribution over an empty set")
        return cls(n, k, w, len(w))

    @classmethod
    def point(cls, n, k, code):
        return cls(n, k, {code: 1}, 1)

    @classmethod
    def from_fractions(cls, n, k, probs):
        den = 1
        for p in probs.values():
            den = lcm(den, p.denominator)
        w = {c: int(p*den) for c, p in probs.items() if p != 0}
        return cls(n, k, w, den)

    def prob(self, code):
        return Fraction(self.weights.get(code, 0), self.total)

    @property
    def support(self):
        return set(self.weights.keys())

    def items(self):
        for c, w in self.weights.items():
            yield c, Fraction(w, self.total)

    def check(self):
        """ probabilities sum to exactly one """
        if any(w <= 0 for w in self.weights.values()):
            raise ValueError("non-positive weight in support")
        if sum(self.weights.values()) != self.total:
            raise ValueError("weights do not sum to the denominator")
        return True


def write_graph(g, path):
    """ canonical graph file """
    with open(path, 'w') as f:
        f.write(graph2str(g))


def graph2str(g):
    doc = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    return json.dumps(doc, separators=(",", ":"))+"\n"


def str2graph(s):
    doc = json.loads(s)
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ValueError("graph document needs 'n' and 'edges'")
    return Graph(int(doc["n"]), [tuple(e) for e in doc["edges"]])


def read_graph(path):
    with open(path, 'r') as f:
        return str2graph(f.read())
