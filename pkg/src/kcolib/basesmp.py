"""
module for exact uniform sampling of the base graph

Tree components are sampled by list-colouring dynamic programming from a
root downward. Components with a few extra edges are reduced to trees by
conditioning the endpoints of the extra edges on fixed colours.

"""

from collections import deque
from fractions import Fraction
from itertools import product
import numpy as np
from kcolib.graph import Colouring, ColouringDistribution, CyclicComponentError, \
    GuardError, Graph, UncolourableError, rCST, components, edge, \
    iter_proper, subgraph


class CountTable():
    """ class for list-colouring counts of a rooted tree """

    def __init__(self, tree, lists, k, root=0):
        self.tree = tree
        self.lists = lists
        self.k = k
        self.root = root
        self.order, self.parent = _bfs_tree(tree, root)
        if len(self.order) != tree.n or tree.nedge != tree.n-1:
            raise ValueError("count table needs a tree")
        self.cnt = [None]*tree.n

        for v in reversed(self.order):
            row = [0]*k
            for c in lists[v]:
                row[c] = 1
            for w in tree.adj[v]:
                if w == self.parent[v]:
                    continue
                sw = sum(self.cnt[w])
                for c in range(k):
                    if row[c]:
                        row[c] *= sw-self.cnt[w][c]
            self.cnt[v] = row

    @property
    def total(self):
        return sum(self.cnt[self.root])

    def weights(self, v, x):
        """ colour weights of v given the colour of its parent in x """
        if v == self.root:
            return list(self.cnt[v])
        w = list(self.cnt[v])
        w[x[self.parent[v]]] = 0
        return w


def _bfs_tree(g, root):
    order = [root]
    parent = [-1]*g.n
    seen = {root}
    q = deque([root])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
                q.append(y)
    return order, parent


def spanning_tree(comp):
    """ BFS spanning tree from vertex 0 and the extra edges in canonical order """
    order, parent = _bfs_tree(comp, 0)
    tedges = [edge(v, parent[v]) for v in order[1:]]
    extra = sorted(comp.edges-set(tedges))
    return Graph(comp.n, tedges), extra


def count_tree_colourings(tree, lists, k):
    """ number of proper list colourings of a tree """
    t = CountTable(tree, lists, k)
    return t.total, t


def sample_tree_colouring(table, stream):
    """ uniform proper list colouring drawn root to leaves """
    if table.total == 0:
        raise UncolourableError("no proper list colouring")
    x = [0]*table.tree.n
    for v in table.order:
        x[v] = stream.choose(table.weights(v, x))
    return x


def _conditioned(comp, k):
    """ per admissible extra-edge endpoint colouring, its tree count """
    tree, extra = spanning_tree(comp)
    cv = sorted({v for e in extra for v in e})
    full = list(range(k))
    out = []
    for a in product(range(k), repeat=len(cv)):
        col = dict(zip(cv, a))
        if any(col[v] == col[u] for v, u in extra):
            continue
        lists = [[col[v]] if v in col else full for v in range(comp.n)]
        total, _ = count_tree_colourings(tree, lists, k)
        out.append((lists, total))
    return tree, out


def _check_cap(comp, c_max, vertex):
    beta = comp.nedge-comp.n+1
    if beta > c_max:
        raise CyclicComponentError(
            "component at vertex {} has cyclomatic number {} > {}".format(
                vertex, beta, c_max), vertex, beta)
    return beta


def count_component_colourings(comp, k, c_max=rCST.C_MAX, vertex=0):
    """ number of proper k-colourings of a connected component """
    beta = _check_cap(comp, c_max, vertex)
    full = [list(range(k))]*comp.n
    if beta == 0:
        return count_tree_colourings(comp, full, k)[0]
    _, out = _conditioned(comp, k)
    return sum(t for _, t in out)


def sample_component_colouring(comp, k, stream, c_max=rCST.C_MAX, vertex=0):
    """ uniform proper k-colouring of a connected component """
    if comp.n == 1:
        return [stream.randbelow(k)]
    beta = _check_cap(comp, c_max, vertex)
    if beta == 0:
        table = CountTable(comp, [list(range(k))]*comp.n, k)
    else:
        tree, out = _conditioned(comp, k)
        if sum(t for _, t in out) == 0:
            raise UncolourableError(
                "component at vertex {} has no proper {}-colouring".format(
                    vertex, k), vertex)
        i = stream.choose([t for _, t in out])
        table = CountTable(tree, out[i][0], k)
    if table.total == 0:
        raise UncolourableError(
            "component at vertex {} has no proper {}-colouring".format(
                vertex, k), vertex)
    return sample_tree_colouring(table, stream)


def _brute_colouring(comp, k, stream, vertex):
    cols = list(iter_proper(comp, k))
    if not cols:
        raise UncolourableError(
            "component at vertex {} has no proper {}-colouring".format(
                vertex, k), vertex)
    return list(cols[stream.randbelow(len(cols))])


def sample_base(g0, k, stream, c_max=rCST.C_MAX, brute=False):
    """ exact uniform proper colouring of G_0, component by component """
    x = np.zeros(g0.n, dtype=np.int64)
    for c in components(g0):
        v0 = c.vertices[0]
        st = stream.child(v0)
        if c.nv == 1:
            x[v0] = st.randbelow(k)
            continue
        sub = subgraph(g0, c.vertices)
        if brute and c.cyclomatic > c_max and c.nv <= rCST.BRUTE_MAX and \
                k**c.nv <= rCST.GUARD_ENUM:
            xs = _brute_colouring(sub, k, st, v0)
        else:
            xs = sample_component_colouring(sub, k, st, c_max, v0)
        x[c.vertices] = xs
    return Colouring(x, k)


def _tree_law(table):
    """ exact law of sample_tree_colouring as (colours, probability) """
    out = []
    n = table.tree.n
    x = [0]*n

    def branch(j, p):
        if j == n:
            out.append((tuple(x), p))
            return
        v = table.order[j]
        w = table.weights(v, x)
        tw = sum(w)
        for c in range(table.k):
            if w[c] > 0:
                x[v] = c
                branch(j+1, p*Fraction(w[c], tw))
        x[v] = 0

    if table.total > 0:
        branch(0, Fraction(1))
    return out


def component_law(comp, k, c_max=rCST.C_MAX, vertex=0):
    """ exact output law of the component sampler, keyed by colour tuple """
    if comp.n == 1:
        return {(c,): Fraction(1, k) for c in range(k)}
    beta = _check_cap(comp, c_max, vertex)
    law = {}
    if beta == 0:
        parts = [(CountTable(comp, [list(range(k))]*comp.n, k), Fraction(1))]
    else:
        tree, out = _conditioned(comp, k)
        tot = sum(t for _, t in out)
        if tot == 0:
            raise UncolourableError("no proper colouring", vertex)
        parts = [(CountTable(tree, lists, k), Fraction(t, tot))
                 for lists, t in out if t > 0]
    for table, pw in parts:
        for xs, p in _tree_law(table):
            law[xs] = law.get(xs, 0)+pw*p
    return law


def base_law(g0, k, c_max=rCST.C_MAX, guard=rCST.GUARD_BRANCH):
    """ exact law of sample_base as a colouring distribution """
    n = g0.n
    comps = components(g0)
    laws = []
    size = 1
    for c in comps:
        sub = subgraph(g0, c.vertices)
        lw = component_law(sub, k, c_max, c.vertices[0])
        size *= len(lw)
        if size > guard:
            raise GuardError("base law support exceeds {}".format(guard))
        # partial base-k codes of the component's vertices
        pw = [k**(n-1-v) for v in c.vertices]
        laws.append([(sum(a*b for a, b in zip(xs, pw)), p)
                     for xs, p in lw.items()])
    acc = {0: Fraction(1)}
    for lw in laws:
        nxt = {}
        for c0, p0 in acc.items():
            for c1, p1 in lw:
                nxt[c0+c1] = p0*p1
        acc = nxt
    return ColouringDistribution.from_fractions(n, k, acc)


def colourings2str(colourings, n, k, seed):
    """ one comma-separated colouring per line after a header """
    txt = "# n={} k={} seed={}\n".format(n, k, seed)
    return txt+"".join(x.tostr()+"\n" for x in colourings)


def write_colourings(colourings, path, n, k, seed):
    with open(path, 'w') as f:
        f.write(colourings2str(colourings, n, k, seed))


def read_colourings(path):
    hdr = {}
    xs = []
    with open(path, 'r') as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            if line.startswith('#'):
                for tok in line[1:].split():
                    key, val = tok.split('=')
                    hdr[key] = int(val)
                continue
            xs.append(tuple(int(c) for c in line.split(',')))
    return hdr, xs
