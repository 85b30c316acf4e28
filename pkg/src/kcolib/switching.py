"""
module for disagreement components and the q-switch update step
"""

from collections import deque
from kcolib.graph import rCST, uMode, uStatus, edge


class DisagreementComponent():
    """ class for the {c,q}-coloured component reachable from a root """

    def __init__(self, root, c, q, class_c, class_q, contains_u, nvisit):
        self.root = root
        self.c = c
        self.q = q
        self.class_c = class_c
        self.class_q = class_q
        self.contains_u = contains_u
        self.nvisit = nvisit

    def __repr__(self):
        return "DisagreementComponent(root={}, c={}, q={}, size={})".format(
            self.root, self.c, self.q, self.size)

    @property
    def size(self):
        return len(self.class_c)+len(self.class_q)

    @property
    def vertices(self):
        return sorted(self.class_c+self.class_q)

    def check(self, g, x, skip=None):
        """ closure, connectivity and colour-class consistency """
        xs = x.x
        vs = set(self.vertices)
        if self.root not in vs:
            return False
        if any(xs[w] != self.c for w in self.class_c) or \
                any(xs[w] != self.q for w in self.class_q):
            return False
        for w in vs:
            for y in g.adj[w]:
                if skip is not None and edge(w, y) == skip:
                    continue
                if xs[y] in (self.c, self.q) and y not in vs:
                    return False
        seen = {self.root}
        q = deque([self.root])
        while q:
            w = q.popleft()
            for y in g.adj[w]:
                if y in vs and y not in seen and \
                        (skip is None or edge(w, y) != skip):
                    seen.add(y)
                    q.append(y)
        return seen == vs


class StepOutcome():
    """ class for the result of one update step """

    def __init__(self, colouring, bad=False, q=None, resolved=True,
                 retries=0, comp=None, exhausted=False):
        self.colouring = colouring
        self.bad = bad
        self.q = q
        self.resolved = resolved
        self.retries = retries
        self.comp = comp
        self.exhausted = exhausted

    @property
    def comp_size(self):
        return 0 if self.comp is None else self.comp.size

    def record(self, i):
        """ log record of step i """
        rec = {"i": i, "bad": self.bad, "q": self.q,
               "component_size": self.comp_size, "resolved": self.resolved}
        if self.retries > 0:
            rec["retries"] = self.retries
        if self.comp is not None and self.comp.size < rCST.LOG_CAP:
            rec["component"] = self.comp.vertices
        return rec


def is_bad(x, v, u):
    """ endpoints of the inserted edge share a colour """
    return x.x[v] == x.x[u]


def disagreement_component(g, x, v, q, u=None, skip=None):
    """ vertices reachable from v through colours {x(v), q} """
    xs = x.x
    c = int(xs[v])
    if q == c:
        raise ValueError("q must differ from the colour of v ({})".format(c))
    if not 0 <= q < x.k:
        raise ValueError("q={} out of colour range".format(q))
    cc = [v]
    cq = []
    seen = {v}
    dq = deque([v])
    nvisit = 0
    while dq:
        w = dq.popleft()
        nvisit += 1
        for y in g.adj[w]:
            if y in seen:
                continue
            if skip is not None and edge(w, y) == skip:
                continue
            cy = xs[y]
            if cy == c:
                cc.append(y)
            elif cy == q:
                cq.append(y)
            else:
                continue
            seen.add(y)
            dq.append(y)
    return DisagreementComponent(v, c, q, cc, cq,
                                 u is not None and u in seen, nvisit)


def q_switch(g, x, comp, check=False, inplace=False):
    """ exchange the two colours on the component """
    if check and not comp.check(g, x):
        raise ValueError("component inconsistent with colouring")
    y = x if inplace else x.copy()
    y.x[comp.class_c] = comp.q
    y.x[comp.class_q] = comp.c
    y.status = uStatus.UNCHECKED
    y.witness = None
    return y


def step(g_next, v, u, x, stream, mode=uMode.FAITHFUL, inplace=False):
    """ update a colouring of G_i to one of G_i + {v,u} """
    k = x.k
    if k < 2:
        raise ValueError("step needs k >= 2, got {}".format(k))
    if not g_next.has_edge(v, u):
        raise ValueError("edge {} not in g_next".format(edge(v, u)))
    if not is_bad(x, v, u):
        return StepOutcome(x)
    c = int(x.x[v])
    opts = [q for q in range(k) if q != c]
    skip = edge(v, u)

    if mode == uMode.FAITHFUL:
        q = opts[stream.randbelow(k-1)]
        comp = disagreement_component(g_next, x, v, q, u, skip)
        y = q_switch(g_next, x, comp, inplace=inplace)
        return StepOutcome(y, True, q, not comp.contains_u, 0, comp)

    # retry: re-derive from the original colouring, q without replacement
    nt = 0
    while True:
        q = opts.pop(stream.randbelow(len(opts)))
        comp = disagreement_component(g_next, x, v, q, u, skip)
        if not comp.contains_u:
            y = q_switch(g_next, x, comp, inplace=inplace)
            return StepOutcome(y, True, q, True, nt, comp)
        if not opts:
            y = q_switch(g_next, x, comp, inplace=inplace)
            return StepOutcome(y, True, q, False, nt, comp, exhausted=True)
        nt += 1
