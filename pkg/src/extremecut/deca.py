"""Degree-constrained edge-connectivity augmentation and splitting off.

Pipeline: extreme-sets tree, external augmentation (tight degrees b),
parity fix, the chain phase (batched augmentation chains over the maximal
extreme sets of demand >= 2), and a finishing step for demand-one sets.
Degree bounds use ``None`` for "unbounded".
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .extreme import extreme_sets_tree, subtree_cut_values
from .flow import FlowNetwork, steiner_connectivity
from .graph import GraphError, build_graph
from .oracles import Infeasible
from .pathtree import PathTree


class ChainDefect(RuntimeError):
    """An invariant of the chain phase was violated."""


@dataclass
class TightDegrees:
    b: list
    w_total: int


@dataclass
class DecaSolution:
    F: list
    total_weight: int
    audit: dict = field(default_factory=dict)
    report: object = None


def _labels(G, tree):
    if tree.labels is None:
        tree.labels = subtree_cut_values(G, tree)
    return tree.labels


# --- external augmentation --------------------------------------------------

def external_augmentation(G, tau, beta, tree):
    """Minimum degrees b towards an external vertex making all cuts >= tau.

    Extreme sets are visited in postorder; a deficient set is topped up on
    its vertices with spare bound, lowest id first.
    """
    n = G.n
    b = [0] * n
    if n <= 1 or tau <= 0:
        return TightDegrees(b, 0)
    label = _labels(G, tree)
    have = [0] * tree.size
    heaps = [None] * tree.size
    for y in tree.postorder():
        if tree.is_leaf(y):
            heaps[y] = [y] if beta[y] is None or beta[y] > 0 else []
        else:
            kids = tree.children[y]
            big = max(kids, key=lambda c: len(heaps[c]))
            h = heaps[big]
            for c in kids:
                if c != big:
                    for v in heaps[c]:
                        heapq.heappush(h, v)
                heaps[c] = None
                have[y] += have[c]
            heaps[y] = h
        if y == tree.root:
            break
        dem = tau - label[y]
        h = heaps[y]
        while have[y] < dem:
            while h and beta[h[0]] is not None and b[h[0]] >= beta[h[0]]:
                heapq.heappop(h)
            if not h:
                raise Infeasible(
                    f"set of {len(tree.members(y))} vertices has cut {label[y]} "
                    f"and too little degree bound to reach {tau}"
                )
            v = h[0]
            room = dem - have[y] if beta[v] is None else min(dem - have[y], beta[v] - b[v])
            b[v] += room
            have[y] += room
    return TightDegrees(b, sum(b))


def parity_fix(tight, beta):
    b = list(tight.b)
    w = tight.w_total
    if w % 2 == 0:
        return TightDegrees(b, w)
    for v in range(len(b)):
        if beta[v] is None or b[v] + 1 <= beta[v]:
            b[v] += 1
            return TightDegrees(b, w + 1)
    raise Infeasible("odd total degree and no vertex with spare bound")


def expected_optimum(G, tau, beta, tree=None, seed=0):
    """Optimal augmentation weight: ceil(w / 2) for the external optimum w.

    For tau = 1 the answer is instead (number of components) - 1, which
    is larger than ceil(w / 2) as soon as there are three components.
    """
    if G.n <= 1 or tau <= 0:
        return 0
    if tau == 1:
        return len(_connect_components(G, beta))
    if tree is None:
        tree = extreme_sets_tree(G, seed, "accelerated")
    tight = external_augmentation(G, tau, beta, tree)
    parity_fix(tight, beta)
    return (tight.w_total + 1) // 2


# --- chain phase -------------------------------------------------------------

class _KeyedHeaps:
    """Values per key in classes 0..2, with lazy min/max heaps per class.

    Ties are broken by the smaller key so runs are reproducible.
    """

    def __init__(self, track_max=True):
        self.entry = {}
        self.mins = ([], [], [])
        self.maxs = ([], [], []) if track_max else None
        self.ver = 0

    def put(self, key, cls, value):
        self.ver += 1
        self.entry[key] = (cls, value, self.ver)
        heapq.heappush(self.mins[cls], (value, key, self.ver))
        if self.maxs is not None:
            heapq.heappush(self.maxs[cls], (-value, key, self.ver))

    def remove(self, key):
        self.entry.pop(key, None)

    def _clean(self, h):
        entry = self.entry
        while h:
            _, key, ver = h[0]
            e = entry.get(key)
            if e is not None and e[2] == ver:
                return h[0]
            heapq.heappop(h)
        return None

    def min(self, cls):
        top = self._clean(self.mins[cls])
        return None if top is None else (top[0], top[1])

    def max(self, cls):
        top = self._clean(self.maxs[cls])
        return None if top is None else (-top[0], top[1])

    def smallest(self, cls, k):
        h = self.mins[cls]
        out = []
        while len(out) < k and self._clean(h) is not None:
            out.append(heapq.heappop(h))
        for item in out:
            heapq.heappush(h, item)
        return [(value, key) for value, key, _ in out]


class _VacancyIndex:
    """Max over node-position ranges of (vacancy, -vertex) for free vertices."""

    def __init__(self, size, items):
        n = max(1, size)
        self.n = n
        self.t = [(-1, 0)] * (2 * n)
        for pos, val in items:
            self.t[n + pos] = val
        for i in range(n - 1, 0, -1):
            self.t[i] = max(self.t[2 * i], self.t[2 * i + 1])

    def set(self, pos, val):
        i = pos + self.n
        self.t[i] = val
        i >>= 1
        while i:
            self.t[i] = max(self.t[2 * i], self.t[2 * i + 1])
            i >>= 1

    def best(self, lo, hi):
        res = (-1, 0)
        lo += self.n
        hi += self.n
        t = self.t
        while lo < hi:
            if lo & 1:
                res = max(res, t[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                res = max(res, t[hi])
            lo >>= 1
            hi >>= 1
        return res


@dataclass
class _Edge:
    left: int
    right: int
    a: int  # endpoint inside left
    c: int  # endpoint inside right
    birth: int


class ChainState:
    """Live state of the batched chain phase.

    Listed sets are tree nodes kept in a linked list; the first and last
    hold the two smallest cut values.  A chain edge born at time t0 stands
    for t - t0 parallel unit edges; it is written out only when removed.
    Vertex vacancies of chain endpoints live in ``q1`` as b + d_F * t and
    cut values of listed sets in ``q2`` as delta - delta_F * t, so advancing
    the global timer updates all of them at once.
    """

    def __init__(self, G, tau, b, tree, t2_rule="strict", on_batch=None):
        if t2_rule not in ("strict", "printed"):
            raise ValueError("t2_rule must be 'strict' or 'printed'")
        self.G = G
        self.tau = tau
        self.tree = tree
        self.t2_rule = t2_rule
        self.on_batch = on_batch
        label = _labels(G, tree)
        self.pt = PathTree.from_tree(tree, label)
        self.M = 1 + G.total_weight() + sum(b) + 1
        self.b0 = list(b)
        self.bx = list(b)
        n = G.n
        self.dF = [0] * n
        self.vedges = [[] for _ in range(n)]
        pos = self.pt.pos
        self.vac = _VacancyIndex(tree.size, [(pos[v], (b[v], -v)) for v in range(n) if b[v] > 0])
        self.q1 = _KeyedHeaps(track_max=False)
        self.q2 = _KeyedHeaps()
        self.t = 0
        self.t3heap = []
        self.t3ver = {}
        self.next = {}
        self.prev = {}
        self.head = None
        self.tail = None
        self.r = 0
        self.left = {}
        self.right = {}
        self.F = []
        self.batches = 0
        self.degenerate = 0
        self.visited = 0
        self._touched = set()

    # -- values ---------------------------------------------------------------

    def vacancy(self, u):
        k = self.dF[u]
        if k == 0:
            return self.bx[u]
        return self.q1.entry[u][1] - k * self.t

    def _incident(self, X):
        return [e for e in (self.left.get(X), self.right.get(X)) if e is not None]

    def delta(self, X):
        """Current cut value of a listed set from explicit plus implicit edges."""
        return self.pt.value(X) + sum(self.t - e.birth for e in self._incident(X))

    def delta_from_queue(self, X):
        cls, stored, _ = self.q2.entry[X]
        return stored + cls * self.t

    def listed(self):
        out = []
        x = self.head
        while x is not None:
            out.append(x)
            x = self.next[x]
        return out

    def _reset_set(self, X, d):
        k = len(self._incident(X))
        self.q2.put(X, k, d - k * self.t)
        self._touched.add(X)

    # -- list maintenance -----------------------------------------------------

    def _insert_after(self, P, X):
        nxt = self.next[P] if P is not None else self.head
        self.prev[X] = P
        self.next[X] = nxt
        if P is None:
            self.head = X
        else:
            self.next[P] = X
        if nxt is None:
            self.tail = X
        else:
            self.prev[nxt] = X
        self.r += 1
        self._reset_set(X, self.pt.value(X))

    def _detach(self, X):
        for e in self._incident(X):
            self._unlink(e)
        p, nx = self.prev.pop(X), self.next.pop(X)
        if p is None:
            self.head = nx
        else:
            self.next[p] = nx
        if nx is None:
            self.tail = p
        else:
            self.prev[nx] = p
        self.r -= 1
        self.q2.remove(X)
        self.t3ver.pop(X, None)
        self._touched.discard(X)
        if p is not None:
            self._touched.add(p)
        if nx is not None:
            self._touched.add(nx)
        return p

    # -- chain edges ------------------------------------------------------------

    def _pick(self, X):
        """Endpoint for a new chain edge inside listed set X."""
        pos, size = self.pt.pos, self.pt.size
        vac, neg = self.vac.best(pos[X], pos[X] + size[X])
        if vac >= 1:
            return -neg
        for e in self._incident(X):
            p = e.a if e.left == X else e.c
            if self.vacancy(p) >= 2:
                return p
        raise ChainDefect(f"no vacant vertex left in listed set {X}")

    def _attach_vertex(self, u, e):
        bu = self.vacancy(u)
        k = self.dF[u] + 1
        self.dF[u] = k
        self.vedges[u].append(e)
        if k == 1:
            self.vac.set(self.pt.pos[u], (-1, 0))
        self.q1.put(u, k, bu + k * self.t)

    def _detach_vertex(self, u, e):
        bu = self.vacancy(u)
        k = self.dF[u] - 1
        self.dF[u] = k
        self.vedges[u].remove(e)
        if k == 0:
            self.q1.remove(u)
            self.bx[u] = bu
            if bu > 0:
                self.vac.set(self.pt.pos[u], (bu, -u))
        else:
            self.q1.put(u, k, bu + k * self.t)

    def _link(self, X, Y):
        dX, dY = self.delta(X), self.delta(Y)
        a = self._pick(X)
        c = self._pick(Y)
        e = _Edge(X, Y, a, c, self.t)
        self.right[X] = e
        self.left[Y] = e
        self._attach_vertex(a, e)
        self._attach_vertex(c, e)
        self._reset_set(X, dX)
        self._reset_set(Y, dY)

    def _unlink(self, e):
        dX, dY = self.delta(e.left), self.delta(e.right)
        w = self.t - e.birth
        if w > 0:
            self.F.append((e.a, e.c, w))
            self.pt.add_path(e.a, e.c, w)
            self.pt.add_path(self.pt.lca(e.a, e.c), self.pt.lca(e.a, e.c), -w)
        del self.right[e.left]
        del self.left[e.right]
        self._detach_vertex(e.a, e)
        self._detach_vertex(e.c, e)
        if e.left in self.next:
            self._reset_set(e.left, dX)
        if e.right in self.next:
            self._reset_set(e.right, dY)

    def _repair(self):
        # fixed order: endpoint choices depend on which edge is linked first
        for X in sorted(self._touched):
            if X not in self.next:
                continue
            nx = self.next[X]
            if nx is not None and X not in self.right:
                self._link(X, nx)
            p = self.prev[X]
            if p is not None and X not in self.left:
                self._link(p, X)
        for X in self._touched:
            if X in self.next:
                self._push_t3(X)
        self._touched = set()

    # -- t3 -----------------------------------------------------------------

    def t3_query(self, X):
        """Batches until some proper descendant's cut drops to X's cut value."""
        pt, M, t = self.pt, self.M, self.t
        inc = self._incident(X)
        dX = self.delta(X)
        ends = [((e.c, t - e.birth) if e.left != X else (e.a, t - e.birth)) for e in inc]
        best = None

        def take(val):
            nonlocal best
            if best is None or val < best:
                best = val

        pt.add_path(X, X, M)
        if len(ends) == 1:
            p = ends[0][0]
            pt.add_path(p, X, M)
            m0 = pt.min_subtree(X)
            if m0 < M:
                take(m0 - dX)
            pt.add_path(p, X, -M)
        elif len(ends) == 2:
            (p, wp), (q, wq) = ends
            if p == q:
                pt.add_path(p, X, M)
                m0 = pt.min_subtree(X)
                if m0 < M:
                    take(-((dX - m0) // 2))
                pt.add_path(p, X, -M)
            else:
                y = pt.lca(p, q)
                pt.add_path(y, X, M)
                for z, wz in ((p, wp), (q, wq)):
                    m1 = pt.min_path(z, y)
                    if m1 < M:
                        take(m1 + wz - dX)
                pt.add_path(p, q, M)
                m0 = pt.min_subtree(X)
                if m0 < M:
                    take(-((dX - m0) // 2))
                pt.add_path(p, q, -M)
                pt.add_path(y, X, -M)
        pt.add_path(X, X, -M)
        return best

    def _push_t3(self, X):
        val = self.t3_query(X)
        ver = self.t3ver.get(X, 0) + 1
        self.t3ver[X] = ver
        if val is not None:
            heapq.heappush(self.t3heap, (self.t + val, ver, X))

    def _t3_top(self):
        h = self.t3heap
        while h:
            T, ver, X = h[0]
            if self.t3ver.get(X) == ver:
                return T, X
            heapq.heappop(h)
        return None

    # -- batching -----------------------------------------------------------

    def compute_t(self):
        t = self.t
        cands = []
        for k in (1, 2):
            top = self.q1.min(k)
            if top is not None:
                cands.append(((top[0] - k * t) // k, "vertex"))
            top = self.q2.max(k)
            if top is not None:
                dem = self.tau - (top[0] + k * t)
                if self.t2_rule == "strict":
                    cands.append(((dem - 2) // k + 1, "demand"))
                else:
                    cands.append((dem // k, "demand"))
        top = self._t3_top()
        if top is not None:
            cands.append((top[0] - t, "extreme"))
        if not cands:
            raise ChainDefect("chain without any stopping condition")
        step = min(c[0] for c in cands)
        cases = sorted({c[1] for c in cands if c[0] == step})
        return step, cases

    def _refresh(self, X):
        """Maximal currently-extreme demand >= 2 sets strictly inside X."""
        pt, M, tree = self.pt, self.M, self.tree
        out = []
        stack = list(reversed(tree.children[X]))
        while stack:
            y = stack.pop()
            self.visited += 1
            dy = pt.value(y)
            if tree.is_leaf(y):
                extreme = True
            else:
                pt.add_path(y, y, M)
                extreme = dy < pt.min_subtree(y)
                pt.add_path(y, y, -M)
            if extreme:
                if self.tau - dy >= 2:
                    out.append(y)
                continue
            stack.extend(reversed(tree.children[y]))
        return out

    def _move(self, X, front):
        if (self.head if front else self.tail) == X:
            return
        self._detach(X)
        if front:
            old = self.head
            self._insert_after(None, X)
        else:
            old = self.tail
            self._insert_after(self.tail, X)
        if old is not None:
            self._touched.add(old)

    def _order_ends(self):
        if self.r < 3:
            return
        vals = []
        for k in (0, 1, 2):
            for stored, X in self.q2.smallest(k, 2):
                vals.append((stored + k * self.t, X))
        vals.sort()
        m1, m2 = vals[0][0], vals[1][0]
        e1, e2 = sorted((self.delta(self.head), self.delta(self.tail)))
        if (e1, e2) == (m1, m2):
            return
        A, B = vals[0][1], vals[1][1]
        if self.head not in (A, B):
            self._move(B if self.tail == A else A, True)
        if self.tail not in (A, B):
            self._move(B if self.head == A else A, False)

    def _start(self):
        tree, label = self.tree, self.tree.labels
        kids = [c for c in tree.children[tree.root] if self.tau - label[c] >= 2]
        kids.sort(key=lambda c: label[c])
        if len(kids) >= 2:
            kids = [kids[0]] + kids[2:] + [kids[1]]
        for X in kids:
            self._insert_after(self.tail, X)
        self._repair()

    def run(self):
        self._start()
        while self.head is not None:
            if self.r == 1:
                # cannot happen for a tight instance; leave it to the finisher
                self.degenerate += 1
                self._detach(self.head)
                break
            step, _ = self.compute_t()
            if step < 1:
                raise ChainDefect(f"non-positive batch size {step}")
            self.t += step
            self.batches += 1
            if self.on_batch is not None:
                self.on_batch(self)
            self._process()
        self._touched = set()
        return self.F

    def _process(self):
        t, tau = self.t, self.tau
        drop = []
        for k in (1, 2):
            while True:
                top = self.q2.max(k)
                if top is None or tau - (top[0] + k * t) >= 2:
                    break
                drop.append(top[1])
                self.q2.remove(top[1])
        while True:
            top = self._t3_top()
            if top is None or top[0] > t:
                break
            drop.append(top[1])
            self.t3ver.pop(top[1])
        tired = []
        for k in (1, 2):
            while True:
                top = self.q1.min(k)
                if top is None or top[0] - k * t >= k:
                    break
                tired.append(top[1])
                self.q1.remove(top[1])
                self.q1.entry[top[1]] = (k, top[0], -1)  # keep value readable
        for u in tired:
            for e in list(self.vedges[u]):
                self._unlink(e)
                self._touched.update((e.left, e.right))
        refreshed = False
        for X in dict.fromkeys(drop):
            if X not in self.next:
                continue
            repl = self._refresh_detach(X)
            refreshed = refreshed or repl is not None
        if refreshed:
            self._order_ends()
        if self.r >= 2:
            self._repair()

    def _refresh_detach(self, X):
        for e in self._incident(X):
            self._unlink(e)
        repl = self._refresh(X)
        p = self._detach(X)
        for Y in repl:
            self._insert_after(p, Y)
            p = Y
        return repl

    def refresh_list(self, X):
        self._refresh_detach(X)
        self._order_ends()
        self._repair()

    # -- checks ---------------------------------------------------------------

    def implicit_edges(self):
        return [(e.a, e.c, self.t - e.birth) for e in self.right.values() if self.t > e.birth]

    def all_edges(self):
        return self.F + self.implicit_edges()

    def reconstruct(self):
        """Vacancies and listed-set cut values as read from the lazy queues."""
        b = [self.vacancy(u) for u in range(self.G.n)]
        d = {X: self.delta_from_queue(X) for X in self.listed()}
        return b, d

    def recompute(self):
        """The same quantities from scratch, from the edges added so far."""
        b = list(self.b0)
        for u, v, w in self.all_edges():
            b[u] -= w
            b[v] -= w
        H = build_graph(self.G.n, list(self.G.edges) + self.all_edges())
        d = {}
        for X in self.listed():
            S = set(self.tree.members(X))
            d[X] = sum(w for u, v, w in H.edges if (u in S) != (v in S))
        return b, d


def chain_phase(G, tau, b, tree, t2_rule="strict", on_batch=None):
    state = ChainState(G, tau, b, tree, t2_rule, on_batch)
    state.run()
    return state.F, state


# --- finishing step ----------------------------------------------------------

def literal_accepts(H, tau, b, u, v, seed=0):
    """Does uv keep the remaining optimum at sum(b)/2 - 1?

    That holds iff external augmentation of H + uv under the bounds b - u - v
    needs at most sum(b) - 2.
    """
    if u == v or b[u] < 1 or b[v] < 1:
        return False
    H2 = build_graph(H.n, list(H.edges) + [(u, v, 1)])
    beta = list(b)
    beta[u] -= 1
    beta[v] -= 1
    tree = extreme_sets_tree(H2, seed, "accelerated")
    try:
        tight = external_augmentation(H2, tau, beta, tree)
    except Infeasible:
        return False
    # b may carry one unit of parity slack, so w need not equal sum(b)
    return tight.w_total <= sum(b) - 2


def finish_demand_one(H, tau, b, tree=None, general=False, seed=0):
    """Complete a tight instance whose deficient sets all have demand <= 1.

    With b tight and every cut at least tau - 1, adding uv keeps b - u - v
    tight unless b(u) = b(v) = 1 and some cut of value tau - 1 has every
    other vacant vertex on one side and u, v on the other.  That is one
    capped flow from the other vacant vertices to {u, v}.  With
    ``general`` the test recomputes external augmentation instead.
    """
    b = list(b)
    n = H.n
    F = []
    net = None if general else FlowNetwork(H)
    current = H
    while sum(b) > 0:
        vac = [v for v in range(n) if b[v] > 0]
        if len(vac) < 2:
            raise ChainDefect("odd leftover vacancy in finishing step")
        pair = None
        if general:
            for i, u in enumerate(vac):
                for v in vac[i + 1:]:
                    if literal_accepts(current, tau, b, u, v, seed):
                        pair = (u, v)
                        break
                if pair:
                    break
        else:
            big = [v for v in vac if b[v] >= 2]
            if big:
                u = big[0]
                pair = (u, next(v for v in vac if v != u))
            else:
                for i, u in enumerate(vac):
                    for v in vac[i + 1:]:
                        if _fast_accepts(net, tau, vac, u, v):
                            pair = (u, v)
                            break
                    if pair:
                        break
        if pair is None:
            raise ChainDefect("no acceptable finishing edge")
        u, v = pair
        F.append((u, v, 1))
        b[u] -= 1
        b[v] -= 1
        if general:
            current = build_graph(n, list(current.edges) + [(u, v, 1)])
        else:
            net.add_edge(u, v, 1)
    return F


def _fast_accepts(net, tau, vac, u, v):
    rest = [x for x in vac if x != u and x != v]
    if not rest:
        return True
    value, _ = net.flow(rest, net.mask((u, v)), tau)
    return value >= tau


# --- tau = 1 ---------------------------------------------------------------

def _connect_components(G, beta):
    """Fewest unit edges joining all components within the degree bounds.

    A tree on the c components with degrees d_i exists for any d_i >= 1
    summing to 2(c - 1); within a component endpoints go to the lowest ids
    with spare bound.
    """
    comps = G.components()
    c = len(comps)
    if c <= 1:
        return []
    caps = []
    for comp in comps:
        cap = 0
        for v in comp:
            cap = c - 1 if beta[v] is None else cap + beta[v]
            if cap >= c - 1:
                cap = c - 1
                break
        caps.append(cap)
    if min(caps) < 1 or sum(caps) < 2 * (c - 1):
        raise Infeasible("not enough degree bound to connect the components")
    d = [1] * c
    extra = c - 2
    for i in range(c):
        add = min(extra, caps[i] - 1)
        d[i] += add
        extra -= add
    leaves = [i for i in range(c) if d[i] == 1]
    inner = [i for i in range(c) if d[i] > 1]
    pairs = []
    while inner:
        i = inner[-1]
        pairs.append((leaves.pop(), i))
        d[i] -= 1
        if d[i] == 1:
            inner.pop()
            leaves.append(i)
    pairs.append((leaves[0], leaves[1]))
    used = {}

    def endpoint(i):
        for v in comps[i]:
            if beta[v] is None or used.get(v, 0) < beta[v]:
                used[v] = used.get(v, 0) + 1
                return v
        raise ChainDefect("component ran out of degree bound")

    return [(endpoint(i), endpoint(j), 1) for i, j in pairs]


# --- solver ------------------------------------------------------------------

def _merge(edges):
    acc = {}
    for u, v, w in edges:
        key = (u, v) if u < v else (v, u)
        acc[key] = acc.get(key, 0) + w
    return [(u, v, w) for (u, v), w in sorted(acc.items())]


def solve_deca(G, tau, beta=None, seed=0, backend="naive", tree=None,
               t2_rule="strict", on_batch=None):
    """Minimum-weight edge set making G tau-edge-connected within degree bounds."""
    n = G.n
    if beta is None:
        beta = [None] * n
    if len(beta) != n:
        raise GraphError("degree bound vector has the wrong length")
    if n <= 1 or tau <= 0:
        return DecaSolution([], 0, {"chain": [], "finish": []})
    if tau == 1:
        F = _merge(_connect_components(G, beta))
        return DecaSolution(F, sum(x for _, _, x in F), {"chain": [], "finish": F})
    if tree is None:
        tree = extreme_sets_tree(G, seed, backend)
    tight = external_augmentation(G, tau, beta, tree)
    w = tight.w_total
    tight = parity_fix(tight, beta)
    state = ChainState(G, tau, tight.b, tree, t2_rule, on_batch)
    state.run()
    chain = list(state.F)
    left = list(tight.b)
    for u, v, x in chain:
        left[u] -= x
        left[v] -= x
    H = build_graph(n, list(G.edges) + chain)
    finish = finish_demand_one(H, tau, left, general=state.degenerate > 0, seed=seed)
    F = _merge(chain + finish)
    total = sum(x for _, _, x in F)
    audit = {
        "chain": chain,
        "finish": finish,
        "w": w,
        "batches": state.batches,
        "degenerate": state.degenerate,
    }
    return DecaSolution(F, total, audit)


# --- splitting off -----------------------------------------------------------

def split_off(G, s, seed=0, backend="naive"):
    """Replace all edges at s by shortcut edges on the other vertices.

    Returns shortcut edges in the original numbering.  Pairs that would
    become loops are dropped.  The Steiner connectivity of V minus s is kept.
    """
    n = G.n
    if not 0 <= s < n:
        raise GraphError(f"vertex {s} out of range")
    ws = {}
    for x, w, _ in G.adj[s]:
        ws[x] = ws.get(x, 0) + w
    if sum(ws.values()) % 2:
        raise GraphError(f"vertex {s + 1} has odd degree; it cannot be split off completely")
    others = [v for v in range(n) if v != s]
    if len(others) < 2 or not ws:
        return []
    tau = steiner_connectivity(G, others)
    H = G.induced(others)
    beta = [ws.get(v, 0) for v in others]
    try:
        sol = solve_deca(H, tau, beta, seed=seed, backend=backend)
    except Infeasible as exc:
        raise ChainDefect(f"splitting off produced an infeasible instance: {exc}") from exc
    left = list(beta)
    F = []
    for u, v, w in sol.F:
        left[u] -= w
        left[v] -= w
        F.append((others[u], others[v], w))
    # close the remaining degree arbitrarily, largest remainders first
    heap = [(-r, i) for i, r in enumerate(left) if r > 0]
    heapq.heapify(heap)
    extra = []
    while len(heap) >= 2:
        ru, u = heapq.heappop(heap)
        rv, v = heapq.heappop(heap)
        extra.append((others[u], others[v], 1))
        if ru + 1 < 0:
            heapq.heappush(heap, (ru + 1, u))
        if rv + 1 < 0:
            heapq.heappush(heap, (rv + 1, v))
    return _merge(F + extra)
