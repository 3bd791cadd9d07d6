"""Brute-force references and solution verification.

These are deliberately simple and exponential; they exist to anchor tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .graph import GraphError, build_graph
from .tree import tree_from_sets

BRUTE_LIMIT = 16


def all_cut_values(G):
    """delta(S) for every bitmask S over the vertices (numpy array)."""
    n = G.n
    if n > BRUTE_LIMIT:
        raise GraphError(f"brute force limited to {BRUTE_LIMIT} vertices")
    total = G.total_weight()
    dtype = np.int64 if 4 * total < 2**62 else object
    W = np.zeros((n, n), dtype=dtype)
    for u, v, w in G.edges:
        W[u, v] += w
        W[v, u] += w
    deg = W.sum(axis=1)
    delta = np.zeros(1, dtype=dtype)
    for v in range(n):
        idx = np.arange(1 << v)
        wv = np.zeros(1 << v, dtype=dtype)
        for u in range(v):
            if W[u, v]:
                wv = wv + W[u, v] * ((idx >> u) & 1)
        delta = np.concatenate([delta, delta + deg[v] - 2 * wv])
    return delta


def _proper_subset_min(delta, n):
    """f(S) = min delta(T) over nonempty proper subsets T of S."""
    big = 4 * int(delta.max()) + 1 if len(delta) else 1
    g = delta.copy()
    g[0] = big
    for i in range(n):
        v = g.reshape(-1, 2, 1 << i)
        v[:, 1, :] = np.minimum(v[:, 1, :], v[:, 0, :])
    f = np.full_like(delta, big)
    for i in range(n):
        fv = f.reshape(-1, 2, 1 << i)
        gv = g.reshape(-1, 2, 1 << i)
        fv[:, 1, :] = np.minimum(fv[:, 1, :], gv[:, 0, :])
    return f


def brute_extreme_family(G):
    """All extreme sets (singletons included) as frozensets."""
    n = G.n
    if n == 0:
        return set()
    delta = all_cut_values(G)
    f = _proper_subset_min(delta, n)
    full = (1 << n) - 1
    out = set()
    for S in range(1, full):
        if (S & (S - 1)) == 0 or delta[S] < f[S]:
            out.add(frozenset(i for i in range(n) if S >> i & 1))
    if n == 1:
        out.add(frozenset((0,)))
    return out


def brute_extreme_sets(G):
    """Exact extreme-sets tree by enumerating all subsets, labelled with delta."""
    fam = brute_extreme_family(G)
    delta = all_cut_values(G) if G.n else None

    def label(t, y):
        if y == t.root:
            return 0
        return int(delta[sum(1 << v for v in t.members(y))])

    return tree_from_sets(G.n, fam, label)


def brute_connectivity_from(G, s):
    """lambda(s, t) for every t by minimising over all cuts (index s is None)."""
    delta = all_cut_values(G)
    n = G.n
    idx = np.arange(1 << n)
    has_s = ((idx >> s) & 1).astype(bool)
    out = [None] * n
    for t in range(n):
        if t == s:
            continue
        sel = has_s & ~((idx >> t) & 1).astype(bool)
        out[t] = int(min(delta[sel]))
    return out


def brute_cut_threshold(G, s, phi):
    lam = brute_connectivity_from(G, s)
    return frozenset(t for t in range(G.n) if t != s and lam[t] <= phi)


def brute_min_cut(G):
    delta = all_cut_values(G)
    return int(min(delta[1:-1]))


# --- degree-constrained augmentation, exhaustively -------------------------

class Infeasible(Exception):
    """The augmentation instance has no solution."""


def exhaustive_deca_optimum(G, tau, beta, weight_cap=None):
    """Minimum number of unit edges reaching connectivity tau within beta.

    ``beta[v]`` is an int or None (unbounded).  Edge multisets are
    enumerated by total weight k = 0, 1, ...; for each k every multiset whose
    vertex degrees respect the bounds is generated and its cuts checked.
    Raises Infeasible if nothing up to ``weight_cap`` works.
    """
    n = G.n
    if n > 6 or tau > 4:
        raise GraphError("exhaustive search limited to n <= 6, tau <= 4")
    if n < 2 or tau <= 0:
        return 0
    delta = all_cut_values(G)
    full = (1 << n) - 1
    cuts = [S for S in range(1, full) if S & 1]
    need = {S: tau - int(delta[S]) for S in cuts if tau - int(delta[S]) > 0}
    if not need:
        return 0
    pairs = list(itertools.combinations(range(n), 2))
    crossing = [[(S >> u & 1) != (S >> v & 1) for (u, v) in pairs] for S in need]
    need_list = list(need.values())
    deg = G.degrees()
    lo = [max(0, tau - deg[v]) for v in range(n)]
    hi = [tau * n if b is None else b for b in beta]
    if any(lo[v] > hi[v] for v in range(n)):
        raise Infeasible("a vertex cannot reach the required degree")
    if weight_cap is None:
        weight_cap = tau * n
    incident = [[i for i, (u, v) in enumerate(pairs) if x in (u, v)] for x in range(n)]

    def ok(x):
        for row, req in zip(crossing, need_list):
            got = 0
            for c, xi in zip(row, x):
                if c:
                    got += xi
            if got < req:
                return False
        return True

    def search(k):
        x = [0] * len(pairs)
        d = [0] * n

        def rec(i, left):
            if i == len(pairs):
                if left == 0 and all(d[v] >= lo[v] for v in range(n)):
                    return ok(x)
                return False
            u, v = pairs[i]
            # vertex u sees no further pairs after its last one
            last_u = incident[u][-1] == i
            top = min(left, hi[u] - d[u], hi[v] - d[v])
            for c in range(top, -1, -1):
                if last_u and d[u] + c < lo[u]:
                    break
                x[i] = c
                d[u] += c
                d[v] += c
                if rec(i + 1, left - c):
                    return True
                d[u] -= c
                d[v] -= c
            x[i] = 0
            return False

        return rec(0, k)

    start = max(max(need_list), (sum(lo) + 1) // 2)
    for k in range(start, weight_cap + 1):
        if search(k):
            return k
    raise Infeasible(f"no augmentation of weight <= {weight_cap}")


# --- verification -----------------------------------------------------------

@dataclass
class VerificationReport:
    min_cut_after: int
    degree_violations: list = field(default_factory=list)
    weight_total: int = 0
    optimal_weight_expected: int | None = None
    tau: int = 0

    @property
    def passed(self):
        return (
            not self.degree_violations
            and self.min_cut_after >= self.tau
            and (
                self.optimal_weight_expected is None
                or self.weight_total == self.optimal_weight_expected
            )
        )

    # ``pass`` is a keyword, so the flag is ``passed`` here and "pass" in as_dict()
    def as_dict(self):
        return {
            "min_cut_after": self.min_cut_after,
            "degree_violations": self.degree_violations,
            "weight_total": self.weight_total,
            "optimal_weight_expected": self.optimal_weight_expected,
            "pass": self.passed,
        }


def augmented(G, F):
    return build_graph(G.n, list(G.edges) + [(u, v, w) for u, v, w in F])


def verify_solution(G, tau, beta, F, expected_weight=None, seed=0):
    """Check connectivity, degree bounds and total weight of F.

    The expected weight is ceil(w/2) for the external augmentation optimum w;
    it is computed here unless supplied.
    """
    from . import flow
    from .deca import expected_optimum

    H = augmented(G, F)
    cut = flow.global_min_cut(H)[0] if H.n >= 2 else tau
    used = [0] * G.n
    for u, v, w in F:
        used[u] += w
        used[v] += w
    bad = [
        (v, used[v], beta[v])
        for v in range(G.n)
        if beta[v] is not None and used[v] > beta[v]
    ]
    if expected_weight is None:
        try:
            expected_weight = expected_optimum(G, tau, beta, seed=seed)
        except Infeasible:
            expected_weight = None
    return VerificationReport(
        min_cut_after=cut,
        degree_violations=bad,
        weight_total=sum(w for _, _, w in F),
        optimal_weight_expected=expected_weight,
        tau=tau,
    )


# --- slow chain reference -----------------------------------------------------

def slow_chain_solver(G, tau, b, tree=None):
    """Chain phase replayed one unit at a time, then the general finish.

    Follows the same list rules as the batched engine (initial order,
    endpoint choice, splicing, end reordering, link order) but keeps no lazy
    state: after every unit step cut values and extreme sets are recomputed
    by enumeration.  ``tree`` supplies node ids for tie-breaking and should
    be the tree the fast solver used.  Returns (chain edges, finishing
    edges) as lists of unit edges.
    """
    from .deca import finish_demand_one

    n = G.n
    T = tree if tree is not None else brute_extreme_sets(G)
    b = list(b)
    H = G
    mask = [sum(1 << v for v in T.members(y)) for y in range(T.size)]
    delta = all_cut_values(H)
    fam = brute_extreme_family(H)

    def d(y):
        return int(delta[mask[y]])

    def extreme(y):
        return T.is_leaf(y) or frozenset(T.members(y)) in fam

    kids = sorted((c for c in T.children[T.root] if tau - d(c) >= 2), key=lambda c: (d(c), c))
    order = [kids[0]] + kids[2:] + [kids[1]] if len(kids) >= 2 else kids
    right = {}  # X -> (a, c, Y): edge from X to its successor Y
    uses = [0] * n

    def incident(X):
        out = [(e[1], Y) for Y, e in right.items() if e[2] == X]
        if X in right:
            out.append((right[X][0], X))
        return out

    def pick(X):
        free = [v for v in T.members(X) if uses[v] == 0 and b[v] >= 1]
        if free:
            return max(free, key=lambda v: (b[v], -v))
        for p, _ in incident(X):
            if b[p] >= 2:
                return p
        raise GraphError("listed set without vacant degree")

    def link(X, Y):
        a = pick(X)
        c = pick(Y)
        right[X] = (a, c, Y)
        uses[a] += 1
        uses[c] += 1

    def unlink(X):
        a, c, _ = right.pop(X)
        uses[a] -= 1
        uses[c] -= 1

    def drop_edges(X):
        for Y in [Y for Y, e in right.items() if Y == X or e[2] == X]:
            unlink(Y)

    def repair():
        pos = {X: i for i, X in enumerate(order)}
        for X in sorted(order):
            i = pos[X]
            if i + 1 < len(order) and X not in right:
                link(X, order[i + 1])
            if i > 0 and order[i - 1] not in right:
                link(order[i - 1], X)

    def move(X, front):
        if (order[0] if front else order[-1]) == X:
            return
        drop_edges(X)
        order.remove(X)
        if front:
            order.insert(0, X)
        else:
            order.append(X)

    def order_ends():
        if len(order) < 3:
            return
        vals = sorted((d(X), X) for X in order)
        if sorted((d(order[0]), d(order[-1]))) == [vals[0][0], vals[1][0]]:
            return
        A, B = vals[0][1], vals[1][1]
        if order[0] not in (A, B):
            move(B if order[-1] == A else A, True)
        if order[-1] not in (A, B):
            move(B if order[0] == A else A, False)

    def refresh(X):
        out = []
        stack = list(reversed(T.children[X]))
        while stack:
            y = stack.pop()
            if extreme(y):
                if tau - d(y) >= 2:
                    out.append(y)
                continue
            stack.extend(reversed(T.children[y]))
        return out

    repair()
    chain = []
    while len(order) >= 2:
        new = []
        for a, c, _ in right.values():
            new.append((a, c, 1))
            b[a] -= 1
            b[c] -= 1
        chain.extend(new)
        H = augmented(H, new)
        delta = all_cut_values(H)
        fam = brute_extreme_family(H)
        drop = [X for X in order if tau - d(X) < 2 or not extreme(X)]
        for v in range(n):
            if b[v] < uses[v]:
                for Y in [Y for Y, e in right.items() if v in (e[0], e[1])]:
                    unlink(Y)
        for X in drop:
            drop_edges(X)
            i = order.index(X)
            order[i:i + 1] = refresh(X)
        if drop:
            order_ends()
        if len(order) >= 2:
            repair()
    finish = finish_demand_one(H, tau, b, general=len(order) == 1)
    return chain, finish
