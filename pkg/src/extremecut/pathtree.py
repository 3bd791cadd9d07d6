"""Static rooted tree with path add, path min, subtree min and LCA.

Heavy-path decomposition maps every path to O(log n) intervals of one array
and every subtree to a single interval; a bottom-up segment tree with lazy
addition answers interval add / interval min.
"""

from __future__ import annotations


class _MinAdd:
    """Array with interval add and interval min (half-open ranges)."""

    def __init__(self, values):
        n = max(1, len(values))
        self.n = n
        self.h = n.bit_length()
        inf = float("inf")
        t = [inf] * n + list(values) + [inf] * (n - len(values))
        for i in range(n - 1, 0, -1):
            t[i] = min(t[2 * i], t[2 * i + 1])
        self.t = t
        self.d = [0] * n

    def _apply(self, p, x):
        self.t[p] += x
        if p < self.n:
            self.d[p] += x

    def _build(self, p):
        t, d = self.t, self.d
        while p > 1:
            p >>= 1
            t[p] = min(t[2 * p], t[2 * p + 1]) + d[p]

    def _push(self, p):
        d = self.d
        for s in range(self.h, 0, -1):
            i = p >> s
            if d[i]:
                self._apply(2 * i, d[i])
                self._apply(2 * i + 1, d[i])
                d[i] = 0

    def add(self, lo, hi, x):
        n = self.n
        lo += n
        hi += n
        l0, r0 = lo, hi
        while lo < hi:
            if lo & 1:
                self._apply(lo, x)
                lo += 1
            if hi & 1:
                hi -= 1
                self._apply(hi, x)
            lo >>= 1
            hi >>= 1
        self._build(l0)
        self._build(r0 - 1)

    def min(self, lo, hi):
        n = self.n
        lo += n
        hi += n
        self._push(lo)
        self._push(hi - 1)
        t = self.t
        res = float("inf")
        while lo < hi:
            if lo & 1:
                if t[lo] < res:
                    res = t[lo]
                lo += 1
            if hi & 1:
                hi -= 1
                if t[hi] < res:
                    res = t[hi]
            lo >>= 1
            hi >>= 1
        return res


class PathTree:
    def __init__(self, parent, root, values):
        n = len(parent)
        self.parent = list(parent)
        self.root = root
        children = [[] for _ in range(n)]
        for y, p in enumerate(parent):
            if p >= 0:
                children[p].append(y)
        order = [root]
        for y in order:
            order.extend(children[y])
        size = [1] * n
        depth = [0] * n
        for y in reversed(order):
            p = parent[y]
            if p >= 0:
                size[p] += size[y]
        for y in order:
            p = parent[y]
            if p >= 0:
                depth[y] = depth[p] + 1
        heavy = [-1] * n
        for y in range(n):
            if children[y]:
                heavy[y] = max(children[y], key=size.__getitem__)
        head = [0] * n
        pos = [0] * n
        cur = 0
        stack = [root]
        head[root] = root
        while stack:
            y = stack.pop()
            # walk the heavy path starting at y
            while y >= 0:
                pos[y] = cur
                cur += 1
                for c in children[y]:
                    if c != heavy[y]:
                        head[c] = c
                        stack.append(c)
                h = heavy[y]
                if h >= 0:
                    head[h] = head[y]
                y = h
        self.size = size
        self.depth = depth
        self.head = head
        self.pos = pos
        arr = [0] * n
        for y in range(n):
            arr[pos[y]] = values[y]
        self.seg = _MinAdd(arr)

    @classmethod
    def from_tree(cls, tree, values):
        return cls(tree.parent, tree.root, values)

    def _segments(self, u, v):
        head, pos, depth, parent = self.head, self.pos, self.depth, self.parent
        while head[u] != head[v]:
            if depth[head[u]] < depth[head[v]]:
                u, v = v, u
            yield pos[head[u]], pos[u] + 1
            u = parent[head[u]]
        if depth[u] > depth[v]:
            u, v = v, u
        yield pos[u], pos[v] + 1

    def add_path(self, u, v, x):
        for lo, hi in self._segments(u, v):
            self.seg.add(lo, hi, x)

    def min_path(self, u, v):
        return min(self.seg.min(lo, hi) for lo, hi in self._segments(u, v))

    def min_subtree(self, u):
        p = self.pos[u]
        return self.seg.min(p, p + self.size[u])

    def value(self, u):
        p = self.pos[u]
        return self.seg.min(p, p + 1)

    def lca(self, u, v):
        head, depth, parent = self.head, self.depth, self.parent
        while head[u] != head[v]:
            if depth[head[u]] < depth[head[v]]:
                u, v = v, u
            u = parent[head[u]]
        return u if depth[u] < depth[v] else v


class NaivePathTree:
    """Per-node reference implementation used by the tests."""

    def __init__(self, parent, root, values):
        self.parent = list(parent)
        self.root = root
        self.values = list(values)
        n = len(parent)
        children = [[] for _ in range(n)]
        for y, p in enumerate(parent):
            if p >= 0:
                children[p].append(y)
        self.children = children

    def _ancestors(self, u):
        out = [u]
        while self.parent[u] >= 0:
            u = self.parent[u]
            out.append(u)
        return out

    def lca(self, u, v):
        au = set(self._ancestors(u))
        for x in self._ancestors(v):
            if x in au:
                return x
        raise ValueError("nodes in different trees")

    def path(self, u, v):
        a = self.lca(u, v)
        out = []
        for x in (u, v):
            while x != a:
                out.append(x)
                x = self.parent[x]
        out.append(a)
        return out

    def add_path(self, u, v, x):
        for y in self.path(u, v):
            self.values[y] += x

    def min_path(self, u, v):
        return min(self.values[y] for y in self.path(u, v))

    def min_subtree(self, u):
        best = self.values[u]
        stack = list(self.children[u])
        while stack:
            y = stack.pop()
            best = min(best, self.values[y])
            stack.extend(self.children[y])
        return best

    def value(self, u):
        return self.values[u]
