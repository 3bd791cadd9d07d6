"""Rooted laminar trees whose leaves are graph vertices."""

from __future__ import annotations


class LaminarTree:
    """Tree with leaves 0..n-1 (the vertices) and internal nodes n, n+1, ...

    ``parent[root] == -1``.  Internal node ``y`` stands for the set of
    leaves below it.  ``labels`` optionally holds delta(V(y)) per node.
    """

    def __init__(self, n_leaves, parent, root, labels=None):
        self.n_leaves = n_leaves
        self.parent = list(parent)
        self.root = root
        self.labels = labels
        self._children = None
        self._members = None

    @property
    def size(self):
        return len(self.parent)

    @property
    def children(self):
        if self._children is None:
            ch = [[] for _ in self.parent]
            for y, p in enumerate(self.parent):
                if p >= 0:
                    ch[p].append(y)
            self._children = ch
        return self._children

    def is_leaf(self, y):
        return y < self.n_leaves

    def postorder(self):
        out = []
        stack = [(self.root, False)]
        ch = self.children
        while stack:
            y, done = stack.pop()
            if done:
                out.append(y)
                continue
            stack.append((y, True))
            for c in reversed(ch[y]):
                stack.append((c, False))
        return out

    def members(self, y):
        if self._members is None:
            mem = [None] * self.size
            for z in self.postorder():
                if self.is_leaf(z):
                    mem[z] = (z,)
                else:
                    mem[z] = tuple(sorted(v for c in self.children[z] for v in mem[c]))
            self._members = mem
        return self._members[y]

    def sets(self):
        """Family of non-root node sets (leaves included) as frozensets."""
        return {frozenset(self.members(y)) for y in range(self.size) if y != self.root}

    def internal_sets(self):
        return {
            frozenset(self.members(y))
            for y in range(self.n_leaves, self.size)
            if y != self.root
        }

    def depth(self):
        d = [0] * self.size
        best = 0
        for y in reversed(self.postorder()):
            p = self.parent[y]
            if p >= 0:
                d[y] = d[p] + 1
                best = max(best, d[y])
        return best

    def __repr__(self):
        return f"LaminarTree(leaves={self.n_leaves}, nodes={self.size})"


def tree_from_sets(n, sets, labels_fn=None):
    """Laminar tree from a family of sets over 0..n-1.

    Singletons and the full set are implied (leaves and root) and ignored if
    present.  Sets are attached largest first: the parent of a set is the
    smallest set seen so far that owns its elements.
    """
    fam = sorted({frozenset(s) for s in sets if 1 < len(s) < n}, key=len, reverse=True)
    k = len(fam)
    root = n + k
    parent = [-1] * (root + 1)
    owner = [root] * n
    for i, s in enumerate(fam):
        node = n + i
        parent[node] = owner[next(iter(s))]
        for v in s:
            owner[v] = node
    for v in range(n):
        parent[v] = owner[v]
    if n == 0:
        parent, root = [-1], 0
    t = LaminarTree(n, parent, root)
    if labels_fn is not None:
        t.labels = [labels_fn(t, y) for y in range(t.size)]
    return t


def same_family(a, b):
    return a.n_leaves == b.n_leaves and a.sets() == b.sets()
