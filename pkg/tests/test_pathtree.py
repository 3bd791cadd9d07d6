import random

from hypothesis import given, settings
from hypothesis import strategies as st

from extremecut.extreme import extreme_sets_tree
from extremecut.pathtree import NaivePathTree, PathTree


def random_tree(rng, n):
    parent = [-1] + [rng.randrange(i) for i in range(1, n)]
    perm = list(range(n))
    rng.shuffle(perm)
    # relabel so the root is not always node 0
    new_parent = [-1] * n
    for i, p in enumerate(parent):
        new_parent[perm[i]] = perm[p] if p >= 0 else -1
    return new_parent, perm[0]


def test_single_node():
    pt = PathTree([-1], 0, [5])
    assert pt.min_subtree(0) == 5 == pt.min_path(0, 0) == pt.value(0)
    assert pt.lca(0, 0) == 0


def test_b6_tree_labels(b6):
    T = extreme_sets_tree(b6)
    pt = PathTree.from_tree(T, T.labels)
    for y in range(T.size):
        assert pt.value(y) == T.labels[y]
    assert pt.min_subtree(T.root) == 0
    a, b = 0, 4  # leaves under different children of the root
    assert pt.lca(a, b) == T.root


def test_point_and_path_adds():
    parent = [-1, 0, 1, 2, 0]
    pt = PathTree(parent, 0, [0] * 5)
    pt.add_path(3, 3, 5)
    assert [pt.value(i) for i in range(5)] == [0, 0, 0, 5, 0]
    pt.add_path(3, 0, 1)
    assert [pt.value(i) for i in range(5)] == [1, 1, 1, 6, 0]
    M = 10**9
    pt.add_path(3, 4, M)
    assert pt.min_subtree(0) == M  # the path covers every node
    assert pt.min_path(3, 4) >= M
    pt.add_path(3, 4, -M)
    assert pt.min_path(3, 4) == 0


def _run_ops(n, ops, seed):
    rng = random.Random(seed)
    parent, root = random_tree(rng, n)
    vals = [rng.randint(-50, 50) for _ in range(n)]
    fast = PathTree(parent, root, vals)
    slow = NaivePathTree(parent, root, vals)
    for _ in range(ops):
        kind = rng.randrange(4)
        u, v = rng.randrange(n), rng.randrange(n)
        if kind == 0:
            x = rng.randint(-20, 20)
            fast.add_path(u, v, x)
            slow.add_path(u, v, x)
        elif kind == 1:
            assert fast.min_path(u, v) == slow.min_path(u, v)
        elif kind == 2:
            assert fast.min_subtree(u) == slow.min_subtree(u)
        else:
            assert fast.lca(u, v) == slow.lca(u, v)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 64), st.integers(0, 2**31))
def test_matches_naive(n, seed):
    _run_ops(n, 300, seed)


def test_matches_naive_larger_trees():
    for seed in range(5):
        _run_ops(512, 2000, seed)


def test_big_integers():
    pt = PathTree([-1, 0, 1], 0, [2**80, 2**80 + 1, 3])
    pt.add_path(0, 2, 2**90)
    assert pt.min_subtree(0) == 3 + 2**90
