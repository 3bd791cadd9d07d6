import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extremecut.deca import (
    ChainState,
    TightDegrees,
    _merge,
    expected_optimum,
    external_augmentation,
    finish_demand_one,
    literal_accepts,
    parity_fix,
    solve_deca,
    split_off,
)
from extremecut.extreme import extreme_sets_tree
from extremecut.flow import connectivity, global_min_cut
from extremecut.graph import GraphError, build_graph
from extremecut.oracles import (
    Infeasible,
    augmented,
    brute_extreme_family,
    exhaustive_deca_optimum,
    slow_chain_solver,
    verify_solution,
)

from conftest import graphs, random_small_graph

INF = None


def _tight(G, tau, beta):
    T = extreme_sets_tree(G)
    return T, parity_fix(external_augmentation(G, tau, beta, T), beta)


# --- external augmentation and parity ------------------------------------------

def test_external_b6(b6):
    T = extreme_sets_tree(b6)
    r = external_augmentation(b6, 3, [INF] * 6, T)
    assert r.b == [1, 1, 0, 0, 1, 1] and r.w_total == 4
    r = external_augmentation(b6, 2, [INF] * 6, T)
    assert r.b == [1, 0, 0, 1, 0, 0] and r.w_total == 2
    assert external_augmentation(b6, 1, [INF] * 6, T).w_total == 0
    with pytest.raises(Infeasible):
        external_augmentation(b6, 2, [0] * 6, T)


def test_parity_rules():
    even = TightDegrees([1, 1, 2, 0], 4)
    assert parity_fix(even, [INF] * 4).b == [1, 1, 2, 0]
    odd = TightDegrees([1, 2, 0], 3)
    assert parity_fix(odd, [1, 5, 0]).b == [1, 3, 0]
    with pytest.raises(Infeasible):
        parity_fix(odd, [1, 2, 0])


# --- solver examples ---------------------------------------------------------

def test_solve_b6_tau3(b6):
    sol = solve_deca(b6, 3)
    assert sol.F == [(0, 4, 1), (1, 5, 1)]
    assert _merge(sol.audit["chain"]) == [(0, 4, 1)]
    assert sol.audit["finish"] == [(1, 5, 1)]
    assert global_min_cut(augmented(b6, sol.F))[0] == 3


def test_solve_b6_tau2(b6):
    sol = solve_deca(b6, 2)
    assert sol.total_weight == 1
    (u, v, w), = sol.F
    assert (u in {0, 1, 2}) != (v in {0, 1, 2})


def test_solve_trivial(b6, triangle):
    assert solve_deca(b6, 1).F == []
    assert solve_deca(triangle, 2).F == []
    assert solve_deca(b6, 0).F == []
    assert solve_deca(build_graph(1, []), 5).F == []


def test_beta_length_checked(b6):
    with pytest.raises(GraphError):
        solve_deca(b6, 3, [INF] * 5)


def test_tau_one_connects_components():
    G = build_graph(4, [])
    sol = solve_deca(G, 1)
    assert sol.total_weight == 3 == exhaustive_deca_optimum(G, 1, [INF] * 4)
    assert global_min_cut(augmented(G, sol.F))[0] == 1
    # ceil(w/2) = 2 would be too small here
    assert expected_optimum(G, 1, [INF] * 4) == 3
    with pytest.raises(Infeasible):
        solve_deca(build_graph(3, []), 1, [1, 1, 0])
    with pytest.raises(Infeasible):
        solve_deca(build_graph(4, []), 1, [1, 1, 1, 1])


def test_printed_t2_rule_can_overshoot():
    # kept as a regression: stopping one batch late leaves a cut of 2
    G = build_graph(5, [(0, 1, 3), (1, 2, 1), (1, 4, 1), (3, 4, 1)])
    beta = [0, 2, 3, 4, 2]
    good = solve_deca(G, 3, beta)
    assert verify_solution(G, 3, beta, good.F).passed
    bad = solve_deca(G, 3, beta, t2_rule="printed")
    assert global_min_cut(augmented(G, bad.F))[0] < 3


# --- chain phase on the fixture ------------------------------------------------

def _b6_state(b6):
    T, tight = _tight(b6, 3, [INF] * 6)
    return T, ChainState(b6, 3, tight.b, T)


def test_chain_fixture_step(b6):
    T, st_ = _b6_state(b6)
    st_._start()
    listed = [frozenset(T.members(X)) for X in st_.listed()]
    assert sorted(map(sorted, listed)) == [[0, 1, 2], [3, 4, 5]]
    assert st_.r == 2
    e, = st_.right.values()
    assert {e.a, e.c} == {0, 4}
    step, cases = st_.compute_t()
    assert step == 1 and {"vertex", "extreme"} <= set(cases)
    printed = ChainState(b6, 3, st_.b0, T, t2_rule="printed")
    printed._start()
    assert printed.compute_t() == (1, ["extreme", "vertex"])


def test_t3_query_fixture_and_round_trip(b6):
    T, st_ = _b6_state(b6)
    st_._start()
    X1 = next(X for X in st_.listed() if 0 in T.members(X))
    before = [st_.pt.value(y) for y in range(T.size)]
    assert st_.t3_query(X1) == 1
    assert st_.t3_query(X1) == 1
    assert [st_.pt.value(y) for y in range(T.size)] == before


def test_chain_fixture_run(b6):
    T, st_ = _b6_state(b6)
    F = st_.run()
    assert _merge(F) == [(0, 4, 1)]
    assert st_.listed() == [] and st_.degenerate == 0


def test_t1_contribution_with_two_edges():
    # three isolated vertices; the middle one of the list carries two edges
    G = build_graph(3, [])
    T = extreme_sets_tree(G)
    st_ = ChainState(G, 6, [6, 6, 5], T)
    st_._start()
    assert st_.listed() == [0, 2, 1]
    assert st_.dF[2] == 2
    assert st_.compute_t() == (2, ["vertex"])  # floor(5 / 2)


def test_refresh_splices_nested_sets():
    # two dense triangles inside a block that is itself weakly attached
    E = [(0, 1, 3), (0, 2, 3), (1, 2, 3), (3, 4, 3), (3, 5, 3), (4, 5, 3), (2, 3, 1), (5, 6, 1)]
    G = build_graph(7, E)
    tau = 8
    T, tight = _tight(G, tau, [INF] * 7)
    seen = []
    st_ = ChainState(G, tau, tight.b, T, on_batch=lambda s: seen.append([frozenset(T.members(X)) for X in s.listed()]))
    st_.run()
    flat = set().union(*map(set, seen))
    assert frozenset({0, 1, 2}) in flat and frozenset({3, 4, 5}) in flat
    slow, _ = slow_chain_solver(G, tau, tight.b, T)
    assert _merge(slow) == _merge(st_.F)


# --- finishing step -------------------------------------------------------------

def test_finish_b6(b6):
    H = augmented(b6, [(0, 4, 1)])
    F = finish_demand_one(H, 3, [0, 1, 0, 0, 0, 1])
    assert F == [(1, 5, 1)]
    assert finish_demand_one(H, 3, [0] * 6) == []


def test_finish_four_cycle():
    C4 = build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
    b = [1, 1, 1, 1]
    assert literal_accepts(C4, 3, b, 0, 2)
    assert not literal_accepts(C4, 3, b, 0, 1)
    for general in (False, True):
        F = finish_demand_one(C4, 3, b, general=general)
        assert sorted(F) == [(0, 2, 1), (1, 3, 1)]


# --- splitting off -----------------------------------------------------------

def test_split_path():
    G = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    assert split_off(G, 1) == [(0, 2, 1)]


def test_split_forced_pairing():
    G = build_graph(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)])
    assert split_off(G, 1) == [(0, 2, 2)]


def test_split_odd_degree(b6):
    with pytest.raises(GraphError):
        split_off(b6, 2)


def test_split_keeps_steiner_connectivity(rng):
    done = 0
    while done < 40:
        n = rng.randint(3, 9)
        G = random_small_graph(rng, n, connected=False)
        s = rng.randrange(n)
        if G.degree(s) % 2:
            continue
        done += 1
        F = split_off(G, s, seed=done)
        others = [v for v in range(n) if v != s]
        H = build_graph(n, [e for e in G.edges if s not in e[:2]] + F)
        pairs = list(itertools.combinations(others, 2))
        assert min(connectivity(G, *p) for p in pairs) == min(connectivity(H, *p) for p in pairs)
        used = [0] * n
        for u, v, w in F:
            used[u] += w
            used[v] += w
        assert all(used[v] <= G.weight_between(s, v) for v in others)


# --- properties -----------------------------------------------------------------

betas = st.sampled_from([0, 1, 2, INF])


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2, max_n=6, max_w=3, max_extra=9), st.integers(0, 4), st.data())
def test_optimal_against_exhaustive(G, tau, data):
    beta = data.draw(st.lists(betas, min_size=G.n, max_size=G.n))
    try:
        opt = exhaustive_deca_optimum(G, tau, beta)
    except Infeasible:
        with pytest.raises(Infeasible):
            solve_deca(G, tau, beta)
        return
    sol = solve_deca(G, tau, beta)
    assert sol.total_weight == opt
    assert verify_solution(G, tau, beta, sol.F).passed


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=9, max_w=3, connected=True), st.integers(2, 9), st.data())
def test_lazy_state_and_partial_solution(G, tau, data):
    beta = data.draw(st.lists(st.sampled_from([INF, 1, 2, 3, 5]), min_size=G.n, max_size=G.n))
    T = extreme_sets_tree(G)
    try:
        tight = parity_fix(external_augmentation(G, tau, beta, T), beta)
    except Infeasible:
        return
    fam0 = brute_extreme_family(G)

    def check(s):
        assert s.reconstruct() == s.recompute()
        fam = brute_extreme_family(augmented(G, s.all_edges()))
        assert fam <= fam0
        for S in fam:
            if len(S) < G.n:
                assert not any(u in S and v in S for u, v, _ in s.all_edges())

    s = ChainState(G, tau, tight.b, T, on_batch=check)
    s.run()
    assert s.degenerate == 0
    slow, fin = slow_chain_solver(G, tau, tight.b, T)
    assert _merge(slow) == _merge(s.F)
    assert verify_solution(G, tau, beta, slow + fin).min_cut_after >= tau


def test_medium_instances_verify():
    rng = random.Random(99)
    for i in range(12):
        n = rng.randint(20, 80)
        G = random_small_graph(rng, n, wmax=4, density=2.5)
        lam = global_min_cut(G)[0]
        tau = lam + rng.randint(1, 6)
        beta = [rng.choice([INF, tau, 2 * tau]) for _ in range(n)]
        sol = solve_deca(G, tau, beta, seed=i, backend="accelerated")
        rep = verify_solution(G, tau, beta, sol.F, seed=i)
        assert rep.passed, rep.as_dict()
