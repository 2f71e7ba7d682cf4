import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pentaseven.catalog import is_isomorphic_small, pattern
from pentaseven.core import (
    Graph,
    build_graph,
    induced_subgraph,
    is_simplicial,
    simplicial_vertices,
    universal_vertices,
)
from pentaseven.decompose import (
    expand_thickening,
    is_thickening_of,
    simplicial_prefix,
    strip_universals,
    twin_classes,
)

from conftest import random_graphs


def complete(k):
    return build_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


class TestSimplicialPrefix:
    def test_tree_fully_eliminated(self):
        tree = build_graph(7, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)])
        pre = simplicial_prefix(tree)
        assert not pre.remainder and len(pre.order) == 7

    def test_c7_stalls_immediately(self):
        pre = simplicial_prefix(pattern("C7").graph)
        assert pre.order == () and len(pre.remainder) == 7

    def test_tent_prefix_consumes_y_and_z(self):
        from pentaseven.generate import GenParams, gen_tent

        for seed in range(30):
            g, part = gen_tent(
                GenParams(seed=seed, p_nonempty=1.0, z_components=(1, 2))
            )
            if not part.y:
                continue
            pre = simplicial_prefix(g)
            assert set(pre.order) == set(part.y | part.z)
            return
        raise AssertionError("no tent with nonempty Y generated")

    def test_maximality(self):
        g = pattern("T1").graph
        pre = simplicial_prefix(g)
        sub, old_to_new = (
            induced_subgraph(g, pre.remainder) if pre.remainder else (None, None)
        )
        if sub is not None:
            assert not simplicial_vertices(sub)

    def test_order_is_valid_elimination(self):
        from pentaseven.generate import GenParams, gen_saucer

        g, _ = gen_saucer(GenParams(seed=5, max_class_size=3, a_components=(1, 3)))
        pre = simplicial_prefix(g)
        alive = set(range(g.n))
        for v in pre.order:
            sub, old_to_new = induced_subgraph(g, alive)
            assert is_simplicial(sub, old_to_new[v])
            alive.discard(v)


class TestTwinClasses:
    def test_k5_single_class(self):
        dec = twin_classes(complete(5))
        assert len(dec.classes) == 1 and dec.quotient.n == 1

    def test_c7_all_singletons(self):
        dec = twin_classes(pattern("C7").graph)
        assert len(dec.classes) == 7
        assert is_isomorphic_small(dec.quotient, pattern("C7").graph) is not None

    def test_thickened_t0_recovers_t0(self):
        t0 = pattern("T0").graph
        sizes = [2, 1, 1, 1, 1, 1, 1, 1, 1]
        big, classmap = expand_thickening(t0, sizes)
        dec = twin_classes(big)
        assert is_isomorphic_small(dec.quotient, t0) is not None
        assert sorted(map(len, dec.classes)) == sorted(sizes)


class TestExpandThickening:
    def test_unit_sizes_identity(self):
        t1 = pattern("T1").graph
        big, classmap = expand_thickening(t1, [1] * t1.n)
        assert big == t1

    def test_k2_blows_to_k5(self):
        big, _ = expand_thickening(build_graph(2, [(0, 1)]), [2, 3])
        assert big == complete(5)

    def test_zero_size_rejected(self):
        import pytest

        with pytest.raises(ValueError):
            expand_thickening(build_graph(2, [(0, 1)]), [1, 0])

    def test_classmap_witnesses_thickening(self):
        g = pattern("3-pentagon").graph
        big, classmap = expand_thickening(g, [1, 2, 3, 1, 2, 1, 1])
        assert is_thickening_of(big, classmap, g)


class TestStripUniversals:
    def test_complete_graph_flagged(self):
        w, rest, ids = strip_universals(complete(4))
        assert len(w) == 4 and rest is None

    def test_apex_over_c7(self):
        c7 = pattern("C7").graph
        adj = np.zeros((8, 8), dtype=bool)
        adj[:7, :7] = c7.adj
        adj[7, :7] = adj[:7, 7] = True
        g = Graph(adj)
        w, rest, ids = strip_universals(g)
        assert w == {7} and rest == c7 and ids == tuple(range(7))

    def test_t0_has_none(self):
        w, rest, _ = strip_universals(pattern("T0").graph)
        assert not w and rest == pattern("T0").graph


@given(random_graphs(max_n=8), st.data())
@settings(max_examples=50, deadline=None)
def test_thickening_roundtrip_and_props(g, data):
    from pentaseven.catalog import has_twins

    sizes = [data.draw(st.integers(1, 3)) for _ in range(g.n)]
    big, classmap = expand_thickening(g, sizes)
    assert is_thickening_of(big, classmap, g)
    # simplicial and universal presence transfer both ways
    assert bool(simplicial_vertices(big)) == bool(simplicial_vertices(g))
    assert bool(universal_vertices(big)) == bool(universal_vertices(g))
    if not has_twins(g):
        dec = twin_classes(big)
        assert is_isomorphic_small(dec.quotient, g) is not None


@given(random_graphs(max_n=10, min_n=2), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_adding_universals_preserves_simplicial_presence(g, k):
    n = g.n + k
    adj = np.zeros((n, n), dtype=bool)
    adj[: g.n, : g.n] = g.adj
    adj[g.n :, :] = True
    adj[:, g.n :] = True
    np.fill_diagonal(adj, False)
    joined = Graph(adj)
    w, rest, _ = strip_universals(joined)
    assert bool(simplicial_vertices(joined)) == bool(simplicial_vertices(g))
    if not universal_vertices(g):
        assert w == set(range(g.n, n))
        assert rest == g


def test_prefix_remainder_stable_under_relabeling():
    # experiment, not an asserted invariant: run the elimination under a
    # permuted vertex order (a different tie-break) and compare remainders
    from pentaseven.generate import GenParams, gen_saucer, gen_tent, mutate

    agree = total = 0
    for seed in range(30):
        params = GenParams(seed=seed, max_class_size=2, a_components=(0, 2),
                           z_components=(0, 2))
        for gen in (gen_saucer, gen_tent):
            g, _ = gen(params)
            g = mutate(g, seed)
            rng = np.random.default_rng(seed)
            perm = rng.permutation(g.n)
            relabeled = build_graph(
                g.n, [(int(perm[u]), int(perm[v])) for u, v in g.edges()]
            )
            r1 = simplicial_prefix(g).remainder
            r2 = simplicial_prefix(relabeled).remainder
            total += 1
            if {int(perm[v]) for v in r1} == set(r2):
                agree += 1
    print(f"\nprefix remainder order-independence: {agree}/{total} agree")
