"""Second-opinion checks for the oracle layer: every routine here is compared
against a deliberately dumb independent implementation on small instances."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from pentaseven.catalog import pattern
from pentaseven.core import Graph, bits_of
from pentaseven.oracle import (
    all_hole_lengths,
    chromatic_number_bf,
    clique_cutset_bf,
    find_induced,
    max_clique_mask,
)

from conftest import random_graphs


def holes_by_subset_scan(g):
    """Induced cycles = connected 2-regular induced subgraphs."""
    out = set()
    for mask in range(1, 1 << g.n):
        size = mask.bit_count()
        if size < 4:
            continue
        if any(
            (g.row(v) & mask).bit_count() != 2 for v in bits_of(mask)
        ):
            continue
        start = mask & -mask
        reach = start
        frontier = start
        while frontier:
            v = frontier & -frontier
            frontier ^= v
            new = g.row(v.bit_length() - 1) & mask & ~reach
            reach |= new
            frontier |= new
        if reach == mask:
            out.add(size)
    return out


@given(random_graphs(max_n=11))
@settings(max_examples=60, deadline=None)
def test_hole_lengths_vs_subset_scan(g):
    assert all_hole_lengths(g) == holes_by_subset_scan(g)


def embeds_by_permutation(g, h):
    p = h.graph
    if p.n > g.n:
        return False
    for image in itertools.permutations(range(g.n), p.n):
        if all(
            g.has_edge(image[u], image[v]) == p.has_edge(u, v)
            for u in range(p.n)
            for v in range(u + 1, p.n)
        ):
            return True
    return False


@given(random_graphs(max_n=7))
@settings(max_examples=40, deadline=None)
def test_find_induced_vs_permutation_scan(g):
    for name in ("P3", "C4", "4K1", "2P3"):
        got = find_induced(g, pattern(name))
        assert (got is not None) == embeds_by_permutation(g, pattern(name))
        if got is not None:
            assert got.is_valid(g)


def chi_by_exhaustion(g):
    for k in range(1, g.n + 1):
        for assignment in itertools.product(range(k), repeat=g.n):
            if all(assignment[u] != assignment[v] for u, v in g.edges()):
                return k
    raise AssertionError("unreachable")


@given(random_graphs(max_n=7))
@settings(max_examples=30, deadline=None)
def test_chromatic_vs_exhaustion(g):
    assert chromatic_number_bf(g)[0] == chi_by_exhaustion(g)


def clique_cutset_by_subset_scan(g):
    from pentaseven.core import components, induced_subgraph, is_clique

    for mask in range(1 << g.n):
        members = set(bits_of(mask))
        if len(members) >= g.n or not is_clique(g, members):
            continue
        rest = set(range(g.n)) - members
        sub, _ = induced_subgraph(g, rest)
        if len(components(sub)) >= 2:
            return True
    return False


@given(random_graphs(max_n=9, min_n=2))
@settings(max_examples=40, deadline=None)
def test_clique_cutset_vs_subset_scan(g):
    assert (clique_cutset_bf(g) is not None) == clique_cutset_by_subset_scan(g)


@given(random_graphs(max_n=10))
@settings(max_examples=40, deadline=None)
def test_max_clique_vs_subset_scan(g):
    best = max(
        (mask.bit_count() for mask in range(1 << g.n)
         if all(
             (g.row(v) & mask & ~(1 << v)).bit_count() == mask.bit_count() - 1
             for v in bits_of(mask)
         )),
        default=0,
    )
    assert max_clique_mask(g).bit_count() == best


def test_lp_bound_vs_scipy_if_available():
    scipy_opt = pytest.importorskip("scipy.optimize")
    from fractions import Fraction

    from pentaseven.color import _all_maximal_indep, _lp_cover

    rng = np.random.default_rng(7)
    for trial in range(25):
        n = int(rng.integers(2, 10))
        p = rng.uniform(0.2, 0.8)
        adj = np.triu(rng.random((n, n)) < p, 1)
        g = Graph(adj | adj.T)
        weights = tuple(int(rng.integers(1, 20)) for _ in range(n))
        full = g.full_mask
        co_rows = [full & ~g.closed_row(v) for v in range(n)]
        sets = _all_maximal_indep(co_rows, full)
        value, y, x = _lp_cover(sets, weights)
        # independent solve of the primal: min 1.x, A x >= w, x >= 0
        a_ub = np.zeros((n, len(sets)))
        for j, smask in enumerate(sets):
            for v in bits_of(smask):
                a_ub[v, j] = -1.0
        res = scipy_opt.linprog(
            c=np.ones(len(sets)), A_ub=a_ub, b_ub=-np.asarray(weights, float),
            bounds=(0, None), method="highs",
        )
        assert res.status == 0
        assert abs(float(value) - res.fun) < 1e-7, (trial, value, res.fun)
        # the dual vector must be feasible, making w.y a valid bound
        for smask in sets:
            assert sum(y[v] for v in bits_of(smask)) <= Fraction(1)
        assert all(yv >= 0 for yv in y)
