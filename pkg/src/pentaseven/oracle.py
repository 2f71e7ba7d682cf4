"""Brute-force ground truth at desk scale.

Everything here is exact and exhaustively verified, never heuristic: induced
subgraph search, hole-length enumeration, chromatic number, clique-cutsets,
and the class-membership verdict the rest of the test suite is anchored to.
Size caps are enforced, not advisory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .catalog import NamedGraph, pattern
from .core import Graph, bits_of, is_connected

PATTERN_CAP = 10
HOLE_CAP = 16
CHROMATIC_CAP = 18
CUTSET_CAP = 18
VERDICT_CAP = 20


@dataclass(frozen=True)
class Embedding:
    """Injective pattern->host map preserving adjacency and non-adjacency."""

    pattern: NamedGraph
    image: dict[int, int]

    def is_valid(self, host: Graph) -> bool:
        img = self.image
        p = self.pattern.graph
        if len(set(img.values())) != p.n or set(img) != set(range(p.n)):
            return False
        return all(
            host.has_edge(img[u], img[v]) == p.has_edge(u, v)
            for u in range(p.n)
            for v in range(u + 1, p.n)
        )


def _pattern_order(p: Graph) -> list[int]:
    # connected extension order, highest degree first, so adjacency
    # constraints bite as early as possible
    order: list[int] = []
    placed = 0
    remaining = set(range(p.n))
    while remaining:
        touching = [v for v in remaining if p.row(v) & placed]
        pool = touching or list(remaining)
        v = max(pool, key=lambda u: (p.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_induced(g: Graph, h: NamedGraph) -> Embedding | None:
    """Exhaustive search for an induced copy of h in g."""
    p = h.graph
    if p.n > PATTERN_CAP:
        raise ValueError(f"pattern {h.name} exceeds the {PATTERN_CAP}-vertex cap")
    if p.n > g.n:
        return None
    order = _pattern_order(p)
    g_rows = g.rows
    g_closed = [g.closed_row(v) for v in range(g.n)]
    full = g.full_mask
    degs_ok = [0] * (p.n + 1)
    for d in range(p.n + 1):
        m = 0
        for v in range(g.n):
            if g.degree(v) >= d:
                m |= 1 << v
        degs_ok[d] = m

    image = [-1] * p.n

    def extend(k: int, cands: list[int], used: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        pool = cands[k] & ~used
        while pool:
            low = pool & -pool
            pool ^= low
            x = low.bit_length() - 1
            image[v] = x
            new_cands = list(cands)
            ok = True
            for j in range(k + 1, len(order)):
                w = order[j]
                if p.has_edge(w, v):
                    new_cands[j] &= g_rows[x]
                else:
                    new_cands[j] &= ~g_closed[x]
                if not new_cands[j] & ~(used | low):
                    ok = False
                    break
            if ok and extend(k + 1, new_cands, used | low):
                return True
        image[order[k]] = -1
        return False

    init = [degs_ok[p.degree(v)] & full for v in order]
    if extend(0, init, 0):
        return Embedding(h, {v: image[v] for v in range(p.n)})
    return None


def all_hole_lengths(g: Graph) -> set[int]:
    """Exact set of induced-cycle lengths >= 4."""
    if g.n > HOLE_CAP:
        raise ValueError(f"hole enumeration capped at {HOLE_CAP} vertices")
    rows = g.rows
    lengths: set[int] = set()
    for s in range(g.n):
        higher = ~((1 << (s + 1)) - 1)
        s_row = rows[s]

        # path = s, v1, ..., vk with all vi > s; a vertex adjacent to s may
        # only close the cycle, and interior chords are excluded by blocking
        # the neighborhoods of interior vertices
        def grow(path: list[int], blocked: int):
            last = path[-1]
            ext = rows[last] & higher & ~blocked
            for w in bits_of(ext):
                if s_row >> w & 1:
                    if len(path) >= 3 and path[1] < w:
                        lengths.add(len(path) + 1)
                    continue
                grow(path + [w], blocked | rows[last] | (1 << w))

        for v1 in bits_of(s_row & higher):
            grow([s, v1], (1 << s) | (1 << v1))
    return lengths


def max_clique_mask(g: Graph) -> int:
    """Exact maximum clique, as a bitmask."""
    rows = g.rows
    best = 0
    best_size = 0

    def expand(cur: int, size: int, cand: int):
        nonlocal best, best_size
        if size + cand.bit_count() <= best_size:
            return
        if not cand:
            if size > best_size:
                best, best_size = cur, size
            return
        pool = cand
        while pool:
            low = pool & -pool
            v = low.bit_length() - 1
            if size + pool.bit_count() <= best_size:
                return
            expand(cur | low, size + 1, cand & rows[v] & ~((low << 1) - 1))
            pool ^= low

    expand(0, 0, g.full_mask)
    return best


def _greedy_coloring(g: Graph, order: list[int]) -> dict[int, int]:
    color: dict[int, int] = {}
    for v in order:
        used = {color[u] for u in color if g.has_edge(u, v)}
        c = 1
        while c in used:
            c += 1
        color[v] = c
    return color


def chromatic_number_bf(g: Graph) -> tuple[int, dict[int, int]]:
    """Exact chromatic number with a witness coloring."""
    if g.n > CHROMATIC_CAP:
        raise ValueError(f"chromatic number capped at {CHROMATIC_CAP} vertices")
    clique = max_clique_mask(g)
    lb = clique.bit_count()
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    witness = _greedy_coloring(g, order)
    ub = max(witness.values())
    if lb == ub:
        return lb, witness

    rows = g.rows

    def try_k(k: int) -> dict[int, int] | None:
        colors = [0] * g.n
        for i, v in enumerate(bits_of(clique)):
            colors[v] = i + 1
        uncolored = [v for v in range(g.n) if colors[v] == 0]

        def feasible(vs: list[int], max_used: int) -> bool:
            if not vs:
                return True
            # most-constrained vertex first
            def avail(v):
                used = {colors[u] for u in bits_of(rows[v]) if colors[u]}
                return [c for c in range(1, min(k, max_used + 1) + 1) if c not in used]

            v = min(vs, key=lambda u: len(avail(u)))
            rest = [u for u in vs if u != v]
            for c in avail(v):
                colors[v] = c
                if feasible(rest, max(max_used, c)):
                    return True
            colors[v] = 0
            return False

        if feasible(uncolored, lb):
            return {v: colors[v] for v in range(g.n)}
        return None

    for k in range(lb, ub):
        got = try_k(k)
        if got is not None:
            return k, got
    return ub, witness


def _all_clique_masks(g: Graph) -> list[int]:
    rows = g.rows
    out: list[int] = []

    def grow(cur: int, cand: int):
        pool = cand
        while pool:
            low = pool & -pool
            pool ^= low
            v = low.bit_length() - 1
            nxt = cur | low
            out.append(nxt)
            grow(nxt, cand & rows[v] & ~((low << 1) - 1))

    grow(0, g.full_mask)
    return out


def clique_cutset_bf(g: Graph) -> frozenset[int] | None:
    """Some clique whose removal disconnects g, or None.

    Returns the empty set when g is already disconnected.
    """
    if g.n > CUTSET_CAP:
        raise ValueError(f"clique-cutset search capped at {CUTSET_CAP} vertices")
    if not is_connected(g):
        return frozenset()
    if g.n <= 2:
        return None
    masks = _all_clique_masks(g)
    nbr = np.asarray(g.rows, dtype=np.uint64)
    full = np.uint64(g.full_mask)
    chunk = 8192
    for lo in range(0, len(masks), chunk):
        removed = np.asarray(masks[lo : lo + chunk], dtype=np.uint64)
        hits = _kernels.disconnected_after_removal(nbr, removed, full)
        idx = np.flatnonzero(hits)
        if idx.size:
            return bits_of(masks[lo + int(idx[0])])
    return None


@dataclass(frozen=True)
class ClassVerdict:
    """Exact membership flags for the target class, with witnesses."""

    is_2p3_free: bool
    is_c4_free: bool
    is_c6_free: bool
    is_c7_free: bool
    has_t0: bool
    witnesses: dict[str, Embedding]

    @property
    def has_c7(self) -> bool:
        return not self.is_c7_free

    @property
    def in_class(self) -> bool:
        return (
            self.is_2p3_free
            and self.is_c4_free
            and self.is_c6_free
            and (self.has_c7 or self.has_t0)
        )


def class_verdict(g: Graph) -> ClassVerdict:
    if g.n > VERDICT_CAP:
        raise ValueError(f"class verdict capped at {VERDICT_CAP} vertices")
    witnesses: dict[str, Embedding] = {}
    flags = {}
    for name in ("2P3", "C4", "C6", "C7", "T0"):
        emb = find_induced(g, pattern(name))
        flags[name] = emb is None
        if emb is not None:
            witnesses[name] = emb
    return ClassVerdict(
        is_2p3_free=flags["2P3"],
        is_c4_free=flags["C4"],
        is_c6_free=flags["C6"],
        is_c7_free=flags["C7"],
        has_t0=not flags["T0"],
        witnesses=witnesses,
    )


def is_free_of(g: Graph, *names: str) -> bool:
    """True iff g contains no induced copy of any named pattern."""
    return all(find_induced(g, pattern(nm)) is None for nm in names)
