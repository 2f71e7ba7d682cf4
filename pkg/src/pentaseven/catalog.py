"""The fixed small graphs of the toolkit, with their standard vertex labels.

Holds the forbidden patterns (2P3, C4, C6, C7, P7, 4K1), the 9-vertex block
T0 and its one-vertex extension T1, the 3-pentagon, and the base family M:
the twelve-vertex graph M0 stripped of any subset of its five optional
vertices, plus the three sporadic bases M1, M2, M3.  Thickenings of family
members (optionally under extra universal vertices) are exactly the graphs
the recognizer accepts on the 7-hole side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations

from .core import Graph, build_graph, induced_subgraph

ISO_SIZE_CAP = 16
MATCH_SIZE_CAP = 12

M0_OPTIONAL = ("y0", "y3", "z0", "z3", "z4")


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph
    labels: dict[int, str]  # vertex -> label, bijective

    @property
    def by_label(self) -> dict[str, int]:
        return {lab: v for v, lab in self.labels.items()}

    def __repr__(self) -> str:
        return f"NamedGraph({self.name!r}, n={self.graph.n})"


def _named(name: str, labels: list[str], edges: list[tuple[str, str]]) -> NamedGraph:
    index = {lab: i for i, lab in enumerate(labels)}
    g = build_graph(len(labels), [(index[a], index[b]) for a, b in edges])
    return NamedGraph(name, g, {i: lab for lab, i in index.items()})


def _cycle(name: str, k: int) -> NamedGraph:
    labels = [f"x{i}" for i in range(k)]
    return _named(name, labels, [(f"x{i}", f"x{(i + 1) % k}") for i in range(k)])


def _path(name: str, k: int) -> NamedGraph:
    labels = [f"v{i}" for i in range(k)]
    return _named(name, labels, [(f"v{i}", f"v{i + 1}") for i in range(k - 1)])


def _t0_edges() -> list[tuple[str, str]]:
    return [
        ("a0", "a1"),
        ("a0", "b0"), ("a0", "b2"), ("a0", "b3"),
        ("a1", "b1"), ("a1", "b2"), ("a1", "b3"),
        ("c1", "c2"), ("c1", "c3"), ("c2", "c3"),
        ("b0", "c1"), ("b1", "c1"), ("b2", "c2"), ("b3", "c3"),
    ]


@cache
def fixed_graphs() -> dict[str, NamedGraph]:
    """The named pattern graphs: C4, C6, C7, P7, 2P3, 4K1, P3, 3-pentagon, T0, T1."""
    t0_labels = ["a0", "a1", "b0", "b1", "b2", "b3", "c1", "c2", "c3"]
    t1_labels = t0_labels + ["f3"]
    t1_edges = _t0_edges() + [
        ("f3", x) for x in ("a0", "a1", "b0", "b1", "b2", "c1", "c2")
    ]
    pent_labels = ["t", "b1", "b2", "b3", "c1", "c2", "c3"]
    pent_edges = (
        [("t", f"b{i}") for i in (1, 2, 3)]
        + [(f"b{i}", f"c{i}") for i in (1, 2, 3)]
        + [("c1", "c2"), ("c1", "c3"), ("c2", "c3")]
    )
    two_p3 = _named(
        "2P3",
        ["a0", "a1", "a2", "b0", "b1", "b2"],
        [("a0", "a1"), ("a1", "a2"), ("b0", "b1"), ("b1", "b2")],
    )
    four_k1 = NamedGraph(
        "4K1", build_graph(4, []), {i: f"v{i}" for i in range(4)}
    )
    entries = [
        _cycle("C4", 4),
        _cycle("C6", 6),
        _cycle("C7", 7),
        _path("P7", 7),
        _path("P3", 3),
        two_p3,
        four_k1,
        _named("3-pentagon", pent_labels, pent_edges),
        _named("T0", t0_labels, _t0_edges()),
        _named("T1", t1_labels, t1_edges),
    ]
    return {e.name: e for e in entries}


def pattern(name: str) -> NamedGraph:
    return fixed_graphs()[name]


def _build_m0() -> NamedGraph:
    labels = [f"x{i}" for i in range(7)] + ["y0", "y3", "z0", "z3", "z4"]
    edges = [(f"x{i}", f"x{(i + 1) % 7}") for i in range(7)]
    hole_attach = {
        "y0": (0, 1, 4),
        "y3": (3, 4, 0),
        "z0": (0, 1, 2, 3, 4),
        "z3": (3, 4, 5, 6, 0),
        "z4": (4, 5, 6, 0, 1),
    }
    for lab, idxs in hole_attach.items():
        edges += [(lab, f"x{i}") for i in idxs]
    edges += [(a, b) for a, b in combinations(M0_OPTIONAL, 2)]
    return _named("M0", labels, edges)


def _build_m1() -> NamedGraph:
    labels = [f"x{i}" for i in range(7)] + ["y0", "z2"]
    edges = [(f"x{i}", f"x{(i + 1) % 7}") for i in range(7)]
    edges += [("y0", f"x{i}") for i in (0, 1, 4)]
    edges += [("z2", f"x{i}") for i in (2, 3, 4, 5, 6)]
    return _named("M1", labels, edges)


def _extend_m1(name: str, extra: str, hole_idxs: tuple[int, ...]) -> NamedGraph:
    m1 = _build_m1()
    labels = [m1.labels[v] for v in range(m1.graph.n)] + [extra]
    edges = [(m1.labels[u], m1.labels[v]) for u, v in m1.graph.edges()]
    edges += [(extra, f"x{i}") for i in hole_idxs]
    edges += [(extra, "y0"), (extra, "z2")]
    return _named(name, labels, edges)


@cache
def family_M() -> list[NamedGraph]:
    """All 35 family members: 32 induced subgraphs of M0 keeping the 7-hole,
    plus M1, M2, M3.  Deterministic order; duplicates by isomorphism remain."""
    m0 = _build_m0()
    out = []
    for bits in range(32):
        removed = [M0_OPTIONAL[i] for i in range(5) if bits >> i & 1]
        if not removed:
            out.append(m0)
            continue
        keep = [v for v in range(m0.graph.n) if m0.labels[v] not in removed]
        sub, old_to_new = induced_subgraph(m0.graph, keep)
        labels = {old_to_new[v]: m0.labels[v] for v in keep}
        name = "M0-minus-{" + ",".join(sorted(removed)) + "}"
        out.append(NamedGraph(name, sub, labels))
    out.append(_build_m1())
    out.append(_extend_m1("M2", "z1", (1, 2, 3, 4, 5)))
    out.append(_extend_m1("M3", "z3", (3, 4, 5, 6, 0)))
    return out


def is_isomorphic_small(g: Graph, h: Graph) -> dict[int, int] | None:
    """Backtracking isomorphism on <= 16 vertices; returns a g->h vertex map."""
    if g.n > ISO_SIZE_CAP or h.n > ISO_SIZE_CAP:
        raise ValueError(f"isomorphism test capped at {ISO_SIZE_CAP} vertices")
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    degs_g = [g.degree(v) for v in range(g.n)]
    degs_h = [h.degree(v) for v in range(h.n)]
    if sorted(degs_g) != sorted(degs_h):
        return None

    # order g's vertices so each one touches a previously placed vertex
    # when possible (per connected piece), rarest degree first
    order: list[int] = []
    placed_mask = 0
    remaining = set(range(g.n))
    while remaining:
        candidates = [v for v in remaining if g.row(v) & placed_mask]
        pool = candidates or list(remaining)
        v = min(pool, key=lambda u: (degs_g[u], u))
        order.append(v)
        placed_mask |= 1 << v
        remaining.discard(v)

    image = [-1] * g.n
    used_h = 0

    def extend(k: int) -> bool:
        nonlocal used_h
        if k == len(order):
            return True
        v = order[k]
        for w in range(h.n):
            if used_h >> w & 1 or degs_h[w] != degs_g[v]:
                continue
            ok = True
            for u in order[:k]:
                if g.has_edge(v, u) != h.has_edge(w, image[u]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used_h |= 1 << w
            if extend(k + 1):
                return True
            used_h &= ~(1 << w)
            image[v] = -1
        return False

    if not extend(0):
        return None
    return {v: image[v] for v in range(g.n)}


@cache
def _dedup_targets() -> list[NamedGraph]:
    """Family plus T0/T1, one representative per isomorphism class."""
    reps: list[NamedGraph] = []
    for entry in family_M() + [pattern("T0"), pattern("T1")]:
        if all(
            rep.graph.n != entry.graph.n
            or is_isomorphic_small(rep.graph, entry.graph) is None
            for rep in reps
        ):
            reps.append(entry)
    return reps


def dedup_family_index() -> list[NamedGraph]:
    return list(_dedup_targets())


def match_catalog(g: Graph) -> tuple[str, dict[int, int]] | None:
    """Match g against the deduplicated family plus {T0, T1}.

    Returns (entry name, map from entry vertices to g vertices), or None.
    """
    if g.n > MATCH_SIZE_CAP:
        return None
    for entry in _dedup_targets():
        if entry.graph.n != g.n:
            continue
        bij = is_isomorphic_small(entry.graph, g)
        if bij is not None:
            return entry.name, bij
    return None


def catalog_entry(name: str) -> NamedGraph:
    for entry in family_M():
        if entry.name == name:
            return entry
    return pattern(name)


def has_twins(g: Graph) -> bool:
    closed = {g.closed_row(v) for v in range(g.n)}
    return len(closed) < g.n
