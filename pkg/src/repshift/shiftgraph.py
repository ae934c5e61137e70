"""Edge shifts presented by finite labeled digraphs.

A :class:`ShiftGraph` is a multigraph whose bi-infinite paths are the points
of a shift of finite type.  Multi-edges are kept: point counts depend on
them.  Everything here is pure; graphs are never mutated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, NamedTuple

import networkx as nx


class Edge(NamedTuple):
    src: int
    dst: int
    label: Hashable


@dataclass(frozen=True)
class ShiftGraph:
    vertices: tuple
    edges: tuple[Edge, ...]
    alphabet: str = ""
    vertex_text: Callable = field(default=str, compare=False, repr=False)
    edge_text: Callable = field(default=str, compare=False, repr=False)

    @classmethod
    def from_labeled_edges(cls, triples, alphabet="", vertex_text=str, edge_text=str,
                           extra_vertices=()):
        """Build from ``(source label, target label, edge label)`` triples.

        Vertices and edges are sorted, so equal inputs give identical graphs.
        """
        triples = list(triples)
        labels = sorted({t[0] for t in triples} | {t[1] for t in triples} | set(extra_vertices))
        pos = {v: i for i, v in enumerate(labels)}
        edges = sorted(Edge(pos[s], pos[d], lab) for s, d, lab in triples)
        return cls(tuple(labels), tuple(edges), alphabet, vertex_text, edge_text)

    def with_parts(self, vertices, edges) -> ShiftGraph:
        return ShiftGraph(tuple(vertices), tuple(edges), self.alphabet,
                          self.vertex_text, self.edge_text)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def out_edges(self) -> list[list[int]]:
        out = [[] for _ in self.vertices]
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return out

    def in_degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.dst] += 1
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.src] += 1
        return deg

    def vertex_index(self, label) -> int:
        return self.vertices.index(label)

    def induced(self, keep) -> ShiftGraph:
        """Subgraph on the vertex indices in ``keep`` (order preserved)."""
        keep = sorted(set(keep))
        remap = {v: i for i, v in enumerate(keep)}
        edges = [Edge(remap[e.src], remap[e.dst], e.label) for e in self.edges
                 if e.src in remap and e.dst in remap]
        return self.with_parts([self.vertices[v] for v in keep], edges)


@dataclass(frozen=True)
class CardinalityClass:
    tag: str
    count: int | None = None

    FINITE = "finite"
    COUNTABLE = "countable"
    UNCOUNTABLE = "uncountable"

    def __post_init__(self):
        if self.tag not in (self.FINITE, self.COUNTABLE, self.UNCOUNTABLE):
            raise ValueError(f"bad cardinality tag {self.tag!r}")
        if (self.tag == self.FINITE) != (self.count is not None):
            raise ValueError("exactly the finite class carries a count")

    @classmethod
    def finite(cls, n: int) -> CardinalityClass:
        return cls(cls.FINITE, n)

    @property
    def is_finite(self) -> bool:
        return self.tag == self.FINITE

    def as_dict(self) -> dict:
        d = {"class": self.tag}
        if self.count is not None:
            d["count"] = self.count
        return d

    def __str__(self) -> str:
        return f"Finite({self.count})" if self.is_finite else self.tag.capitalize()


Finite = CardinalityClass.finite
CountablyInfinite = CardinalityClass(CardinalityClass.COUNTABLE)
Uncountable = CardinalityClass(CardinalityClass.UNCOUNTABLE)


def prune(g: ShiftGraph) -> ShiftGraph:
    """Drop vertices (and their edges) that lie on no bi-infinite path."""
    alive = [True] * g.num_vertices
    indeg, outdeg = g.in_degrees(), g.out_degrees()
    out_adj = [[] for _ in g.vertices]
    in_adj = [[] for _ in g.vertices]
    for e in g.edges:
        out_adj[e.src].append(e.dst)
        in_adj[e.dst].append(e.src)
    queue = deque(v for v in range(g.num_vertices) if indeg[v] == 0 or outdeg[v] == 0)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in out_adj[v]:
            indeg[w] -= 1
            if alive[w] and indeg[w] == 0:
                queue.append(w)
        for w in in_adj[v]:
            outdeg[w] -= 1
            if alive[w] and outdeg[w] == 0:
                queue.append(w)
    return g.induced(v for v in range(g.num_vertices) if alive[v])


def is_pruned(g: ShiftGraph) -> bool:
    return all(g.in_degrees()) and all(g.out_degrees())


def _digraph(g: ShiftGraph) -> nx.DiGraph:
    dg = nx.DiGraph()
    dg.add_nodes_from(range(g.num_vertices))
    dg.add_edges_from((e.src, e.dst) for e in g.edges)
    return dg


class SCCInfo(NamedTuple):
    components: list[frozenset[int]]  # nontrivial SCCs, canonical order
    component_of: list[int | None]    # vertex -> component position or None
    edge_counts: list[int]            # internal edges per component

    def is_cycle(self, c: int) -> bool:
        return self.edge_counts[c] == len(self.components[c])


def scc_info(g: ShiftGraph) -> SCCInfo:
    comps = []
    for comp in nx.strongly_connected_components(_digraph(g)):
        comps.append(frozenset(comp))
    comp_of_tmp = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of_tmp[v] = i
    counts = [0] * len(comps)
    for e in g.edges:
        if comp_of_tmp[e.src] == comp_of_tmp[e.dst]:
            counts[comp_of_tmp[e.src]] += 1
    keep = sorted((min(c), i) for i, c in enumerate(comps) if counts[i] > 0)
    components = [comps[i] for _, i in keep]
    edge_counts = [counts[i] for _, i in keep]
    component_of: list[int | None] = [None] * g.num_vertices
    for j, comp in enumerate(components):
        for v in comp:
            component_of[v] = j
    return SCCInfo(components, component_of, edge_counts)


def irreducible_components(g: ShiftGraph) -> list[ShiftGraph]:
    """Maximal strongly connected subgraphs carrying at least one edge."""
    return [g.induced(c) for c in scc_info(g).components]


def classify(g: ShiftGraph) -> CardinalityClass:
    """Finite / countably infinite / uncountable number of bi-infinite paths."""
    g = prune(g)
    if all(d == 1 for d in g.in_degrees()) and all(d == 1 for d in g.out_degrees()):
        return Finite(g.num_vertices)
    info = scc_info(g)
    if any(not info.is_cycle(c) for c in range(len(info.components))):
        return Uncountable
    return CountablyInfinite


def count_periodic_points(g: ShiftGraph, r: int) -> int:
    """Points fixed by the r-th shift power: the trace of ``M^r``."""
    if r < 1:
        raise ValueError("period must be positive")
    out = [[] for _ in g.vertices]
    for e in g.edges:
        out[e.src].append(e.dst)
    total = 0
    for v in range(g.num_vertices):
        vec = {v: 1}
        for _ in range(r):
            nxt: dict[int, int] = {}
            for u, c in vec.items():
                for w in out[u]:
                    nxt[w] = nxt.get(w, 0) + c
            vec = nxt
        total += vec.get(v, 0)
    return total


def block_presentation(g: ShiftGraph, n: int) -> ShiftGraph:
    """Higher-block presentation: vertices are allowed n-blocks of edges.

    Edges are the allowed (n+1)-blocks.  For ``n == 1`` the graph itself
    already presents its edge shift and a copy is returned.
    """
    if n < 1:
        raise ValueError("block length must be positive")
    if n == 1:
        return g.with_parts(g.vertices, g.edges)
    out = g.out_edges()
    blocks = [(i,) for i in range(g.num_edges)]
    for _ in range(n - 1):
        blocks = [b + (j,) for b in blocks for j in out[g.edges[b[-1]].dst]]
    triples = []
    for b in blocks:
        for j in out[g.edges[b[-1]].dst]:
            triples.append((b, b[1:] + (j,), b + (j,)))
    fmt = g.edge_text
    return ShiftGraph.from_labeled_edges(
        triples, alphabet=f"{n}-blocks of {g.alphabet}".strip(),
        vertex_text=lambda b: " ".join(fmt(g.edges[i].label) for i in b),
        edge_text=lambda b: " ".join(fmt(g.edges[i].label) for i in b),
        extra_vertices=blocks,
    )


# ----------------------------------------------------------------------------
# subgroup-product automaton

class _Automaton:
    """States ``(vertex, H)``; an edge multiplies H by its contributions."""

    def __init__(self, g: ShiftGraph, contribute, group):
        self.g = g
        self.lattice = group.lattice
        self.out = g.out_edges()
        self.contrib = [frozenset(contribute(i)) for i in range(g.num_edges)]

    def step(self, state):
        v, h = state
        for i in self.out[v]:
            e = self.g.edges[i]
            yield e.dst, self.lattice.join(h, self.contrib[i])

    def reach(self, sources) -> set:
        seen = set(sources)
        queue = deque(seen)
        while queue:
            for nxt in self.step(queue.popleft()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    def closed_walk_images(self) -> list[set]:
        """For each vertex u, subgroups generated by nonempty closed walks at u."""
        triv = self.lattice.trivial
        out = []
        for u in range(self.g.num_vertices):
            first = set(self.step((u, triv)))
            reached = self.reach(first) if first else set()
            out.append({h for v, h in reached if v == u})
        return out


def realizable_images(g: ShiftGraph, contribute, group) -> set[frozenset]:
    """Subgroups generated exactly by the contributions along some bi-infinite path.

    ``contribute(i)`` gives the element indices contributed by edge ``i``.
    Eventually periodic paths suffice: such a path is a closed walk repeated
    into the past, a connecting walk, and a closed walk repeated forever.
    """
    g = prune(g)
    auto = _Automaton(g, contribute, group)
    loops = auto.closed_walk_images()
    sources = {(u, h) for u in range(g.num_vertices) for h in loops[u]}
    result = set()
    for v, h in auto.reach(sources):
        for hf in loops[v]:
            result.add(auto.lattice.join(h, hf))
    return result


def classify_points(g: ShiftGraph, contribute, group, predicate) -> CardinalityClass:
    """Cardinality of the points whose image subgroup satisfies ``predicate``.

    ``predicate`` must be upward closed (true for a subgroup implies true
    for every larger one), as transitivity and surjectivity are.  A point's
    past and future eventually settle in irreducible components C- and C+.
    There are uncountably many good points iff a good point has C- or C+
    containing two cycles; otherwise infinitely many iff a good point has
    C- != C+; otherwise the good points are the rotations of the good
    single-cycle components.
    """
    g = prune(g)
    auto = _Automaton(g, contribute, group)
    info = scc_info(g)
    loops = auto.closed_walk_images()
    good_pairs = set()
    for c, comp in enumerate(info.components):
        sources = {(u, h) for u in comp for h in loops[u]}
        for v, h in auto.reach(sources):
            c2 = info.component_of[v]
            if c2 is None or (c, c2) in good_pairs:
                continue
            if any(predicate(auto.lattice.join(h, hf)) for hf in loops[v]):
                good_pairs.add((c, c2))
    if any(not info.is_cycle(a) or not info.is_cycle(b) for a, b in good_pairs):
        return Uncountable
    if any(a != b for a, b in good_pairs):
        return CountablyInfinite
    return Finite(sum(info.edge_counts[a] for a, _ in good_pairs))


# ----------------------------------------------------------------------------
# export

def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: ShiftGraph, name: str = "shift") -> str:
    lines = [f'digraph "{_dot_escape(name)}" {{']
    for i, v in enumerate(g.vertices):
        lines.append(f'  v{i} [label="{_dot_escape(g.vertex_text(v))}"];')
    for e in g.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{_dot_escape(g.edge_text(e.label))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: ShiftGraph) -> dict:
    return {
        "alphabet": g.alphabet,
        "vertices": [g.vertex_text(v) for v in g.vertices],
        "edges": [{"source": e.src, "target": e.dst, "label": g.edge_text(e.label)}
                  for e in g.edges],
    }
