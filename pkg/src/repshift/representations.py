"""The representation shift Hom(K, Sigma) as an edge shift.

Edges of the graph are homomorphisms from a window base B to Sigma; an
edge runs from its restriction to U to the vertex obtained by composing
its restriction to V with the amalgamating map.  Bi-infinite paths are
exactly the representations of K.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .errors import DomainError, InvariantViolation, ResourceError
from .fingroup import FiniteGroup, make_group
from .shiftgraph import (
    CardinalityClass, Finite, ShiftGraph, classify, classify_points, prune,
)
from .zgroup import BasePresentation, Presentation, default_window, hnn_window_base

DEFAULT_BUDGET = 2_000_000_000


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("REPSHIFT_THREADS", "1")))
    except ValueError:
        return 1


def _enumerate_chunk(args):
    return kernels.enumerate_homs(*args)


def window_homs(base: BasePresentation, group: FiniteGroup, candidates=None,
                budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Every assignment of the base generators into ``group`` killing all relators.

    ``candidates`` optionally restricts each generator's images.  With
    ``REPSHIFT_THREADS`` > 1 the first generator's candidates are split
    across worker processes; results are merged in sorted order.
    """
    ngens = len(base.gens)
    if candidates is None:
        candidates = [list(range(group.order))] * ngens
    candidates = [list(c) for c in candidates]
    table = [list(row) for row in group.table]
    inv = list(group.inv)
    relators = [list(r) for r in base.relators]
    workers = _threads()
    if workers > 1 and ngens > 0 and len(candidates[0]) > 1:
        chunks = [candidates[0][i::workers] for i in range(workers)]
        jobs = [(table, inv, ngens, relators, [ch] + candidates[1:], budget)
                for ch in chunks if ch]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_enumerate_chunk, jobs))
        sols = [s for part in parts for s in part[0]]
        nodes = sum(p[1] for p in parts)
        complete = all(p[2] for p in parts) and nodes <= budget
    else:
        sols, nodes, complete = kernels.enumerate_homs(
            table, inv, ngens, relators, candidates, budget)
    if not complete:
        raise ResourceError(f"enumeration budget of {budget} partial assignments exceeded")
    return sorted(sols)


def edge_endpoints(base: BasePresentation, group: FiniteGroup, label):
    """Source and target vertex labels of the edge ``label``."""
    src = tuple(label[u] for u in base.u_gens)
    dst = tuple(kernels.eval_word(group.table, group.inv, label, w) for w in base.phi_words)
    return src, dst


def _assignment_text(base, group, positions):
    names = [base.gen_name(p) for p in positions]

    def text(label):
        return ",".join(f"{n}={group.format(x)}" for n, x in zip(names, label))
    return text


@dataclass(frozen=True, eq=False)
class RepresentationShift:
    """Graph presenting Hom(K, Sigma) together with the data that built it."""

    presentation: Presentation
    base: BasePresentation
    group: FiniteGroup
    raw: ShiftGraph

    @cached_property
    def graph(self) -> ShiftGraph:
        return prune(self.raw)

    def contributions(self, edge_index: int) -> tuple[int, ...]:
        label = self.graph.edges[edge_index].label
        return tuple(label[p] for p in self.base.step_gens)

    def classify(self) -> CardinalityClass:
        return classify(self.graph)


def representation_shift(P: Presentation, group: FiniteGroup | str, n: int | None = None,
                         budget: int = DEFAULT_BUDGET) -> RepresentationShift:
    if isinstance(group, str):
        group = make_group(group)
    base = hnn_window_base(P, n if n is not None else default_window(P))
    triples = []
    for label in window_homs(base, group, budget=budget):
        src, dst = edge_endpoints(base, group, label)
        triples.append((src, dst, label))
    raw = ShiftGraph.from_labeled_edges(
        triples,
        alphabet=f"Hom(B^({base.n}), {group.name})",
        vertex_text=_assignment_text(base, group, base.u_gens),
        edge_text=_assignment_text(base, group, range(len(base.gens))),
    )
    return RepresentationShift(P, base, group, raw)


def build_shift_graph(P: Presentation, group: FiniteGroup | str, n: int | None = None,
                      budget: int = DEFAULT_BUDGET) -> ShiftGraph:
    """Pruned graph whose bi-infinite paths biject with Hom(K, group)."""
    return representation_shift(P, group, n, budget).graph


def classify_transitive(P: Presentation, r: int, budget: int = DEFAULT_BUDGET) -> CardinalityClass:
    """Cardinality of the transitive representations K -> S_r."""
    if not 2 <= r <= 5:
        raise DomainError("index must be between 2 and 5")
    rs = representation_shift(P, f"S{r}", budget=budget)
    group = rs.group
    return classify_points(rs.graph, rs.contributions, group, group.moves_transitively)


def count_index_subgroups(P: Presentation, r: int, budget: int = DEFAULT_BUDGET) -> CardinalityClass:
    """Cardinality of the subgroups of index exactly r."""
    cls = classify_transitive(P, r, budget)
    if not cls.is_finite:
        return cls
    per = math.factorial(r - 1)
    if cls.count % per:
        raise InvariantViolation(
            f"{cls.count} transitive representations is not a multiple of {per}")
    return Finite(cls.count // per)


# ----------------------------------------------------------------------------
# periodic representations

@dataclass(frozen=True)
class PeriodicRep:
    """A periodic point given by its repeating sequence of steps.

    A step is the tuple of element indices of the index-0 generators (HNN
    input: all base generators) at one position of the point.
    """

    steps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.steps:
            raise DomainError("a periodic representation needs at least one step")

    @property
    def period(self) -> int:
        return len(self.steps)

    @property
    def least_period(self) -> int:
        r = len(self.steps)
        for d in range(1, r + 1):
            if r % d == 0 and all(self.steps[i] == self.steps[i % d] for i in range(r)):
                return d
        return r

    def reduced(self) -> PeriodicRep:
        return PeriodicRep(self.steps[: self.least_period])

    def canonical(self) -> PeriodicRep:
        """Least rotation of the reduced step sequence (one per orbit)."""
        s = self.reduced().steps
        return PeriodicRep(min(s[i:] + s[:i] for i in range(len(s))))

    def edge_labels(self, base: BasePresentation) -> list[tuple[int, ...]]:
        r, w = self.period, base.width
        return [sum((self.steps[(j + i) % r] for i in range(w)), ()) for j in range(r)]

    def image(self, group: FiniteGroup) -> frozenset[int]:
        return group.closure(x for s in self.steps for x in s)

    def text(self, group: FiniteGroup) -> str:
        return ",".join("/".join(group.format(x) for x in s) for s in self.steps)


def parse_rep(spec: str, group: FiniteGroup) -> PeriodicRep:
    """Parse ``cycle:v1,v2,...``; multi-generator steps separate values by ``/``."""
    body = spec.split(":", 1)[1] if spec.startswith("cycle:") else spec
    items = [it for it in body.split(",") if it.strip()]
    if not items:
        raise DomainError(f"empty representation spec {spec!r}")
    return PeriodicRep(tuple(
        tuple(group.parse_element(v) for v in it.split("/")) for it in items))


def validate_rep(rep: PeriodicRep, base: BasePresentation, group: FiniteGroup) -> list:
    """Edge labels of the closed path of ``rep``; DomainError if it is not a point."""
    if any(len(s) != len(base.step_gens) for s in rep.steps):
        raise DomainError(f"each step needs {len(base.step_gens)} values")
    labels = rep.edge_labels(base)
    for lab in labels:
        for w in base.relators:
            if kernels.eval_word(group.table, group.inv, lab, w) != 0:
                raise DomainError(f"step sequence {rep.text(group)} violates a relator")
    ends = [edge_endpoints(base, group, lab) for lab in labels]
    for j, (_, dst) in enumerate(ends):
        if dst != ends[(j + 1) % len(ends)][0]:
            raise DomainError(f"step sequence {rep.text(group)} is not a closed path")
    return labels


def rep_from_walk(rs: RepresentationShift, walk) -> PeriodicRep:
    g = rs.graph
    return PeriodicRep(tuple(
        tuple(g.edges[i].label[p] for p in rs.base.step_gens) for i in walk))


def periodic_points(rs: RepresentationShift, max_period: int) -> list[PeriodicRep]:
    """One canonical representative per periodic orbit of least period <= max_period."""
    g = rs.graph
    out_edges = g.out_edges()
    found = set()
    for start in range(g.num_vertices):
        stack = [(start, ())]
        while stack:
            v, walk = stack.pop()
            if walk and v == start:
                found.add(rep_from_walk(rs, walk).canonical())
            if len(walk) < max_period:
                for i in out_edges[v]:
                    stack.append((g.edges[i].dst, walk + (i,)))
    return sorted(found, key=lambda p: (p.period, p.steps))
