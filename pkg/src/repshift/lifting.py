"""Lifting periodic representations through split abelian extensions.

For ``A -> E -> Sigma`` and a periodic point rho of Hom(K, Sigma), the lifts
of the orbit of rho form a shift of finite type.  It is presented here by a
phase-indexed graph: a vertex is ``(phase, U-assignment into E)`` and an
edge at phase j is a homomorphism B -> E lying over the j-th edge of rho's
closed path.  Since rho has least period r, the phase of every lift is
determined, so paths of this graph are in bijection with the lifts.

Window-level cocycles work on a single base window: a cocycle is an
assignment of base generators to A whose twisted product with a fixed lift
is again a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .errors import DomainError, InvariantViolation
from .fingroup import ExtensionData, standard_extension
from .representations import (
    DEFAULT_BUDGET, PeriodicRep, RepresentationShift, edge_endpoints, periodic_points,
    representation_shift, validate_rep, window_homs,
)
from .shiftgraph import (
    CardinalityClass, ShiftGraph, classify, irreducible_components, prune, realizable_images,
)
from .zgroup import BasePresentation, Presentation, default_window, hnn_window_base


@dataclass(frozen=True, eq=False)
class LiftOrbit:
    rep: PeriodicRep
    ext: ExtensionData
    base: BasePresentation
    graph: ShiftGraph

    def contributions(self, edge_index: int) -> tuple[int, ...]:
        _, label = self.graph.edges[edge_index].label
        return tuple(label[p] for p in self.base.step_gens)

    def projected_label(self, edge_index: int) -> tuple[int, ...]:
        _, label = self.graph.edges[edge_index].label
        return tuple(self.ext.projection[x] for x in label)

    @cached_property
    def realizable(self) -> set[frozenset]:
        return realizable_images(self.graph, self.contributions, self.ext.E)

    @property
    def lift_exists(self) -> bool:
        return self.graph.num_edges > 0

    @property
    def surjective_lift_exists(self) -> bool:
        return self.ext.E.lattice.whole in self.realizable

    def component_classes(self) -> list[CardinalityClass]:
        return [classify(c) for c in irreducible_components(self.graph)]


def _ext(ext) -> ExtensionData:
    return standard_extension(ext) if isinstance(ext, str) else ext


def lift_orbit_subshift(P: Presentation, ext: ExtensionData | str, rep: PeriodicRep,
                        n: int | None = None, budget: int = DEFAULT_BUDGET) -> LiftOrbit:
    """The shift of finite type of all lifts of the orbit of ``rep`` into E."""
    ext = _ext(ext)
    base = hnn_window_base(P, n if n is not None else default_window(P))
    rep = rep.reduced()
    labels = validate_rep(rep, base, ext.sigma)
    E = ext.E
    r = rep.period
    triples = []
    for j, lab in enumerate(labels):
        cands = [ext.fibers[y] for y in lab]
        for eta in window_homs(base, E, cands, budget=budget):
            src, dst = edge_endpoints(base, E, eta)
            triples.append(((j, src), ((j + 1) % r, dst), (j, eta)))

    def fmt(xs):
        return ",".join(E.format(x) for x in xs)

    graph = ShiftGraph.from_labeled_edges(
        triples, alphabet=f"lifts to {E.name} of {rep.text(ext.sigma)}",
        vertex_text=lambda v: f"{v[0]}:{fmt(v[1])}",
        edge_text=lambda e: f"{e[0]}:{fmt(e[1])}",
    )
    return LiftOrbit(rep, ext, base, prune(graph))


def exists_surjective_lift(P: Presentation, ext: ExtensionData | str, rep: PeriodicRep,
                           n: int | None = None, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether some lift of the orbit of ``rep`` maps K onto E."""
    return lift_orbit_subshift(P, ext, rep, n, budget).surjective_lift_exists


def sweep_lifts(P: Presentation, ext: ExtensionData | str, max_period: int,
                budget: int = DEFAULT_BUDGET) -> list[tuple[PeriodicRep, LiftOrbit]]:
    """Lift orbits of every periodic point of least period <= ``max_period``."""
    ext = _ext(ext)
    rs: RepresentationShift = representation_shift(P, ext.sigma, budget=budget)
    return [(rep, lift_orbit_subshift(P, ext, rep, budget=budget))
            for rep in periodic_points(rs, max_period)]


# ----------------------------------------------------------------------------
# window cocycles

def window_lifts(base: BasePresentation, ext: ExtensionData, rho_label) -> list[tuple[int, ...]]:
    """All homomorphisms B -> E over the window representation ``rho_label``."""
    return window_homs(base, ext.E, [ext.fibers[y] for y in rho_label])


def section_lift(base: BasePresentation, ext: ExtensionData, rho_label) -> tuple[int, ...]:
    """``s o rho`` on the generators; a homomorphism because the section is one."""
    lift = tuple(ext.section[y] for y in rho_label)
    E = ext.E
    if any(kernels.eval_word(E.table, E.inv, lift, w) for w in base.relators):
        raise DomainError("section composed with rho is not a homomorphism")
    return lift


def _project(ext, lift):
    return tuple(ext.projection[x] for x in lift)


def lift_difference_cocycle(base: BasePresentation, ext: ExtensionData, hat, tilde) -> tuple[int, ...]:
    """The cocycle ``xi(g) = hat(g) tilde(g)^-1`` relating two lifts."""
    if _project(ext, hat) != _project(ext, tilde):
        raise DomainError("the two lifts cover different representations")
    E = ext.E
    xi = tuple(E.mul(h, E.inv[t]) for h, t in zip(hat, tilde))
    if not cocycle_check(base, ext, xi, tilde):
        raise InvariantViolation("difference of two lifts failed the cocycle check")
    return xi


def twist(ext: ExtensionData, xi, tilde) -> tuple[int, ...]:
    """``xi . tilde`` generator by generator."""
    return tuple(ext.E.mul(a, t) for a, t in zip(xi, tilde))


def cocycle_check(base: BasePresentation, ext: ExtensionData, xi, tilde) -> bool:
    """True iff ``xi`` takes values in A and ``xi . tilde`` kills every relator."""
    if any(a not in ext.kernel for a in xi):
        return False
    E = ext.E
    prod = twist(ext, xi, tilde)
    return all(kernels.eval_word(E.table, E.inv, prod, w) == 0 for w in base.relators)


def twisted_value(ext: ExtensionData, xi, rho_label, word) -> int:
    """Value on ``word`` of the map extended by ``xi(uv) = xi(u) xi(v)^rho(u)``."""
    E, sig = ext.E, ext.sigma
    val, rho_w = 0, 0
    for pos, exp in word:
        y = rho_label[pos]
        a = xi[pos]
        if exp > 0:
            step_val, step_rho = a, y
        else:
            # xi(g^-1) = (xi(g)^-1)^(rho(g)^-1)
            step_rho = sig.inv[y]
            step_val = ext.act(step_rho, E.inv[a])
        for _ in range(abs(exp)):
            val = E.mul(val, ext.act(rho_w, step_val))
            rho_w = sig.mul(rho_w, step_rho)
    return val


def is_twisted_cocycle(base: BasePresentation, ext: ExtensionData, xi, rho_label) -> bool:
    """Cocycle test through the twisted identity alone, without multiplying by a lift."""
    if any(a not in ext.kernel for a in xi):
        return False
    return all(twisted_value(ext, xi, rho_label, w) == 0 for w in base.relators)


def coboundary_witness(base: BasePresentation, ext: ExtensionData, xi, rho_label) -> int | None:
    """Some ``a`` in A with ``xi(g) = a^rho(g) a^-1`` on every generator, else None."""
    E = ext.E
    for a in ext.A:
        if all(x == E.mul(ext.act(y, a), E.inv[a]) for x, y in zip(xi, rho_label)):
            return a
    return None


def coboundary(ext: ExtensionData, a: int, rho_label) -> tuple[int, ...]:
    E = ext.E
    return tuple(E.mul(ext.act(y, a), E.inv[a]) for y in rho_label)


__all__ = [
    "LiftOrbit", "lift_orbit_subshift", "exists_surjective_lift", "sweep_lifts",
    "window_lifts", "section_lift", "lift_difference_cocycle", "cocycle_check",
    "twisted_value", "is_twisted_cocycle", "coboundary_witness", "coboundary", "twist",
]
