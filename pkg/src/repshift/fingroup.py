"""Small finite groups with exact, table-driven multiplication.

Elements of symmetric and alternating groups are :class:`Perm` objects
(0-based image tuples, printed in 1-based cycle notation); cyclic groups
use plain residues.  Every :class:`FiniteGroup` keeps its elements in
canonical sorted order, so the identity always has index 0 and element
indices are stable between runs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ConfigurationError, DomainError

MAX_TABLE_ORDER = 120


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of ``{0, ..., n-1}`` stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise DomainError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Perm) -> Perm:
        # functional composition: (p * q)(i) = p(q(i))
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "e"
        return "".join("(" + "".join(str(i + 1) for i in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self})"

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> Perm:
        """Parse 1-based cycle notation such as ``"(12)(34)"`` or ``"e"``."""
        text = text.strip()
        if text in ("e", "()", "1", ""):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\d+\))+", text):
            raise DomainError(f"bad cycle notation {text!r}")
        images = list(range(n))
        # apply cycles right to left so that "(12)(23)" means (12)*(23)
        for cyc in reversed(re.findall(r"\((\d+)\)", text)):
            pts = [int(ch) - 1 for ch in cyc]
            if any(p < 0 or p >= n for p in pts) or len(set(pts)) != len(pts):
                raise DomainError(f"bad cycle {cyc!r} for degree {n}")
            step = list(range(n))
            for a, b in zip(pts, pts[1:] + pts[:1]):
                step[a] = b
            images = [step[i] for i in images]
        return cls(tuple(images))


GroupElement = "Perm | int"


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its sorted element list and Cayley table.

    ``degree`` is the permutation degree for permutation groups and ``None``
    for cyclic groups of residues.
    """

    name: str
    elements: tuple
    degree: int | None = None
    modulus: int | None = None
    table: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    inv: tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self):
        index = {g: i for i, g in enumerate(self.elements)}
        object.__setattr__(self, "_index", index)
        if not self.table:
            table = tuple(
                tuple(index[self._raw_mul(g, h)] for h in self.elements)
                for g in self.elements
            )
            object.__setattr__(self, "table", table)
        if not self.inv:
            inv = tuple(row.index(0) for row in self.table)
            object.__setattr__(self, "inv", inv)

    def _raw_mul(self, g, h):
        if self.modulus is not None:
            return (g + h) % self.modulus
        return g * h

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def index(self, g) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise DomainError(f"{g} is not an element of {self.name}") from None

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv[i], -k
        out = 0
        for _ in range(k):
            out = self.table[out][i]
        return out

    def conj(self, y: int, a: int) -> int:
        """Return ``y a y^-1``."""
        return self.table[self.table[y][a]][self.inv[y]]

    def format(self, i: int) -> str:
        return str(self.elements[i])

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if self.modulus is not None:
            try:
                return self.index(int(text) % self.modulus)
            except ValueError:
                raise DomainError(f"bad residue {text!r}") from None
        return self.index(Perm.from_cycles(text, self.degree))

    def closure(self, gens) -> frozenset[int]:
        """Indices of the subgroup generated by the given element indices."""
        gens = [g for g in set(gens) if g != 0]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.table[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return SubgroupLattice(self)

    def moves_transitively(self, subgroup) -> bool:
        """Whether the subgroup (element indices) is transitive on its points."""
        if self.degree is None:
            raise DomainError(f"{self.name} is not a permutation group")
        return is_transitive([self.elements[i] for i in subgroup], self.degree)


class SubgroupLattice:
    """Memoized joins of subgroups, keyed by frozensets of element indices."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.trivial = frozenset({0})
        self.whole = frozenset(range(group.order))
        self._join: dict = {}

    def join(self, h: frozenset, extra) -> frozenset:
        if not isinstance(extra, frozenset):
            extra = frozenset(extra)
        if extra <= h:
            return h
        key = (h, extra)
        out = self._join.get(key)
        if out is None:
            out = self.group.closure(h | extra)
            self._join[key] = out
        return out


def _perm_group(name: str, perms, degree: int) -> FiniteGroup:
    return FiniteGroup(name, tuple(sorted(perms)), degree=degree)


def symmetric_group(n: int) -> FiniteGroup:
    perms = [Perm(p) for p in itertools.permutations(range(n))]
    return _perm_group(f"S{n}", perms, n)


def alternating_group(n: int) -> FiniteGroup:
    perms = [Perm(p) for p in itertools.permutations(range(n))]
    return _perm_group(f"A{n}", [p for p in perms if p.is_even()], n)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(f"Z{n}", tuple(range(n)), modulus=n)


def klein_four() -> FiniteGroup:
    perms = [Perm.from_cycles(c, 4) for c in ("e", "(12)(34)", "(13)(24)", "(14)(23)")]
    return _perm_group("V4", perms, 4)


def make_group(spec: str | tuple[str, int]) -> FiniteGroup:
    """Build a named group: ``"S3"``, ``"A4"``, ``"Z7"``, ``"V4"`` or ``("symmetric", 3)``."""
    if isinstance(spec, tuple):
        kind, n = spec
        kind = {"symmetric": "S", "alternating": "A", "cyclic": "Z"}.get(kind, kind)
        spec = f"{kind}{n}"
    m = re.fullmatch(r"\s*([SAZV])(\d+)\s*", str(spec))
    if not m:
        raise ConfigurationError(f"unknown group {spec!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "S" and 1 <= n <= 5:
        return symmetric_group(n)
    if kind == "A" and 1 <= n <= 5:
        return alternating_group(n)
    if kind == "Z" and 1 <= n <= 64:
        return cyclic_group(n)
    if kind == "V" and n == 4:
        return klein_four()
    raise ConfigurationError(f"unsupported group {spec!r} (S/A up to 5, Z up to 64, V4)")


def subgroup_of(group: FiniteGroup, gens, name: str | None = None) -> FiniteGroup:
    """The subgroup generated by ``gens`` as a standalone group."""
    idx = group.closure(group.index(g) for g in gens)
    els = sorted(group.elements[i] for i in idx)
    label = name or f"<{','.join(str(g) for g in gens)}>"
    if group.modulus is not None:
        return FiniteGroup(label, tuple(els), modulus=group.modulus)
    return FiniteGroup(label, tuple(els), degree=group.degree)


def generated_subgroup(group: FiniteGroup, gens) -> frozenset:
    """Elements of the subgroup of ``group`` generated by ``gens``."""
    idx = group.closure(group.index(g) for g in gens)
    return frozenset(group.elements[i] for i in idx)


def is_transitive(subgroup, n: int) -> bool:
    """True iff the permutations in ``subgroup`` move 0 to every point of ``range(n)``."""
    perms = [p for p in subgroup if isinstance(p, Perm)]
    orbit, frontier = {0}, [0]
    while frontier:
        i = frontier.pop()
        for p in perms:
            j = p.images[i] if i < p.degree else i
            if j not in orbit:
                orbit.add(j)
                frontier.append(j)
    return len(orbit) == n


@dataclass(frozen=True, eq=False)
class ExtensionData:
    """A split extension ``A -> E -> Sigma`` with a fixed section.

    ``kernel`` holds the E-indices of A, ``projection[e]`` the Sigma-index of
    ``p(e)`` and ``section[y]`` the E-index of the chosen lift of ``y``.
    """

    name: str
    E: FiniteGroup
    sigma: FiniteGroup
    kernel: frozenset[int]
    projection: tuple[int, ...]
    section: tuple[int, ...]

    def __post_init__(self):
        E = self.E
        if any(E.mul(a, b) != E.mul(b, a) for a in self.kernel for b in self.kernel):
            raise DomainError(f"{self.name}: kernel is not abelian")
        ker = frozenset(e for e, y in enumerate(self.projection) if y == 0)
        if ker != self.kernel:
            raise DomainError(f"{self.name}: kernel differs from Ker(p)")
        if any(self.projection[self.section[y]] != y for y in range(self.sigma.order)):
            raise DomainError(f"{self.name}: section is not a right inverse of p")
        for e, f in itertools.product(range(E.order), repeat=2):
            if self.projection[E.mul(e, f)] != self.sigma.mul(self.projection[e], self.projection[f]):
                raise DomainError(f"{self.name}: projection is not a homomorphism")

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        """E-indices over each Sigma-index."""
        out = [[] for _ in range(self.sigma.order)]
        for e, y in enumerate(self.projection):
            out[y].append(e)
        return tuple(tuple(f) for f in out)

    def act(self, y: int, a: int) -> int:
        """Twisted action ``a^y = s(y) a s(y)^-1`` on E-indices of A."""
        return self.E.conj(self.section[y], a)

    @property
    def A(self) -> tuple[int, ...]:
        return tuple(sorted(self.kernel))


def _ext_from_section(name, E, sigma, kernel_gens, section_pairs) -> ExtensionData:
    kernel = E.closure(E.index(g) for g in kernel_gens)
    section = [None] * sigma.order
    for y, e in section_pairs:
        section[sigma.index(y)] = E.index(e)
    section[0] = 0
    # p is determined by the cosets s(y)A
    projection = [None] * E.order
    for y, e in enumerate(section):
        for a in kernel:
            projection[E.mul(e, a)] = y
    if None in projection or None in section:
        raise ConfigurationError(f"{name}: section does not cover E")
    return ExtensionData(name, E, sigma, frozenset(kernel), tuple(projection), tuple(section))


def standard_extension(name: str) -> ExtensionData:
    """The split extensions used for lifting: ``S3/S2``, ``A4/Z3``, ``S4/S3``.

    Sections are fixed: S2 -> S3 sends (12) to (12); Z3 -> A4 sends 1 to (123)
    and 2 to (132); S3 -> S4 is the inclusion fixing 4.
    """
    key = name.replace(" ", "").upper()
    if key == "S3/S2":
        E, sig = symmetric_group(3), symmetric_group(2)
        return _ext_from_section(
            "S3/S2", E, sig, [Perm.from_cycles("(123)", 3)],
            [(Perm.from_cycles("(12)", 2), Perm.from_cycles("(12)", 3))],
        )
    if key == "A4/Z3":
        E, sig = alternating_group(4), cyclic_group(3)
        v4 = [Perm.from_cycles(c, 4) for c in ("(12)(34)", "(13)(24)")]
        return _ext_from_section(
            "A4/Z3", E, sig, v4,
            [(1, Perm.from_cycles("(123)", 4)), (2, Perm.from_cycles("(132)", 4))],
        )
    if key == "S4/S3":
        E, sig = symmetric_group(4), symmetric_group(3)
        v4 = [Perm.from_cycles(c, 4) for c in ("(12)(34)", "(13)(24)")]
        pairs = [(g, Perm(g.images + (3,))) for g in sig.elements]
        return _ext_from_section("S4/S3", E, sig, v4, pairs)
    raise ConfigurationError(f"unknown extension {name!r} (expected S3/S2, A4/Z3, S4/S3)")


def twisted_action(ext: ExtensionData, y, a):
    """``a^y`` for a Sigma element ``y`` and an element ``a`` of the kernel."""
    yi = ext.sigma.index(y)
    ai = ext.E.index(a)
    if ai not in ext.kernel:
        raise DomainError(f"{a} is not in the kernel of {ext.name}")
    return ext.E.elements[ext.act(yi, ai)]

