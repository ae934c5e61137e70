"""Finitely presented Z-groups: data model, DSL parser and window bases.

Two input forms are accepted.  A *shift-periodic* presentation lists
generator families ``a, b, ...`` (standing for ``a_j, b_j`` for all integers
``j``) and relator families written with relative indices::

    zgroup
    gens a
    rel a[1] a[0]^-2          # a_{j+1} = a_j^2

*HNN data* lists a finitely presented base group B, the generators of the
subgroup U and the amalgamating map on them::

    hnn
    gens a b a' b'
    base-rel a^2
    U a b
    phi a -> a'
    phi b -> b'

Statements are separated by newlines or ``;``; ``#`` starts a comment.
A word is a juxtaposition of letters ``name[int]`` (shift-periodic) or
``name`` (HNN), each with an optional ``^int``; parenthesised sub-words may
carry an exponent too, and ``lhs = rhs`` stands for ``lhs rhs^-1``.

Downstream code only consumes :class:`BasePresentation`, the finite
presentation of a window base ``B^(n)`` together with the U-part and the
amalgamating map, produced by :func:`hnn_window_base`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConfigurationError, DomainError, PresentationSyntaxError


class Letter(NamedTuple):
    name: str
    index: int
    exp: int


Word = tuple  # tuple[Letter, ...]


def reduce_word(letters) -> Word:
    """Freely reduce: merge equal neighbours and drop zero exponents."""
    stack: list[Letter] = []
    for let in letters:
        if let.exp == 0:
            continue
        if stack and stack[-1][:2] == let[:2]:
            top = stack.pop()
            e = top.exp + let.exp
            if e:
                stack.append(Letter(top.name, top.index, e))
        else:
            stack.append(Letter(*let))
    return tuple(stack)


def invert_word(word: Word) -> Word:
    return tuple(Letter(n, i, -e) for n, i, e in reversed(word))


def shift_word(word: Word, k: int) -> Word:
    return tuple(Letter(n, i + k, e) for n, i, e in word)


def normalize_relator(word: Word) -> Word:
    """Shift a relator so its smallest index is 0."""
    word = reduce_word(word)
    if not word:
        return word
    return shift_word(word, -min(let.index for let in word))


def word_width(word: Word) -> int:
    if not word:
        return 0
    idx = [let.index for let in word]
    return max(idx) - min(idx)


def format_word(word: Word, indexed: bool = True) -> str:
    if not word:
        return "1"
    parts = []
    for name, index, exp in word:
        s = f"{name}[{index}]" if indexed else name
        if exp != 1:
            s += f"^{exp}"
        parts.append(s)
    return " ".join(parts)


@dataclass(frozen=True)
class ZGroupPresentation:
    """Shift-periodic presentation with window-normalized relator families."""

    families: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if not self.families:
            raise DomainError("at least one generator family is required")
        object.__setattr__(
            self, "relators",
            tuple(r for r in (normalize_relator(w) for w in self.relators) if r),
        )

    @property
    def window(self) -> int:
        return max((word_width(r) for r in self.relators), default=0)

    def pretty(self) -> str:
        lines = ["zgroup", "gens " + " ".join(self.families)]
        lines += ["rel " + format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HNNData:
    """Explicit HNN data ``<x, B | x^-1 u x = phi(u), u in U>``."""

    gens: tuple[str, ...]
    base_relators: tuple[Word, ...]
    u_gens: tuple[str, ...]
    phi: tuple[Word, ...]

    def __post_init__(self):
        if not self.gens:
            raise DomainError("at least one base generator is required")
        if len(self.u_gens) != len(self.phi):
            raise DomainError("every U-generator needs exactly one phi image")
        known = set(self.gens)
        for w in self.base_relators + self.phi:
            for let in w:
                if let.name not in known:
                    raise DomainError(f"unknown generator {let.name!r}")
        for u in self.u_gens:
            if u not in known:
                raise DomainError(f"unknown U-generator {u!r}")
        object.__setattr__(
            self, "base_relators",
            tuple(r for r in (reduce_word(w) for w in self.base_relators) if r),
        )
        object.__setattr__(self, "phi", tuple(reduce_word(w) for w in self.phi))

    @property
    def window(self) -> int:
        return 0

    def pretty(self) -> str:
        lines = ["hnn", "gens " + " ".join(self.gens)]
        lines += ["base-rel " + format_word(r, indexed=False) for r in self.base_relators]
        if self.u_gens:
            lines.append("U " + " ".join(self.u_gens))
        for u, w in zip(self.u_gens, self.phi):
            lines.append(f"phi {u} -> {format_word(w, indexed=False)}")
        return "\n".join(lines) + "\n"


Presentation = ZGroupPresentation | HNNData


# ----------------------------------------------------------------------------
# parser

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(
    rf"(?P<ws>\s+)|(?P<name>{_NAME})|(?P<idx>\[\s*[+-]?\d+\s*\])"
    rf"|(?P<pow>\^\s*[+-]?\d+)|(?P<lp>\()|(?P<rp>\))|(?P<eq>=)"
)


class _Stmt(NamedTuple):
    text: str
    line: int
    col: int


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for piece in line.split(";"):
            stripped = piece.strip()
            if stripped:
                lead = len(piece) - len(piece.lstrip())
                yield _Stmt(stripped, lineno, col + lead + 1)
            col += len(piece) + 1


class _WordParser:
    def __init__(self, text: str, line: int, col: int, indexed: bool, names):
        self.text, self.line, self.col0 = text, line, col
        self.indexed, self.names = indexed, names
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                self.fail(f"unexpected character {text[pos]!r}", pos)
            if m.lastgroup != "ws":
                self.toks.append((m.lastgroup, m.group(), pos))
            pos = m.end()
        self.i = 0

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise PresentationSyntaxError(msg, self.line, self.col0 + pos)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Word:
        if not self.toks:
            self.fail("empty word")
        lhs = self.sequence()
        if self.peek() == "eq":
            self.take()
            rhs = self.sequence()
            lhs = lhs + invert_word(rhs)
        if self.peek() is not None:
            self.fail(f"unexpected {self.toks[self.i][1]!r}")
        return reduce_word(lhs)

    def sequence(self) -> Word:
        out: list[Letter] = []
        while self.peek() in ("name", "lp"):
            out.extend(self.factor())
        if not out and self.peek() != "eq":
            self.fail("expected a generator")
        return tuple(out)

    def exponent(self) -> int:
        if self.peek() == "pow":
            _, text, _ = self.take()
            return int(text[1:].strip())
        return 1

    def factor(self) -> Word:
        kind, text, pos = self.take()
        if kind == "lp":
            inner = self.sequence()
            if self.peek() != "rp":
                self.fail("missing ')'")
            self.take()
            e = self.exponent()
            body = inner if e >= 0 else invert_word(inner)
            return tuple(body) * abs(e)
        if text not in self.names:
            self.fail(f"unknown generator {text!r}", pos)
        index = 0
        if self.peek() == "idx":
            _, itext, ipos = self.take()
            if not self.indexed:
                self.fail("HNN letters take no index", ipos)
            index = int(itext.strip("[] "))
        elif self.indexed:
            self.fail(f"letter {text!r} needs an index like {text}[0]", pos + len(text))
        return (Letter(text, index, self.exponent()),)


def parse_word(text: str, names, indexed: bool, line: int = 1, col: int = 1) -> Word:
    return _WordParser(text, line, col, indexed, set(names)).parse()


def parse_presentation(text: str) -> Presentation:
    """Parse DSL source into a :class:`ZGroupPresentation` or :class:`HNNData`."""
    stmts = list(_statements(text))
    if not stmts:
        raise PresentationSyntaxError("empty input", 1, 1)
    head = stmts[0]
    if head.text in ("group", "fp-group") or head.text.startswith("group "):
        raise ConfigurationError(
            "deriving HNN data from a presentation of G and an epimorphism to Z is "
            "not supported; run a Reidemeister-Schreier rewrite first and supply "
            "the result as 'zgroup' or 'hnn' input"
        )
    if head.text not in ("zgroup", "hnn"):
        raise PresentationSyntaxError("expected header 'zgroup' or 'hnn'", head.line, head.col)
    indexed = head.text == "zgroup"
    gens: list[str] = []
    rels: list[Word] = []
    u_gens: list[str] = []
    phi: dict[str, Word] = {}
    for st in stmts[1:]:
        kw, _, rest = st.text.partition(" ")
        rest_col = st.col + len(kw) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if kw == "gens":
            for m in re.finditer(r"\S+", rest):
                if not re.fullmatch(_NAME, m.group()):
                    raise PresentationSyntaxError(
                        f"bad generator name {m.group()!r}", st.line, rest_col + m.start())
                if m.group() in gens:
                    raise PresentationSyntaxError(
                        f"duplicate generator {m.group()!r}", st.line, rest_col + m.start())
                gens.append(m.group())
            if not rest:
                raise PresentationSyntaxError("empty generator list", st.line, st.col)
        elif kw == "rel" and indexed:
            rels.append(parse_word(rest, gens, True, st.line, rest_col))
        elif kw == "base-rel" and not indexed:
            rels.append(parse_word(rest, gens, False, st.line, rest_col))
        elif kw == "U" and not indexed:
            for m in re.finditer(r"\S+", rest):
                if m.group() not in gens:
                    raise PresentationSyntaxError(
                        f"unknown generator {m.group()!r}", st.line, rest_col + m.start())
                u_gens.append(m.group())
        elif kw == "phi" and not indexed:
            m = re.fullmatch(rf"({_NAME})\s*->\s*(.*)", rest)
            if not m:
                raise PresentationSyntaxError("expected 'phi <name> -> <word>'", st.line, rest_col)
            if m.group(1) not in gens:
                raise PresentationSyntaxError(
                    f"unknown generator {m.group(1)!r}", st.line, rest_col)
            phi[m.group(1)] = parse_word(m.group(2), gens, False, st.line, rest_col + m.start(2))
        else:
            raise PresentationSyntaxError(f"unknown statement {kw!r}", st.line, st.col)
    if not gens:
        raise PresentationSyntaxError("missing 'gens' statement", head.line, head.col)
    if indexed:
        return ZGroupPresentation(tuple(gens), tuple(rels))
    missing = [u for u in u_gens if u not in phi]
    extra = [u for u in phi if u not in u_gens]
    if missing or extra:
        raise DomainError(f"phi must be given exactly for the U-generators "
                          f"(missing {missing}, unexpected {extra})")
    return HNNData(tuple(gens), tuple(rels), tuple(u_gens), tuple(phi[u] for u in u_gens))


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# ----------------------------------------------------------------------------
# window bases

@dataclass(frozen=True)
class BasePresentation:
    """Finite presentation of a window base with its HNN structure.

    Generators are ``(name, index)`` pairs ordered index-major.  Relators and
    phi-images are words over generator positions, as ``(position, exponent)``
    pairs.  ``step_gens`` are the positions of index 0: the generators whose
    images one step of a bi-infinite path contributes.
    """

    gens: tuple[tuple[str, int], ...]
    relators: tuple[tuple[tuple[int, int], ...], ...]
    u_gens: tuple[int, ...]
    phi_words: tuple[tuple[tuple[int, int], ...], ...]
    step_gens: tuple[int, ...]
    n: int

    @property
    def width(self) -> int:
        """Number of steps a single edge covers."""
        return len(self.gens) // len(self.step_gens)

    def gen_name(self, pos: int) -> str:
        name, idx = self.gens[pos]
        return f"{name}{idx}"

    def pretty(self) -> str:
        def fmt(w):
            return " ".join(
                self.gen_name(p) + (f"^{e}" if e != 1 else "") for p, e in w) or "1"
        lines = ["gens " + " ".join(self.gen_name(p) for p in range(len(self.gens)))]
        lines += ["rel " + fmt(r) for r in self.relators]
        lines.append("U " + " ".join(self.gen_name(p) for p in self.u_gens))
        lines += [f"phi {self.gen_name(u)} -> {fmt(w)}" for u, w in zip(self.u_gens, self.phi_words)]
        return "\n".join(lines) + "\n"


def _encode(word: Word, pos: dict) -> tuple[tuple[int, int], ...]:
    return tuple((pos[(let.name, let.index)], let.exp) for let in word)


def _eliminate_top(P: ZGroupPresentation):
    """Solve each family's top-window generator from a relator, if possible."""
    k = P.window
    solved: dict[str, Word] = {}
    used: set[int] = set()
    for fam in P.families:
        for ri, rel in enumerate(P.relators):
            if ri in used:
                continue
            top = [i for i, let in enumerate(rel) if let.index == k]
            if len(top) != 1:
                continue
            i = top[0]
            let = rel[i]
            if let.name != fam or abs(let.exp) != 1:
                continue
            before, after = rel[:i], rel[i + 1:]
            # before * x^e * after = 1
            if let.exp == 1:
                sol = invert_word(before) + invert_word(after)
            else:
                sol = after + before
            solved[fam] = reduce_word(sol)
            used.add(ri)
            break
        else:
            raise DomainError(
                f"window n={k} is below the relator width and family {fam!r} "
                f"cannot be eliminated; use n >= {k + 1}")
    return solved, used


def hnn_window_base(P: Presentation, n: int) -> BasePresentation:
    """The window base ``B^(n)`` with its U-part and amalgamating map."""
    if n < 1:
        raise DomainError("window size must be at least 1")
    if isinstance(P, HNNData):
        return _hnn_base(P, n)
    k = P.window
    if n < k:
        raise DomainError(f"window n={n} is below the relator width k={k}")
    fams = P.families
    if n == k:
        return _eliminated_base(P, n)
    gens = tuple((f, j) for j in range(n) for f in fams)
    pos = {g: i for i, g in enumerate(gens)}
    rels = []
    for r in P.relators:
        w = word_width(r)
        for s in range(n - w):
            rels.append(_encode(shift_word(r, s), pos))
    u_gens = tuple(pos[(f, j)] for j in range(n - 1) for f in fams)
    phi = tuple(((pos[(f, j + 1)], 1),) for j in range(n - 1) for f in fams)
    step = tuple(pos[(f, 0)] for f in fams)
    return BasePresentation(gens, tuple(rels), u_gens, phi, step, n)


def _eliminated_base(P: ZGroupPresentation, n: int) -> BasePresentation:
    solved, used = _eliminate_top(P)
    fams = P.families
    gens = tuple((f, j) for j in range(n) for f in fams)
    pos = {g: i for i, g in enumerate(gens)}

    def substitute(word):
        out = []
        for let in word:
            if let.index == n:
                body = solved[let.name]
                out.extend(body * let.exp if let.exp > 0 else invert_word(body) * -let.exp)
            else:
                out.append(let)
        return reduce_word(out)

    rels = []
    for ri, r in enumerate(P.relators):
        w = word_width(r)
        for s in range(n - w + 1):
            if s == 0 and ri in used:
                continue
            sub = substitute(shift_word(r, s))
            if sub:
                rels.append(_encode(sub, pos))
    u_gens = tuple(range(len(gens)))
    phi = []
    for f_j in gens:
        f, j = f_j
        target = solved[f] if j + 1 == n else ((Letter(f, j + 1, 1),))
        phi.append(_encode(target, pos))
    step = tuple(pos[(f, 0)] for f in fams)
    return BasePresentation(gens, tuple(rels), u_gens, tuple(phi), step, n)


def _hnn_base(P: HNNData, n: int) -> BasePresentation:
    gens = tuple((g, c) for c in range(n) for g in P.gens)
    pos = {g: i for i, g in enumerate(gens)}

    def copy(word, c):
        return tuple(Letter(let.name, c, let.exp) for let in word)

    rels = [_encode(copy(r, c), pos) for c in range(n) for r in P.base_relators]
    for c in range(n - 1):
        for u, w in zip(P.u_gens, P.phi):
            amalg = reduce_word((Letter(u, c + 1, 1),) + invert_word(copy(w, c)))
            if amalg:
                rels.append(_encode(amalg, pos))
    u_gens = [pos[(g, c)] for c in range(n - 1) for g in P.gens]
    phi = [((pos[(g, c + 1)], 1),) for c in range(n - 1) for g in P.gens]
    u_gens += [pos[(u, n - 1)] for u in P.u_gens]
    phi += [_encode(copy(w, n - 1), pos) for w in P.phi]
    step = tuple(pos[(g, 0)] for g in P.gens)
    return BasePresentation(gens, tuple(rels), tuple(u_gens), tuple(phi), step, n)


def default_window(P: Presentation) -> int:
    """Smallest window for which every relator instance fits in one edge."""
    return 1 if isinstance(P, HNNData) else P.window + 1
