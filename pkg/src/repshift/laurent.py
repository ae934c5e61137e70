"""Exact Laurent polynomials and polynomial matrices.

Coefficients live in one of three rings: the integers, the integers mod a
prime, or ``Z[zeta]`` with ``zeta^2 + zeta + 1 = 0``, whose elements are
pairs ``(x, y)`` meaning ``x + y zeta``.  Comparisons "up to a unit" always
go through :meth:`LaurentPoly.normalized`: shift so the lowest exponent is
0, then scale the leading coefficient to a canonical unit multiple
(positive over Z, 1 over Z/p).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InvariantViolation


# ----------------------------------------------------------------------------
# coefficient rings

class IntegerRing:
    name = "Z"
    zero, one = 0, 1

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return type(other) is IntegerRing

    def __hash__(self):
        return hash("ZZ")

    def coerce(self, x):
        return int(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def exact_div(self, a, b):
        if b == 0 or a % b:
            return None
        return a // b

    def units(self):
        return (1, -1)

    def canonical_unit(self, lead):
        return 1 if lead > 0 else -1

    def format(self, c):
        return str(c)


class ModRing:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise DomainError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"Z{p}"
        self.zero, self.one = 0, 1

    def __repr__(self):
        return f"Zmod({self.p})"

    def __eq__(self, other):
        return isinstance(other, ModRing) and other.p == self.p

    def __hash__(self):
        return hash(("mod", self.p))

    def coerce(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def exact_div(self, a, b):
        if b % self.p == 0:
            return None
        return (a * pow(b, -1, self.p)) % self.p

    def units(self):
        return tuple(range(1, self.p))

    def canonical_unit(self, lead):
        return pow(lead, -1, self.p)

    def format(self, c):
        return str(c)


class ZetaRing:
    """``Z[zeta]``, zeta a primitive cube root of unity."""

    name = "Z[zeta]"
    zero, one = (0, 0), (1, 0)
    zeta = (0, 1)

    def __repr__(self):
        return "ZZeta"

    def __eq__(self, other):
        return type(other) is ZetaRing

    def __hash__(self):
        return hash("ZZeta")

    def coerce(self, x):
        if isinstance(x, tuple):
            return (int(x[0]), int(x[1]))
        return (int(x), 0)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        x, y = a
        u, v = b
        return (x * u - y * v, x * v + y * u - y * v)

    def neg(self, a):
        return (-a[0], -a[1])

    @staticmethod
    def conj(a):
        return (a[0] - a[1], -a[1])

    @staticmethod
    def norm(a):
        x, y = a
        return x * x - x * y + y * y

    def exact_div(self, a, b):
        n = self.norm(b)
        if n == 0:
            return None
        x, y = self.mul(a, self.conj(b))
        if x % n or y % n:
            return None
        return (x // n, y // n)

    def units(self):
        z, z2 = (0, 1), (-1, -1)
        return ((1, 0), (-1, 0), z, (0, -1), z2, (1, 1))

    def canonical_unit(self, lead):
        return max(self.units(), key=lambda u: self.mul(u, lead))

    def format(self, c):
        x, y = c
        if y == 0:
            return str(x)
        if x == 0:
            return f"{y}z" if y not in (1, -1) else ("z" if y == 1 else "-z")
        return f"({x}{'+' if y > 0 else '-'}{abs(y) if abs(y) != 1 else ''}z)"


ZZ = IntegerRing()
ZZeta = ZetaRing()


def Zmod(p: int) -> ModRing:
    return ModRing(p)


# ----------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class LaurentPoly:
    """``sum(coeffs[i] * var^(low + i))`` with no zero coefficient at either end."""

    ring: object
    coeffs: tuple
    low: int = 0
    var: str = "s"

    def __post_init__(self):
        z = self.ring.zero
        c = list(self.coeffs)
        lo = self.low
        while c and c[-1] == z:
            c.pop()
        k = 0
        while k < len(c) and c[k] == z:
            k += 1
        c = c[k:]
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "low", lo + k if c else 0)

    # construction ---------------------------------------------------------

    @classmethod
    def constant(cls, c, ring=ZZ, var="s"):
        return cls(ring, (ring.coerce(c),), 0, var)

    @classmethod
    def monomial(cls, c, k, ring=ZZ, var="s"):
        return cls(ring, (ring.coerce(c),), k, var)

    @classmethod
    def from_coeffs(cls, coeffs, ring=ZZ, var="s", low=0):
        return cls(ring, tuple(ring.coerce(c) for c in coeffs), low, var)

    def zero(self) -> LaurentPoly:
        return LaurentPoly(self.ring, (), 0, self.var)

    def one(self) -> LaurentPoly:
        return LaurentPoly(self.ring, (self.ring.one,), 0, self.var)

    # basic properties -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Span ``high - low``; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def coefficient(self, k: int):
        i = k - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    # arithmetic -----------------------------------------------------------

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise DomainError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return LaurentPoly.constant(other, self.ring, self.var)

    def __add__(self, other):
        other = self._lift(other)
        if self.is_zero():
            return LaurentPoly(self.ring, other.coeffs, other.low, self.var)
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        R = self.ring
        c = [R.add(self.coefficient(k), other.coefficient(k)) for k in range(lo, hi + 1)]
        return LaurentPoly(R, tuple(c), lo, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, tuple(self.ring.neg(c) for c in self.coeffs), self.low, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return self.zero()
        R = self.ring
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == R.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return LaurentPoly(R, tuple(out), self.low + other.low, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in self.ring.units():
                inv = self.ring.exact_div(self.ring.one, self.coeffs[0])
                return LaurentPoly(self.ring, (inv,), -self.low, self.var) ** (-k)
            raise DomainError("only units have negative powers")
        out, base = self.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(self.ring, self.coeffs, self.low + k if self.coeffs else 0, self.var)

    def scale(self, c) -> LaurentPoly:
        R = self.ring
        return LaurentPoly(R, tuple(R.mul(c, x) for x in self.coeffs), self.low, self.var)

    def divmod(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Long division by ``other`` after aligning both at exponent 0.

        Leading-coefficient division must be exact in the coefficient ring;
        otherwise a DomainError is raised.
        """
        other = self._lift(other)
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        R = self.ring
        rem = list(self.coeffs)
        d = list(other.coeffs)
        if len(rem) < len(d):
            return self.zero(), self
        q = [R.zero] * (len(rem) - len(d) + 1)
        for i in range(len(q) - 1, -1, -1):
            top = rem[i + len(d) - 1]
            if top == R.zero:
                continue
            c = R.exact_div(top, d[-1])
            if c is None:
                raise DomainError("leading coefficient does not divide exactly")
            q[i] = c
            for j, dj in enumerate(d):
                rem[i + j] = R.sub(rem[i + j], R.mul(c, dj))
        quotient = LaurentPoly(R, tuple(q), self.low - other.low, self.var)
        remainder = LaurentPoly(R, tuple(rem), self.low, self.var)
        return quotient, remainder

    def exact_quotient(self, other) -> LaurentPoly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    def divides(self, other: LaurentPoly) -> bool:
        try:
            other.exact_quotient(self)
        except DomainError:
            return False
        return True

    # normalization --------------------------------------------------------

    def normalized(self) -> LaurentPoly:
        """Canonical associate: lowest exponent 0, canonical leading coefficient."""
        if self.is_zero():
            return self
        u = self.ring.canonical_unit(self.leading)
        return LaurentPoly(self.ring, self.scale(u).coeffs, 0, self.var)

    def unit_equal(self, other: LaurentPoly) -> bool:
        return self.normalized() == self._lift(other).normalized()

    def reduce(self, p: int) -> LaurentPoly:
        """Coefficients reduced into Z/p (integer polynomials only)."""
        if self.ring != ZZ:
            raise DomainError("only integer polynomials reduce mod p")
        R = Zmod(p)
        return LaurentPoly(R, tuple(R.coerce(c) for c in self.coeffs), self.low, self.var)

    def lift_to(self, ring) -> LaurentPoly:
        return LaurentPoly(ring, tuple(ring.coerce(c) for c in self.coeffs), self.low, self.var)

    def conjugate(self) -> LaurentPoly:
        if self.ring != ZZeta:
            return self
        return LaurentPoly(ZZeta, tuple(ZetaRing.conj(c) for c in self.coeffs), self.low, self.var)

    def to_integer(self) -> LaurentPoly:
        """Drop to Z[s]; every zeta-component must vanish."""
        if self.ring == ZZ:
            return self
        if self.ring != ZZeta or any(y for _, y in self.coeffs):
            raise DomainError("polynomial does not have integer coefficients")
        return LaurentPoly(ZZ, tuple(x for x, _ in self.coeffs), self.low, self.var)

    def with_var(self, var: str) -> LaurentPoly:
        return LaurentPoly(self.ring, self.coeffs, self.low, var)

    def evaluate(self, x):
        """Evaluate at an integer (integer ring only; negative powers need units)."""
        return sum(c * x ** (self.low + i) for i, c in enumerate(self.coeffs))

    # display --------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        R = self.ring
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == R.zero:
                continue
            k = self.low + i
            if R == ZZeta:
                mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
                cs = R.format(c)
                if mono and cs == "1":
                    cs = ""
                elif mono and cs == "-1":
                    cs = "-"
                terms.append((False, cs + mono))
                continue
            neg = c < 0 if R == ZZ else False
            mag = abs(c) if R == ZZ else c
            if k == 0:
                body = str(mag)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append((neg, body))
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            if body.startswith("-"):
                out += " - " + body[1:]
            else:
                out += (" - " if neg else " + ") + body
        return out


# ----------------------------------------------------------------------------
# parsing

_PTOKEN = re.compile(r"\s*(?:(\d+)|([a-z])|(\^)|([-+*()]))")


def parse_poly(text: str, ring=ZZ) -> LaurentPoly:
    """Parse ``"t^2-3t+1"``, ``"4s-1"``, ``"(s-1)^2"``, ``"s^-1 + 2"``.

    A single variable, ``t`` or ``s``, may appear; juxtaposition multiplies.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _PTOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial {text!r} at {pos}")
        toks.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    variables = {t for t in toks if t.isalpha()}
    if len(variables) > 1 or variables - {"t", "s"}:
        raise DomainError(f"polynomial {text!r} must use a single variable t or s")
    var = variables.pop() if variables else "s"
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def expr():
        if peek() in ("+", "-"):
            sign = take()
            val = term()
            val = -val if sign == "-" else val
        else:
            val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() is not None and (peek() == "*" or peek() == "(" or peek().isalnum()):
            if peek() == "*":
                take()
            val = val * factor()
        return val

    def factor():
        val = atom()
        if peek() == "^":
            take()
            sign = 1
            if peek() in ("+", "-"):
                sign = -1 if take() == "-" else 1
            tok = take() if peek() is not None else None
            if tok is None or not tok.isdigit():
                raise DomainError(f"bad exponent in {text!r}")
            val = val ** (sign * int(tok))
        return val

    def atom():
        tok = take() if peek() is not None else None
        if tok is None:
            raise DomainError(f"unexpected end of {text!r}")
        if tok.isdigit():
            return LaurentPoly.constant(int(tok), ring, var)
        if tok.isalpha():
            return LaurentPoly.monomial(1, 1, ring, var)
        if tok == "(":
            val = expr()
            if peek() != ")":
                raise DomainError(f"missing ')' in {text!r}")
            take()
            return val
        if tok == "-":
            return -factor()
        raise DomainError(f"unexpected {tok!r} in {text!r}")

    if not toks:
        raise DomainError("empty polynomial")
    out = expr()
    if i != len(toks):
        raise DomainError(f"trailing input in {text!r}")
    return out


# ----------------------------------------------------------------------------
# matrices

class PolyMatrix:
    """Rectangular matrix of Laurent polynomials over one ring."""

    def __init__(self, rows, ring=None, var=None):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DomainError("ragged matrix")
        if ring is None:
            ring = next((x.ring for r in rows for x in r if isinstance(x, LaurentPoly)), ZZ)
        if var is None:
            var = next((x.var for r in rows for x in r if isinstance(x, LaurentPoly)), "s")
        self.ring, self.var = ring, var
        self.rows = tuple(
            tuple(x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x, ring, var)
                  for x in r) for r in rows)
        for r in self.rows:
            for x in r:
                if x.ring != ring:
                    raise DomainError("matrix entries must share one ring")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "PolyMatrix([" + "; ".join(", ".join(map(str, r)) for r in self.rows) + "])"

    @classmethod
    def identity(cls, n, ring=ZZ, var="s"):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ring, var)

    @classmethod
    def zeros(cls, n, m=None, ring=ZZ, var="s"):
        return cls([[0] * (n if m is None else m) for _ in range(n)], ring, var)

    def map(self, fn) -> PolyMatrix:
        return PolyMatrix([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other):
        if self.shape != other.shape:
            raise DomainError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, q)] for r, q in zip(self.rows, other.rows)],
                          self.ring, self.var)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DomainError("shape mismatch")
        return PolyMatrix([[a - b for a, b in zip(r, q)] for r, q in zip(self.rows, other.rows)],
                          self.ring, self.var)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other):
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DomainError("shape mismatch")
        zero = LaurentPoly(self.ring, (), 0, self.var)
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    acc = acc + self.rows[i][t] * other.rows[t][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.ring, self.var)

    def scale(self, c) -> PolyMatrix:
        return self.map(lambda x: x * c)

    def reduce(self, p: int) -> PolyMatrix:
        return PolyMatrix([[x.reduce(p) for x in r] for r in self.rows], Zmod(p), self.var)

    def lift_to(self, ring) -> PolyMatrix:
        return PolyMatrix([[x.lift_to(ring) for x in r] for r in self.rows], ring, self.var)

    def block(self, i0, i1, j0, j1) -> PolyMatrix:
        return PolyMatrix([r[j0:j1] for r in self.rows[i0:i1]], self.ring, self.var)

    @classmethod
    def from_blocks(cls, blocks) -> PolyMatrix:
        rows = []
        for brow in blocks:
            for i in range(brow[0].shape[0]):
                rows.append([x for b in brow for x in b.rows[i]])
        return cls(rows, blocks[0][0].ring, blocks[0][0].var)


def poly_matrix_det(M: PolyMatrix, mod: int | None = None) -> LaurentPoly:
    """Exact determinant by fraction-free (Bareiss) elimination.

    With ``mod`` the entries are reduced first and elimination runs over
    Z/p.  Negative exponents are cleared row by row before eliminating.
    """
    n, m = M.shape
    if n != m:
        raise DomainError(f"determinant of a non-square {n}x{m} matrix")
    if mod is not None:
        M = M.reduce(mod)
    R, var = M.ring, M.var
    one = LaurentPoly(R, (R.one,), 0, var)
    if n == 0:
        return one
    rows = []
    offset = 0
    for r in M.rows:
        lows = [x.low for x in r if not x.is_zero()]
        if not lows:
            return one.zero()
        lo = min(lows)
        offset += lo
        rows.append([x.shift(-lo) for x in r])
    sign = 1
    prev = one
    for k in range(n - 1):
        if rows[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not rows[i][k].is_zero()), None)
            if swap is None:
                return one.zero()
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                rows[i][j] = num.exact_quotient(prev)
            rows[i][k] = one.zero()
        prev = pivot
    det = rows[n - 1][n - 1].shift(offset)
    return -det if sign < 0 else det


# ----------------------------------------------------------------------------
# symmetry and pullback

def is_symmetric(f: LaurentPoly) -> bool:
    """``f(t^-1)`` equals ``f(t)`` up to a unit."""
    if f.is_zero():
        raise DomainError("the zero polynomial has no symmetry type")
    c = f.coeffs
    rev = tuple(reversed(c))
    R = f.ring
    return any(tuple(R.mul(u, x) for x in c) == rev for u in R.units())


def companion_matrix(r: int, var: str = "s", ring=ZZ) -> PolyMatrix:
    """Companion matrix of ``t^r - s``: ones below the diagonal, s in the corner."""
    rows = [[0] * r for _ in range(r)]
    for i in range(1, r):
        rows[i][i - 1] = 1
    rows[0][r - 1] = LaurentPoly.monomial(1, 1, ring, var)
    return PolyMatrix(rows, ring, var)


def substitute_matrix(f: LaurentPoly, C: PolyMatrix) -> PolyMatrix:
    """``f(C)`` by Horner's rule; ``f`` must be an ordinary polynomial."""
    if f.low < 0:
        raise DomainError("substitute needs nonnegative exponents")
    n = C.shape[0]
    eye = PolyMatrix.identity(n, C.ring, C.var)
    out = PolyMatrix.zeros(n, ring=C.ring, var=C.var)
    for k in range(f.high, -1, -1):
        out = (out @ C) + eye.scale(LaurentPoly.constant(f.coefficient(k), C.ring, C.var))
    return out


def resultant(fc: list, gc: list, ring=ZZ, var="s") -> LaurentPoly:
    """Resultant of two polynomials in t whose coefficients (high to low) lie in R[var]."""
    m, n = len(fc) - 1, len(gc) - 1
    zero = LaurentPoly(ring, (), 0, var)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(fc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(gc) + [zero] * (size - n - 1 - i))
    if size == 0:
        return LaurentPoly(ring, (ring.one,), 0, var)
    return poly_matrix_det(PolyMatrix(rows, ring, var))


def pullback_char_poly(delta: LaurentPoly, r: int, check: bool = True) -> LaurentPoly:
    """Characteristic polynomial in ``s = t^r`` of a module with polynomial ``delta(t)``.

    Computed as ``det(delta(C_r))`` for the companion matrix ``C_r`` of
    ``t^r - s``; with ``check`` the result is compared against the resultant
    ``Res_t(delta(t), t^r - s)``.
    """
    if r < 1:
        raise DomainError("r must be at least 1")
    if delta.is_zero():
        raise DomainError("zero polynomial")
    d = delta.normalized()
    C = companion_matrix(r)
    out = poly_matrix_det(substitute_matrix(d.with_var("s").lift_to(ZZ), C)).normalized()
    if check:
        s = LaurentPoly.monomial(1, 1)
        fc = [LaurentPoly.constant(c) for c in reversed(d.coeffs)]
        gc = [LaurentPoly.constant(1)] + [s.zero()] * (r - 1) + [-s]
        res = resultant(fc, gc).normalized()
        if res != out:
            raise InvariantViolation(f"companion determinant {out} != resultant {res}")
    return out


# ----------------------------------------------------------------------------
# cover factorizations

def _s(var="s"):
    return LaurentPoly.monomial(1, 1, ZZ, var)


def _mod_dim(f: LaurentPoly, p: int):
    """Z/p-dimension of a module with determinant ``f``; None when infinite."""
    fp = f.reduce(p)
    return None if fp.is_zero() else fp.degree


class TwoCoverReport(NamedTuple):
    det_sum: LaurentPoly
    det_diff: LaurentPoly
    g: LaurentPoly
    g_mod3: LaurentPoly
    verdict: str


class ThreeCoverReport(NamedTuple):
    delta_tilde: LaurentPoly
    FFbar: LaurentPoly
    FFbar_mod2: LaurentPoly
    divisible_by_s1_squared: bool
    cofactor_mod2: LaurentPoly | None
    verdict: str


LIFT = "surjective lift"
NO_LIFT = "no surjective lift"
UNDETERMINED = "undetermined"


def _check_square_blocks(*blocks):
    shape = blocks[0].shape
    if shape[0] != shape[1] or any(b.shape != shape for b in blocks):
        raise DomainError("blocks must be square and of equal size")


def two_cover_factor(A: PolyMatrix, B: PolyMatrix) -> TwoCoverReport:
    """Factor ``det [[A, B], [B, A]] = det(A+B) det(A-B)`` with ``det(A-B) = (s-1) g``.

    The verdict compares Z/3-dimensions of the 2-fold cover and the base:
    a surjective S3 lift exists iff ``g`` mod 3 has positive degree, or is
    zero while ``det(A+B)`` mod 3 is not.
    """
    _check_square_blocks(A, B)
    var = A.var
    det_sum = poly_matrix_det(A + B)
    det_diff = poly_matrix_det(A - B)
    s1 = _s(var) - 1
    try:
        g = det_diff.exact_quotient(s1)
    except DomainError:
        raise DomainError(f"s-1 does not divide det(A-B) = {det_diff}") from None
    g3 = g.reduce(3)
    base_dim = _mod_dim(det_sum, 3)
    if not g3.is_zero():
        verdict = LIFT if g3.degree > 0 else NO_LIFT
    else:
        verdict = LIFT if base_dim is not None else UNDETERMINED
    return TwoCoverReport(det_sum, det_diff, g, g3.normalized(), verdict)


def three_cover_factor(A: PolyMatrix, B: PolyMatrix, C: PolyMatrix) -> ThreeCoverReport:
    """Factor the block circulant on ``A, B, C`` as ``det(A+B+C) F Fbar``.

    ``F = det(A + zeta B + zeta^2 C)`` and its conjugate are computed in
    ``Z[zeta][s]``; their product must have integer coefficients.  The verdict
    compares Z/2-dimensions: no surjective A4 lift iff ``F Fbar`` mod 2 is a
    unit multiple of ``(s-1)^2`` (nothing beyond the relative-homology factor).
    """
    _check_square_blocks(A, B, C)
    var = A.var
    z = LaurentPoly.constant((0, 1), ZZeta, var)
    z2 = LaurentPoly.constant((-1, -1), ZZeta, var)
    Az, Bz, Cz = (M.lift_to(ZZeta) for M in (A, B, C))
    delta = poly_matrix_det(A + B + C)
    F = poly_matrix_det(Az + Bz.scale(z) + Cz.scale(z2))
    Fbar = poly_matrix_det(Az + Bz.scale(z2) + Cz.scale(z))
    if Fbar != F.conjugate():
        raise InvariantViolation("det(A + z^2 B + z C) is not the conjugate of F")
    try:
        FF = (F * Fbar).to_integer()
    except DomainError:
        raise InvariantViolation("F Fbar does not have integer coefficients") from None
    ff2 = FF.reduce(2)
    s1sq = (_s(var) - 1).reduce(2) ** 2
    if ff2.is_zero():
        divisible, cof = True, None
        verdict = LIFT if _mod_dim(delta, 2) is not None else UNDETERMINED
    else:
        q, rem = ff2.divmod(s1sq)
        divisible = rem.is_zero()
        cof = q.normalized() if divisible else None
        if divisible and q.degree == 0:
            verdict = NO_LIFT
        else:
            verdict = LIFT
    return ThreeCoverReport(delta, FF, ff2.normalized(), divisible, cof, verdict)


def split_two_blocks(T: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix]:
    """``A, B`` from ``T = [[A, B], [B, A]]``."""
    n, m = T.shape
    if n != m or n % 2:
        raise DomainError("two-block matrix must be square of even size")
    h = n // 2
    A, B = T.block(0, h, 0, h), T.block(0, h, h, n)
    if T.block(h, n, 0, h) != B or T.block(h, n, h, n) != A:
        raise DomainError("matrix is not of the form [[A, B], [B, A]]")
    return A, B


def split_three_blocks(T: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
    """``A, B, C`` with the block rows of T a permutation of (A,B,C), (B,C,A), (C,A,B)."""
    n, m = T.shape
    if n != m or n % 3:
        raise DomainError("three-block matrix must be square of size divisible by 3")
    h = n // 3
    brows = [tuple(T.block(i * h, (i + 1) * h, j * h, (j + 1) * h) for j in range(3))
             for i in range(3)]
    for A, B, C in brows:
        pattern = [(A, B, C), (B, C, A), (C, A, B)]
        if sorted(map(repr, pattern)) == sorted(map(repr, brows)):
            return A, B, C
    raise DomainError("block rows are not a permutation of (A,B,C), (B,C,A), (C,A,B)")


def read_matrix(text: str) -> PolyMatrix:
    """One row per line, entries separated by ``;``; ``#`` comments."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([parse_poly(x) for x in line.split(";")])
    if not rows:
        raise DomainError("empty matrix")
    var = next((x.var for r in rows for x in r if x.degree > 0 or x.low != 0), "s")
    rows = [[x.with_var(var) for x in r] for r in rows]
    return PolyMatrix(rows, ZZ, var)
