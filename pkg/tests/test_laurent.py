import random

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import FIXTURES
from oracles import fraction_det, leibniz_det
from repshift.errors import DomainError
from repshift.laurent import (
    LIFT, NO_LIFT, LaurentPoly, PolyMatrix, ZZeta, companion_matrix,
    is_symmetric, parse_poly, poly_matrix_det, pullback_char_poly, read_matrix, resultant,
    substitute_matrix,
    split_three_blocks, split_two_blocks, three_cover_factor, two_cover_factor,
)

s_sym, t_sym = sympy.symbols("s t")
S = LaurentPoly.monomial(1, 1)

coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=5)
polys = st.builds(lambda c, low: LaurentPoly.from_coeffs(c, low=low), coeff_lists, st.integers(-2, 2))
zeta_elems = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def to_sympy(f: LaurentPoly, var=s_sym):
    return sum(c * var ** (f.low + i) for i, c in enumerate(f.coeffs))


def from_sympy(expr, var=s_sym) -> LaurentPoly:
    p = sympy.Poly(sympy.expand(expr), var)
    return LaurentPoly.from_coeffs(list(reversed(p.all_coeffs())))


# ---------------------------------------------------------------------------
# rings and polynomials

@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == f.zero()


@given(polys, polys)
def test_multiplication_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


@given(polys, polys)
def test_exact_division(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_quotient(g) == f


@given(zeta_elems, zeta_elems, zeta_elems)
def test_zeta_ring(a, b, c):
    R = ZZeta
    z = R.zeta
    assert R.add(R.add(R.mul(z, z), z), R.one) == R.zero
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.norm(R.mul(a, b)) == R.norm(a) * R.norm(b)
    if R.norm(b):
        assert R.exact_div(R.mul(a, b), b) == a


@given(polys)
def test_normalization(f):
    if f.is_zero():
        return
    n = f.normalized()
    assert n.low == 0 and n.leading > 0
    assert (-f.shift(3)).normalized() == n
    assert f.unit_equal(n)


def test_normalization_mod_p():
    f = parse_poly("2s^3 + s").reduce(3)
    n = f.normalized()
    assert n.leading == 1 and n.low == 0
    assert str(n) == "s^2 + 2"


@given(st.lists(zeta_elems, min_size=1, max_size=4))
def test_zeta_normalization_is_unit_invariant(cs):
    f = LaurentPoly.from_coeffs(cs, ring=ZZeta)
    if f.is_zero():
        return
    for u in ZZeta.units():
        assert f.scale(u).normalized() == f.normalized()


@pytest.mark.parametrize("text,expected", [
    ("t^2-3t+1", [1, -3, 1]),
    ("4s-1", [-1, 4]),
    ("(s-1)^2", [1, -2, 1]),
    ("-s", [0, -1]),
    ("2*s^2 + 3 s", [0, 3, 2]),
    ("7", [7]),
])
def test_parse(text, expected):
    assert parse_poly(text).coeffs == LaurentPoly.from_coeffs(expected).coeffs


def test_parse_negative_exponent_and_display():
    f = parse_poly("s^-1 + 2")
    assert f.low == -1 and f.coeffs == (1, 2)
    assert str(parse_poly("t^2-3t+1")) == "t^2 - 3t + 1"
    assert str(parse_poly("-s^2 + 1")) == "-s^2 + 1"


@pytest.mark.parametrize("bad", ["", "s+", "s t", "x^2", "(s-1", "s^", "2^s"])
def test_parse_errors(bad):
    with pytest.raises(DomainError):
        parse_poly(bad)


def test_symmetry():
    assert is_symmetric(parse_poly("t^2-3t+1"))
    assert is_symmetric(parse_poly("t^2-1"))
    assert not is_symmetric(parse_poly("4s-1"))
    with pytest.raises(DomainError):
        is_symmetric(LaurentPoly.from_coeffs([]))


# ---------------------------------------------------------------------------
# determinants

small_entries = st.builds(
    lambda c, low: LaurentPoly.from_coeffs(c, low=low),
    st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(-1, 1))


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small_entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(rows):
    M = PolyMatrix(rows)
    zero, one = LaurentPoly.from_coeffs([]), LaurentPoly.from_coeffs([1])
    assert poly_matrix_det(M) == leibniz_det(M.rows, zero, one)


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_constant_determinants_match_rationals(rows):
    d = poly_matrix_det(PolyMatrix(rows))
    assert d.coefficient(0) == fraction_det(rows)
    assert d.is_zero() or d.degree == 0


@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(small_entries, min_size=n, max_size=n), min_size=n, max_size=n)),
    st.sampled_from([2, 3, 5]))
def test_mod_p_determinant_is_reduction(rows, p):
    M = PolyMatrix(rows)
    assert poly_matrix_det(M, mod=p) == poly_matrix_det(M).reduce(p)


@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.lists(zeta_elems, min_size=1, max_size=2),
                                min_size=n, max_size=n), min_size=n, max_size=n)))
def test_zeta_determinant_matches_leibniz(rows):
    M = PolyMatrix([[LaurentPoly.from_coeffs(c, ring=ZZeta) for c in r] for r in rows], ZZeta)
    zero = LaurentPoly(ZZeta, (), 0)
    one = LaurentPoly(ZZeta, ((1, 0),), 0)
    assert poly_matrix_det(M) == leibniz_det(M.rows, zero, one)


def test_det_rejects_non_square():
    with pytest.raises(DomainError):
        poly_matrix_det(PolyMatrix([[1, 2]]))


# ---------------------------------------------------------------------------
# pullback

def test_companion_matrix():
    C = companion_matrix(3)
    assert C[0, 2] == S and C[1, 0] == C[2, 1] == LaurentPoly.constant(1)
    # C^3 = s I
    C3 = C @ C @ C
    assert C3 == PolyMatrix.identity(3).scale(S)


@pytest.mark.parametrize("poly,r,expected", [
    ("t^2-3t+1", 2, "s^2 - 7s + 1"),
    ("t^2-3t+1", 3, "s^2 - 18s + 1"),
    ("2t-1", 3, "8s - 1"),
    ("t-1", 4, "s - 1"),
    ("t+1", 2, "s - 1"),
])
def test_pullback_values(poly, r, expected):
    assert str(pullback_char_poly(parse_poly(poly), r)) == expected


def _sympy_pullback(f: LaurentPoly, r: int) -> LaurentPoly:
    res = sympy.resultant(to_sympy(f.normalized(), t_sym), t_sym ** r - s_sym, t_sym)
    return from_sympy(res).normalized()


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(1, 4))
def test_pullback_matches_sympy_resultant(cs, r):
    f = LaurentPoly.from_coeffs(cs)
    if f.is_zero():
        return
    assert pullback_char_poly(f, r, check=False) == _sympy_pullback(f, r)


def test_internal_resultant():
    f = [LaurentPoly.constant(c) for c in (1, -3, 1)]
    g = [LaurentPoly.constant(1), S.zero(), -S]
    assert resultant(f, g).normalized() == parse_poly("s^2-7s+1")


def test_pullback_rejects_bad_input():
    with pytest.raises(DomainError):
        pullback_char_poly(parse_poly("t-1"), 0)
    with pytest.raises(DomainError):
        pullback_char_poly(LaurentPoly.from_coeffs([]), 2)


# ---------------------------------------------------------------------------
# cover factorizations

def _fixture_matrix(name):
    return read_matrix((FIXTURES / name).read_text())


def test_two_by_two_example():
    T = _fixture_matrix("ex4_4_T2.mat")
    assert poly_matrix_det(T) == parse_poly("s^2-4s+3")
    assert poly_matrix_det(T, mod=3).normalized() == parse_poly("s-1").reduce(3)
    A, B = split_two_blocks(T)
    rep = two_cover_factor(A, B)
    assert rep.g == LaurentPoly.constant(1)
    assert rep.verdict == NO_LIFT


def test_six_by_six_example():
    T = _fixture_matrix("ex4_4_T6.mat")
    assert poly_matrix_det(T, mod=2).normalized() == parse_poly("(s-1)^2").reduce(2)
    rep = three_cover_factor(*split_three_blocks(T))
    assert rep.delta_tilde.unit_equal(parse_poly("s-4"))
    assert rep.FFbar == parse_poly("(s-1)^2")
    assert rep.divisible_by_s1_squared and rep.verdict == NO_LIFT


def test_verdicts_for_larger_cofactors():
    # A - B = (s-1)(s+1): g = s+1 survives mod 3
    A = PolyMatrix([[parse_poly("s^2")]])
    B = PolyMatrix([[LaurentPoly.constant(1)]])
    assert two_cover_factor(A, B).verdict == LIFT
    # F Fbar = s^4 + s^2 + 1, which is (s^2 + s + 1)^2 mod 2
    z = PolyMatrix([[LaurentPoly.constant(0)]])
    rep = three_cover_factor(PolyMatrix([[parse_poly("s^2")]]), z, PolyMatrix([[parse_poly("-1")]]))
    assert rep.verdict == LIFT


def test_two_cover_requires_s_minus_one():
    A = PolyMatrix([[parse_poly("s")]])
    B = PolyMatrix([[parse_poly("2")]])
    with pytest.raises(DomainError):
        two_cover_factor(A, B)


def test_block_splitting_errors():
    with pytest.raises(DomainError):
        split_two_blocks(PolyMatrix([[1, 2], [3, 4]]))
    with pytest.raises(DomainError):
        split_three_blocks(PolyMatrix([[1, 2, 3], [1, 2, 3], [1, 2, 3]]))


def _random_block(rng, m, var="s"):
    return PolyMatrix([[LaurentPoly.from_coeffs([rng.randint(-2, 2) for _ in range(rng.randint(1, 2))])
                        for _ in range(m)] for _ in range(m)])


def test_random_block_identities():
    rng = random.Random(3)
    for _ in range(25):
        m = rng.randint(1, 2)
        A, B, C = (_random_block(rng, m) for _ in range(3))
        T2 = PolyMatrix.from_blocks([[A, B], [B, A]])
        assert poly_matrix_det(T2) == poly_matrix_det(A + B) * poly_matrix_det(A - B)
        T3 = PolyMatrix.from_blocks([[A, B, C], [C, A, B], [B, C, A]])
        rep = three_cover_factor(A, B, C)
        assert poly_matrix_det(T3) == rep.delta_tilde * rep.FFbar
        assert split_three_blocks(T3) in ((A, B, C), (B, C, A), (C, A, B))


def test_mod_two_congruence_of_two_cover_factors():
    rng = random.Random(12)
    for _ in range(40):
        m = rng.randint(1, 3)
        A, B = _random_block(rng, m), _random_block(rng, m)
        plus, minus = poly_matrix_det(A + B), poly_matrix_det(A - B)
        assert plus.reduce(2) == minus.reduce(2)


def test_presentation_matrix_pullback():
    """det A(C_r) equals the pullback of det A(t)."""
    rng = random.Random(21)
    checked = 0
    for _ in range(40):
        m, r = rng.randint(1, 2), rng.randint(1, 3)
        A = [[LaurentPoly.from_coeffs([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))], var="t")
              for _ in range(m)] for _ in range(m)]
        delta = poly_matrix_det(PolyMatrix(A, var="t"))
        if delta.is_zero():
            continue
        C = companion_matrix(r)
        big = PolyMatrix.from_blocks([[substitute_matrix(f, C) for f in row] for row in A])
        assert poly_matrix_det(big).normalized() == pullback_char_poly(delta, r)
        checked += 1
    assert checked > 20
