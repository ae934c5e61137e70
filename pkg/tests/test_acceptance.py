"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time

import pytest
import sympy

from conftest import ACCEPTANCE_LINES, FIXTURES, PRESENTATION_FIXTURES, random_zgroup_text
from oracles import (
    MAX_CLASSES, brute_periodic_count, brute_point_class, brute_realizable, edge_class_count,
)
from repshift.fingroup import standard_extension
from repshift.laurent import (
    LaurentPoly, PolyMatrix, is_symmetric, parse_poly, poly_matrix_det, pullback_char_poly,
    read_matrix, split_three_blocks, three_cover_factor,
)
from repshift.lifting import lift_orbit_subshift
from repshift.representations import (
    classify_transitive, parse_rep, periodic_points, representation_shift,
)
from repshift.shiftgraph import (
    CountablyInfinite, Finite, classify, count_periodic_points, realizable_images, scc_info,
)
from repshift.zgroup import load_presentation, parse_presentation

RANDOM_PRESENTATIONS = 50
RANDOM_PULLBACKS = 200
RANDOM_BLOCK_TRIPLES = 100


@pytest.fixture
def verdict(request):
    """Yield a recorder; the criterion line is written whether or not the test passes."""
    state = {"detail": ""}

    def record(detail):
        state["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"criterion {request.node.get_closest_marker('criterion').args[0]}: " \
           f"{'PASS' if ok else 'FAIL'} {state['detail']}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line)


def load(name):
    return load_presentation(FIXTURES / name)


@pytest.mark.criterion(1)
def test_three_point_graph(verdict):
    start = time.perf_counter()
    rs = representation_shift(load("ex2_1.zg"), "Z3")
    g = rs.graph
    cls = classify(g)
    elapsed = time.perf_counter() - start
    verdict(f"Z3 graph: {g.num_vertices} vertices, {g.num_edges} edges, {cls}, {elapsed:.3f}s")
    assert (g.num_vertices, g.num_edges) == (3, 3)
    names = [v[0] for v in g.vertices]
    assert sorted((names[e.src], names[e.dst]) for e in g.edges) == [(0, 0), (1, 2), (2, 1)]
    assert cls == Finite(3)
    assert elapsed < 1.0


@pytest.mark.criterion(2)
def test_hnn_example_over_s5(verdict):
    start = time.perf_counter()
    P = load("ex3_7.zg")
    rs = representation_shift(P, "S5")
    g = rs.graph
    trivial = g.vertex_index((0, 0))
    out = g.out_edges()
    shape_ok = True
    for v in range(g.num_vertices):
        loops = {i for i in out[v] if g.edges[i].dst == v}
        to_trivial = {i for i in out[v] if g.edges[i].dst == trivial}
        shape_ok &= len(loops) == 1 and len(to_trivial) == 1 and set(out[v]) == loops | to_trivial
    cls = rs.classify()
    trans = [classify_transitive(P, r) for r in (2, 3, 4, 5)]
    elapsed = time.perf_counter() - start
    verdict(f"S5 graph: {g.num_vertices} vertices, {cls}, transitive r=2..5: "
            f"{', '.join(map(str, trans))}, {elapsed:.2f}s")
    assert shape_ok
    assert cls == CountablyInfinite
    assert trans == [Finite(0), Finite(0), Finite(0), CountablyInfinite]
    assert elapsed < 60


@pytest.mark.criterion(3)
def test_lifting_verdicts(verdict):
    start = time.perf_counter()
    s3 = standard_extension("S3/S2")
    a4 = standard_extension("A4/Z3")
    cases = [
        lift_orbit_subshift(load("ex4_4a.zg"), s3, parse_rep("cycle:(12)", s3.sigma)),
        lift_orbit_subshift(load("ex4_4b.zg"), s3, parse_rep("cycle:(12)", s3.sigma)),
        lift_orbit_subshift(load("ex4_4c.zg"), a4, parse_rep("cycle:2,1", a4.sigma)),
    ]
    surj = [o.surjective_lift_exists for o in cases]
    plain = [o.lift_exists for o in cases]
    elapsed = time.perf_counter() - start
    verdict(f"surjective={surj} plain={plain} {elapsed:.2f}s")
    assert surj == [False, False, False]
    assert plain[0] and plain[1]
    assert elapsed < 5


@pytest.mark.criterion(4)
def test_example_determinants(verdict):
    d2 = poly_matrix_det(read_matrix((FIXTURES / "ex4_4_T2.mat").read_text()), mod=3).normalized()
    T6 = read_matrix((FIXTURES / "ex4_4_T6.mat").read_text())
    d6 = poly_matrix_det(T6, mod=2).normalized()
    verdict(f"2x2 det mod 3 = {d2}, 6x6 det mod 2 = {d6}")
    assert d2 == parse_poly("s-1").reduce(3).normalized()
    assert d6 == parse_poly("(s-1)^2").reduce(2).normalized()


def _sympy_resultant(f: LaurentPoly, r: int) -> LaurentPoly:
    s, t = sympy.symbols("s t")
    expr = sum(c * t ** i for i, c in enumerate(f.coeffs))
    res = sympy.Poly(sympy.resultant(expr, t ** r - s, t), s)
    return LaurentPoly.from_coeffs(list(reversed(res.all_coeffs()))).normalized()


@pytest.mark.criterion(5)
def test_pullback_properties(verdict):
    rng = random.Random(2024)
    start = time.perf_counter()
    failures = []
    symmetric_seen = 0
    for k in range(RANDOM_PULLBACKS):
        d = rng.randint(0, 6)
        cs = [rng.randint(-9, 9) for _ in range(d + 1)]
        cs[0] = cs[0] or 1
        cs[-1] = cs[-1] or 1
        if k % 3 == 0:  # palindromic, or anti-palindromic for odd d
            sign = -1 if d % 2 and k % 2 else 1
            cs = [cs[i] if i <= d - i else sign * cs[d - i] for i in range(d + 1)]
        f = LaurentPoly.from_coeffs(cs).normalized()
        r = rng.randint(1, 4)
        out = pullback_char_poly(f, r, check=False)
        if out != _sympy_resultant(f, r):
            failures.append(("resultant", cs, r))
        if out.degree != f.degree:
            failures.append(("degree", cs, r))
        if is_symmetric(f):
            symmetric_seen += 1
            if not is_symmetric(out):
                failures.append(("symmetry", cs, r))
    elapsed = time.perf_counter() - start
    verdict(f"{RANDOM_PULLBACKS} polynomials ({symmetric_seen} symmetric), "
            f"{len(failures)} failures, {elapsed:.2f}s")
    assert not failures, failures[:5]
    assert symmetric_seen >= 20
    assert elapsed < 10


def _block(rng, m):
    return PolyMatrix([[LaurentPoly.from_coeffs([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
                        for _ in range(m)] for _ in range(m)])


@pytest.mark.criterion(6)
def test_block_factorizations(verdict):
    rng = random.Random(77)
    failures = []
    for _ in range(RANDOM_BLOCK_TRIPLES):
        m = rng.randint(1, 3)
        A, B, C = (_block(rng, m) for _ in range(3))
        T2 = PolyMatrix.from_blocks([[A, B], [B, A]])
        if poly_matrix_det(T2) != poly_matrix_det(A + B) * poly_matrix_det(A - B):
            failures.append("two-block")
        T3 = PolyMatrix.from_blocks([[A, B, C], [C, A, B], [B, C, A]])
        rep = three_cover_factor(*split_three_blocks(T3))   # asserts F Fbar is integral
        if poly_matrix_det(T3) != rep.delta_tilde * rep.FFbar:
            failures.append("three-block")
        if not (rep.FFbar - rep.delta_tilde * rep.delta_tilde).reduce(3).is_zero():
            failures.append("mod 3")
    verdict(f"{RANDOM_BLOCK_TRIPLES} block triples, {len(failures)} failures")
    assert not failures


ABELIAN = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z12", "Z24", "V4"]


def _dichotomy_corpus():
    rng = random.Random(31)
    corpus = [(name, load(name)) for name in PRESENTATION_FIXTURES]
    for i in range(RANDOM_PRESENTATIONS):
        corpus.append((f"random-{i}", parse_presentation(random_zgroup_text(rng))))
    return corpus


def _dense(g) -> bool:
    info = scc_info(g)
    return all(info.component_of[e.src] is not None and
               info.component_of[e.src] == info.component_of[e.dst] for e in g.edges)


@pytest.mark.criterion(7)
def test_dichotomies(verdict):
    rng = random.Random(5)
    problems = []
    corpus = _dichotomy_corpus()
    for name, P in corpus:
        for r in (2, 3, 4):
            if classify_transitive(P, r) == CountablyInfinite:
                problems.append(f"{name}: transitive r={r} countable")
        for group in (rng.choice(ABELIAN), rng.choice(ABELIAN)):
            g = representation_shift(P, group).graph
            if classify(g) == CountablyInfinite:
                problems.append(f"{name}/{group}: countable")
            if not _dense(g):
                problems.append(f"{name}/{group}: periodic points not dense")
    orbits = 0
    for name in PRESENTATION_FIXTURES:
        if name == "ex3_7.zg":
            continue
        P = load(name)
        for ext_name in ("S3/S2", "A4/Z3", "S4/S3"):
            ext = standard_extension(ext_name)
            for rep in periodic_points(representation_shift(P, ext.sigma), 3):
                tags = {c.tag for c in lift_orbit_subshift(P, ext, rep).component_classes()}
                orbits += 1
                if "finite" in tags and "uncountable" in tags:
                    problems.append(f"{name}/{ext_name}/{rep.steps}: mixed components")
    verdict(f"{len(corpus)} presentations, {orbits} lift orbits, {len(problems)} violations")
    assert not problems, problems


def _oracle_corpus():
    """Every graph with at most 8 vertices built from the fixtures and the random corpus."""
    out = []
    rng = random.Random(8)
    presentations = [(n, load(n)) for n in PRESENTATION_FIXTURES]
    presentations += [(f"random-{i}", parse_presentation(random_zgroup_text(rng)))
                      for i in range(20)]
    for name, P in presentations:
        for group in ("Z2", "Z3", "S3"):
            rs = representation_shift(P, group)
            out.append((f"{name}/{group}", rs.graph, rs.contributions, rs.group, None))
    for name in PRESENTATION_FIXTURES:
        if name == "ex3_7.zg":
            continue
        P = load(name)
        for ext_name in ("S3/S2", "A4/Z3"):
            ext = standard_extension(ext_name)
            for rep in periodic_points(representation_shift(P, ext.sigma), 2):
                o = lift_orbit_subshift(P, ext, rep)
                out.append((f"{name}/{ext_name}/{rep.steps}", o.graph, o.contributions, ext.E, o))
    return [c for c in out if c[1].num_vertices <= 8
            and edge_class_count(c[1], lambda i, f=c[2]: frozenset(f(i))) <= MAX_CLASSES]


@pytest.mark.criterion(8)
def test_oracle_equivalence(verdict):
    corpus = _oracle_corpus()
    mismatches = []
    for name, g, contrib, group, orbit in corpus:
        tag, count = brute_point_class(g)
        c = classify(g)
        if (c.tag, c.count) != (tag, count):
            mismatches.append(f"{name}: classify")
        for r in range(1, 7):
            if count_periodic_points(g, r) != brute_periodic_count(g, r):
                mismatches.append(f"{name}: periodic r={r}")
        images = brute_realizable(g, contrib, group)
        if realizable_images(g, contrib, group) != images:
            mismatches.append(f"{name}: realizable images")
        if orbit is not None and orbit.surjective_lift_exists != (group.lattice.whole in images):
            mismatches.append(f"{name}: surjective lift")
    lifts = sum(1 for c in corpus if c[4] is not None)
    verdict(f"{len(corpus)} graphs ({lifts} lift orbits), {len(mismatches)} mismatches")
    assert not mismatches, mismatches
