import random

import pytest

from repshift import _kernels_py, kernels
from repshift.fingroup import make_group
from repshift.zgroup import hnn_window_base, load_presentation
from conftest import FIXTURES

compiled = pytest.importorskip("repshift._kernels")


def _random_case(rng):
    G = make_group(rng.choice(["S3", "S4", "A4", "Z6", "V4"]))
    ngens = rng.randint(1, 4)
    relators = []
    for _ in range(rng.randint(0, 3)):
        relators.append([(rng.randrange(ngens), rng.choice([-2, -1, 1, 2, 3]))
                         for _ in range(rng.randint(1, 4))])
    cands = [sorted(rng.sample(range(G.order), rng.randint(1, G.order))) for _ in range(ngens)]
    return G, ngens, relators, cands


def test_compiled_matches_pure():
    rng = random.Random(5)
    for _ in range(200):
        G, ngens, rels, cands = _random_case(rng)
        args = ([list(r) for r in G.table], list(G.inv), ngens, rels, cands, 10**7)
        assert compiled.enumerate_homs(*args) == _kernels_py.enumerate_homs(*args)
        assign = [rng.randrange(G.order) for _ in range(ngens)]
        for w in rels:
            assert compiled.eval_word(args[0], args[1], assign, w) == \
                _kernels_py.eval_word(args[0], args[1], assign, w)


def test_budget_is_reported():
    G = make_group("S4")
    table = [list(r) for r in G.table]
    sols, nodes, complete = _kernels_py.enumerate_homs(table, list(G.inv), 3, [], [list(range(24))] * 3, 100)
    assert not complete and nodes > 100
    sols2, nodes2, complete2 = compiled.enumerate_homs(table, list(G.inv), 3, [], [list(range(24))] * 3, 100)
    assert (complete2, nodes2) == (False, nodes)


def test_fixture_enumeration_agrees():
    B = hnn_window_base(load_presentation(FIXTURES / "ex3_7.zg"), 1)
    G = make_group("A5")
    args = ([list(r) for r in G.table], list(G.inv), len(B.gens),
            [list(r) for r in B.relators], [list(range(G.order))] * len(B.gens), 10**9)
    assert compiled.enumerate_homs(*args) == _kernels_py.enumerate_homs(*args)


def test_backend_selection():
    assert kernels.BACKEND in ("compiled", "python")
