from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import settings

from repshift.zgroup import load_presentation

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

FIXTURES = Path(str(resources.files("repshift") / "fixtures"))
PRESENTATION_FIXTURES = sorted(p.name for p in FIXTURES.glob("*.zg"))


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture
def load():
    return lambda name: load_presentation(FIXTURES / name)


# (families, window) shapes of the random corpus; families * window <= 2
# keeps the vertex sets small enough for S4 in pure Python
SHAPES = [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1)]


def random_zgroup_text(rng: random.Random) -> str:
    """A random shift-periodic presentation with small relators.

    Every family occurs in at least one relator.
    """
    nf, k = rng.choice(SHAPES)
    fams = ["a", "b"][:nf]
    rels = []
    for r in range(rng.randint(nf, nf + 1)):
        word = []
        for j in range(rng.randint(1, 4)):
            f = fams[r] if j == 0 and r < nf else rng.choice(fams)
            i = rng.randint(0, k)
            e = rng.choice([-2, -1, 1, 2, 3])
            word.append(f"{f}[{i}]^{e}")
        rels.append("rel " + " ".join(word))
    return "zgroup\ngens " + " ".join(fams) + "\n" + "\n".join(rels) + "\n"


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
