from __future__ import annotations

import os
from pathlib import Path
from typing import Callable, Dict, List

import pytest

from src.diagram import Diagram, build_diagram, connected_sum, mirror
from src.gauss import parse_gauss
from src.sampler import random_corpus
from src.statesum import is_good


NAMED_CODES: Dict[str, str] = {
    "unknot": "0",
    "kink": "O1+ U1+",
    "trefoil": "O1+ U2+ O3+ U1+ O2+ U3+",
    "figure_eight": "O1+ U2- O4- U1+ O3+ U4- O2- U3+",
    "torus_5_1": "O1+ U2+ O3+ U4+ O5+ U1+ O2+ U3+ O4+ U5+",
    "hopf": "O1+ U2+ ; U1+ O2+",
    "virtual_trefoil": "O1+ O2+ U1+ U2+",
    "split_kinks": "O1+ U1+ ; O2+ U2+",
    "torus_2_4": "O1+ U2+ O3+ U4+ ; U1+ O2+ U3+ O4+",
    "torus_2_6": "O1+ U2+ O3+ U4+ O5+ U6+ ; U1+ O2+ U3+ O4+ U5+ O6+",
    "genus_one_link": "O1+ U5+ ; O5+ U2+ ; O2+ U3+ O4+ U1+ O3+ U4+",
}


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ATOMCERT_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set ATOMCERT_SLOW=1 to run full-size enumerations")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def _project_root() -> Path:
    here = Path(__file__).resolve()
    return next(p for p in here.parents if (p / "src").exists())


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    p = _project_root() / "data" / "corpus"
    if not p.exists():
        pytest.skip(f"Missing directory: {p}")
    return p


@pytest.fixture(scope="session")
def named() -> Callable[[str], Diagram]:
    """Look up a small named diagram by key of NAMED_CODES."""
    cache: Dict[str, Diagram] = {}

    def get(name: str) -> Diagram:
        if name not in cache:
            cache[name] = build_diagram(parse_gauss(NAMED_CODES[name]))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def trefoil_sum(named) -> Diagram:
    """Trefoil # mirror(trefoil), six crossings."""
    t = named("trefoil")
    return connected_sum(t, mirror(t))


@pytest.fixture(scope="session")
def random_diagrams() -> List[Diagram]:
    """Seeded sweep of random codes with at most 6 crossings."""
    return [build_diagram(code) for code in random_corpus(seed=7, count=600, max_crossings=6)]


@pytest.fixture(scope="session")
def classical_good(named) -> List[Diagram]:
    t, f, p = named("trefoil"), named("figure_eight"), named("torus_5_1")
    knots = [t, mirror(t), f, p, mirror(p)]
    sums = [connected_sum(t, t), connected_sum(t, mirror(t)), connected_sum(t, f), connected_sum(f, p)]
    links = [named(name) for name in ("hopf", "torus_2_4", "torus_2_6")]
    return knots + sums + links + [mirror(link) for link in links]


@pytest.fixture(scope="session")
def good_corpus(named, classical_good, random_diagrams) -> List[Diagram]:
    """Named good diagrams, classical and virtual, plus every good random one."""
    return classical_good + [named("genus_one_link")] + [d for d in random_diagrams if is_good(d).good]


@pytest.fixture(scope="session")
def good_virtual_5(named) -> Diagram:
    """Five-crossing good virtual link whose atom has genus 1."""
    return named("genus_one_link")
