from __future__ import annotations

import pytest

from src.diagram import build_diagram, is_split, mirror
from src.errors import GuardExceeded, InvariantViolation
from src.gauss import GaussCode, GaussEntry
from src.gf2 import XorBasis, gf2_in_span, gf2_rank
from src.khovanov import HomologyTable, cube, euler_check, homology, lemma_certificate, thickness
from src.statesum import atom, bracket


TREFOIL_RANKS = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1, (3, 7): 1, (3, 9): 1}


def test_gf2_basis():
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert gf2_rank([]) == 0
    assert gf2_in_span(0b101, [0b011, 0b110])
    assert not gf2_in_span(0b001, [0b011, 0b110])
    basis = XorBasis()
    assert basis.add(0b100)
    assert not basis.add(0b100)
    assert basis.reduce(0b110) == 0b010


def test_trefoil_homology(named):
    table = homology(cube(named("trefoil")))
    assert table.rank == TREFOIL_RANKS
    assert table.total_rank == 6
    report = thickness(table)
    assert report.diagonals == (1, 3)
    assert report.thickness == 2
    assert not report.parity_anomaly


@pytest.mark.parametrize("name", ["unknot", "kink"])
def test_unknot_diagrams_have_unknot_homology(named, name):
    assert homology(cube(named(name))).rank == {(0, -1): 1, (0, 1): 1}


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure_eight", "virtual_trefoil", "hopf", "kink"])
def test_euler_characteristic_matches_bracket(named, name):
    d = named(name)
    complex_ = cube(d)
    table = homology(complex_)
    assert table.euler() == complex_.chain_euler()
    check = euler_check(d, table, bracket(d))
    assert check.matches, (check.homology_side, check.bracket_side)


def test_virtual_trefoil_has_zero_map_edges(named):
    complex_ = cube(named("virtual_trefoil"))
    assert complex_.zero_edges > 0
    assert homology(complex_).total_rank > 0


def test_square_zero_on_corpus(classical_good, random_diagrams):
    for d in classical_good + random_diagrams[:80]:
        if d.n <= 10:
            cube(d)


def test_lemma_on_good_diagrams(good_corpus):
    for d in good_corpus:
        if d.n > 10:
            continue
        lemma = lemma_certificate(d)
        assert lemma.good
        assert lemma.a_extreme_is_cycle, d.code
        assert lemma.b_extreme_is_nonboundary, d.code


def test_lemma_bound_and_sandwich(good_corpus):
    for d in good_corpus:
        data = atom(d)
        if d.n > 10 or not data.orientable or is_split(d):
            continue
        complex_ = cube(d)
        lemma = lemma_certificate(d, complex_=complex_)
        t = thickness(homology(complex_)).thickness
        g = data.genus
        assert lemma.implied_thickness_lower_bound == abs(1 - g) + 1
        assert lemma.implied_thickness_lower_bound <= t
        assert g <= t <= 2 + g, d.code


def test_trefoil_lemma_bidegrees(named):
    lemma = lemma_certificate(named("trefoil"))
    assert lemma.holds
    assert lemma.a_bidegree == (0, 1)
    assert lemma.b_bidegree == (3, 9)
    assert lemma.implied_thickness_lower_bound == 2


def test_guard(named):
    with pytest.raises(GuardExceeded):
        cube(named("torus_5_1"), guard=4)
    assert cube(named("torus_5_1"), guard=None).n == 5


def test_table_frame(named):
    frame = homology(cube(named("trefoil"))).to_frame()
    assert list(frame.columns) == ["i", "j", "rank"]
    assert len(frame) == 6
    assert frame["rank"].sum() == 6


def test_thickness_edge_cases():
    with pytest.raises(InvariantViolation):
        thickness(HomologyTable(rank={}))
    odd = thickness(HomologyTable(rank={(0, 0): 1, (0, 1): 1}))
    assert odd.parity_anomaly
    assert odd.thickness == 2


def test_genus_one_link_is_thick(named):
    d = named("genus_one_link")
    data = atom(d)
    assert data.orientable and data.genus == 1
    complex_ = cube(d)
    report = thickness(homology(complex_))
    assert report.diagonals == (1, 3, 5)
    assert report.thickness == 3
    lemma = lemma_certificate(d, complex_=complex_)
    assert lemma.holds
    assert lemma.implied_thickness_lower_bound == 1


def test_thickness_ignores_grading_shifts(named):
    table = homology(cube(named("figure_eight")))
    base = thickness(table)
    for di, dj in [(1, 2), (0, 2), (-3, 4), (2, -6)]:
        shifted = HomologyTable(rank={(i + di, j + dj): r for (i, j), r in table.rank.items()})
        assert thickness(shifted).thickness == base.thickness


def test_homology_survives_reencoding(named):
    for name in ("trefoil", "figure_eight", "hopf"):
        d = named(name)
        ranks = homology(cube(d)).rank
        top = max(d.crossing_ids)
        rotated = GaussCode(tuple(comp[1:] + comp[:1] for comp in d.code.components))
        relabelled = GaussCode(tuple(
            tuple(GaussEntry(top + 1 - e.crossing_id, e.passage, e.sign) for e in comp)
            for comp in d.code.components
        ))
        for code in (rotated, relabelled):
            assert homology(cube(build_diagram(code))).rank == ranks
        assert thickness(homology(cube(mirror(d)))).thickness == thickness(HomologyTable(rank=ranks)).thickness
