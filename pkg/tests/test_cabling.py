from __future__ import annotations

import pytest

from src.cabling import cable, cable_census, sub_crossing_id
from src.diagram import carter_genus, is_split
from src.errors import GuardExceeded, PreconditionError
from src.statesum import atom, is_good


def test_sub_crossing_ids_are_row_major():
    assert sub_crossing_id(0, 0, 0, 2) == 1
    assert sub_crossing_id(0, 1, 0, 2) == 3
    assert sub_crossing_id(2, 1, 1, 2) == 12
    ids = {sub_crossing_id(c, a, b, 3) for c in range(2) for a in range(3) for b in range(3)}
    assert ids == set(range(1, 19))


def test_one_cable_is_identity(named):
    d = named("trefoil")
    assert cable(d, 1) is d


def test_bad_multiplicity(named):
    with pytest.raises(PreconditionError):
        cable(named("trefoil"), 0)


def test_cable_limit(named):
    with pytest.raises(GuardExceeded):
        cable(named("trefoil"), 3, limit=20)


def test_trefoil_two_cable(named):
    d = cable(named("trefoil"), 2)
    assert d.n == 12
    assert d.component_count == 2
    assert d.signs == (1,) * 12
    assert carter_genus(d) == 0
    assert not is_split(d)


def test_kink_two_cable_census(named):
    d = cable(named("kink"), 2)
    assert d.n == 4
    assert carter_genus(d) == 0
    data = atom(d)
    assert (data.a_circles, data.b_circles) == (4, 2)
    census = cable_census(named("kink"), 2)
    assert census.predicted_cells == census.actual_cells == 6
    assert census.agrees


def test_trefoil_sum_census(trefoil_sum):
    census = cable_census(trefoil_sum, 2)
    assert census.crossings == 24
    assert census.actual_cells == census.predicted_cells == 16
    assert census.chi_cable == -8
    assert census.usual_estimate == 76
    assert census.cable_bound == 76
    assert census.span is None and census.estimate_attained is None


@pytest.mark.slow
def test_trefoil_sum_cable_span(trefoil_sum):
    """Full 2^24-state enumeration."""
    census = cable_census(trefoil_sum, 2, with_span=True, guard=None, threads=4)
    assert census.span == 76
    assert census.estimate_attained
    assert not census.leading_vanishes and not census.lowest_vanishes


def test_cable_span_of_small_diagram(named):
    census = cable_census(named("trefoil"), 2, with_span=True)
    # n = 3, chi = 2: 2 * 6 * 3 + 2 * 2 * 2 - 4
    assert census.usual_estimate == 40
    assert census.span == census.cable_bound == 40
    assert census.estimate_attained


def test_kink_cable_loses_extreme_term(named):
    census = cable_census(named("kink"), 2, with_span=True)
    assert census.span is not None
    assert census.span < census.cable_bound
    assert census.lowest_vanishes


def test_census_matches_prediction_on_corpus(good_corpus, random_diagrams):
    for d in good_corpus + random_diagrams[:100]:
        if d.n == 0:
            continue
        for m in (2, 3):
            census = cable_census(d, m)
            assert census.agrees, d.code


def test_goodness_is_inherited_by_cables(good_corpus):
    small = [d for d in good_corpus if d.n <= 6]
    assert len(small) >= 20
    for d in small:
        assert is_good(cable(d, 2)).good, d.code
        assert is_good(cable(d, 3)).good, d.code
