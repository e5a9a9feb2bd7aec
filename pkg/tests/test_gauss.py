from __future__ import annotations

import pytest

from src.errors import GaussCodeError
from src.gauss import GaussCode, GaussEntry, Passage, parse_gauss, serialize_gauss


def test_parse_trefoil():
    code = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+")
    assert len(code.components) == 1
    assert len(code.components[0]) == 6
    assert code.crossing_ids() == [1, 2, 3]
    first = code.components[0][0]
    assert first == GaussEntry(1, Passage.OVER, 1)
    assert str(first) == "O1+"


def test_components_by_semicolon_blank_line_and_comments():
    text = """
    # Hopf link
    O1+ U2+   # first component

    U1+ O2+
    """
    code = parse_gauss(text)
    assert len(code.components) == 2
    assert parse_gauss("O1+ U2+ ; U1+ O2+") == code


def test_loop_token_is_crossingless_component():
    code = parse_gauss("0")
    assert code.components == ((),)
    code = parse_gauss("O1+ U1+ ; 0")
    assert code.components[1] == ()


def test_loop_token_must_stand_alone():
    with pytest.raises(GaussCodeError):
        parse_gauss("0 O1+ U1+")


@pytest.mark.parametrize("text, crossing_id, fragment", [
    ("O1+ O2+ U2+", 1, "only once"),
    ("O1+ O1+", 1, "two over"),
    ("O1+ U1-", 1, "sign mismatch"),
    ("O1+ U1+ O1+", 1, "3 times"),
])
def test_pairing_invariants(text, crossing_id, fragment):
    with pytest.raises(GaussCodeError) as info:
        parse_gauss(text)
    assert info.value.crossing_id == crossing_id
    assert fragment in str(info.value)


def test_syntax_error_reports_offset():
    with pytest.raises(GaussCodeError) as info:
        parse_gauss("O1+ X2 U1+")
    assert info.value.position == 4
    assert "offset 4" in str(info.value)


def test_empty_code_rejected():
    with pytest.raises(GaussCodeError):
        parse_gauss("# nothing here\n")


@pytest.mark.parametrize("cid, sign", [(0, 1), (1, 0), (2, 2)])
def test_entry_validation(cid, sign):
    with pytest.raises(GaussCodeError):
        GaussEntry(cid, Passage.UNDER, sign)


def test_serialize_is_inverse_of_parse():
    text = "O1+ U2- O4- U1+ O3+ U4- O2- U3+ ; 0"
    code = parse_gauss(text)
    assert serialize_gauss(code) == text
    assert parse_gauss(serialize_gauss(code)) == code


def test_passage_flip():
    assert Passage.OVER.flipped() is Passage.UNDER
    assert Passage.UNDER.flipped() is Passage.OVER


def test_validate_returns_self():
    code = GaussCode(((GaussEntry(1, Passage.OVER, -1), GaussEntry(1, Passage.UNDER, -1)),))
    assert code.validate() is code
