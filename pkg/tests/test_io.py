import pytest
from hypothesis import given
from hypothesis import strategies as st

from quandles.constructors import dihedral, order5_f3, q62
from quandles.io import (ParseError, detect_format, format_labeled_table,
                         format_permutation_list, format_table, parse_quandle, parse_table,
                         read_quandle, write_quandle)
from quandles.perm import Permutation
from quandles.quandle import QuandleAxiomError, relabel


def test_parse_errors_have_position():
    with pytest.raises(ParseError) as exc:
        parse_table("")
    assert exc.value.line == 1
    with pytest.raises(ParseError) as exc:
        parse_table("2\n1 x\n2 2\n")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(ParseError) as exc:
        parse_table("2\n1 3\n2 2\n")
    assert exc.value.column == 3
    with pytest.raises(ParseError):
        parse_table("3\n1 1 1\n")
    with pytest.raises(ParseError):
        parse_table("2\n1 1 1\n2 2\n")


def test_comments_are_skipped():
    q = parse_quandle("# R3\n3\n1 3 2\n# mid\n3 2 1\n2 1 3\n")
    assert q == dihedral(3)


def test_detect_format():
    assert detect_format(format_table(q62())) == "table"
    assert detect_format(format_permutation_list(q62())) == "perms"


def test_axiom_failure_in_perm_format():
    with pytest.raises(QuandleAxiomError):
        parse_quandle("3\n()\n(1 3)\n(1 2)\n")


def test_labeled_table_length_check():
    with pytest.raises(ValueError):
        format_labeled_table(dihedral(3), ["a", "b"])


@given(st.permutations(range(1, 7)), st.sampled_from(["table", "perms"]))
def test_round_trip(img, fmt):
    q = relabel(q62(), Permutation(img))
    text = format_table(q) if fmt == "table" else format_permutation_list(q)
    assert parse_quandle(text) == q


def test_file_round_trip(tmp_path):
    for fmt in ("table", "perms"):
        p = tmp_path / f"order5.{fmt}"
        write_quandle(order5_f3(), p, fmt)
        assert read_quandle(p) == order5_f3()
