import pytest

from matroidlab import emit_matrix, parse_matrix, pg
from matroidlab.errors import MatrixFormatError


def test_roundtrip_fano():
    f = pg(3, 2)
    text = emit_matrix(f)
    assert text.splitlines()[0] == "2 3 7"
    again = parse_matrix(text)
    assert again.columns == f.columns
    assert emit_matrix(again) == text


def test_roundtrip_gf9():
    m = pg(2, 9)
    assert parse_matrix(emit_matrix(m)).columns == m.columns


def test_parse_empty():
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix("")
    assert err.value.line == 1


def test_parse_bad_header():
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix("2 3\n")
    assert err.value.line == 1


def test_parse_bad_field_order():
    with pytest.raises(MatrixFormatError):
        parse_matrix("6 1 1\n0\n")


def test_parse_row_count_mismatch():
    with pytest.raises(MatrixFormatError):
        parse_matrix("2 3 2\n1 0\n0 1\n")


def test_parse_entry_count_positioned():
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix("2 2 3\n1 0 1\n0 1\n")
    assert err.value.line == 3


def test_parse_entry_out_of_range_positioned():
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix("3 2 2\n1 0\n0 5\n")
    assert err.value.line == 3
    assert err.value.column == 2


def test_parse_non_integer_positioned():
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix("2 1 2\n1 x\n")
    assert err.value.line == 2
    assert err.value.column == 2
