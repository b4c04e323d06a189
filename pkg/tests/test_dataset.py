import pytest

from backend.dataset import format_dataset, load_dataset, parse_dataset
from backend.errors import DatasetParseError, InvalidInputError
from backend.set_sequence import SetSequence


def test_parse_sets_and_empty_lines():
    dataset = parse_dataset("3 4 6\n\n1 1 0\n", name="toy")
    assert dataset.name == "toy"
    assert dataset.sets == ((3, 4, 6), (), (0, 1))
    assert dataset.declared_universe is None
    assert dataset.num_sets == 3
    assert dataset.total_size == 5


def test_universe_is_inferred_without_header():
    assert parse_dataset("3 4 6\n").to_set_sequence().universe_size == 8
    assert parse_dataset("8\n").to_set_sequence().universe_size == 16


def test_header_declares_universe():
    dataset = parse_dataset("#u=16\n3 4 6\n")
    assert dataset.declared_universe == 16
    assert dataset.to_set_sequence() == SetSequence(universe_size=16, sets=((3, 4, 6),))


@pytest.mark.parametrize("header", ["#u=16", "# u = 16", "#u=16  "])
def test_header_spacing(header):
    assert parse_dataset(f"{header}\n1\n").declared_universe == 16


def test_comments_are_skipped():
    dataset = parse_dataset("#u=8\n# measured on a laptop\n1 2\n#another\n3\n")
    assert dataset.sets == ((1, 2), (3,))


def test_late_header_is_only_a_comment():
    dataset = parse_dataset("1 2\n#u=4\n3\n")
    assert dataset.declared_universe is None
    assert dataset.sets == ((1, 2), (3,))


def test_crlf_line_endings():
    assert parse_dataset("#u=8\r\n1 2\r\n\r\n3\r\n").sets == ((1, 2), (), (3,))


@pytest.mark.parametrize("separator", ["\x0b", "\x0c", "\x1c", "\x1e", "\x85", " "])
def test_only_newline_ends_a_set(separator):
    assert parse_dataset(f"1 2{separator}3\n").sets == ((1, 2, 3),)


def test_blank_lines_count_without_trailing_newline():
    assert parse_dataset("1\n\n\n2").sets == ((1,), (), (), (2,))
    assert parse_dataset("\n").sets == ((),)


def test_load_dataset_keeps_crlf_and_form_feeds(tmp_path):
    path = tmp_path / "windows.txt"
    path.write_bytes(b"#u=8\r\n1 2\x0c3\r\n\r\n4\r\n")
    assert load_dataset(path).sets == ((1, 2, 3), (), (4,))


def test_tabs_and_repeated_spaces():
    assert parse_dataset("5\t 2   9\n").sets == ((2, 5, 9),)


@pytest.mark.parametrize("text, line_number", [
    ("1 2\n3 x\n", 2),
    ("1 2\n\n-4\n", 3),
    ("1.5\n", 1),
    ("#u=0\n1\n", 1),
    ("#u=abc\n1\n", 1),
    ("#u=\n1\n", 1),
    ("#u=8\n1 2\n3 8\n", 3),
])
def test_parse_errors_name_the_line(text, line_number):
    with pytest.raises(DatasetParseError) as excinfo:
        parse_dataset(text)
    assert excinfo.value.line_number == line_number
    assert f"line {line_number}" in str(excinfo.value)


def test_declared_universe_need_not_be_power_of_two():
    seq = parse_dataset("#u=12\n1 11\n").to_set_sequence()
    assert seq.universe_size == 12


def test_empty_text_has_no_sets():
    dataset = parse_dataset("")
    assert dataset.sets == ()
    assert dataset.to_set_sequence().is_empty()


def test_format_then_parse_preserves_sequence():
    seq = SetSequence(universe_size=16, sets=((1, 2), (), (3, 15), ()))
    text = format_dataset(seq)
    assert text == "#u=16\n1 2\n\n3 15\n\n"
    assert parse_dataset(text).to_set_sequence() == seq


def test_load_dataset_uses_file_name(tmp_path):
    path = tmp_path / "sample.txt"
    path.write_text("#u=8\n3 4 6\n", encoding="utf-8")
    dataset = load_dataset(path)
    assert dataset.name == "sample.txt"
    assert dataset.sets == ((3, 4, 6),)


def test_load_dataset_reports_missing_file(tmp_path):
    with pytest.raises(InvalidInputError) as excinfo:
        load_dataset(tmp_path / "missing.txt")
    assert not isinstance(excinfo.value, DatasetParseError)
