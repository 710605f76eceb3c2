import pytest

from pcsample.io import (
    InputFormatError,
    PcRecord,
    format_dimacs,
    format_records,
    format_sample_csv,
    implicit_model,
    parse_dimacs,
    parse_faults,
    parse_records,
    parse_sample_csv,
)
from pcsample.logic import Configuration, FeatureModel


def test_dimacs_names_and_synthetic():
    m = parse_dimacs("c comment\nc 1 A\nc 3 C\np cnf 3 2\n1 -2 0\n-3\n2 0\n")
    assert m.names == ("A", "VAR_2", "C")
    assert m.clauses == ((1, -2), (-3, 2))


def test_dimacs_round_trip(busybox_model):
    assert parse_dimacs(format_dimacs(busybox_model)) == busybox_model


@pytest.mark.parametrize("text", ["1 2 0\n", "p cnf 2 1\n1 5 0\n", "p cnf 2 1\n1 x 0\n", "p dnf 1 1\n"])
def test_dimacs_errors(text):
    with pytest.raises(InputFormatError):
        parse_dimacs(text)


def test_records_round_trip():
    recs = [PcRecord("a/b.c", 1, "1"), PcRecord("a/b.c", 2, "(A || B) && C")]
    assert parse_records(format_records(recs)) == recs
    with pytest.raises(InputFormatError):
        parse_records("a.c\tx\tA\n")


def test_implicit_model_order():
    assert implicit_model(["1", "B || A", "!C && B"]).names == ("B", "A", "C")


def test_sample_csv_round_trip(busybox_model):
    configs = [Configuration([1, -2, 3, -4, 5, -6, 7])]
    text = format_sample_csv(configs, busybox_model)
    assert text.splitlines()[1] == "+,-,+,-,+,-,+"
    assert parse_sample_csv(text, busybox_model) == configs


def test_sample_csv_reordered_columns():
    m = FeatureModel(("A", "B"))
    assert parse_sample_csv("B,A\n+,-\n", m) == [Configuration([-1, 2])]


@pytest.mark.parametrize("text,needle", [
    ("A,C\n+,-\n", "C"),
    ("A,B\n+\n", "row 2"),
    ("A,B\n+,x\n", r"not \+ or -"),
    ("", "empty"),
])
def test_sample_csv_errors(text, needle):
    with pytest.raises(InputFormatError, match=needle):
        parse_sample_csv(text, FeatureModel(("A", "B")))


def test_faults_format():
    assert parse_faults("f1\tA && B\n\nf2\t!C\n") == [("f1", "A && B"), ("f2", "!C")]
    with pytest.raises(InputFormatError):
        parse_faults("just-a-formula\n")
