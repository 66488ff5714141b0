import pytest

from saa.core import random_nilpotent_presentation
from saa.errors import ParseError
from saa.families import FAMILIES, FamilyLabel, instantiate_family, valid_params
from saa.fileformat import format_presentation, parse_presentation, read_presentation, write_presentation
from saa.gf import GF

P51_TEXT = """# P51 over GF(5)
field: gf(5)
dim: 10
triple y1 y2 y3 = 1
triple y1 y4 y5 = 1   # trailing comment
"""


def test_parse_example():
    P = parse_presentation(P51_TEXT)
    F = GF(5)
    assert P == instantiate_family(F, FamilyLabel("P51"))


@pytest.mark.parametrize("pk", [(3, 1), (2, 2), (7, 1), (3, 2)])
def test_round_trip(pk):
    F = GF(*pk)
    for tag in FAMILIES:
        for ps in valid_params(F, tag)[:2]:
            P = instantiate_family(F, FamilyLabel(tag, ps))
            text = format_presentation(P, "comment\nsecond line")
            assert parse_presentation(text) == P
            assert format_presentation(parse_presentation(text), "comment\nsecond line") == text
    for seed in range(5):
        P = random_nilpotent_presentation(F, 5, seed)
        assert parse_presentation(format_presentation(P)) == P


def test_file_helpers(tmp_path):
    F = GF(7)
    P = random_nilpotent_presentation(F, 4, 3)
    path = tmp_path / "p.saa"
    write_presentation(path, P, "random")
    assert read_presentation(path) == P


def test_field_override():
    P = parse_presentation(P51_TEXT, field=GF(7))
    assert P.field == GF(7)
    P = parse_presentation("dim: 4\ntriple y1 y2 x1 = 2\n", field=GF(3))
    assert P.dim == 4


def test_order_and_sign_normalized():
    F = GF(5)
    P = parse_presentation("field: gf(5)\ndim: 6\ntriple y2 y1 y3 = 1\n")
    assert P.value("y1", "y2", "y3") == F(-1)


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("field: gf(5)\ndim: 10\ntriple y1 y2 y3 = 1\ntriple y3 y2 y1 = 2\n", 4, 8, "first on line 3"),
        ("field: gf(5)\ndim: 10\ntriple x1 x1 y2 = 1\n", 3, 11, "repeated symbol"),
        ("field: gf(5)\ndim: 10\ntriple x1 z2 y2 = 1\n", 3, 11, "bad basis symbol"),
        ("field: gf(5)\ndim: 10\ntriple x1 x6 y2 = 1\n", 3, 11, "bad basis symbol"),
        ("field: gf(5)\ndim: 10\ntriple x1 y2 y3 = q\n", 3, 19, ""),
        ("field: gf(6)\ndim: 10\n", 1, 8, ""),
        ("field: gf(5)\ndim: 7\n", 2, 6, "even"),
        ("field: gf(5)\ndim: ten\n", 2, 6, "bad dimension"),
        ("field: gf(5)\ndim: 10\nhello\n", 3, 1, "unexpected line"),
        ("triple y1 y2 y3 = 1\nfield: gf(5)\ndim: 10\n", 1, 1, "before field"),
        ("field: gf(5)\nfield: gf(5)\ndim: 10\n", 2, 1, "twice"),
    ],
)
def test_errors_carry_position(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in str(info.value)


@pytest.mark.parametrize("text", ["dim: 10\n", "field: gf(5)\n"])
def test_missing_header(text):
    with pytest.raises(ParseError):
        parse_presentation(text)
