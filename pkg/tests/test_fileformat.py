import pytest
from hypothesis import given

from conftest import EXAMPLE1_COVERS, width2_posets
from poset_entropy.corpus import CorpusSpec, generate
from poset_entropy.errors import ParseError
from poset_entropy.fileformat import parse_poset, parse_posets, read_poset, serialize_poset, write_posets

EXAMPLE = """poset v1 n=6
elements:
a
b
c
d
e
f
covers:
""" + "".join(f"{u} < {v}\n" for u, v in EXAMPLE1_COVERS)


def test_parse_example(example1):
    assert parse_poset(EXAMPLE) == example1


def test_comments_and_whitespace(example1):
    text = "# header comment\n\n" + EXAMPLE.replace("a < b", "  a<b   # cover")
    assert parse_poset(text) == example1


@given(width2_posets())
def test_round_trip(p):
    assert parse_poset(serialize_poset(p)) == p


def test_round_trip_corpora(tmp_path):
    ps = generate(CorpusSpec("exhaustive-width2", n=5)) + generate(CorpusSpec("table1-case", case=6, param=3))
    path = tmp_path / "c.poset"
    write_posets(ps, path)
    assert parse_posets(path.read_text()) == ps


def test_read_file(tmp_path, example1):
    f = tmp_path / "x.poset"
    f.write_text(serialize_poset(example1))
    assert read_poset(f) == example1


@pytest.mark.parametrize(
    "text",
    [
        "",
        "elements:\na\n",
        "poset v1 n=2\nelements:\na\ncovers:\n",
        "poset v1 n=1\nelements:\na-b\ncovers:\n",
        "poset v1 n=2\nelements:\na\nb\ncovers:\na < c\n",
        "poset v1 n=2\nelements:\na\nb\ncovers:\na < b\nb < a\n",
        "poset v1 n=2\nelements:\na\na\ncovers:\n",
        "poset v1 n=2\nelements:\na\nb\ncovers:\na b\n",
        "poset v2 n=1\nelements:\na\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poset(text)
