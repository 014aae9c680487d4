from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deepcom.errors import BadParameter, CapExceeded, FileError, ParseError
from deepcom.families import direct_product, make_family
from deepcom.group import table_file_dict
from deepcom.homs import is_isomorphic
from deepcom.speclang import (Family, Fixture, Product, TableFile, estimated_order, format_spec,
                              parse_spec, realize)

from conftest import DATA


def test_examples():
    assert parse_spec("C2xC4") == Product((Family("C", 2), Family("C", 4)))
    assert parse_spec("D8") == Family("D", 8)
    assert parse_spec(" SD16 x Q8 ") == Product((Family("SD", 16), Family("Q", 8)))
    assert parse_spec("sg64_182") == Fixture("sg64_182")
    assert parse_spec("V4") == Family("V", 4)
    assert parse_spec('table:"my file.json" x C2') == Product((TableFile("my file.json"), Family("C", 2)))
    assert parse_spec("table:k.json x C2") == Product((TableFile("k.json"), Family("C", 2)))


@pytest.mark.parametrize("text", ["Q6", "D5", "SD8", "C0", "D2"])
def test_bad_parameters(text):
    with pytest.raises(BadParameter):
        parse_spec(text)


@pytest.mark.parametrize("text,offset", [("", 0), ("C", 1), ("C2x", 3), ("c2", 0), ("C2 C3", 3),
                                         ("table:", 6), ('table:"abc', 6), ("C2xé", 3),
                                         ("éC2", 0), ("C2yC3", 2)])
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.position == offset
    assert info.value.expected


def test_offset_counts_bytes_not_characters():
    with pytest.raises(ParseError) as info:
        parse_spec("table:\"é\" x ?")
    assert info.value.position == len("table:\"é\" x ".encode())


@settings(max_examples=500, deadline=None)
@given(st.text(alphabet=st.sampled_from(list('CDQSAVx0123456789 table:"sg64_182é\t')), max_size=20))
def test_parse_is_total(text):
    try:
        spec = parse_spec(text)
    except (ParseError, BadParameter):
        return
    assert parse_spec(format_spec(spec)) == spec


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=30))
def test_parse_is_total_on_arbitrary_text(text):
    try:
        parse_spec(text)
    except (ParseError, BadParameter):
        pass


leaf = st.one_of(
    st.builds(Family, st.just("C"), st.integers(1, 50)),
    st.builds(Family, st.just("D"), st.integers(2, 25).map(lambda n: 2 * n)),
    st.builds(Family, st.just("Q"), st.integers(3, 7).map(lambda m: 2 ** m)),
    st.builds(Family, st.just("SD"), st.integers(4, 7).map(lambda m: 2 ** m)),
    st.builds(Family, st.sampled_from(["S", "A"]), st.integers(1, 9)),
    st.just(Family("V", 4)),
    st.just(Fixture("sg64_182")),
    st.builds(TableFile, st.text(alphabet=st.characters(blacklist_characters='"', blacklist_categories=("Cs",)),
                                 min_size=1, max_size=10)),
)
specs = st.one_of(leaf, st.lists(leaf, min_size=2, max_size=4).map(lambda xs: Product(tuple(xs))))


@settings(max_examples=300, deadline=None)
@given(specs)
def test_round_trip(spec):
    assert parse_spec(format_spec(spec)) == spec


def test_realize_examples():
    V = realize("C2xC2")
    assert V.order == 4 and sorted(V.element_orders.tolist()) == [1, 2, 2, 2]
    assert realize("C1").order == 1
    K = realize("table:klein.json", base_dir=DATA)
    assert sorted(K.element_orders.tolist()) == [1, 2, 2, 2]
    assert realize("V4").name == "V4"
    assert realize("C2xC4").name == "C2xC4"


@pytest.mark.parametrize("a,b", [("C2", "C4"), ("D8", "C3"), ("S3", "C2"), ("Q8", "C1")])
def test_product_matches_direct_product(a, b):
    G = realize(f"{a}x{b}")
    H = direct_product(realize(a), realize(b))
    assert is_isomorphic(G, H) is not None


def test_realize_caps_and_files(tmp_path):
    with pytest.raises(CapExceeded):
        realize("S8")
    with pytest.raises(CapExceeded):
        realize("C100xC101")
    with pytest.raises(CapExceeded):
        realize("C12", cap=10)
    with pytest.raises(FileError):
        realize("table:missing.json", base_dir=tmp_path)
    path = tmp_path / "d8 table.json"
    path.write_text(json.dumps(table_file_dict(make_family("D", 8))))
    assert realize(f'table:"{path}"').order == 8
    assert estimated_order(parse_spec("C2xS4xtable:x")) is None
    assert estimated_order(parse_spec("C2xS4")) == 48
