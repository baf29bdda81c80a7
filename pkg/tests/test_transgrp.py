import pytest

from hgs.catalog import P3_COLUMNS, classify_p3_type
from hgs.errors import BadSpec, NotTransitive, ParseError, UnknownRecord
from hgs.transgrp import (
    TransitiveGroupRecord,
    corpus_index,
    load_corpus,
    parse_transitive_file,
    resolve_spec,
    resolve_type_spec,
    serialize_records,
)

SAMPLE = """
# a comment line
9T1 | (1,2,3,4,5,6,7,8,9)
9T2 | (1,2,3)(4,5,6)(7,8,9) ; (1,4,7)(2,5,8)(3,6,9)  # regular elementary
"""


def test_parse_basic():
    records = parse_transitive_file(SAMPLE)
    assert [rec.label for rec in records] == ["9T1", "9T2"]
    assert records[1].provenance == "regular elementary"
    assert records[0].pointed_group().order() == 9


def test_roundtrip():
    records = parse_transitive_file(SAMPLE)
    text = serialize_records(records)
    again = parse_transitive_file(text)
    for a, b in zip(records, again):
        assert a.label == b.label and a.generators == b.generators


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_transitive_file("9T1 | (1,2\n")
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError):
        parse_transitive_file("not a record\n")
    with pytest.raises(ParseError):
        parse_transitive_file("9T1 | (1,2,3,4,5,6,7,8,9)\n9T1 | (1,2,3,4,5,6,7,8,9)\n")


def test_not_transitive_rejected():
    with pytest.raises(NotTransitive) as err:
        parse_transitive_file("9T1 | (1,2,3)\n")
    assert "9T1" in str(err.value)


def test_bundled_degree9():
    recs = load_corpus(degree=9)
    idx = corpus_index(recs)
    assert set(idx) == {"9T1", "9T2"}


def test_bundled_degree27_first_five_types():
    recs = load_corpus(degree=27)
    idx = corpus_index(recs)
    for k in range(1, 6):
        assert f"27T{k}" in idx
    types = [classify_p3_type(idx[f"27T{k}"].pointed_group().group) for k in range(1, 6)]
    assert types == list(P3_COLUMNS), "labels 1-5 must match the canonical type order"
    # all records transitive of degree 27, labels unique
    assert len(idx) == len(recs)
    for rec in recs:
        assert rec.degree == 27


def test_resolve_type_spec():
    assert resolve_type_spec("C27").order == 27
    assert resolve_type_spec("C9xC3").name == "C9xC3"
    assert resolve_type_spec("C3^3").name == "C3^3"
    assert resolve_type_spec("H27").name == "H27"
    assert resolve_type_spec("G27").name == "G27"
    assert resolve_type_spec("C125").order == 125
    assert resolve_type_spec("C3xC3").order == 9
    with pytest.raises(BadSpec):
        resolve_type_spec("C12")
    with pytest.raises(BadSpec):
        resolve_type_spec("wat")


def test_resolve_spec():
    assert resolve_spec("C9xC3").is_regular()
    assert resolve_spec("C27:C9").order() == 243
    assert resolve_spec("Hol(C27)").order() == 486
    assert resolve_spec("P1@3").order() == 729
    g = resolve_spec("27T7")
    assert g.degree == 27 and g.order() % 27 == 0
    with pytest.raises(UnknownRecord):
        resolve_spec("27T999")
    with pytest.raises(BadSpec):
        resolve_spec("C27:C5")
