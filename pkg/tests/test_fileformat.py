"""AlgebraFile emit/parse: byte-identical round trips and located diagnostics."""
import json

import pytest

from gradedalg.corpus import full_corpus, graded_central_simple_corpus
from gradedalg.fileformat import AlgebraFileError, emit, parse


@pytest.mark.parametrize("name", sorted(full_corpus()))
def test_round_trip_byte_identical(name):
    A = full_corpus()[name]
    text = emit(A)
    B = parse(text)
    assert emit(B) == text
    assert B.same_table(A) and B.names == A.names and B.name == A.name


def test_round_trip_with_base():
    for case in graded_central_simple_corpus():
        text = emit(case.algebra)
        B = parse(text)
        assert emit(B) == text and B.base == case.algebra.base


def test_structure_entries_sorted():
    doc = json.loads(emit(full_corpus()["H_Q"]))
    keys = [tuple(e[:3]) for e in doc["structure"]]
    assert keys == sorted(keys)
    assert all(len(pair) == 2 for pair in doc["unit"])


def _mutate(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


@pytest.mark.parametrize("old,new,field,message", [
    ('[0, 0, 0, 1, 1]', '[0, 0, 0, 1, 0]', "structure[0]", "zero denominator"),
    ('[0, 0, 0, 1, 1]', '[0, 0, 9, 1, 1]', "structure[0]", "out of range"),
    ('"kind": "Q"', '"kind": "R"', "field", "expected"),
    ('"degree": [1, 0]', '"degree": [1]', "basis[1].degree", "2 integers"),
    ('"unit": [[1, 1], [0, 1], [0, 1], [0, 1]]', '"unit": [[1, 1]]', "unit", "4 coefficients"),
    ('"degree": [1, 1]', '"degree": [0, 0]', "structure", "not a graded algebra"),
])
def test_diagnostics(old, new, field, message):
    text = emit(full_corpus()["H_Q"])
    with pytest.raises(AlgebraFileError) as info:
        parse(_mutate(text, old, new))
    assert info.value.field == field and message in info.value.message
    assert info.value.line is not None


def test_invalid_json_reports_line():
    with pytest.raises(AlgebraFileError) as info:
        parse('{\n "field": {"kind": "Q"},\n oops\n}')
    assert info.value.line == 3


def test_unsorted_entries_rejected():
    text = emit(full_corpus()["H_Q"])
    doc = json.loads(text)
    doc["structure"].reverse()
    with pytest.raises(AlgebraFileError, match="sorted"):
        parse(json.dumps(doc))


def test_provenance_must_reproduce_table():
    text = emit(full_corpus()["H_Q"])
    with pytest.raises(AlgebraFileError) as info:
        parse(_mutate(text, '"a": [-1, 1]', '"a": [-2, 1]'))
    assert info.value.field == "provenance"
