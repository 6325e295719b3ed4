import math

import pytest
from hypothesis import given, strategies as st

from bcpath.docformat import DocumentError, ProblemDocument, emit_problem_document, parse_problem_document
from bcpath.path import validate_path


def test_minimal_document_defaults():
    doc = parse_problem_document(b"x = 0 0 0\ny = 2 0 0\n")
    assert doc.kappa_max == 1.0
    assert doc.required_length is None and not doc.has_gradient and doc.segments == ()


def test_kappa_zero_is_a_schema_error():
    with pytest.raises(DocumentError) as err:
        parse_problem_document("x = 0 0 0\ny = 2 0 0\nkappa_max = 0\n")
    assert err.value.code == "schema" and (err.value.line, err.value.column) == (3, 1)


def test_three_segment_round_trip_is_bit_identical():
    text = ("x = 0 0 0\ny = 3.1 1.9 0\n"
            "segment = arc 0 1 1 -90 60\n"
            "segment = line 0.8660254037844386 0.5 1.9 2.0\n"
            "segment = line 1.9 2.0 3.1 1.9\n")
    doc = parse_problem_document(text)
    again = parse_problem_document(emit_problem_document(doc))
    assert again == doc
    assert emit_problem_document(again) == emit_problem_document(doc)
    for a, b in zip(doc.segments, again.segments):
        assert all(u.hex() == v.hex() for u, v in zip(a.values, b.values))


@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=5, max_size=5),
       st.floats(0.01, 100.0), st.floats(1e-3, 1e3))
def test_emit_parse_is_exact_for_any_floats(vals, kappa, length):
    doc = ProblemDocument((0.0, 0.0, vals[0]), (vals[1], vals[2], vals[3]), kappa, length)
    if doc.x[:2] == doc.y[:2]:
        return
    assert parse_problem_document(emit_problem_document(doc)) == doc


def test_fractions_and_comments():
    doc = parse_problem_document("# header\nx = 0 0 0  # start\ny = 2 0 0\nvertical_drop = 70\nmax_gradient = 1/7\n")
    assert doc.max_gradient == 1 / 7 and doc.vertical_drop == 70.0


@pytest.mark.parametrize("text, code, line, col", [
    ("x = 0 0 0\ny = 2 0\n", "syntax", 2, 1),
    ("x = 0 0 0\ny = 2 0 0\nspeed = 3\n", "schema", 3, 1),
    ("x = 0 0 0\nx = 1 0 0\ny = 2 0 0\n", "schema", 2, 1),
    ("x = 0 0 0\ny = 2 zero 0\n", "syntax", 2, 7),
    ("x = 0 0 0\ny = 2 0 0\nsegment = spline 1 2\n", "schema", 3, 11),
    ("x = 0 0 0\ny = 2 0 0\nsegment = line 0 0 1\n", "syntax", 3, 11),
    ("x = 0 0 0\ny = 2 0 0\nsegment = arc 0 0 0 0 90\n", "schema", 3, 11),
    ("x = 0 0 0\n", "schema", 0, 0),
    ("x = 0 0 0\ny = 0 0 360\n", "schema", 2, 1),
    ("x = 0 0 0\ny = 2 0 0\nvertical_drop = 1\n", "schema", 3, 1),
    ("x = 0 0 0\ny = 2 0 0\nrequired_length = -1\n", "schema", 3, 1),
    ("x = 0 0 0\ny = 2 0 inf\n", "schema", 2, 9),
    ("x = 0 0 0\nno equals sign\n", "syntax", 2, 1),
])
def test_errors_are_anchored(text, code, line, col):
    with pytest.raises(DocumentError) as err:
        parse_problem_document(text)
    assert (err.value.code, err.value.line, err.value.column) == (code, line, col)


def test_invalid_utf8():
    with pytest.raises(DocumentError) as err:
        parse_problem_document(b"x = 0 0 0\ny = \xff\n")
    assert err.value.code == "syntax"


def test_path_is_carried_into_the_canonical_frame():
    doc = parse_problem_document("x = 1 1 90\ny = 1 3 90\nkappa_max = 2\nsegment = line 1 1 1 3\n")
    inst = doc.instance()
    path = doc.canonical_path()
    assert path.total_length == pytest.approx(4.0, abs=1e-12)
    assert validate_path(path, inst).valid
    assert inst.x.position == (0.0, 0.0) and math.isclose(inst.y.position[0], 4.0)
