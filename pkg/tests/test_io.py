import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmatching import (
    BMatchInstance,
    BMatching,
    InvalidInstance,
    ParseError,
    SolveReport,
    generate_instance,
    parse_instance,
    parse_result,
    render_instance,
    render_result,
)


def test_parse_basic_instance():
    inst = parse_instance("1 2\n2\n1 1\n5 3\n")
    assert inst.s == 1 and inst.t == 2
    assert inst.alpha == (2,) and inst.beta == (1, 1)
    assert inst.weights[0, 0] == 5 and inst.weights[0, 1] == 3


def test_parse_skips_comments_and_blanks():
    inst = parse_instance("# comment\n\n1 1\n1\n1\n0\n")
    assert inst.s == 1 and inst.t == 1 and inst.weights[0, 0] == 0


def test_parse_missing_row_reports_line():
    with pytest.raises(ParseError) as err:
        parse_instance("1 1\n1\n1\n")
    assert err.value.line == 4


def test_parse_trailing_content_rejected():
    with pytest.raises(ParseError):
        parse_instance("1 1\n1\n1\n5\nextra\n")


def test_parse_bad_token_reports_line():
    with pytest.raises(ParseError) as err:
        parse_instance("1 1\nx\n1\n5\n")
    assert err.value.line == 2


def test_parse_propagates_validation_failure():
    with pytest.raises(InvalidInstance):
        parse_instance("2 1\n1 1\n1\n4\n7\n")


def test_render_instance_canonical_bytes():
    inst = generate_instance(3, 2, 3, -9, 9, True, seed=5)
    assert render_instance(inst) == render_instance(inst)
    assert parse_instance(render_instance(inst)) == inst


def test_render_instance_integer_weights_have_no_decimal_point():
    inst = parse_instance("1 1\n1\n1\n5\n")
    assert render_instance(inst) == "1 1\n1\n1\n5\n"


def test_instance_roundtrip_float_weights():
    w = [[0.1, -2.5e-7], [3.141592653589793, 1e300]]
    inst = BMatchInstance(s=2, t=2, alpha=(1, 1), beta=(1, 1), weights=np.array(w))
    again = parse_instance(render_instance(inst))
    assert again == inst


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9), s=st.integers(1, 5), t=st.integers(1, 5))
def test_instance_roundtrip_generated(seed, s, t):
    inst = generate_instance(s, t, 3, -9, 9, integer_weights=True, seed=seed)
    assert parse_instance(render_instance(inst)) == inst


@settings(max_examples=40, deadline=None)
@given(
    rows=st.lists(
        st.lists(
            st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=3, max_size=3
        ),
        min_size=2,
        max_size=2,
    )
)
def test_instance_roundtrip_arbitrary_floats(rows):
    inst = BMatchInstance(s=2, t=3, alpha=(2, 2), beta=(1, 1, 1), weights=np.array(rows))
    assert parse_instance(render_instance(inst)) == inst


def test_render_result_fields_and_sorting():
    bm = BMatching(edges=((0, 1, 1), (0, 0, 1)), total_weight=8.0)
    report = SolveReport(total_weight=8.0, phase1_augmentations=1, phase2_augmentations=1, dual_updates=2)
    text = render_result(bm, report)
    assert text.endswith("\n")
    assert '"edges": [[0, 0, 1], [0, 1, 1]]' in text
    assert '"phase1_augmentations": 1' in text
    assert '"dual_updates": 2' in text
    assert '"solver_version"' in text


def test_render_result_empty_matching():
    text = render_result(BMatching(edges=(), total_weight=0.0))
    assert '"weight": 0.0' in text and '"edges": []' in text


def test_result_roundtrip():
    bm = BMatching(edges=((0, 0, 1), (0, 1, 2)), total_weight=11.0)
    assert parse_result(render_result(bm)) == bm


def test_parse_result_bad_json():
    with pytest.raises(ParseError):
        parse_result("{not json")
    with pytest.raises(ParseError):
        parse_result('{"weight": 1}')
    with pytest.raises(ParseError):
        parse_result('{"weight": 1, "edges": [["a", 0, 1]]}')
