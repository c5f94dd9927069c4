import json

import pytest

from nleibniz.catalog import (abelian, chain, default_catalog, dumps_definition, example_3_11,
                              example_5_2, example_5_4, example_catalog, load_algebra,
                              parse_definition, save_algebra, supplemented,
                              supplemented_condition_violations)
from nleibniz.core import build_algebra, verify_fundamental_identity
from nleibniz.errors import BadParams, ParseError


def test_round_trip_every_entry(tmp_path):
    for name, A in default_catalog().items():
        p = tmp_path / f"{name}.json"
        save_algebra(A, p)
        assert load_algebra(p) == A, name
        assert dumps_definition(load_algebra(p)) == dumps_definition(A)


def test_named_factories():
    assert example_catalog("example_5_4", n=4, m=5, s=2).dim == 10
    assert abelian(3, 3).tensor == {}
    assert verify_fundamental_identity(chain(4, 3)).passed
    assert abelian(0, 3).dim == 0
    with pytest.raises(BadParams):
        example_catalog("nope")
    with pytest.raises(BadParams):
        example_catalog("chain", wrong=1)


def test_example_3_11_constraints():
    assert verify_fundamental_identity(example_3_11(4, 5, 2, (1, -1, 2, 3))).passed
    with pytest.raises(BadParams, match="sum"):
        example_3_11(4, 5, 2, (1, 1, 2, 3))
    with pytest.raises(BadParams):
        example_3_11(4, 5, 2, (1, -1, 0, 3))
    with pytest.raises(BadParams):
        example_3_11(4, 5, 3, (1, 2, 3))


def test_example_5_2_default_alpha_passes_for_n3():
    for m in (1, 2, 3):
        assert verify_fundamental_identity(example_5_2(3, m)).passed


def test_example_5_2_generic_alpha_fails():
    A = example_5_2(3, 1, [[1, 2, 3, 4]])
    assert not verify_fundamental_identity(A).passed


def test_example_5_4_parameter_checks():
    with pytest.raises(BadParams):
        example_5_4(4, 1, 2)
    with pytest.raises(BadParams):
        example_5_4(2, 5, 2)


def test_supplemented_condition():
    A = supplemented(3, 2)
    assert verify_fundamental_identity(A).passed
    # A_0 = E_12 and A_1 = E_11 do not commute
    alpha = [[[0, 1], [1, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [0, 0], [0, 0]]]
    assert supplemented_condition_violations(alpha, 3, 2)
    with pytest.raises(BadParams, match="violated"):
        supplemented(3, 2, alpha)


def test_parse_errors():
    with pytest.raises(ParseError, match="line 1"):
        parse_definition("{bad")
    with pytest.raises(ParseError, match="arity"):
        parse_definition(json.dumps({"dim": 2}))
    with pytest.raises(ParseError, match=r"products\[0\]"):
        parse_definition(json.dumps({"arity": 3, "dim": 2, "products": [{"args": "x"}]}))
    with pytest.raises(ParseError, match=r"value\[0\]"):
        parse_definition(json.dumps({"arity": 3, "dim": 2,
                                     "products": [{"args": [0, 0, 0], "value": [[1.5, 0]]}]}))


def test_rational_coefficients_survive():
    text = json.dumps({"arity": 3, "dim": 2,
                       "products": [{"args": [1, 0, 0], "value": [["-2/6", 1]]}]})
    A = build_algebra(parse_definition(text))
    assert str(A.tensor[(1, 0, 0)][1]) == "-1/3"
