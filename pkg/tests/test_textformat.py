import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_twist.corpus import EXAMPLES, example_text
from periodic_twist.textformat import (
    ParseError,
    TensorRef,
    TensorTerm,
    format_path_expr,
    parse_document,
    parse_path_expr,
    parse_tensor_expr,
    serialize_document,
)


def test_product_order_and_signs():
    poly = parse_path_expr("a*b - 2*c + e_1")
    assert poly == {("a", "b"): 1, ("c",): -2, ("e_1",): 1}


def test_parenthesised_expansion():
    assert parse_path_expr("(a + b)*c") == {("a", "c"): 1, ("b", "c"): 1}


def test_tensor_expression_with_reference():
    terms = parse_tensor_expr("2*a (x) e_1 - $y")
    t = terms[0]
    assert isinstance(t, TensorTerm)
    assert {k: t.coeff * v for k, v in t.left.items()} == {("a",): 2}
    assert t.right == {("e_1",): 1}
    assert terms[1] == TensorRef("y", -1)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_document("algebra X\n  field 3\n  relation a**b\nend\n")
    assert err.value.line == 3
    assert err.value.col > 0


def test_unclosed_block():
    with pytest.raises(ParseError, match="missing 'end'"):
        parse_document("algebra X\n  field 3\n")


def test_unknown_statement():
    with pytest.raises(ParseError, match="unknown statement"):
        parse_document("frobnicate X\n")


@pytest.mark.parametrize("name", EXAMPLES)
def test_corpus_round_trip(name):
    stmts = parse_document(example_text(name))
    canon = serialize_document(stmts)
    assert parse_document(canon) == stmts
    assert serialize_document(parse_document(canon)) == canon


names = st.sampled_from(["a", "b", "alpha'", "gamma2", "e_1"])
monomials = st.lists(names, min_size=1, max_size=4).map(tuple)
polys = st.dictionaries(monomials, st.integers(-4, 4).filter(bool), min_size=1, max_size=5)


@given(polys)
def test_path_expr_round_trip(poly):
    assert parse_path_expr(format_path_expr(poly)) == poly
