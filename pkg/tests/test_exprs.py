import random
from fractions import Fraction

import pytest

from conftest import random_element
from leavitt.errors import ParseError, UnknownSymbolError
from leavitt.exprs import (
    Diff,
    EdgeSym,
    GhostSym,
    Lit,
    Prod,
    Sum,
    VertexSym,
    normalize,
    parse_expr,
)


def test_parse_shapes(toeplitz):
    tree = parse_expr(toeplitz, "1 + 2*f^*")
    assert tree == Sum(Lit(Fraction(1)), Prod(Lit(Fraction(2)), GhostSym("f")))
    tree = parse_expr(toeplitz, "u - e")
    assert tree == Diff(VertexSym("u"), EdgeSym("e"))


def test_parse_breaking_vertex_expression(double_emitter):
    tree = parse_expr(double_emitter, "(w - f*f^*)*f^*")
    assert normalize(double_emitter, tree) is not None


def test_precedence_and_parens(toeplitz):
    assert normalize(toeplitz, "1 + 2*f - f") == normalize(toeplitz, "1 + f")
    assert normalize(toeplitz, "(1 + 2*f) - f - f") == normalize(toeplitz, "1")
    assert normalize(toeplitz, "-f + f").is_zero()
    assert normalize(toeplitz, "2*-f") == normalize(toeplitz, "-2*f")
    assert normalize(toeplitz, "1/2*f + 1/2*f") == normalize(toeplitz, "f")


def test_parse_errors(toeplitz):
    for bad in ["e^* *", "e f", "2f", "(f", "f)", "", "*f", "f^", "1.5*f"]:
        with pytest.raises(ParseError):
            parse_expr(toeplitz, bad)


def test_unknown_and_misused_symbols(toeplitz, double_emitter):
    with pytest.raises(UnknownSymbolError):
        parse_expr(toeplitz, "zz")
    with pytest.raises(UnknownSymbolError):
        parse_expr(toeplitz, "u^*")
    with pytest.raises(UnknownSymbolError):
        parse_expr(double_emitter, "bv")  # bundles are not generators


def test_minted_and_primed_identifiers():
    from leavitt import examples
    from leavitt.graph import quotient_graph

    g, _ = examples.double_emitter().with_minted("bv", 1)
    assert normalize(g, "bv#0 * bv#0^*") is not None
    q = quotient_graph(examples.double_emitter(), {"u"}, {"v"})
    assert normalize(q, "f' * f'^*") is not None


def test_print_parse_roundtrip(any_graph):
    rng = random.Random(31)
    for _ in range(120):
        elem = random_element(rng, any_graph)
        assert normalize(any_graph, str(elem)) == elem
