from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tautring import evaluate, psiclass, sepbdiv
from tautring.parser import (
    Atom, BinOp, Expression, Neg, Num, ParseError, Pow, Seq, evaluate_expression, parse,
    parse_class, to_text,
)


def test_product_ast():
    e = parse("psi(2)*psi(3)^2 on (1,3)")
    assert e == Expression(BinOp("*", Atom("psi", (2,)), Pow(Atom("psi", (3,)), 2)), (1, 3))


def test_precedence_and_associativity():
    e = parse("1 - 2 - 3*4^2").body
    assert e == BinOp("-", BinOp("-", Num(1), Num(2)), BinOp("*", Num(3), Pow(Num(4), 2)))
    assert evaluate_expression(parse("1 - 2 - 3*4^2")) == -49
    assert evaluate_expression(parse("-2^2")) == -4
    assert evaluate_expression(parse("(1 + 1/2)*2/3")) == 1  # 2/3 is one literal


def test_rational_literal():
    assert parse("3/4").body == Num(Fraction(3, 4))


def test_paper_t1():
    t1 = parse_class("3*sepbdiv(1,{1,2}) - psi(4)^2 on (3,4)")
    ref = 3 * sepbdiv(1, [1, 2], 3, 4) - psiclass(4, 3, 4) ** 2
    assert (t1 - ref).simplify().is_empty()


def test_eval_paper_integral():
    assert evaluate(parse_class("psi(2)*psi(3)^2 on (1,3)")) == Fraction(1, 12)
    assert evaluate(parse_class("psi(1)^2 + psi(1)*psi(2) on (1,2)")) == Fraction(1, 12)


@pytest.mark.parametrize("text, offset, kind", [
    ("psi(2)*", 7, "syntax"),
    ("psi(2", 5, "syntax"),
    ("foo(1) on (1,1)", 0, "unknown atom"),
    ("psi(1) + kappa(1,2) on (1,1)", 9, "arity"),
    ("psi(1)^-1 on (1,1)", 7, "syntax"),
    ("psi(1) # 2", 7, "syntax"),
    ("é + psi(1)", 0, "syntax"),
    ("psi(1) é", 7, "syntax"),
    ("ψ(1) é", 0, "syntax"),
])
def test_errors_carry_byte_offsets(text, offset, kind):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.kind == kind


def test_byte_offset_after_multibyte():
    # a no-break space is whitespace but two bytes long
    with pytest.raises(ParseError) as info:
        parse("1 +\u00a0?")
    assert info.value.offset == 5
    with pytest.raises(ParseError) as info:
        parse(b"psi(1) \xff")
    assert info.value.offset == 7


def test_fraction_base_is_parenthesized():
    assert to_text(parse("(3/4)^2")) == "(3/4)^2"
    assert evaluate_expression(parse("(3/4)^2")) == Fraction(9, 16)


def test_missing_context():
    with pytest.raises(ParseError) as info:
        parse_class("psi(1)")
    assert info.value.kind == "missing context"


def test_graph_atom():
    T = parse_class("graph([1,1],[[2],[3]],[(2,3)]) on (2,0)")
    (t,) = T.terms
    assert str(t.graph) == "[1, 1] [[2], [3]] [(2, 3)]"


def test_dr_atom_ambient_check():
    from tautring.decor import AmbientMismatchError
    with pytest.raises(AmbientMismatchError):
        parse_class("dr(1,[1,-1]) on (1,3)")
    assert evaluate(parse_class("dr(1,[0,0])*psi(1) on (1,2)")) == Fraction(-1, 24)


# -- printer fixpoint ----------------------------------------------------------

atoms = st.one_of(
    st.builds(lambda i: Atom("psi", (i,)), st.integers(1, 4)),
    st.builds(lambda a: Atom("kappa", (a,)), st.integers(0, 3)),
    st.just(Atom("fund", ())),
    st.builds(lambda h, s: Atom("sepbdiv", (h, Seq("{", tuple(sorted(s))))),
              st.integers(0, 2), st.sets(st.integers(1, 4), min_size=1, max_size=3)),
    st.builds(lambda a: Atom("dr", (1, Seq("[", (a, -a)))), st.integers(-3, 3)),
    st.builds(lambda p, q: Num(Fraction(p, q)), st.integers(0, 9), st.integers(1, 5)),
)


def extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 3)),
        st.builds(BinOp, st.sampled_from(["+", "-", "*"]), children, children),
    )


trees = st.recursive(atoms, extend, max_leaves=12)


@settings(max_examples=300)
@given(trees, st.one_of(st.none(), st.tuples(st.integers(0, 3), st.integers(0, 5))))
def test_print_parse_fixpoint(body, ctx):
    e = Expression(body, ctx)
    once = parse(to_text(e))
    assert parse(to_text(once)) == once
    assert to_text(parse(to_text(once))) == to_text(once)


@settings(max_examples=200)
@given(trees)
def test_printer_preserves_value(body):
    # printing must not change the meaning of purely numeric trees
    def numeric(node):
        if isinstance(node, Atom):
            return Num(Fraction(1, 2))
        if isinstance(node, Neg):
            return Neg(numeric(node.operand))
        if isinstance(node, Pow):
            return Pow(numeric(node.base), node.exp)
        if isinstance(node, BinOp):
            return BinOp(node.op, numeric(node.left), numeric(node.right))
        return node
    e = Expression(numeric(body))
    assert evaluate_expression(parse(to_text(e))) == evaluate_expression(e)
