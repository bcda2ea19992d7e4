"""Derivation AST, S-expressions, enumeration, and polynomial bounds."""

import random

import pytest
from hypothesis import given, strategies as st

from funalg.derivation import (ARITY, CLASSES, DA, DEA, Derivation,
                               EnumerationError, I, Op, P, PRA, ParseError,
                               PolyBound, S, SA, TA, UnboundedOperatorError,
                               comp, d_parse, d_print, derivation_at,
                               enumerate_derivations, index_of, mu,
                               poly_bound, pr, snr, validate)


def test_arity_enforced():
    with pytest.raises(ValueError):
        Derivation(Op.COMP, (S,))
    with pytest.raises(ValueError):
        Derivation(Op.S, (S,))
    with pytest.raises(ValueError):
        Derivation(Op.MU, (S, S))


def test_class_membership():
    assert validate(comp(S, S), DA)
    assert validate(mu(S), DA)
    from funalg.derivation import bpr, E
    assert not validate(bpr(S, S), DA)
    assert validate(bpr(S, S), SA)
    assert validate(snr(S, S), TA)
    assert not validate(snr(S, S), SA)
    assert validate(E, DEA)
    assert not validate(E, DA)
    assert validate(pr(S, S), PRA)


def test_sexpr_examples():
    assert d_print(comp(S, S)) == "(comp S S)"
    assert d_parse("(comp S S)") == comp(S, S)
    assert d_parse("X").op is Op.ORACLE
    assert d_print(mu(comp(S, S))) == "(mu (comp S S))"


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as e:
        d_parse("(comp S")
    assert e.value.offset is not None
    with pytest.raises(ParseError):
        d_parse("(comp S S S)")  # wrong arity
    with pytest.raises(ParseError):
        d_parse("(frob S S)")
    with pytest.raises(ParseError):
        d_parse("")


def _random_derivation(rng, cls, depth):
    order = [op for op in Op if op in cls.allowed]
    leaves = [op for op in order if ARITY[op] == 0]
    if depth == 0:
        return Derivation(rng.choice(leaves))
    op = rng.choice(order)
    kids = tuple(_random_derivation(rng, cls, depth - 1)
                 for _ in range(ARITY[op]))
    return Derivation(op, kids)


def test_sexpr_roundtrip_random():
    rng = random.Random(0)
    for _ in range(300):
        d = _random_derivation(rng, PRA, rng.randint(0, 5))
        assert d_parse(d_print(d)) == d


def test_enumeration_first_element_is_oracle():
    assert d_print(derivation_at(0, DA)) == "X"


def test_enumeration_prefix_roundtrip():
    for cname in ("DA", "SA", "TA", "PRA"):
        cls = CLASSES[cname]
        for i, d in enumerate(enumerate_derivations(cls, 400)):
            assert index_of(d, cls) == i


def test_enumeration_children_precede_parents():
    for d in enumerate_derivations(DA, 400):
        i = index_of(d, DA)
        for ch in d.children:
            assert index_of(ch, DA) < i


def test_enumeration_rejects_foreign_class():
    from funalg.derivation import bpr
    with pytest.raises(EnumerationError):
        index_of(bpr(S, S), DA)
    with pytest.raises(EnumerationError):
        derivation_at(-1, DA)


def test_enumeration_accepts_class_names():
    assert derivation_at(0, "DA") == derivation_at(0, DA)
    with pytest.raises(EnumerationError):
        derivation_at(0, "NOPE")


def test_poly_bound_examples():
    assert poly_bound(I)(7) == 7
    assert poly_bound(comp(S, S))(5) == 7
    assert poly_bound(P(I, I))(1) == 16  # (1 + 1 + 2)^2


def test_poly_bound_rejects_unbounded():
    from funalg.derivation import E, SMASH
    for d in (E, SMASH, pr(S, S)):
        with pytest.raises(UnboundedOperatorError):
            poly_bound(d)


def test_poly_bound_monotone_and_sound_spot():
    from funalg.evaluator import eval_naive
    rng = random.Random(3)
    for _ in range(60):
        d = _random_derivation(rng, TA, rng.randint(0, 3))
        b = poly_bound(d)
        for x in (0, 1, 5, 17, 100):
            assert eval_naive(d, x) <= b(x)


@given(st.integers(min_value=0, max_value=500))
def test_poly_bound_str_evaluates_consistently(n):
    b = poly_bound(P(comp(S, I), I))
    # printable form is a polynomial in n agreeing with the callable
    expr = str(b).replace("n", str(n))
    assert eval(expr) == b(n)


def test_node_count():
    assert S.node_count() == 1
    assert comp(S, P(I, I)).node_count() == 5
