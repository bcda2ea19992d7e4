"""Compiling quasi-terms, quasi-bounded formulas, and explicit defs."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from funalg.clausal import App, Succ, TAdd, TMul, TPair, Var, Zero
from funalg.codec import FinSet, pair
from funalg.compiler import (HD, ONE, PRED, TL, UnboundVariableError, VarCtx,
                             Z_, and_d, compile_explicit, compile_formula,
                             compile_term, dd, eq_d, eval_formula_direct,
                             eval_term_direct, lt_d, not_d, or_d, pack_args)
from funalg.compiler import (FAnd, FBoundedEx, FNot, FOr, FOracle,
                             FQuasiBoundedEx, FRel)
from funalg.corpus import corpus_defs
from funalg.derivation import I, P, S, comp
from funalg.evaluator import eval_naive
from funalg.clausal import eval_clausal, parse_cl


def test_combinator_semantics():
    for x in (0, 1, 5, pair(7, 3), 1000):
        assert eval_naive(Z_, x) == 0
        assert eval_naive(ONE, x) == 1
    assert eval_naive(HD, pair(7, 3)) == 7
    assert eval_naive(TL, pair(7, 3)) == 3
    assert eval_naive(HD, 0) == 0 and eval_naive(TL, 0) == 0
    for x in range(12):
        assert eval_naive(PRED, x) == max(0, x - 1)


def test_boolean_combinators():
    for a in (0, 1):
        for b in (0, 1):
            c = _const(a)
            d = _const(b)
            assert eval_naive(and_d(c, d), 9) == (a and b)
            assert eval_naive(or_d(c, d), 9) == (a or b)
        assert eval_naive(not_d(_const(a)), 9) == 1 - a
    for x in range(5):
        for y in range(5):
            args = pack_args([x, y])
            ctx = VarCtx.of("x", "y")
            xd = compile_term(Var("x"), ctx, {})
            yd = compile_term(Var("y"), ctx, {})
            assert eval_naive(lt_d(xd, yd), args) == (1 if x < y else 0)
            assert eval_naive(eq_d(xd, yd), args) == (1 if x == y else 0)


def _const(v):
    return ONE if v else Z_


def test_dd_selects():
    assert eval_naive(dd(Z_, ONE, Z_), 5) == 1   # condition 0 -> first
    assert eval_naive(dd(ONE, ONE, Z_), 5) == 0  # condition 1 -> second


def test_projections_of_context():
    ctx = VarCtx.of("a", "b", "c")
    vals = [4, 6, 9]
    packed = pack_args(vals)
    for name, want in zip(("a", "b", "c"), vals):
        d = compile_term(Var(name), ctx, {})
        assert eval_naive(d, packed) == want


def test_unbound_variable_rejected():
    with pytest.raises(UnboundVariableError):
        compile_term(Var("zz"), VarCtx.of("x"), {})


@given(st.integers(min_value=0, max_value=15),
       st.integers(min_value=0, max_value=15))
@settings(max_examples=40)
def test_term_compiler_matches_direct(x, y):
    t = TPair(TAdd(Var("x"), TMul(Var("y"), Var("y"))), Succ(Var("x")))
    ctx = VarCtx.of("x", "y")
    d = compile_term(t, ctx, {})
    env = {"x": x, "y": y}
    assert eval_naive(d, pack_args([x, y])) == eval_term_direct(t, env)


def test_term_with_function_application():
    bump = comp(S, comp(S, I))
    t = App("bump", TAdd(Var("x"), Var("x")))
    d = compile_term(t, VarCtx.of("x"), {"bump": bump})
    for x in range(10):
        assert eval_naive(d, x) == 2 * x + 2


def test_formula_compiler_is_boolean_and_exact():
    oracle = FinSet((1, 3, 5))
    x, y = Var("x"), Var("y")
    formulas = [
        FRel(x, "<", y),
        FRel(x, "=", y),
        FOracle(x),
        FNot(FOracle(y)),
        FOr(FRel(x, "=", y), FOracle(x)),
        FAnd(FRel(x, "<", y), FNot(FRel(TAdd(x, x), "=", y))),
        FBoundedEx("z", y, FRel(TAdd(Var("z"), Var("z")), "=", x)),
    ]
    ctx = VarCtx.of("x", "y")
    for f in formulas:
        d = compile_formula(f, ctx, {})
        for xv in range(8):
            for yv in range(8):
                got = eval_naive(d, pack_args([xv, yv]), oracle=oracle)
                want = eval_formula_direct(f, {"x": xv, "y": yv}, oracle)
                assert got in (0, 1)
                assert (got == 1) == want, (f, xv, yv)


def test_quasi_bounded_exists_uses_function_value():
    dbl = comp(S, I)  # f(x) = x + 1
    f = FQuasiBoundedEx("z", "f", Var("x"),
                        FRel(Var("z"), "=", Succ(Var("x"))))
    d = compile_formula(f, VarCtx.of("x"), {"f": dbl})
    for x in range(10):
        assert eval_naive(d, x) == 1  # z := x+1 always equals S(x)


def test_explicit_compiler_matches_interpreter():
    defs = corpus_defs()
    env = {}
    oracle = FinSet((2, 5, 9))
    for d in defs:
        if d.kind != "explicit":
            continue
        cd = compile_explicit(d, env)
        env[d.name] = cd
        for x in range(120):
            assert (eval_naive(cd, x, oracle=oracle)
                    == eval_clausal(defs, d.name, x, oracle=oracle)), (d.name, x)


def test_explicit_compiler_rejects_recursive():
    from funalg.compiler import NotExplicitError
    from funalg.corpus import corpus_def
    with pytest.raises(NotExplicitError):
        compile_explicit(corpus_def("L"), {})


def test_three_way_split_compiles():
    d = parse_cl("""
def split3 {
  split3(0) = 0;
  v = 0 -> split3((v, w)) = w;
  v = S(u) -> split3((v, w)) = (u, w);
}
""")[0]
    cd = compile_explicit(d, {})
    assert eval_naive(cd, 0) == 0
    assert eval_naive(cd, pair(0, 9)) == 9
    assert eval_naive(cd, pair(3, 9)) == pair(2, 9)
