"""Metered big-step evaluation of derivations."""

import pytest
from hypothesis import given, settings, strategies as st

from funalg.codec import FinSet, pair
from funalg.derivation import (D, Derivation, E, I, LT, Op, P, S, SMASH,
                               bpr, comp, d_parse, mu, pr, snr)
from funalg.evaluator import (Budget, BudgetExceeded, Meter, eval_memo,
                              eval_naive, evaluate, meter_line)


def test_successor_chain_meter():
    m = Meter()
    assert eval_naive(d_parse("(comp S S)"), 5, meter=m) == 7
    assert m.steps == 3
    assert meter_line(7, m).startswith("7\t3\t")
    assert len(meter_line(7, m).split("\t")) == 5


def test_basic_leaves():
    assert eval_naive(S, 4) == 5
    assert eval_naive(I, 9) == 9
    assert eval_naive(d_parse("add"), pair(3, 4)) == 7
    assert eval_naive(d_parse("add"), 0) == 0
    assert eval_naive(d_parse("mul"), pair(3, 4)) == 12
    assert eval_naive(d_parse("lt"), pair(3, 4)) == 1
    assert eval_naive(d_parse("lt"), pair(4, 3)) == 0
    assert eval_naive(E, 3) == 8
    assert eval_naive(SMASH, 3) == 16  # 2^(bitlen(3)^2) = 2^4


def test_case_analysis_d():
    for v in range(4):
        assert eval_naive(D, pair(v, pair(8, 9))) == (8 if v == 0 else 9)
    assert eval_naive(D, 0) == 0
    assert eval_naive(D, pair(1, 0)) == 0


def test_oracle_leaf():
    X = FinSet((1, 3))
    d = d_parse("X")
    assert eval_naive(d, 3, oracle=X) == 1
    assert eval_naive(d, 2, oracle=X) == 0
    assert eval_naive(d, 2) == 0  # default empty oracle


def test_pairing_node():
    assert eval_naive(P(S, I), 4) == pair(5, 4)


def test_mu_is_least_witness():
    X = FinSet((2, 5))
    # least z < 10 with z in X; the search argument is pair(z, p)
    d = mu(comp(d_parse("X"), _head_of_pair()))
    assert eval_naive(d, pair(10, 0), oracle=X) == 2
    assert eval_naive(d, pair(2, 0), oracle=X) == 2  # miss returns the bound
    assert eval_naive(d, 0, oracle=X) == 0


def _head_of_pair():
    from funalg.compiler import HD
    return HD


def test_mu_zero_and_miss():
    never = comp(d_parse("lt"), P(S, I))  # z+1 < z is false: head vs whole
    assert eval_naive(mu(never), 0) == 0


def test_pr_matches_reference():
    # f(0, p) = p; f(w+1, p) = f(w, p) + something from the tuple
    from funalg.compiler import HD, TL
    h = comp(S, comp(HD, TL))  # S(f(w,p))
    f = pr(I, h)
    for v in range(6):
        for p in range(6):
            assert eval_naive(f, pair(v, p)) == p + v
    assert eval_naive(f, 0) == 0


def test_bpr_clamps():
    from funalg.compiler import HD, ONE, TL
    fw = comp(HD, TL)
    dbl = bpr(ONE, comp(d_parse("add"), P(fw, fw)))
    # with parameter p: 2^v clamped to 0 once above p
    assert eval_naive(dbl, pair(3, 100)) == 8
    assert eval_naive(dbl, pair(4, 10)) == 0
    # once clamped, doubling zero stays zero
    assert eval_naive(dbl, pair(6, 10)) == 0


def test_snr_walks_down():
    from funalg.compiler import HD, PRED, Z_, dd
    from funalg.derivation import snr
    g = dd(HD, P(comp(S, Z_), Z_), P(Z_, comp(PRED, HD)))
    f = snr(g, Z_)
    for v in range(8):
        assert eval_naive(f, pair(v, v)) == 0
    assert eval_naive(f, 0) == 0


def test_snr_final_answer_requires_bound():
    from funalg.compiler import ONE, Z_
    # g always yields tag 1 with z = 5: answer 5 only when 5 <= p
    g = P(ONE, comp(S, comp(S, comp(S, comp(S, comp(S, Z_))))))
    f = snr(g, Z_)
    assert eval_naive(f, pair(3, 9)) == 5
    assert eval_naive(f, pair(3, 2)) == 0


def test_naive_memo_agree():
    import random
    from funalg.derivation import ARITY
    rng = random.Random(7)
    from funalg.derivation import CLASSES
    cls = CLASSES["TA"]
    order = [op for op in Op if op in cls.allowed]

    def rand_d(depth):
        leaves = [op for op in order if ARITY[op] == 0]
        if depth == 0:
            return Derivation(rng.choice(leaves))
        op = rng.choice(order)
        return Derivation(op, tuple(rand_d(depth - 1)
                                    for _ in range(ARITY[op])))

    budget = Budget(200_000, 10**6)
    checked = 0
    while checked < 60:
        d = rand_d(rng.randint(0, 3))
        x = rng.randint(0, 200)
        try:
            a = eval_naive(d, x, budget=budget)
        except BudgetExceeded:
            continue
        assert eval_memo(d, x, budget=budget) == a
        checked += 1


def test_step_budget_raises():
    heavy = mu(comp(d_parse("lt"), P(S, _head_of_pair())))
    with pytest.raises(BudgetExceeded) as e:
        eval_naive(mu(_never()), pair(10**6, 0), budget=Budget(1000, 10**6))
    assert e.value.kind == "steps"


def _never():
    from funalg.compiler import HD
    return comp(d_parse("lt"), P(S, HD))  # z+1 < z: never true


def test_bits_budget_raises():
    with pytest.raises(BudgetExceeded) as e:
        eval_naive(comp(E, E), 30, budget=Budget(10**6, 5000))
    assert e.value.kind == "bits"


def test_meter_tracks_depth_and_bits():
    m = Meter()
    eval_naive(comp(S, comp(S, comp(S, S))), 0, meter=m)
    assert m.max_depth >= 4
    m2 = Meter()
    eval_naive(E, 100, meter=m2)
    assert m2.peak_bits == 101


def test_memo_hits_counted():
    from funalg.compiler import HD
    shared = comp(S, comp(S, S))
    d = comp(d_parse("add"), P(shared, shared))
    m = Meter()
    eval_memo(d, 5, meter=m)
    assert m.memo_hits >= 1
    m2 = Meter()
    eval_naive(d, 5, meter=m2)
    assert m2.memo_hits == 0
    assert m2.steps > m.steps


def test_expansion_log_records_recursions():
    from funalg.compiler import HD, TL
    f = pr(I, comp(S, comp(HD, TL)))
    log = []
    evaluate(f, pair(4, 1), expansion_log=log)
    args = [a for node, a in log if node.op is Op.PR]
    assert args == [pair(w, 1) for w in range(4)]


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=50)
def test_determinism(x):
    d = comp(S, P(I, S))
    assert eval_naive(d, x) == eval_naive(d, x)
