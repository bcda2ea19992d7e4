"""Program transformations on recursive clausal definitions.

reduce_recursive_to_pr translates an arbitrary recursive clausal
definition (identity measure) into primitive recursion: an explicit
tagged dispatcher, a stack-stepper function iterated by PR, and a
final read-off.

reduce_bounded_nested_to_snr translates a bounded nested definition into
a single application of special nested recursion, encoding the pending
partial results of a clause as digits of one number so the machine state
strictly decreases.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import clausal as cl
from .clausal import (AppEq, Clause, ClausalDef, Literal, Succ, TPair, Var,
                      VarPair, VarZero, Zero, check_recursive_restrictions)
from .compiler import (HD, ONE, PRED, TL, Z_, UnboundVariableError,
                       compile_explicit, const, dd, eq_d, lt_d)
from .derivation import (ADD, Derivation, I, LT, MUL, S, comp, mu, P, pr,
                         snr)
from .evaluator import Budget, eval_memo
from .derivation import PolyBound


class ReductionError(ValueError):
    pass


class BoundViolation(ValueError):
    pass


@dataclass(frozen=True)
class ReductionArtifacts:
    h_def: ClausalDef       # the explicit tagged dispatcher
    f1_def: ClausalDef      # the stack stepper
    J: int                  # max recursive calls per clause
    mu_desc: str            # iteration-count expression in x
    result: Derivation


# Stepper applications grouped per iteration in the J = 1 reduction.
_GROUP = 8


# --- small derivation arithmetic helpers -------------------------------------


def add_d(a: Derivation, b: Derivation) -> Derivation:
    return comp(ADD, P(a, b))


def mul_d(a: Derivation, b: Derivation) -> Derivation:
    return comp(MUL, P(a, b))


def sub_d(a: Derivation, b: Derivation) -> Derivation:
    """Modified subtraction a - b (0 when negative), via minimization:
    the least z < S(a) with a < S(b + z)."""
    test = lt_d(comp(a, TL), comp(S, add_d(comp(b, TL), HD)))
    return comp(mu(test), P(comp(S, a), I))


def div_d(a: Derivation, b: Derivation) -> Derivation:
    """Integer quotient a div b (for b > 0), via minimization: the least
    q < S(a) with a < S(q) * b."""
    test = lt_d(comp(a, TL), mul_d(comp(S, HD), comp(b, TL)))
    return comp(mu(test), P(comp(S, a), I))


def select_d(k: Derivation, options: list[Derivation]) -> Derivation:
    """Dispatch on the value of k: options[j] when k = j (last as else)."""
    acc = options[-1]
    for j in reversed(range(len(options) - 1)):
        acc = dd(eq_d(k, const(j)), acc, options[j])
    return acc


# --- the tagged dispatcher ---------------------------------------------------


def _fresh_names(taken: set[str], bases: list[str]) -> list[str]:
    out = []
    for b in bases:
        name, i = b, 0
        while name in taken:
            i += 1
            name = f"{b}{i}"
        taken.add(name)
        out.append(name)
    return out


def build_dispatcher(d: ClausalDef) -> tuple[ClausalDef, int]:
    """The explicit dispatcher h for a recursive definition.

    h((x, c)) inspects the partial-results list c = (z1,...,zi,0) holding
    the values of the first i recursive calls of the clause applying to x.
    It yields (0, t) when the (i+1)-th recursive call on argument t still
    needs computing, and (1, y) when the clause's result y is determined.
    """
    sd = cl.complete_to_strict(d)
    argvar = sd.clauses[0].pattern.name
    J = max(sum(1 for l in c.literals
                if isinstance(l, AppEq) and l.fname == d.name)
            for c in sd.clauses)
    if J == 0:
        raise ReductionError(f"{d.name} is not recursive")
    taken = {argvar}
    for c in sd.clauses:
        taken |= cl._clause_all_vars(c)
    v, *cs = _fresh_names(taken, ["v"] + [f"c{i}" for i in range(J + 1)])
    clauses: list[Clause] = [Clause(Var(v), (VarZero(v),), Zero())]
    seen: set = set()

    def emit(c: Clause):
        key = (c.literals, c.result)
        if key not in seen:
            seen.add(key)
            clauses.append(c)

    for c in sd.clauses:
        lits: list[Literal] = [VarPair(v, argvar, cs[0])]
        i = 0
        for lit in c.literals:
            if isinstance(lit, AppEq) and lit.fname == d.name:
                emit(Clause(Var(v), tuple(lits + [VarZero(cs[i])]),
                            TPair(Zero(), lit.arg)))
                lits.append(VarPair(cs[i], lit.out, cs[i + 1]))
                i += 1
            else:
                lits.append(lit)
        emit(Clause(Var(v), tuple(lits), TPair(Succ(Zero()), c.result)))
    h_def = ClausalDef(f"{d.name}_h", tuple(clauses), "explicit")
    return h_def, J


# --- reduction to primitive recursion ----------------------------------------


def _build_app1(name: str, J: int) -> ClausalDef:
    """Append one element to a list of statically bounded length J - 1:
    app1((d, z)) = d ++ (z, 0), unrolled clause by clause."""
    clauses = []
    for k in range(J):
        # pattern ((u1,(...,(uk,0))), z) -> (u1,...,uk,z,0)
        dpat: cl.QuasiTerm = Zero()
        for i in range(k, 0, -1):
            dpat = TPair(Var(f"u{i}"), dpat)
        res: cl.QuasiTerm = TPair(Var("z"), Zero())
        for i in range(k, 0, -1):
            res = TPair(Var(f"u{i}"), res)
        clauses.append(Clause(TPair(dpat, Var("z")), (), res))
    return ClausalDef(name, tuple(clauses), "explicit")


def _build_f1(name: str, hname: str, app1name: str) -> ClausalDef:
    """The stack stepper: pushes a pending recursive argument, pops a
    computed value into the caller's list, or idles on a finished stack."""
    x, c, s1, r, a, z, t1, t2, w, dv, s2 = (
        "x", "c", "s1", "r", "a", "z", "t1", "t2", "w", "d", "s2")
    top = TPair(Var(x), Var(c))
    same = TPair(top, Var(s1))
    happ = AppEq(hname, top, r)
    clauses = [
        Clause(Zero(), (), Zero()),
        Clause(TPair(Zero(), Var(s1)), (), TPair(Zero(), Var(s1))),
        Clause(same, (happ, VarZero(r)), same),
        Clause(same, (happ, VarPair(r, a, z), VarZero(a)),
               TPair(TPair(Var(z), Zero()), same)),
        Clause(same, (happ, VarPair(r, a, z), VarPair(a, t1, t2),
                      VarZero(s1)), same),
        Clause(same, (happ, VarPair(r, a, z), VarPair(a, t1, t2),
                      VarPair(s1, w, s2), VarZero(w)), same),
        Clause(same, (happ, VarPair(r, a, z), VarPair(a, t1, t2),
                      VarPair(s1, w, s2), VarPair(w, "w1", dv)),
               TPair(TPair(Var("w1"),
                           cl.App(app1name, TPair(Var(dv), Var(z)))),
                     Var(s2))),
    ]
    return ClausalDef(name, tuple(clauses), "explicit")


def reduce_recursive_to_pr(d: ClausalDef,
                           env: dict[str, Derivation] | None = None
                           ) -> ReductionArtifacts:
    """Translate a recursive clausal definition to primitive recursion.

    The result derivation computes f(x) by iterating the stack stepper
    f1 enough times on the initial stack ((x,0),0) and reading the value
    off the final stack.
    """
    env = dict(env or {})
    if d.kind != "recursive":
        raise ReductionError(f"{d.name} is not recursive")
    check_recursive_restrictions(d)
    h_def, J = build_dispatcher(d)
    app1_def = _build_app1(f"{d.name}_app1", J)
    f1_def = _build_f1(f"{d.name}_f1", h_def.name, app1_def.name)
    h_d = compile_explicit(h_def, env)
    app1_d = compile_explicit(app1_def, env)
    f1_d = compile_explicit(f1_def,
                            {**env, h_def.name: h_d, app1_def.name: app1_d})

    # Iteration count: the machine performs at most one push per expansion
    # and one pop per computed value.  With the identity measure the
    # recursion tree has depth <= x and branching <= J, so 2*x + 3
    # stepper applications suffice when J = 1 and J^(x+2) when J >= 2.
    # The stepper fixes terminal stacks, so overshooting is harmless;
    # for J = 1 we group _GROUP applications per iteration (div(2x,K)+3
    # iterations, since K*(div(2x,K)+3) >= 2x+3), which lets memoized
    # evaluation skip the grouped applications on idle iterations.
    if J == 1:
        K = _GROUP
        mu_d = comp(S, comp(S, comp(S, div_d(add_d(I, I), const(K)))))
        mu_desc = f"div(2*x, {K}) + 3, {K} stepper applications each"
        stepper = f1_d
        for _ in range(K - 1):
            stepper = comp(f1_d, stepper)
    else:
        jexp = pr(const(J * J), mul_d(const(J), comp(HD, TL)))
        mu_d = comp(jexp, P(I, Z_))
        mu_desc = f"{J}^(x+2)"
        stepper = f1_d

    iterate = pr(I, comp(stepper, comp(HD, TL)))
    init = P(P(I, Z_), Z_)
    final_stack = comp(iterate, P(mu_d, init))
    result = comp(TL, comp(h_d, comp(HD, final_stack)))
    return ReductionArtifacts(h_def, f1_def, J, mu_desc, result)


# --- reduction of bounded nested definitions to SNR ---------------------------


def poly_to_derivation(b: PolyBound) -> Derivation:
    """Compile a polynomial bound to a derivation computing it."""
    if b.kind == "const":
        return const(b.value)
    if b.kind == "var":
        return I
    x, y = (poly_to_derivation(a) for a in b.args)
    return add_d(x, y) if b.kind == "add" else mul_d(x, y)


def reduce_bounded_nested_to_snr(d: ClausalDef, bound: PolyBound,
                                 env: dict[str, Derivation] | None = None,
                                 unroll_limit: int = 8,
                                 validate_to: int = 24) -> Derivation:
    """Translate a bounded nested definition to special nested recursion.

    The machine state is v = x*b + d where the lower digit d packs the
    clause's pending partial results as base-R digits (R = bound(x)+1)
    together with a remaining-slots counter, so v strictly decreases on
    both pushing a sub-computation and resuming with its value.  The SNR
    parameter carries (R, R^J, b).

    The bound is checked dynamically: the definition is interpreted on
    [0, validate_to] and any output above bound(x) raises BoundViolation.
    """
    env = dict(env or {})
    if d.kind != "recursive":
        raise ReductionError(f"{d.name} is not recursive")
    check_recursive_restrictions(d)
    h_def, J = build_dispatcher(d)
    if J > unroll_limit:
        raise ReductionError(
            f"J = {J} exceeds the unrolling limit {unroll_limit}")
    for x in range(validate_to + 1):
        val = cl.eval_clausal([d], d.name, x,
                              budget=Budget(max_steps=10**7))
        if val > bound(x):
            raise BoundViolation(
                f"{d.name}({x}) = {val} exceeds bound {bound(x)}")
    h_d = compile_explicit(h_def, env)

    KJ = J + 1

    def components(v_d: Derivation, p_d: Derivation):
        """Decode the machine state: argument, slot counter, digit block."""
        R = comp(HD, p_d)
        RJ = comp(HD, comp(TL, p_d))
        b = comp(TL, comp(TL, p_d))
        q = div_d(v_d, RJ)              # q = x*(J+1) + (J - k)
        xv = div_d(q, const(KJ))
        kf = sub_d(q, mul_d(xv, const(KJ)))
        dl = sub_d(v_d, mul_d(q, RJ))   # packed pending results
        k = sub_d(const(J), kf)
        return R, RJ, b, xv, kf, dl, k

    # --- g1: dispatch on the decoded state -----------------------------------
    v_d, p_d = HD, TL
    R, RJ, b, xv, kf, dl, k = components(v_d, p_d)
    # pending-result digits: z_i = (dl div R^(i-1)) mod R
    digits = []
    for i in range(J):
        num = dl
        for _ in range(i):
            num = div_d(num, R)
        digits.append(sub_d(num, mul_d(div_d(num, R), R)))
    # clause list c for each possible length k
    lists = []
    for kk in range(J + 1):
        acc = Z_
        for i in reversed(range(kk)):
            acc = P(digits[i], acc)
        lists.append(acc)
    c_list = select_d(k, lists)
    r = comp(h_d, P(xv, c_list))
    tag, t = comp(HD, r), comp(TL, r)
    push = P(Z_, add_d(mul_d(t, b), mul_d(const(J), RJ)))
    final = P(ONE, t)
    g1 = dd(tag, push, final)

    # --- h1: resume with the sub-computation's value u ------------------------
    v_d = HD
    u_d = comp(HD, TL)
    p_d = comp(TL, TL)
    R, RJ, b, xv, kf, dl, k = components(v_d, p_d)
    rpow = [const(1)]
    for _ in range(J - 1):
        rpow.append(mul_d(rpow[-1], R))
    rk = select_d(k, rpow + [Z_])
    h1 = add_d(mul_d(xv, b),
               add_d(mul_d(sub_d(kf, ONE), RJ),
                     add_d(dl, mul_d(u_d, rk))))

    # --- wrapper: initial state and parameter as functions of x ---------------
    bd = poly_to_derivation(bound)
    R0 = comp(S, bd)
    RJ0 = const(1)
    for _ in range(J):
        RJ0 = mul_d(RJ0, R0)
    b0 = mul_d(const(KJ), RJ0)
    v0 = add_d(mul_d(I, b0), mul_d(const(J), RJ0))
    q0 = P(R0, P(RJ0, b0))
    result = comp(snr(g1, h1), P(v0, q0))

    # spot-check the construction against direct interpretation
    for x in (0, 1, 2, 3, 5, 8, min(13, validate_to)):
        want = cl.eval_clausal([d], d.name, x,
                               budget=Budget(max_steps=10**7))
        got = eval_memo(result, x, budget=Budget(max_steps=10**8))
        if got != want:
            raise ReductionError(
                f"SNR reduction disagrees with {d.name} at {x}: "
                f"{got} != {want}")
    return result
