"""Compilers from quasi-terms, quasi-bounded formulas, and explicit
clausal definitions to derivations.

All constructions use only the base operators (so the output stays in DA
whenever the environment does): the constant-zero combinator Z, the
projections H and T recovered through the case operator D, the
predecessor recovered through bounded minimization, and a 0/1-valued
formula calculus built from D-dispatch.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import clausal as cl
from .derivation import (ADD, D as D_, Derivation, I, LT, MUL, ORACLE, S,
                         P, comp, mu)

# --- Base combinators ---------------------------------------------------

# Z computes the constant 0: on x > 0 the minimization over pair(x, x)
# finds z = 0 as the least z with S(z * x) = 1; on 0 the bound is 0.
Z_ = mu(comp(S, MUL))

# H and T through the case operator: D on pair(tag, z) selects a
# component of unpair(z).
HD = comp(D_, P(Z_, I))
TL = comp(D_, P(comp(S, Z_), I))

# Predecessor: least z with tail < S(S(head)) over pair(x, x), i.e. the
# least z with x < z + 2, which is x - 1 (and 0 at 0).
PRED = comp(mu(comp(LT, P(TL, comp(S, comp(S, HD))))), P(I, I))

ONE = comp(S, Z_)


def const(k: int) -> Derivation:
    """A derivation computing the constant k on every input."""
    d = Z_
    for _ in range(k):
        d = comp(S, d)
    return d


def dd(c: Derivation, y: Derivation, z: Derivation) -> Derivation:
    """Case dispatch: computes y(x) if c(x) = 0, else z(x)."""
    return comp(D_, P(c, P(y, z)))


def lt_d(a: Derivation, b: Derivation) -> Derivation:
    return comp(LT, P(a, b))


def eq_d(a: Derivation, b: Derivation) -> Derivation:
    return dd(lt_d(a, b), dd(lt_d(b, a), ONE, Z_), Z_)


def not_d(a: Derivation) -> Derivation:
    return dd(a, ONE, Z_)


def or_d(a: Derivation, b: Derivation) -> Derivation:
    return dd(a, b, ONE)


def and_d(a: Derivation, b: Derivation) -> Derivation:
    return dd(a, Z_, b)


# --- Variable contexts and projections -----------------------------------


@dataclass(frozen=True)
class VarCtx:
    vars: tuple[str, ...]

    def __post_init__(self):
        if not self.vars:
            raise ValueError("empty variable context")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variables in context")

    @staticmethod
    def of(*names: str) -> "VarCtx":
        return VarCtx(tuple(names))

    def projection(self, name: str) -> Derivation:
        """The derivation extracting one variable from the
        right-associated packing x0,(x1,(...,xn))."""
        if name not in self.vars:
            raise UnboundVariableError(f"unbound variable {name!r}")
        i = self.vars.index(name)
        n = len(self.vars) - 1
        d = I
        for _ in range(i):
            d = comp(TL, d)
        return d if i == n else comp(HD, d)


class UnboundVariableError(ValueError):
    pass


def pack_args(values) -> int:
    """Right-associated packing of a context assignment."""
    from .codec import pair
    values = list(values)
    acc = values[-1]
    for v in reversed(values[:-1]):
        acc = pair(v, acc)
    return acc


# --- Quasi-term compilation -----------------------------------------------


def compile_term(t: cl.QuasiTerm, ctx: VarCtx,
                 env: dict[str, Derivation] | None = None) -> Derivation:
    """A derivation computing the quasi-term on the packed context."""
    env = env or {}

    def go(t):
        if isinstance(t, cl.Zero):
            return Z_
        if isinstance(t, cl.Var):
            return ctx.projection(t.name)
        if isinstance(t, cl.Succ):
            return comp(S, go(t.arg))
        if isinstance(t, cl.TPair):
            return P(go(t.left), go(t.right))
        if isinstance(t, cl.TAdd):
            return comp(ADD, P(go(t.left), go(t.right)))
        if isinstance(t, cl.TMul):
            return comp(MUL, P(go(t.left), go(t.right)))
        if isinstance(t, cl.App):
            if t.fname not in env:
                raise UnboundVariableError(
                    f"no derivation for function {t.fname!r}")
            return comp(env[t.fname], go(t.arg))
        raise TypeError(t)

    return go(t)


# --- Quasi-bounded formulas -------------------------------------------------


@dataclass(frozen=True)
class FRel:
    left: cl.QuasiTerm
    rel: str  # "=" or "<"
    right: cl.QuasiTerm


@dataclass(frozen=True)
class FOracle:
    term: cl.QuasiTerm


@dataclass(frozen=True)
class FNot:
    body: "QuasiFormula"


@dataclass(frozen=True)
class FOr:
    left: "QuasiFormula"
    right: "QuasiFormula"


@dataclass(frozen=True)
class FAnd:
    left: "QuasiFormula"
    right: "QuasiFormula"


@dataclass(frozen=True)
class FBoundedEx:
    var: str
    bound: cl.QuasiTerm
    body: "QuasiFormula"


@dataclass(frozen=True)
class FQuasiBoundedEx:
    var: str
    fname: str
    arg: cl.QuasiTerm
    body: "QuasiFormula"


QuasiFormula = (FRel | FOracle | FNot | FOr | FAnd
                | FBoundedEx | FQuasiBoundedEx)


def compile_formula(phi: QuasiFormula, ctx: VarCtx,
                    env: dict[str, Derivation] | None = None) -> Derivation:
    """A 0/1-valued derivation computing the formula's truth value."""
    env = env or {}
    if isinstance(phi, FRel):
        a = compile_term(phi.left, ctx, env)
        b = compile_term(phi.right, ctx, env)
        return lt_d(a, b) if phi.rel == "<" else eq_d(a, b)
    if isinstance(phi, FOracle):
        return comp(ORACLE, compile_term(phi.term, ctx, env))
    if isinstance(phi, FNot):
        return not_d(compile_formula(phi.body, ctx, env))
    if isinstance(phi, FOr):
        return or_d(compile_formula(phi.left, ctx, env),
                    compile_formula(phi.right, ctx, env))
    if isinstance(phi, FAnd):
        return and_d(compile_formula(phi.left, ctx, env),
                     compile_formula(phi.right, ctx, env))
    if isinstance(phi, FBoundedEx):
        inner = VarCtx((phi.var,) + ctx.vars)
        body = compile_formula(phi.body, inner, env)
        bound = compile_term(phi.bound, ctx, env)
        witness = comp(mu(body), P(bound, I))
        return lt_d(witness, bound)
    if isinstance(phi, FQuasiBoundedEx):
        inner = VarCtx((phi.var,) + ctx.vars)
        body = compile_formula(phi.body, inner, env)
        if phi.fname not in env:
            raise UnboundVariableError(
                f"no derivation for function {phi.fname!r}")
        witness = comp(env[phi.fname], compile_term(phi.arg, ctx, env))
        return comp(body, P(witness, I))
    raise TypeError(phi)


# --- Truth oracle (reference semantics for tests) ----------------------------


def eval_term_direct(t: cl.QuasiTerm, assign: dict[str, int],
                     fns=None) -> int:
    from .codec import pair
    fns = fns or {}
    if isinstance(t, cl.Zero):
        return 0
    if isinstance(t, cl.Var):
        return assign[t.name]
    if isinstance(t, cl.Succ):
        return eval_term_direct(t.arg, assign, fns) + 1
    if isinstance(t, cl.TPair):
        return pair(eval_term_direct(t.left, assign, fns),
                    eval_term_direct(t.right, assign, fns))
    if isinstance(t, cl.TAdd):
        return (eval_term_direct(t.left, assign, fns)
                + eval_term_direct(t.right, assign, fns))
    if isinstance(t, cl.TMul):
        return (eval_term_direct(t.left, assign, fns)
                * eval_term_direct(t.right, assign, fns))
    return fns[t.fname](eval_term_direct(t.arg, assign, fns))


def eval_formula_direct(phi: QuasiFormula, assign: dict[str, int],
                        oracle=frozenset(), fns=None) -> bool:
    fns = fns or {}
    if isinstance(phi, FRel):
        a = eval_term_direct(phi.left, assign, fns)
        b = eval_term_direct(phi.right, assign, fns)
        return a < b if phi.rel == "<" else a == b
    if isinstance(phi, FOracle):
        return eval_term_direct(phi.term, assign, fns) in oracle
    if isinstance(phi, FNot):
        return not eval_formula_direct(phi.body, assign, oracle, fns)
    if isinstance(phi, FOr):
        return (eval_formula_direct(phi.left, assign, oracle, fns)
                or eval_formula_direct(phi.right, assign, oracle, fns))
    if isinstance(phi, FAnd):
        return (eval_formula_direct(phi.left, assign, oracle, fns)
                and eval_formula_direct(phi.right, assign, oracle, fns))
    if isinstance(phi, FBoundedEx):
        b = eval_term_direct(phi.bound, assign, fns)
        return any(
            eval_formula_direct(phi.body, {**assign, phi.var: y},
                                oracle, fns)
            for y in range(b))
    if isinstance(phi, FQuasiBoundedEx):
        w = fns[phi.fname](eval_term_direct(phi.arg, assign, fns))
        return eval_formula_direct(phi.body, {**assign, phi.var: w},
                                   oracle, fns)
    raise TypeError(phi)


# --- Explicit clausal definitions ---------------------------------------


class NotExplicitError(ValueError):
    pass


def compile_explicit(d: cl.ClausalDef,
                     env: dict[str, Derivation] | None = None) -> Derivation:
    """Compile an explicit clausal definition to a derivation.

    Locals are eliminated by substitution: pattern splits become H/T
    projections guarded by zero tests, successor splits use the
    predecessor, and the guarded results are folded back to front with
    D-dispatch.  The antecedents of the strict form are exhaustive and
    disjoint, so exactly one guard evaluates to 1.
    """
    env = env or {}
    sd = cl.complete_to_strict(d)
    if sd.kind != "explicit":
        raise NotExplicitError(f"{d.name} is recursive")
    argvar = sd.clauses[0].pattern.name
    compiled = []
    for c in sd.clauses:
        bind: dict[str, Derivation] = {argvar: I}

        def term_d(t: cl.QuasiTerm) -> Derivation:
            if isinstance(t, cl.Zero):
                return Z_
            if isinstance(t, cl.Var):
                if t.name not in bind:
                    raise UnboundVariableError(
                        f"unbound variable {t.name!r} in {d.name}")
                return bind[t.name]
            if isinstance(t, cl.Succ):
                return comp(S, term_d(t.arg))
            if isinstance(t, cl.TPair):
                return P(term_d(t.left), term_d(t.right))
            if isinstance(t, cl.TAdd):
                return comp(ADD, P(term_d(t.left), term_d(t.right)))
            if isinstance(t, cl.TMul):
                return comp(MUL, P(term_d(t.left), term_d(t.right)))
            if t.fname not in env:
                raise UnboundVariableError(
                    f"no derivation for function {t.fname!r}")
            return comp(env[t.fname], term_d(t.arg))

        guards: list[Derivation] = []
        for lit in c.literals:
            if isinstance(lit, cl.VarZero):
                guards.append(not_d(lt_d(Z_, bind[lit.v])))
            elif isinstance(lit, cl.VarSucc):
                guards.append(lt_d(Z_, bind[lit.v]))
                bind[lit.w] = comp(PRED, bind[lit.v])
            elif isinstance(lit, cl.VarPair):
                guards.append(lt_d(Z_, bind[lit.v]))
                bind[lit.w1] = comp(HD, bind[lit.v])
                bind[lit.w2] = comp(TL, bind[lit.v])
            elif isinstance(lit, cl.AppEq):
                if lit.fname not in env:
                    raise UnboundVariableError(
                        f"no derivation for function {lit.fname!r}")
                bind[lit.out] = comp(env[lit.fname], term_d(lit.arg))
            elif isinstance(lit, cl.Rel):
                a, b = term_d(lit.left), term_d(lit.right)
                g = lt_d(a, b) if lit.rel == "<" else eq_d(a, b)
                guards.append(not_d(g) if lit.negated else g)
            else:
                g = comp(ORACLE, term_d(lit.term))
                guards.append(not_d(g) if lit.negated else g)
        guard = ONE
        for g in guards:
            guard = g if guard is ONE else and_d(guard, g)
        compiled.append((guard, term_d(c.result)))

    acc = Z_
    for guard, result in reversed(compiled):
        acc = dd(guard, acc, result)
    return acc
