"""Derivation terms, algebra classes, enumeration, and polynomial bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator


class Op(Enum):
    S = "S"
    ADD = "add"
    MUL = "mul"
    LT = "lt"
    I = "I"
    D = "D"
    P = "P"
    COMP = "comp"
    MU = "mu"
    PR = "pr"
    BPR = "bpr"
    SNR = "snr"
    E = "E"
    SMASH = "smash"
    ORACLE = "X"


ARITY = {
    Op.S: 0, Op.ADD: 0, Op.MUL: 0, Op.LT: 0, Op.I: 0, Op.D: 0,
    Op.E: 0, Op.SMASH: 0, Op.ORACLE: 0,
    Op.MU: 1,
    Op.P: 2, Op.COMP: 2, Op.PR: 2, Op.BPR: 2, Op.SNR: 2,
}


@dataclass(frozen=True)
class Derivation:
    op: Op
    children: tuple["Derivation", ...] = ()

    def __post_init__(self):
        if len(self.children) != ARITY[self.op]:
            raise ValueError(
                f"{self.op.value} takes {ARITY[self.op]} children, "
                f"got {len(self.children)}"
            )

    def node_count(self) -> int:
        n, stack = 0, [self]
        while stack:
            d = stack.pop()
            n += 1
            stack.extend(d.children)
        return n

    def nodes(self) -> Iterator["Derivation"]:
        stack = [self]
        while stack:
            d = stack.pop()
            yield d
            stack.extend(d.children)

    def __repr__(self):
        return f"Derivation({d_print(self)!r})"


# Atom singletons; compound constructors.
S = Derivation(Op.S)
ADD = Derivation(Op.ADD)
MUL = Derivation(Op.MUL)
LT = Derivation(Op.LT)
I = Derivation(Op.I)
D = Derivation(Op.D)
E = Derivation(Op.E)
SMASH = Derivation(Op.SMASH)
ORACLE = Derivation(Op.ORACLE)


def P(g: Derivation, h: Derivation) -> Derivation:
    return Derivation(Op.P, (g, h))


def comp(g: Derivation, h: Derivation) -> Derivation:
    return Derivation(Op.COMP, (g, h))


def mu(g: Derivation) -> Derivation:
    return Derivation(Op.MU, (g,))


def pr(g: Derivation, h: Derivation) -> Derivation:
    return Derivation(Op.PR, (g, h))


def bpr(g: Derivation, h: Derivation) -> Derivation:
    return Derivation(Op.BPR, (g, h))


def snr(g: Derivation, h: Derivation) -> Derivation:
    return Derivation(Op.SNR, (g, h))


# --- Algebra classes -------------------------------------------------------

_BASE = frozenset({Op.S, Op.ADD, Op.MUL, Op.LT, Op.I, Op.D,
                   Op.P, Op.COMP, Op.MU, Op.ORACLE})


@dataclass(frozen=True)
class AlgebraClass:
    name: str
    allowed: frozenset[Op]


DA = AlgebraClass("DA", _BASE)
SA = AlgebraClass("SA", _BASE | {Op.BPR})
TA = AlgebraClass("TA", _BASE | {Op.SNR})
DEA = AlgebraClass("DEA", _BASE | {Op.E})
DSA = AlgebraClass("DSA", _BASE | {Op.SMASH})
SSA = AlgebraClass("SSA", _BASE | {Op.BPR, Op.SMASH})
PRA = AlgebraClass("PRA", _BASE | {Op.PR})

CLASSES = {c.name: c for c in (DA, SA, TA, DEA, DSA, SSA, PRA)}


def validate(d: Derivation, c: AlgebraClass) -> bool:
    """True iff every operator of d is admitted by the class."""
    return all(n.op in c.allowed for n in d.nodes())


# --- S-expression format ---------------------------------------------------

_ATOM_OF = {
    Op.S: "S", Op.ADD: "add", Op.MUL: "mul", Op.LT: "lt", Op.I: "I",
    Op.D: "D", Op.E: "E", Op.SMASH: "smash", Op.ORACLE: "X",
}
_OP_OF_ATOM = {v: k for k, v in _ATOM_OF.items()}
_HEAD_OF = {Op.P: "P", Op.COMP: "comp", Op.MU: "mu",
            Op.PR: "pr", Op.BPR: "bpr", Op.SNR: "snr"}
_OP_OF_HEAD = {v: k for k, v in _HEAD_OF.items()}


def d_print(d: Derivation) -> str:
    if ARITY[d.op] == 0:
        return _ATOM_OF[d.op]
    inner = " ".join(d_print(c) for c in d.children)
    return f"({_HEAD_OF[d.op]} {inner})"


class ParseError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"parse error at byte {offset}: {msg}")
        self.offset = offset


def d_parse(text: str) -> Derivation:
    """Parse the S-expression derivation format."""
    toks: list[tuple[str, int]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            toks.append((c, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            toks.append((text[i:j], i))
            i = j
    pos = 0

    def parse_one() -> Derivation:
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of input", len(text))
        tok, off = toks[pos]
        pos += 1
        if tok == ")":
            raise ParseError("unexpected ')'", off)
        if tok != "(":
            if tok not in _OP_OF_ATOM:
                raise ParseError(f"unknown atom {tok!r}", off)
            return Derivation(_OP_OF_ATOM[tok])
        if pos >= len(toks):
            raise ParseError("missing operator after '('", off)
        headtok, hoff = toks[pos]
        pos += 1
        if headtok not in _OP_OF_HEAD:
            raise ParseError(f"unknown operator {headtok!r}", hoff)
        op = _OP_OF_HEAD[headtok]
        kids = []
        while True:
            if pos >= len(toks):
                raise ParseError("missing ')'", len(text))
            if toks[pos][0] == ")":
                pos += 1
                break
            kids.append(parse_one())
        if len(kids) != ARITY[op]:
            raise ParseError(
                f"{headtok} takes {ARITY[op]} children, got {len(kids)}", off)
        return Derivation(op, tuple(kids))

    d = parse_one()
    if pos != len(toks):
        raise ParseError("trailing input", toks[pos][1])
    return d


# --- Standard enumeration --------------------------------------------------
#
# Total order: node count first, then operator (the oracle symbol comes
# first, the rest in declaration order), then lexicographically by the
# indices of the children.  Children have strictly fewer nodes, hence
# strictly smaller indices.

_ENUM_TAG_ORDER = [Op.ORACLE, Op.S, Op.ADD, Op.MUL, Op.LT, Op.I, Op.D,
                   Op.P, Op.COMP, Op.MU, Op.PR, Op.BPR, Op.SNR,
                   Op.E, Op.SMASH]
_TAG_RANK = {op: i for i, op in enumerate(_ENUM_TAG_ORDER)}


class EnumerationError(ValueError):
    pass


def _class_tags(c: AlgebraClass) -> list[Op]:
    return [op for op in _ENUM_TAG_ORDER if op in c.allowed]


@lru_cache(maxsize=None)
def _counts(cname: str, k: int) -> int:
    """Number of derivations of the class with exactly k operator nodes."""
    c = CLASSES[cname]
    if k <= 0:
        return 0
    total = 0
    for op in _class_tags(c):
        a = ARITY[op]
        if a == 0:
            total += 1 if k == 1 else 0
        elif a == 1:
            total += _counts(cname, k - 1)
        else:
            total += sum(_counts(cname, i) * _counts(cname, k - 1 - i)
                         for i in range(1, k - 1))
    return total


@lru_cache(maxsize=None)
def _block_start(cname: str, k: int) -> int:
    """Index of the first derivation with k nodes."""
    return 0 if k <= 1 else _block_start(cname, k - 1) + _counts(cname, k - 1)


def _as_class(c) -> AlgebraClass:
    if isinstance(c, str):
        try:
            return CLASSES[c]
        except KeyError:
            raise EnumerationError(f"unknown algebra class {c!r}") from None
    return c


def index_of(d: Derivation, c) -> int:
    """Position of d in the standard enumeration of the class."""
    c = _as_class(c)
    if not validate(d, c):
        raise EnumerationError(f"derivation not in class {c.name}")
    k = d.node_count()
    idx = _block_start(c.name, k)
    for op in _class_tags(c):
        if op is d.op:
            break
        a = ARITY[op]
        if a == 0:
            idx += 1 if k == 1 else 0
        elif a == 1:
            idx += _counts(c.name, k - 1)
        else:
            idx += sum(_counts(c.name, i) * _counts(c.name, k - 1 - i)
                       for i in range(1, k - 1))
    a = ARITY[d.op]
    if a == 1:
        child = d.children[0]
        idx += index_of(child, c) - _block_start(c.name, k - 1)
    elif a == 2:
        g, h = d.children
        kg, kh = g.node_count(), h.node_count()
        ig, ih = index_of(g, c), index_of(h, c)
        # pairs whose first index precedes ig
        for i in range(1, k - 1):
            before = min(max(ig - _block_start(c.name, i), 0),
                         _counts(c.name, i))
            idx += before * _counts(c.name, k - 1 - i)
        idx += ih - _block_start(c.name, kh)
        del kg
    return idx


def derivation_at(i: int, c) -> Derivation:
    """Inverse of index_of."""
    c = _as_class(c)
    if i < 0:
        raise EnumerationError("negative index")
    k = 1
    while _block_start(c.name, k + 1) <= i:
        k += 1
        if k > 10_000:
            raise EnumerationError("index out of enumerated range")
    r = i - _block_start(c.name, k)
    for op in _class_tags(c):
        a = ARITY[op]
        if a == 0:
            cnt = 1 if k == 1 else 0
        elif a == 1:
            cnt = _counts(c.name, k - 1)
        else:
            cnt = sum(_counts(c.name, j) * _counts(c.name, k - 1 - j)
                      for j in range(1, k - 1))
        if r < cnt:
            break
        r -= cnt
    else:
        raise EnumerationError("index decoding failed")
    if a == 0:
        return Derivation(op)
    if a == 1:
        return Derivation(op, (derivation_at(_block_start(c.name, k - 1) + r, c),))
    for j in range(1, k - 1):
        block = _counts(c.name, j) * _counts(c.name, k - 1 - j)
        if r < block:
            qg, qh = divmod(r, _counts(c.name, k - 1 - j))
            g = derivation_at(_block_start(c.name, j) + qg, c)
            h = derivation_at(_block_start(c.name, k - 1 - j) + qh, c)
            return Derivation(op, (g, h))
        r -= block
    raise EnumerationError("index decoding failed")


def enumerate_derivations(c, n: int) -> list[Derivation]:
    """The first n derivations of the class in standard order."""
    c = _as_class(c)
    return [derivation_at(i, c) for i in range(n)]


# --- Symbolic polynomial bounds -------------------------------------------


class UnboundedOperatorError(ValueError):
    """The derivation contains an operator with no polynomial bound."""


@dataclass(frozen=True)
class PolyBound:
    """A closed monotone expression in one variable.

    kind is one of "const", "var", "add", "mul"; children carry subterms.
    """

    kind: str
    value: int = 0
    args: tuple["PolyBound", ...] = field(default=())

    def __call__(self, n: int) -> int:
        if self.kind == "const":
            return self.value
        if self.kind == "var":
            return n
        a, b = (arg(n) for arg in self.args)
        return a + b if self.kind == "add" else a * b

    def __str__(self):
        if self.kind == "const":
            return str(self.value)
        if self.kind == "var":
            return "n"
        sep = " + " if self.kind == "add" else " * "
        return "(" + sep.join(str(a) for a in self.args) + ")"


def _const(k: int) -> PolyBound:
    return PolyBound("const", k)


_VAR = PolyBound("var")


def _padd(a: PolyBound, b: PolyBound) -> PolyBound:
    return PolyBound("add", args=(a, b))


def _pmul(a: PolyBound, b: PolyBound) -> PolyBound:
    return PolyBound("mul", args=(a, b))


def _subst(b: PolyBound, inner: PolyBound) -> PolyBound:
    if b.kind == "var":
        return inner
    if b.kind == "const":
        return b
    return PolyBound(b.kind, args=tuple(_subst(a, inner) for a in b.args))


def poly_bound(d: Derivation) -> PolyBound:
    """A monotone polynomial dominating the function of the derivation."""
    op = d.op
    if op in (Op.PR, Op.E, Op.SMASH):
        raise UnboundedOperatorError(f"{op.value} has no polynomial bound")
    if op is Op.S:
        return _padd(_VAR, _const(1))
    if op is Op.ADD:
        return _pmul(_const(2), _VAR)
    if op is Op.MUL:
        return _pmul(_VAR, _VAR)
    if op in (Op.LT, Op.ORACLE):
        return _const(1)
    if op in (Op.I, Op.D, Op.MU, Op.BPR, Op.SNR):
        return _VAR
    if op is Op.P:
        bg, bh = (poly_bound(c) for c in d.children)
        s = _padd(_padd(bg, bh), _const(2))
        return _pmul(s, s)
    if op is Op.COMP:
        bg, bh = (poly_bound(c) for c in d.children)
        return _subst(bg, bh)
    raise AssertionError(op)
