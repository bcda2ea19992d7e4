"""A shipped corpus of Clausal Language definitions.

The corpus exercises every clause form the frontend accepts: plain
equations, head-pattern destructuring, case splits on zero/successor and
pair shape, relational and oracle-membership antecedents, helper calls,
parameter-carrying recursion, and the strict three-clause primitive
recursion shape.  Every definition passes refinement checking.
"""

from __future__ import annotations

from .clausal import ClausalDef, parse_cl

CORPUS_TEXT = """\
# Explicit definitions ------------------------------------------------

def zero { zero(x) = 0; }

def id { id(x) = x; }

def one { one(x) = S(0); }

def double { double(x) = x + x; }

def square { square(x) = x * x; }

def pairup { pairup(x) = (x, x); }

def triple { triple(x) = (x, (x, x)); }

def bump { bump(x) = S(S(x)); }

def iszero {
  iszero(0) = S(0);
  iszero(S(w)) = 0;
}

def pred {
  pred(0) = 0;
  pred(S(w)) = w;
}

def first {
  first(0) = 0;
  first((a, b)) = a;
}

def second {
  second(0) = 0;
  second((a, b)) = b;
}

def swap {
  swap(0) = 0;
  swap((a, b)) = (b, a);
}

# case analysis on both components: d(v, (y, z)) is y when v = 0, else z
def caseD {
  caseD(0) = 0;
  w = 0 -> caseD((v, w)) = 0;
  w = (y, z) & v = 0 -> caseD((v, w)) = y;
  w = (y, z) & v = S(u) -> caseD((v, w)) = z;
}

def max2 {
  max2(0) = 0;
  a < b -> max2((a, b)) = b;
  ! a < b -> max2((a, b)) = a;
}

def min2 {
  min2(0) = 0;
  a < b -> min2((a, b)) = a;
  ! a < b -> min2((a, b)) = b;
}

# three-way shape split: 0 | (0, w) | (S(u), w)
def split3 {
  split3(0) = 0;
  v = 0 -> split3((v, w)) = w;
  v = S(u) -> split3((v, w)) = (u, w);
}

# oracle membership
def inX {
  x in X -> inX(x) = S(0);
  ! x in X -> inX(x) = 0;
}

# helper call on the parameter component
def stepped {
  stepped(0) = 0;
  stepped((v, p)) = (v, bump(p));
}

# Recursive definitions ------------------------------------------------

# list length
def L {
  L(0) = 0;
  L((v, w)) = S(L(w));
}

# last element of a list
def last {
  last(0) = 0;
  w = 0 -> last((v, w)) = v;
  w = (a, b) -> last((v, w)) = last(w);
}

# sum of list elements
def sumlist {
  sumlist(0) = 0;
  sumlist((v, w)) = v + sumlist(w);
}

# list concatenation on a packed pair of lists
def cat {
  cat(0) = 0;
  x = 0 -> cat((x, y)) = y;
  x = (v, w) -> cat((x, y)) = (v, cat((w, y)));
}

# nested self-application
def nested {
  nested(0) = 0;
  nested(S(u)) = nested(nested(u));
}

# parameter-carrying addition by recursion on the first component
def addp {
  addp(0) = 0;
  v = 0 -> addp((v, p)) = p;
  v = S(w) -> addp((v, p)) = S(addp((w, p)));
}

# strict primitive recursion shape: f(0,p) = g(p); f(S(w),p) = h(w,f(w,p),p)
def hstep { hstep(0) = 0; hstep((w, r)) = S(w) + first(r); }

def prdemo {
  prdemo(0) = 0;
  v = 0 -> prdemo((v, p)) = id(p);
  v = S(w) & prdemo((w, p)) = z -> prdemo((v, p)) = hstep((w, (z, p)));
}
"""


def corpus_defs() -> list[ClausalDef]:
    """Parse the shipped corpus."""
    return parse_cl(CORPUS_TEXT)


def corpus_def(name: str) -> ClausalDef:
    for d in corpus_defs():
        if d.name == name:
            return d
    raise KeyError(name)
