"""Terms over the residuated-lattice signature and exhaustive identity checks.

Infix syntax (CLI and constraint files):  *  \\  /  /\\  \\/  ->  with constants
e f bot top, variables/element names as identifiers, ~t for t\\f, and postfix
powers t^3, t^l (= e/t), t^r (= t\\e), t^w (= t^l /\\ t^r).  Shorthands expand
to core symbols at parse time; -> stays in the tree so it can be rejected on
non-commutative algebras.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .algebra import ParseError

CORE_OPS = ("*", "/\\", "\\/", "\\", "/")
CONSTS = ("e", "f", "bot", "top")


@dataclass(frozen=True)
class Term:
    op: str            # "var", "const", or an operation symbol (incl. "->")
    name: str = ""
    args: tuple = ()

    def __repr__(self):
        return term_to_str(self)


def var(name):
    return Term("var", name)


def const(name):
    if name not in CONSTS:
        raise ParseError(f"unknown constant {name!r}")
    return Term("const", name)


def binop(op, left, right):
    return Term(op, args=(left, right))


def mul(a, b):
    return binop("*", a, b)


def meet(a, b):
    return binop("/\\", a, b)


def join(a, b):
    return binop("\\/", a, b)


def under(a, b):
    return binop("\\", a, b)


def over(a, b):
    return binop("/", a, b)


def power(t, n):
    if n < 0:
        raise ParseError("negative power")
    out = const("e")
    for _ in range(n):
        out = mul(out, t) if out != const("e") else t
    return out if n else const("e")


def neg(t):
    return under(t, const("f"))


def wedge_l(t):
    return over(const("e"), t)


def wedge_r(t):
    return under(t, const("e"))


def wedge(t):
    return meet(wedge_l(t), wedge_r(t))


def free_vars(t):
    if t.op == "var":
        return {t.name}
    out = set()
    for a in t.args:
        out |= free_vars(a)
    return out


def term_to_str(t):
    if t.op == "var" or t.op == "const":
        return t.name
    a, b = (term_to_str(x) for x in t.args)
    return f"({a} {t.op} {b})"


_TOKEN = re.compile(r"\s*(/\\|\\/|->|\^|[*\\/()~]|[A-Za-z_][A-Za-z0-9_']*|\d+)")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad character at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    out.append(None)  # end marker
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def parse(self):
        t = self.join_()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return t

    def join_(self):
        t = self.meet_()
        while self.peek() == "\\/":
            self.take()
            t = join(t, self.meet_())
        return t

    def meet_(self):
        t = self.resid()
        while self.peek() == "/\\":
            self.take()
            t = meet(t, self.resid())
        return t

    def resid(self):
        t = self.prod()
        while self.peek() in ("\\", "/", "->"):
            op = self.take()
            rhs = self.prod()
            t = binop(op, t, rhs)
        return t

    def prod(self):
        t = self.unary()
        while self.peek() == "*":
            self.take()
            t = mul(t, self.unary())
        return t

    def unary(self):
        if self.peek() == "~":
            self.take()
            return neg(self.unary())
        return self.postfix()

    def postfix(self):
        t = self.atom()
        while self.peek() == "^":
            self.take()
            x = self.take()
            if x == "l":
                t = wedge_l(t)
            elif x == "r":
                t = wedge_r(t)
            elif x == "w":
                t = wedge(t)
            elif x is not None and x.isdigit():
                t = power(t, int(x))
            else:
                raise ParseError(f"bad exponent {x!r}")
        return t

    def atom(self):
        tok = self.take()
        if tok == "(":
            t = self.join_()
            self.expect(")")
            return t
        if tok is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok or ""):
            raise ParseError(f"expected term, got {tok!r}")
        if tok in CONSTS:
            return const(tok)
        return var(tok)


def parse_term(text):
    return _Parser(_tokenize(text)).parse()


@lru_cache(maxsize=4096)
def _commutative_mult(mult):
    n = len(mult)
    return all(mult[x][y] == mult[y][x] for x in range(n) for y in range(n))


def _const_value(A, name):
    if name == "e":
        return A.unit
    return A.constant(name)


def eval_term(A, t, env):
    """Value of term t in algebra A under env (variable name -> element)."""
    if t.op == "var":
        if t.name not in env:
            raise ParseError(f"unbound variable {t.name!r}")
        return env[t.name]
    if t.op == "const":
        # element names in constraint files may shadow constants ("bot" as a
        # label of an undesignated least element); labels are truthful
        if t.name in env:
            return env[t.name]
        return _const_value(A, t.name)
    a = eval_term(A, t.args[0], env)
    b = eval_term(A, t.args[1], env)
    if t.op == "*":
        return A.mult[a][b]
    if t.op == "/\\":
        return A.meet[a][b]
    if t.op == "\\/":
        return A.join[a][b]
    if t.op == "->":
        # sugar for \ on commutative algebras only
        if not _commutative_mult(A.mult):
            raise ParseError("'->' is only defined on commutative algebras")
        return A.lres[a][b]
    if t.op == "\\":
        return A.lres[a][b]
    if t.op == "/":
        return A.rres[a][b]
    raise ParseError(f"unknown operation {t.op!r}")


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def check_identity(A, lhs, rhs, relation="eq"):
    """Exhaustively check lhs ~ rhs over all assignments; witness on failure."""
    if isinstance(lhs, str):
        lhs = parse_term(lhs)
    if isinstance(rhs, str):
        rhs = parse_term(rhs)
    if relation in ("eq", "≈", "="):
        ok = lambda a, b: a == b
    elif relation in ("le", "≤", "<="):
        ok = lambda a, b: A.leq[a][b]
    else:
        raise ParseError(f"unknown relation {relation!r}")
    names = sorted(free_vars(lhs) | free_vars(rhs))
    for vals in itertools.product(A.elements, repeat=len(names)):
        env = dict(zip(names, vals))
        if not ok(eval_term(A, lhs, env), eval_term(A, rhs, env)):
            return IdentityCheck(False, env)
    return IdentityCheck(True)
