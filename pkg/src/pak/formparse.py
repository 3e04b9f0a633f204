"""Mini-language for meromorphic forms and scalar tokens.

Grammar (documented in the README):

    form    := "dlog" expr | expr          # the latter must be linear in dt
    expr    := term (("+"|"-") term)*
    term    := unary (("*"|"/") unary)*
    unary   := "-" unary | factor
    factor  := atom ("^" int)?
    atom    := int | "t" | "dt" | "(" expr ")"

Scalar tokens (branch values, character entries): "0", "3", "-4/7",
"log(2)", "-log(3)", "2/3*log(5)".
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import PakError
from .padic import padic_log
from .projline import MeromorphicForm, RationalFn


class FormSyntaxError(PakError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(dlog|dt|t)|([()+\-*/^]))")


def _tokenize(s):
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip() == "":
                break
            raise FormSyntaxError("cannot read form at: %r" % s[pos:])
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


class _DtValue:
    """a + b*dt with dt^2 = 0; a, b rational functions."""

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __add__(self, o):
        return _DtValue(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return _DtValue(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return _DtValue(-self.a, -self.b)

    def __mul__(self, o):
        return _DtValue(self.a * o.a, self.a * o.b + self.b * o.a)

    def __truediv__(self, o):
        if not o.b.is_zero():
            raise FormSyntaxError("cannot divide by a dt term")
        return _DtValue(self.a / o.a, self.b / o.a)

    def pow(self, n):
        if not self.b.is_zero():
            if n == 1:
                return self
            raise FormSyntaxError("dt terms cannot be raised to powers")
        out_a = self.a
        if n == 0:
            raise FormSyntaxError("zeroth powers are not part of the grammar")
        if n < 0:
            one = _const_rational(self.a.field, 1)
            return _DtValue(one / _pow_rational(self.a, -n), _zero_rational(self.a.field))
        return _DtValue(_pow_rational(self.a, n), _zero_rational(self.a.field))


def _zero_rational(K):
    return RationalFn(K, [], None, reduce=False)


def _const_rational(K, c):
    return RationalFn(K, [K.coerce(c)], None, reduce=False)


def _pow_rational(r, n):
    out = _const_rational(r.field, 1)
    for _ in range(n):
        out = out * r
    return out


class _Parser:
    def __init__(self, field, tokens):
        self.K = field
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        v = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                v = v * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                v = v / self.unary()
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                # implicit multiplication: "2t", "t(t-1)", "dt (t-1)"
                v = v * self.unary()
            else:
                return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.factor()

    def factor(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            neg = False
            if (kind, n) == ("op", "-"):
                neg = True
                kind, n = self.take()
            if kind != "num":
                raise FormSyntaxError("exponent must be an integer")
            return v.pow(-n if neg else n)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return _DtValue(_const_rational(self.K, val), _zero_rational(self.K))
        if kind == "name":
            if val == "t":
                return _DtValue(
                    RationalFn(self.K, [self.K.zero(), self.K.one(prec=self.K.prec + 8)], None, reduce=False),
                    _zero_rational(self.K),
                )
            if val == "dt":
                return _DtValue(_zero_rational(self.K), _const_rational(self.K, 1))
            if val == "dlog":
                arg = self.unary()
                if not arg.b.is_zero():
                    raise FormSyntaxError("dlog takes a rational function")
                return _DtValue(_zero_rational(self.K), arg.a.dlog())
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise FormSyntaxError("unbalanced parentheses")
            return v
        raise FormSyntaxError("unexpected token %r" % ((kind, val),))


def parse_form(field, text):
    """Parse the mini-language into a MeromorphicForm (must be linear in dt)."""
    toks = _tokenize(text)
    if not toks:
        raise FormSyntaxError("empty form")
    p = _Parser(field, toks)
    v = p.expr()
    if p.i != len(p.toks):
        raise FormSyntaxError("trailing input at token %d" % p.i)
    if not v.a.is_zero():
        raise FormSyntaxError("expression is not a pure form (has a dt-free part)")
    if v.b.is_zero():
        raise FormSyntaxError("expression carries no dt")
    return MeromorphicForm(v.b)


_SCALAR = re.compile(
    r"^\s*(?P<sign>-)?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?"
    r"(?:(?P<num>\d+(?:/\d+)?)|log\((?P<logarg>-?\d+(?:/\d+)?)\))\s*$"
)


def parse_scalar_token(field, text, branch=None):
    """Parse "0", "a/b", "log(n)", "-log(n)", "a/b*log(n)" into a field value."""
    from .padic import LogBranch

    m = _SCALAR.match(str(text))
    if not m:
        raise FormSyntaxError("cannot read scalar token %r" % (text,))
    sign = -1 if m.group("sign") else 1
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if m.group("num") is not None:
        return field.from_fraction(sign * coef * Fraction(m.group("num")))
    branch = branch or LogBranch.iwasawa(field)
    val = padic_log(field.from_fraction(Fraction(m.group("logarg"))), branch)
    return val * field.from_fraction(sign * coef)
