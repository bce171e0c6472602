"""Text-format expression parser.

Grammar (whitespace insignificant, identifiers [A-Za-z][A-Za-z0-9_]*):

    expr     := term (('+'|'-') term)*
    term     := unary (('*'|'/') unary)*
    unary    := '-'? factor
    factor   := base ('^' exponent)?
    base     := number | ident primes | ident '(' args ')' | '(' expr ')'
    exponent := integer | '-' integer | '(' '-'? integer ('/' integer)? ')'
    number   := integer

Derivatives of the dependent variable are written y', y'', y''' or
D(y, x, k).  Partial derivatives of opaque functions list the nonzero
slots, D(F, x, i, y, j); a D(...) form immediately followed by an
argument list, D(F, x, 1, y, 0)(a, b), gives the multi-index for each
slot explicitly and applies the derived function to composite
arguments.  int(f, v) builds an antiderivative node and exp(u), where u
is a rational combination of antiderivative nodes, builds exponential
antiderivatives.

An identifier applied to arguments becomes an opaque function; a bare
identifier is the context's independent/dependent variable or a named
constant.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ArityError, ParseError
from .calculus import JetSpace
from .nodes import (Const, Func, Integral, Jet, Rat, Var, add, as_terms,
                    exp_integral, integral, mul, neg, power, rational)

__all__ = ["parse", "parse_equation"]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
                    r"|(?P<op>[-+*/^(),'=]))")

_RESERVED = {"D", "int", "exp"}


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             position=pos)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list, producing a raw AST.

    Opaque-function identities are resolved in a second pass so that the
    short derivative form D(F, y, 1) can pick up F's argument list from
    another occurrence like F(x, y) in the same text.
    """

    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value!r}", position=pos)

    def parse(self):
        ast = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {value!r}", position=pos)
        return ast

    def expr(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                rhs = self.term()
                node = ("+", node, ("neg", rhs) if value == "-" else rhs)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.next()
                rhs = self.unary()
                node = (value, node, rhs)
            else:
                return node

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.next()
            return ("neg", self.factor())
        return self.factor()

    def factor(self):
        node = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.next()
            node = ("^", node, self.exponent())
        return node

    def exponent(self):
        kind, value, pos = self.next()
        if kind == "int":
            return Fraction(value)
        if kind == "op" and value == "-":
            kind2, value2, pos2 = self.next()
            if kind2 != "int":
                raise ParseError("expected integer exponent", position=pos2)
            return Fraction(-value2)
        if kind == "op" and value == "(":
            sign = 1
            kind2, value2, pos2 = self.next()
            if kind2 == "op" and value2 == "-":
                sign = -1
                kind2, value2, pos2 = self.next()
            if kind2 != "int":
                raise ParseError("expected integer in exponent", position=pos2)
            num = value2
            den = 1
            kind3, value3, pos3 = self.next()
            if kind3 == "op" and value3 == "/":
                kind4, value4, pos4 = self.next()
                if kind4 != "int":
                    raise ParseError("expected integer denominator",
                                     position=pos4)
                den = value4
                kind3, value3, pos3 = self.next()
            if kind3 != "op" or value3 != ")":
                raise ParseError("expected ')' in exponent", position=pos3)
            return Fraction(sign * num, den)
        raise ParseError("expected exponent", position=pos)

    def base(self):
        kind, value, pos = self.next()
        if kind == "int":
            return ("rat", Fraction(value))
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "ident":
            return self.ident_base(value, pos)
        raise ParseError(f"unexpected token {value!r}", position=pos)

    def ident_base(self, name, pos):
        kind, value, _ = self.peek()
        if kind == "op" and value == "'":
            primes = 0
            while self.peek()[:2] == ("op", "'"):
                self.next()
                primes += 1
            if name != self.ctx.dep:
                raise ParseError(
                    f"prime derivative of {name!r}; only the dependent "
                    f"variable {self.ctx.dep!r} has jets", position=pos)
            return ("jet", name, primes)
        if kind == "op" and value == "(":
            if name == "D":
                return self.d_form(pos)
            self.next()
            args = self.args()
            if name == "int":
                return self.int_form(args, pos)
            if name == "exp":
                if len(args) != 1:
                    raise ParseError("exp takes one argument", position=pos)
                return ("exp", args[0])
            return ("call", name, tuple(args))
        return ("bare", name)

    def args(self):
        # opening '(' already consumed
        items = [self.expr()]
        while True:
            kind, value, pos = self.next()
            if kind == "op" and value == ")":
                return items
            if kind == "op" and value == ",":
                items.append(self.expr())
            else:
                raise ParseError("expected ',' or ')' in argument list",
                                 position=pos)

    def int_form(self, args, pos):
        if len(args) != 2:
            raise ParseError("int takes (integrand, variable)", position=pos)
        body, var = args
        if not (isinstance(var, tuple) and var[0] == "bare"):
            raise ParseError("integration variable must be an identifier",
                             position=pos)
        return ("int", body, var[1])

    def d_form(self, pos):
        self.expect_op("(")
        kind, target, tpos = self.next()
        if kind != "ident":
            raise ParseError("D(...) must start with an identifier",
                             position=tpos)
        pairs = []
        while True:
            kind, value, p = self.next()
            if kind == "op" and value == ")":
                break
            if not (kind == "op" and value == ","):
                raise ParseError("expected ',' in D(...)", position=p)
            kind, var, p = self.next()
            if kind != "ident":
                raise ParseError("expected variable name in D(...)",
                                 position=p)
            self.expect_op(",")
            kind, count, p = self.next()
            if kind != "int":
                raise ParseError("expected derivative count in D(...)",
                                 position=p)
            pairs.append((var, count))
        if not pairs:
            raise ParseError("D(...) needs at least one variable/order pair",
                             position=pos)
        kind, value, _ = self.peek()
        if kind == "op" and value == "(":
            self.next()
            args = self.args()
            return ("dapplied", target, tuple(pairs), tuple(args))
        return ("d", target, tuple(pairs), pos)


# ---------------------------------------------------------------------------
# AST -> Expr with opaque-function resolution
# ---------------------------------------------------------------------------

def _collect_prototypes(ast, protos):
    """Record each function's argument names from plain-variable calls."""
    if not isinstance(ast, tuple):
        return
    if ast[0] == "call":
        _, name, args = ast
        names = []
        for a in args:
            if isinstance(a, tuple) and a[0] == "bare":
                names.append(a[1])
            else:
                names = None
                break
        if names is not None and name not in protos:
            protos[name] = tuple(names)
    for child in ast[1:]:
        if isinstance(child, tuple):
            _collect_prototypes(child, protos)
        elif isinstance(child, (list,)):
            for c in child:
                _collect_prototypes(c, protos)


class _Builder:
    def __init__(self, ctx, protos):
        self.ctx = ctx
        self.protos = protos
        self.arities = {}

    def check_arity(self, name, arity, pos=None):
        known = self.arities.get(name)
        if known is None:
            self.arities[name] = arity
        elif known != arity:
            raise ArityError(
                f"{name} used with {known} and {arity} arguments")

    def build(self, ast):
        head = ast[0]
        if head == "rat":
            return Rat(ast[1])
        if head == "bare":
            name = ast[1]
            if name in (self.ctx.indep, self.ctx.dep):
                return Var(name)
            return Const(name)
        if head == "jet":
            _, name, k = ast
            return Jet(name, k)
        if head == "neg":
            return neg(self.build(ast[1]))
        if head == "+":
            return add(self.build(ast[1]), self.build(ast[2]))
        if head == "*":
            return mul(self.build(ast[1]), self.build(ast[2]))
        if head == "/":
            from .nodes import div
            return div(self.build(ast[1]), self.build(ast[2]))
        if head == "^":
            return power(self.build(ast[1]), ast[2])
        if head == "call":
            _, name, args = ast
            built = tuple(self.build(a) for a in args)
            self.check_arity(name, len(built))
            return Func(name, built)
        if head == "int":
            _, body, var = ast
            return integral(self.build(body), var)
        if head == "exp":
            return self.build_exp(self.build(ast[1]))
        if head == "d":
            return self.build_d(ast)
        if head == "dapplied":
            _, name, pairs, args = ast
            built = tuple(self.build(a) for a in args)
            if len(pairs) != len(built):
                raise ParseError(
                    f"D({name}, ...) lists {len(pairs)} slots but is applied "
                    f"to {len(built)} arguments")
            orders = tuple(k for _, k in pairs)
            self.check_arity(name, len(built))
            return Func(name, built, orders)
        raise ParseError(f"unexpected syntax node {head!r}")

    def build_d(self, ast):
        _, target, pairs, pos = ast
        if target == self.ctx.dep:
            if len(pairs) != 1 or pairs[0][0] != self.ctx.indep:
                raise ParseError(
                    f"derivatives of {target} are taken with respect to "
                    f"{self.ctx.indep}", position=pos)
            k = pairs[0][1]
            return Var(target) if k == 0 else Jet(target, k)
        proto = self.protos.get(target)
        if proto is not None and all(v in proto for v, _ in pairs):
            orders = [0] * len(proto)
            for v, k in pairs:
                orders[proto.index(v)] += k
            args = tuple(Var(v) for v in proto)
        else:
            args = tuple(Var(v) for v, _ in pairs)
            orders = [k for _, k in pairs]
        self.check_arity(target, len(args))
        return Func(target, args, tuple(orders))

    def build_exp(self, inner):
        """exp(u) for u a rational combination of antiderivative nodes."""
        factors = []
        for coeff, powers in as_terms(inner):
            if not powers:
                if coeff == 0:
                    continue
                raise ParseError(
                    "exp(...) argument must be a combination of int(...) "
                    "nodes with no constant term")
            if len(powers) != 1:
                raise ParseError("exp(...) argument must be linear in "
                                 "int(...) nodes")
            (base, q), = powers.items()
            if not isinstance(base, Integral) or q != 1:
                raise ParseError("exp(...) accepts rational multiples of "
                                 "int(...) nodes only")
            factors.append(exp_integral(mul(Rat(coeff), base.integrand),
                                        base.var))
        return mul(*factors) if factors else rational(1)


def parse(text, ctx=None):
    """Parse expression text into a normalized expression.

    ``ctx`` names the independent and dependent variables; it defaults
    to (x, y).
    """
    if ctx is None:
        ctx = JetSpace("x", "y")
    ast = _Parser(text, ctx).parse()
    protos = {}
    _collect_prototypes(ast, protos)
    for reserved in _RESERVED:
        protos.pop(reserved, None)
    return _Builder(ctx, protos).build(ast)


def parse_equation(text, ctx=None):
    """Parse ``lhs = 0`` (or a bare expression) into the lhs expression."""
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        if rhs.strip() != "0":
            raise ParseError("equations must have the form <expr> = 0")
        text = lhs
    return parse(text, ctx)
