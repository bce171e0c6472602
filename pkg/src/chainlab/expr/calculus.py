"""Jet-space differentiation and substitution.

The total derivative D_x acts on expressions of (x, y, y', y'', ...) as
D_x = d/dx + y' d/dy + y'' d/dy' + ...; partial derivatives are formal:
jet variables are independent coordinates, opaque functions carry their
derivative record in a multi-index.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import (ArityError, InconsistentBinding, OrderOverflow,
                      UnsupportedSubstitution)
from .nodes import (Const, ExpIntegral, Expr, Func, Integral, Jet, Power,
                    Product, Rat, Sum, Var, add, exp_integral, integral, mul,
                    power, term_parts, zero, one)

__all__ = ["JetSpace", "total_derivative", "partial_derivative", "substitute"]


@dataclass(frozen=True)
class JetSpace:
    """Differentiation context: one independent and one dependent variable
    with a cap on derivative order."""

    indep: str
    dep: str
    max_order: int = 8

    def __post_init__(self):
        if self.indep == self.dep:
            raise ValueError("independent and dependent variable names must differ")
        if self.max_order < 1:
            raise ValueError("maximum jet order must be >= 1")

    def jet(self, order):
        return Var(self.dep) if order == 0 else Jet(self.dep, order)


def total_derivative(e, ctx):
    """Total derivative of ``e`` with respect to the independent variable."""
    if isinstance(e, (Rat, Const)):
        return zero()
    if isinstance(e, Var):
        if e.name == ctx.indep:
            return one()
        if e.name == ctx.dep:
            return Jet(ctx.dep, 1)
        return zero()
    if isinstance(e, Jet):
        if e.name != ctx.dep:
            return zero()
        if e.order + 1 > ctx.max_order:
            raise OrderOverflow(
                f"derivative of order {e.order + 1} exceeds context maximum "
                f"{ctx.max_order}")
        return Jet(e.name, e.order + 1)
    if isinstance(e, Func):
        terms = []
        for i, arg in enumerate(e.args):
            d_arg = total_derivative(arg, ctx)
            if isinstance(d_arg, Rat) and d_arg.value == 0:
                continue
            bumped = list(e.orders)
            bumped[i] += 1
            terms.append(mul(d_arg, Func(e.name, e.args, tuple(bumped))))
        return add(*terms) if terms else zero()
    if isinstance(e, Integral):
        if e.var == ctx.indep:
            return e.integrand
        return integral(total_derivative(e.integrand, ctx), e.var)
    if isinstance(e, ExpIntegral):
        if e.var == ctx.indep:
            return mul(e.integrand, e)
        return mul(integral(total_derivative(e.integrand, ctx), e.var), e)
    if isinstance(e, Power):
        return mul(Rat(e.exponent), power(e.base, e.exponent - 1),
                   total_derivative(e.base, ctx))
    if isinstance(e, Product):
        return _leibniz(e, lambda b: total_derivative(b, ctx))
    if isinstance(e, Sum):
        return add(*[total_derivative(t, ctx) for t in e.terms])
    raise TypeError(f"not an expression: {e!r}")


def partial_derivative(e, s):
    """Formal partial derivative with respect to an atom.

    ``s`` may be a base variable, a named constant or (for internal
    symmetry machinery) a jet variable; a bare string names a base
    variable.
    """
    if isinstance(s, str):
        s = Var(s)
    if not isinstance(s, (Var, Const, Jet)):
        raise TypeError("partial derivatives are taken with respect to "
                        "base variables, named constants or jet variables")
    return _partial(e, s)


def _partial(e, s):
    if isinstance(e, Rat):
        return zero()
    if isinstance(e, (Const, Var, Jet)):
        return one() if e == s else zero()
    if isinstance(e, Func):
        terms = []
        for i, arg in enumerate(e.args):
            d_arg = _partial(arg, s)
            if isinstance(d_arg, Rat) and d_arg.value == 0:
                continue
            bumped = list(e.orders)
            bumped[i] += 1
            terms.append(mul(d_arg, Func(e.name, e.args, tuple(bumped))))
        return add(*terms) if terms else zero()
    if isinstance(e, Integral):
        if isinstance(s, Var) and s.name == e.var:
            return e.integrand
        return integral(_partial(e.integrand, s), e.var)
    if isinstance(e, ExpIntegral):
        if isinstance(s, Var) and s.name == e.var:
            return mul(e.integrand, e)
        return mul(integral(_partial(e.integrand, s), e.var), e)
    if isinstance(e, Power):
        return mul(Rat(e.exponent), power(e.base, e.exponent - 1),
                   _partial(e.base, s))
    if isinstance(e, Product):
        return _leibniz(e, lambda b: _partial(b, s))
    if isinstance(e, Sum):
        return add(*[_partial(t, s) for t in e.terms])
    raise TypeError(f"not an expression: {e!r}")


def _leibniz(product, derive):
    coeff, powers = term_parts(product)
    bases = list(powers.items())
    terms = []
    for i, (base, q) in enumerate(bases):
        d_base = derive(base)
        if isinstance(d_base, Rat) and d_base.value == 0:
            continue
        rest = [power(b, x) for j, (b, x) in enumerate(bases) if j != i]
        terms.append(mul(Rat(coeff * q), power(base, q - 1), d_base, *rest))
    return add(*terms) if terms else zero()


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def substitute(e, bindings):
    """Simultaneous substitution followed by normalization.

    ``bindings`` is a mapping or a list of (atom, replacement) pairs.
    Keys may be base variables, jet variables, named constants, or
    opaque-function prototypes.  A prototype key is a Func with zero
    multi-index whose arguments are distinct base variables; it rewrites
    every occurrence of that function, with any multi-index, by formally
    differentiating the replacement (so the rewrite is consistent across
    derivative instances).  Renaming a base variable to another base
    variable renames its jet variables as well.
    """
    pairs = list(bindings.items()) if hasattr(bindings, "items") else list(bindings)
    seen = set()
    var_map, jet_map, const_map, func_map = {}, {}, {}, {}
    for key, repl in pairs:
        if key in seen:
            raise InconsistentBinding(f"atom bound twice: {key!r}")
        seen.add(key)
        if not isinstance(repl, Expr):
            repl = Rat(Fraction(repl))
        if isinstance(key, Var):
            var_map[key.name] = repl
        elif isinstance(key, Jet):
            jet_map[(key.name, key.order)] = repl
        elif isinstance(key, Const):
            const_map[key.name] = repl
        elif isinstance(key, Func):
            if any(k != 0 for k in key.orders):
                raise InconsistentBinding(
                    "function prototype keys must carry a zero multi-index")
            formals = []
            for a in key.args:
                if not isinstance(a, Var):
                    raise InconsistentBinding(
                        "function prototype arguments must be base variables")
                formals.append(a.name)
            if len(set(formals)) != len(formals):
                raise InconsistentBinding(
                    "function prototype arguments must be distinct")
            func_map[key.name] = (tuple(formals), repl)
        else:
            raise InconsistentBinding(f"unsupported binding key: {key!r}")
    return _subst(e, var_map, jet_map, const_map, func_map)


def _subst(e, var_map, jet_map, const_map, func_map):
    if isinstance(e, Rat):
        return e
    if isinstance(e, Const):
        return const_map.get(e.name, e)
    if isinstance(e, Var):
        return var_map.get(e.name, e)
    if isinstance(e, Jet):
        hit = jet_map.get((e.name, e.order))
        if hit is not None:
            return hit
        renamed = var_map.get(e.name)
        if isinstance(renamed, Var):
            return Jet(renamed.name, e.order)
        return e
    if isinstance(e, Func):
        args = tuple(_subst(a, var_map, jet_map, const_map, func_map)
                     for a in e.args)
        head = func_map.get(e.name)
        if head is None:
            return Func(e.name, args, e.orders)
        formals, repl = head
        if len(formals) != len(e.args):
            raise ArityError(
                f"{e.name} bound with arity {len(formals)} but used with "
                f"arity {len(e.args)}")
        for name, count in zip(formals, e.orders):
            for _ in range(count):
                repl = _partial(repl, Var(name))
        return substitute(repl, {Var(n): a for n, a in zip(formals, args)})
    if isinstance(e, (Integral, ExpIntegral)):
        var = e.var
        if var in var_map:
            target = var_map[var]
            if not isinstance(target, Var):
                raise UnsupportedSubstitution(
                    f"cannot substitute a composite expression for the "
                    f"integration variable {var!r}")
            var = target.name
        body = _subst(e.integrand, var_map, jet_map, const_map, func_map)
        if isinstance(e, Integral):
            return integral(body, var, e.label)
        return exp_integral(body, var)
    if isinstance(e, Power):
        return power(_subst(e.base, var_map, jet_map, const_map, func_map),
                     e.exponent)
    if isinstance(e, Product):
        return mul(*[_subst(f, var_map, jet_map, const_map, func_map)
                     for f in e.factors])
    if isinstance(e, Sum):
        return add(*[_subst(t, var_map, jet_map, const_map, func_map)
                     for t in e.terms])
    raise TypeError(f"not an expression: {e!r}")
