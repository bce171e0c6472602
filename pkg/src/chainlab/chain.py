"""Chain equations built by iterating the operator d/dx + F(x, y).

``build_chain(F, n)`` expands the n-fold iteration applied to y into a
monic n-th order equation; ``reduce_mod`` eliminates high derivatives
modulo a chain equation, and ``log_derivative_reduce`` realizes the
classical reduction of the trivial equation w^(n+1) = 0 to the order-n
member of the unit Riccati chain.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonMonic, OrderOverflow
from .expr import (Expr, Jet, JetSpace, Rat, Var, add, collect_powers,
                   is_jet_free, max_jet_order, mul, normalize, one,
                   substitute, total_derivative, zero)

__all__ = ["ODE", "ParamFunction", "apply_operator", "build_chain",
           "standard_chain", "reduce_mod", "log_derivative_reduce"]


@dataclass(frozen=True)
class ParamFunction:
    """A function of (x, y) only; labels one chain of equations."""

    expr: Expr

    def __post_init__(self):
        if max_jet_order(self.expr) != 0:
            raise ValueError("a parameter function must be jet-free")


@dataclass(frozen=True)
class ODE:
    """An equation lhs = 0, monic in the highest derivative of ``dep``."""

    order: int
    lhs: Expr
    indep: str = "x"
    dep: str = "y"

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("equation order must be >= 1")
        top = Jet(self.dep, self.order)
        object.__setattr__(self, "lhs", normalize(self.lhs))
        try:
            parts = collect_powers(self.lhs, top)
        except ValueError as exc:
            raise NonMonic(str(exc)) from exc
        if sorted(parts) not in ([0, 1], [1]):
            raise NonMonic(
                f"equation must be linear in {self.dep}^({self.order})")
        if parts.get(1) != one():
            raise NonMonic(
                f"coefficient of {self.dep}^({self.order}) must be exactly 1")

    def context(self, headroom=2):
        return JetSpace(self.indep, self.dep,
                        max(self.order, max_jet_order(self.lhs)) + headroom)

    def __str__(self):
        from .expr import equation_to_text

        return equation_to_text(self.lhs)


def _param_expr(f):
    if isinstance(f, ParamFunction):
        return f.expr
    if isinstance(f, Expr):
        return ParamFunction(f).expr
    return Rat(f)


def apply_operator(f, e, ctx):
    """One application of the chain operator: D_x e + F * e."""
    return add(total_derivative(e, ctx), mul(_param_expr(f), e))


def build_chain(f, n, indep="x", dep="y"):
    """The order-n chain equation of the parameter function F, expanded
    and monic in the top derivative."""
    if n < 1:
        raise ValueError("chain order must be >= 1")
    fe = _param_expr(f)
    if isinstance(f, Expr) or isinstance(f, ParamFunction):
        pass
    ctx = JetSpace(indep, dep, n + 1)
    lhs = Var(dep)
    for _ in range(n):
        lhs = apply_operator(fe, lhs, ctx)
    return ODE(n, lhs, indep, dep)


def standard_chain(kind, lam, n, indep="x", dep="y"):
    """Order-n member of the ordinary Riccati (F = lam*y) or Abel
    (F = lam*y^2) chain."""
    y = Var(dep)
    if kind == "riccati":
        f = mul(_param_expr(lam), y)
    elif kind == "abel":
        f = mul(_param_expr(lam), y, y)
    else:
        raise ValueError("kind must be 'riccati' or 'abel'")
    return build_chain(f, n, indep, dep)


def reduce_mod(e, ode):
    """Eliminate derivatives of order >= ode.order from ``e`` using the
    equation and its total derivatives; the result has lower jet order."""
    n = ode.order
    dep, indep = ode.dep, ode.indep
    top_order = max(max_jet_order(e, dep), n)
    ctx = JetSpace(indep, dep, top_order + 1)
    solved = add(Jet(dep, n), mul(Rat(-1), ode.lhs))  # y^(n) = -(lhs - y^(n))
    reps = {n: solved}
    for k in range(n + 1, top_order + 1):
        try:
            d = total_derivative(reps[k - 1], ctx)
        except OrderOverflow as exc:  # pragma: no cover - context is sized
            raise OrderOverflow(str(exc)) from exc
        reps[k] = substitute(d, {Jet(dep, n): reps[n]})
    return substitute(e, {Jet(dep, k): rep for k, rep in reps.items()})


def log_derivative_reduce(n):
    """Reduce w^(n+1) = 0 by w = e^u followed by y = u'.

    Writing (e^u)^(k) = B_k e^u gives B_1 = u' and B_{k+1} = D_x B_k +
    u' B_k; renaming u', u'', ... to y, y', ... yields the order-n
    member of the unit Riccati chain.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    ctx = JetSpace("x", "u", n + 2)
    b = Jet("u", 1)
    for _ in range(n):
        b = add(total_derivative(b, ctx), mul(Jet("u", 1), b))
    bindings = {Jet("u", 1): Var("y")}
    for k in range(2, n + 2):
        bindings[Jet("u", k)] = Jet("y", k - 1)
    return ODE(n, substitute(b, bindings), "x", "y")
