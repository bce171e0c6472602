"""Point symmetries: prolongation and verification of explicit generators.

A vector field xi d/dx + phi d/dy lifts to jet space through the
recursion phi^(j) = D_x phi^(j-1) - y^(j) D_x xi; it generates a
symmetry of a monic equation when the prolonged action on the left hand
side vanishes modulo the equation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import ODE, reduce_mod
from .errors import MissingAlpha
from .expr import (Expr, Integral, Jet, JetSpace, Rat, Var, add, div, is_zero,
                   max_jet_order, mul, neg, normalize, partial_derivative,
                   power, sub, substitute, total_derivative)

__all__ = ["VectorField", "prolong", "is_symmetry", "known_symmetries"]


@dataclass(frozen=True)
class VectorField:
    """xi(x, y) d/dx + phi(x, y) d/dy; components are jet-free."""

    xi: Expr
    phi: Expr
    indep: str = "x"
    dep: str = "y"

    def __post_init__(self):
        object.__setattr__(self, "xi", normalize(self.xi))
        object.__setattr__(self, "phi", normalize(self.phi))
        if max_jet_order(self.xi) or max_jet_order(self.phi):
            raise ValueError("vector field components must be jet-free")


def prolong(v, order, ctx=None):
    """Jet coefficients [phi^(0), ..., phi^(order)] of the prolongation."""
    if order < 1:
        raise ValueError("prolongation order must be >= 1")
    if ctx is None:
        ctx = JetSpace(v.indep, v.dep, order + 1)
    coeffs = [v.phi]
    d_xi = total_derivative(v.xi, ctx)
    for j in range(1, order + 1):
        coeffs.append(sub(total_derivative(coeffs[-1], ctx),
                          mul(Jet(v.dep, j), d_xi)))
    return coeffs


def is_symmetry(v, ode):
    """Apply the prolonged field to the equation and zero test modulo it."""
    n = ode.order
    ctx = JetSpace(ode.indep, ode.dep, n + 1)
    coeffs = prolong(v, n, ctx)
    action = add(mul(v.xi, partial_derivative(ode.lhs, Var(ode.indep))),
                 mul(coeffs[0], partial_derivative(ode.lhs, Var(ode.dep))),
                 *[mul(coeffs[j],
                       partial_derivative(ode.lhs, Jet(ode.dep, j)))
                   for j in range(1, n + 1)])
    return is_zero(reduce_mod(action, ode))


def known_symmetries(tag, n=None, alpha=None):
    """Explicit generator families for the linearizable second order
    member (v1, v2, v3, all needing the coefficient function alpha) and
    for the unit Riccati (bv, n >= 3) and Abel (bw) chains."""
    x, y = Var("x"), Var("y")
    if tag in ("v1", "v2", "v3"):
        if alpha is None:
            raise MissingAlpha(f"{tag} needs the coefficient function alpha")
        alpha = normalize(alpha)
    if tag == "v1":
        return [VectorField(mul(x, y),
                            mul(y, y, sub(Rat(1), mul(x, y, alpha))))]
    if tag == "v2":
        return [VectorField(mul(y, sub(Rat(1), x)),
                            mul(y, y, sub(mul(sub(x, Rat(1)), y, alpha),
                                          Rat(1))))]
    if tag == "v3":
        mu = Integral(mul(x, alpha), "x", label="mu")
        nu = Integral(mul(mu, power(x, -2)), "x", label="nu")
        core = add(mul(sub(x, Rat(1)), sub(x, mul(y, mu))),
                   mul(x, y, nu))
        xi = mul(nu, core)
        phi = neg(mul(power(x, -2), core,
                      add(x, neg(mul(y, mu)),
                          mul(x, y, sub(mul(x, y, alpha), Rat(1)), nu))))
        return [VectorField(xi, phi)]
    if tag == "bv":
        if n is None or n < 3:
            raise ValueError("bv generators exist for orders n >= 3")
        return [VectorField(Rat(1), Rat(0)),
                VectorField(x, neg(y)),
                VectorField(mul(x, x), sub(Rat(n), mul(2, x, y)))]
    if tag == "bw":
        if n is not None and n < 2:
            raise ValueError("bw generators exist for orders n >= 2")
        return [VectorField(Rat(1), Rat(0)),
                VectorField(x, neg(div(y, 2)))]
    raise ValueError(f"unknown generator tag {tag!r}")
