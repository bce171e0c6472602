"""Linearizability analysis for chain equations of orders 2 to 4.

A second order equation linearizable by a point transformation must be
cubic in the first derivative, y'' + A y'^3 + B y'^2 + C y' + D = 0,
and is linearizable iff the two classical invariants vanish:

    G1 = 3 A_xx - 2 B_xy + C_yy - 3 (C A)_x + 3 (D A)_y + (B^2)_x
         + 3 A D_y - B C_y
    G2 = 3 D_yy - 2 C_xy + B_xx - 3 (D A)_x + 3 (D B)_y - (C^2)_y
         - 3 D A_x + C B_x

For chain equations the conditions collapse to short residual lists in
the parameter function F: at order 2 they vanish exactly for F affine
in y; at orders 3 and 4 they force F_y = 0, so a nonlinear member is
never linearizable.  For orders >= 5 the same verdict is reported as
conjectural only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import ODE, ParamFunction, build_chain
from .errors import (BranchMismatch, ConstraintViolation, NotCubic,
                     NotPolynomial, UnsupportedOrder)
from .expr import (Expr, Integral, Jet, Rat, Var, add, collect_powers, div,
                   exp_integral, is_zero, max_jet_order, mul, neg, normalize,
                   partial_derivative, power, sub, substitute, zero)
from .transform import GroupElement, PointTransformation, identity_map

__all__ = ["CubicCoefficients", "LinearizabilityVerdict",
           "extract_cubic_coeffs", "lie_conditions",
           "chain_linearization_residuals", "is_linearizable", "beta_gauge",
           "linearizing_family", "determining_residuals"]

LINEARIZABLE = "Linearizable"
NOT_LINEARIZABLE = "NotLinearizable"
ALREADY_LINEAR = "AlreadyLinear"
CONJECTURED_NOT_LINEARIZABLE = "ConjecturedNotLinearizable"


@dataclass(frozen=True)
class CubicCoefficients:
    """Coefficients of y'' + A y'^3 + B y'^2 + C y' + D = 0."""

    A: Expr
    B: Expr
    C: Expr
    D: Expr
    indep: str = "x"
    dep: str = "y"


@dataclass(frozen=True)
class LinearizabilityVerdict:
    status: str
    residuals: tuple
    order: int

    def __bool__(self):
        return self.status in (LINEARIZABLE, ALREADY_LINEAR)

    def __str__(self):
        return self.status


def extract_cubic_coeffs(ode):
    """Decompose a monic second order equation into cubic-in-y' form."""
    if ode.order != 2:
        raise ValueError("cubic extraction applies to second order equations")
    rest = sub(ode.lhs, Jet(ode.dep, 2))
    try:
        parts = collect_powers(rest, Jet(ode.dep, 1))
    except ValueError as exc:
        raise NotPolynomial(str(exc)) from exc
    if parts and max(parts) > 3:
        raise NotCubic(f"degree {max(parts)} in the first derivative")
    coeffs = [parts.get(k, zero()) for k in (3, 2, 1, 0)]
    for c in coeffs:
        if max_jet_order(c) != 0:
            raise NotPolynomial("coefficients must be jet-free")
    return CubicCoefficients(*coeffs, indep=ode.indep, dep=ode.dep)


def lie_conditions(c):
    """The two linearizability invariants of the cubic form."""
    x, y = Var(c.indep), Var(c.dep)

    def dx(e):
        return partial_derivative(e, x)

    def dy(e):
        return partial_derivative(e, y)

    g1 = add(mul(3, dx(dx(c.A))),
             neg(mul(2, dy(dx(c.B)))),
             dy(dy(c.C)),
             neg(mul(3, dx(mul(c.C, c.A)))),
             mul(3, dy(mul(c.D, c.A))),
             dx(mul(c.B, c.B)),
             mul(3, c.A, dy(c.D)),
             neg(mul(c.B, dy(c.C))))
    g2 = add(mul(3, dy(dy(c.D))),
             neg(mul(2, dx(dy(c.C)))),
             dx(dx(c.B)),
             neg(mul(3, dx(mul(c.D, c.A)))),
             mul(3, dy(mul(c.D, c.B))),
             neg(dy(mul(c.C, c.C))),
             neg(mul(3, c.D, dx(c.A))),
             mul(c.C, dx(c.B)))
    return g1, g2


def chain_linearization_residuals(f, n, indep="x", dep="y"):
    """Reduced linearization conditions for the order-n chain equation."""
    fe = f.expr if isinstance(f, ParamFunction) else normalize(f)
    x, y = Var(indep), Var(dep)

    def dx(e):
        return partial_derivative(e, x)

    def dy(e):
        return partial_derivative(e, y)

    fy = dy(fe)
    fyy = dy(fy)
    if n == 2:
        return [add(mul(4, fyy), mul(y, dy(fyy))),
                add(mul(2, sub(fe, mul(y, fy)), fyy), dy(dy(dx(fe))))]
    if n == 3:
        return [add(mul(4, fy), mul(y, fyy)),
                add(mul(3, fy), mul(y, fyy)),
                add(mul(y, fy, fy),
                    neg(mul(2, y, y, fy, fyy)),
                    mul(3, fe, add(fy, mul(y, fyy))),
                    mul(3, add(dx(fy), mul(y, dx(fyy)))))]
    if n == 4:
        return [add(mul(5, fy), mul(y, fyy)), fyy]
    raise UnsupportedOrder(f"no residual list for order {n}")


def is_linearizable(f, n, indep="x", dep="y"):
    """Linearizability verdict for the order-n equation of the chain
    labeled by F."""
    if n < 2:
        raise ValueError("linearization verdicts start at order 2")
    fe = f.expr if isinstance(f, ParamFunction) else normalize(f)
    fy = partial_derivative(fe, Var(dep))
    if n == 2:
        residuals = chain_linearization_residuals(fe, 2, indep, dep)
        bad = tuple(r for r in residuals if not is_zero(r))
        if bad:
            return LinearizabilityVerdict(NOT_LINEARIZABLE, bad, n)
        return LinearizabilityVerdict(LINEARIZABLE, tuple(residuals), n)
    if is_zero(fy):
        return LinearizabilityVerdict(ALREADY_LINEAR, (), n)
    if n in (3, 4):
        residuals = chain_linearization_residuals(fe, n, indep, dep)
        bad = tuple(r for r in residuals if not is_zero(r))
        return LinearizabilityVerdict(NOT_LINEARIZABLE, bad, n)
    return LinearizabilityVerdict(CONJECTURED_NOT_LINEARIZABLE, (fy,), n)


def beta_gauge(alpha0, beta, n):
    """Remove the inhomogeneous part of an affine parameter function.

    For F = alpha0(x) y + beta(x), the dependent-variable scaling
    R = exp(-int beta) turns the equation into the member with
    F = alpha y, alpha = alpha0 exp(-int beta).  Returns the group
    element (in the transformed variables) and alpha (in x).
    """
    alpha0 = normalize(alpha0)
    beta = normalize(beta)
    beta_z = substitute(beta, {Var("x"): Var("z")})
    g = GroupElement.general(identity_map(), exp_integral(neg(beta_z), "z"), n)
    alpha = mul(alpha0, exp_integral(neg(beta), "x"))
    return g, alpha


def linearizing_family(alpha, ks, indep="x", dep="y"):
    """The six-constant family of transformations that linearize the
    second order equation with F = alpha(x) y.

    ks maps 'k1'..'k6' to constants with k3 k6 != 0 and k5 != 1; the two
    antiderivative nodes stay unexpanded and are removed by
    differentiation during verification.
    """
    alpha = normalize(alpha)
    k = {name: (ks[name] if isinstance(ks[name], Expr) else Rat(Fraction(ks[name])))
         for name in ("k1", "k2", "k3", "k4", "k5", "k6")}
    k3k6 = mul(k["k3"], k["k6"])
    if is_zero(k3k6):
        raise ConstraintViolation("k3 k6 must be nonzero")
    if is_zero(sub(k["k5"], Rat(1))):
        raise ConstraintViolation("k5 must differ from 1")
    x, y = Var(indep), Var(dep)
    k1, k2, k3, k4, k5, k6 = (k[f"k{i}"] for i in range(1, 7))

    big_t = Integral(div(mul(sub(k5, x), alpha), k3), indep, label="T")
    inner = Integral(div(mul(k6, sub(k1, big_t)), power(sub(k5, x), 2)),
                     indep)
    q = power(mul(sub(k5, Rat(1)), k3, sub(k5, x), y), -1)
    rho = add(div(sub(x, k5), mul(k3, y)), neg(k1), big_t)
    lead = add(mul(sub(k5, Rat(1)), k4, sub(k5, x)), mul(k6, sub(x, Rat(1))))
    bracket = add(
        mul(lead, sub(x, k5)),
        neg(mul(k3,
                add(mul(sub(k5, Rat(1)), sub(mul(k4, k1), k2), sub(k5, x)),
                    mul(k6, k1, sub(x, Rat(1)))),
                y)),
        mul(k3, y, add(mul(lead, big_t),
                       mul(sub(k5, Rat(1)), sub(k5, x), inner))))
    psi = mul(q, bracket)
    return PointTransformation("forward", rho, psi,
                               source=(indep, dep), target=("z", "w"))


def determining_residuals(c, rho, psi, branch):
    """Residuals of the determining system for a transformation
    (rho, psi) carrying the trivial equation onto the cubic form.

    branch 'fiber' is the system valid for rho_y = 0 (four residuals),
    branch 'general' the one for rho_y != 0 (six residuals); all vanish
    iff the pair maps w'' = 0 to the equation with coefficients ``c``.
    """
    x, y = Var(c.indep), Var(c.dep)
    rho, psi = normalize(rho), normalize(psi)

    def dx(e):
        return partial_derivative(e, x)

    def dy(e):
        return partial_derivative(e, y)

    rho_x, rho_y = dx(rho), dy(rho)
    psi_x, psi_y = dx(psi), dy(psi)
    A, B, C, D = c.A, c.B, c.C, c.D

    if branch == "fiber":
        if is_zero(rho_y).kind == "NonZero":
            raise BranchMismatch("fiber branch needs rho independent of y")
        rho_xx = dx(rho_x)
        inv = power(rho_x, -1)
        return [
            sub(dy(psi_y), mul(psi_y, B)),
            add(mul(2, dx(psi_y)), neg(mul(inv, psi_y, rho_xx)),
                neg(mul(psi_y, C))),
            add(dx(psi_x), neg(mul(inv, psi_x, rho_xx)), neg(mul(psi_y, D))),
            add(mul(2, rho_x, dx(dx(psi_x))), neg(mul(3, rho_xx, rho_xx)),
                neg(mul(rho_x, rho_x,
                        sub(mul(4, add(dy(D), mul(B, D))),
                            add(mul(2, dx(C)), mul(C, C)))))),
        ]
    if branch == "general":
        if is_zero(rho_y):
            raise BranchMismatch("general branch needs rho_y != 0")
        rho_xx, rho_xy, rho_yy = dx(rho_x), dy(rho_x), dy(rho_y)
        rho_yyy, rho_xyy = dy(rho_yy), dy(rho_xy)
        psi_xx, psi_xy, psi_yy = dx(psi_x), dy(psi_x), dy(psi_y)
        shared = add(mul(C, rho_y, rho_y), neg(mul(2, rho_y, rho_xy)),
                     mul(rho_x, add(mul(A, rho_x), neg(mul(B, rho_y)),
                                    rho_yy)))
        return [
            sub(mul(rho_y, add(mul(A, psi_x), psi_yy)),
                mul(psi_y, add(mul(A, rho_x), rho_yy))),
            add(mul(sub(mul(B, rho_y), mul(A, rho_x)),
                    sub(mul(rho_y, psi_x), mul(rho_x, psi_y))),
                neg(mul(2, rho_y, psi_y, rho_xy)),
                mul(sub(mul(rho_x, psi_y), mul(rho_y, psi_x)), rho_yy),
                mul(2, rho_y, rho_y, psi_xy)),
            add(mul(rho_y, rho_y, psi_xx),
                neg(mul(D, rho_y, rho_y, psi_y)),
                mul(psi_x, shared)),
            add(mul(rho_y, rho_y, rho_xx),
                neg(mul(D, rho_y, rho_y, rho_y)),
                mul(rho_x, shared)),
            add(mul(2, add(mul(A, B), dy(A)), rho_x, rho_y),
                mul(add(mul(B, B), neg(mul(4, A, C)), mul(4, dx(A)),
                        neg(mul(2, dy(B)))),
                    rho_y, rho_y),
                mul(6, A, rho_y, rho_xy),
                neg(mul(3, power(add(mul(A, rho_x), rho_yy), 2))),
                mul(2, rho_y, rho_yyy)),
            add(neg(mul(3, A, A, rho_x, rho_x, rho_x)),
                mul(3, add(mul(B, B), neg(mul(2, A, C)), mul(2, dx(A))),
                    rho_x, rho_y, rho_y),
                neg(mul(2, add(mul(3, A, D), neg(dx(B)), mul(2, dy(C))),
                        rho_y, rho_y, rho_y)),
                mul(3, rho_x, rho_yy,
                    add(neg(mul(2, B, rho_y)), rho_yy)),
                mul(6, rho_y, rho_xy, sub(mul(B, rho_y), mul(2, rho_yy))),
                mul(6, rho_y, rho_y, rho_xyy)),
        ]
    raise BranchMismatch(f"unknown branch {branch!r}")
