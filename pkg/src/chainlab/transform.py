"""Point transformations and the equivalence pseudo-group of the chains.

A chain equation of order n >= 2 keeps its form under x = rho(z) with
rho a fractional linear map and y = R(z) w; the parameter function
transforms as

    Q_n(z, w) = F(rho, R w) rho' + R'/R - ((n-1)/2) rho''/rho'.

The subgroup fixing parameter functions of the shape alpha(x)*y scales
by R = r0 rho'^((n-1)/2) and acts on alpha as

    g . alpha = alpha(rho) * omega / (k4 x + k3)^(n+1),
    omega = r0 * Delta^((n+1)/2),  Delta = k2 k3 - k1 k4,

which carries the four canonical coefficient shapes (constant, linear,
reciprocal-linear, linear-over-linear) onto the classes E1..E4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chain import ODE, ParamFunction, reduce_mod
from .errors import (CaseMismatch, DegenerateDenominator, DegenerateMap,
                     NoSolution, NotRational, ParityError, SingularJacobian)
from .expr import (Const, ExpIntegral, Expr, Func, Integral, Jet, JetSpace,
                   Rat, Sum, Var, add, as_terms, collect_powers, div,
                   is_zero, iter_atoms, mul, neg, normalize, one,
                   partial_derivative, power, sub, substitute,
                   total_derivative, zero)

__all__ = ["MoebiusMap", "PointTransformation", "GroupElement", "EClassLabel",
           "identity_map", "pullback_fiber", "maps_to", "transformed_parameter",
           "transformed_parameter_first_order", "canonical_reduce",
           "subgroup_action", "classify_alpha", "witness_element",
           "compose_elements"]


def _const_expr(v):
    if isinstance(v, Expr):
        return normalize(v)
    return Rat(Fraction(v))


@dataclass(frozen=True)
class MoebiusMap:
    """Fractional linear map rho(z) = (k2 z + k1)/(k4 z + k3), k4 in {0, 1}."""

    k1: Expr
    k2: Expr
    k3: Expr
    k4: Expr

    def __post_init__(self):
        for name in ("k1", "k2", "k3", "k4"):
            object.__setattr__(self, name, _const_expr(getattr(self, name)))
        if self.k4 not in (Rat(0), Rat(1)):
            raise DegenerateMap("k4 must be 0 or 1")
        if self.k4 == Rat(0) and self.k3 == Rat(0):
            raise DegenerateMap("(k3, k4) must not be (0, 0)")
        delta = self.delta
        if isinstance(delta, Rat):
            if delta.value == 0:
                raise DegenerateMap("vanishing determinant k2 k3 - k1 k4")
        elif not is_zero(delta).kind == "NonZero":
            raise DegenerateMap("vanishing determinant k2 k3 - k1 k4")

    @property
    def delta(self):
        return sub(mul(self.k2, self.k3), mul(self.k1, self.k4))

    def expr(self, var="z"):
        v = Var(var)
        return div(add(mul(self.k2, v), self.k1),
                   add(mul(self.k4, v), self.k3))

    def denominator(self, var="z"):
        return add(mul(self.k4, Var(var)), self.k3)


def identity_map():
    return MoebiusMap(0, 1, 1, 0)


@dataclass(frozen=True)
class PointTransformation:
    """A pair of components with a declared direction.

    forward: z = comp1(x, y), w = comp2(x, y);
    inverse: x = comp1(z, w), y = comp2(z, w).
    """

    direction: str
    comp1: Expr
    comp2: Expr
    source: tuple = ("x", "y")
    target: tuple = ("z", "w")

    def __post_init__(self):
        if self.direction not in ("forward", "inverse"):
            raise ValueError("direction must be 'forward' or 'inverse'")
        u, v = self.domain()
        jac = sub(mul(partial_derivative(self.comp1, u),
                      partial_derivative(self.comp2, v)),
                  mul(partial_derivative(self.comp1, v),
                      partial_derivative(self.comp2, u)))
        if is_zero(jac).kind == "SymbolicZero":
            raise SingularJacobian(
                "transformation Jacobian is symbolically zero")

    def domain(self):
        names = self.source if self.direction == "forward" else self.target
        return Var(names[0]), Var(names[1])


@dataclass(frozen=True)
class GroupElement:
    """Element of the equivalence pseudo-group at a given order.

    Either an arbitrary nonzero scaling function R(z) (the full group)
    or a nonzero constant r0 with the implied R = r0 rho'^((n-1)/2)
    (the subgroup preserving alpha(x)*y parameter functions).
    """

    mobius: MoebiusMap
    order: int
    scale: Expr = None
    r0: Expr = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("group element order must be >= 1")
        if (self.scale is None) == (self.r0 is None):
            raise ValueError("exactly one of scale R(z) or constant r0")
        if self.r0 is not None:
            object.__setattr__(self, "r0", _const_expr(self.r0))
            if not is_zero(self.r0).kind == "NonZero":
                raise ValueError("r0 must be nonzero")
        else:
            object.__setattr__(self, "scale", normalize(self.scale))
            if is_zero(self.scale):
                raise ValueError("scaling function must be nonzero")

    @classmethod
    def general(cls, mobius, scale, order):
        return cls(mobius, order, scale=scale)

    @classmethod
    def constant(cls, mobius, r0, order):
        return cls(mobius, order, r0=r0)

    def scaling(self, var="z"):
        if self.scale is not None:
            return self.scale
        rho_z = partial_derivative(self.mobius.expr(var), var)
        return mul(self.r0, power(rho_z, Fraction(self.order - 1, 2)))


def identity_element(order):
    return GroupElement.general(identity_map(), one(), order)


# ---------------------------------------------------------------------------
# Pullback and conjugation of chain equations
# ---------------------------------------------------------------------------

def pullback_fiber(ode, g, target=("z", "w")):
    """Pull a chain equation back along x = rho(z), y = R(z) w and rescale
    it monic in the top derivative of w."""
    n = ode.order
    zvar, wvar = target
    rho = g.mobius.expr(zvar)
    scale = g.scaling(zvar)
    ctx = JetSpace(zvar, wvar, n + 1)
    rho_z = partial_derivative(rho, zvar)
    rho_z_inv = power(rho_z, -1)
    derivs = [mul(scale, Var(wvar))]
    for _ in range(n):
        derivs.append(mul(total_derivative(derivs[-1], ctx), rho_z_inv))
    bindings = {Var(ode.indep): rho, Var(ode.dep): derivs[0]}
    for k in range(1, n + 1):
        bindings[Jet(ode.dep, k)] = derivs[k]
    transformed = substitute(ode.lhs, bindings)
    # The top-derivative coefficient is R / rho'^n by construction, so
    # dividing by it in factored form keeps denominators aligned; the
    # monic invariant is then checked by the ODE constructor.
    rescaled = mul(transformed, power(rho_z, n), power(scale, -1))
    return ODE(n, rescaled, zvar, wvar)


def maps_to(ode_a, t, ode_b):
    """Does the forward transformation send solutions of ode_a to
    solutions of ode_b?

    Computes w_z = D_x W / D_x Z and its iterates, substitutes them into
    the target equation, reduces modulo the source equation, and zero
    tests the residual.
    """
    if t.direction != "forward":
        raise ValueError("maps_to needs a forward transformation")
    zc, wc = t.comp1, t.comp2
    m = ode_b.order
    ctx = JetSpace(ode_a.indep, ode_a.dep,
                   max(m, ode_a.order) + ode_a.order + 2)
    dz = total_derivative(zc, ctx)
    if is_zero(reduce_mod(dz, ode_a)):
        raise SingularJacobian("D_x of the new independent variable "
                               "vanishes on the source equation")
    dz_inv = power(dz, -1)
    derivs = [wc]
    for _ in range(m):
        derivs.append(mul(total_derivative(derivs[-1], ctx), dz_inv))
    bindings = {Var(ode_b.indep): zc, Var(ode_b.dep): derivs[0]}
    for k in range(1, m + 1):
        bindings[Jet(ode_b.dep, k)] = derivs[k]
    residual = substitute(ode_b.lhs, bindings)
    return is_zero(reduce_mod(residual, ode_a))


def transformed_parameter(f, g, n=None, source=("x", "y"), target=("z", "w")):
    """Parameter function of the transformed chain equation:
    F(rho, R w) rho' + R'/R - ((n-1)/2) rho''/rho'."""
    if n is None:
        n = g.order
    if n < 2:
        raise ValueError("the fiber-preserving formula needs order >= 2")
    fe = f.expr if isinstance(f, ParamFunction) else normalize(f)
    zvar, wvar = target
    rho = g.mobius.expr(zvar)
    scale = g.scaling(zvar)
    rho_z = partial_derivative(rho, zvar)
    rho_zz = partial_derivative(rho_z, zvar)
    scale_z = partial_derivative(scale, zvar)
    f_moved = substitute(fe, {Var(source[0]): rho,
                              Var(source[1]): mul(scale, Var(wvar))})
    return add(mul(f_moved, rho_z),
               div(scale_z, scale),
               neg(mul(Rat(Fraction(n - 1, 2)), div(rho_zz, rho_z))))


def transformed_parameter_first_order(f, t, source=("x", "y")):
    """First-order transformed parameter for a general inverse
    transformation x = rho(z, w), y = psi(z, w):

    Q1 = (F(rho, psi) psi rho_z + psi_z) / (w (F(rho, psi) psi rho_w + psi_w)).
    """
    if t.direction != "inverse":
        raise ValueError("the first-order formula needs an inverse "
                         "transformation")
    rho, psi = t.comp1, t.comp2
    z, w = Var(t.target[0]), Var(t.target[1])
    fe = f.expr if isinstance(f, ParamFunction) else normalize(f)
    f_moved = substitute(fe, {Var(source[0]): rho, Var(source[1]): psi})
    numer = add(mul(f_moved, psi, partial_derivative(rho, z)),
                partial_derivative(psi, z))
    denom = mul(w, add(mul(f_moved, psi, partial_derivative(rho, w)),
                       partial_derivative(psi, w)))
    if is_zero(denom):
        raise DegenerateDenominator("vanishing denominator in the "
                                    "first-order formula")
    return div(numer, denom)


# ---------------------------------------------------------------------------
# Canonical reductions of common parameter-function shapes
# ---------------------------------------------------------------------------

def canonical_reduce(case, n, f0="F0", eps=1, a=1, b=0, c=1, d=0, A=None,
                     B=None):
    """Reduce a structured parameter function to its canonical form.

    case 'a': F = eps F0(a x + b, c y + d)   (eps != 0)
    case 'b': F = F0(x, y) + A(x) y + B(x)
    case 'c': F = F0(x, A(x) y)              (A != 0)

    Returns the reducing group element and the transformed parameter.
    """
    x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
    if case == "a":
        eps, a, b, c, d = map(_const_expr, (eps, a, b, c, d))
        if is_zero(eps):
            raise CaseMismatch("case (a) needs eps != 0")
        f = mul(eps, Func(f0, (add(mul(a, x), b), add(mul(c, y), d))))
        if c == Rat(0):
            fz = substitute(f, {x: z, y: w})
            g = GroupElement.general(identity_map(),
                                     ExpIntegral(neg(fz), "z"), n)
        else:
            g = GroupElement.general(MoebiusMap(0, power(eps, -1), 1, 0),
                                     power(c, -1), n)
        return g, transformed_parameter(f, g, n)
    if case == "b":
        if A is None or B is None:
            raise CaseMismatch("case (b) needs coefficient functions A and B")
        A, B = normalize(A), normalize(B)
        f = add(Func(f0, (x, y)), mul(A, y), B)
        bz = substitute(B, {x: z})
        g = GroupElement.general(identity_map(), ExpIntegral(neg(bz), "z"), n)
        return g, transformed_parameter(f, g, n)
    if case == "c":
        if A is None:
            raise CaseMismatch("case (c) needs the coefficient function A")
        A = normalize(A)
        if is_zero(A):
            raise CaseMismatch("case (c) needs A != 0")
        f = Func(f0, (x, mul(A, y)))
        az = substitute(A, {x: z})
        g = GroupElement.general(identity_map(), power(az, -1), n)
        return g, transformed_parameter(f, g, n)
    raise CaseMismatch(f"unknown case {case!r}")


# ---------------------------------------------------------------------------
# The subgroup preserving F = alpha(x) y and its orbit classes
# ---------------------------------------------------------------------------

def subgroup_action(alpha, r0, m, n, var="x"):
    """Action on the coefficient of a linear parameter function:
    alpha(rho(x)) * omega / (k4 x + k3)^(n+1), omega = r0 Delta^((n+1)/2)."""
    if n < 2:
        raise ValueError("the subgroup acts at orders >= 2")
    alpha = normalize(alpha) if isinstance(alpha, Expr) else Rat(alpha)
    r0 = _const_expr(r0)
    delta = m.delta
    if n % 2 == 0:
        if not isinstance(delta, Rat):
            raise ParityError("even order needs a rational determinant "
                              "of known sign")
        if delta.value < 0:
            raise ParityError("even order with negative determinant")
    omega = mul(r0, power(delta, Fraction(n + 1, 2)))
    moved = substitute(alpha, {Var(var): m.expr(var)})
    return mul(moved, omega, power(m.denominator(var), -(n + 1)))


def compose_elements(g1, g2):
    """Subgroup element realizing g2 acting after g1."""
    if g1.r0 is None or g2.r0 is None:
        raise ValueError("composition is defined for subgroup elements")
    if g1.order != g2.order:
        raise ValueError("orders must agree")
    n = g1.order
    # rho = rho1(rho2(x)) corresponds to the matrix product M1 M2.
    a1, b1, c1, d1 = g1.mobius.k2, g1.mobius.k1, g1.mobius.k4, g1.mobius.k3
    a2, b2, c2, d2 = g2.mobius.k2, g2.mobius.k1, g2.mobius.k4, g2.mobius.k3
    a = add(mul(a1, a2), mul(b1, c2))
    b = add(mul(a1, b2), mul(b1, d2))
    c = add(mul(c1, a2), mul(d1, c2))
    d = add(mul(c1, b2), mul(d1, d2))
    r0 = mul(g1.r0, g2.r0)
    if c != Rat(0):
        s = c
        a, b, c, d = div(a, s), div(b, s), one(), div(d, s)
        r0 = mul(r0, power(s, n + 1))
    return GroupElement.constant(MoebiusMap(b, a, d, c), r0, n)


@dataclass(frozen=True)
class EClassLabel:
    """Classification label: class index, extracted parameters, order."""

    j: int
    params: dict
    order: int

    def alpha_expr(self, var="x"):
        x = Var(var)
        p = self.params
        n = self.order
        if self.j == 1:
            return mul(p["gamma"],
                       power(add(mul(p["k4"], x), p["k3"]), -(n + 1)))
        if self.j == 2:
            return mul(p["gamma"], add(mul(p["p"], x), p["q"]),
                       power(add(mul(p["k4"], x), p["k3"]), -(n + 2)))
        if self.j == 3:
            return mul(p["gamma"], power(add(mul(p["p"], x), p["q"]), -1),
                       power(add(mul(p["k4"], x), p["k3"]), -n))
        return mul(p["gamma"], add(x, p["q"]), power(add(x, p["s"]), -1),
                   power(add(mul(p["k4"], x), p["k3"]), -(n + 1)))

    def __str__(self):
        from .expr import to_text

        inner = ", ".join(f"{k}={to_text(v)}" for k, v in self.params.items())
        return f"E{self.j}({inner}; n={self.order})"


class _LinearFactor:
    """A linear factor a*x + b with constant coefficient expressions."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = normalize(a)
        self.b = normalize(b)

    def monic(self):
        """Return (leading coefficient, monic factor with a = 1)."""
        return self.a, _LinearFactor(one(), div(self.b, self.a))

    def primitive(self):
        """Pull the rational content out of the coefficients."""
        g = _gcd_fraction(_content(self.a), _content(self.b))
        if g == 0:
            g = Fraction(1)
        g = g * _content_sign(self.a)
        return Rat(g), _LinearFactor(div(self.a, Rat(g)), div(self.b, Rat(g)))

    def proportional(self, other):
        """The ratio self/other if the factors are proportional, else None."""
        det = sub(mul(self.a, other.b), mul(self.b, other.a))
        if is_zero(det).kind == "NonZero":
            return None
        base = other.a if is_zero(other.a).kind == "NonZero" else other.b
        mine = self.a if is_zero(other.a).kind == "NonZero" else self.b
        return div(mine, base)


def _content(e):
    g = Fraction(0)
    for coeff, _ in as_terms(e):
        g = _gcd_fraction(g, coeff)
    return g


def _content_sign(e):
    terms = as_terms(e)
    if not terms:
        return 1
    return -1 if terms[-1][0] < 0 else 1


def _gcd_fraction(a, b):
    a, b = abs(a), abs(b)
    if a == 0:
        return b
    if b == 0:
        return a
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))


def _rational_linear_factors(coeffs):
    """Factor a rational-coefficient polynomial (dense, ascending) into
    linear factors via the rational root theorem.

    Returns (constant, factors) or None if an irreducible nonlinear part
    remains.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return Fraction(0), []
    factors = []
    constant = Fraction(1)
    while len(coeffs) > 2:
        root = _find_rational_root(coeffs)
        if root is None:
            return None
        out = [Fraction(0)] * (len(coeffs) - 1)
        carry = Fraction(0)
        for k in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[k] + carry * root
            out[k - 1] = carry
        factors.append(_LinearFactor(one(), Rat(-root)))
        coeffs = out
    if len(coeffs) == 2:
        factors.append(_LinearFactor(Rat(coeffs[1]), Rat(coeffs[0])))
    else:
        constant = coeffs[0]
    return constant, factors


def _find_rational_root(coeffs):
    scale = math.lcm(*[c.denominator for c in coeffs])
    ints = [int(c * scale) for c in coeffs]
    g = math.gcd(*ints)
    if g:
        ints = [c // g for c in ints]
    if ints[0] == 0:
        return Fraction(0)
    for p in _divisors(abs(ints[0])):
        for q in _divisors(abs(ints[-1])):
            for sign in (1, -1):
                candidate = Fraction(sign * p, q)
                if _poly_value(coeffs, candidate) == 0:
                    return candidate
    return None


def _divisors(m):
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            if d != m // d:
                out.append(m // d)
        d += 1
    return sorted(out)


def _poly_value(coeffs, t):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


def _dense_coeffs(e, var):
    parts = collect_powers(e, Var(var))
    degree = max(parts) if parts else 0
    return [parts.get(k, zero()) for k in range(degree + 1)]


def classify_alpha(alpha, n, var="x"):
    """Match a rational coefficient function against the classes E1..E4.

    Factors numerator and denominator into linear factors over the
    rationals where possible (named constants stay as opaque linear
    coefficients), cancels common factors, and validates each class's
    constraint set.  Returns None when no shape matches or a constraint
    fails.
    """
    alpha = normalize(alpha)
    xv = Var(var)
    for atom in iter_atoms(alpha):
        if isinstance(atom, (Func, Integral, ExpIntegral, Jet)):
            raise NotRational("classification needs a rational function "
                              "of the base variable")
        if isinstance(atom, Var) and atom.name != var:
            raise NotRational(f"unexpected variable {atom.name!r}")

    gamma = one()
    den_basis = {}
    for _, powers in as_terms(alpha):
        for base, q in powers.items():
            if q < 0 and (isinstance(base, Sum) or base == xv):
                if q.denominator != 1:
                    return None
                den_basis[base] = max(den_basis.get(base, 0), int(-q))
    numer = mul(alpha, *[power(base, k) for base, k in den_basis.items()])

    den = {}

    def register(factor, mult):
        # Registry entries are reference factors; a proportional factor
        # folds in and its constant ratio moves into gamma.
        nonlocal gamma
        ratio = _add_factor(den, factor, mult)
        if ratio is not None:
            gamma = mul(gamma, power(ratio, -mult))

    for base, k in den_basis.items():
        if base == xv:
            register(_LinearFactor(one(), zero()), k)
            continue
        coeffs = _dense_coeffs(base, var)
        if len(coeffs) == 1:
            gamma = mul(gamma, power(coeffs[0], -k))
        elif len(coeffs) == 2:
            register(_LinearFactor(coeffs[1], coeffs[0]), k)
        else:
            if not all(isinstance(c, Rat) for c in coeffs):
                return None
            split = _rational_linear_factors([c.value for c in coeffs])
            if split is None:
                return None
            constant, factors = split
            gamma = mul(gamma, power(Rat(constant), -k))
            for f in factors:
                register(f, k)

    try:
        coeffs_n = _dense_coeffs(numer, var)
    except ValueError:
        return None
    num_factors = []
    if len(coeffs_n) == 1:
        gamma = mul(gamma, coeffs_n[0])
    elif len(coeffs_n) == 2:
        num_factors.append(_LinearFactor(coeffs_n[1], coeffs_n[0]))
    elif all(isinstance(c, Rat) for c in coeffs_n):
        split = _rational_linear_factors([c.value for c in coeffs_n])
        if split is None:
            return None
        constant, factors = split
        gamma = mul(gamma, Rat(constant))
        num_factors.extend(factors)
    else:
        return None
    if is_zero(gamma).kind != "NonZero":
        return None

    remaining = []
    for f in num_factors:
        hit = None
        for key, entry in den.items():
            if entry[1] > 0:
                ratio = f.proportional(entry[0])
                if ratio is not None:
                    hit = (key, ratio)
                    break
        if hit is None:
            remaining.append(f)
        else:
            gamma = mul(gamma, hit[1])
            den[hit[0]][1] -= 1
    den_factors = [(entry[0], entry[1]) for entry in den.values()
                   if entry[1] > 0]
    return _match_class(gamma, remaining, den_factors, n)


def _add_factor(den, factor, mult):
    """Fold ``factor^mult`` into the registry; returns the ratio to an
    existing reference factor, or None if a new entry was created."""
    for entry in den.values():
        ratio = factor.proportional(entry[0])
        if ratio is not None:
            entry[1] += mult
            return ratio
    den[len(den)] = [factor, mult]
    return None


def _match_class(gamma, num_factors, den_factors, n):
    def monicize(factor, mult):
        lead, monic = factor.monic()
        return power(lead, -mult), monic

    if not num_factors:
        if not den_factors:
            return EClassLabel(1, {"gamma": gamma, "k4": zero(),
                                   "k3": one()}, n)
        if len(den_factors) == 1:
            f, k = den_factors[0]
            if k != n + 1:
                return None
            adjust, monic = monicize(f, k)
            return EClassLabel(1, {"gamma": mul(gamma, adjust),
                                   "k4": one(), "k3": monic.b}, n)
        if len(den_factors) == 2:
            (f1, k1), (f2, k2) = den_factors
            if {k1, k2} != {1, n}:
                return None
            pq, base = (f1, f2) if k2 == n else (f2, f1)
            adjust, monic = monicize(base, n)
            content, pq = pq.primitive()
            label = EClassLabel(3, {"gamma": mul(gamma, adjust,
                                                 power(content, -1)),
                                    "p": pq.a, "q": pq.b,
                                    "k4": one(), "k3": monic.b}, n)
            return label if _linear_constraints(label) else None
        return None

    if len(num_factors) != 1:
        return None
    top = num_factors[0]
    if not den_factors:
        content, top = top.primitive()
        label = EClassLabel(2, {"gamma": mul(gamma, content),
                                "p": top.a, "q": top.b,
                                "k4": zero(), "k3": one()}, n)
        return label if _linear_constraints(label) else None
    if len(den_factors) == 1:
        f, k = den_factors[0]
        if k == n + 2:
            adjust, monic = monicize(f, k)
            content, top = top.primitive()
            label = EClassLabel(2, {"gamma": mul(gamma, adjust, content),
                                    "p": top.a, "q": top.b,
                                    "k4": one(), "k3": monic.b}, n)
            return label if _linear_constraints(label) else None
        if k == 1:
            return _match_e4(gamma, top, f, None, n)
        return None
    if len(den_factors) == 2:
        (f1, k1), (f2, k2) = den_factors
        if {k1, k2} != {1, n + 1}:
            return None
        single, base = (f1, f2) if k2 == n + 1 else (f2, f1)
        return _match_e4(gamma, top, single, base, n)
    return None


def _match_e4(gamma, top, single, base, n):
    if base is None:
        k4, k3 = zero(), one()
    else:
        lead, monic = base.monic()
        gamma = mul(gamma, power(lead, -(n + 1)))
        k4, k3 = one(), monic.b
    lead_top, top = top.monic()
    gamma = mul(gamma, lead_top)
    lead_s, single = single.monic()
    gamma = mul(gamma, power(lead_s, -1))
    label = EClassLabel(4, {"gamma": gamma, "q": top.b, "s": single.b,
                            "k4": k4, "k3": k3}, n)
    if is_zero(sub(label.params["q"], label.params["s"])).kind != "NonZero":
        return None
    if is_zero(sub(mul(k4, label.params["s"]), k3)).kind != "NonZero":
        return None
    return label


def _linear_constraints(label):
    p, q = label.params["p"], label.params["q"]
    k3, k4 = label.params["k3"], label.params["k4"]
    if is_zero(p).kind != "NonZero":
        return False
    return is_zero(sub(mul(p, k3), mul(k4, q))).kind == "NonZero"


_CANONICAL_SOURCES = {
    1: lambda: Const("theta"),
    2: lambda: add(mul(Const("u"), Var("x")), Const("v")),
    3: lambda: power(add(mul(Const("u"), Var("x")), Const("v")), -1),
    4: lambda: mul(add(Var("x"), Const("r")),
                   power(add(Var("x"), Const("s")), -1)),
}


def witness_element(target, source=None, var="x"):
    """Find a subgroup element g with g . source = the target's function.

    ``source`` defaults to the canonical representative of the target's
    class.  Solves the linear system of the class construction for k1
    and k2 (k3, k4 are fixed by the target) and fixes r0 from gamma and
    the determinant; raises NoSolution when the system is inconsistent.
    """
    n = target.order
    if source is None:
        source = _CANONICAL_SOURCES[target.j]()
    source = normalize(source)
    src = classify_alpha(source, n, var=var)
    if src is None or src.j != target.j:
        raise NoSolution(f"source does not lie in class E{target.j}")
    k3, k4 = target.params["k3"], target.params["k4"]
    gamma_t, gamma_s = target.params["gamma"], src.params["gamma"]

    if target.j == 1:
        if k4 == Rat(0):
            mob = identity_map()
        else:
            mob = _mobius_checked(sub(k3, one()), one(), k3, one())
        omega = div(gamma_t, gamma_s)
    elif target.j in (2, 3):
        p, q = target.params["p"], target.params["q"]
        u, v = src.params["p"], src.params["q"]
        k2v = div(sub(p, mul(v, k4)), u)
        k1v = div(sub(q, mul(v, k3)), u)
        mob = _mobius_checked(k1v, k2v, k3, k4)
        omega = div(gamma_t, gamma_s)
    else:
        q, s = target.params["q"], target.params["s"]
        if src.params["k4"] != Rat(0):
            raise NoSolution("the E4 source must have the shape "
                             "(x + r)/(x + s)")
        r_src, s_src = src.params["q"], src.params["s"]
        diff = sub(r_src, s_src)
        qs = sub(q, s)
        c = div(mul(diff, sub(k3, mul(k4, s))), qs)
        d = div(mul(diff, sub(k3, mul(k4, q))), qs)
        if is_zero(d).kind != "NonZero":
            raise NoSolution("degenerate target: the numerator matches the "
                             "repeated denominator factor")
        k2v = sub(c, mul(r_src, k4))
        k1v = sub(mul(c, q), mul(r_src, k3))
        mob = _mobius_checked(k1v, k2v, k3, k4)
        omega = div(mul(gamma_t, d), mul(gamma_s, c))
    r0 = mul(omega, power(mob.delta, Fraction(-(n + 1), 2)))
    g = GroupElement.constant(mob, r0, n)
    residual = sub(subgroup_action(source, g.r0, g.mobius, n, var=var),
                   target.alpha_expr(var))
    if not is_zero(residual):
        raise NoSolution("constructed element does not reproduce the target")
    return g


def _mobius_checked(k1, k2, k3, k4):
    try:
        return MoebiusMap(k1, k2, k3, k4)
    except DegenerateMap as exc:
        raise NoSolution(f"linear system inconsistent: {exc}") from exc
