"""Numeric instantiation oracle and two-tier zero testing.

The probe instantiates atoms deterministically from a seed: base
variables from [1, 2], jet variables from [-1, 1], named constants from
{+-1, +-2, +-3}, and each opaque function as a random polynomial of
total degree <= 4 with coefficients in [-1, 1].  Samples are exact
rationals, so polynomial identities evaluate to exactly zero; floats
only enter through irrational fractional powers, exponentials and
non-polynomial antiderivatives.

Antiderivative nodes are evaluated by recovering the instantiated
integrand as an exact polynomial (Newton interpolation with exact
verification) and antidifferentiating it in closed form with constant
of integration 0; integrands that are not polynomial in the integration
variable fall back to adaptive quadrature anchored at 0.

Zero testing is two tier: the canonical form is checked first (after
clearing composite denominators), then at least eight independent
instantiations decide, so a normalizer bug cannot silently certify a
false identity.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import PoleError, ProbeSingular
from .nodes import (Const, ExpIntegral, Func, Integral, Jet, Power, Product,
                    Rat, Sum, Var, as_terms, contains, mul, normalize, power,
                    shift_powers)

__all__ = ["ProbeContext", "evaluate", "numeric_probe", "is_zero",
           "ZeroVerdict", "SYMBOLIC_ZERO", "NUMERIC_ZERO", "NON_ZERO",
           "clear_denominators", "DEFAULT_SEED"]

DEFAULT_SEED = 20260810
_TINY = 1e-12
_NUMERIC_TOL = Fraction(1, 10 ** 9)
_WITNESS_TOL = Fraction(1, 10 ** 6)
_GRID = 2 ** 20
_COEFF_GRID = 2 ** 10
_MAX_POLY_DEGREE = 40

SYMBOLIC_ZERO = "SymbolicZero"
NUMERIC_ZERO = "NumericZero"
NON_ZERO = "NonZero"


def _stable_rng(seed, *key):
    return random.Random(f"chainlab|{seed}|" + "|".join(map(repr, key)))


class ProbeContext:
    """Deterministic assignment of numeric values to atoms.

    Values are drawn lazily but keyed by (seed, atom identity), so the
    traversal order never changes the assignment and the same function
    name is instantiated identically across expressions.  ``overrides``
    force specific values for specific atoms (used by the finite
    difference tests to walk along a consistent jet curve).
    """

    def __init__(self, seed=DEFAULT_SEED, overrides=None):
        self.seed = seed
        self.overrides = dict(overrides or {})
        self._polys = {}
        self._integrals = {}

    def with_overrides(self, extra):
        child = ProbeContext(self.seed, {**self.overrides, **extra})
        child._polys = self._polys
        child._integrals = self._integrals
        return child

    def value_of(self, atom):
        if atom in self.overrides:
            return self.overrides[atom]
        if isinstance(atom, Var):
            rng = _stable_rng(self.seed, "var", atom.name)
            return Fraction(rng.randint(_GRID, 2 * _GRID), _GRID)
        if isinstance(atom, Const):
            rng = _stable_rng(self.seed, "const", atom.name)
            return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        if isinstance(atom, Jet):
            rng = _stable_rng(self.seed, "jet", atom.name, atom.order)
            return Fraction(rng.randint(-_GRID, _GRID), _GRID)
        raise TypeError(f"no probe value for {atom!r}")

    def polynomial_for(self, name, arity):
        key = (name, arity)
        poly = self._polys.get(key)
        if poly is None:
            rng = _stable_rng(self.seed, "func", name, arity)
            poly = {}
            for degrees in _multi_indices(arity, 4):
                poly[degrees] = Fraction(
                    rng.randint(-_COEFF_GRID, _COEFF_GRID), _COEFF_GRID)
            self._polys[key] = poly
        return poly


def _multi_indices(arity, max_total):
    if arity == 0:
        yield ()
        return
    for head in range(max_total + 1):
        for tail in _multi_indices(arity - 1, max_total - head):
            yield (head,) + tail


def _poly_partial(poly, slot):
    out = {}
    for degrees, c in poly.items():
        k = degrees[slot]
        if k == 0:
            continue
        lowered = degrees[:slot] + (k - 1,) + degrees[slot + 1:]
        out[lowered] = out.get(lowered, Fraction(0)) + c * k
    return out


def _poly_eval(poly, values):
    total = Fraction(0)
    for degrees, c in poly.items():
        term = c
        for v, k in zip(values, degrees):
            for _ in range(k):
                term = term * v
        total = total + term
    return total


def evaluate(e, ctx):
    """Evaluate under a probe context; exact Fraction when possible."""
    if isinstance(e, Rat):
        return e.value
    if isinstance(e, (Const, Var, Jet)):
        return ctx.value_of(e)
    if isinstance(e, Func):
        poly = ctx.polynomial_for(e.name, len(e.args))
        for slot, k in enumerate(e.orders):
            for _ in range(k):
                poly = _poly_partial(poly, slot)
        if not poly:
            return Fraction(0)
        values = [evaluate(a, ctx) for a in e.args]
        return _poly_eval(poly, values)
    if isinstance(e, Integral):
        return _integral_value(e, ctx)
    if isinstance(e, ExpIntegral):
        v = _integral_value(Integral(e.integrand, e.var), ctx)
        try:
            return math.exp(float(v))
        except OverflowError as exc:
            raise PoleError("exponential overflow during probe") from exc
    if isinstance(e, Power):
        return _power_value(evaluate(e.base, ctx), e.exponent)
    if isinstance(e, Product):
        out = Fraction(1)
        for f in e.factors:
            out = out * evaluate(f, ctx)
        return out
    if isinstance(e, Sum):
        out = Fraction(0)
        for t in e.terms:
            out = out + evaluate(t, ctx)
        return out
    raise TypeError(f"not an expression: {e!r}")


def _power_value(base, q):
    if q.denominator == 1:
        k = int(q)
        if k < 0 and abs(base) < _TINY:
            raise PoleError("division by a value below 1e-12")
        try:
            return base ** k
        except OverflowError as exc:
            raise PoleError("overflow during probe") from exc
    if base < 0:
        raise PoleError("fractional power of a negative probe value")
    if q < 0 and abs(base) < _TINY:
        raise PoleError("division by a value below 1e-12")
    if not isinstance(base, float):
        if base == 0:
            return Fraction(0)
        from .nodes import _exact_root
        exact = _exact_root(base ** q.numerator, q.denominator)
        if exact is not None:
            return exact
    try:
        return float(base) ** float(q)
    except OverflowError as exc:
        raise PoleError("overflow during probe") from exc


# ---------------------------------------------------------------------------
# Antiderivative evaluation
# ---------------------------------------------------------------------------

def _integral_value(node, ctx):
    upper = ctx.value_of(Var(node.var))
    plan = _integral_plan(node, ctx)
    if plan[0] == "poly":
        coeffs = plan[1]
        total = Fraction(0) if not isinstance(upper, float) else 0.0
        p = upper
        for k, c in enumerate(coeffs):
            total = total + c * p / (k + 1)
            p = p * upper
        return total
    return _quadrature(node, ctx, float(upper))


def _integral_plan(node, ctx):
    """Recover the instantiated integrand as an exact polynomial in the
    integration variable, or decide on quadrature.  The plan is cached
    per (node, seed, relevant overrides)."""
    var = Var(node.var)
    relevant = tuple(sorted(
        ((repr(a), v) for a, v in ctx.overrides.items()
         if a != var and contains(node.integrand, a)),
    ))
    key = (node.var, node.integrand, ctx.seed, relevant)
    plan = ctx._integrals.get(key)
    if plan is None:
        plan = _interpolate(node, ctx)
        ctx._integrals[key] = plan
    return plan


def _interpolate(node, ctx):
    var = Var(node.var)

    def sample(t):
        return evaluate(node.integrand, ctx.with_overrides({var: t}))

    nodes, values = [], []
    t = Fraction(1, 3)
    while len(nodes) < _MAX_POLY_DEGREE + 2:
        try:
            v = sample(t)
        except PoleError:
            t += Fraction(1, 11)
            continue
        if isinstance(v, float):
            return ("quad",)
        nodes.append(t)
        values.append(v)
        t += Fraction(2, 7)
    coeffs = _divided_differences(nodes, values)
    degree = len(coeffs) - 1
    while degree > 0 and coeffs[degree] == 0:
        degree -= 1
    if degree >= _MAX_POLY_DEGREE:
        return ("quad",)
    monomial = _newton_to_monomial(coeffs[:degree + 1], nodes[:degree + 1])
    if _verify_polynomial(sample, monomial):
        return ("poly", monomial)
    return ("quad",)


def _divided_differences(nodes, values):
    table = list(values)
    coeffs = [table[0]]
    n = len(nodes)
    for level in range(1, n):
        for i in range(n - level):
            table[i] = (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i])
        coeffs.append(table[0])
    return coeffs


def _newton_to_monomial(coeffs, nodes):
    # Horner on the Newton form: p = (...(c_k (x - t_{k-1}) + c_{k-1})...)
    poly = [coeffs[-1]]
    for j in range(len(coeffs) - 2, -1, -1):
        root = nodes[j]
        grown = [Fraction(0)] * (len(poly) + 1)
        for i, p in enumerate(poly):
            grown[i + 1] += p
            grown[i] -= root * p
        grown[0] += coeffs[j]
        poly = grown
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _verify_polynomial(sample, coeffs):
    for t in (Fraction(9, 4), Fraction(-3, 5), Fraction(13, 8)):
        try:
            v = sample(t)
        except PoleError:
            return False
        if isinstance(v, float):
            return False
        expected = Fraction(0)
        p = Fraction(1)
        for c in coeffs:
            expected += c * p
            p = p * t
        if v != expected:
            return False
    return True


def _quadrature(node, ctx, upper):
    import warnings

    from scipy.integrate import IntegrationWarning, quad

    var = Var(node.var)

    def f(t):
        return float(evaluate(node.integrand,
                              ctx.with_overrides({var: float(t)})))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        try:
            value, _ = quad(f, 0.0, upper, epsabs=1e-12, epsrel=1e-12,
                            limit=200)
        except PoleError:
            raise
        except Exception as exc:  # pole inside the integration range
            raise PoleError(f"quadrature failed: {exc}") from exc
    if not math.isfinite(value):
        raise PoleError("quadrature diverged")
    return value


def numeric_probe(e, seed=DEFAULT_SEED):
    """Deterministic numeric instantiation of an expression as a float."""
    v = evaluate(e, ProbeContext(seed))
    try:
        return float(v)
    except OverflowError as exc:
        raise PoleError("probe value overflows a float") from exc


# ---------------------------------------------------------------------------
# Zero testing
# ---------------------------------------------------------------------------

def clear_denominators(e):
    """Multiply through by composite denominators so that mixed
    representations of the same rational function cancel."""
    for _ in range(6):
        worst = {}
        for _, powers in as_terms(e):
            for b, q in powers.items():
                if isinstance(b, (Sum, ExpIntegral)) and q < 0:
                    worst[b] = min(worst.get(b, Fraction(0)), q)
        if not worst:
            return e
        e = shift_powers(e, {b: math.ceil(-q) for b, q in worst.items()})
    return e


@dataclass(frozen=True)
class ZeroVerdict:
    kind: str
    witness_seed: int = None
    witness_value: float = None

    def __bool__(self):
        return self.kind in (SYMBOLIC_ZERO, NUMERIC_ZERO)

    def __str__(self):
        if self.kind == NON_ZERO:
            return (f"NonZero(seed={self.witness_seed}, "
                    f"value={self.witness_value})")
        return self.kind


def is_zero(e, seed=DEFAULT_SEED, samples=8):
    """Two-tier zero test.

    SymbolicZero iff the canonical form (after clearing composite
    denominators) is 0; otherwise NumericZero if at least ``samples``
    independent instantiations all vanish to within 1e-9; otherwise
    NonZero carrying a witness instantiation of magnitude above 1e-6.
    """
    e = normalize(e)
    if isinstance(e, Rat):
        if e.value == 0:
            return ZeroVerdict(SYMBOLIC_ZERO)
        return ZeroVerdict(NON_ZERO, witness_seed=seed,
                           witness_value=float(e.value))
    cleared = clear_denominators(e)
    if isinstance(cleared, Rat) and cleared.value == 0:
        return ZeroVerdict(SYMBOLIC_ZERO)

    rng = _stable_rng(seed, "zero-test")
    clean = 0
    best_mag, best_seed = None, None
    for _ in range(6 * samples):
        sub_seed = rng.randrange(2 ** 31)
        try:
            v = evaluate(e, ProbeContext(sub_seed))
        except PoleError:
            continue
        if isinstance(v, float) and not math.isfinite(v):
            continue
        clean += 1
        mag = abs(v)
        if mag > _WITNESS_TOL:
            return ZeroVerdict(NON_ZERO, witness_seed=sub_seed,
                               witness_value=float(mag))
        if mag > _NUMERIC_TOL and (best_mag is None or mag > best_mag):
            best_mag, best_seed = mag, sub_seed
        if clean >= samples and best_mag is None:
            return ZeroVerdict(NUMERIC_ZERO)
    if clean < samples:
        raise ProbeSingular(
            f"could not collect {samples} pole-free instantiations")
    raise ProbeSingular(
        "zero test inconclusive: nonzero probes stayed below the witness "
        "threshold 1e-6")
