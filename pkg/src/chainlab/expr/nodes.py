"""Immutable symbolic expression trees over exact rationals.

Expressions are built through the module-level constructors (``add``,
``mul``, ``power``, ...) and are canonical by construction: sums and
products are flattened, rational coefficients merged, integer powers of
sums expanded, equal bases combined, and terms sorted under a fixed
total ordering of atoms (rationals < named constants < base variables <
jet variables by order < opaque functions by (name, multi-index) <
antiderivatives < exponential antiderivatives < composite bases).

Fractional powers use the principal branch on positive bases; numeric
instantiation of a fractional power at a negative base is a pole, not a
complex value.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DivisionByZero

__all__ = [
    "Expr", "Rat", "Const", "Var", "Jet", "Func", "Integral", "ExpIntegral",
    "Power", "Product", "Sum",
    "add", "mul", "power", "neg", "sub", "div", "rational", "zero", "one",
    "normalize", "as_terms", "term_parts", "cmp", "sort_key", "shift_powers",
    "contains", "iter_atoms", "max_jet_order", "is_jet_free", "is_constant",
    "collect_powers", "coefficient_of", "free_function_names",
]

_MAX_EXPANSION_EXPONENT = 64


class Expr:
    """Base class for immutable expression nodes."""

    __slots__ = ("_hash", "_ordkey")

    def _key(self):  # pragma: no cover - abstract
        raise NotImplementedError

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def ordkey(self):
        """Cached total-order key; keys compare natively as tuples."""
        k = getattr(self, "_ordkey", None)
        if k is None:
            k = self._make_ordkey()
            object.__setattr__(self, "_ordkey", k)
        return k

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        return cmp(self, other) < 0

    # Arithmetic sugar; everything funnels into the canonical constructors.
    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, neg(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), neg(self))

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __neg__(self):
        return neg(self)

    def __repr__(self):
        from .printer import to_text

        return f"<Expr {to_text(self)}>"


class Rat(Expr):
    """Exact rational constant."""

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", Fraction(value))

    def _key(self):
        return (0, self.value)

    def _make_ordkey(self):
        return (0, self.value)


class Const(Expr):
    """Named constant, e.g. ``lambda``, ``theta``, ``k1``."""

    __slots__ = ("name",)

    def __init__(self, name):
        object.__setattr__(self, "name", name)

    def _key(self):
        return (1, self.name)

    def _make_ordkey(self):
        return (1, self.name)


class Var(Expr):
    """Independent or dependent base variable."""

    __slots__ = ("name",)

    def __init__(self, name):
        object.__setattr__(self, "name", name)

    def _key(self):
        return (2, self.name)

    def _make_ordkey(self):
        return (2, self.name)


class Jet(Expr):
    """Derivative coordinate y^(k) of a dependent variable, k >= 1.

    Jet variables are independent coordinates for partial
    differentiation; order 0 is the base variable itself.
    """

    __slots__ = ("name", "order")

    def __init__(self, name, order):
        if order < 1:
            raise ValueError("jet order must be >= 1; order 0 is the base variable")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "order", int(order))

    def _key(self):
        return (3, self.name, self.order)

    def _make_ordkey(self):
        return (3, self.name, self.order)


class Func(Expr):
    """Opaque function applied to arguments, with a derivative multi-index.

    ``orders[i]`` counts partial derivatives with respect to slot ``i``;
    mixed partials commute, so the multi-index is the sole derivative
    record.
    """

    __slots__ = ("name", "args", "orders")

    def __init__(self, name, args, orders=None):
        args = tuple(args)
        if orders is None:
            orders = (0,) * len(args)
        orders = tuple(int(k) for k in orders)
        if len(orders) != len(args):
            raise ValueError("multi-index length must match argument count")
        if any(k < 0 for k in orders):
            raise ValueError("multi-index entries must be >= 0")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "orders", orders)

    def _key(self):
        return (4, self.name, self.orders, self.args)

    def _make_ordkey(self):
        return (4, self.name, self.orders, len(self.args),
                tuple(a.ordkey() for a in self.args))


class Integral(Expr):
    """Antiderivative node: a symbol whose derivative is ``integrand``.

    The integration constant is fixed to zero (value 0 at the origin of
    the integration variable).  ``label`` is a display name only and is
    ignored by equality, ordering and hashing.
    """

    __slots__ = ("integrand", "var", "label")

    def __init__(self, integrand, var, label=None):
        object.__setattr__(self, "integrand", integrand)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "label", label)

    def _key(self):
        return (5, self.var, self.integrand)

    def _make_ordkey(self):
        return (5, self.var, self.integrand.ordkey())


class ExpIntegral(Expr):
    """Exponential of an antiderivative: exp(int(integrand, var)).

    Never zero; its derivative is ``integrand`` times the node itself.
    Rational powers fold into the integrand, so e.g. the square of
    exp(int(g, x)) is exp(int(2*g, x)).
    """

    __slots__ = ("integrand", "var")

    def __init__(self, integrand, var):
        object.__setattr__(self, "integrand", integrand)
        object.__setattr__(self, "var", var)

    def _key(self):
        return (6, self.var, self.integrand)

    def _make_ordkey(self):
        return (6, self.var, self.integrand.ordkey())


class Power(Expr):
    """Base raised to an exact rational exponent (never 0 or 1)."""

    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exponent", Fraction(exponent))

    def _key(self):
        return (7, self.exponent, self.base)

    def _make_ordkey(self):
        return (7, self.base.ordkey(), self.exponent)


class Product(Expr):
    """Flattened product: optional leading rational, then sorted factors."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))

    def _key(self):
        return (8, self.factors)

    def _make_ordkey(self):
        return (8, len(self.factors), tuple(f.ordkey() for f in self.factors))


class Sum(Expr):
    """Flattened sum of at least two terms in canonical term order."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        object.__setattr__(self, "terms", tuple(terms))

    def _key(self):
        return (9, self.terms)

    def _make_ordkey(self):
        return (9, len(self.terms), tuple(t.ordkey() for t in self.terms))


_ZERO = Rat(0)
_ONE = Rat(1)


def zero():
    return _ZERO


def one():
    return _ONE


def rational(p, q=1):
    if q == 0:
        raise DivisionByZero("rational constant with zero denominator")
    return Rat(Fraction(p, q))


def _coerce(value):
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Rat(value)
    raise TypeError(f"cannot coerce {value!r} to Expr")


# ---------------------------------------------------------------------------
# Total ordering
# ---------------------------------------------------------------------------

_RANK = {
    Rat: 0, Const: 1, Var: 2, Jet: 3, Func: 4,
    Integral: 5, ExpIntegral: 6, Power: 7, Product: 8, Sum: 9,
}


def cmp(a, b):
    """Deterministic total order on expressions; 0 iff structurally equal."""
    ka, kb = a.ordkey(), b.ordkey()
    return -1 if ka < kb else (1 if ka > kb else 0)


def sort_key(e):
    return e.ordkey()


# ---------------------------------------------------------------------------
# Term decomposition: every expression is a sum of (coefficient, powers)
# terms, where powers maps base -> rational exponent.
# ---------------------------------------------------------------------------

def term_parts(e):
    """Decompose a non-sum canonical expression into (coeff, {base: exp})."""
    if isinstance(e, Rat):
        return e.value, {}
    if isinstance(e, Power):
        return Fraction(1), {e.base: e.exponent}
    if isinstance(e, Product):
        coeff = Fraction(1)
        powers = {}
        for f in e.factors:
            if isinstance(f, Rat):
                coeff *= f.value
            elif isinstance(f, Power):
                _merge_power(powers, f.base, f.exponent)
            else:
                _merge_power(powers, f, Fraction(1))
        return coeff, powers
    return Fraction(1), {e: Fraction(1)}


def as_terms(e):
    """List of (coeff, powers) terms of a canonical expression."""
    if isinstance(e, Sum):
        return [term_parts(t) for t in e.terms]
    if isinstance(e, Rat) and e.value == 0:
        return []
    return [term_parts(e)]


def _merge_power(powers, base, exponent):
    q = powers.get(base)
    if q is None:
        powers[base] = exponent
    else:
        q = q + exponent
        if q == 0:
            del powers[base]
        else:
            powers[base] = q


def _monomial_key(powers):
    """Sort key for terms: ascending lex over (base key, exponent) pairs
    with bases in descending atom order (so e.g. y^4 sorts before
    y^2*y' and the constant term comes first)."""
    return tuple(sorted(((b.ordkey(), q) for b, q in powers.items()),
                        reverse=True))


def _rebuild_term(coeff, powers):
    factors = []
    for base in sorted(powers, key=sort_key):
        q = powers[base]
        factors.append(base if q == 1 else Power(base, q))
    if not factors:
        return Rat(coeff)
    if coeff == 1 and len(factors) == 1:
        return factors[0]
    if coeff != 1:
        factors.insert(0, Rat(coeff))
    return factors[0] if len(factors) == 1 else Product(factors)


def _merge_terms(terms):
    merged = {}
    for coeff, powers in terms:
        key = _monomial_key(powers)
        hit = merged.get(key)
        if hit is None:
            merged[key] = [coeff, powers]
        else:
            hit[0] += coeff
    return {k: v for k, v in merged.items() if v[0] != 0}


def _rebuild(terms):
    survivors = _merge_terms(terms)
    # Combine terms over common composite denominators: shifting the
    # negative sum-base exponents up lets numerators cancel exactly, so
    # mixed representations of one rational function coincide.
    for _ in range(6):
        if len(survivors) <= 1:
            break
        worst = {}
        for coeff, powers in survivors.values():
            for b, q in powers.items():
                if isinstance(b, Sum) and q < 0:
                    need = math.ceil(-q)
                    if need > worst.get(b, 0):
                        worst[b] = need
        if not worst:
            break
        shifted = []
        for coeff, powers in survivors.values():
            p = dict(powers)
            for b, k in worst.items():
                _merge_power(p, b, Fraction(k))
            shifted.extend(_expand_term(coeff, p))
        numerator = _merge_terms(shifted)
        # Cancel denominator bases that divide the numerator exactly.
        for b in sorted(worst, key=lambda b: b.ordkey()):
            while worst[b] > 0:
                quotient = _try_divide(numerator, b)
                if quotient is None:
                    break
                numerator = quotient
                worst[b] -= 1
            if worst[b] == 0:
                del worst[b]
        redistributed = []
        for coeff, powers in numerator.values():
            p = dict(powers)
            for b, k in worst.items():
                _merge_power(p, b, Fraction(-k))
            redistributed.append((coeff, p))
        combined = _merge_terms(redistributed)
        if set(combined) == set(survivors):
            break
        survivors = combined
    if not survivors:
        return _ZERO
    ordered = sorted(survivors.items(), key=lambda kv: kv[0])
    if len(ordered) == 1:
        coeff, powers = ordered[0][1]
        return _rebuild_term(coeff, powers)
    return Sum(tuple(_rebuild_term(c, p) for _, (c, p) in ordered))


# ---------------------------------------------------------------------------
# Canonical constructors
# ---------------------------------------------------------------------------

def add(*exprs):
    terms = []
    for e in exprs:
        terms.extend(as_terms(_coerce(e)))
    return _rebuild(terms)


def mul(*exprs):
    result = [(Fraction(1), {})]
    for e in exprs:
        e = _coerce(e)
        if isinstance(e, Rat):
            if e.value == 0:
                return _ZERO
            result = [(c * e.value, p) for c, p in result]
            continue
        factor_terms = as_terms(e)
        if not factor_terms:
            return _ZERO
        result = _term_product(result, factor_terms)
    return _rebuild(result)


def _term_product(terms1, terms2):
    out = []
    for c1, p1 in terms1:
        for c2, p2 in terms2:
            powers = dict(p1)
            for b, q in p2.items():
                _merge_power(powers, b, q)
            out.extend(_expand_term(c1 * c2, powers))
    return out


def _expand_term(coeff, powers):
    """Expand positive integer powers of sum bases created by merging."""
    work = [(coeff, powers)]
    out = []
    while work:
        c, p = work.pop()
        hot = None
        for b, q in p.items():
            if isinstance(b, Sum) and q.denominator == 1 and q > 0:
                hot = (b, int(q))
                break
        if hot is None:
            out.append((c, p))
            continue
        base, k = hot
        if k > _MAX_EXPANSION_EXPONENT:
            raise ValueError(f"refusing to expand a sum to the power {k}")
        rest = dict(p)
        del rest[base]
        partial = [(c, rest)]
        base_terms = as_terms(base)
        for _ in range(k):
            partial = _term_product(partial, base_terms)
        work.extend(partial)
    return out


def power(base, exponent):
    base = _coerce(base)
    if isinstance(exponent, Expr):
        if not isinstance(exponent, Rat):
            raise TypeError("exponents must be exact rationals")
        exponent = exponent.value
    q = Fraction(exponent)
    if q == 0:
        return _ONE
    if q == 1:
        return base
    if isinstance(base, Rat):
        return _rational_power(base.value, q)
    if isinstance(base, Power):
        return power(base.base, base.exponent * q)
    if isinstance(base, Product):
        return mul(*[power(f, q) for f in base.factors])
    if isinstance(base, Sum):
        if q.denominator == 1 and q > 0:
            if q > _MAX_EXPANSION_EXPONENT:
                raise ValueError(f"refusing to expand a sum to the power {q}")
            return mul(*([base] * int(q)))
        numer, denoms = _cleared_fraction(base)
        if denoms:
            # (N / prod b^k)^q = N^q * prod b^(-k q); keeps stored power
            # bases free of internal denominators.
            return mul(power(numer, q),
                       *[power(b, -k * q) for b, k in denoms.items()])
        if isinstance(numer, Rat) and numer.value == 0:
            if q < 0:
                raise DivisionByZero("inverting an expression equal to zero")
            return _ZERO
        content, primitive = _sum_content(base)
        if content != 1:
            return mul(_rational_power(content, q), power(primitive, q))
        return _rebuild([(Fraction(1), {base: q})])
    return _rebuild([(Fraction(1), {base: q})])


def _try_divide(terms, base):
    """Exact multivariate division of a merged term dict by a sum base.

    Works on terms whose exponents are all non-negative (polynomial
    view); returns the quotient term dict, or None if the division is
    not exact.
    """
    for coeff, powers in terms.values():
        if any(q < 0 for q in powers.values()):
            return None
    divisor = [term_parts(t) for t in base.terms]
    lead_key = None
    lead = None
    for dc, dp in divisor:
        key = _monomial_key(dp)
        if lead_key is None or key > lead_key:
            lead_key, lead = key, (dc, dp)
    remainder = {k: [c, p] for k, (c, p) in terms.items()}
    quotient = []
    for _ in range(10000):
        if not remainder:
            return _merge_terms(quotient)
        top_key = max(remainder)
        rc, rp = remainder[top_key]
        ratio = dict(rp)
        for b, q in lead[1].items():
            _merge_power(ratio, b, -q)
        if any(q < 0 for q in ratio.values()):
            return None
        q_coeff = rc / lead[0]
        quotient.append((q_coeff, ratio))
        for dc, dp in divisor:
            p = dict(ratio)
            for b, q in dp.items():
                _merge_power(p, b, q)
            for c2, p2 in _expand_term(-q_coeff * dc, p):
                key = _monomial_key(p2)
                hit = remainder.get(key)
                if hit is None:
                    remainder[key] = [c2, p2]
                else:
                    hit[0] += c2
                    if hit[0] == 0:
                        del remainder[key]
    return None


def shift_powers(e, shifts):
    """Multiply ``e`` by prod base^k, merging exponents on equal bases
    before any expansion (so clearing b^(-1) by b yields 1, not a mixed
    form)."""
    out = []
    for coeff, powers in as_terms(e):
        p = dict(powers)
        for b, k in shifts.items():
            _merge_power(p, b, Fraction(k))
        out.extend(_expand_term(coeff, p))
    return _rebuild(out)


def _cleared_fraction(s):
    """Clear negative-exponent bases out of a sum: returns (numerator,
    {base: multiplicity}) with s = numerator / prod base^multiplicity."""
    denoms = {}
    cur = s
    for _ in range(10):
        worst = {}
        for _, powers in as_terms(cur):
            for b, q in powers.items():
                if q < 0:
                    need = math.ceil(-q)
                    if need > worst.get(b, 0):
                        worst[b] = need
        if not worst:
            break
        cur = shift_powers(cur, worst)
        for b, k in worst.items():
            denoms[b] = denoms.get(b, 0) + k
    return cur, denoms


def _rational_power(value, q):
    if value == 0:
        if q < 0:
            raise DivisionByZero("zero raised to a negative power")
        return _ZERO
    if q.denominator == 1:
        return Rat(value ** int(q))
    exact = _exact_root(value ** q.numerator, q.denominator)
    if exact is not None:
        return Rat(exact)
    # Pull the integer part of the exponent into the coefficient so the
    # remaining fractional power has exponent in (0, 1).
    whole = math.floor(q)
    frac = q - whole
    coeff = value ** whole
    reduced = value ** frac.numerator if frac.numerator != 1 else value
    exact = _exact_root(reduced, frac.denominator)
    if exact is not None:
        return Rat(coeff * exact)
    if frac.numerator == 1:
        return _rebuild([(Fraction(coeff), {Rat(value): frac})])
    return _rebuild([(Fraction(coeff), {Rat(reduced): Fraction(1, frac.denominator)})])


def _exact_root(value, n):
    """The exact n-th root of a Fraction, or None if it is irrational."""
    if value < 0:
        return None
    num = _iroot(value.numerator, n)
    den = _iroot(value.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _iroot(m, n):
    if m in (0, 1):
        return m
    r = round(m ** (1.0 / n))
    for candidate in (r - 1, r, r + 1):
        if candidate >= 0 and candidate ** n == m:
            return candidate
    return None


def _sum_content(s):
    """Split a sum into (rational content, primitive sum).

    The content carries the gcd of all term coefficients and the sign of
    the leading term, so proportional sums share one primitive base.
    """
    terms = as_terms(s)
    g = Fraction(0)
    for c, _ in terms:
        g = _fraction_gcd(g, c)
    if g == 0:
        return Fraction(1), s
    if terms[-1][0] < 0:  # sign of the leading (last-sorted) term
        g = -g
    if g == 1:
        return Fraction(1), s
    return g, _rebuild([(c / g, p) for c, p in terms])


def _fraction_gcd(a, b):
    a, b = abs(a), abs(b)
    if a == 0:
        return b
    if b == 0:
        return a
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))


def neg(e):
    return mul(Rat(-1), _coerce(e))


def sub(a, b):
    return add(_coerce(a), neg(b))


def div(a, b):
    b = _coerce(b)
    if isinstance(b, Rat) and b.value == 0:
        raise DivisionByZero("division by the zero expression")
    return mul(_coerce(a), power(b, -1))


def integral(integrand, var, label=None):
    """Antiderivative node; the antiderivative of 0 is 0 (constant fixed)."""
    integrand = _coerce(integrand)
    if isinstance(integrand, Rat) and integrand.value == 0:
        return _ZERO
    return Integral(integrand, var, label)


def exp_integral(integrand, var):
    """Exponential-antiderivative node exp(int(integrand, var)).

    The stored integrand is content-primitive; the rational content
    becomes an exponent, so exp(int(-2 g)) is exp(int(g))^(-2) and
    reciprocal scalings cancel by exponent arithmetic.
    """
    integrand = normalize(_coerce(integrand))
    if isinstance(integrand, Rat) and integrand.value == 0:
        return _ONE
    if isinstance(integrand, Sum):
        content, primitive = _sum_content(integrand)
    else:
        content, powers = term_parts(integrand)
        primitive = _rebuild([(Fraction(1), powers)])
    if content == 1:
        return ExpIntegral(integrand, var)
    return power(ExpIntegral(primitive, var), content)


def normalize(e):
    """Re-canonicalize an expression tree bottom-up.

    Identity on expressions built through the constructors; repairs
    hand-assembled nodes.
    """
    e = _coerce(e)
    if isinstance(e, (Rat, Const, Var, Jet)):
        return e
    if isinstance(e, Func):
        return Func(e.name, tuple(normalize(a) for a in e.args), e.orders)
    if isinstance(e, Integral):
        return integral(normalize(e.integrand), e.var, e.label)
    if isinstance(e, ExpIntegral):
        return exp_integral(normalize(e.integrand), e.var)
    if isinstance(e, Power):
        return power(normalize(e.base), e.exponent)
    if isinstance(e, Product):
        return mul(*[normalize(f) for f in e.factors])
    if isinstance(e, Sum):
        return add(*[normalize(t) for t in e.terms])
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

def _children(e):
    if isinstance(e, Func):
        return e.args
    if isinstance(e, (Integral, ExpIntegral)):
        return (e.integrand,)
    if isinstance(e, Power):
        return (e.base,)
    if isinstance(e, Product):
        return e.factors
    if isinstance(e, Sum):
        return e.terms
    return ()


def iter_atoms(e, kind=None):
    """Yield every atom (leaf node) in the tree, in traversal order."""
    stack = [e]
    while stack:
        node = stack.pop()
        kids = _children(node)
        if isinstance(node, (Const, Var, Jet, Func, Integral, ExpIntegral)):
            if kind is None or isinstance(node, kind):
                yield node
        stack.extend(kids)


def contains(e, atom):
    """True if ``atom`` occurs anywhere in the tree (including inside
    composite power bases, function arguments and integrands)."""
    stack = [e]
    while stack:
        node = stack.pop()
        if node == atom:
            return True
        stack.extend(_children(node))
    return False


def max_jet_order(e, name=None):
    """Highest jet order occurring in the tree; 0 if there are no jets."""
    best = 0
    for a in iter_atoms(e, Jet):
        if name is None or a.name == name:
            best = max(best, a.order)
    return best


def is_jet_free(e):
    return max_jet_order(e) == 0


def is_constant(e):
    """True if the expression contains no variables, jets or functions."""
    return not any(isinstance(a, (Var, Jet, Func, Integral, ExpIntegral))
                   for a in iter_atoms(e))


def free_function_names(e):
    return sorted({a.name for a in iter_atoms(e, Func)})


def collect_powers(e, atom):
    """Collect an expression as a polynomial in ``atom``.

    Returns a dict mapping non-negative integer exponents to coefficient
    expressions free of ``atom``.  Raises ValueError if ``atom`` occurs
    with a negative or fractional exponent, or inside a composite base,
    function argument or integrand.
    """
    buckets = {}
    for coeff, powers in as_terms(e):
        q = powers.get(atom, Fraction(0))
        if q.denominator != 1 or q < 0:
            raise ValueError(f"non-polynomial dependence on {atom!r}")
        rest = {b: x for b, x in powers.items() if b != atom}
        for b in rest:
            if contains(b, atom):
                raise ValueError(f"{atom!r} occurs inside a composite base")
        buckets.setdefault(int(q), []).append((coeff, rest))
    return {k: _rebuild(ts) for k, ts in buckets.items()}


def coefficient_of(e, atom, exponent=1):
    """Coefficient of ``atom**exponent`` in a polynomial view of ``e``."""
    return collect_powers(e, atom).get(exponent, _ZERO)
