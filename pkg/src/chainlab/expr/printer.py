"""Text and LaTeX rendering.

The text format re-parses to the same normalized expression.  Equation
rendering groups terms by their jet monomial, the way chain equations
are conventionally displayed: jet-free part first, then ascending jet
monomials, each with a parenthesized coefficient sum.
"""
from __future__ import annotations

from fractions import Fraction

from .nodes import (Const, ExpIntegral, Expr, Func, Integral, Jet, Power,
                    Product, Rat, Sum, Var, as_terms, cmp, mul, sort_key,
                    _rebuild)

__all__ = ["to_text", "to_latex", "equation_to_text", "equation_to_latex"]

_GREEK = {
    "alpha", "beta", "gamma", "delta", "epsilon", "varepsilon", "zeta",
    "eta", "theta", "iota", "kappa", "lambda", "mu", "nu", "xi", "pi",
    "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
    "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Phi",
    "Psi", "Omega",
}


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def to_text(e):
    if isinstance(e, Sum):
        parts = []
        for term in e.terms:
            sign, body = _term_text(term)
            if not parts:
                parts.append(body if sign >= 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if sign >= 0 else f"- {body}")
        return " ".join(parts)
    sign, body = _term_text(e)
    return body if sign >= 0 else f"-{body}"


def _term_text(term):
    """Render one canonical term; returns (sign, unsigned text)."""
    from .nodes import term_parts

    coeff, powers = term_parts(term)
    sign = -1 if coeff < 0 else 1
    coeff = abs(coeff)
    num, den = [], []
    for base in sorted(powers, key=sort_key):
        q = powers[base]
        target = num if q > 0 else den
        target.append(_power_text(base, abs(q)))
    if coeff.numerator != 1 or not num:
        num.insert(0, str(coeff.numerator))
    text = "*".join(num)
    if coeff.denominator != 1:
        den.insert(0, str(coeff.denominator))
    for d in den:
        text += f"/{d}"
    return sign, text


def _power_text(base, q):
    body = _base_text(base)
    if q == 1:
        return body
    if q.denominator == 1:
        return f"{body}^{q.numerator}"
    return f"{body}^({q.numerator}/{q.denominator})"


def _base_text(base):
    if isinstance(base, Rat):
        v = base.value
        if v.denominator == 1 and v >= 0:
            return str(v.numerator)
        return f"({v.numerator}/{v.denominator})"
    if isinstance(base, (Const, Var)):
        return base.name
    if isinstance(base, Jet):
        if base.order <= 3:
            return base.name + "'" * base.order
        return f"D({base.name},x,{base.order})"
    if isinstance(base, Func):
        plain = [a.name for a in base.args if isinstance(a, Var)]
        distinct_plain = (len(plain) == len(base.args)
                          and len(set(plain)) == len(plain))
        if all(k == 0 for k in base.orders):
            inner = ",".join(to_text(a) for a in base.args)
            return f"{base.name}({inner})"
        if distinct_plain:
            pairs = ",".join(f"{v},{k}" for v, k in zip(plain, base.orders)
                             if k != 0)
            return f"D({base.name},{pairs})"
        labels = [a.name if isinstance(a, Var) else f"s{i + 1}"
                  for i, a in enumerate(base.args)]
        pairs = ",".join(f"{v},{k}" for v, k in zip(labels, base.orders))
        inner = ",".join(to_text(a) for a in base.args)
        return f"D({base.name},{pairs})({inner})"
    if isinstance(base, Integral):
        return f"int({to_text(base.integrand)},{base.var})"
    if isinstance(base, ExpIntegral):
        return f"exp(int({to_text(base.integrand)},{base.var}))"
    return f"({to_text(base)})"


# ---------------------------------------------------------------------------
# LaTeX
# ---------------------------------------------------------------------------

def to_latex(e):
    if isinstance(e, Sum):
        parts = []
        for term in e.terms:
            sign, body = _term_latex(term)
            if not parts:
                parts.append(body if sign >= 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if sign >= 0 else f"- {body}")
        return " ".join(parts)
    sign, body = _term_latex(e)
    return body if sign >= 0 else f"-{body}"


_LATEX_DISPLAY_RANK = {
    Rat: 0, Const: 1, Func: 2, Integral: 3, ExpIntegral: 4, Var: 5, Jet: 6,
    Power: 7, Product: 8, Sum: 9,
}


def _term_latex(term):
    from .nodes import term_parts

    coeff, powers = term_parts(term)
    sign = -1 if coeff < 0 else 1
    coeff = abs(coeff)
    num, den = [], []
    display_order = sorted(
        powers, key=lambda b: (_LATEX_DISPLAY_RANK[type(b)], sort_key(b)))
    for base in display_order:
        q = powers[base]
        target = num if q > 0 else den
        target.append(_power_latex(base, abs(q)))
    if coeff != 1 or not num:
        num.insert(0, _frac_latex(coeff))
    body = " ".join(num)
    if den:
        body = f"\\frac{{{body}}}{{{' '.join(den)}}}"
    return sign, body


def _frac_latex(v):
    if v.denominator == 1:
        return str(v.numerator)
    return f"\\frac{{{v.numerator}}}{{{v.denominator}}}"


def _power_latex(base, q):
    body = _base_latex(base)
    if q == 1:
        return body
    if q.denominator == 1:
        k = q.numerator
        return f"{body}^{k}" if 0 <= k <= 9 else f"{body}^{{{k}}}"
    return f"{body}^{{{q.numerator}/{q.denominator}}}"


def _name_latex(name):
    return f"\\{name}" if name in _GREEK else name


def _base_latex(base):
    if isinstance(base, Rat):
        return _frac_latex(base.value) if base.value >= 0 \
            else f"({_frac_latex(base.value)})"
    if isinstance(base, (Const, Var)):
        return _name_latex(base.name)
    if isinstance(base, Jet):
        if base.order <= 3:
            return base.name + "'" * base.order
        return f"{base.name}^{{({base.order})}}"
    if isinstance(base, Func):
        args = ", ".join(to_latex(a) for a in base.args)
        head = _name_latex(base.name)
        total = sum(base.orders)
        if total == 0:
            return f"{head}({args})"
        if len(base.args) == 1:
            marks = "'" * total if total <= 3 else f"^{{({total})}}"
            return f"{head}{marks}({args})"
        subscript = "".join(
            (a.name if isinstance(a, Var) else f"s_{i + 1}") * k
            for i, (a, k) in enumerate(zip(base.args, base.orders)))
        return f"{head}_{{{subscript}}}({args})"
    if isinstance(base, Integral):
        if base.label:
            return f"{base.label}({base.var})"
        return f"\\int {to_latex(base.integrand)}\\, d{base.var}"
    if isinstance(base, ExpIntegral):
        return f"e^{{\\int {to_latex(base.integrand)}\\, d{base.var}}}"
    return f"\\left({to_latex(base)}\\right)"


# ---------------------------------------------------------------------------
# Equation rendering: group by jet monomial
# ---------------------------------------------------------------------------

def _jet_groups(lhs):
    """Split a sum into (jet monomial, coefficient terms) groups, ordered
    jet-free first, then ascending (max order, total degree, profile)."""
    groups = {}
    for coeff, powers in as_terms(lhs):
        jet_part = tuple(sorted(((b, q) for b, q in powers.items()
                                 if isinstance(b, Jet)),
                                key=lambda bq: sort_key(bq[0])))
        rest = {b: q for b, q in powers.items() if not isinstance(b, Jet)}
        groups.setdefault(jet_part, []).append((coeff, rest))

    def group_key(jet_part):
        if not jet_part:
            return (0, 0, ())
        max_order = max(b.order for b, _ in jet_part)
        degree = sum(q for _, q in jet_part)
        profile = tuple(sorted((-b.order, q) for b, q in jet_part))
        return (max_order, degree, profile)

    return sorted(groups.items(), key=lambda item: group_key(item[0]))


def _split_content(terms):
    """Extract the common monomial-and-rational content of a term list."""
    common = None
    gcd = Fraction(0)
    for coeff, powers in terms:
        gcd = _gcd_fraction(gcd, coeff)
        if common is None:
            common = dict(powers)
        else:
            common = {b: min(q, powers[b]) for b, q in common.items()
                      if b in powers and powers[b] > 0 and q > 0}
    common = common or {}
    if gcd == 0:
        gcd = Fraction(1)
    reduced = []
    for coeff, powers in terms:
        left = dict(powers)
        for b, q in common.items():
            left[b] = left[b] - q
            if left[b] == 0:
                del left[b]
        reduced.append((coeff / gcd, left))
    return gcd, common, reduced


def _gcd_fraction(a, b):
    import math

    a, b = abs(a), abs(b)
    if a == 0:
        return b
    if b == 0:
        return a
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))


def _equation_render(lhs, flat, term, joiner):
    if isinstance(lhs, Rat) and lhs.value == 0:
        return "0 = 0"
    chunks = []
    for jet_part, terms in _jet_groups(lhs):
        jet_powers = {b: q for b, q in jet_part}
        if len(terms) == 1:
            coeff, rest = terms[0]
            whole = _rebuild([(coeff, {**rest, **jet_powers})])
            chunks.append(term(whole))
            continue
        gcd, content, reduced = _split_content(terms)
        remainder = _rebuild(reduced)
        # Factor the common monomial out only when it cleanly separates,
        # i.e. the remaining sum is free of the factored bases.
        clean = bool(content) and not any(
            b in powers for _, powers in reduced for b in content)
        pieces = []
        sign = 1
        if clean:
            s, body = term(_rebuild([(gcd, content)]))
            sign *= s
            if body != "1":
                pieces.append(body)
            pieces.append(f"({flat(remainder)})")
        elif jet_powers:
            pieces.append(f"({flat(_rebuild(terms))})")
        else:
            pieces.append(flat(_rebuild(terms)))
        if jet_powers:
            s, body = term(_rebuild([(Fraction(1), jet_powers)]))
            sign *= s
            pieces.append(body)
        chunks.append((sign, joiner.join(pieces)))
    parts = []
    for sign, body in chunks:
        if not parts:
            parts.append(body if sign >= 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if sign >= 0 else f"- {body}")
    return " ".join(parts) + " = 0"


def equation_to_text(lhs):
    """Render ``lhs = 0`` grouped by jet monomials."""
    return _equation_render(lhs, to_text, _term_text, "*")


def equation_to_latex(lhs):
    return _equation_render(lhs, to_latex, _term_latex, " ")
