"""Symbolic expression kernel: nodes, parsing, printing, calculus, probes."""

from .calculus import JetSpace, partial_derivative, substitute, total_derivative
from .nodes import (Const, ExpIntegral, Expr, Func, Integral, Jet, Power,
                    Product, Rat, Sum, Var, add, as_terms, cmp, coefficient_of,
                    collect_powers, contains, div, exp_integral,
                    free_function_names, integral, is_constant, is_jet_free,
                    iter_atoms, max_jet_order, mul, neg, normalize, one, power,
                    rational, shift_powers, sort_key, sub, term_parts, zero)
from .parse import parse, parse_equation
from .printer import equation_to_latex, equation_to_text, to_latex, to_text
from .probe import (DEFAULT_SEED, NON_ZERO, NUMERIC_ZERO, SYMBOLIC_ZERO,
                    ProbeContext, ZeroVerdict, clear_denominators, evaluate,
                    is_zero, numeric_probe)

__all__ = [
    "Expr", "Rat", "Const", "Var", "Jet", "Func", "Integral", "ExpIntegral",
    "Power", "Product", "Sum",
    "add", "mul", "power", "neg", "sub", "div", "rational", "zero", "one",
    "integral", "exp_integral", "normalize", "as_terms", "term_parts", "cmp",
    "sort_key", "contains", "iter_atoms", "max_jet_order", "is_jet_free",
    "is_constant", "collect_powers", "coefficient_of", "free_function_names",
    "shift_powers",
    "JetSpace", "total_derivative", "partial_derivative", "substitute",
    "parse", "parse_equation",
    "to_text", "to_latex", "equation_to_text", "equation_to_latex",
    "ProbeContext", "evaluate", "numeric_probe", "is_zero", "ZeroVerdict",
    "clear_denominators", "SYMBOLIC_ZERO", "NUMERIC_ZERO", "NON_ZERO",
    "DEFAULT_SEED",
]
