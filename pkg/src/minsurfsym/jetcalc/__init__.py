"""Exact jet-space calculus: total derivatives, Euler operator, the
coordinate Noether identity, Jacobi brackets and reduction modulo the
minimal-surface equation, for a concrete number of independent variables."""

from .core import (
    EquationObject,
    JetContext,
    JetExpression,
    NonlocalUnderivable,
    OrderOverflow,
    characteristic_of,
    contact_context,
    divergence,
    euler_operator,
    evolutionary_apply,
    linearization_apply,
    multi_indices,
    noether_Q_apply,
    noether_identity_residual,
    noether_identity_terms,
    pure_context,
    reduce_mod_equation,
)
from .contact import (
    contact_equation,
    euler_of_evolutionary_on_L,
    evolutionary_on_L,
    jacobi_bracket,
    linearization_contact,
    section_expression,
)
from .poly import Poly, SYM_L, sym_s, sym_u, sym_x

__all__ = [
    "EquationObject",
    "JetContext",
    "JetExpression",
    "NonlocalUnderivable",
    "OrderOverflow",
    "Poly",
    "SYM_L",
    "characteristic_of",
    "contact_context",
    "contact_equation",
    "divergence",
    "euler_of_evolutionary_on_L",
    "euler_operator",
    "evolutionary_apply",
    "evolutionary_on_L",
    "jacobi_bracket",
    "linearization_apply",
    "linearization_contact",
    "multi_indices",
    "noether_Q_apply",
    "noether_identity_residual",
    "noether_identity_terms",
    "pure_context",
    "reduce_mod_equation",
    "section_expression",
    "sym_s",
    "sym_u",
    "sym_x",
]
