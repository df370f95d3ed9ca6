"""Jet calculus over contact sections phi(u_x, u_y).

Contact sections, including the transcendental ones built by the chain
generator, enter the jet layer as constant monomials whose coefficient is
the exact bivariate form (a q-polynomial over closed forms in p).  That is
enough to compute Jacobi brackets, linearizations and evolutionary actions
on the area density L without ever leaving exact arithmetic.
"""

from __future__ import annotations

from ..hierarchy import PQ, ContactPolynomial
from .core import (
    JetContext,
    JetExpression,
    contact_context,
    euler_operator,
    evolutionary_apply,
    linearization_apply,
    reduce_mod_equation,
    EquationObject,
)
from .poly import Poly


def section_expression(ctx: JetContext, phi) -> JetExpression:
    """Embed a contact section (ContactPolynomial or PQ) into the jet layer."""
    if not ctx.ring.embedded_first_order:
        raise ValueError("contact sections need the contact lane")
    pq = phi.pq if isinstance(phi, ContactPolynomial) else phi
    if not isinstance(pq, PQ):
        raise TypeError(f"cannot embed {type(phi).__name__} as a contact section")
    return JetExpression(ctx, Poly.const(ctx.ring, pq))


def contact_equation(ctx: JetContext = None) -> EquationObject:
    ctx = ctx or contact_context()
    return EquationObject(2, ctx=ctx)


def jacobi_bracket(phi1, phi2, ctx: JetContext = None) -> JetExpression:
    """{phi1, phi2} = D_phi1(phi2) - D_phi2(phi1) for contact sections.

    The bracket of any two sections of u_x, u_y alone is identically zero;
    computing it exercises the exactness of the whole multiplication and
    cancellation chain.
    """
    ctx = ctx or contact_context()
    e1 = section_expression(ctx, phi1)
    e2 = section_expression(ctx, phi2)
    return evolutionary_apply(e1, e2) - evolutionary_apply(e2, e1)


def linearization_contact(phi, eq: EquationObject = None) -> JetExpression:
    """Linearization of the equation along a contact section, reduced
    modulo the equation; zero iff the section is a symmetry."""
    eq = eq or contact_equation()
    expr = section_expression(eq.ctx, phi)
    return reduce_mod_equation(linearization_apply(eq, expr), eq)


def evolutionary_on_L(phi, ctx: JetContext = None) -> JetExpression:
    """D_phi(L) for a contact section, on the full jet space."""
    ctx = ctx or contact_context()
    return evolutionary_apply(section_expression(ctx, phi), ctx.L())


def euler_of_evolutionary_on_L(phi, ctx: JetContext = None) -> JetExpression:
    """E_u(D_phi(L)); zero exactly when D_phi(L) is a total divergence."""
    ctx = ctx or contact_context()
    return euler_operator(evolutionary_on_L(phi, ctx))
