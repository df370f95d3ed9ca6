"""Exact contact-symmetry chains and conservation-law verification for the
minimal surface equation.

Subpackages and modules:

    exprcore     exact closed-form arithmetic in p = u_x (the chain substrate)
    hierarchy    the ODE chains generating the contact symmetries, both parities
    jetcalc      jet-space calculus: total derivatives, Euler operator,
                 Noether identity, Jacobi brackets, reduction mod the equation
    conservation symmetry catalog, conserved currents, certificates
    numcheck     seeded floating-point oracle shadowing every symbolic zero
    cli          command-line front end (gen / verify / table)
"""

__version__ = "0.1.0"
