"""Numerical toolkit for generalized Kahler geometry.

Submodules: linalg (split-signature linear algebra), point (pointwise GK data,
Manin triples, Hitchin tensors), chart (finite-difference calculus on charts),
lie (SU(2) x R inside SL2(C) x C), annulus (moduli of decorated annuli), hopf
(the Hopf-surface potential), suites and cli.
"""

__version__ = "0.1.0"
