"""Exact symbolic verification workbench for the boundary symmetry
algebras of the open XXZ half-chain.

Everything is computed over the fraction field of multivariate Laurent
polynomials with arbitrary-precision rational coefficients; no floating
point is used anywhere.
"""

__version__ = "0.1.0"
