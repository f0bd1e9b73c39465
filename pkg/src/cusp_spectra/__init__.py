"""Spectra, zeta functions and determinants of the pseudo-Laplacian on a hyperbolic cusp
with Alvarez-Wentworth boundary conditions and a flat unitary line bundle."""

__version__ = "0.1.0"
