"""
Quadratic Hom-Lie Algebra Toolkit

An exact-arithmetic library and command-line tool that constructs, verifies
and decomposes finite-dimensional quadratic Hom-Lie algebras whose twist map
lies in the centroid. All arithmetic is over the rationals.
"""

__version__ = "0.1.0"
