"""Hom-Lie algebra types, bracket-level operations and axiom verification."""
