"""Translational tiling equations: reductions, oracles and permutation encodings."""

__version__ = "0.1.0"
