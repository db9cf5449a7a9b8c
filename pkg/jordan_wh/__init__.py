"""Euclidean Jordan algebras, their symmetric cones and the Wiener-Hopf compactification [-1, 1]."""
