"""Random-turns vicious walkers, Bessel determinants, and truncated Haar unitaries."""

__version__ = "0.1.0"
