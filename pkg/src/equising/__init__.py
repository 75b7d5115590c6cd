"""Exact singularity invariants of ICIS germs with a function, and numerical
tests of the Thom A_f and relative Whitney W_f conditions for families."""

__version__ = "0.1.0"
