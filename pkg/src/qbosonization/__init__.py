"""Exact and numeric verification of q-oscillator realizations of GL_q(2)."""

__version__ = "1.0.0"
