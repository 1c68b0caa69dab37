"""Generalized Fourier transforms for harmonic and Clifford analysis."""
from __future__ import annotations

__version__ = "0.1.0"
