"""Explicit 2+S4 extensions, octahedral weight-1 forms and their weight-3/2 lifts."""

__version__ = "0.1.0"
