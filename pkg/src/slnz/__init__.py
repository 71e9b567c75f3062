"""Two-generator presentations of SL_n(Z), built and checked exactly."""

__version__ = "0.1.0"
