"""Exact verification of periodic modules, bimodule resolutions and tilting complexes."""

__version__ = "0.1.0"
