"""Linking invariants and Zariski pairs for a smooth cubic plus a smooth curve."""

__version__ = "0.1.0"
