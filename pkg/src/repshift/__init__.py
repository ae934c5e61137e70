"""Representation shifts of finitely presented Z-groups."""

__version__ = "0.1.0"
