"""Mod-2 cohomology of orbit spaces of free involutions on lens spaces."""

__version__ = "0.1.0"
