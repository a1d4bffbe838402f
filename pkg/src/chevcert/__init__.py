"""Exact certificates that proper parabolic subgroups of finite Chevalley
groups have no group-complement in the Boolean interval [B, G]."""

__version__ = "0.1.0"
