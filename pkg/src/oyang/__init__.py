"""Exact checks of deformed Yangian identities in U(gl_n)."""
