"""Exact noncommutative algebra engine for the higher-rank Askey-Wilson
presentation A(n): relations, truncated Groebner completion, the delta
automorphisms, braid checks and the translation to aw(n)."""

__version__ = "0.1.0"
