"""Exact engine for point-regular groups of Payne-derived symplectic quadrangles."""

__version__ = "0.1.0"

from .gf import FieldCtx, field_new, parse_field_spec  # noqa: F401
