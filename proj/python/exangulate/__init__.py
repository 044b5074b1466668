"""n-exangulated module categories and their localizations."""

from ._core import InputError, Session

__all__ = ["InputError", "Session", "load"]


def load(path, seed=0x5EED):
    """Session for an .exg file."""
    return Session.load(str(path), seed)
