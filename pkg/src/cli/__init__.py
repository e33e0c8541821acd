"""Command-line interface for paraverse."""

from .main import app, run
from .dispatch import dispatch

__all__ = [
    "app",
    "run",
    "dispatch",
]
