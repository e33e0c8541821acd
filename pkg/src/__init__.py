"""paraverse - parametric verification workbench on exact rational constraints."""

__version__ = "0.1.0"
