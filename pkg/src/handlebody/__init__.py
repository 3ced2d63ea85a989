"""Johnson-type invariants of handlebody groups, computed exactly."""

__version__ = "0.1.0"
