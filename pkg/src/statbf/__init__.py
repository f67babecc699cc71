"""Default Bayes factors computed from observed test statistics."""

__version__ = "0.1.0"
