"""Executable finite model of realizability path categories over a
deterministic combinator-machine PCA."""

__version__ = "0.1.0"
