"""Invariant theory of finite complex reflection cosets."""

__version__ = "0.1.0"
