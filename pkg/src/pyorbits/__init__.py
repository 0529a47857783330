"""Top-level package for pyorbits."""

__author__ = """pyorbits developers"""
__version__ = "1.0.0"
