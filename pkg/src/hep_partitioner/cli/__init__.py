"""
CLI package for the hybrid edge partitioner.
"""

from .hepctl import main

__all__ = ["main"]
