"""Computational toolkit for finite crossed, 2-crossed and 3-crossed modules."""

__version__ = "0.1.0"
