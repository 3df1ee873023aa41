"""Coefficient bounds for bi-univalent classes defined through Cesàro means."""

__version__ = "0.1.0"
