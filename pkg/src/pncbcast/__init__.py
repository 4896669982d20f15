"""Simulator and graph analysis for single-source wireless broadcast with
physical-layer network coding under half-duplex constraints."""

__version__ = "0.1.0"
