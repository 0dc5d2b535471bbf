"""Trivalent expanders from 2-group quotients: groups, graphs, surfaces, spectra."""

__version__ = "0.1.0"
