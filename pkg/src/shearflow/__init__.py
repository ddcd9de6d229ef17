"""Vanishing-viscosity experiments for 3D shear flows on the torus."""

__version__ = "0.1.0"
