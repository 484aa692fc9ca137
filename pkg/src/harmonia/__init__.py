"""Executable Fourier analysis on finite abelian groups, the circle, r-adic integers and solenoids."""
from . import banach, circle, group, hilbert, padic, scalar, solenoid, ultra
from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["banach", "circle", "group", "hilbert", "padic", "scalar", "solenoid", "ultra", "BACKEND"]
