"""Affine Plücker spaces over AG(n, q): construction and brute-force verification."""

from .gf import FieldSpec, field_make
from .geometry import Space, make_space
from .kernels import BACKEND

__all__ = ["BACKEND", "FieldSpec", "Space", "field_make", "make_space"]
__version__ = "0.1.0"
