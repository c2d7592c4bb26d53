"""Affine Weyl group combinatorics, parahoric pieces and their finite-field checks."""
from .cartan import CartanError, CartanSpec, build_affine_cartan
from .kernels import BACKEND
from .weyl import WeylElement, ball_enumerate, ball_layers, from_word, identity, simple_reflection

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CartanError",
    "CartanSpec",
    "WeylElement",
    "ball_enumerate",
    "ball_layers",
    "build_affine_cartan",
    "from_word",
    "identity",
    "simple_reflection",
]
