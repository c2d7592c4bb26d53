"""Finite-field model for SL_2: lattices, pairs, pieces and orbit counts."""
from .lattice import LatticeClass, boundary_lines, enumerate_lattices, lattice_count, lattice_from_word
from .model import (
    Census,
    PairPoint,
    PieceLabel,
    Y0,
    Ydoubleprime,
    Yprime,
    census,
    classify_pair,
    match_pieces,
    orbit_census,
    predicted_orbits,
)

__all__ = [
    "Census",
    "LatticeClass",
    "PairPoint",
    "PieceLabel",
    "Y0",
    "Ydoubleprime",
    "Yprime",
    "boundary_lines",
    "census",
    "classify_pair",
    "enumerate_lattices",
    "lattice_count",
    "lattice_from_word",
    "match_pieces",
    "orbit_census",
    "predicted_orbits",
]
