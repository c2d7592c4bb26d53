"""Affine Weyl group elements in the geometric representation on the root basis.

An element is stored as its integer matrix ``w`` with ``w[:, j]`` the
coordinates of ``w(alpha_j)``. Equality is matrix equality, which is
faithful because the representation of a Coxeter group on its root space
is faithful.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .cartan import CartanSpec

NodeSet = frozenset


def nodeset(spec: CartanSpec, J: Iterable[int], proper: bool = False) -> frozenset:
    """Validate ``J`` as a subset of the node set of ``spec``."""
    J = frozenset(int(j) for j in J)
    bad = [j for j in J if not 0 <= j < spec.size]
    if bad:
        raise ValueError(f"nodes {sorted(bad)} are not in I = {list(spec.nodes)}")
    if proper and len(J) == spec.size:
        raise ValueError("J must be a proper subset of I")
    return J


@dataclass(frozen=True, eq=False)
class WeylElement:
    spec: CartanSpec
    flat: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.flat == other.flat and self.spec == other.spec

    def __hash__(self):
        return hash(self.flat)

    def __repr__(self):
        word = "".join(f"s{i}" for i in self.reduced_word) or "e"
        return f"<WeylElement {word} of {self.spec.label}>"

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    @property
    def n(self) -> int:
        return self.spec.size

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(self.flat[r * n:(r + 1) * n] for r in range(n))

    def column(self, j: int) -> tuple[int, ...]:
        """Coordinates of ``w(alpha_j)``."""
        n = self.n
        return tuple(self.flat[r * n + j] for r in range(n))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        n = self.n
        return tuple(sum(self.flat[r * n + k] * vec[k] for k in range(n)) for r in range(n))

    @cached_property
    def _strip(self) -> tuple[int, ...]:
        return kernels.strip(self.flat, self.spec.flat, self.n)

    @cached_property
    def length(self) -> int:
        return len(self._strip)

    @cached_property
    def right_descents(self) -> frozenset:
        mask = kernels.right_descent_mask(self.flat, self.n)
        return frozenset(i for i in range(self.n) if mask >> i & 1)

    @cached_property
    def inverse(self) -> "WeylElement":
        flat = _identity_flat(self.n)
        for i in self._strip:
            flat = kernels.right_reflect(flat, self.spec.flat, self.n, i)
        inv = WeylElement(self.spec, flat)
        inv.__dict__["inverse"] = self
        return inv

    @cached_property
    def left_descents(self) -> frozenset:
        return self.inverse.right_descents

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        # stripping the smallest right descent of w^{-1} peels the smallest left descent of w
        return kernels.strip(self.inverse.flat, self.spec.flat, self.n)

    def is_identity(self) -> bool:
        return self.flat == _identity_flat(self.n)

    def to_json(self) -> dict:
        return {
            "matrix": [list(r) for r in self.matrix],
            "word": list(self.reduced_word),
            "length": self.length,
        }


def _identity_flat(n):
    return tuple(1 if r == c else 0 for r in range(n) for c in range(n))


def identity(spec: CartanSpec) -> WeylElement:
    return WeylElement(spec, _identity_flat(spec.size))


def simple_reflection(spec: CartanSpec, i: int) -> WeylElement:
    if not 0 <= i < spec.size:
        raise ValueError(f"node {i} not in I = {list(spec.nodes)}")
    return WeylElement(spec, kernels.left_reflect(_identity_flat(spec.size), spec.flat, spec.size, i))


def from_word(spec: CartanSpec, word: Iterable[int]) -> WeylElement:
    flat = _identity_flat(spec.size)
    for i in word:
        if not 0 <= i < spec.size:
            raise ValueError(f"letter {i} not in I = {list(spec.nodes)}")
        flat = kernels.right_reflect(flat, spec.flat, spec.size, i)
    return WeylElement(spec, flat)


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    if a.spec != b.spec:
        raise ValueError("cannot multiply elements of different Weyl groups")
    return WeylElement(a.spec, kernels.mat_mul(a.flat, b.flat, a.n))


def inverse(a: WeylElement) -> WeylElement:
    return a.inverse


def right_mul(w: WeylElement, i: int) -> WeylElement:
    """``w * s_i``"""
    return WeylElement(w.spec, kernels.right_reflect(w.flat, w.spec.flat, w.n, i))


def left_mul(i: int, w: WeylElement) -> WeylElement:
    """``s_i * w``"""
    return WeylElement(w.spec, kernels.left_reflect(w.flat, w.spec.flat, w.n, i))


def right_descents(w: WeylElement) -> frozenset:
    return w.right_descents


def left_descents(w: WeylElement) -> frozenset:
    return w.left_descents


def length(w: WeylElement) -> int:
    return w.length


def reduced_word(w: WeylElement) -> tuple[int, ...]:
    return w.reduced_word


def ball_layers(spec: CartanSpec, L: int) -> list[list[WeylElement]]:
    """Elements of length ``0..L`` grouped by length.

    Each layer is sorted by lexicographically smallest reduced word, and that
    word is recorded on the element.
    """
    if L < 0:
        raise ValueError("length bound must be non-negative")
    n = spec.size
    e = identity(spec)
    e.__dict__["reduced_word"] = ()
    layers = [[e]]
    flats = [e.flat]
    words = [()]
    for _ in range(L):
        nxt, parents = kernels.expand_layer(flats, spec.flat, n)
        if not nxt:
            break
        words = [words[p] + (i,) for p, i in parents]
        layer = []
        for flat, word in zip(nxt, words):
            el = WeylElement(spec, flat)
            el.__dict__["reduced_word"] = word
            el.__dict__["length"] = len(word)
            layer.append(el)
        layers.append(layer)
        flats = nxt
    return layers


def ball_enumerate(spec: CartanSpec, L: int) -> list[WeylElement]:
    """All elements with ``length <= L``, ordered by (length, smallest reduced word)."""
    return [w for layer in ball_layers(spec, L) for w in layer]
