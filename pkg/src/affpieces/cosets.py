"""Finite parabolic subgroups, minimal coset representatives and the Ad-action on simple reflections."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cartan import CartanSpec
from .polynomial import Poly
from .weyl import WeylElement, identity, nodeset, right_mul


class InfiniteParabolicError(ValueError):
    pass


@dataclass(frozen=True)
class ParabolicTable:
    spec: CartanSpec
    J: frozenset
    elements: tuple[WeylElement, ...]
    longest: WeylElement

    @property
    def n_positive(self) -> int:
        """``N_J``, the length of the longest element."""
        return self.longest.length

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def poincare(self) -> Poly:
        counts = [0] * (self.n_positive + 1)
        for y in self.elements:
            counts[y.length] += 1
        return Poly(counts)

    def to_json(self) -> dict:
        return {
            "J": sorted(self.J),
            "order": self.order,
            "n_positive": self.n_positive,
            "poincare": list(self.poincare.coeffs),
            "longest_word": list(self.longest.reduced_word),
        }


def is_finite_parabolic(spec: CartanSpec, J) -> bool:
    return spec.is_finite_subset(nodeset(spec, J))


def enumerate_parabolic(spec: CartanSpec, J) -> ParabolicTable:
    J = nodeset(spec, J)
    return _enumerate_parabolic(spec, J)


@lru_cache(maxsize=None)
def _enumerate_parabolic(spec, J):
    if not spec.is_finite_subset(J):
        raise InfiniteParabolicError(f"W_J is infinite for J = {sorted(J)}")
    e = identity(spec)
    seen = {e}
    layer = [e]
    out = [e]
    gens = sorted(J)
    while layer:
        nxt = []
        for w in layer:
            for j in gens:
                if j in w.right_descents:
                    continue
                v = right_mul(w, j)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        out.extend(nxt)
        if not nxt:
            break
        layer = nxt
    longest = max(out, key=lambda y: y.length)
    if not J <= longest.right_descents:
        raise AssertionError("longest element of W_J lacks a descent in J")
    return ParabolicTable(spec, J, tuple(out), longest)


def _strip_right(w: WeylElement, J) -> WeylElement:
    while True:
        d = w.right_descents & J
        if not d:
            return w
        w = right_mul(w, min(d))


def min_right(w: WeylElement, J) -> WeylElement:
    """Minimal-length element of ``w W_J``."""
    return _strip_right(w, nodeset(w.spec, J))


def min_left(w: WeylElement, K) -> WeylElement:
    """Minimal-length element of ``W_K w``."""
    return _strip_right(w.inverse, nodeset(w.spec, K)).inverse


def min_double(w: WeylElement, K, J) -> WeylElement:
    """Minimal-length element of ``W_K w W_J`` by alternating left and right stripping."""
    K = nodeset(w.spec, K)
    J = nodeset(w.spec, J)
    while True:
        v = _strip_right(w, J)
        v = _strip_right(v.inverse, K).inverse
        if v == w:
            return w
        w = v


def is_min_double_rep(w: WeylElement, K, J) -> bool:
    return not (w.left_descents & frozenset(K)) and not (w.right_descents & frozenset(J))


def ad_simple(w: WeylElement, j: int):
    """Node ``j'`` with ``w(alpha_j) = +-alpha_j'``, else None."""
    col = w.column(j)
    nz = [k for k, x in enumerate(col) if x]
    if len(nz) == 1 and abs(col[nz[0]]) == 1:
        return nz[0]
    return None


def ad_subset(w: WeylElement, J) -> frozenset:
    out = set()
    for j in J:
        k = ad_simple(w, j)
        if k is not None:
            out.add(k)
    return frozenset(out)


def coset_elements(w: WeylElement, J) -> list[WeylElement]:
    """Every element of ``w W_J`` (brute force, for cross-checks)."""
    table = enumerate_parabolic(w.spec, J)
    return [w * y for y in table.elements]


__all__ = [
    "InfiniteParabolicError",
    "ParabolicTable",
    "ad_simple",
    "ad_subset",
    "coset_elements",
    "enumerate_parabolic",
    "is_finite_parabolic",
    "is_min_double_rep",
    "min_double",
    "min_left",
    "min_right",
]
