"""Affine Cartan matrices: builders for the untwisted types and validity checks.

Convention: ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so the simple reflection
``s_i`` sends ``alpha_j`` to ``alpha_j - cartan[i][j] * alpha_i``.  Node 0 of a
built matrix is the affine node; nodes ``1..rank`` follow Bourbaki numbering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, lcm


class CartanError(ValueError):
    """Raised for malformed or non-affine Cartan matrices."""


_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 3,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


def _unit(m, i, scale=1):
    v = [Fraction(0)] * m
    v[i] = Fraction(scale)
    return v


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _simple_roots(family, rank):
    """Simple roots of the finite root system as vectors in Euclidean space."""
    if family == "A":
        m = rank + 1
        return [_sub(_unit(m, i), _unit(m, i + 1)) for i in range(rank)]
    if family in "BCD":
        m = rank
        roots = [_sub(_unit(m, i), _unit(m, i + 1)) for i in range(rank - 1)]
        if family == "B":
            roots.append(_unit(m, rank - 1))
        elif family == "C":
            roots.append(_unit(m, rank - 1, 2))
        else:
            roots.append(_add(_unit(m, rank - 2), _unit(m, rank - 1)))
        return roots
    if family == "G":
        # alpha_1 short, alpha_2 long
        return [
            [Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)],
        ]
    if family == "F":
        h = Fraction(1, 2)
        return [
            [Fraction(0), Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(1), Fraction(-1)],
            [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
            [h, -h, -h, -h],
        ]
    if family == "E":
        h = Fraction(1, 2)
        e8 = [
            [h, -h, -h, -h, -h, -h, -h, h],
            _add(_unit(8, 0), _unit(8, 1)),
        ]
        e8 += [_sub(_unit(8, i), _unit(8, i - 1)) for i in range(1, 7)]
        return e8[:rank]
    raise CartanError(f"unknown family {family!r}")


def _finite_cartan(roots):
    n = len(roots)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = 2 * _dot(roots[j], roots[i]) / _dot(roots[i], roots[i])
            assert v.denominator == 1
            row.append(int(v))
        out.append(row)
    return out


def _highest_root(cartan):
    """Highest root (simple-root coordinates) by closing the simple roots under reflections."""
    n = len(cartan)
    start = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(beta[j] * cartan[i][j] for j in range(n))
                gamma = tuple(b - (c if k == i else 0) for k, b in enumerate(beta))
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return max((r for r in seen if all(x >= 0 for x in r)), key=sum)


def build_affine_cartan(family: str, rank: int) -> "CartanSpec":
    """Untwisted affine Cartan matrix of type ``family`` with ``rank + 1`` nodes.

    >>> build_affine_cartan("A", 1).cartan
    ((2, -2), (-2, 2))
    """
    family = str(family).upper()
    if family not in _VALID_RANKS:
        raise CartanError(f"unknown family {family!r}; expected one of {sorted(_VALID_RANKS)}")
    if not isinstance(rank, int) or not _VALID_RANKS[family](rank):
        raise CartanError(f"rank {rank!r} is not valid for type {family}")

    roots = _simple_roots(family, rank)
    fin = _finite_cartan(roots)
    theta_coords = _highest_root(fin)
    theta = [Fraction(0)] * len(roots[0])
    for c, r in zip(theta_coords, roots):
        theta = _add(theta, [c * x for x in r])
    extended = [[-x for x in theta]] + roots
    cartan = _finite_cartan(extended)
    return CartanSpec(tuple(tuple(r) for r in cartan), label=f"{family}{rank}~")


def _eliminate(mat):
    """Pivots of Gaussian elimination without row swaps (None if a zero pivot occurs early)."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    pivots = []
    for k in range(n):
        p = m[k][k]
        pivots.append(p)
        if p == 0:
            if any(m[i][k] for i in range(k, n)):
                return None
            continue
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return pivots


def _positive_definite(mat):
    if not mat:
        return True
    piv = _eliminate(mat)
    return piv is not None and all(p > 0 for p in piv)


def _determinant_is_zero(mat):
    piv = _eliminate(mat)
    return piv is None or any(p == 0 for p in piv)


def _principal(mat, idx):
    return [[mat[i][j] for j in idx] for i in idx]


@dataclass(frozen=True)
class CartanSpec:
    """A validated affine Cartan matrix on nodes ``0..n-1``."""

    cartan: tuple[tuple[int, ...], ...]
    label: str = field(default="custom", compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.cartan)
        object.__setattr__(self, "cartan", rows)
        _check_shape(rows)
        sym = self.symmetrized
        n = len(rows)
        for k in range(n):
            rest = [i for i in range(n) if i != k]
            if not _positive_definite(_principal(sym, rest)):
                raise CartanError(
                    f"removing node {k} leaves an indefinite or degenerate form; "
                    "matrix is not of affine type"
                )
        if not _determinant_is_zero(sym):
            raise CartanError("symmetrized matrix is positive definite (finite type), not affine")

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(len(self.cartan)))

    @property
    def size(self) -> int:
        return len(self.cartan)

    @cached_property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.cartan for x in row)

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        """Positive integers ``d`` with ``d[i] * A[i][j]`` symmetric (half squared root lengths, up to scale)."""
        A = self.cartan
        n = len(A)
        d = [None] * n
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] != 0:
                    dj = d[i] * A[i][j] / A[j][i]
                    if d[j] is None:
                        d[j] = dj
                        stack.append(j)
                    elif d[j] != dj:
                        raise CartanError("Cartan matrix is not symmetrizable")
        if any(x is None for x in d):
            raise CartanError("Dynkin diagram is not connected")
        den = lcm(*(x.denominator for x in d))
        ints = [int(x * den) for x in d]
        g = gcd(*ints)
        return tuple(x // g for x in ints)

    @cached_property
    def symmetrized(self) -> tuple[tuple[int, ...], ...]:
        d = self.symmetrizer
        return tuple(tuple(d[i] * a for a in row) for i, row in enumerate(self.cartan))

    @cached_property
    def null_vector(self) -> tuple[int, ...]:
        """Primitive positive integer vector ``a`` with ``A a = 0`` (coefficients of the imaginary root)."""
        A = self.cartan
        n = len(A)
        # fix a_0 = 1 and solve the remaining (invertible) block
        idx = list(range(1, n))
        m = [[Fraction(A[i][j]) for j in idx] + [Fraction(-A[i][0])] for i in idx]
        k = len(idx)
        for c in range(k):
            p = next(r for r in range(c, k) if m[r][c] != 0)
            m[c], m[p] = m[p], m[c]
            for r in range(k):
                if r != c and m[r][c] != 0:
                    f = m[r][c] / m[c][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        sol = [Fraction(1)] + [m[r][k] / m[r][r] for r in range(k)]
        den = lcm(*(x.denominator for x in sol))
        ints = [int(x * den) for x in sol]
        g = gcd(*ints)
        ints = [x // g for x in ints]
        if ints[0] < 0:
            ints = [-x for x in ints]
        return tuple(ints)

    def is_finite_subset(self, J) -> bool:
        """True iff the principal submatrix on ``J`` is positive definite."""
        J = sorted(J)
        for j in J:
            if j not in range(self.size):
                raise CartanError(f"node {j} not in I")
        return _positive_definite(_principal(self.symmetrized, J))

    def coxeter_order(self, i: int, j: int) -> int:
        """Order of ``s_i s_j``; 0 stands for infinity."""
        if i == j:
            return 1
        p = self.cartan[i][j] * self.cartan[j][i]
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, 0)

    def proper_subsets(self):
        """All proper subsets of I as frozensets, by size then lexicographically."""
        n = self.size
        return [frozenset(c) for k in range(n) for c in combinations(range(n), k)]

    def to_json(self) -> dict:
        return {"label": self.label, "nodes": list(self.nodes), "cartan": [list(r) for r in self.cartan]}

    @classmethod
    def from_json(cls, data) -> "CartanSpec":
        if isinstance(data, dict):
            return cls(tuple(tuple(r) for r in data["cartan"]), label=data.get("label", "custom"))
        return cls(tuple(tuple(r) for r in data))


def _check_shape(A):
    n = len(A)
    if n < 2:
        raise CartanError("an affine Cartan matrix needs at least 2 nodes")
    for i, row in enumerate(A):
        if len(row) != n:
            raise CartanError("Cartan matrix must be square")
        if row[i] != 2:
            raise CartanError(f"diagonal entry A[{i}][{i}] = {row[i]}, expected 2")
        for j, a in enumerate(row):
            if i == j:
                continue
            if a > 0:
                raise CartanError(f"off-diagonal entry A[{i}][{j}] = {a} is positive")
            if (a == 0) != (A[j][i] == 0):
                raise CartanError(f"A[{i}][{j}] and A[{j}][{i}] must vanish together")
            if a * A[j][i] > 4:
                raise CartanError(f"A[{i}][{j}] * A[{j}][{i}] = {a * A[j][i]} exceeds 4")
