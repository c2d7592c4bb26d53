"""Lattices as eps-stable subspaces of a truncated module.

With ``W_N = eps^-N A^2 / eps^N A^2`` (``A = F_q[[eps]]``), every lattice
between ``eps^N A^2`` and ``eps^-N A^2`` is the preimage of one subspace of
``W_N``, a ``4N``-dimensional F_q-space. Intersections, sums and
containments of such lattices become row reduction over F_q. This is the
independent route used to certify the tree-walk enumeration.
"""
from __future__ import annotations

from . import laurent as lp


def rref(F, rows, ncols):
    """Reduced row echelon form as a tuple of tuples (zero rows dropped)."""
    m = [list(r) for r in rows]
    col = 0
    r = 0
    while r < len(m) and col < ncols:
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][col])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
        col += 1
    return tuple(tuple(row) for row in m[:r])


def rank(F, rows, ncols):
    return len(rref(F, rows, ncols))


def nullspace(F, rows, ncols):
    """Basis of ``{x : <row, x> = 0 for every row}``."""
    R = rref(F, rows, ncols)
    pivots = []
    for row in R:
        pivots.append(next(j for j, x in enumerate(row) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(R, pivots):
            v[p] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def intersect(F, U, V, ncols):
    return rref(F, nullspace(F, list(nullspace(F, U, ncols)) + list(nullspace(F, V, ncols)), ncols), ncols)


def contains(F, U, V, ncols):
    """True iff span(V) is inside span(U)."""
    return rank(F, list(U) + list(V), ncols) == rank(F, U, ncols)


class Truncation:
    """Coordinates on ``W_N``; index ``c * 2N + (k + N)`` holds the ``eps^k`` coefficient of component c."""

    def __init__(self, F, N: int):
        self.F = F
        self.N = N
        self.dim = 4 * N

    def vector(self, pair):
        N = self.N
        out = [0] * self.dim
        for c, comp in enumerate(pair):
            for k, x in comp.items():
                if k < -N:
                    raise ValueError(f"vector has eps^{k} below the truncation window eps^-{N}")
                if k < N:
                    out[c * 2 * N + k + N] = x
        return tuple(out)

    def pair(self, vec):
        """Inverse of ``vector`` (Laurent components truncated below eps^N)."""
        N = self.N
        out = []
        for c in range(2):
            comp = {}
            for k in range(-N, N):
                x = vec[c * 2 * N + k + N]
                if x:
                    comp[k] = x
            out.append(comp)
        return tuple(out)

    def lattice(self, basis):
        """Subspace of ``W_N`` for the lattice spanned by the columns of ``basis``."""
        rows = []
        for j in range(2):
            col = lp.column(basis, j)
            for s in range(2 * self.N + 1):
                rows.append(self.vector((lp.shift(col[0], s), lp.shift(col[1], s))))
        return rref(self.F, rows, self.dim)

    def standard(self, k: int = 0):
        """Subspace of ``eps^k A^2``."""
        return self.lattice(({k: 1}, {}, {}, {k: 1}))

    def codim(self, big, small):
        """``dim big / (big & small)``"""
        return len(big) - len(intersect(self.F, big, small, self.dim))
