"""Volume-one lattices in ``F_q((eps))^2`` as non-backtracking walks in the Bruhat-Tits tree.

The base lattice is ``cl = A^2`` with ``A = F_q[[eps]]``. A step from a
lattice ``M`` with basis ``(m1, m2)`` picks a line of ``M / eps M``:

* line ``(1, t)`` gives ``N = span(m1 + t m2, eps m2)``;
* line ``(0, 1)`` (first step only) gives ``N = span(m2, eps m1)``.

In the new basis the way back is always the line ``(0, 1)``, so later steps
choose among the q lines ``(1, t)``. A walk of length ``2n`` ends at
``eps^n cl'`` for a unique volume-one lattice ``cl'`` with
``dim cl / (cl & cl') = n``; rescaling by ``eps^-n`` (and fixing the sign of
the second vector) gives a basis of determinant exactly 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ..gf import field as gf_field
from . import laurent as lp
from .module import Truncation, intersect, rref

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)


@dataclass(frozen=True, eq=False)
class LatticeClass:
    q: int
    word: tuple[int, ...]
    basis: tuple = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, LatticeClass) and (self.q, self.word) == (other.q, other.word)

    def __hash__(self):
        return hash((self.q, self.word))

    @property
    def level(self) -> int:
        """``dim cl / (cl & cl')``"""
        return len(self.word) // 2

    @property
    def elementary_divisors(self) -> tuple[int, int]:
        return (-self.level, self.level)

    @property
    def first_line(self) -> tuple[int, int]:
        """Line of ``cl / eps cl`` chosen by the first step (the walk's view of the first boundary line)."""
        if not self.word:
            raise ValueError("the base lattice has no boundary lines")
        return step_line(self.q, self.word[0])

    @property
    def last_line(self) -> tuple[int, int]:
        """Backtrack direction at the end of the walk, in the canonical basis."""
        if not self.word:
            raise ValueError("the base lattice has no boundary lines")
        return (0, 1)

    def label(self) -> str:
        return ".".join(map(str, self.word)) or "base"


def step_line(q: int, letter: int) -> tuple[int, int]:
    return (0, 1) if letter == q else (1, letter)


def _step(F, basis, line):
    a, b, c, d = basis
    col1, col2 = (a, c), (b, d)
    if line == (0, 1):
        n1, n2 = col2, (lp.shift(a, 1), lp.shift(c, 1))
    else:
        t = line[1]
        n1 = (lp.add(F, col1[0], lp.scale(F, t, col2[0])), lp.add(F, col1[1], lp.scale(F, t, col2[1])))
        n2 = (lp.shift(b, 1), lp.shift(d, 1))
    return (n1[0], n2[0], n1[1], n2[1])


def lattice_from_word(q: int, word) -> LatticeClass:
    word = tuple(word)
    if len(word) % 2:
        raise ValueError("walk length must be even for a volume-one lattice")
    for pos, x in enumerate(word):
        hi = q if pos == 0 else q - 1
        if not 0 <= x <= hi:
            raise ValueError(f"letter {x} at position {pos} out of range 0..{hi}")
    F = gf_field(q)
    B = lp.identity()
    for x in word:
        B = _step(F, B, step_line(q, x))
    n = len(word) // 2
    B = tuple(lp.shift(e, -n) for e in B)
    det = lp.det(F, B)
    if det == {0: F.neg(1)}:
        B = (B[0], lp.neg(F, B[1]), B[2], lp.neg(F, B[3]))
    elif det != {0: 1}:
        raise AssertionError(f"walk produced determinant {det}")
    return LatticeClass(q, word, B)


def _check_q(q):
    if q not in SUPPORTED_Q:
        raise ValueError(f"q = {q} unsupported; choose one of {SUPPORTED_Q}")


def lattice_count(q: int, n: int) -> int:
    return 1 if n == 0 else (q + 1) * q ** (2 * n - 1)


@lru_cache(maxsize=None)
def enumerate_lattices(q: int, n: int) -> tuple[LatticeClass, ...]:
    """All volume-one lattices at ``dim cl / (cl & cl') = n``, ordered by walk word."""
    _check_q(q)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return (lattice_from_word(q, ()),)
    words = product(range(q + 1), *[range(q)] * (2 * n - 1))
    return tuple(lattice_from_word(q, w) for w in words)


def truncation(q: int, n: int) -> Truncation:
    """Window wide enough for level-n lattices and reduction modulo eps of their duals."""
    return Truncation(gf_field(q), n + 1)


def lattice_key(T: Truncation, basis) -> tuple:
    return T.lattice(basis)


def _line_of(F, vectors):
    R = rref(F, [v for v in vectors if any(v)], 2)
    if len(R) != 1:
        raise AssertionError(f"expected a line, got a space of dimension {len(R)}")
    return R[0]


def lines_between(q: int, base, other, n: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Images of ``M & M'`` in ``M / eps M`` and ``M' / eps M'``, each in the given basis.

    ``base`` and ``other`` are determinant-one bases of M and M' with
    ``dim M / (M & M') = n``; both lattices must lie between ``eps^n cl`` and ``eps^-n cl``.
    """
    if n < 1:
        raise ValueError("boundary lines need n >= 1")
    F = gf_field(q)
    T = truncation(q, n)
    meet = intersect(F, T.lattice(base), T.lattice(other), T.dim)
    if len(T.lattice(base)) - len(meet) != n:
        raise ValueError(f"lattices are not at relative level {n}")
    reds = ([], [])
    for v in meet:
        x0, x1 = T.pair(v)
        for side, B in enumerate((base, other)):
            inv = lp.adjugate(F, B)
            y0 = lp.add(F, lp.mul(F, inv[0], x0), lp.mul(F, inv[1], x1))
            y1 = lp.add(F, lp.mul(F, inv[2], x0), lp.mul(F, inv[3], x1))
            if lp.valuation(y0) < 0 or lp.valuation(y1) < 0:
                raise AssertionError("intersection vector escapes its lattice")
            reds[side].append((lp.coeff(y0, 0), lp.coeff(y1, 0)))
    return _line_of(F, reds[0]), _line_of(F, reds[1])


@lru_cache(maxsize=None)
def boundary_lines(lattice: LatticeClass) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lines ``cl_1 / eps cl`` in ``cl / eps cl`` and ``cl_2 / eps cl'`` in ``cl' / eps cl'``.

    ``cl_1`` is the unique lattice of codimension one in ``cl`` containing
    ``cl & cl'``, and ``cl_2`` its mirror inside ``cl'``; their reductions are the
    images of ``cl & cl'``. Computed from the truncated module, independently of
    the walk, in the standard basis of cl and the canonical basis of cl'.
    """
    if lattice.level == 0:
        raise ValueError("boundary lines need n >= 1")
    return lines_between(lattice.q, lp.identity(), lattice.basis, lattice.level)


def projective_line(q: int) -> list[tuple[int, int]]:
    """Normalized representatives of the q+1 lines in F_q^2."""
    return [(1, t) for t in range(q)] + [(0, 1)]


def codim_one_sublattices(q: int, basis=None):
    """The q+1 lattices strictly between ``eps M`` and ``M`` (default ``M = cl``), with their lines."""
    F = gf_field(q)
    if basis is None:
        basis = lp.identity()
    out = []
    for line in projective_line(q):
        a, b, c, d = basis
        v = (lp.add(F, lp.scale(F, line[0], a), lp.scale(F, line[1], b)),
             lp.add(F, lp.scale(F, line[0], c), lp.scale(F, line[1], d)))
        if line == (0, 1):
            w = (lp.shift(a, 1), lp.shift(c, 1))
        else:
            w = (lp.shift(b, 1), lp.shift(d, 1))
        out.append((line, (v[0], w[0], v[1], w[1])))
    return out
