"""Small finite fields by lookup table.

Elements of GF(p^k) are the ints ``0..q-1``; the base-p digits of an int are
the coefficients of its polynomial over GF(p), reduced modulo the first monic
irreducible of degree k in digit order. 0 and 1 are the field's zero and one.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product


def _prime_power(q):
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


def _digits(x, p, k):
    return [(x // p**i) % p for i in range(k)]


def _undigits(ds, p):
    return sum(d * p**i for i, d in enumerate(ds))


def _polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic: x^k = -(lower terms)
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return prod[:k]


def _is_irreducible(modulus, p):
    k = len(modulus) - 1
    if k == 1:
        return True
    # no roots is enough up to degree 3
    if k <= 3:
        for x in range(p):
            if sum(c * x**i for i, c in enumerate(modulus)) % p == 0:
                return False
        return True
    # brute force: no monic factor of degree <= k/2
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            f = list(low) + [1]
            r = list(modulus)
            for deg in range(len(r) - 1, d - 1, -1):
                c = r[deg]
                if c:
                    for i in range(d + 1):
                        r[deg - d + i] = (r[deg - d + i] - c * f[i]) % p
            if not any(r[:d]):
                return False
    return True


class GF:
    """The field with ``q`` elements."""

    def __init__(self, q: int):
        pk = _prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        p, k = pk
        if k == 1:
            self.modulus = (0, 1)
            mul = [[(a * b) % p for b in range(q)] for a in range(q)]
            add = [[(a + b) % p for b in range(q)] for a in range(q)]
        else:
            for low in product(range(p), repeat=k):
                cand = tuple(reversed(low)) + (1,)
                if cand[0] and _is_irreducible(cand, p):
                    self.modulus = cand
                    break
            add = [[_undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p)
                    for b in range(q)] for a in range(q)]
            mul = [[_undigits(_polymulmod(_digits(a, p, k), _digits(b, p, k), self.modulus, p), p)
                    for b in range(q)] for a in range(q)]
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        self.neg_table = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
        self.inv_table = (None,) + tuple(next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q))

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def units(self) -> range:
        return range(1, self.q)

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return self.inv_table[a]

    def additive_basis(self) -> tuple[int, ...]:
        """A basis of the field over its prime field."""
        return tuple(self.p**i for i in range(self.k))


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
