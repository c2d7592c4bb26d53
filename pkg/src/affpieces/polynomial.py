"""Integer polynomials in q, stored as ascending coefficient tuples."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Poly":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __add__(self, other):
        a, b = self.coeffs, _coerce(other).coeffs
        n = max(len(a), len(b))
        return Poly(tuple((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)))

    def __mul__(self, other):
        a, b = self.coeffs, _coerce(other).coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(tuple(out))

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k: int):
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, q):
        s = 0
        for c in reversed(self.coeffs):
            s = s * q + c
        return s

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        terms.reverse()
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


def _coerce(x):
    return x if isinstance(x, Poly) else Poly((int(x),))


Q = Poly((0, 1))
