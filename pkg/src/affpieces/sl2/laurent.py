"""Laurent polynomials in eps over a small finite field, and 2x2 matrices of them.

A Laurent polynomial is a dict ``{exponent: coefficient}`` with nonzero
coefficients only; a 2x2 matrix is a row-major 4-tuple of such dicts.
"""
from __future__ import annotations

INF = float("inf")


def lp(F, coeffs: dict) -> dict:
    return {k: c for k, c in coeffs.items() if c}


def const(c) -> dict:
    return {0: c} if c else {}


def mono(c, k) -> dict:
    return {k: c} if c else {}


def add(F, a, b):
    out = dict(a)
    for k, c in b.items():
        s = F.add(out.get(k, 0), c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def neg(F, a):
    return {k: F.neg(c) for k, c in a.items()}


def sub(F, a, b):
    return add(F, a, neg(F, b))


def mul(F, a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            s = F.add(out.get(k, 0), F.mul(x, y))
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def scale(F, c, a):
    if not c:
        return {}
    return {k: F.mul(c, x) for k, x in a.items()}


def shift(a, k):
    """Multiply by ``eps^k``."""
    return {e + k: c for e, c in a.items()}


def valuation(a):
    return min(a) if a else INF


def coeff(a, k):
    return a.get(k, 0)


def freeze(a) -> tuple:
    return tuple(sorted(a.items()))


# 2x2 matrices (a, b, c, d) = [[a, b], [c, d]]

def mat(a, b, c, d):
    return (a, b, c, d)


def identity():
    return ({0: 1}, {}, {}, {0: 1})


def mat_mul(F, X, Y):
    a, b, c, d = X
    e, f, g, h = Y
    return (
        add(F, mul(F, a, e), mul(F, b, g)),
        add(F, mul(F, a, f), mul(F, b, h)),
        add(F, mul(F, c, e), mul(F, d, g)),
        add(F, mul(F, c, f), mul(F, d, h)),
    )


def det(F, X):
    a, b, c, d = X
    return sub(F, mul(F, a, d), mul(F, b, c))


def adjugate(F, X):
    """Inverse of a determinant-one matrix."""
    a, b, c, d = X
    return (d, neg(F, b), neg(F, c), a)


def mat_valuation(X):
    return min(valuation(x) for x in X)


def reduce_mod_eps(X):
    """Constant terms of a matrix with entries in F[[eps]]."""
    if mat_valuation(X) < 0:
        raise ValueError("matrix has a negative power of eps; not integral")
    return tuple(coeff(x, 0) for x in X)


def column(X, j):
    return (X[j], X[2 + j])


def freeze_mat(X):
    return tuple(freeze(x) for x in X)
