"""Pure-Python Weyl-group kernels.

Same signatures as the compiled ``_kernels`` module. Elements are flat
row-major tuples of Python ints, so there is no overflow to worry about.
"""

BACKEND = "python"


def mat_mul(a, b, n):
    out = []
    for r in range(n):
        row = a[r * n:(r + 1) * n]
        for c in range(n):
            s = 0
            for k in range(n):
                x = row[k]
                if x:
                    s += x * b[k * n + c]
            out.append(s)
    return tuple(out)


def right_reflect(w, A, n, i):
    """``w * s_i``: column j becomes ``w[:, j] - A[i][j] * w[:, i]``."""
    out = list(w)
    arow = A[i * n:(i + 1) * n]
    for r in range(n):
        wi = w[r * n + i]
        if wi:
            base = r * n
            for j in range(n):
                a = arow[j]
                if a:
                    out[base + j] -= a * wi
    return tuple(out)


def left_reflect(w, A, n, i):
    """``s_i * w``: only row i changes."""
    out = list(w)
    arow = A[i * n:(i + 1) * n]
    for k in range(n):
        s = 0
        for j in range(n):
            a = arow[j]
            if a:
                s += a * w[j * n + k]
        out[i * n + k] = w[i * n + k] - s
    return tuple(out)


def right_descent_mask(w, n):
    mask = 0
    for i in range(n):
        pos = neg = False
        for r in range(n):
            x = w[r * n + i]
            if x > 0:
                pos = True
            elif x < 0:
                neg = True
        if pos and neg:
            raise ValueError(f"column {i} is not sign-coherent; not a Weyl group element")
        if neg:
            mask |= 1 << i
        elif not pos:
            raise ValueError(f"column {i} is zero; not a Weyl group element")
    return mask


def strip(w, A, n):
    """Strip the smallest right descent until the identity is reached; return the letters removed."""
    letters = []
    mask = right_descent_mask(w, n)
    while mask:
        i = (mask & -mask).bit_length() - 1
        letters.append(i)
        w = right_reflect(w, A, n, i)
        mask = right_descent_mask(w, n)
    return tuple(letters)


def expand_layer(layer, A, n):
    """Next BFS layer: all ``w * s_i`` with ``i`` not a right descent of ``w``.

    Returns ``(elements, parents)`` with ``parents[k] = (index into layer, letter)``
    for the first occurrence of each new element, in iteration order.
    """
    seen = {}
    out = []
    parents = []
    for idx, w in enumerate(layer):
        mask = right_descent_mask(w, n)
        for i in range(n):
            if mask >> i & 1:
                continue
            v = right_reflect(w, A, n, i)
            if v not in seen:
                seen[v] = len(out)
                out.append(v)
                parents.append((idx, i))
    return out, parents
