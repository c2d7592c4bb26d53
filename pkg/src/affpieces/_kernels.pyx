# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Weyl-group kernels (int64, checked).

Mirrors ``_kernels_py``. Every entry read or written is checked against
``LIMIT``; anything larger raises OverflowError so the caller can redo the
work with Python integers.
"""

cdef enum:
    MAXN = 16
    MAXSQ = 256

BACKEND = "cython"
cdef long long LIMIT = 1LL << 28


cdef int _load(tuple t, long long* buf, int m) except -1:
    cdef int k
    cdef long long x
    if len(t) != m:
        raise ValueError("flat matrix has wrong size")
    for k in range(m):
        x = t[k]
        if x > LIMIT or x < -LIMIT:
            raise OverflowError("matrix entry exceeds the int64 kernel bound")
        buf[k] = x
    return 0


cdef tuple _dump(long long* buf, int m):
    cdef int k
    for k in range(m):
        if buf[k] > LIMIT or buf[k] < -LIMIT:
            raise OverflowError("matrix entry exceeds the int64 kernel bound")
    return tuple([buf[k] for k in range(m)])


cdef inline void _right_reflect(long long* w, long long* out, long long* A, int n, int i) nogil:
    cdef int r, j
    cdef long long wi
    for r in range(n * n):
        out[r] = w[r]
    for r in range(n):
        wi = w[r * n + i]
        if wi != 0:
            for j in range(n):
                if A[i * n + j] != 0:
                    out[r * n + j] -= A[i * n + j] * wi


cdef inline int _mask(long long* w, int n) nogil:
    """Right-descent bitmask; -1 on a sign-incoherent or zero column."""
    cdef int i, r, mask = 0
    cdef bint pos, neg
    cdef long long x
    for i in range(n):
        pos = False
        neg = False
        for r in range(n):
            x = w[r * n + i]
            if x > 0:
                pos = True
            elif x < 0:
                neg = True
        if pos == neg:
            return -1
        if neg:
            mask |= 1 << i
    return mask


cdef int _checked_mask(long long* w, int n) except -2:
    cdef int m = _mask(w, n)
    if m < 0:
        raise ValueError("matrix column is not sign-coherent; not a Weyl group element")
    return m


def mat_mul(tuple a, tuple b, int n):
    cdef long long A_[MAXSQ]
    cdef long long B_[MAXSQ]
    cdef long long C_[MAXSQ]
    cdef int r, c, k
    cdef long long s
    if n > MAXN:
        raise OverflowError("rank too large for the compiled kernel")
    _load(a, A_, n * n)
    _load(b, B_, n * n)
    for r in range(n):
        for c in range(n):
            s = 0
            for k in range(n):
                s += A_[r * n + k] * B_[k * n + c]
            C_[r * n + c] = s
    return _dump(C_, n * n)


def right_reflect(tuple w, tuple A, int n, int i):
    cdef long long W[MAXSQ]
    cdef long long O[MAXSQ]
    cdef long long C[MAXSQ]
    if n > MAXN:
        raise OverflowError("rank too large for the compiled kernel")
    _load(w, W, n * n)
    _load(A, C, n * n)
    _right_reflect(W, O, C, n, i)
    return _dump(O, n * n)


def left_reflect(tuple w, tuple A, int n, int i):
    cdef long long W[MAXSQ]
    cdef long long C[MAXSQ]
    cdef long long row[MAXN]
    cdef int j, k
    cdef long long s
    if n > MAXN:
        raise OverflowError("rank too large for the compiled kernel")
    _load(w, W, n * n)
    _load(A, C, n * n)
    # row i is read in full before being overwritten
    for k in range(n):
        s = 0
        for j in range(n):
            s += C[i * n + j] * W[j * n + k]
        row[k] = W[i * n + k] - s
    for k in range(n):
        W[i * n + k] = row[k]
    return _dump(W, n * n)


def right_descent_mask(tuple w, int n):
    cdef long long W[MAXSQ]
    if n > MAXN:
        raise OverflowError("rank too large for the compiled kernel")
    _load(w, W, n * n)
    return _checked_mask(W, n)


def strip(tuple w, tuple A, int n):
    cdef long long W[MAXSQ]
    cdef long long O[MAXSQ]
    cdef long long C[MAXSQ]
    cdef int mask, i, k
    if n > MAXN:
        raise OverflowError("rank too large for the compiled kernel")
    _load(w, W, n * n)
    _load(A, C, n * n)
    letters = []
    mask = _checked_mask(W, n)
    while mask:
        i = 0
        while not (mask >> i) & 1:
            i += 1
        letters.append(i)
        _right_reflect(W, O, C, n, i)
        for k in range(n * n):
            if O[k] > LIMIT or O[k] < -LIMIT:
                raise OverflowError("matrix entry exceeds the int64 kernel bound")
            W[k] = O[k]
        mask = _checked_mask(W, n)
    return tuple(letters)


def expand_layer(list layer, tuple A, int n):
    cdef long long W[MAXSQ]
    cdef long long O[MAXSQ]
    cdef long long C[MAXSQ]
    cdef int idx, i, mask, m = n * n
    if n > MAXN:
        raise OverflowError("rank too large for the compiled kernel")
    _load(A, C, m)
    seen = {}
    out = []
    parents = []
    for idx in range(len(layer)):
        _load(<tuple>layer[idx], W, m)
        mask = _checked_mask(W, n)
        for i in range(n):
            if (mask >> i) & 1:
                continue
            _right_reflect(W, O, C, n, i)
            v = _dump(O, m)
            if v not in seen:
                seen[v] = len(out)
                out.append(v)
                parents.append((idx, i))
    return out, parents
