# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-check kernels.

Tables are flat int64 arrays in row-major order with x1 varying slowest.
Every kernel returns the lexicographically first witness, or None.
"""

from libc.stdint cimport int64_t

cdef enum:
    MAXW = 256


cdef inline int64_t _flat(const int64_t* args, int n, int64_t order) noexcept nogil:
    cdef int64_t idx = 0
    cdef int k
    for k in range(n):
        idx = idx * order + args[k]
    return idx


cdef inline bint _advance(int64_t* digits, int width, int64_t base) noexcept nogil:
    # odometer step, last digit fastest; False once wrapped around
    cdef int k = width - 1
    while k >= 0:
        digits[k] += 1
        if digits[k] < base:
            return True
        digits[k] = 0
        k -= 1
    return False


def assoc_witness(const int64_t[::1] table, int64_t order, int n):
    cdef int width = 2 * n - 1
    if width > MAXW:
        raise ValueError("arity too large for kernel")
    cdef int64_t t[MAXW]
    cdef int64_t outer[MAXW]
    cdef int64_t v0, v
    cdef int p, k
    for k in range(width):
        t[k] = 0
    while True:
        v0 = -1
        for p in range(n):
            for k in range(p):
                outer[k] = t[k]
            outer[p] = table[_flat(&t[p], n, order)]
            for k in range(p + 1, n):
                outer[k] = t[k + n - 1]
            v = table[_flat(outer, n, order)]
            if p == 0:
                v0 = v
            elif v != v0:
                return tuple([t[k] for k in range(width)]), p
        if not _advance(t, width, order):
            return None


def solvable_witness(const int64_t[::1] table, int64_t order, int n):
    if n > MAXW:
        raise ValueError("arity too large for kernel")
    cdef int64_t args[MAXW]
    cdef int64_t rest[MAXW]
    cdef int64_t stamp = 0
    cdef int64_t[::1] seen
    cdef int pos, k, j
    cdef int64_t y, val
    import numpy as np
    seen = np.full(order, -1, dtype=np.int64)
    for pos in range(n):
        for k in range(n - 1):
            rest[k] = 0
        while True:
            j = 0
            for k in range(n):
                if k != pos:
                    args[k] = rest[j]
                    j += 1
            stamp += 1
            for y in range(order):
                args[pos] = y
                val = table[_flat(args, n, order)]
                if seen[val] == stamp:
                    args[pos] = -1
                    return pos, tuple([args[k] for k in range(n)])
                seen[val] = stamp
            if n == 1 or not _advance(rest, n - 1, order):
                break
    return None


def homotopy_witness(const int64_t[::1] src, const int64_t[::1] tgt,
                     int64_t order_s, int64_t order_t, int n,
                     const int64_t[:, ::1] maps):
    if n > MAXW:
        raise ValueError("arity too large for kernel")
    cdef int64_t x[MAXW]
    cdef int64_t idx = 0
    cdef int64_t rhs
    cdef int k
    for k in range(n):
        x[k] = 0
    while True:
        rhs = 0
        for k in range(n):
            rhs = rhs * order_t + maps[k, x[k]]
        if maps[n, src[idx]] != tgt[rhs]:
            return tuple([x[k] for k in range(n)])
        idx += 1
        if not _advance(x, n, order_s):
            return None


def medial_witness(const int64_t[::1] table, int64_t order, int n):
    cdef int width = n * n
    if width > MAXW:
        raise ValueError("arity too large for kernel")
    cdef int64_t m[MAXW]
    cdef int64_t rows[MAXW]
    cdef int64_t cols[MAXW]
    cdef int64_t col[MAXW]
    cdef int i, j, k
    for k in range(width):
        m[k] = 0
    while True:
        for i in range(n):
            rows[i] = table[_flat(&m[i * n], n, order)]
            for j in range(n):
                col[j] = m[j * n + i]
            cols[i] = table[_flat(col, n, order)]
        if table[_flat(rows, n, order)] != table[_flat(cols, n, order)]:
            return tuple([m[k] for k in range(width)])
        if not _advance(m, width, order):
            return None


def autotopy_search(const int64_t[::1] table, int64_t order, int n, const int64_t[:, ::1] perms):
    """Autotopies whose first map is one of ``perms``.

    With base point 0, the first map and the values ``v_i = alpha_i(0)``
    (i >= 2) force the last map through slot 1 and every middle map through
    its own slot; each candidate is then checked on all n-tuples.
    """
    import numpy as np
    if n + 1 > MAXW:
        raise ValueError("arity too large for kernel")
    cdef int64_t stride[MAXW]
    cdef int64_t v[MAXW]
    cdef int64_t x[MAXW]
    cdef int64_t[:, ::1] maps = np.zeros((n + 1, order), dtype=np.int64)
    cdef int64_t[::1] tinv = np.zeros(order, dtype=np.int64)
    cdef Py_ssize_t r
    cdef int i, k
    cdef int64_t y, off, base, idx, rhs
    cdef bint ok
    found = []
    stride[n - 1] = 1
    for k in range(n - 2, -1, -1):
        stride[k] = stride[k + 1] * order
    for r in range(perms.shape[0]):
        for k in range(n):
            v[k] = 0
        while True:
            v[0] = perms[r, 0]
            off = 0
            for k in range(1, n):
                off += v[k] * stride[k]
            for y in range(order):
                maps[0, y] = perms[r, y]
                # alpha_{n+1}(f(y, 0, ..., 0)) = f(alpha_1(y), v_2, ..., v_n)
                maps[n, table[y * stride[0]]] = table[perms[r, y] * stride[0] + off]
            for i in range(1, n):
                base = 0
                for k in range(n):
                    if k != i:
                        base += v[k] * stride[k]
                for y in range(order):
                    tinv[table[base + y * stride[i]]] = y
                for y in range(order):
                    maps[i, y] = tinv[maps[n, table[y * stride[i]]]]
            ok = True
            for k in range(n):
                x[k] = 0
            idx = 0
            while True:
                rhs = 0
                for k in range(n):
                    rhs += maps[k, x[k]] * stride[k]
                if maps[n, table[idx]] != table[rhs]:
                    ok = False
                    break
                idx += 1
                if not _advance(x, n, order):
                    break
            if ok:
                found.append(np.asarray(maps).copy())
            if n == 1 or not _advance(&v[1], n - 1, order):
                break
    return found
