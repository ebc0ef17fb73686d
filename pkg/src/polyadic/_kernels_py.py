"""Pure-Python (numpy) versions of the exhaustive-check kernels.

Same signatures and witness semantics as the compiled ``_kernels``
module: tuples are visited in lexicographic order (first coordinate
slowest) and the first failing one is returned.
"""

from functools import lru_cache

import numpy as np

CHUNK = 1 << 18


def _digits(start, stop, base, width):
    """Rows ``start..stop-1`` of the lexicographic enumeration of base**width."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=np.int64)
    for k in range(width - 1, -1, -1):
        out[:, k] = idx % base
        idx //= base
    return out


@lru_cache(maxsize=32)
def _powers(base, width):
    return base ** np.arange(width - 1, -1, -1, dtype=np.int64)


def _flat(cols, base):
    return cols @ _powers(base, cols.shape[1])


def _chunks(total):
    for start in range(0, total, CHUNK):
        yield start, min(start + CHUNK, total)


def assoc_witness(table, order, n):
    table = np.asarray(table, dtype=np.int64)
    width = 2 * n - 1
    for start, stop in _chunks(order**width):
        t = _digits(start, stop, order, width)
        vals = []
        for p in range(n):
            inner = table[_flat(t[:, p:p + n], order)]
            outer = np.concatenate([t[:, :p], inner[:, None], t[:, p + n:]], axis=1)
            vals.append(table[_flat(outer, order)])
        vals = np.stack(vals, axis=1)
        bad = vals != vals[:, :1]
        rows = np.flatnonzero(bad.any(axis=1))
        if rows.size:
            row = int(rows[0])
            return tuple(int(z) for z in t[row]), int(np.argmax(bad[row]))
    return None


def solvable_witness(table, order, n):
    table = np.asarray(table, dtype=np.int64)
    cube = table.reshape((order,) * n)
    for pos in range(n):
        moved = np.moveaxis(cube, pos, -1).reshape(-1, order)
        srt = np.sort(moved, axis=1)
        bad = np.flatnonzero((srt != np.arange(order)).any(axis=1))
        if bad.size:
            rest = _digits(int(bad[0]), int(bad[0]) + 1, order, n - 1)[0] if n > 1 else []
            args = [int(z) for z in rest]
            args.insert(pos, -1)
            return pos, tuple(args)
    return None


def homotopy_witness(src, tgt, order_s, order_t, n, maps):
    src = np.asarray(src, dtype=np.int64)
    tgt = np.asarray(tgt, dtype=np.int64)
    maps = np.asarray(maps, dtype=np.int64)
    for start, stop in _chunks(order_s**n):
        x = _digits(start, stop, order_s, n)
        lhs = maps[n][src[start:stop]]
        mapped = np.stack([maps[k][x[:, k]] for k in range(n)], axis=1)
        rhs = tgt[_flat(mapped, order_t)]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return tuple(int(z) for z in x[int(bad[0])])
    return None


def medial_witness(table, order, n):
    table = np.asarray(table, dtype=np.int64)
    width = n * n
    for start, stop in _chunks(order**width):
        m = _digits(start, stop, order, width).reshape(-1, n, n)
        rows = np.stack([table[_flat(m[:, i, :], order)] for i in range(n)], axis=1)
        cols = np.stack([table[_flat(m[:, :, j], order)] for j in range(n)], axis=1)
        bad = np.flatnonzero(table[_flat(rows, order)] != table[_flat(cols, order)])
        if bad.size:
            return tuple(int(z) for z in m[int(bad[0])].ravel())
    return None


def autotopy_search(table, order, n, perms):
    table = np.asarray(table, dtype=np.int64)
    perms = np.asarray(perms, dtype=np.int64)
    stride = _powers(order, n)
    grid = _digits(0, order**n, order, n)
    ys = np.arange(order)
    found = []
    for a1 in perms:
        for rest in _digits(0, order ** (n - 1), order, n - 1):
            v = np.concatenate([[a1[0]], rest])
            maps = np.empty((n + 1, order), dtype=np.int64)
            maps[0] = a1
            off = int(rest @ stride[1:])
            maps[n][table[ys * stride[0]]] = table[a1 * stride[0] + off]
            for i in range(1, n):
                base = int(v @ stride) - int(v[i]) * int(stride[i])
                tinv = np.empty(order, dtype=np.int64)
                tinv[table[base + ys * stride[i]]] = ys
                maps[i] = tinv[maps[n][table[ys * stride[i]]]]
            mapped = np.stack([maps[k][grid[:, k]] for k in range(n)], axis=1)
            if np.array_equal(maps[n][table], table[mapped @ stride]):
                found.append(maps)
    return found
