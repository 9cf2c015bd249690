"""Pure-Python/numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
The compiled module is preferred at import time (see :mod:`cdj.kernels`);
this one is the fallback and the reference the parity tests compare against.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def cayley_table(perms, base, sorted_keys, key_order, radix):
    """Full multiplication table ``T[a, b] = index(a*b)``.

    ``perms`` holds one image array per row; products act left to right,
    so ``(a*b)[x] = b[a[x]]``. Elements are identified by the images of the
    base points, packed into an integer key with the given radix.
    """
    n = perms.shape[0]
    dtype = np.uint16 if n < 65536 else np.int32
    table = np.empty((n, n), dtype=dtype)
    weights = radix ** np.arange(len(base), dtype=np.int64)
    base_images = perms[:, base]
    for b in range(n):
        keys = perms[b][base_images].astype(np.int64) @ weights
        pos = np.searchsorted(sorted_keys, keys)
        table[:, b] = key_order[pos]
    return table


def orbit_labels(maps):
    """Label every point by the smallest point of its orbit under ``maps``."""
    rows = [list(map(int, row)) for row in np.asarray(maps)]
    n = len(rows[0]) if rows else 0
    labels = [-1] * n
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for row in rows:
                y = row[x]
                if labels[y] < 0:
                    labels[y] = start
                    stack.append(y)
    return np.asarray(labels, dtype=np.int32)


def closure(table, gens, limit):
    """Elements of the subgroup generated by ``gens`` (sorted), or None.

    Returns None as soon as the subgroup is known to exceed ``limit``.
    """
    n = table.shape[0]
    gens = np.asarray(gens, dtype=np.intp)
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    count = 1
    frontier = np.zeros(1, dtype=np.intp)
    while frontier.size:
        nxt = table[np.ix_(frontier, gens)].ravel().astype(np.intp)
        nxt = np.unique(nxt[~mask[nxt]])
        if nxt.size == 0:
            break
        count += nxt.size
        if count > limit:
            return None
        mask[nxt] = True
        frontier = nxt
    return np.flatnonzero(mask).astype(np.int32)


def product_tuples(table, inv, order, first, cands, s_last):
    """All tuples ``(first, c_2, ..., c_{r-1}, g_r)`` with product 1.

    ``cands`` lists candidate arrays for the free middle positions; ``g_r``
    is forced to be the inverse of the prefix product and kept only if its
    order is ``s_last``. Returns an ``(M, r)`` int32 array in lexicographic
    order of the candidate positions.
    """
    r = len(cands) + 2
    out = []

    def walk(prefix, chosen, level):
        if level == len(cands):
            last = int(inv[prefix])
            if order[last] == s_last:
                out.append(chosen + [last])
            return
        cand = cands[level]
        if level == len(cands) - 1:
            prods = table[prefix, cand].astype(np.intp)
            lasts = inv[prods]
            keep = np.flatnonzero(order[lasts] == s_last)
            for k in keep:
                out.append(chosen + [int(cand[k]), int(lasts[k])])
            return
        row = table[prefix]
        for c in cand:
            walk(int(row[c]), chosen + [int(c)], level + 1)

    walk(int(first), [int(first)], 0)
    if not out:
        return np.zeros((0, r), dtype=np.int32)
    return np.asarray(out, dtype=np.int32)


def rref_mod(a, p):
    """Reduced row echelon form over GF(p); returns ``(R, pivots)``."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        factors = m[:, c].copy()
        factors[r] = 0
        nzr = np.flatnonzero(factors)
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(factors[nzr], m[r]) % p) % p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace_mod(a, p):
    """Basis (as rows) of ``{x : a @ x = 0}`` over GF(p)."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    r, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def charpoly_mod(a, p):
    """Characteristic polynomial over GF(p), highest degree first.

    Hessenberg reduction followed by the usual three-term recurrence.
    """
    h = [[int(x) % p for x in row] for row in np.asarray(a)]
    n = len(h)
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(h[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = h[i][m - 1] * inv % p
            if not u:
                continue
            hi, hm = h[i], h[m]
            for j in range(n):
                hi[j] = (hi[j] - u * hm[j]) % p
            for row in h:
                row[m] = (row[m] + u * row[i]) % p
    # polys[k] holds the charpoly of the leading k x k block, lowest degree first
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev
        diag = h[m - 1][m - 1]
        for k, c in enumerate(prev):
            cur[k] = (cur[k] - diag * c) % p
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % p
            coef = t * h[m - i - 1][m - 1] % p
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    cur[k] = (cur[k] - coef * c) % p
        polys.append(cur)
    return np.asarray(polys[n][::-1], dtype=np.int64)
