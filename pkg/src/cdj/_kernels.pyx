# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels.py`` (same signatures)."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint16_t, uint8_t

cnp.import_array()

BACKEND = "cython"


ctypedef fused table_t:
    uint16_t
    int32_t


DENSE_KEYS = 1 << 22


def cayley_table(perms, base, sorted_keys, key_order, radix):
    cdef int32_t[:, ::1] P = np.ascontiguousarray(perms, dtype=np.int32)
    cdef int32_t[::1] B = np.ascontiguousarray(base, dtype=np.int32)
    cdef int64_t[::1] K = np.ascontiguousarray(sorted_keys, dtype=np.int64)
    cdef int32_t[::1] KO = np.ascontiguousarray(key_order, dtype=np.int32)
    cdef Py_ssize_t n = P.shape[0], nb = B.shape[0]
    cdef int64_t rad = radix
    cdef Py_ssize_t a, b, i, lo, hi, mid
    cdef int64_t key, w
    cdef int32_t[:, ::1] BI = np.empty((n, nb), dtype=np.int32)
    for a in range(n):
        for i in range(nb):
            BI[a, i] = P[a, B[i]]
    cdef uint16_t[:, ::1] T16
    cdef int32_t[:, ::1] T32
    # small key spaces get a direct lookup array instead of a binary search
    cdef int32_t[::1] D = None
    space = int(radix) ** int(nb)
    if space <= DENSE_KEYS:
        dense = np.full(space, -1, dtype=np.int32)
        dense[np.asarray(K)] = np.asarray(KO)
        D = dense
    if n < 65536:
        out = np.empty((n, n), dtype=np.uint16)
        T16 = out
        if D is None:
            _fill_table(T16, P, BI, K, KO, rad)
        else:
            _fill_dense(T16, P, BI, D, rad)
    else:
        out = np.empty((n, n), dtype=np.int32)
        T32 = out
        if D is None:
            _fill_table(T32, P, BI, K, KO, rad)
        else:
            _fill_dense(T32, P, BI, D, rad)
    return out


cdef void _fill_dense(table_t[:, ::1] T, int32_t[:, ::1] P, int32_t[:, ::1] BI,
                      int32_t[::1] D, int64_t rad) noexcept nogil:
    cdef Py_ssize_t n = P.shape[0], nb = BI.shape[1]
    cdef Py_ssize_t a, b, i
    cdef int64_t key, w
    for a in range(n):
        for b in range(n):
            key = 0
            w = 1
            for i in range(nb):
                key += P[b, BI[a, i]] * w
                w *= rad
            T[a, b] = <table_t>D[key]


cdef void _fill_table(table_t[:, ::1] T, int32_t[:, ::1] P, int32_t[:, ::1] BI,
                      int64_t[::1] K, int32_t[::1] KO, int64_t rad) noexcept nogil:
    cdef Py_ssize_t n = P.shape[0], nb = BI.shape[1]
    cdef Py_ssize_t a, b, i, lo, hi, mid
    cdef int64_t key, w
    for a in range(n):
        for b in range(n):
            key = 0
            w = 1
            for i in range(nb):
                key += P[b, BI[a, i]] * w
                w *= rad
            lo = 0
            hi = n - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if K[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid
            T[a, b] = <table_t>KO[lo]


def orbit_labels(maps):
    cdef int32_t[:, ::1] M = np.ascontiguousarray(maps, dtype=np.int32)
    cdef Py_ssize_t m = M.shape[0], n = M.shape[1]
    labels = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] L = labels
    cdef int32_t[::1] stack = np.empty(max(n, 1), dtype=np.int32)
    cdef Py_ssize_t start, top, k
    cdef int32_t x, y
    for start in range(n):
        if L[start] >= 0:
            continue
        L[start] = <int32_t>start
        stack[0] = <int32_t>start
        top = 1
        while top:
            top -= 1
            x = stack[top]
            for k in range(m):
                y = M[k, x]
                if L[y] < 0:
                    L[y] = <int32_t>start
                    stack[top] = y
                    top += 1
    return labels


def closure(table, gens, limit):
    cdef uint16_t[:, ::1] T16
    cdef int32_t[:, ::1] T32
    cdef int32_t[::1] G = np.ascontiguousarray(gens, dtype=np.int32)
    if table.dtype == np.uint16:
        T16 = np.ascontiguousarray(table)
        return _closure(T16, G, <Py_ssize_t>limit)
    T32 = np.ascontiguousarray(table, dtype=np.int32)
    return _closure(T32, G, <Py_ssize_t>limit)


cdef object _closure(table_t[:, ::1] T, int32_t[::1] G, Py_ssize_t limit):
    cdef Py_ssize_t n = T.shape[0], ng = G.shape[0]
    cdef uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] Q = queue
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef int32_t x, y
    Q[0] = 0
    seen[0] = 1
    while head < tail:
        x = Q[head]
        head += 1
        for k in range(ng):
            y = <int32_t>T[x, G[k]]
            if not seen[y]:
                seen[y] = 1
                Q[tail] = y
                tail += 1
                if tail > limit:
                    return None
    return np.sort(queue[:tail])


def product_tuples(table, inv, order, first, cands, s_last):
    cdef Py_ssize_t nfree = len(cands)
    cdef Py_ssize_t r = nfree + 2
    cdef uint16_t[:, ::1] T16
    cdef int32_t[:, ::1] T32
    inv32 = np.ascontiguousarray(inv, dtype=np.int32)
    ord32 = np.ascontiguousarray(order, dtype=np.int32)
    if nfree == 0:
        last = int(inv32[first])
        if ord32[last] == s_last:
            return np.asarray([[first, last]], dtype=np.int32)
        return np.zeros((0, 2), dtype=np.int32)
    lens = np.asarray([len(c) for c in cands], dtype=np.int64)
    flat = np.ascontiguousarray(np.concatenate([np.asarray(c, dtype=np.int32) for c in cands]))
    offs = np.zeros(nfree + 1, dtype=np.int64)
    offs[1:] = np.cumsum(lens)
    cdef int32_t[::1] IV = inv32, OR = ord32, FL = flat
    cdef int64_t[::1] OF = offs
    if table.dtype == np.uint16:
        T16 = np.ascontiguousarray(table)
        rows = _tuples(T16, IV, OR, <int32_t>first, FL, OF, <int32_t>s_last)
    else:
        T32 = np.ascontiguousarray(table, dtype=np.int32)
        rows = _tuples(T32, IV, OR, <int32_t>first, FL, OF, <int32_t>s_last)
    if not rows:
        return np.zeros((0, r), dtype=np.int32)
    return np.asarray(rows, dtype=np.int32).reshape(-1, r)


cdef list _tuples(table_t[:, ::1] T, int32_t[::1] inv, int32_t[::1] order, int32_t first,
            int32_t[::1] flat, int64_t[::1] offs, int32_t s_last):
    cdef Py_ssize_t nfree = offs.shape[0] - 1
    cdef Py_ssize_t r = nfree + 2
    cdef int64_t[::1] pos = np.zeros(nfree, dtype=np.int64)
    cdef int32_t[::1] prod = np.zeros(nfree + 1, dtype=np.int32)
    cdef Py_ssize_t level = 0, k
    cdef int32_t c, last, x
    out = []
    prod[0] = first
    for k in range(nfree):
        pos[k] = offs[k]
    while level >= 0:
        if pos[level] >= offs[level + 1]:
            pos[level] = offs[level]
            level -= 1
            if level >= 0:
                pos[level] += 1
            continue
        c = flat[pos[level]]
        x = <int32_t>T[prod[level], c]
        if level == nfree - 1:
            last = inv[x]
            if order[last] == s_last:
                out.append(first)
                for k in range(nfree):
                    out.append(flat[pos[k]])
                out.append(last)
            pos[level] += 1
        else:
            prod[level + 1] = x
            level += 1
    return out


def rref_mod(a, p):
    m = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef int64_t[:, ::1] A = m
    cdef int64_t P = p
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t f, tmp
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        f = _inv(A[r, c], P)
        for j in range(cols):
            A[r, j] = A[r, j] * f % P
        for i in range(rows):
            if i == r or A[i, c] == 0:
                continue
            f = A[i, c]
            for j in range(cols):
                A[i, j] = (A[i, j] - f * A[r, j]) % P
                if A[i, j] < 0:
                    A[i, j] += P
        pivots.append(c)
        r += 1
    return m, pivots


cdef int64_t _inv(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def nullspace_mod(a, p):
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    r, pivots = rref_mod(a, p)
    pset = set(pivots)
    free = [c for c in range(cols) if c not in pset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def charpoly_mod(a, p):
    h = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef int64_t[:, ::1] H = h
    cdef int64_t P = p
    cdef Py_ssize_t n = H.shape[0], m, i, j, k, piv
    cdef int64_t u, inv, tmp, t, coef, diag
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if H[i, m - 1] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            for j in range(n):
                tmp = H[piv, j]
                H[piv, j] = H[m, j]
                H[m, j] = tmp
            for j in range(n):
                tmp = H[j, piv]
                H[j, piv] = H[j, m]
                H[j, m] = tmp
        inv = _inv(H[m, m - 1], P)
        for i in range(m + 1, n):
            u = H[i, m - 1] * inv % P
            if u == 0:
                continue
            for j in range(n):
                H[i, j] = (H[i, j] - u * H[m, j]) % P
                if H[i, j] < 0:
                    H[i, j] += P
            for j in range(n):
                H[j, m] = (H[j, m] + u * H[j, i]) % P
    polys_np = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef int64_t[:, ::1] PL = polys_np
    PL[0, 0] = 1
    for m in range(1, n + 1):
        diag = H[m - 1, m - 1]
        for k in range(m):
            PL[m, k + 1] = PL[m - 1, k]
        for k in range(m):
            PL[m, k] = (PL[m, k] - diag * PL[m - 1, k]) % P
        t = 1
        for i in range(1, m):
            t = t * H[m - i, m - i - 1] % P
            coef = t * H[m - i - 1, m - 1] % P
            if coef == 0:
                continue
            for k in range(m - i):
                PL[m, k] = (PL[m, k] - coef * PL[m - i - 1, k]) % P
        for k in range(m + 1):
            if PL[m, k] < 0:
                PL[m, k] += P
    return polys_np[n, :n + 1][::-1].copy()
