# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for bitmask combinatorics; mirrors `_kernels_py`."""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "c"

MAXN = 60

DEF MAXBLOCKS = 4096


def popcount(mask):
    return __builtin_popcountll(<unsigned long long> mask)


def mask_permute(mask, perm):
    cdef unsigned long long m = mask, low, out = 0
    while m:
        low = m & (~m + 1)
        out |= (<unsigned long long> 1) << (<int> perm[__builtin_ctzll(low)])
        m ^= low
    return out


def comp_permute(comp, perm):
    return tuple([mask_permute(b, perm) for b in comp])


def comp_restrict(comp, smask):
    cdef unsigned long long s = smask, b
    out = []
    for blk in comp:
        b = (<unsigned long long> blk) & s
        if b:
            out.append(b)
    return tuple(out)


def dec_restrict(comp, smask):
    cdef unsigned long long s = smask
    return tuple([(<unsigned long long> blk) & s for blk in comp])


def comp_tits(f, g):
    cdef unsigned long long fb[MAXBLOCKS]
    cdef unsigned long long gb[MAXBLOCKS]
    cdef Py_ssize_t p = len(f), q = len(g), i, j
    cdef unsigned long long a
    if p > MAXBLOCKS or q > MAXBLOCKS:
        raise ValueError("too many blocks")
    for i in range(p):
        fb[i] = f[i]
    for j in range(q):
        gb[j] = g[j]
    out = []
    for i in range(p):
        for j in range(q):
            a = fb[i] & gb[j]
            if a:
                out.append(a)
    return tuple(out)


def dec_tits(f, g):
    cdef Py_ssize_t i, j
    out = []
    for bi in f:
        for cj in g:
            out.append((<unsigned long long> bi) & (<unsigned long long> cj))
    return tuple(out)


def comp_refines(f, g):
    return comp_tits(f, g) == g


def area(comp, smask, tmask):
    cdef unsigned long long s = smask, t = tmask, b
    cdef long long total = 0, suffix = 0
    cdef Py_ssize_t k = len(comp), i
    for i in range(k - 1, -1, -1):
        b = comp[i]
        total += __builtin_popcountll(b & t) * suffix
        suffix += __builtin_popcountll(b & s)
    return total


def dist(f, g):
    cdef Py_ssize_t p = len(f), q = len(g), i, j, m, l
    cdef long long total = 0
    cdef int c[MAXBLOCKS]
    cdef unsigned long long fb[64]
    cdef unsigned long long gb[64]
    if p < 2 or q < 2:
        return 0
    if p > 64 or q > 64:
        return _dist_py(f, g)
    for i in range(p):
        fb[i] = f[i]
    for j in range(q):
        gb[j] = g[j]
    # c is the p*q table of intersection sizes, row-major
    for i in range(p):
        for m in range(q):
            c[i * q + m] = __builtin_popcountll(fb[i] & gb[m])
    for i in range(p):
        for j in range(i + 1, p):
            for m in range(1, q):
                if c[i * q + m]:
                    for l in range(m):
                        total += c[i * q + m] * c[j * q + l]
    return total


def _dist_py(f, g):
    p, q = len(f), len(g)
    c = [[(f[i] & g[m]).bit_count() for m in range(q)] for i in range(p)]
    total = 0
    for i in range(p):
        for j in range(i + 1, p):
            for m in range(1, q):
                for l in range(m):
                    total += c[i][m] * c[j][l]
    return total


def dist_opp(f):
    cdef long long total = 0, seen = 0, k
    for b in f:
        k = __builtin_popcountll(<unsigned long long> b)
        total += k * seen
        seen += k
    return total


def tits_perm(f, g):
    cdef Py_ssize_t p = len(f), q = len(g), i, j, pos = 0
    cdef unsigned long long a
    fg = []
    gf = []
    gf_index = {}
    for j in range(q):
        for i in range(p):
            a = (<unsigned long long> f[i]) & (<unsigned long long> g[j])
            if a:
                gf_index[a] = pos
                gf.append(a)
                pos += 1
    perm = []
    for i in range(p):
        for j in range(q):
            a = (<unsigned long long> f[i]) & (<unsigned long long> g[j])
            if a:
                fg.append(a)
                perm.append(gf_index[a])
    return tuple(fg), tuple(gf), tuple(perm)
