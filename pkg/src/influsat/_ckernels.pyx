# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels (graphs with at most 64 vertices).

Mirrors ``_pykernels`` exactly; vertex sets are ``uint64`` masks.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline uint64_t _spread(const uint64_t* preds, const int64_t* thr, int n, uint64_t mask) noexcept nogil:
    cdef uint64_t current = mask, new
    cdef int i
    while True:
        new = current
        for i in range(n):
            if not ((current >> i) & 1) and popc(preds[i] & current) >= thr[i]:
                new |= (<uint64_t>1) << i
        if new == current:
            return current
        current = new


cdef inline uint64_t _expand(uint64_t t, const int* bits) noexcept nogil:
    cdef uint64_t mask = 0
    cdef int k = 0
    while t:
        if t & 1:
            mask |= (<uint64_t>1) << bits[k]
        t >>= 1
        k += 1
    return mask


cdef class _Graph:
    cdef uint64_t* preds
    cdef int64_t* thr
    cdef int64_t* indeg
    cdef int n

    def __cinit__(self, preds, thr, int n):
        cdef int i
        self.n = n
        self.preds = <uint64_t*> malloc(max(n, 1) * sizeof(uint64_t))
        self.thr = <int64_t*> malloc(max(n, 1) * sizeof(int64_t))
        self.indeg = <int64_t*> malloc(max(n, 1) * sizeof(int64_t))
        if not self.preds or not self.thr or not self.indeg:
            raise MemoryError()
        for i in range(n):
            self.preds[i] = <uint64_t> preds[i]
            # thresholds above n are unreachable; clamping keeps them in int64
            self.thr[i] = <int64_t> min(thr[i], n + 1)
            self.indeg[i] = popc(self.preds[i])

    def __dealloc__(self):
        free(self.preds)
        free(self.thr)
        free(self.indeg)


cdef int* _bits_array(player_bits) except NULL:
    cdef int k = len(player_bits)
    cdef int* bits = <int*> malloc(max(k, 1) * sizeof(int))
    if not bits:
        raise MemoryError()
    for i in range(k):
        bits[i] = player_bits[i]
    return bits


def spread(preds, thr, int n, mask):
    cdef _Graph g = _Graph(preds, thr, n)
    return _spread(g.preds, g.thr, n, <uint64_t> mask)


def expansion_histogram(preds, thr, int n, player_bits, uint64_t start, uint64_t stop):
    cdef _Graph g = _Graph(preds, thr, n)
    cdef int* bits = _bits_array(player_bits)
    cdef int64_t* hist = <int64_t*> malloc((n + 1) * sizeof(int64_t))
    cdef uint64_t t
    cdef int a
    if not hist:
        free(bits)
        raise MemoryError()
    for a in range(n + 1):
        hist[a] = 0
    with nogil:
        for t in range(start, stop):
            hist[popc(_spread(g.preds, g.thr, n, _expand(t, bits)))] += 1
    out = [hist[a] for a in range(n + 1)]
    free(bits)
    free(hist)
    return out


def fill_game_table(preds, thr, int n, player_bits, int64_t quota, unsigned char[::1] out, uint64_t start, uint64_t stop):
    cdef _Graph g = _Graph(preds, thr, n)
    cdef int* bits = _bits_array(player_bits)
    cdef uint64_t t
    with nogil:
        for t in range(start, stop):
            out[t] = 1 if popc(_spread(g.preds, g.thr, n, _expand(t, bits))) >= quota else 0
    free(bits)


cdef inline unsigned char _decide(_Graph g, uint64_t players, int64_t quota, int kind, int literal, uint64_t x) noexcept nogil:
    cdef int n = g.n
    cdef int i
    cdef int64_t ones = 0, p, q, t
    cdef uint64_t active, player_active
    if kind == 0:
        return 1 if popc(_spread(g.preds, g.thr, n, x & players)) >= quota else 0
    if kind == 2:
        for i in range(n):
            p = popc(g.preds[i] & x)
            q = g.indeg[i] - p
            t = g.thr[i]
            if p >= t and q < t:
                ones += 1
            elif q >= t and p < t:
                pass
            elif (x >> i) & 1:
                ones += 1
        return 1 if ones >= quota else 0
    active = _spread(g.preds, g.thr, n, x & players)
    if literal:
        player_active = _spread(g.preds, g.thr, n, x)
    else:
        player_active = active
    ones = popc(player_active & players)
    for i in range(n):
        if (players >> i) & 1:
            continue
        p = popc(g.preds[i] & active)
        q = g.indeg[i] - p
        t = g.thr[i]
        if p >= t and q < t:
            ones += 1
        elif q >= t and p < t:
            pass
        elif (x >> i) & 1:
            ones += 1
    return 1 if ones >= quota else 0


def fill_model_table(preds, thr, int n, players, int64_t quota, int kind, int literal, unsigned char[::1] out, uint64_t start, uint64_t stop):
    cdef _Graph g = _Graph(preds, thr, n)
    cdef uint64_t pl = <uint64_t> players
    cdef uint64_t x
    with nogil:
        for x in range(start, stop):
            out[x] = _decide(g, pl, quota, kind, literal, x)


def agreement_counts(const unsigned char[::1] table, int nbits, uint64_t start, uint64_t stop):
    cdef int64_t* counts = <int64_t*> malloc(max(nbits, 1) * sizeof(int64_t))
    cdef uint64_t x
    cdef int i
    cdef unsigned char c
    if not counts:
        raise MemoryError()
    for i in range(nbits):
        counts[i] = 0
    with nogil:
        for x in range(start, stop):
            c = table[x]
            for i in range(nbits):
                if ((x >> i) & 1) == c:
                    counts[i] += 1
    out = [counts[i] for i in range(nbits)]
    free(counts)
    return out


def swing_counts(const unsigned char[::1] table, int nbits, uint64_t start, uint64_t stop):
    cdef int64_t* counts = <int64_t*> malloc(max(nbits, 1) * sizeof(int64_t))
    cdef uint64_t x
    cdef int i
    if not counts:
        raise MemoryError()
    for i in range(nbits):
        counts[i] = 0
    with nogil:
        for x in range(start, stop):
            if not table[x]:
                continue
            for i in range(nbits):
                if (x >> i) & 1 and not table[x ^ ((<uint64_t>1) << i)]:
                    counts[i] += 1
    out = [counts[i] for i in range(nbits)]
    free(counts)
    return out
