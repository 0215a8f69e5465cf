"""Pure-Python enumeration kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is unavailable, when ``INFLUSAT_PURE=1``, or for graphs wider
than 64 vertices.  Vertex sets are Python ints.

Model kinds for :func:`fill_model_table`: 0 oblivious, 1 non-oblivious,
2 gOLF (``thr`` then holds the per-follower ceil(r * indegree)).
"""

from __future__ import annotations

OBLIVIOUS = 0
NONOBLIVIOUS = 1
GOLF = 2


def spread(preds, thr, n, mask):
    current = mask
    while True:
        new = current
        for i in range(n):
            if not (current >> i) & 1 and (preds[i] & current).bit_count() >= thr[i]:
                new |= 1 << i
        if new == current:
            return current
        current = new


def _expand(t, player_bits):
    mask = 0
    k = 0
    while t:
        if t & 1:
            mask |= 1 << player_bits[k]
        t >>= 1
        k += 1
    return mask


def expansion_histogram(preds, thr, n, player_bits, start, stop):
    """hist[a] = #{t in [start, stop) : |F(Y_t)| = a}, Y_t the t-th subset of the players."""
    hist = [0] * (n + 1)
    for t in range(start, stop):
        hist[spread(preds, thr, n, _expand(t, player_bits)).bit_count()] += 1
    return hist


def fill_game_table(preds, thr, n, player_bits, quota, out, start, stop):
    """out[t] = 1 iff the t-th coalition of players wins (|F(Y_t)| >= quota)."""
    for t in range(start, stop):
        out[t] = 1 if spread(preds, thr, n, _expand(t, player_bits)).bit_count() >= quota else 0


def _decide(preds, thr, indeg, n, players, quota, kind, literal, x):
    if kind == OBLIVIOUS:
        return 1 if spread(preds, thr, n, x & players).bit_count() >= quota else 0
    if kind == GOLF:
        ones = 0
        for i in range(n):
            yes = (preds[i] & x).bit_count()
            no = indeg[i] - yes
            t = thr[i]
            if yes >= t and no < t:
                ones += 1
            elif no >= t and yes < t:
                pass
            elif (x >> i) & 1:
                ones += 1
        return 1 if ones >= quota else 0
    active = spread(preds, thr, n, x & players)
    player_active = spread(preds, thr, n, x) if literal else active
    ones = (player_active & players).bit_count()
    for i in range(n):
        if (players >> i) & 1:
            continue
        p = (preds[i] & active).bit_count()
        q = indeg[i] - p
        t = thr[i]
        if p >= t and q < t:
            ones += 1
        elif q >= t and p < t:
            pass
        elif (x >> i) & 1:
            ones += 1
    return 1 if ones >= quota else 0


def fill_model_table(preds, thr, n, players, quota, kind, literal, out, start, stop):
    """out[x] = collective decision of the model for the initial vector with bit mask x."""
    indeg = [p.bit_count() for p in preds]
    for x in range(start, stop):
        out[x] = _decide(preds, thr, indeg, n, players, quota, kind, literal, x)


def agreement_counts(table, nbits, start, stop):
    """counts[i] = #{x in [start, stop) : table[x] == bit i of x}."""
    counts = [0] * nbits
    for x in range(start, stop):
        c = table[x]
        for i in range(nbits):
            if ((x >> i) & 1) == c:
                counts[i] += 1
    return counts


def swing_counts(table, nbits, start, stop):
    """counts[i] = #{x in [start, stop) : bit i set, table[x] = 1, table[x without i] = 0}."""
    counts = [0] * nbits
    for x in range(start, stop):
        if not table[x]:
            continue
        for i in range(nbits):
            if (x >> i) & 1 and not table[x ^ (1 << i)]:
                counts[i] += 1
    return counts
