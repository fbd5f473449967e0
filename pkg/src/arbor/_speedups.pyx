# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel.

Enumerates every ordered tuple of t-ary trees with prescribed node counts by
backtracking over preorder words: one rise symbol per node, one fall symbol
per empty child slot.  A stack of per-node "children placed" counters tracks
which slot the next symbol occupies, so the edge-type profile updates in O(1)
per step; each completed word bumps a dense table cell indexed by the
lexicographic rank of the profile.  This is plain brute force: one table
increment per tree tuple, no closed forms anywhere.
"""
from libc.stdlib cimport calloc, free
from libc.string cimport memset

ctypedef unsigned long long u64


cdef struct Walk:
    int t                  # arity of regular nodes
    int k                  # number of segments (frame 0 arity)
    long* sizes            # per-segment node budgets
    long* edge_slot        # per-segment root-edge slot, 0 = uncounted
    long* consumed         # per-frame count of children already placed
    int top                # index of the deepest open frame
    long* profile          # current edge-type counts
    long seg_used          # nodes placed in the currently open segment
    long S                 # profile total at completion
    long* numcomp          # (S+1) x (t+1) table of weak-composition counts
    u64* counts            # dense result table


cdef inline long _rank(Walk* w) noexcept nogil:
    # lexicographic rank of w.profile among weak compositions of S
    cdef long r = 0
    cdef long s = w.S
    cdef int i
    cdef int stride = w.t + 1
    for i in range(w.t - 1):
        r += w.numcomp[s * stride + (w.t - i)]
        s -= w.profile[i]
        r -= w.numcomp[s * stride + (w.t - i)]
    return r


cdef void _walk(Walk* w) noexcept nogil:
    cdef int top = w.top
    cdef long parent_consumed = w.consumed[top]
    cdef long seg, slot, saved_used
    cdef int cur

    # choice 1: a node symbol
    if top == 0:
        # root of the next segment
        seg = parent_consumed
        slot = w.edge_slot[seg]
        w.consumed[0] = parent_consumed + 1
        if slot > 0:
            w.profile[slot - 1] += 1
        w.top = 1
        w.consumed[1] = 0
        saved_used = w.seg_used
        w.seg_used = 1
        _walk(w)
        w.seg_used = saved_used
        w.top = 0
        w.consumed[0] = parent_consumed
        if slot > 0:
            w.profile[slot - 1] -= 1
    else:
        seg = w.consumed[0] - 1
        if w.seg_used < w.sizes[seg]:
            slot = parent_consumed + 1
            w.consumed[top] = slot
            w.profile[slot - 1] += 1
            w.top = top + 1
            w.consumed[top + 1] = 0
            w.seg_used += 1
            _walk(w)
            w.seg_used -= 1
            w.top = top
            w.consumed[top] = parent_consumed
            w.profile[slot - 1] -= 1

    # choice 2: an empty-slot symbol (never at the virtual root)
    cdef int f
    if top >= 1:
        w.consumed[top] = parent_consumed + 1
        cur = top
        while cur >= 0 and w.consumed[cur] == (w.k if cur == 0 else w.t):
            cur -= 1
        if cur <= 0:
            # a segment just closed; its node budget must be spent exactly
            seg = w.consumed[0] - 1
            if w.seg_used == w.sizes[seg]:
                saved_used = w.seg_used
                w.seg_used = 0
                if cur < 0:
                    w.counts[_rank(w)] += 1
                else:
                    w.top = 0
                    _walk(w)
                    w.top = top
                    # frames the cascade closed all popped with a full
                    # counter; deeper walks clobbered those cells
                    for f in range(1, top):
                        w.consumed[f] = w.t
                w.seg_used = saved_used
        else:
            w.top = cur
            _walk(w)
            w.top = top
            for f in range(cur + 1, top):
                w.consumed[f] = w.t
        w.consumed[top] = parent_consumed


def segment_census(int t, sizes, slots):
    """Profile every ordered tuple of trees with the given segment sizes.

    Segment j is a tree with exactly sizes[j] nodes; slots[j] > 0 adds one
    edge of that slot type for the segment's root attachment, slots[j] = 0
    marks a free-standing tree whose root has no incoming edge.  Returns a
    dict mapping realized edge-type compositions to multiplicities.
    """
    if t < 1:
        raise ValueError("arity must be >= 1")
    sizes = tuple(sizes)
    slots = tuple(slots)
    if len(sizes) != len(slots):
        raise ValueError("sizes and slots must have equal length")
    cdef int k = len(sizes)
    if k == 0:
        return {(0,) * t: 1}
    cdef long S = 0
    cdef int j
    for j in range(k):
        if sizes[j] < 1:
            raise ValueError("segment sizes must be >= 1")
        if not 0 <= slots[j] <= t:
            raise ValueError("segment slots must lie in 0..t")
        S += sizes[j] - 1
        if slots[j] > 0:
            S += 1

    # weak-composition counts: numcomp[s][j] = C(s+j-1, j-1)
    ncols = t + 1
    table = [[0] * ncols for _ in range(S + 1)]
    table[0][0] = 1
    for s in range(S + 1):
        for c in range(1, ncols):
            table[s][c] = table[s][c - 1] + (table[s - 1][c] if s else 0)
    cdef long ncomps = table[S][t]
    if ncomps > (1 << 24):
        raise ValueError(
            "composition space too large for the compiled kernel "
            f"({ncomps} cells)"
        )

    cdef long total_nodes = sum(sizes)
    cdef Walk w
    w.t = t
    w.k = k
    w.S = S
    w.seg_used = 0
    w.top = 0
    w.sizes = <long*> calloc(k, sizeof(long))
    w.edge_slot = <long*> calloc(k, sizeof(long))
    w.consumed = <long*> calloc(total_nodes + 2, sizeof(long))
    w.profile = <long*> calloc(t, sizeof(long))
    w.numcomp = <long*> calloc((S + 1) * ncols, sizeof(long))
    w.counts = <u64*> calloc(ncomps, sizeof(u64))
    if (w.sizes == NULL or w.edge_slot == NULL or w.consumed == NULL
            or w.profile == NULL or w.numcomp == NULL or w.counts == NULL):
        _free_walk(&w)
        raise MemoryError()
    try:
        for j in range(k):
            w.sizes[j] = sizes[j]
            w.edge_slot[j] = slots[j]
        for s in range(S + 1):
            for c in range(ncols):
                w.numcomp[s * ncols + c] = table[s][c]
        with nogil:
            _walk(&w)
        result = {}
        idx = 0
        for comp in _lex_compositions(int(S), t):
            if w.counts[idx]:
                result[comp] = w.counts[idx]
            idx += 1
        return result
    finally:
        _free_walk(&w)


cdef void _free_walk(Walk* w):
    free(w.sizes)
    free(w.edge_slot)
    free(w.consumed)
    free(w.profile)
    free(w.numcomp)
    free(w.counts)


def _lex_compositions(total, parts):
    """Weak compositions of `total` into `parts` parts, lexicographic."""
    work = [0] * parts
    work[parts - 1] = total
    while True:
        yield tuple(work)
        sa = work[parts - 1]
        j = parts - 2
        while j >= 0 and sa == 0:
            sa += work[j]
            j -= 1
        if j < 0:
            return
        work[j] += 1
        for i in range(j + 1, parts - 1):
            work[i] = 0
        work[parts - 1] = sa - 1
