"""Tight inner loops for exhaustive tree statistics and Monte Carlo batches.

The kernels are written in a numpy/array style that runs unchanged as plain
Python; when numba is importable they are jitted (nogil, cached) and the
exhaustive pass over all n^(n-2) Prüfer sequences takes seconds.  Results
are integer count tensors, so chunked parallel runs sum to byte-identical
totals at any worker count.

The inline Prüfer decode is the linear-time pointer variant; tests check it
exhaustively against the simple smallest-leaf decode for n <= 7.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit as _njit

    HAVE_NUMBA = True

    def _jit(func):
        return _njit(cache=True, nogil=True)(func)

except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def _jit(func):
        return func


@_jit
def _stats_range(n, start, stop, counts):
    """Accumulate (deg1, deg2, deg2_prime, |L1|) counts over a Prüfer range.

    Sequence number ``idx`` encodes the Prüfer entries as base-n digits,
    most significant first, matching lexicographic enumeration order.
    counts has shape (n, n, n, n) indexed by (d1-1, d2-1, d2p-1, l1-1).
    """
    m = n - 2
    seq = np.empty(m, np.int64)
    deg = np.empty(n + 1, np.int64)
    eu = np.empty(n - 1, np.int64)
    ev = np.empty(n - 1, np.int64)
    for idx in range(start, stop):
        r = idx
        for p in range(m - 1, -1, -1):
            seq[p] = r % n + 1
            r //= n
        # inline linear-time Prüfer decode into the edge list (eu, ev)
        for v in range(1, n + 1):
            deg[v] = 1
        for p in range(m):
            deg[seq[p]] += 1
        ptr = 1
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
        for p in range(m):
            s = seq[p]
            eu[p] = leaf
            ev[p] = s
            deg[s] -= 1
            if deg[s] == 1 and s < ptr:
                leaf = s
            else:
                ptr += 1
                while deg[ptr] != 1:
                    ptr += 1
                leaf = ptr
        eu[m] = leaf
        ev[m] = n

        d1 = 1
        d2 = 1
        for p in range(m):
            if seq[p] == 1:
                d1 += 1
            elif seq[p] == 2:
                d2 += 1
        # greedy increasing-label walk from vertex 1
        cur = 1
        l1 = 0
        while True:
            nxt = 0
            for e in range(n - 1):
                o = -1
                if eu[e] == cur:
                    o = ev[e]
                elif ev[e] == cur:
                    o = eu[e]
                if o > cur and (nxt == 0 or o < nxt):
                    nxt = o
            if nxt == 0:
                break
            cur = nxt
            l1 += 1
        d2p = 0
        for e in range(n - 1):
            if eu[e] == cur or ev[e] == cur:
                d2p += 1
        counts[d1 - 1, d2 - 1, d2p - 1, l1 - 1] += 1


@_jit
def _mc_stats_batch(seqs, out_d1, out_d2p):
    """Per-row (deg1, deg2_prime) for a batch of Prüfer sequences."""
    batch, m = seqs.shape
    n = m + 2
    deg = np.empty(n + 1, np.int64)
    eu = np.empty(n - 1, np.int64)
    ev = np.empty(n - 1, np.int64)
    for row in range(batch):
        for v in range(1, n + 1):
            deg[v] = 1
        for p in range(m):
            deg[seqs[row, p]] += 1
        ptr = 1
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
        for p in range(m):
            s = seqs[row, p]
            eu[p] = leaf
            ev[p] = s
            deg[s] -= 1
            if deg[s] == 1 and s < ptr:
                leaf = s
            else:
                ptr += 1
                while deg[ptr] != 1:
                    ptr += 1
                leaf = ptr
        eu[m] = leaf
        ev[m] = n

        d1 = 1
        for p in range(m):
            if seqs[row, p] == 1:
                d1 += 1
        cur = 1
        while True:
            nxt = 0
            for e in range(n - 1):
                o = -1
                if eu[e] == cur:
                    o = ev[e]
                elif ev[e] == cur:
                    o = eu[e]
                if o > cur and (nxt == 0 or o < nxt):
                    nxt = o
            if nxt == 0:
                break
            cur = nxt
        d2p = 0
        for e in range(n - 1):
            if eu[e] == cur or ev[e] == cur:
                d2p += 1
        out_d1[row] = d1
        out_d2p[row] = d2p
