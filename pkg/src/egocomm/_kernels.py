"""Numba kernels for the two hot loops: triangle counting and PageRank push."""

import numba as nb
import numpy as np


@nb.njit(cache=True, nogil=True)
def oriented_triangle_counts(optr, oidx):
    """Per-vertex triangle counts over a rank-oriented CSR.

    Rows must be indexed by rank, with each row listing out-neighbors of
    strictly larger rank in ascending order.  Every triangle is discovered
    once, at its lowest-rank corner, and credited to all three corners.
    """
    n = optr.size - 1
    t = np.zeros(n, dtype=np.int64)
    for u in range(n):
        row_end = optr[u + 1]
        for ei in range(optr[u], row_end):
            v = oidx[ei]
            a = ei + 1  # common out-neighbors rank above v
            b = optr[v]
            b_end = optr[v + 1]
            while a < row_end and b < b_end:
                wa = oidx[a]
                wb = oidx[b]
                if wa == wb:
                    t[u] += 1
                    t[v] += 1
                    t[wa] += 1
                    a += 1
                    b += 1
                elif wa < wb:
                    a += 1
                else:
                    b += 1
    return t


@nb.njit(cache=True, nogil=True)
def closed_wedge_total(indptr, indices):
    """Sum over undirected edges of |N(u) ∩ N(v)|, i.e. the closed wedge count.

    Works on the plain sorted adjacency, independently of the oriented
    triangle routine, so the two can cross-check each other.
    """
    n = indptr.size - 1
    total = np.int64(0)
    for u in range(n):
        for ei in range(indptr[u], indptr[u + 1]):
            v = indices[ei]
            if v <= u:
                continue
            a = indptr[u]
            b = indptr[v]
            a_end = indptr[u + 1]
            b_end = indptr[v + 1]
            while a < a_end and b < b_end:
                wa = indices[a]
                wb = indices[b]
                if wa == wb:
                    total += 1
                    a += 1
                    b += 1
                elif wa < wb:
                    a += 1
                else:
                    b += 1
    return total


@nb.njit(cache=True, nogil=True)
def ppr_push(indptr, indices, degrees, seed_ids, seed_mass, alpha, tau,
             p, r, in_queue, queue, touched, max_pushes):
    """FIFO push until every residual satisfies r(u) < tau * d(u).

    Each push moves (1 - alpha) of the residual at u into the estimate and
    spreads alpha of it evenly over the neighbors.  ``p``, ``r``,
    ``in_queue`` must arrive zeroed; the modified entries are recorded in
    ``touched`` so the caller can reset them cheaply.  Returns
    (touched_count, pushes), or (-1, -1) if ``max_pushes`` was exceeded.
    """
    qcap = queue.size
    head = 0
    tail = 0
    n_touched = 0
    for i in range(seed_ids.size):
        s = seed_ids[i]
        if p[s] == 0.0 and r[s] == 0.0:
            touched[n_touched] = s
            n_touched += 1
        r[s] += seed_mass[i]
    for i in range(seed_ids.size):
        s = seed_ids[i]
        if not in_queue[s] and r[s] > 0.0 and r[s] >= tau * degrees[s]:
            queue[tail] = s
            tail = (tail + 1) % qcap
            in_queue[s] = True
    pushes = 0
    while head != tail:
        u = queue[head]
        head = (head + 1) % qcap
        in_queue[u] = False
        ru = r[u]
        du = degrees[u]
        if ru <= 0.0 or ru < tau * du:
            continue
        if pushes >= max_pushes:
            return -1, -1
        pushes += 1
        if du == 0:
            # stranded walker: absorb the whole residual
            p[u] += ru
            r[u] = 0.0
            continue
        p[u] += (1.0 - alpha) * ru
        r[u] = 0.0
        share = alpha * ru / du
        for ei in range(indptr[u], indptr[u + 1]):
            w = indices[ei]
            if p[w] == 0.0 and r[w] == 0.0:
                touched[n_touched] = w
                n_touched += 1
            r[w] += share
            if not in_queue[w] and r[w] >= tau * degrees[w]:
                queue[tail] = w
                tail = (tail + 1) % qcap
                in_queue[w] = True
    return n_touched, pushes
