"""Array kernels for the hot loops.

Each function here is written against plain numpy arrays so that it runs
unchanged either under ``numba.njit`` or in the interpreter (see ``_accel``).
Where a loop has a natural vectorised form, a separate ``*_numpy`` variant is
provided and picked when numba is off.
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_ENABLED, kernel

SAT = 0
UNSAT = 1
BUDGET = 2


# -- packing colouring search -------------------------------------------------

@kernel
def packing_search(dist, order, thr, block_start, budget):
    """Depth-first search for a packing colouring.

    ``dist`` is the all-pairs distance matrix, ``order`` the vertex order,
    ``thr[c]`` the threshold of class ``c`` (non-decreasing) and
    ``block_start[c]`` the first class with the same threshold as ``c``.
    A class may be opened only once its predecessor in the block is in use.

    Returns ``(status, colors, nodes)``.
    """
    n = dist.shape[0]
    k = thr.shape[0]
    colors = np.full(n, -1, dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    forb = np.zeros((n, k), dtype=np.int64)
    used = np.zeros(k, dtype=np.int64)
    nodes = 0
    pos = 0
    while True:
        if pos == n:
            return SAT, colors, nodes
        if pos < 0:
            return UNSAT, colors, nodes
        v = order[pos]
        c0 = choice[pos]
        if c0 >= 0:
            colors[v] = -1
            used[c0] -= 1
            t = thr[c0]
            for y in range(n):
                if y != v and dist[v, y] <= t:
                    forb[y, c0] -= 1
        found = -1
        c = c0 + 1
        while c < k:
            if forb[v, c] == 0:
                if c == block_start[c] or used[c] > 0 or used[c - 1] > 0:
                    found = c
                    break
            c += 1
        if found < 0:
            choice[pos] = -1
            pos -= 1
            continue
        choice[pos] = found
        colors[v] = found
        used[found] += 1
        nodes += 1
        t = thr[found]
        for y in range(n):
            if y != v and dist[v, y] <= t:
                forb[y, found] += 1
        if nodes > budget:
            return BUDGET, colors, nodes
        dead = False
        for y in range(n):
            if colors[y] < 0 and y != v and dist[v, y] <= t:
                free = 0
                for cc in range(k):
                    if forb[y, cc] == 0:
                        free += 1
                        break
                if free == 0:
                    dead = True
                    break
        if not dead:
            pos += 1


# -- brute-force densest induced subgraph ---------------------------------------

@kernel
def densest_by_size_loop(adjmask, n):
    """For every subset size ``s`` the largest induced edge count and a witness mask.

    Walks all ``2**n`` masks, deriving each edge count from the mask with its
    lowest bit cleared.
    """
    total = 1 << n
    edges = np.zeros(total, dtype=np.int32)
    best = np.full(n + 1, -1, dtype=np.int64)
    witness = np.zeros(n + 1, dtype=np.int64)
    best[0] = 0
    for mask in range(1, total):
        low = 0
        while not (mask >> low) & 1:
            low += 1
        rest = mask & (mask - 1)
        inter = adjmask[low] & rest
        cnt = 0
        while inter:
            inter &= inter - 1
            cnt += 1
        e = edges[rest] + cnt
        edges[mask] = e
        size = 0
        mm = mask
        while mm:
            mm &= mm - 1
            size += 1
        if e > best[size]:
            best[size] = e
            witness[size] = mask
    return best, witness


def densest_by_size_numpy(edge_u, edge_v, n):
    """Vectorised twin of :func:`densest_by_size_loop`."""
    masks = np.arange(1 << n, dtype=np.int64)
    edges = np.zeros(masks.shape[0], dtype=np.int32)
    for u, v in zip(edge_u.tolist(), edge_v.tolist()):
        edges += ((masks >> u) & (masks >> v) & 1).astype(np.int32)
    sizes = np.zeros(masks.shape[0], dtype=np.int64)
    for b in range(n):
        sizes += (masks >> b) & 1
    best = np.full(n + 1, -1, dtype=np.int64)
    witness = np.zeros(n + 1, dtype=np.int64)
    for s in range(n + 1):
        sel = np.nonzero(sizes == s)[0]
        if sel.size:
            i = sel[np.argmax(edges[sel])]
            best[s] = edges[i]
            witness[s] = masks[i]
    return best, witness


def densest_by_size(adjmask, edge_u, edge_v, n):
    if NUMBA_ENABLED:
        return densest_by_size_loop(adjmask, n)
    return densest_by_size_numpy(edge_u, edge_v, n)


# -- reducibility: scenario enumeration and repair search ------------------------
#
# Colours are 0=1a, 1=1b, 2=2a, 3=2b with thresholds (1, 1, 2, 2). ``dl`` holds
# distances in the whole configuration, ``dlp`` in the configuration minus its
# deleted vertices (both capped at 3). ``-1`` in ``colors`` is "not yet known".

@kernel
def repair_csp(colors, rvars, n_r, fixed, n_f, dl, dlp, thr, safe, is_del, maxk, newcol):
    """Find new colours for ``rvars`` recolouring at most ``maxk`` interior ones.

    Deleted variables must take a safe colour; an interior variable keeps its
    colour or takes a safe different one. ``fixed`` vertices never change; a
    fixed vertex with colour -1 may hold any colour. Returns success.
    """
    if n_r == 0:
        return True
    vidx = np.full(n_r, -1, dtype=np.int64)
    counted = np.zeros(n_r, dtype=np.bool_)
    changes = 0
    pos = 0
    while True:
        if pos == n_r:
            return True
        if pos < 0:
            return False
        x = rvars[pos]
        j = vidx[pos]
        if counted[pos]:
            changes -= 1
            counted[pos] = False
        j += 1
        found = False
        a = -1
        ch = False
        while j <= 4:
            if j == 0:
                if is_del[x]:
                    j += 1
                    continue
                a = colors[x]
                ch = False
            else:
                a = j - 1
                if not is_del[x]:
                    if a == colors[x] or changes + 1 > maxk:
                        j += 1
                        continue
                if not safe[x, a]:
                    j += 1
                    continue
                ch = True
            t = thr[a]
            ok = True
            for q in range(pos):
                y = rvars[q]
                if newcol[y] == a and dl[x, y] <= t:
                    ok = False
                    break
            if ok:
                for q in range(n_f):
                    y = fixed[q]
                    b = colors[y]
                    if b < 0:
                        if dl[x, y] <= t and (ch or dlp[x, y] > t):
                            ok = False
                            break
                    elif b == a and dl[x, y] <= t:
                        ok = False
                        break
            if ok:
                found = True
                break
            j += 1
        if not found:
            vidx[pos] = -1
            pos -= 1
            continue
        vidx[pos] = j
        newcol[x] = a
        if ch and not is_del[x]:
            changes += 1
            counted[pos] = True
        pos += 1


@kernel
def min_repair(colors, role, dl, dlp, thr, safe, maxk, shrink, newcol):
    """Smallest recolouring budget admitting a repair of ``colors``, or -1.

    ``role`` is 0 deleted / 1 interior / 2 boundary. Interior vertices with
    unknown colour are treated as fixed wildcards.
    """
    nv = colors.shape[0]
    # Pairs whose distance shrinks through a deleted vertex, both fixed:
    # an unavoidable clash unless both colours are known and differ.
    for i in range(shrink.shape[0]):
        a = shrink[i, 0]
        b = shrink[i, 1]
        fa = role[a] == 2 or colors[a] < 0
        fb = role[b] == 2 or colors[b] < 0
        if fa and fb:
            ca = colors[a]
            cb = colors[b]
            if ca < 0 or cb < 0:
                if (ca < 0 or thr[ca] >= dl[a, b]) and (cb < 0 or thr[cb] >= dl[a, b]):
                    return -1
            elif ca == cb and thr[ca] >= dl[a, b]:
                return -1
    rvars = np.empty(nv, dtype=np.int64)
    fixed = np.empty(nv, dtype=np.int64)
    is_del = np.zeros(nv, dtype=np.bool_)
    n_r = 0
    n_f = 0
    for v in range(nv):
        if role[v] == 0:
            is_del[v] = True
            rvars[n_r] = v
            n_r += 1
    for v in range(nv):
        if role[v] == 1 and colors[v] >= 0:
            rvars[n_r] = v
            n_r += 1
        elif role[v] != 0:
            fixed[n_f] = v
            n_f += 1
    for k in range(maxk + 1):
        if repair_csp(colors, rvars, n_r, fixed, n_f, dl, dlp, thr, safe, is_del, k, newcol):
            return k
        if k >= n_r:
            break
    return -1


@kernel
def _admissible(v, c, colors, order, upto, dlp, thr):
    t = thr[c]
    for q in range(upto):
        y = order[q]
        if colors[y] == c and dlp[v, y] <= t:
            return False
    return True


@kernel
def count_completions(colors, used, order, start, dlp, thr):
    """Number of admissible canonical completions of positions ``start..``."""
    n = order.shape[0]
    if start == n:
        return 1
    cols = colors.copy()
    us = used.copy()
    choice = np.full(n, -1, dtype=np.int64)
    pos = start
    total = 0
    while pos >= start:
        v = order[pos]
        c0 = choice[pos]
        if c0 >= 0:
            cols[v] = -1
            us[c0] -= 1
        found = -1
        c = c0 + 1
        while c < 4:
            if (c == 0 or c == 2 or us[c - 1] > 0) and _admissible(v, c, cols, order, pos, dlp, thr):
                found = c
                break
            c += 1
        if found < 0:
            choice[pos] = -1
            pos -= 1
            continue
        choice[pos] = found
        cols[v] = found
        us[found] += 1
        if pos + 1 == n:
            total += 1
        else:
            pos += 1
    return total


@kernel
def reduce_search(order, role, dl, dlp, thr, safe, maxk, shrink, prune, count_all, fail_cap):
    """Exhaustive scenario walk with repair checks.

    Scenarios are admissible colourings of ``order`` (all visible vertices)
    in canonical form: 1b only after 1a has appeared, 2b only after 2a.
    When ``prune`` is set, a prefix that already admits a repair valid for
    every completion closes its subtree (counted only if ``count_all``).

    Returns ``(scenarios, failures, fail_rows, max_k, pruned, repairs_tried)``;
    ``failures > fail_cap`` signals overflow.
    """
    nv = role.shape[0]
    n = order.shape[0]
    colors = np.full(nv, -1, dtype=np.int64)
    newcol = np.full(nv, -1, dtype=np.int64)
    used = np.zeros(4, dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    fails = np.full((fail_cap, nv), -1, dtype=np.int64)
    nfail = 0
    total = 0
    maxk_used = 0
    pruned = 0
    tried = 0
    if n == 0:
        tried += 1
        k = min_repair(colors, role, dl, dlp, thr, safe, maxk, shrink, newcol)
        if k < 0:
            return 1, 1, fails, 0, 0, tried
        return 1, 0, fails, k, 0, tried
    pos = 0
    while pos >= 0:
        v = order[pos]
        c0 = choice[pos]
        if c0 >= 0:
            colors[v] = -1
            used[c0] -= 1
        found = -1
        c = c0 + 1
        while c < 4:
            if (c == 0 or c == 2 or used[c - 1] > 0) and _admissible(v, c, colors, order, pos, dlp, thr):
                found = c
                break
            c += 1
        if found < 0:
            choice[pos] = -1
            pos -= 1
            continue
        choice[pos] = found
        colors[v] = found
        used[found] += 1
        if pos + 1 == n:
            total += 1
            tried += 1
            k = min_repair(colors, role, dl, dlp, thr, safe, maxk, shrink, newcol)
            if k < 0:
                if nfail < fail_cap:
                    for y in range(nv):
                        fails[nfail, y] = colors[y]
                nfail += 1
                if nfail > fail_cap:
                    return total, nfail, fails, maxk_used, pruned, tried
            elif k > maxk_used:
                maxk_used = k
            continue
        if prune:
            tried += 1
            k = min_repair(colors, role, dl, dlp, thr, safe, maxk, shrink, newcol)
            if k >= 0:
                if k > maxk_used:
                    maxk_used = k
                pruned += 1
                if count_all:
                    total += count_completions(colors, used, order, pos + 1, dlp, thr)
                continue
        pos += 1
    return total, nfail, fails, maxk_used, pruned, tried
