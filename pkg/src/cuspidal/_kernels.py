"""Compiled inner loops (numba). All arrays are CSR adjacency plus dense int32 buffers.

Nothing here validates input; the public wrappers in the other modules do.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def bfs(indptr, indices, sources, maxdist):
    """Multi-source BFS. Unreached vertices get -1. ``maxdist < 0`` means unbounded."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int64)
    head = 0
    tail = 0
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if maxdist >= 0 and du >= maxdist:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = du + 1
                queue[tail] = w
                tail += 1
    return dist


@njit(cache=True)
def bfs_pair(indptr, indices, source, target):
    """Distance from source to target with early exit; -1 if disconnected."""
    n = indptr.shape[0] - 1
    if source == target:
        return 0
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int64)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                if w == target:
                    return dist[w]
                queue[tail] = w
                tail += 1
    return -1


@njit(cache=True)
def distance_rows(indptr, indices, sources, cols):
    """Matrix of distances ``out[i, j] = d(sources[i], cols[j])``."""
    n = indptr.shape[0] - 1
    out = np.empty((sources.shape[0], cols.shape[0]), np.int32)
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int64)
    for i in range(sources.shape[0]):
        s = sources[i]
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        for j in range(cols.shape[0]):
            out[i, j] = dist[cols[j]]
        for t in range(tail):
            dist[queue[t]] = -1
    return out


@njit(cache=True)
def count_geodesics(indptr, indices, du, dv, target):
    """Number of shortest paths (as float, may be huge) from the du-source to ``target``."""
    n = indptr.shape[0] - 1
    d = du[target]
    order = np.argsort(du)
    count = np.zeros(n, np.float64)
    for idx in range(n):
        u = order[idx]
        if du[u] < 0:
            continue
        if du[u] + dv[u] != d:
            continue
        if du[u] == 0:
            count[u] = 1.0
            continue
        c = 0.0
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if du[w] == du[u] - 1 and du[w] + dv[w] == d:
                c += count[w]
        count[u] = c
    return count[target]


@njit(cache=True)
def four_point_exhaustive(D):
    """Max over i<j<k<l of (largest - second largest pair sum). Returns (2*delta, i, j, k, l)."""
    n = D.shape[0]
    best = 0
    bi = 0
    bj = 0
    bk = 0
    bl = 0
    for i in range(n):
        for j in range(i + 1, n):
            dij = D[i, j]
            for k in range(j + 1, n):
                dik = D[i, k]
                djk = D[j, k]
                for l in range(k + 1, n):
                    s1 = dij + D[k, l]
                    s2 = dik + D[j, l]
                    s3 = D[i, l] + djk
                    if s1 >= s2:
                        a = s1
                        b = s2
                    else:
                        a = s2
                        b = s1
                    if s3 >= a:
                        diff = s3 - a
                    elif s3 >= b:
                        diff = a - s3
                    else:
                        diff = a - b
                    if diff > best:
                        best = diff
                        bi = i
                        bj = j
                        bk = k
                        bl = l
    return best, bi, bj, bk, bl


@njit(cache=True)
def four_point_quads(D, quads):
    """Defects (2*delta) for each row (i, j, k, l) of ``quads`` indexing into ``D``."""
    m = quads.shape[0]
    out = np.empty(m, np.int32)
    for q in range(m):
        i = quads[q, 0]
        j = quads[q, 1]
        k = quads[q, 2]
        l = quads[q, 3]
        s1 = D[i, j] + D[k, l]
        s2 = D[i, k] + D[j, l]
        s3 = D[i, l] + D[j, k]
        if s1 >= s2:
            a = s1
            b = s2
        else:
            a = s2
            b = s1
        if s3 >= a:
            out[q] = s3 - a
        elif s3 >= b:
            out[q] = a - s3
        else:
            out[q] = a - b
    return out


@njit(cache=True)
def _pair_index(i, j, n):
    return i * n - (i * (i + 1)) // 2 + (j - i - 1)


@njit(cache=True)
def canonical_paths(D, indptr, indices):
    """Canonical geodesic for every pair i<j: greedy least-id step toward j.

    Returns (flat vertex buffer, offsets) indexed by the triangular pair index.
    """
    n = D.shape[0]
    npairs = n * (n - 1) // 2
    offsets = np.empty(npairs + 1, np.int64)
    total = 0
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            offsets[p] = total
            total += D[i, j] + 1
            p += 1
    offsets[npairs] = total
    flat = np.empty(total, np.int32)
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            pos = offsets[p]
            cur = i
            flat[pos] = cur
            pos += 1
            while cur != j:
                dc = D[cur, j]
                for k in range(indptr[cur], indptr[cur + 1]):
                    w = indices[k]
                    if D[w, j] == dc - 1:
                        cur = w
                        break
                flat[pos] = cur
                pos += 1
            p += 1
    return flat, offsets


@njit(cache=True)
def path_distance_table(D, flat, offsets):
    """table[p, v] = distance from v to the canonical path with pair index p."""
    n = D.shape[0]
    npairs = offsets.shape[0] - 1
    table = np.empty((npairs, n), np.int16)
    for p in range(npairs):
        a = offsets[p]
        b = offsets[p + 1]
        for v in range(n):
            m = 1 << 14
            for t in range(a, b):
                dv = D[v, flat[t]]
                if dv < m:
                    m = dv
            table[p, v] = m
    return table


@njit(cache=True)
def _side_excess(flat, offsets, table, side, o1, o2):
    best = 0
    arg = -1
    for t in range(offsets[side], offsets[side + 1]):
        v = flat[t]
        a = table[o1, v]
        b = table[o2, v]
        m = a if a < b else b
        if m > best:
            best = m
            arg = v
    return best, arg


@njit(cache=True)
def slim_exhaustive(D, flat, offsets, table):
    """Max over triples i<j<k of the slimness of the canonical triangle."""
    n = D.shape[0]
    best = 0
    wi = 0
    wj = 0
    wk = 0
    wv = -1
    for i in range(n):
        for j in range(i + 1, n):
            pij = _pair_index(i, j, n)
            for k in range(j + 1, n):
                pik = _pair_index(i, k, n)
                pjk = _pair_index(j, k, n)
                s, v = _side_excess(flat, offsets, table, pij, pik, pjk)
                if s > best:
                    best = s
                    wi = i
                    wj = j
                    wk = k
                    wv = v
                s, v = _side_excess(flat, offsets, table, pik, pij, pjk)
                if s > best:
                    best = s
                    wi = i
                    wj = j
                    wk = k
                    wv = v
                s, v = _side_excess(flat, offsets, table, pjk, pij, pik)
                if s > best:
                    best = s
                    wi = i
                    wj = j
                    wk = k
                    wv = v
    return best, wi, wj, wk, wv


@njit(cache=True)
def contraction_scan(indptr, indices, region, in_region, dgam, lo, hi):
    """Per (region vertex x, geodesic g): worst projection diameter over qualifying y.

    A pair qualifies when d(x, y) <= d(x, gamma_g). Projection diameters are
    index spans on the geodesic, ``max(hi) - min(lo)``.
    """
    n = indptr.shape[0] - 1
    G = dgam.shape[0]
    R = region.shape[0]
    best = np.zeros((R, G), np.int32)
    wit = np.empty((R, G), np.int64)
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int64)
    for ri in range(R):
        x = region[ri]
        reach = 0
        for g in range(G):
            wit[ri, g] = x
            best[ri, g] = hi[g, x] - lo[g, x]
            if dgam[g, x] > reach:
                reach = dgam[g, x]
        dist[x] = 0
        queue[0] = x
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du > 0 and in_region[u]:
                for g in range(G):
                    if du <= dgam[g, x]:
                        a = hi[g, x] if hi[g, x] > hi[g, u] else hi[g, u]
                        b = lo[g, x] if lo[g, x] < lo[g, u] else lo[g, u]
                        if a - b > best[ri, g]:
                            best[ri, g] = a - b
                            wit[ri, g] = u
            if du >= reach:
                continue
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        for t in range(tail):
            dist[queue[t]] = -1
    return best, wit


@njit(cache=True)
def geodesic_flag_audit(indptr, indices, sources, target_mask, bad_mask, maxdist):
    """Check that no geodesic from a source to a target passes through a bad vertex.

    Returns (ok, source, target) with the first offending pair when not ok.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int32)
    flag = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    for s in sources:
        dist[s] = 0
        flag[s] = bad_mask[s]
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= maxdist:
                continue
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    flag[w] = bad_mask[w] or flag[u]
                    queue[tail] = w
                    tail += 1
                elif dist[w] == du + 1 and flag[u]:
                    flag[w] = True
        failed = -1
        for t in range(tail):
            v = queue[t]
            if failed < 0 and target_mask[v] and flag[v]:
                failed = v
            dist[v] = -1
            flag[v] = False
        if failed >= 0:
            return False, s, failed
    return True, -1, -1


@njit(cache=True)
def contraction_filters(indptr, indices, in_region, dgam, lo, hi, rmax):
    """Exact per-vertex contraction values by iterated ball filters.

    For x with r = dgam[x] <= rmax, returns the largest projection span
    ``max(hi[x], hi[y]) - min(lo[x], lo[y])`` over region vertices y with
    d(x, y) <= r, and a y attaining it. Uses that the max over y splits into
    ball-maxima of hi, ball-minima of lo and ball-maxima of hi - lo.
    """
    n = indptr.shape[0] - 1
    big = 1 << 30
    hmax = np.empty(n, np.int64)
    hwit = np.empty(n, np.int64)
    lmin = np.empty(n, np.int64)
    lwit = np.empty(n, np.int64)
    smax = np.empty(n, np.int64)
    swit = np.empty(n, np.int64)
    for v in range(n):
        if in_region[v] and dgam[v] >= 0:
            hmax[v] = hi[v]
            lmin[v] = lo[v]
            smax[v] = hi[v] - lo[v]
        else:
            hmax[v] = -big
            lmin[v] = big
            smax[v] = -big
        hwit[v] = v
        lwit[v] = v
        swit[v] = v
    best = np.full(n, -1, np.int64)
    wit = np.full(n, -1, np.int64)
    nh = np.empty(n, np.int64)
    nhw = np.empty(n, np.int64)
    nl = np.empty(n, np.int64)
    nlw = np.empty(n, np.int64)
    ns = np.empty(n, np.int64)
    nsw = np.empty(n, np.int64)
    for k in range(rmax + 1):
        for x in range(n):
            if in_region[x] and dgam[x] == k:
                b = hi[x] - lo[x]
                w = x
                c = hmax[x] - lo[x]
                if c > b:
                    b = c
                    w = hwit[x]
                c = hi[x] - lmin[x]
                if c > b:
                    b = c
                    w = lwit[x]
                if smax[x] > b:
                    b = smax[x]
                    w = swit[x]
                best[x] = b
                wit[x] = w
        if k == rmax:
            break
        for x in range(n):
            h = hmax[x]
            hw = hwit[x]
            lm = lmin[x]
            lw = lwit[x]
            s = smax[x]
            sw = swit[x]
            for t in range(indptr[x], indptr[x + 1]):
                w = indices[t]
                if hmax[w] > h:
                    h = hmax[w]
                    hw = hwit[w]
                if lmin[w] < lm:
                    lm = lmin[w]
                    lw = lwit[w]
                if smax[w] > s:
                    s = smax[w]
                    sw = swit[w]
            nh[x] = h
            nhw[x] = hw
            nl[x] = lm
            nlw[x] = lw
            ns[x] = s
            nsw[x] = sw
        hmax, nh = nh, hmax
        hwit, nhw = nhw, hwit
        lmin, nl = nl, lmin
        lwit, nlw = nlw, lwit
        smax, ns = ns, smax
        swit, nsw = nsw, swit
    return best, wit


@njit(cache=True)
def projection_spans(indptr, indices, path):
    """Distance to a geodesic path and the index span of the nearest-point set.

    Returns (dgam, lo, hi) with lo/hi the least and greatest index of a
    nearest point on ``path``. One BFS per path vertex.
    """
    n = indptr.shape[0] - 1
    dgam = np.full(n, -1, np.int32)
    lo = np.zeros(n, np.int32)
    hi = np.zeros(n, np.int32)
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int64)
    for i in range(path.shape[0]):
        s = path[i]
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        for t in range(tail):
            v = queue[t]
            d = dist[v]
            if dgam[v] < 0 or d < dgam[v]:
                dgam[v] = d
                lo[v] = i
                hi[v] = i
            elif d == dgam[v]:
                hi[v] = i
            dist[v] = -1
    return dgam, lo, hi
