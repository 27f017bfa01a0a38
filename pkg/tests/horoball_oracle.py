"""Plain-Python BFS in the untruncated combinatorial horoball over the integers.

Vertices are (x, n); neighbours are (x +- 1, 0) at level 0, (x +- j, n) for
1 <= j <= 2**n at level n >= 1, and (x, n +- 1). The search is cut at a
level and x-window large enough to contain every geodesic it is used for.
"""

from __future__ import annotations

from collections import deque


def z_horoball_distance(a, b, max_level: int = 14, window: int | None = None) -> int:
    (x0, n0), (x1, n1) = a, b
    lo, hi = min(x0, x1), max(x0, x1)
    if window is None:
        window = hi - lo + 2
    xmin, xmax = lo - window, hi + window
    seen = {a: 0}
    q = deque([a])
    while q:
        v = q.popleft()
        if v == b:
            return seen[v]
        x, n = v
        reach = 1 if n == 0 else 2 ** n
        nbrs = [(x + j, n) for j in range(1, reach + 1)] + [(x - j, n) for j in range(1, reach + 1)]
        if n < max_level:
            nbrs.append((x, n + 1))
        if n > 0:
            nbrs.append((x, n - 1))
        for w in nbrs:
            if xmin <= w[0] <= xmax and w not in seen:
                seen[w] = seen[v] + 1
                q.append(w)
    raise AssertionError("target not reached")
