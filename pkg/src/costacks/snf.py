"""Smith normal form diagonal of an integer matrix (pure Python ints)."""


def smith_diagonal(rows, ncols=None):
    """Return the nonzero invariant factors of an integer matrix.

    ``rows`` is a list of equal-length integer lists.  The result is the
    list of positive diagonal entries ``d1 | d2 | ... | dr`` of the Smith
    normal form, so ``r`` is the rank.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    diag = []
    t = 0
    while t < min(m, n):
        pivot = _smallest_nonzero(a, t, m, n)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    done = False
            if done:
                # divisibility: pivot must divide every remaining entry
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            pivot = _smallest_nonzero_cross(a, t, m, n)
            pi, pj = pivot
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _smallest_nonzero(a, t, m, n):
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else best[1:]


def _smallest_nonzero_cross(a, t, m, n):
    # entries left in row t / column t after a reduction pass
    cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
    best = min(((abs(a[i][j]), i, j) for i, j in cells if a[i][j]))
    return best[1:]
