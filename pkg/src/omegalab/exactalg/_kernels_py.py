"""Pure-Python elimination kernels (fallback for the compiled module)."""


def _mul(a, b, d, red):
    if d == 1:
        return (a[0] * b[0],)
    c = [0] * (2 * d - 1)
    for i in range(d):
        ai = a[i]
        if ai:
            for j in range(d):
                bj = b[j]
                if bj:
                    c[i + j] += ai * bj
    for k in range(d, 2 * d - 1):
        ck = c[k]
        if ck:
            row = red[k - d]
            for t in range(d):
                r = row[t]
                if r:
                    c[t] += ck * r
    return tuple(c[:d])


def axpy_row(target, factor, source, start, d, red):
    """target[k] -= factor * source[k] for k >= start, in place."""
    for k in range(start, len(source)):
        s = source[k]
        if any(s):
            p = _mul(factor, s, d, red)
            t = target[k]
            target[k] = tuple(x - y for x, y in zip(t, p))


def scale_row(row, factor, start, d, red):
    for k in range(start, len(row)):
        s = row[k]
        if any(s):
            row[k] = _mul(factor, s, d, red)


def rref(rows, ncols, d, red, inv):
    """Gauss-Jordan elimination in place.

    ``rows`` is a list of mutable lists of field elements; ``inv`` inverts a
    nonzero element.  Returns ``(rank, pivots)``; the first ``rank`` rows hold
    the reduced echelon form.
    """
    nrows = len(rows)
    rank = 0
    pivots = []
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if any(rows[r][col]):
                piv = r
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        scale_row(prow, inv(prow[col]), col, d, red)
        for r in range(nrows):
            if r != rank:
                f = rows[r][col]
                if any(f):
                    axpy_row(rows[r], f, prow, col, d, red)
        pivots.append(col)
        rank += 1
    return rank, pivots
