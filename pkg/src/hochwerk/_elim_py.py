"""Pure-Python fraction-free sparse elimination over the integers.

Rows are ``(cols, vals)`` pairs of equal-length lists, ``cols`` strictly
increasing and every ``val`` a nonzero ``int``.  The same contract is
implemented by the compiled ``_elim_c`` module; this one is the fallback
and the reference the compiled one is benchmarked against.
"""

from math import gcd


def _normalize(row):
    # divide by the content and make the leading coefficient positive
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        for c in row:
            row[c] //= g
    return row


def echelon(rows, ncols, keep=True):
    """Row-reduce ``rows`` to echelon form.

    Returns ``(rank, pivots)`` where ``pivots`` is a list of echelon rows in
    ``(cols, vals)`` form sorted by leading column (empty when ``keep`` is
    false).  Leading entries are positive and each row has content 1.
    """
    pivots = {}
    for cols, vals in rows:
        if not cols:
            continue
        r = dict(zip(cols, vals))
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _normalize(r)
                break
            lead = p[c]
            rc = r[c]
            if lead == 1:
                for k, v in p.items():
                    w = r.get(k, 0) - rc * v
                    if w:
                        r[k] = w
                    else:
                        del r[k]
            else:
                g = gcd(lead, rc)
                a = lead // g
                b = rc // g
                for k in r:
                    r[k] *= a
                for k, v in p.items():
                    w = r.get(k, 0) - b * v
                    if w:
                        r[k] = w
                    else:
                        del r[k]
                if r:
                    _normalize(r)
    rank = len(pivots)
    if not keep:
        return rank, []
    out = []
    for c in sorted(pivots):
        row = pivots[c]
        ks = sorted(row)
        out.append((ks, [row[k] for k in ks]))
    return rank, out
