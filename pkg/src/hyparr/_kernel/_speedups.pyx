# cython: language_level=3
"""Compiled arithmetic kernel.

Mirrors ``pyimpl.py`` operation for operation; both backends must return
bit-identical canonical results.  Numerators stay Python ints (arbitrary
precision), the speedup comes from removing interpreter and dispatch
overhead in the row loops.
"""

from fractions import Fraction
from math import gcd


def elem_norm(nums, den):
    cdef Py_ssize_t k, n = len(nums)
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    g = den
    for k in range(n):
        g = gcd(g, nums[k])
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [v // g for v in nums]
    return tuple(nums), den


def elem_is_zero(a):
    for v in a[0]:
        if v:
            return False
    return True


def elem_add(a, b):
    an, ad = a
    bn, bd = b
    return elem_norm([x * bd + y * ad for x, y in zip(an, bn)], ad * bd)


def elem_sub(a, b):
    an, ad = a
    bn, bd = b
    return elem_norm([x * bd - y * ad for x, y in zip(an, bn)], ad * bd)


def elem_neg(a):
    return tuple(-v for v in a[0]), a[1]


cdef list _mulreduce(a, b, Py_ssize_t d, red):
    cdef Py_ssize_t i, j, k
    if d == 1:
        return [a[0] * b[0]]
    cdef list conv = [0] * (2 * d - 1)
    for i in range(d):
        x = a[i]
        if x:
            for j in range(d):
                y = b[j]
                if y:
                    conv[i + j] = conv[i + j] + x * y
    for k in range(2 * d - 2, d - 1, -1):
        c = conv[k]
        if c:
            row = red[k - d]
            for j in range(d):
                r = row[j]
                if r:
                    conv[j] = conv[j] + c * r
    del conv[d:]
    return conv


def poly_mulreduce(a, b, d, red):
    return _mulreduce(a, b, d, red)


def elem_mul(a, b, d, red):
    an, ad = a
    bn, bd = b
    return elem_norm(_mulreduce(an, bn, d, red), ad * bd)


def elem_inv(a, d, phi, red):
    """Extended Euclid over Q[x]; cold path, shared with the pure backend."""
    an, ad = a
    if not any(an):
        raise ZeroDivisionError("inverse of zero field element")
    if d == 1:
        n = an[0]
        if n < 0:
            return (-ad,), -n
        return (ad,), n
    r0 = [Fraction(c) for c in phi]
    r1 = [Fraction(n, ad) for n in an]
    while r1 and r1[-1] == 0:
        r1.pop()
    t0 = []
    t1 = [Fraction(1)]
    while True:
        deg0 = len(r0) - 1
        deg1 = len(r1) - 1
        if deg1 == 0:
            break
        q = [Fraction(0)] * (deg0 - deg1 + 1)
        rem = list(r0)
        for k in range(deg0 - deg1, -1, -1):
            c = rem[deg1 + k] / r1[deg1]
            q[k] = c
            if c:
                for j in range(deg1 + 1):
                    rem[j + k] -= c * r1[j]
        while rem and rem[-1] == 0:
            rem.pop()
        if not rem:
            raise ZeroDivisionError("element shares a factor with the modulus")
        qt = [Fraction(0)] * (len(q) + len(t1) - 1)
        for i, x in enumerate(q):
            if x:
                for j, y in enumerate(t1):
                    qt[i + j] += x * y
        nt = [Fraction(0)] * max(len(t0), len(qt))
        for i, x in enumerate(t0):
            nt[i] += x
        for i, x in enumerate(qt):
            nt[i] -= x
        r0, r1 = r1, rem
        t0, t1 = t1, nt
    lead = r1[0]
    out = [c / lead for c in t1] + [Fraction(0)] * (d - len(t1))
    den = 1
    for c in out:
        den = den * c.denominator // gcd(den, c.denominator)
    return elem_norm([int(c * den) for c in out[:d]], den)


def row_norm(nums, den):
    cdef Py_ssize_t k, n = len(nums)
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    g = den
    for k in range(n):
        g = gcd(g, nums[k])
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [v // g for v in nums]
    return tuple(nums), den


cdef bint _entry_nonzero(nums, Py_ssize_t col, Py_ssize_t d):
    cdef Py_ssize_t k, base = col * d
    for k in range(base, base + d):
        if nums[k]:
            return True
    return False


cdef tuple _eliminate(tn, td, Py_ssize_t col, pn, pd, Py_ssize_t m, Py_ssize_t d, red):
    cdef Py_ssize_t j, k, jb, base = col * d
    cdef list out, prod
    if d == 1:
        e = tn[base]
        out = [None] * m
        for j in range(m):
            out[j] = tn[j] * pd - e * pn[j]
        return out, td * pd
    e = tn[base:base + d]
    out = [x * pd for x in tn]
    for j in range(m):
        seg = pn[j * d:(j + 1) * d]
        if any(seg):
            prod = _mulreduce(e, seg, d, red)
            jb = j * d
            for k in range(d):
                out[jb + k] = out[jb + k] - prod[k]
    return out, td * pd


cdef tuple _row_norm_list(list nums, den):
    cdef Py_ssize_t k, n = len(nums)
    if den < 0:
        den = -den
        for k in range(n):
            nums[k] = -nums[k]
    g = den
    for k in range(n):
        g = gcd(g, nums[k])
        if g == 1:
            break
    if g > 1:
        den //= g
        for k in range(n):
            nums[k] = nums[k] // g
    return nums, den


def rref(rows, m, d, red, phi):
    cdef Py_ssize_t mm = m, dd = d
    cdef Py_ssize_t col, r, hit, prow = 0, base
    cdef list work = [(list(n), dn) for n, dn in rows]
    cdef Py_ssize_t nrows = len(work)
    cdef list pivots = []
    one = (1,) + (0,) * (dd - 1)
    for col in range(mm):
        if prow == nrows:
            break
        hit = -1
        for r in range(prow, nrows):
            if _entry_nonzero(work[r][0], col, dd):
                hit = r
                break
        if hit < 0:
            continue
        if hit != prow:
            work[prow], work[hit] = work[hit], work[prow]
        pn, pd = work[prow]
        base = col * dd
        pe = elem_norm(pn[base:base + dd], pd)
        if pe != (one, 1):
            iv, ivd = elem_inv(pe, dd, phi, red)
            if dd == 1:
                s = iv[0]
                pn = [x * s for x in pn]
            else:
                nn = []
                for j in range(mm):
                    nn.extend(_mulreduce(iv, pn[j * dd:(j + 1) * dd], dd, red))
                pn = nn
            pn, pd = _row_norm_list(pn, pd * ivd)
            work[prow] = (pn, pd)
        for r in range(nrows):
            if r != prow and _entry_nonzero(work[r][0], col, dd):
                tn, td = work[r]
                nn, nd = _eliminate(tn, td, col, pn, pd, mm, dd, red)
                nn, nd = _row_norm_list(nn, nd)
                work[r] = (nn, nd)
        pivots.append(col)
        prow += 1
    cdef list out = []
    for r in range(prow):
        nn, nd = _row_norm_list(list(work[r][0]), work[r][1])
        out.append((tuple(nn), nd))
    return tuple(out), tuple(pivots)


def rank(rows, m, d, red):
    cdef Py_ssize_t mm = m, dd = d
    cdef Py_ssize_t col, r, k, j, hit, prow = 0, base
    cdef list work = [list(n) for n, _ in rows]
    cdef Py_ssize_t nrows = len(work)
    cdef list nw, pr
    for col in range(mm):
        if prow == nrows:
            break
        base = col * dd
        hit = -1
        for r in range(prow, nrows):
            w = work[r]
            for k in range(base, base + dd):
                if w[k]:
                    hit = r
                    break
            if hit >= 0:
                break
        if hit < 0:
            continue
        if hit != prow:
            work[prow], work[hit] = work[hit], work[prow]
        pr = work[prow]
        if dd == 1:
            pv = pr[base]
            for r in range(prow + 1, nrows):
                w = work[r]
                e = w[base]
                if e:
                    nw = [None] * mm
                    for j in range(mm):
                        nw[j] = w[j] * pv - e * pr[j]
                    g = 0
                    for j in range(mm):
                        g = gcd(g, nw[j])
                        if g == 1:
                            break
                    if g > 1:
                        for j in range(mm):
                            nw[j] = nw[j] // g
                    work[r] = nw
        else:
            pe = pr[base:base + dd]
            for r in range(prow + 1, nrows):
                w = work[r]
                e = w[base:base + dd]
                if any(e):
                    nw = []
                    for j in range(mm):
                        a = _mulreduce(pe, w[j * dd:(j + 1) * dd], dd, red)
                        b = _mulreduce(e, pr[j * dd:(j + 1) * dd], dd, red)
                        for k in range(dd):
                            nw.append(a[k] - b[k])
                    g = 0
                    for j in range(mm * dd):
                        g = gcd(g, nw[j])
                        if g == 1:
                            break
                    if g > 1:
                        for j in range(mm * dd):
                            nw[j] = nw[j] // g
                    work[r] = nw
        prow += 1
    return prow


def in_rowspace(row, rref_rows, pivots, m, d, red):
    cdef Py_ssize_t mm = m, dd = d
    cdef Py_ssize_t i, col, base, j
    cdef Py_ssize_t npiv = len(pivots)
    cdef list cur = list(row[0])
    cd = row[1]
    for i in range(npiv):
        col = pivots[i]
        base = col * dd
        if dd == 1:
            e = cur[base]
            if e:
                pn, pd = rref_rows[i]
                for j in range(mm):
                    cur[j] = cur[j] * pd - e * pn[j]
                cd = cd * pd
        else:
            nz = False
            for j in range(base, base + dd):
                if cur[j]:
                    nz = True
                    break
            if nz:
                pn, pd = rref_rows[i]
                cur, cd = _eliminate(cur, cd, col, pn, pd, mm, dd, red)
    for j in range(mm * dd):
        if cur[j]:
            return False
    return True


def nullspace(rref_rows, pivots, m, d, red):
    cdef Py_ssize_t mm = m, dd = d
    cdef Py_ssize_t f, i, k, cb, fb
    pivset = set(pivots)
    out = []
    for f in range(mm):
        if f in pivset:
            continue
        den = 1
        for _, dn in rref_rows:
            den = den * dn // gcd(den, dn)
        nums = [0] * (mm * dd)
        nums[f * dd] = den
        fb = f * dd
        for i in range(len(pivots)):
            pn, pd = rref_rows[i]
            s = den // pd
            cb = pivots[i] * dd
            for k in range(dd):
                nums[cb + k] = -pn[fb + k] * s
        out.append(row_norm(nums, den))
    return tuple(out)


def dot(row_a, row_b, m, d, red):
    cdef Py_ssize_t mm = m, dd = d
    cdef Py_ssize_t j, k
    an, ad = row_a
    bn, bd = row_b
    if dd == 1:
        acc0 = 0
        for j in range(mm):
            acc0 = acc0 + an[j] * bn[j]
        return elem_norm([acc0], ad * bd)
    cdef list acc = [0] * dd
    for j in range(mm):
        seg_a = an[j * dd:(j + 1) * dd]
        if any(seg_a):
            prod = _mulreduce(seg_a, bn[j * dd:(j + 1) * dd], dd, red)
            for k in range(dd):
                acc[k] = acc[k] + prod[k]
    return elem_norm(acc, ad * bd)
