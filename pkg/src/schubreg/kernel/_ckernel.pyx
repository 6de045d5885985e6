# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _pykernel with identical term-level semantics.

Coefficients and packed monomials are arbitrary-precision Python ints, so
the win here is loop and call overhead, not native arithmetic.  Any change
to _pykernel must be mirrored exactly; the cross-validation tests compare
the two term by term.
"""

from heapq import heapify, heappop, heappush
from math import gcd

IMPLEMENTATION = "cython"

cdef int _STRIP_EVERY = 64
cdef int _STRIP_BITS = 4096


def content_normalize(terms):
    """Divide by the content and make the leading coefficient positive."""
    if not terms:
        return terms
    g = 0
    for _, _, c in terms:
        g = gcd(g, c)
        if g == 1:
            break
    if terms[0][2] < 0:
        g = -g
    if g == 1:
        return terms
    return [(k, r, c // g) for (k, r, c) in terms]


def normal_form(fterms, reducers, corr, hmask):
    """Remainder of fterms under reducers sorted by ascending lm_key."""
    cdef dict acc = {}
    cdef list heap = []
    cdef list out = []
    cdef int steps = 0
    cdef int big
    for k, r, c in fterms:
        acc[r] = acc.get(r, 0) + c
        heap.append((-k, r))
    heapify(heap)
    while heap:
        nk, r = heappop(heap)
        c = acc.pop(r, 0)
        if not c:
            continue
        k = -nk
        hit = None
        for red in reducers:
            if red[0] > k:
                break
            if ((r | hmask) - red[1]) & hmask == hmask:
                hit = red
                break
        if hit is None:
            out.append((k, r, c))
            continue
        lk, lr, lc, tail = hit
        qk = k - lk + corr
        qr = r - lr
        g = gcd(c, lc)
        mf = lc // g
        mg = c // g
        if mf < 0:
            mf = -mf
            mg = -mg
        if mf != 1:
            for key in acc:
                acc[key] *= mf
            if out:
                out = [(a, b, cc * mf) for (a, b, cc) in out]
        for tk, tr, tc in tail:
            nr = tr + qr
            prev = acc.get(nr)
            if prev is None:
                acc[nr] = -mg * tc
                heappush(heap, (-(tk + qk - corr), nr))
            else:
                nv = prev - mg * tc
                if nv:
                    acc[nr] = nv
                else:
                    del acc[nr]
        steps += 1
        if steps % _STRIP_EVERY == 0 and acc:
            big = 0
            for v in acc.values():
                bl = abs(v).bit_length()
                if bl > big:
                    big = bl
            if big > _STRIP_BITS:
                g = 0
                for v in acc.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                for _, _, cc in out:
                    g = gcd(g, cc)
                    if g == 1:
                        break
                if g > 1:
                    acc = {key: v // g for key, v in acc.items()}
                    out = [(a, b, cc // g) for (a, b, cc) in out]
    return content_normalize(out)


def s_polynomial(p, q, pack):
    """S-polynomial of two descending term lists."""
    cdef dict acc = {}
    cdef dict keys = {}
    hmask = pack.hmask
    corr = pack.corr
    pk, pr, pc = p[0][0], p[0][1], p[0][2]
    qk, qr, qc = q[0][0], q[0][1], q[0][2]
    ge = ((pr | hmask) - qr) & hmask
    full = (ge << 1) - (ge >> 15)
    lcm = (pr & full) | (qr & ~full)
    lk = pack.keyof(lcm)
    l = pc * qc // gcd(pc, qc)
    mp_c = l // pc
    mp_k = lk - pk + corr
    mp_r = lcm - pr
    mq_c = l // qc
    mq_k = lk - qk + corr
    mq_r = lcm - qr
    for tk, tr, tc in p:
        nr = tr + mp_r
        acc[nr] = acc.get(nr, 0) + mp_c * tc
        keys[nr] = tk + mp_k - corr
    for tk, tr, tc in q:
        nr = tr + mq_r
        acc[nr] = acc.get(nr, 0) - mq_c * tc
        keys[nr] = tk + mq_k - corr
    terms = [(keys[r], r, c) for r, c in acc.items() if c]
    terms.sort(reverse=True)
    return content_normalize(terms)
