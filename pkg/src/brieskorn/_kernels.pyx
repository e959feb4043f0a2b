# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of brieskorn._kernels_py (same API, same data formats).

The reference implementation and the data-format contract live in
_kernels_py.py; this module only exists to make the two hot loops
(polynomial reduction, exact row reduction) faster.
"""

from math import gcd

BACKEND_NAME = "cython"


cdef inline tuple _norm(num, den):
    if den < 0:
        num = -num
        den = -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


def add_terms(list p, list q):
    """Merged sum of two flat polynomials."""
    cdef Py_ssize_t i = 0, j = 0, np_ = len(p), nq = len(q)
    cdef list out = []
    cdef tuple tp, tq
    while i < np_ and j < nq:
        tp = <tuple> p[i]
        tq = <tuple> q[j]
        kp = tp[0]
        kq = tq[0]
        if kp > kq:
            out.append(tp)
            i += 1
        elif kp < kq:
            out.append(tq)
            j += 1
        else:
            num = tp[2] * tq[3] + tq[2] * tp[3]
            if num:
                den = tp[3] * tq[3]
                num, den = _norm(num, den)
                out.append((kp, tp[1], num, den))
            i += 1
            j += 1
    if i < np_:
        out.extend(p[i:])
    if j < nq:
        out.extend(q[j:])
    return out


def scale_monomial_mul(list p, tuple kshift, tuple eshift, num, den):
    """Multiply a flat polynomial by (num/den) * monomial(kshift, eshift)."""
    if not num:
        return []
    cdef list out = []
    cdef tuple term, key, exp
    cdef Py_ssize_t k, nkey = len(kshift), nexp = len(eshift)
    for term in p:
        key = <tuple> term[0]
        exp = <tuple> term[1]
        nn, nd = _norm(term[2] * num, term[3] * den)
        nkey_t = tuple([key[k] + kshift[k] for k in range(nkey)])
        nexp_t = tuple([exp[k] + eshift[k] for k in range(nexp)])
        out.append((nkey_t, nexp_t, nn, nd))
    return out


def normal_form(list p, list basis):
    """Fully reduced remainder of p modulo the flat polynomials in basis."""
    if not basis:
        return list(p)
    cdef list leads = [g[0] for g in basis]
    cdef Py_ssize_t nv = len((<tuple> p[0])[1]) if p else 0
    cdef list out = []
    cdef list work = list(p)
    cdef Py_ssize_t gi, nb = len(basis), v
    cdef tuple head, gkey, gexp, glead
    cdef bint ok
    cdef int hit
    while work:
        head = <tuple> work[0]
        key = head[0]
        exp = head[1]
        comp = key[0]
        hit = -1
        for gi in range(nb):
            glead = <tuple> leads[gi]
            gkey = <tuple> glead[0]
            if gkey[0] != comp:
                continue
            gexp = <tuple> glead[1]
            ok = True
            for v in range(nv):
                if exp[v] < gexp[v]:
                    ok = False
                    break
            if ok:
                hit = gi
                break
        if hit < 0:
            out.append(head)
            work = work[1:]
            continue
        glead = <tuple> leads[hit]
        gkey = <tuple> glead[0]
        gexp = <tuple> glead[1]
        cnum, cden = _norm(-head[2] * glead[3], head[3] * glead[2])
        kshift = tuple([key[v] - gkey[v] for v in range(len(key))])
        eshift = tuple([exp[v] - gexp[v] for v in range(nv)])
        prod = scale_monomial_mul((<list> basis[hit])[1:], kshift, eshift, cnum, cden)
        work = add_terms(work[1:], prod)
    return out


cdef list _int_row(row):
    """Clear denominators and strip content: [(col, int)] with gcd 1."""
    cdef tuple e
    scale = 1
    for e in row:
        d = e[2]
        scale = scale * d // gcd(scale, d)
    cdef list ints = []
    for e in row:
        ints.append((e[0], e[1] * (scale // e[2])))
    g = 0
    for e in ints:
        g = gcd(g, e[1])
        if g == 1:
            return ints
    if g > 1:
        return [(e[0], e[1] // g) for e in ints]
    return ints


cdef list _int_eliminate(list row, list piv, col):
    """Fraction-free elimination: piv_lead * row - row[col] * piv, content-stripped."""
    cdef Py_ssize_t i = 0, j = 0, nr = len(row), npv = len(piv)
    cdef tuple re, pe
    a = None
    for re in row:
        if re[0] == col:
            a = re[1]
            break
        if re[0] > col:
            break
    if a is None:
        return row
    b = (<tuple> piv[0])[1]
    cdef list out = []
    g = 0
    while i < nr and j < npv:
        re = <tuple> row[i]
        pe = <tuple> piv[j]
        rc = re[0]
        pc = pe[0]
        if rc < pc:
            v = b * re[1]
            out.append((rc, v))
            g = gcd(g, v)
            i += 1
        elif rc > pc:
            v = -a * pe[1]
            out.append((pc, v))
            g = gcd(g, v)
            j += 1
        else:
            v = b * re[1] - a * pe[1]
            if v:
                out.append((rc, v))
                g = gcd(g, v)
            i += 1
            j += 1
    while i < nr:
        re = <tuple> row[i]
        v = b * re[1]
        out.append((re[0], v))
        g = gcd(g, v)
        i += 1
    while j < npv:
        pe = <tuple> piv[j]
        v = -a * pe[1]
        out.append((pe[0], v))
        g = gcd(g, v)
        j += 1
    if g > 1:
        return [(e[0], e[1] // g) for e in out]
    return out


def rref(rows):
    """Reduced row echelon form of sparse rational rows; see _kernels_py.rref."""
    cdef list pending = [_int_row(r) for r in rows if r]
    cdef list done = []
    cdef list pivots = []
    cdef list piv, r2, row
    cdef Py_ssize_t best, i, n
    cdef Py_ssize_t best_len
    while pending:
        col = None
        for r in pending:
            c0 = (<tuple> (<list> r)[0])[0]
            if col is None or c0 < col:
                col = c0
        best = -1
        best_len = -1
        n = len(pending)
        for i in range(n):
            r = <list> pending[i]
            if (<tuple> r[0])[0] == col and (best < 0 or len(r) < best_len):
                best = i
                best_len = len(r)
        piv = <list> pending.pop(best)
        next_pending = []
        for r in pending:
            r2 = _int_eliminate(<list> r, piv, col)
            if r2:
                next_pending.append(r2)
        done = [_int_eliminate(<list> r, piv, col) for r in done]
        done.append(piv)
        pivots.append(col)
        pending = next_pending
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    cdef list out = []
    for i in order:
        row = <list> done[i]
        lead = (<tuple> row[0])[1]
        out.append([(e[0],) + _norm(e[1], lead) for e in row])
    return out, sorted(pivots)
