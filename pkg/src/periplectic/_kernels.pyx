# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of _kernels_py: same names, same exact semantics.

Coefficients stay Python ints / Fractions (arbitrary precision), so the win
here is loop and dict-protocol overhead, not machine arithmetic.
"""

IMPLEMENTATION = "cython"


def combine_scaled(dict acc, dict src, c):
    cdef object k, v, w
    if not c:
        return acc
    for k, v in src.items():
        w = acc.get(k)
        if w is None:
            acc[k] = c * v
        else:
            w = w + c * v
            if w:
                acc[k] = w
            else:
                del acc[k]
    return acc


def apply_columns(dict cols, dict vec):
    cdef dict out = {}
    cdef list col
    cdef object j, c, a, w
    cdef tuple pair
    cdef Py_ssize_t idx, ncol
    for j, c in vec.items():
        col = <list> cols.get(j)
        if col is None:
            continue
        ncol = len(col)
        for idx in range(ncol):
            pair = <tuple> col[idx]
            i = pair[0]
            a = pair[1]
            w = out.get(i)
            if w is None:
                out[i] = c * a
            else:
                w = w + c * a
                if w:
                    out[i] = w
                else:
                    del out[i]
    return out


def matmul_dicts(list a_rows, b_rows):
    cdef list out = []
    cdef dict acc, arow, brow
    cdef object k, aik, jj, bkj, w
    cdef bint b_is_dict = isinstance(b_rows, dict)
    cdef Py_ssize_t nb = 0 if b_is_dict else len(<list> b_rows)
    for arow in a_rows:
        acc = {}
        for k, aik in arow.items():
            if b_is_dict:
                brow = (<dict> b_rows).get(k)
            else:
                brow = <dict> (<list> b_rows)[k] if <Py_ssize_t> k < nb else None
            if brow is None or not brow:
                continue
            for jj, bkj in brow.items():
                w = acc.get(jj)
                if w is None:
                    acc[jj] = aik * bkj
                else:
                    w = w + aik * bkj
                    if w:
                        acc[jj] = w
                    else:
                        del acc[jj]
        out.append(acc)
    return out


def bareiss_rank(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return 0
    cdef Py_ssize_t rank = 0, row = 0, col, r, cc, piv
    cdef object prev = 1
    cdef object pv, rv
    cdef list rr, pr
    for col in range(ncols):
        piv = -1
        for r in range(row, m):
            if (<list> rows[r])[col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            rows[piv], rows[row] = rows[row], rows[piv]
        pr = <list> rows[row]
        pv = pr[col]
        for r in range(row + 1, m):
            rr = <list> rows[r]
            rv = rr[col]
            if rv:
                for cc in range(col, ncols):
                    rr[cc] = (pv * rr[cc] - rv * pr[cc]) // prev
            else:
                if prev != 1:
                    for cc in range(col, ncols):
                        rr[cc] = (pv * rr[cc]) // prev
        prev = pv
        row += 1
        rank += 1
        if row == m:
            break
    return rank


def reduce_against(dict pivots, row):
    cdef dict residual = dict(row)
    cdef dict piv
    cdef object j, c, k, v, w
    while residual:
        j = min(residual)
        piv = <dict> pivots.get(j)
        if piv is None:
            return residual
        c = residual[j]
        for k, v in piv.items():
            w = residual.get(k)
            if w is None:
                residual[k] = -c * v
            else:
                w = w - c * v
                if w:
                    residual[k] = w
                else:
                    del residual[k]
    return residual
