# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels. Same signatures and results as ``_pure``."""

from array import array

from libc.stdint cimport int64_t, uint64_t

DEF MAX_GAPS = 16


def match_starts(const unsigned char[:] digits, const unsigned char[:] block, Py_ssize_t stop):
    cdef Py_ssize_t width = block.shape[0]
    cdef Py_ssize_t n = min(stop, digits.shape[0])
    cdef Py_ssize_t i, j
    out = []
    if width == 0:
        return out
    for i in range(n - width + 1):
        for j in range(width):
            if digits[i + j] != block[j]:
                break
        else:
            out.append(i)
    return out


def count_admissible(int t, uint64_t ones_mask, gaps):
    if t > 62:
        raise OverflowError("t too large for the compiled kernel")
    cdef Py_ssize_t ngaps = len(gaps)
    if ngaps > MAX_GAPS:
        raise ValueError(f"at most {MAX_GAPS} gap constraints")
    cdef uint64_t pshift[MAX_GAPS]
    cdef uint64_t gshift[MAX_GAPS]
    cdef uint64_t gmask[MAX_GAPS]
    cdef Py_ssize_t offset[MAX_GAPS]
    flat = array("q")
    cdef Py_ssize_t g
    for g in range(ngaps):
        ps, gs, gm, table = gaps[g]
        pshift[g] = ps
        gshift[g] = gs
        gmask[g] = gm
        offset[g] = len(flat)
        flat.extend(table)
    if not len(flat):
        flat.append(0)
    cdef const int64_t[:] tab = flat
    cdef uint64_t x, end = (<uint64_t>1) << t
    cdef long long total = 0
    cdef bint ok
    with nogil:
        for x in range(end):
            if (x & ones_mask) != ones_mask:
                continue
            ok = True
            for g in range(ngaps):
                if tab[offset[g] + <Py_ssize_t>(x >> pshift[g])] != <int64_t>((x >> gshift[g]) & gmask[g]):
                    ok = False
                    break
            if ok:
                total += 1
    return total
