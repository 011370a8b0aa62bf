# cython: language_level=3, boundscheck=False, wraparound=True
"""Cython word kernel; behaviourally identical to gbs._wordcore_py.

Exponents stay PyObject ints (arbitrary precision is required), the win
comes from typed loop indices and C-level list handling in the hot paths.
"""


def reduce_items(list items, tuple alpha):
    cdef Py_ssize_t n = len(items)
    cdef Py_ssize_t i = 1
    cdef Py_ssize_t e, ep
    cdef object r, s, tail
    cdef list out = [items[0]]
    while i < n:
        e = items[i]
        r = items[i + 1]
        i += 2
        if len(out) >= 3:
            ep = out[-2]
            if ep == (e ^ 1) and out[-1] % alpha[ep] == 0:
                s = out[-1] // alpha[ep]
                del out[-2:]
                out[-1] = out[-1] + alpha[e] * s + r
                continue
        out.append(e)
        out.append(r)
    return out


def sweep_items(list items, tuple alpha):
    cdef list out = list(items)
    cdef Py_ssize_t n = len(out)
    cdef Py_ssize_t i = 1
    cdef Py_ssize_t e
    cdef object ab, m, r, rho
    while i < n:
        e = out[i]
        ab = alpha[e ^ 1]
        m = -ab if ab < 0 else ab
        r = out[i - 1]
        rho = r % m
        if rho != r:
            out[i - 1] = rho
            out[i + 1] = out[i + 1] + alpha[e] * ((r - rho) // ab)
        i += 2
    return out


def canon_items(list items, tuple alpha):
    return sweep_items(reduce_items(items, alpha), alpha)


def inv_items(list items):
    cdef Py_ssize_t n = len(items)
    cdef Py_ssize_t i = n - 2
    cdef Py_ssize_t e
    cdef list out = [-items[n - 1]]
    while i > 0:
        e = items[i]
        out.append(e ^ 1)
        out.append(-items[i - 1])
        i -= 2
    return out


def mul_items(list a, list b, tuple alpha):
    cdef list out = list(a)
    cdef Py_ssize_t nb = len(b)
    cdef Py_ssize_t i = 1
    cdef Py_ssize_t e, ep
    cdef object r, s, ab, m, r0, rho
    cdef Py_ssize_t start, j, n
    r = out.pop() + b[0]
    while i < nb:
        e = b[i]
        if len(out) >= 2:
            ep = out[-1]
            if ep == (e ^ 1) and r % alpha[ep] == 0:
                s = r // alpha[ep]
                out.pop()
                r = out.pop() + alpha[e] * s + b[i + 1]
                i += 2
                continue
        break
    start = len(out)
    out.append(r)
    if i < nb:
        out.extend(b[i:])
    j = start + 1
    n = len(out)
    while j < n:
        e = out[j]
        ab = alpha[e ^ 1]
        m = -ab if ab < 0 else ab
        r0 = out[j - 1]
        rho = r0 % m
        if rho != r0:
            out[j - 1] = rho
            out[j + 1] = out[j + 1] + alpha[e] * ((r0 - rho) // ab)
        j += 2
    return out
