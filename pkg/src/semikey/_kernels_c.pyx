# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled table-lookup kernels; same contract as _kernels_py."""

from cpython cimport array
import array

BACKEND_NAME = "c"

_INT = array.array("i", [])


def prepare_tables(add_rows, mul_rows):
    cdef int order = len(add_rows)
    add_flat = array.array("i", [v for row in add_rows for v in row])
    mul_flat = array.array("i", [v for row in mul_rows for v in row])
    return (add_flat, mul_flat, order)


def mat_mul(tables, int n, xs, ys):
    cdef int[::1] add = tables[0]
    cdef int[::1] mul = tables[1]
    cdef int order = tables[2]
    cdef array.array xa = array.array("i", xs)
    cdef array.array ya = array.array("i", ys)
    cdef array.array oa = array.clone(_INT, n * n, zero=False)
    cdef int[::1] x = xa
    cdef int[::1] y = ya
    cdef int[::1] o = oa
    cdef int i, j, k, acc, ri
    for i in range(n):
        ri = i * n
        for j in range(n):
            acc = mul[x[ri] * order + y[j]]
            for k in range(1, n):
                acc = add[acc * order + mul[x[ri + k] * order + y[k * n + j]]]
            o[ri + j] = acc
    return tuple(oa)


def mat_add(tables, int n, xs, ys):
    cdef int[::1] add = tables[0]
    cdef int order = tables[2]
    cdef array.array xa = array.array("i", xs)
    cdef array.array ya = array.array("i", ys)
    cdef int size = len(xa)
    cdef array.array oa = array.clone(_INT, size, zero=False)
    cdef int[::1] x = xa
    cdef int[::1] y = ya
    cdef int[::1] o = oa
    cdef int i
    for i in range(size):
        o[i] = add[x[i] * order + y[i]]
    return tuple(oa)


def scalar_mul(tables, int k, xs):
    cdef int[::1] mul = tables[1]
    cdef int order = tables[2]
    cdef array.array xa = array.array("i", xs)
    cdef int size = len(xa)
    cdef array.array oa = array.clone(_INT, size, zero=False)
    cdef int[::1] x = xa
    cdef int[::1] o = oa
    cdef int i, base = k * order
    for i in range(size):
        o[i] = mul[base + x[i]]
    return tuple(oa)


def scalar_mul_right(tables, int k, xs):
    cdef int[::1] mul = tables[1]
    cdef int order = tables[2]
    cdef array.array xa = array.array("i", xs)
    cdef int size = len(xa)
    cdef array.array oa = array.clone(_INT, size, zero=False)
    cdef int[::1] x = xa
    cdef int[::1] o = oa
    cdef int i
    for i in range(size):
        o[i] = mul[x[i] * order + k]
    return tuple(oa)


def absorbs(tables, int k, gs, a_s):
    cdef int[::1] add = tables[0]
    cdef int[::1] mul = tables[1]
    cdef int order = tables[2]
    cdef array.array ga = array.array("i", gs)
    cdef array.array aa = array.array("i", a_s)
    cdef int size = len(ga)
    cdef int[::1] g = ga
    cdef int[::1] a = aa
    cdef int i, base = k * order
    for i in range(size):
        if add[mul[base + g[i]] * order + a[i]] != a[i]:
            return False
    return True
