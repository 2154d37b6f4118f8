"""Pure Python table-lookup kernels.

These are the hot inner loops of the package: entrywise and
sum-of-products matrix arithmetic over a finite semiring given by
operation tables. `semikey.kernels` picks the compiled twin
(`_kernels_c`) when it is available; both backends implement exactly
this contract:

- tables come from prepare_tables(add_rows, mul_rows) and are opaque;
- matrices are flat row-major index tuples;
- mat_mul folds each sum-of-products left to right, so results are
  reproducible even when addition is not commutative.
"""

BACKEND_NAME = "python"


def prepare_tables(add_rows, mul_rows):
    """Pack operation tables into the backend's lookup form."""
    return (tuple(tuple(r) for r in add_rows), tuple(tuple(r) for r in mul_rows))


def mat_mul(tables, n, xs, ys):
    """Row-major n*n product: out[i,j] = sum_k xs[i,k] * ys[k,j]."""
    add, mul = tables
    out = []
    for i in range(n):
        ri = i * n
        xi = xs[ri:ri + n]
        for j in range(n):
            acc = mul[xi[0]][ys[j]]
            for k in range(1, n):
                acc = add[acc][mul[xi[k]][ys[k * n + j]]]
            out.append(acc)
    return tuple(out)


def mat_add(tables, n, xs, ys):
    """Entrywise sum of two flat matrices."""
    add = tables[0]
    return tuple(add[x][y] for x, y in zip(xs, ys))


def scalar_mul(tables, k, xs):
    """Entrywise left multiplication by the scalar k."""
    row = tables[1][k]
    return tuple(row[x] for x in xs)


def scalar_mul_right(tables, k, xs):
    """Entrywise right multiplication by the scalar k."""
    mul = tables[1]
    return tuple(mul[x][k] for x in xs)


def absorbs(tables, k, gs, a_s):
    """True iff k*G + A == A entrywise (one fused pass, early exit)."""
    add, mul = tables
    row = mul[k]
    for g, a in zip(gs, a_s):
        if add[row[g]][a] != a:
            return False
    return True
