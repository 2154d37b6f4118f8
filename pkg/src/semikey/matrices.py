"""Square matrices over a finite semiring.

Entries are element indices stored as a flat row-major tuple; the heavy
lifting happens in semikey.kernels. Sum-of-products folds run left to
right so results are reproducible even for non-commutative addition.

MonomialCache memoizes the two-sided products L^a * X * R^b on a degree
grid where each new cell costs exactly one matrix product extended from
a neighbor; an OpCounter makes that cost observable.
"""

from dataclasses import dataclass

from .errors import (DimensionMismatch, IdentityUnavailable, MalformedTables,
                     SemiringMismatch)
from . import kernels
from .errors import FormatError
from .semirings import Semiring


@dataclass
class OpCounter:
    """Running tally of matrix-level operations; counts only increase."""

    products: int = 0
    additions: int = 0
    comparisons: int = 0


class Matrix:
    """Immutable n*n matrix of element indices over one ambient semiring."""

    __slots__ = ("semiring", "n", "entries")

    def __init__(self, semiring: Semiring, n: int, entries):
        entries = tuple(int(v) for v in entries)
        if n < 1 or len(entries) != n * n:
            raise MalformedTables(f"expected {n}x{n} entries, got {len(entries)}")
        for v in entries:
            if not 0 <= v < semiring.order:
                raise MalformedTables(f"entry {v} out of range for order {semiring.order}")
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, semiring, rows):
        rows = [list(r) for r in rows]
        return cls(semiring, len(rows), [v for row in rows for v in row])

    def rows(self):
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.semiring is other.semiring
                and self.n == other.n and self.entries == other.entries)

    def __hash__(self):
        return hash((id(self.semiring), self.n, self.entries))

    def __add__(self, other):
        return mat_add(self, other)

    def __mul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.rows())
        return f"Matrix({self.n}x{self.n} [{body}])"


def _check_pair(x: Matrix, y: Matrix):
    if x.semiring is not y.semiring:
        raise SemiringMismatch("matrices live over different semirings")
    if x.n != y.n:
        raise DimensionMismatch(f"{x.n}x{x.n} vs {y.n}x{y.n}")


def mat_add(x: Matrix, y: Matrix, counter: OpCounter = None) -> Matrix:
    """Entrywise sum."""
    _check_pair(x, y)
    if counter:
        counter.additions += 1
    out = kernels.mat_add(x.semiring.kernel_tables, x.n, x.entries, y.entries)
    return Matrix(x.semiring, x.n, out)


def mat_mul(x: Matrix, y: Matrix, counter: OpCounter = None) -> Matrix:
    """Sum-of-products matrix product, folded left to right."""
    _check_pair(x, y)
    if counter:
        counter.products += 1
    out = kernels.mat_mul(x.semiring.kernel_tables, x.n, x.entries, y.entries)
    return Matrix(x.semiring, x.n, out)


def scalar_mul(k: int, x: Matrix) -> Matrix:
    """Entrywise left multiplication by element k."""
    if not 0 <= k < x.semiring.order:
        raise MalformedTables(f"scalar {k} out of range")
    return Matrix(x.semiring, x.n, kernels.scalar_mul(x.semiring.kernel_tables, k, x.entries))


def scalar_mul_right(k: int, x: Matrix) -> Matrix:
    """Entrywise right multiplication; agrees with scalar_mul for central k."""
    if not 0 <= k < x.semiring.order:
        raise MalformedTables(f"scalar {k} out of range")
    return Matrix(x.semiring, x.n,
                  kernels.scalar_mul_right(x.semiring.kernel_tables, k, x.entries))


def mat_eq(x: Matrix, y: Matrix, counter: OpCounter = None) -> bool:
    """Exact entrywise equality, counted as one comparison."""
    _check_pair(x, y)
    if counter:
        counter.comparisons += 1
    return x.entries == y.entries


def absorbs_into(k: int, g: Matrix, a: Matrix, counter: OpCounter = None) -> bool:
    """True iff k*G + A == A; counted as one addition and one comparison."""
    _check_pair(g, a)
    if counter:
        counter.additions += 1
        counter.comparisons += 1
    return kernels.absorbs(g.semiring.kernel_tables, k, g.entries, a.entries)


def filled_matrix(semiring: Semiring, n: int, elem: int) -> Matrix:
    return Matrix(semiring, n, [elem] * (n * n))


def zero_matrix(semiring: Semiring, n: int) -> Matrix:
    """Matrix filled with the additive identity; raises if there is none."""
    e = semiring.additive_identity()
    if e is None:
        raise IdentityUnavailable("semiring has no additive identity")
    return filled_matrix(semiring, n, e)


def identity_matrix(semiring: Semiring, n: int) -> Matrix:
    """diag(one) with zero off-diagonal; needs a genuine zero and one."""
    one = semiring.multiplicative_identity()
    zero = semiring.zero_element()
    if one is None or zero is None:
        raise IdentityUnavailable(
            "identity matrix needs a multiplicative identity and an "
            "absorbing additive identity")
    entries = [zero] * (n * n)
    for i in range(n):
        entries[i * n + i] = one
    return Matrix(semiring, n, entries)


def random_matrix(semiring: Semiring, n: int, rng) -> Matrix:
    """Uniform entries over the carrier."""
    q = semiring.order
    return Matrix(semiring, n, [rng.randrange(q) for _ in range(n * n)])


class MonomialCache:
    """Memoized grid of L^a * X * R^b products.

    Cell (0,0) is X with no products; any other cell is extended from a
    cached neighbor with exactly one product, preferring (a-1, b) over
    (a, b-1). Single-writer: one attack run owns its cache.
    """

    def __init__(self, left: Matrix, middle: Matrix, right: Matrix,
                 counter: OpCounter = None):
        _check_pair(left, middle)
        _check_pair(middle, right)
        self.left = left
        self.middle = middle
        self.right = right
        self.counter = counter if counter is not None else OpCounter()
        self._table = {(0, 0): middle}

    @property
    def product_count(self) -> int:
        return self.counter.products

    def get(self, a: int, b: int) -> Matrix:
        """L^a * X * R^b, filling any missing ancestors along the way."""
        if a < 0 or b < 0:
            raise ValueError("degrees must be nonnegative")
        table = self._table
        key = (a, b)
        if key in table:
            return table[key]
        missing = []
        ca, cb = a, b
        while (ca, cb) not in table:
            missing.append((ca, cb))
            if ca > 0:
                ca -= 1
            else:
                cb -= 1
        for na, nb in reversed(missing):
            if na > 0 and (na - 1, nb) in table:
                table[(na, nb)] = mat_mul(self.left, table[(na - 1, nb)], self.counter)
            else:
                table[(na, nb)] = mat_mul(table[(na, nb - 1)], self.right, self.counter)
        return table[key]

    def fill_grid(self, m: int):
        """Materialize all cells (a, b) in {0..m}^2."""
        for a in range(m + 1):
            for b in range(m + 1):
                self.get(a, b)


# Matrix text format: first line n, then n rows of n element indices.

def format_matrix(m: Matrix) -> str:
    lines = [str(m.n)]
    lines.extend(" ".join(str(v) for v in row) for row in m.rows())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, semiring: Semiring) -> Matrix:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty matrix file")
    no, first = lines[0]
    if not first.isdigit():
        raise FormatError("expected dimension on first line", line=no)
    n = int(first)
    if len(lines) != n + 1:
        raise FormatError(f"expected {n} rows after the dimension")
    rows = []
    for no, ln in lines[1:]:
        row = ln.split()
        if len(row) != n or not all(t.isdigit() for t in row):
            raise FormatError(f"expected {n} element indices", line=no)
        rows.append([int(t) for t in row])
    return Matrix.from_rows(semiring, rows)


def load_matrix(path, semiring: Semiring) -> Matrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), semiring)
