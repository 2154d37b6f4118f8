"""Linear-algebra key recovery when the semiring is a matrix ring over F_p.

An m x m matrix over R = Mat_n(F_p) flattens blockwise to an (m*n) x
(m*n) matrix over F_p, and flattening is a ring homomorphism. Powers of
a d x d matrix at or above d collapse into the span of lower powers, so
with k = d the public value satisfies a linear identity

    sum_{i,j < k} d_ij * M1^i * S * M2^j = A

for some field scalars d_ij. Any solution of that system, replayed with
B in the middle, yields the shared key: only the identity itself and
the centrality of field scalars enter the derivation.

Prime moduli only; extension fields would add representation machinery
without changing the argument.
"""

import random
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentSystem, MalformedTables, StructureMismatch
from .matrices import Matrix
from .protocol import ProtocolInstance, Transcript, random_instance, run_exchange
from .semirings import Semiring


def is_prime(p: int) -> bool:
    """Trial division; fine at desk scale."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedTables(f"{self.p} is not prime")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(x, self.p - 2, self.p)


class FieldMatrix:
    """d x d matrix of residues mod p, backed by a read-only numpy array."""

    __slots__ = ("p", "d", "a")

    def __init__(self, p: int, entries):
        a = np.asarray(entries, dtype=np.int64) % p
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MalformedTables(f"expected a square matrix, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", a.shape[0])
        object.__setattr__(self, "a", a)

    def __setattr__(self, *_):
        raise AttributeError("FieldMatrix is immutable")

    @classmethod
    def identity(cls, p: int, d: int) -> "FieldMatrix":
        return cls(p, np.eye(d, dtype=np.int64))

    @classmethod
    def random(cls, p: int, d: int, rng) -> "FieldMatrix":
        return cls(p, [[rng.randrange(p) for _ in range(d)] for _ in range(d)])

    def __add__(self, other):
        self._check(other)
        return FieldMatrix(self.p, self.a + other.a)

    def __mul__(self, other):
        self._check(other)
        return FieldMatrix(self.p, self.a @ other.a)

    def scaled(self, c: int) -> "FieldMatrix":
        return FieldMatrix(self.p, (c % self.p) * self.a)

    def _check(self, other):
        if self.p != other.p or self.d != other.d:
            raise MalformedTables("field matrices must share modulus and dimension")

    def __eq__(self, other):
        return (isinstance(other, FieldMatrix) and self.p == other.p
                and self.d == other.d and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.p, self.d, self.a.tobytes()))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.a.tolist())
        return f"FieldMatrix(p={self.p}, [{body}])"


@dataclass(frozen=True)
class PrimeFieldStructure:
    """Declares a semiring's carrier as all n x n matrices over F_p.

    Element index e encodes the matrix whose (r, c) entry is the base-p
    digit of e at position r*n + c (row-major, little-endian).
    """

    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedTables(f"{self.p} is not prime")
        if self.n < 1:
            raise MalformedTables("inner dimension must be >= 1")

    @property
    def q(self) -> int:
        return self.p ** (self.n * self.n)

    def decode(self, e: int) -> np.ndarray:
        digits = [(e // self.p ** k) % self.p for k in range(self.n * self.n)]
        return np.array(digits, dtype=np.int64).reshape(self.n, self.n)

    def encode(self, mat) -> int:
        digits = np.asarray(mat, dtype=np.int64).reshape(-1) % self.p
        return int(digits @ (self.p ** np.arange(self.n * self.n, dtype=np.int64)))


def field_matrix_semiring(p: int, n: int) -> Semiring:
    """The semiring of all n x n matrices over F_p, with declared structure.

    Tables are built vectorized; order grows as p^(n^2), so keep p and n
    small (p=5, n=2 gives order 625 and is near the comfortable limit).
    """
    structure = PrimeFieldStructure(p, n)
    q = structure.q
    nn = n * n
    idx = np.arange(q, dtype=np.int64)
    digits = np.stack([(idx // p ** k) % p for k in range(nn)], axis=1)
    elems = digits.reshape(q, n, n)
    weights = p ** np.arange(nn, dtype=np.int64)

    def encode_grid(mats):
        return mats.reshape(q, q, nn) @ weights

    add = encode_grid((elems[:, None] + elems[None, :]) % p)
    mul = encode_grid(np.einsum("iab,jbc->ijac", elems, elems) % p)
    names = ["".join(str(d) for d in row) for row in digits.tolist()]
    return Semiring(add.tolist(), mul.tolist(), element_names=names,
                    name=f"mat{n}(F{p})", field_structure=structure)


def declare_prime_field(s: Semiring, p: int) -> Semiring:
    """Re-tag a semiring whose tables are exactly arithmetic mod p.

    Element index must equal the residue it denotes; used to route the
    two-element field builtin into this attack. Returns a new Semiring
    sharing the tables, with the structure attached.
    """
    if s.order != p:
        raise StructureMismatch(f"order {s.order} != p {p}")
    for i in range(p):
        for j in range(p):
            if s.add_rows[i][j] != (i + j) % p or s.mul_rows[i][j] != (i * j) % p:
                raise StructureMismatch("tables are not arithmetic mod p")
    return Semiring(s.add_rows, s.mul_rows, element_names=s.element_names,
                    name=s.name, field_structure=PrimeFieldStructure(p, 1))


def flatten(mat: Matrix, structure: PrimeFieldStructure = None) -> FieldMatrix:
    """Blockwise image of a matrix over Mat_n(F_p) in Mat_{m*n}(F_p).

    Outer entry (i, j) occupies rows i*n..(i+1)*n and columns
    j*n..(j+1)*n. This is a ring homomorphism: flattening commutes with
    addition and multiplication.
    """
    structure = structure or mat.semiring.field_structure
    if structure is None:
        raise StructureMismatch("semiring has no declared field structure")
    if mat.semiring.order != structure.q:
        raise StructureMismatch(
            f"declared structure expects order {structure.q}, semiring has {mat.semiring.order}")
    m, n = mat.n, structure.n
    out = np.zeros((m * n, m * n), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = structure.decode(
                mat.entries[i * m + j])
    return FieldMatrix(structure.p, out)


class FlatMonomialGrid:
    """Memoized M1^i * S * M2^j over the field; one product per new cell."""

    def __init__(self, m1: FieldMatrix, s: FieldMatrix, m2: FieldMatrix):
        self.m1 = m1
        self.m2 = m2
        self._table = {(0, 0): s}

    def get(self, i: int, j: int) -> FieldMatrix:
        table = self._table
        key = (i, j)
        if key in table:
            return table[key]
        missing = []
        ci, cj = i, j
        while (ci, cj) not in table:
            missing.append((ci, cj))
            if ci > 0:
                ci -= 1
            else:
                cj -= 1
        for ni, nj in reversed(missing):
            if ni > 0 and (ni - 1, nj) in table:
                table[(ni, nj)] = self.m1 * table[(ni - 1, nj)]
            else:
                table[(ni, nj)] = table[(ni, nj - 1)] * self.m2
        return table[key]


def build_linear_system(m1: FieldMatrix, s: FieldMatrix, m2: FieldMatrix,
                        a: FieldMatrix, k: int) -> tuple:
    """Coefficient matrix and right-hand side for the d_ij unknowns.

    Column i*k + j holds the row-major vectorization of M1^i * S * M2^j;
    the right-hand side is the vectorization of A. d^2 equations, k^2
    unknowns, all mod p.
    """
    grid = FlatMonomialGrid(m1, s, m2)
    cols = []
    for i in range(k):
        for j in range(k):
            cols.append(grid.get(i, j).a.reshape(-1))
    coef = np.stack(cols, axis=1) % m1.p
    rhs = a.a.reshape(-1).copy()
    return coef, rhs


def gauss_solve(coef, rhs, p: int, free_value: int = 0) -> np.ndarray:
    """One solution of coef @ x = rhs over F_p by row reduction.

    Free variables are set to free_value (any completion solves the
    system). Raises InconsistentSystem when no solution exists.
    """
    a = np.array(coef, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64) % p
    rows, cols = a.shape
    field = PrimeField(p)
    pivots = []  # (row, col)
    r = 0
    for c in range(cols):
        hit = next((i for i in range(r, rows) if a[i, c]), None)
        if hit is None:
            continue
        if hit != r:
            a[[r, hit]] = a[[hit, r]]
            b[[r, hit]] = b[[hit, r]]
        inv = field.inv(int(a[r, c]))
        a[r] = a[r] * inv % p
        b[r] = b[r] * inv % p
        for i in range(rows):
            if i != r and a[i, c]:
                f = a[i, c]
                a[i] = (a[i] - f * a[r]) % p
                b[i] = (b[i] - f * b[r]) % p
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if b[i] % p and not a[i].any():
            raise InconsistentSystem("no solution: not a valid transcript")
    x = np.full(cols, free_value % p, dtype=np.int64)
    for _, c in pivots:
        x[c] = 0
    for i, c in pivots:
        x[c] = (b[i] - a[i] @ x) % p
    return x


def ff_recover_key(m1: FieldMatrix, m2: FieldMatrix, s: FieldMatrix,
                   a: FieldMatrix, b: FieldMatrix,
                   free_value: int = 0) -> FieldMatrix:
    """Shared key from the flattened public transcript (S, M1, M2, A, B).

    Solves for coefficients d_ij with powers below k = d (enough by the
    power-collapse bound), then evaluates sum d_ij * M1^i * B * M2^j.
    """
    k = a.d
    coef, rhs = build_linear_system(m1, s, m2, a, k)
    sol = gauss_solve(coef, rhs, m1.p, free_value=free_value)
    grid = FlatMonomialGrid(m1, b, m2)
    total = FieldMatrix(m1.p, np.zeros((a.d, a.d), dtype=np.int64))
    for i in range(k):
        for j in range(k):
            d_ij = int(sol[i * k + j])
            if d_ij:
                total = total + grid.get(i, j).scaled(d_ij)
    return total


@dataclass(frozen=True)
class FieldAttackOutcome:
    transcript: Transcript
    recovered: FieldMatrix
    true_key: FieldMatrix

    @property
    def match(self) -> bool:
        return self.recovered == self.true_key


def run_field_attack_demo(semiring: Semiring, outer: int, degree: int,
                          rng_seed, free_value: int = 0) -> FieldAttackOutcome:
    """Run an exchange over a declared matrix-field semiring and attack it."""
    rng = random.Random(rng_seed) if isinstance(rng_seed, int) else rng_seed
    inst = random_instance(semiring, outer, degree, rng)
    transcript = run_exchange(inst, rng)
    return attack_transcript(inst, transcript, free_value=free_value)


def attack_transcript(inst: ProtocolInstance, transcript: Transcript,
                      free_value: int = 0) -> FieldAttackOutcome:
    recovered = ff_recover_key(
        flatten(inst.m1), flatten(inst.m2), flatten(inst.s),
        flatten(transcript.alice.public_value),
        flatten(transcript.bob.public_value),
        free_value=free_value)
    return FieldAttackOutcome(transcript, recovered, flatten(transcript.key_alice))
