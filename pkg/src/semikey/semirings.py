"""Finite semirings given by explicit operation tables.

Elements are dense indices 0..order-1; names are display metadata only.
A semiring here is two associative operations on the carrier with
multiplication distributing over addition on both sides. Nothing else
is assumed: no commutativity, no neutral elements, no inverses.
"""

import enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidSemiring, MalformedTables, UnknownBuiltin
from . import kernels


class AxiomViolation(NamedTuple):
    law: str
    witness: tuple  # (x, y, z); for distributive laws x is the multiplier


class SemiringClass(enum.Enum):
    TRIVIAL_SMALL = "trivial-small"
    MATRIX_RING_OVER_FIELD = "matrix-ring-over-field"
    ZERO_MULTIPLICATION_RING = "zero-multiplication-ring"
    ADDITIVELY_IDEMPOTENT = "additively-idempotent"
    ABSORBING_SUM = "absorbing-sum"
    UNCLASSIFIED = "unclassified"


class Semiring:
    """Finite carrier plus addition and multiplication tables.

    Construction validates structure only (shape and index range); run
    check_axioms to test the equational laws. Instances are immutable
    after construction and safe to share between threads. Matrix
    operations tie values to one ambient Semiring object, compared by
    identity.
    """

    def __init__(self, add_table, mul_table, element_names=None, name=None,
                 field_structure=None):
        add_rows = tuple(tuple(int(v) for v in row) for row in add_table)
        mul_rows = tuple(tuple(int(v) for v in row) for row in mul_table)
        order = len(add_rows)
        if order == 0:
            raise MalformedTables("empty carrier")
        for label, rows in (("add", add_rows), ("mul", mul_rows)):
            if len(rows) != order:
                raise MalformedTables(f"{label} table has {len(rows)} rows, expected {order}")
            for i, row in enumerate(rows):
                if len(row) != order:
                    raise MalformedTables(f"{label} row {i} has {len(row)} entries, expected {order}")
                for j, v in enumerate(row):
                    if not 0 <= v < order:
                        raise MalformedTables(f"{label}[{i}][{j}] = {v} out of range")
        if element_names is None:
            element_names = tuple(str(i) for i in range(order))
        else:
            element_names = tuple(str(x) for x in element_names)
            if len(element_names) != order:
                raise MalformedTables(f"{len(element_names)} element names for order {order}")
        self.order = order
        self.add_rows = add_rows
        self.mul_rows = mul_rows
        self.element_names = element_names
        self.name = name
        self.field_structure = field_structure
        self._kt = None
        self._center = None

    def add(self, a, b):
        return self.add_rows[a][b]

    def mul(self, a, b):
        return self.mul_rows[a][b]

    @property
    def kernel_tables(self):
        if self._kt is None:
            self._kt = kernels.prepare_tables(self.add_rows, self.mul_rows)
        return self._kt

    def additive_identity(self) -> Optional[int]:
        """Element e with e + x = x + e = x for all x, if any."""
        for e in range(self.order):
            row, col = self.add_rows[e], [self.add_rows[x][e] for x in range(self.order)]
            if all(row[x] == x for x in range(self.order)) and all(c == x for x, c in enumerate(col)):
                return e
        return None

    def multiplicative_identity(self) -> Optional[int]:
        """Element u with u * x = x * u = x for all x, if any."""
        for u in range(self.order):
            row, col = self.mul_rows[u], [self.mul_rows[x][u] for x in range(self.order)]
            if all(row[x] == x for x in range(self.order)) and all(c == x for x, c in enumerate(col)):
                return u
        return None

    def zero_element(self) -> Optional[int]:
        """Additive identity that is also multiplicatively absorbing."""
        e = self.additive_identity()
        if e is None:
            return None
        if all(self.mul_rows[e][x] == e and self.mul_rows[x][e] == e for x in range(self.order)):
            return e
        return None

    def has_identity_matrix(self) -> bool:
        """True iff zero/one exist, so diag(one) acts as a matrix identity."""
        return self.zero_element() is not None and self.multiplicative_identity() is not None

    def __repr__(self):
        tag = self.name or f"order={self.order}"
        return f"Semiring({tag})"


def check_axioms(s: Semiring) -> list:
    """Exhaustively test both associativities and both distributive laws.

    Returns every violated instance as AxiomViolation(law, (x, y, z)),
    grouped by law, witnesses in lexicographic order; an empty list
    means s is a semiring. O(order^3) per law, vectorized per x-slice.
    """
    q = s.order
    A = np.array(s.add_rows, dtype=np.int64)
    M = np.array(s.mul_rows, dtype=np.int64)
    out = []

    def collect(law, lhs_of, rhs_of):
        for x in range(q):
            lhs, rhs = lhs_of(x), rhs_of(x)
            bad = np.nonzero(lhs != rhs)
            for y, z in zip(*bad):
                out.append(AxiomViolation(law, (x, int(y), int(z))))

    # (x+y)+z vs x+(y+z)
    collect("add-associativity", lambda x: A[A[x], :], lambda x: A[x][A])
    # (x*y)*z vs x*(y*z)
    collect("mul-associativity", lambda x: M[M[x], :], lambda x: M[x][M])
    # x*(y+z) vs x*y + x*z
    collect("left-distributivity", lambda x: M[x][A], lambda x: A[np.ix_(M[x], M[x])])
    # (y+z)*x vs y*x + z*x
    collect("right-distributivity", lambda x: M[:, x][A], lambda x: A[np.ix_(M[:, x], M[:, x])])
    return out


def validate(s: Semiring) -> Semiring:
    """Raise InvalidSemiring unless check_axioms comes back empty."""
    violations = check_axioms(s)
    if violations:
        raise InvalidSemiring(violations)
    return s


def is_additively_idempotent(s: Semiring) -> bool:
    """True iff x + x = x for every element."""
    return all(s.add_rows[x][x] == x for x in range(s.order))


def is_additively_commutative(s: Semiring) -> bool:
    """True iff the addition table is symmetric."""
    return all(s.add_rows[x][y] == s.add_rows[y][x]
               for x in range(s.order) for y in range(x + 1, s.order))


def center(s: Semiring) -> tuple:
    """Elements commuting multiplicatively with everything, ascending."""
    if s._center is None:
        M = np.array(s.mul_rows, dtype=np.int64)
        mask = np.all(M == M.T, axis=1)
        s._center = tuple(int(i) for i in np.nonzero(mask)[0])
    return s._center


def _is_additive_group(s: Semiring) -> bool:
    e = s.additive_identity()
    if e is None:
        return False
    for x in range(s.order):
        if not any(s.add_rows[x][y] == e and s.add_rows[y][x] == e for y in range(s.order)):
            return False
    return True


def classify(s: Semiring) -> SemiringClass:
    """First matching structural case, tested in a fixed order.

    The cases are not mutually exclusive; attack dispatch only needs one
    applicable branch. Isomorphism to a matrix ring over a field is
    never detected structurally: constructions that know it declare it
    via field_structure.
    """
    if s.order <= 2:
        return SemiringClass.TRIVIAL_SMALL
    e = s.zero_element()
    if (e is not None and _is_additive_group(s)
            and all(v == e for row in s.mul_rows for v in row)):
        return SemiringClass.ZERO_MULTIPLICATION_RING
    if is_additively_idempotent(s):
        return SemiringClass.ADDITIVELY_IDEMPOTENT
    for inf in range(s.order):
        if (all(v == inf for row in s.add_rows for v in row)
                and all(s.mul_rows[inf][x] == inf and s.mul_rows[x][inf] == inf
                        for x in range(s.order))):
            return SemiringClass.ABSORBING_SUM
    return SemiringClass.UNCLASSIFIED


# The eight congruence-simple additively commutative semirings on {0,1},
# keyed by the conventional T-numbering.
_ORDER2_TABLES = {
    "T1": (((0, 0), (0, 0)), ((0, 0), (0, 0))),
    "T2": (((0, 0), (0, 0)), ((0, 0), (0, 1))),
    "T3": (((0, 0), (0, 1)), ((0, 0), (0, 0))),
    "T4": (((0, 0), (0, 1)), ((1, 1), (1, 1))),
    "T5": (((0, 0), (0, 1)), ((0, 1), (1, 1))),
    "T6": (((0, 0), (0, 1)), ((0, 0), (0, 1))),
    "T7": (((0, 1), (1, 0)), ((0, 0), (0, 0))),
    "T8": (((0, 1), (1, 0)), ((0, 0), (0, 1))),
}


def builtin(name: str) -> Semiring:
    """Construct a named builtin: T1..T8, boolean, or chain_<k> (k >= 2)."""
    key = name.strip()
    canon = key.upper() if key.lower().startswith("t") else key.lower()
    if canon in _ORDER2_TABLES:
        add, mul = _ORDER2_TABLES[canon]
        return Semiring(add, mul, name=canon)
    if canon == "boolean":
        return Semiring(((0, 1), (1, 1)), ((0, 0), (0, 1)), name="boolean")
    if canon.startswith("chain_") or canon.startswith("chain"):
        digits = canon.split("_", 1)[1] if "_" in canon else canon[len("chain"):]
        if digits.isdigit() and int(digits) >= 2:
            k = int(digits)
            add = tuple(tuple(max(i, j) for j in range(k)) for i in range(k))
            mul = tuple(tuple(min(i, j) for j in range(k)) for i in range(k))
            return Semiring(add, mul, name=f"chain_{k}")
    raise UnknownBuiltin(f"unknown builtin semiring {name!r}")


BUILTIN_NAMES = tuple(_ORDER2_TABLES) + ("boolean", "chain_<k>")


def enumerate_order2_semirings() -> list:
    """All (add, mul) table pairs on {0,1} that satisfy the axioms.

    Brute force over the 16 x 16 candidate pairs.
    """
    tables = [((a, b), (c, d))
              for a in range(2) for b in range(2)
              for c in range(2) for d in range(2)]
    found = []
    for add in tables:
        for mul in tables:
            s = Semiring(add, mul)
            if not check_axioms(s):
                found.append(s)
    return found


def order2_type(s: Semiring) -> Optional[str]:
    """T-name of an order-2 semiring up to relabeling, if it matches one."""
    if s.order != 2:
        return None
    for perm in ((0, 1), (1, 0)):
        add = tuple(tuple(perm[s.add_rows[perm[x]][perm[y]]] for y in (0, 1)) for x in (0, 1))
        mul = tuple(tuple(perm[s.mul_rows[perm[x]][perm[y]]] for y in (0, 1)) for x in (0, 1))
        for tname, (tadd, tmul) in _ORDER2_TABLES.items():
            if add == tadd and mul == tmul:
                return tname
    return None


# Interchange file format: `order`, `elements`, then `add` and `mul`
# blocks of order rows each. Row index = left operand. Example:
#
#   order 2
#   elements 0 1
#   add
#   0 1
#   1 1
#   mul
#   0 0
#   0 1

def format_semiring(s: Semiring) -> str:
    lines = [f"order {s.order}", "elements " + " ".join(s.element_names)]
    for label, rows in (("add", s.add_rows), ("mul", s.mul_rows)):
        lines.append(label)
        lines.extend(" ".join(str(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def parse_semiring(text: str, name=None) -> Semiring:
    """Parse the interchange format and validate the axioms.

    Raises FormatError with a line number on syntax problems,
    MalformedTables on bad shapes, InvalidSemiring listing the violated
    laws otherwise.
    """
    from .errors import FormatError

    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    pos = 0

    def take(expect=None):
        nonlocal pos
        if pos >= len(lines):
            raise FormatError(f"unexpected end of file, wanted {expect or 'more input'}")
        no, ln = lines[pos]
        pos += 1
        return no, ln

    no, ln = take("order")
    parts = ln.split()
    if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit():
        raise FormatError("expected 'order <n>'", line=no)
    order = int(parts[1])
    no, ln = take("elements")
    parts = ln.split()
    if parts[0] != "elements":
        raise FormatError("expected 'elements <names...>'", line=no)
    names = parts[1:]
    if len(names) != order:
        raise FormatError(f"expected {order} element names, got {len(names)}", line=no)

    def rows_block(label):
        no, ln = take(label)
        if ln != label:
            raise FormatError(f"expected '{label}'", line=no)
        rows = []
        for _ in range(order):
            no, ln = take(f"{label} row")
            row = ln.split()
            if len(row) != order or not all(t.lstrip("-").isdigit() for t in row):
                raise FormatError(f"expected {order} integers", line=no)
            rows.append(tuple(int(t) for t in row))
        return rows

    add = rows_block("add")
    mul = rows_block("mul")
    if pos != len(lines):
        raise FormatError("trailing content", line=lines[pos][0])
    return validate(Semiring(add, mul, element_names=names, name=name))


def load_semiring(path) -> Semiring:
    with open(path, encoding="utf-8") as fh:
        return parse_semiring(fh.read(), name=str(path))
