"""Congruence closures and congruence-simplicity for small semirings.

A congruence is an equivalence relation compatible with both operations
on either side. The closure of a seed pair is computed with union-find
plus a worklist: every merge of two classes enqueues the derived pairs
(x+c, y+c), (c+x, c+y), (x*c, y*c), (c*x, c*y) for all c, and chains of
merge events compose transitively, so the fixpoint is the smallest
congruence relating the seed.
"""

from dataclasses import dataclass

from .errors import OrderLimitExceeded
from .semirings import Semiring

# Pair enumeration is quadratic; keep exhaustive simplicity checks at desk scale.
SIMPLICITY_ORDER_LIMIT = 64


@dataclass(frozen=True)
class Partition:
    """Carrier partition; class ids renumbered in first-occurrence order."""

    class_of: tuple

    @staticmethod
    def normalize(labels) -> "Partition":
        seen = {}
        out = []
        for lbl in labels:
            if lbl not in seen:
                seen[lbl] = len(seen)
            out.append(seen[lbl])
        return Partition(tuple(out))

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1 if self.class_of else 0

    def is_identity(self) -> bool:
        return self.num_classes == len(self.class_of)

    def is_full(self) -> bool:
        return self.num_classes <= 1

    def classes(self) -> list:
        out = [[] for _ in range(self.num_classes)]
        for elem, cls in enumerate(self.class_of):
            out[cls].append(elem)
        return [tuple(c) for c in out]

    def refines(self, other: "Partition") -> bool:
        """True iff every class of self sits inside one class of other."""
        rep = {}
        for x, cls in enumerate(self.class_of):
            if cls in rep and other.class_of[rep[cls]] != other.class_of[x]:
                return False
            rep.setdefault(cls, x)
        return True


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def congruence_closure(s: Semiring, a: int, b: int, extra_seeds=()) -> Partition:
    """Smallest congruence of s relating a and b (plus any extra seed pairs)."""
    q = s.order
    if not (0 <= a < q and 0 <= b < q):
        raise IndexError(f"seed pair ({a}, {b}) out of range for order {q}")
    parent = list(range(q))
    add, mul = s.add_rows, s.mul_rows
    work = [(a, b), *extra_seeds]
    while work:
        x, y = work.pop()
        rx, ry = _find(parent, x), _find(parent, y)
        if rx == ry:
            continue
        parent[ry] = rx
        for c in range(q):
            for u, v in ((add[x][c], add[y][c]), (add[c][x], add[c][y]),
                         (mul[x][c], mul[y][c]), (mul[c][x], mul[c][y])):
                if _find(parent, u) != _find(parent, v):
                    work.append((u, v))
    return Partition.normalize([_find(parent, i) for i in range(q)])


def is_congruence_simple(s: Semiring) -> bool:
    """True iff collapsing any two elements collapses everything.

    Exhaustive over element pairs; guarded to order <= 64.
    """
    if s.order > SIMPLICITY_ORDER_LIMIT:
        raise OrderLimitExceeded(
            f"order {s.order} exceeds the simplicity check limit {SIMPLICITY_ORDER_LIMIT}")
    for a in range(s.order):
        for b in range(a + 1, s.order):
            if not congruence_closure(s, a, b).is_full():
                return False
    return True
