"""Polynomials with coefficients in the multiplicative center.

Coefficient position = degree; an entry of None marks an absent term,
which matters for semirings that cannot build an identity matrix (then
degree 0 has no meaning at the matrix level and generated keys simply
omit it). Where a zero element exists, an absent term and a zero
coefficient evaluate the same.
"""

import random
from dataclasses import dataclass

from .errors import (DegenerateCenter, EmptyPolynomial, IdentityUnavailable,
                     NonCentralCoefficient)
from .matrices import (Matrix, OpCounter, identity_matrix, mat_add, mat_mul,
                       scalar_mul, zero_matrix)
from .semirings import Semiring, center


@dataclass(frozen=True)
class CenterPolynomial:
    """Coefficient tuple, degree ascending; None = term absent."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple(None if c is None else int(c) for c in self.coeffs))

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def terms(self) -> list:
        """(degree, coefficient) for every present term."""
        return [(i, c) for i, c in enumerate(self.coeffs) if c is not None]

    def effective_degree(self):
        """Highest present degree, or None for the empty polynomial."""
        present = [i for i, c in enumerate(self.coeffs) if c is not None]
        return max(present) if present else None

    def __str__(self):
        return format_polynomial(self)


def eval_at_matrix(p: CenterPolynomial, m: Matrix, counter: OpCounter = None) -> Matrix:
    """Sum of c_i * M^i, folded in increasing degree.

    Powers are reused (M^i = M^(i-1) * M), so a degree-d polynomial
    costs at most d matrix products. Degree 0 contributes c_0 times the
    identity matrix and therefore needs the semiring to have one.
    """
    s = m.semiring
    cent = set(center(s))
    terms = p.terms()
    for _, c in terms:
        if c not in cent:
            raise NonCentralCoefficient(f"coefficient {c} is not central")
    if not terms:
        if s.additive_identity() is None:
            raise EmptyPolynomial("no terms and no additive identity to return")
        return zero_matrix(s, m.n)
    total = None
    power = None  # M^i for current i >= 1
    for degree, coeff in terms:
        if degree == 0:
            try:
                base = identity_matrix(s, m.n)
            except IdentityUnavailable:
                raise IdentityUnavailable(
                    "degree-0 term needs an identity matrix; this semiring "
                    "has none") from None
        else:
            if power is None:
                power = m
                at = 1
            while at < degree:
                power = mat_mul(power, m, counter)
                at += 1
            base = power
        term = scalar_mul(coeff, base)
        total = term if total is None else mat_add(total, term, counter)
    return total


def random_private_pair(s: Semiring, m: int, rng_seed) -> tuple:
    """Two random keys of degree <= m with coefficients uniform over the center.

    Each polynomial is redrawn until it has at least one nonzero
    non-constant term, so keys never act as constants. Deterministic for
    a given seed; rng_seed may also be a random.Random to draw from.
    """
    if m < 1:
        raise ValueError("degree bound must be at least 1")
    rng = random.Random(rng_seed) if isinstance(rng_seed, int) else rng_seed
    cent = center(s)
    zero = s.zero_element()
    if all(c == zero for c in cent):
        raise DegenerateCenter("center has no usable nonzero coefficient")
    constants_ok = s.has_identity_matrix()

    def draw():
        while True:
            coeffs = [rng.choice(cent) if constants_ok else None]
            coeffs.extend(rng.choice(cent) for _ in range(m))
            if any(c is not None and c != zero for c in coeffs[1:]):
                return CenterPolynomial(tuple(coeffs))

    return draw(), draw()


# Text form: space-separated coefficient indices, degree ascending;
# `_` marks an absent term.

def format_polynomial(p: CenterPolynomial) -> str:
    return " ".join("_" if c is None else str(c) for c in p.coeffs)


def parse_polynomial(text: str) -> CenterPolynomial:
    from .errors import FormatError

    tokens = text.split()
    if not tokens:
        raise FormatError("empty polynomial")
    coeffs = []
    for t in tokens:
        if t == "_":
            coeffs.append(None)
        elif t.isdigit():
            coeffs.append(int(t))
        else:
            raise FormatError(f"bad coefficient token {t!r}")
    return CenterPolynomial(tuple(coeffs))
