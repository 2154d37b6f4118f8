"""Two-sided matrix-action key exchange over a finite semiring.

Both parties agree on a semiring R, a dimension n, and public matrices
S, M1, M2. A private key is a pair of center-coefficient polynomials
(p, q); the public value is p(M1) * S * q(M2), and the shared key is
obtained by wrapping the peer's public value the same way. Central
coefficients slide across factors, which is exactly why both sides
compute the same key.

Implemented to be attacked, not deployed: no transport, no
authentication.
"""

import random
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateCenter, DimensionMismatch
from .matrices import Matrix, mat_mul, random_matrix
from .polynomials import CenterPolynomial, eval_at_matrix, random_private_pair
from .semirings import (Semiring, SemiringClass, classify,
                        is_additively_idempotent, order2_type)

ROUTE_IDEMPOTENT = "idempotent"
ROUTE_FINITE_FIELD = "finite-field"


@dataclass(frozen=True)
class ProtocolInstance:
    """Public data of one exchange: semiring, S, M1, M2, and the degree
    bound the parties use for key generation."""

    semiring: Semiring
    n: int
    s: Matrix
    m1: Matrix
    m2: Matrix
    m: int

    def __post_init__(self):
        for mat in (self.s, self.m1, self.m2):
            if mat.semiring is not self.semiring or mat.n != self.n:
                raise DimensionMismatch("instance matrices must be n x n over the semiring")


@dataclass(frozen=True)
class KeyPair:
    """Private polynomials plus the public value they produce."""

    p: CenterPolynomial
    q: CenterPolynomial
    public_value: Matrix


def random_instance(semiring: Semiring, n: int, m: int, rng_seed) -> ProtocolInstance:
    """Instance with uniform random S, M1, M2."""
    rng = random.Random(rng_seed) if isinstance(rng_seed, int) else rng_seed
    return ProtocolInstance(
        semiring, n,
        random_matrix(semiring, n, rng),
        random_matrix(semiring, n, rng),
        random_matrix(semiring, n, rng),
        m)


def public_value(inst: ProtocolInstance, p: CenterPolynomial, q: CenterPolynomial) -> Matrix:
    """p(M1) * S * q(M2), folded left to right."""
    left = eval_at_matrix(p, inst.m1)
    right = eval_at_matrix(q, inst.m2)
    return mat_mul(mat_mul(left, inst.s), right)


def make_keypair(inst: ProtocolInstance, rng_seed) -> KeyPair:
    """Draw a private pair and compute its public value."""
    p, q = random_private_pair(inst.semiring, inst.m, rng_seed)
    return KeyPair(p, q, public_value(inst, p, q))


def shared_key(mine: KeyPair, theirs_public: Matrix, inst: ProtocolInstance) -> Matrix:
    """p(M1) * B * q(M2) where B is the peer's public value."""
    if theirs_public.n != inst.n:
        raise DimensionMismatch(f"{theirs_public.n}x{theirs_public.n} vs instance n={inst.n}")
    left = eval_at_matrix(mine.p, inst.m1)
    right = eval_at_matrix(mine.q, inst.m2)
    return mat_mul(mat_mul(left, theirs_public), right)


@dataclass(frozen=True)
class Transcript:
    """One full exchange, including the private halves for oracle checks."""

    inst: ProtocolInstance
    alice: KeyPair
    bob: KeyPair
    key_alice: Matrix
    key_bob: Matrix

    @property
    def agree(self) -> bool:
        return self.key_alice == self.key_bob


def run_exchange(inst: ProtocolInstance, rng_seed) -> Transcript:
    """Run both sides of the exchange with one seeded stream."""
    rng = random.Random(rng_seed) if isinstance(rng_seed, int) else rng_seed
    alice = make_keypair(inst, rng)
    bob = make_keypair(inst, rng)
    return Transcript(inst, alice, bob,
                      shared_key(alice, bob.public_value, inst),
                      shared_key(bob, alice.public_value, inst))


@dataclass(frozen=True)
class DegeneracyReport:
    """Protocol viability verdict for a semiring."""

    degenerate: bool
    reason: Optional[str]
    route: Optional[str]           # ROUTE_IDEMPOTENT / ROUTE_FINITE_FIELD / None
    order2_name: Optional[str]     # T1..T8 when the semiring is one of them


def semiring_route(s: Semiring) -> DegeneracyReport:
    """Degeneracy and attack dispatch for a semiring.

    Order-2 carriers are matched against the eight builtin tables: T1,
    T2, T7 collapse every transcript to a constant matrix, T8 is the
    two-element field, T3..T6 are additively idempotent. Larger
    carriers dispatch on the structural classification; a declared
    matrix-over-field structure routes to the linear-algebra attack.
    """
    t = order2_type(s)
    if s.order == 1:
        return DegeneracyReport(True, "single-element semiring, all values equal", None, None)
    if t in ("T1", "T2"):
        return DegeneracyReport(
            True, f"{t}: every sum collapses to the absorbing element, "
            "so transcripts are constant matrices", None, t)
    if t == "T7":
        return DegeneracyReport(
            True, "T7: zero multiplication ring, every product is the zero matrix", None, t)
    if t == "T8":
        return DegeneracyReport(False, None, ROUTE_FINITE_FIELD, t)
    if s.field_structure is not None:
        return DegeneracyReport(False, None, ROUTE_FINITE_FIELD, t)
    if is_additively_idempotent(s):
        return DegeneracyReport(False, None, ROUTE_IDEMPOTENT, t)
    cls = classify(s)
    if cls is SemiringClass.ZERO_MULTIPLICATION_RING:
        return DegeneracyReport(
            True, "zero multiplication ring, every product is the zero matrix", None, None)
    if cls is SemiringClass.ABSORBING_SUM:
        return DegeneracyReport(
            True, "all sums hit the absorbing element, transcripts are constant matrices",
            None, None)
    return DegeneracyReport(False, "structure not recognized; declare a field "
                            "structure or use an additively idempotent semiring", None, t)


def degeneracy_report(inst: ProtocolInstance) -> DegeneracyReport:
    return semiring_route(inst.semiring)


def key_generation_viable(s: Semiring) -> bool:
    """True iff random_private_pair can produce keys at all."""
    try:
        random_private_pair(s, 1, 0)
    except DegenerateCenter:
        return False
    return True
