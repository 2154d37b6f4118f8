"""Shared-key recovery over additively idempotent semirings.

When x + x = x everywhere, a public value A = p(M1) * S * q(M2) absorbs
each of its own summands: k * M1^a * S * M2^b + A = A for every cross
term k = v_a * w_b of the private keys. The attack therefore scans all
(k, a, b) in C x {0..m}^2 for that absorption property, collects the
witness set W, and replays it on the peer's public value B: the sum of
k * M1^a * B * M2^b over W equals the shared key whenever the degree
bound m covers the true keys.

Everything here consumes public data only: S, M1, M2 (from the
instance) plus the two public values.
"""

import time
from dataclasses import dataclass

from .errors import EmptyWitnessSet, NotIdempotent
from .matrices import (Matrix, MonomialCache, OpCounter, absorbs_into,
                       mat_add, mat_eq, scalar_mul, zero_matrix)
from .protocol import ProtocolInstance
from .semirings import center, is_additively_idempotent


@dataclass
class AttackStats:
    """Operation counts for one attack run."""

    matrix_products: int = 0
    matrix_additions: int = 0
    comparisons: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class WitnessSet:
    """Triples (k, a, b) whose monomial k * M1^a * S * M2^b is absorbed by A."""

    triples: frozenset
    bound: int

    def sorted_triples(self) -> list:
        return sorted(self.triples)

    def __len__(self):
        return len(self.triples)

    def __contains__(self, triple):
        return triple in self.triples


@dataclass(frozen=True)
class AttackResult:
    key: Matrix
    witness: WitnessSet
    verified: bool          # witness sum reproduced A; False signals the bound was too small
    stats: AttackStats


def _scan_coefficients(s):
    """Center elements worth scanning.

    A zero element (additive identity, multiplicatively absorbing)
    yields triples that absorb trivially and carry no information, so
    it is dropped when present.
    """
    zero = s.zero_element()
    return [k for k in center(s) if k != zero]


def _require_idempotent(s):
    if not is_additively_idempotent(s):
        raise NotIdempotent("witness-set attack needs x + x = x for all x")


def _scan(inst: ProtocolInstance, a_public: Matrix, bound: int,
          cache: MonomialCache, counter: OpCounter) -> WitnessSet:
    ks = _scan_coefficients(inst.semiring)
    triples = set()
    for a in range(bound + 1):
        for b in range(bound + 1):
            g = cache.get(a, b)
            for k in ks:
                if absorbs_into(k, g, a_public, counter):
                    triples.add((k, a, b))
    return WitnessSet(frozenset(triples), bound)


def _empty_sum(inst: ProtocolInstance) -> Matrix:
    if inst.semiring.additive_identity() is None:
        raise EmptyWitnessSet(
            "empty witness set and the semiring has no additive identity")
    return zero_matrix(inst.semiring, inst.n)


def _witness_sum(w: WitnessSet, cache: MonomialCache, inst: ProtocolInstance,
                 counter: OpCounter) -> Matrix:
    """Sum of k * L^a * X * R^b over the witness triples, in sorted order."""
    total = None
    for triple in w.sorted_triples():
        k, a, b = triple
        term = scalar_mul(k, cache.get(a, b))
        total = term if total is None else mat_add(total, term, counter)
    return total if total is not None else _empty_sum(inst)


def compute_witness_set(inst: ProtocolInstance, a_public: Matrix,
                        bound: int) -> tuple:
    """All (k, a, b) in C x {0..bound}^2 with k * M1^a * S * M2^b + A = A.

    The monomial grid is filled incrementally, so the scan costs exactly
    bound^2 + 2*bound matrix products and one addition plus one
    comparison per scanned triple. Returns (WitnessSet, AttackStats).
    """
    _require_idempotent(inst.semiring)
    counter = OpCounter()
    start = time.perf_counter()
    cache = MonomialCache(inst.m1, inst.s, inst.m2, counter)
    w = _scan(inst, a_public, bound, cache, counter)
    stats = AttackStats(counter.products, counter.additions, counter.comparisons,
                        time.perf_counter() - start)
    return w, stats


def verify_witness_sum(w: WitnessSet, inst: ProtocolInstance, a_public: Matrix) -> bool:
    """True iff the witness monomials sum back to A."""
    counter = OpCounter()
    cache = MonomialCache(inst.m1, inst.s, inst.m2, counter)
    try:
        total = _witness_sum(w, cache, inst, counter)
    except EmptyWitnessSet:
        return False
    return mat_eq(total, a_public, counter)


def greedy_reduce(w: WitnessSet, inst: ProtocolInstance, a_public: Matrix) -> WitnessSet:
    """Drop triples whose removal keeps the witness sum equal to A.

    Scans in lexicographic (k, a, b) order; the result still sums to A
    whenever the input did. Reducing a second time changes nothing.
    """
    counter = OpCounter()
    cache = MonomialCache(inst.m1, inst.s, inst.m2, counter)
    return _greedy(w, inst, a_public, cache, counter)


def _greedy(w: WitnessSet, inst: ProtocolInstance, a_public: Matrix,
            cache: MonomialCache, counter: OpCounter) -> WitnessSet:
    kept = WitnessSet(w.triples, w.bound)
    for triple in sorted(w.triples):
        candidate = WitnessSet(kept.triples - {triple}, kept.bound)
        try:
            total = _witness_sum(candidate, cache, inst, counter)
        except EmptyWitnessSet:
            continue
        if mat_eq(total, a_public, counter):
            kept = candidate
    return kept


def recover_key(inst: ProtocolInstance, a_public: Matrix, b_public: Matrix,
                bound: int, greedy: bool = False) -> AttackResult:
    """Recover the shared key from (S, M1, M2, A, B) alone.

    Computes the witness set of A at the given degree bound, checks that
    its monomials reproduce A (the verified flag; False means the bound
    missed true key degrees and the caller should raise it), then
    replays the witness sum with B in the middle. An undersized bound is
    not an error: the result is still returned, flagged unverified.
    """
    _require_idempotent(inst.semiring)
    counter = OpCounter()
    start = time.perf_counter()
    s_cache = MonomialCache(inst.m1, inst.s, inst.m2, counter)
    w = _scan(inst, a_public, bound, s_cache, counter)
    if greedy:
        w = _greedy(w, inst, a_public, s_cache, counter)
    try:
        verified = mat_eq(_witness_sum(w, s_cache, inst, counter), a_public, counter)
    except EmptyWitnessSet:
        verified = False
    b_cache = MonomialCache(inst.m1, b_public, inst.m2, counter)
    key = _witness_sum(w, b_cache, inst, counter)
    stats = AttackStats(counter.products, counter.additions, counter.comparisons,
                        time.perf_counter() - start)
    return AttackResult(key, w, verified, stats)
