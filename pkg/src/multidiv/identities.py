"""Exact verification of the convolution identities.

The binomial-type identity for tau1k of a product of two integers runs over
a sparse multiplicative correction: at each prime the correction is nonzero
only when both exponents are >= 1 and their sum is k or k+1.  The r-variable
generalization uses the normalized local series as the correction, with the
truncation degree surfaced as an error instead of a silent zero.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .arith import (
    DivisorFunctionId,
    Factorization,
    SpfTable,
    eval_divisor_fn,
    factorize,
    lcm_tuple,
)
from .series import PrimeLocalSeries, normalized_series


class InsufficientDegreeError(ValueError):
    """A required correction coefficient lies beyond the series truncation."""


def pair_correction_value(nu1: int, nu2: int, k: int) -> int:
    """Local correction for tau1k of a two-variable product (exact case table)."""
    if nu1 == 0 and nu2 == 0:
        return 1
    if nu1 >= 1 and nu2 >= 1:
        if nu1 + nu2 == k:
            return 1
        if nu1 + nu2 == k + 1:
            return -1
    return 0


@dataclass
class CorrectionFunction:
    """Multiplicative r-variable correction, closed-form (r=2) or series-backed."""

    r: int
    source: str  # "closed" | "series"
    k: int | None = None
    series: PrimeLocalSeries | None = None

    @classmethod
    def closed_pair(cls, k: int) -> "CorrectionFunction":
        if k < 1:
            raise ValueError("k must be >= 1")
        return cls(r=2, source="closed", k=k)

    @classmethod
    def from_series(cls, series: PrimeLocalSeries) -> "CorrectionFunction":
        return cls(r=series.r, source="series", series=series)

    def local(self, nu: tuple[int, ...]) -> int:
        """Correction coefficient at one prime; exact, truncation-checked."""
        if len(nu) != self.r:
            raise ValueError("tuple arity mismatch")
        if self.source == "closed":
            return pair_correction_value(nu[0], nu[1], self.k)
        if sum(nu) > self.series.D:
            raise InsufficientDegreeError(
                f"exponent tuple {nu} exceeds series truncation D={self.series.D}"
            )
        return self.series.coeff(tuple(nu))


def eval_correction(cf: CorrectionFunction, d: tuple[int, ...], table: SpfTable | None = None) -> int:
    """Evaluate the multiplicative correction at an r-tuple of integers."""
    if len(d) != cf.r:
        raise ValueError("tuple arity mismatch")
    per_prime: dict[int, list[int]] = {}
    for j, dj in enumerate(d):
        for p, e in factorize(dj, table):
            per_prime.setdefault(p, [0] * cf.r)[j] = e
    val = 1
    for nu in per_prime.values():
        c = cf.local(tuple(nu))
        if c == 0:
            return 0
        val *= c
    return val


# --- two-variable identity -------------------------------------------------------

def _pair_options(e1: int, e2: int, k: int):
    """Nonzero local correction choices at one common prime: (b1, b2, sign)."""
    opts = [(0, 0, 1)]
    for total, sign in ((k, 1), (k + 1, -1)):
        for b1 in range(1, min(e1, total - 1) + 1):
            b2 = total - b1
            if 1 <= b2 <= e2:
                opts.append((b1, b2, sign))
    return opts


def busche_ramanujan_rhs(
    n1: int,
    n2: int,
    k: int,
    table: SpfTable | None = None,
    values: list[int] | None = None,
) -> int:
    """Double divisor sum sum_{d1|n1, d2|n2} f_k(d1,d2) tau1k(n1/d1) tau1k(n2/d2).

    Only divisor pairs inside the sparse correction support contribute, so
    the sum runs over per-prime pattern choices at the common primes of n1
    and n2.  `values` may supply a precomputed tau1k table for speed.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("n1, n2 must be >= 1")
    fid = DivisorFunctionId("tau1k", k)
    f1 = dict(factorize(n1, table))
    f2 = dict(factorize(n2, table))
    common = sorted(set(f1) & set(f2))

    def tau_val(n: int) -> int:
        if values is not None:
            return values[n]
        return eval_divisor_fn(fid, n, table)

    if not common:
        return tau_val(n1) * tau_val(n2)

    total = 0
    option_lists = [_pair_options(f1[p], f2[p], k) for p in common]
    for choice in itertools.product(*option_lists):
        d1 = d2 = 1
        sign = 1
        for p, (b1, b2, s) in zip(common, choice):
            d1 *= p**b1
            d2 *= p**b2
            sign *= s
        total += sign * tau_val(n1 // d1) * tau_val(n2 // d2)
    return total


def busche_ramanujan_check_range(
    max_n: int, k: int, table: SpfTable | None = None
) -> tuple[int, int] | None:
    """Exhaustive check of the identity for all n1, n2 <= max_n.

    Returns None on success, else the lexicographically first failing pair.
    """
    from .arith import sieve_spf

    limit = max_n * max_n
    if table is None or table.limit < limit:
        table = sieve_spf(limit)
    fid = DivisorFunctionId("tau1k", k)
    values = [0] * (limit + 1)
    for n in range(1, limit + 1):
        values[n] = eval_divisor_fn(fid, n, table)
    for n1 in range(1, max_n + 1):
        for n2 in range(1, max_n + 1):
            lhs = values[n1 * n2]
            rhs = busche_ramanujan_rhs(n1, n2, k, table, values)
            if lhs != rhs:
                return (n1, n2)
    return None


# --- r-variable convolution check -------------------------------------------------

def _merged_exponents(
    n: tuple[int, ...], table: SpfTable | None
) -> dict[int, list[int]]:
    per_prime: dict[int, list[int]] = {}
    for j, nj in enumerate(n):
        for p, e in factorize(nj, table):
            per_prime.setdefault(p, [0] * len(n))[j] = e
    return per_prime


def convolution_sum_check(
    fid: DivisorFunctionId,
    kind: str,
    n: tuple[int, ...],
    D: int = 16,
    table: SpfTable | None = None,
    correction: CorrectionFunction | None = None,
) -> bool:
    """Check f(combined(n)) against the r-fold divisor convolution.

    The right side is the Dirichlet convolution of the series-derived
    correction with the per-variable base function; it factors over primes
    since every piece is multiplicative, so the double sum is evaluated
    prime-locally and multiplied back together.
    """
    r = len(n)
    if correction is None:
        correction = CorrectionFunction.from_series(normalized_series(fid, kind, r, D))
    if kind == "product":
        combined = 1
        for nj in n:
            combined *= nj
    elif kind == "lcm":
        combined = lcm_tuple(list(n))
    else:
        raise ValueError(f"unsupported combiner {kind!r}")
    lhs_table = table if (table is not None and combined <= table.limit) else None
    lhs = eval_divisor_fn(fid, combined, lhs_table)

    base_local = fid.local_value
    rhs = 1
    for nu in _merged_exponents(n, table).values():
        if correction.source == "series" and sum(nu) > correction.series.D:
            raise InsufficientDegreeError(
                f"exponents {nu} exceed correction truncation D={correction.series.D}"
            )
        local_total = 0
        for beta in itertools.product(*(range(e + 1) for e in nu)):
            c = correction.local(beta)
            if c == 0:
                continue
            term = c
            for bj, ej in zip(beta, nu):
                term *= base_local(ej - bj)
            local_total += term
        rhs *= local_total
    return lhs == rhs


def convolution_check_batch(
    fid: DivisorFunctionId,
    kind: str,
    r: int,
    trials: int,
    seed: int,
    max_component: int = 10**4,
    D: int = 16,
    table: SpfTable | None = None,
) -> tuple[bool, tuple[int, ...] | None]:
    """Randomized convolution checks with a fixed documented seed.

    Components are drawn uniformly in [1, max_component]; tuples whose merged
    prime exponents exceed the truncation are redrawn.  Returns (all_ok,
    lexicographically least failing tuple or None).
    """
    rng = random.Random(seed)
    correction = CorrectionFunction.from_series(normalized_series(fid, kind, r, D))
    failures: list[tuple[int, ...]] = []
    done = 0
    while done < trials:
        n = tuple(rng.randint(1, max_component) for _ in range(r))
        merged = _merged_exponents(n, table)
        if any(sum(nu) > D for nu in merged.values()):
            continue
        done += 1
        if not convolution_sum_check(fid, kind, n, D, table, correction):
            failures.append(n)
    if failures:
        return False, min(failures)
    return True, None
