"""Integer arithmetic substrate: sieves, factorization, divisor functions.

Everything here is exact.  Summatory values are Python ints (arbitrary
precision); the smallest-prime-factor table is a shared immutable numpy
array so the heavy paths in `sums` can reuse it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

Factorization = list[tuple[int, int]]


class SpfTable:
    """Smallest-prime-factor table for 2..limit, immutable after build."""

    __slots__ = ("limit", "spf")

    def __init__(self, limit: int, spf: np.ndarray):
        self.limit = limit
        self.spf = spf
        spf.setflags(write=False)

    def smallest_prime_factor(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range 2..{self.limit}")
        return int(self.spf[n])

    def primes(self) -> np.ndarray:
        """All primes <= limit, ascending."""
        idx = np.arange(self.limit + 1)
        return idx[2:][self.spf[2:] == idx[2:]]


def sieve_spf(limit: int) -> SpfTable:
    """Build the smallest-prime-factor table up to `limit` (inclusive).

    Vectorised Eratosthenes marking: each composite keeps the first
    (smallest) prime that reaches it.
    """
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    # remaining zeros at n >= 2 are primes
    idx = np.arange(limit + 1)
    mask = spf == 0
    mask[:2] = False
    spf[mask] = idx[mask]
    return SpfTable(limit, spf)


def primes_up_to(limit: int) -> list[int]:
    """Primes <= limit as plain ints (simple bool sieve, cheap for desk sizes)."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def factorize(n: int, table: SpfTable | None = None) -> Factorization:
    """Prime-exponent list of n >= 1, primes ascending.  1 -> []."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n == 1:
        return []
    out: Factorization = []
    if table is not None:
        if n > table.limit:
            raise ValueError(f"n={n} exceeds table limit {table.limit}")
        spf = table.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    # trial division, 2 then odd candidates
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


def product_of(fac: Factorization) -> int:
    n = 1
    for p, e in fac:
        n *= p**e
    return n


def divisors(fac: Factorization) -> list[int]:
    """All divisors of the factored integer, unsorted."""
    divs = [1]
    for p, e in fac:
        pk = 1
        block = []
        for _ in range(e):
            pk *= p
            block.extend(d * pk for d in divs)
        divs.extend(block)
    return divs


# --- divisor functions -------------------------------------------------------

@dataclass(frozen=True)
class DivisorFunctionId:
    """Identifier of a catalog multiplicative function.

    All catalog functions are prime-independent: the value at p^e depends
    only on e, which is what `local_value` returns.
    """

    kind: str  # tau | tau1k | tauexp | taustar | mobius
    k: int | None = None

    def __post_init__(self):
        if self.kind == "tau1k":
            if self.k is None or self.k < 1:
                raise ValueError("tau1k requires k >= 1")
        elif self.kind not in ("tau", "tauexp", "taustar", "mobius"):
            raise ValueError(f"unknown divisor function kind {self.kind!r}")

    def local_value(self, e: int) -> int:
        """Value at a prime power p^e (independent of p)."""
        if e < 0:
            raise ValueError("exponent must be >= 0")
        if e == 0:
            return 1
        if self.kind == "tau":
            return e + 1
        if self.kind == "tau1k":
            return e // self.k + 1
        if self.kind == "tauexp":
            # number of divisors of the exponent
            return num_divisors(e)
        if self.kind == "taustar":
            return 2
        # mobius
        return -1 if e == 1 else 0

    def label(self) -> str:
        if self.kind == "tau1k":
            return f"tau1k(k={self.k})"
        return self.kind


TAU = DivisorFunctionId("tau")
TAU_EXP = DivisorFunctionId("tauexp")
TAU_STAR = DivisorFunctionId("taustar")
MOBIUS = DivisorFunctionId("mobius")


def tau1k(k: int) -> DivisorFunctionId:
    return DivisorFunctionId("tau1k", k)


def num_divisors(n: int) -> int:
    """tau(n) by trial division, used for tiny arguments (exponents)."""
    return math.prod(e + 1 for _, e in factorize(n))


def eval_divisor_fn(fid: DivisorFunctionId, n: int, table: SpfTable | None = None) -> int:
    """Multiplicative evaluation of the catalog function at n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    val = 1
    for _, e in factorize(n, table):
        v = fid.local_value(e)
        if v == 0:
            return 0
        val *= v
    return val


# --- exact summatory functions -----------------------------------------------

def integer_kth_root(x: int, k: int) -> int:
    """floor(x**(1/k)) computed exactly (float seed + integer correction)."""
    if x < 0 or k < 1:
        raise ValueError("integer_kth_root requires x >= 0, k >= 1")
    if x == 0:
        return 0
    if k == 1:
        return x
    if k == 2:
        return math.isqrt(x)
    r = int(round(x ** (1.0 / k)))
    while r > 0 and r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def summatory_tau_1k(x: int, k: int) -> int:
    """Exact sum over n <= x of the number of ways n = a*b^k.

    k=1 is the divisor summatory function (Dirichlet hyperbola, O(sqrt x));
    k>=2 runs over b <= x^(1/k) in O(x^(1/k)).
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        s = math.isqrt(x)
        return 2 * sum(x // n for n in range(1, s + 1)) - s * s
    total = 0
    b = 1
    while b**k <= x:
        total += x // b**k
        b += 1
    return total


def lcm_tuple(ns: list[int]) -> int:
    if not ns:
        raise ValueError("lcm of empty list")
    return reduce(math.lcm, ns)


def gcd_tuple(ns: list[int]) -> int:
    if not ns:
        raise ValueError("gcd of empty list")
    return reduce(math.gcd, ns)
