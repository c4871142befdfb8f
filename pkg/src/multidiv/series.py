"""Exact prime-local power series in r variables.

A multiplicative function of r variables has, at each prime p, a local
Dirichlet factor that is a formal power series in x_j = p^(-s_j).  For the
catalog functions the raw coefficients are prime-independent integers, and
dividing out the zeta prefactors amounts to multiplying by factors
(1 - x_j^a).  Everything below is exact integer arithmetic on coefficient
maps truncated by total degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .arith import DivisorFunctionId

ExponentTuple = tuple[int, ...]


def tuples_up_to_degree(r: int, max_total: int):
    """Yield all r-tuples of nonnegative ints with sum <= max_total."""
    if r == 0:
        yield ()
        return
    for head in range(max_total + 1):
        for rest in tuples_up_to_degree(r - 1, max_total - head):
            yield (head, *rest)


@dataclass
class PrimeLocalSeries:
    """Truncated power series: coeffs maps exponent tuples (|nu| <= D) to ints."""

    r: int
    D: int
    coeffs: dict[ExponentTuple, int] = field(default_factory=dict)

    def coeff(self, nu: ExponentTuple) -> int:
        return self.coeffs.get(tuple(nu), 0)

    def set_coeff(self, nu: ExponentTuple, c: int) -> None:
        nu = tuple(nu)
        if sum(nu) > self.D:
            raise ValueError(f"tuple {nu} exceeds truncation degree {self.D}")
        if c:
            self.coeffs[nu] = c
        else:
            self.coeffs.pop(nu, None)

    def axis_coeff(self, j: int, ell: int) -> int:
        """Coefficient of x_j^ell (all other exponents zero)."""
        nu = [0] * self.r
        nu[j] = ell
        return self.coeff(tuple(nu))

    def is_symmetric(self) -> bool:
        """Invariance of the coefficient map under permuting variables."""
        for nu, c in self.coeffs.items():
            if self.coeffs.get(tuple(sorted(nu)), 0) != c:
                return False
        return True

    def to_json_dict(self) -> dict:
        rows = sorted(self.coeffs.items(), key=lambda it: (sum(it[0]), it[0]))
        return {"r": self.r, "D": self.D, "coeffs": [[list(nu), c] for nu, c in rows]}

    def pretty(self) -> str:
        """Human-readable monomial list in variables x1..xr."""
        rows = sorted(self.coeffs.items(), key=lambda it: (sum(it[0]), it[0]))
        if not rows:
            return "0"
        parts = []
        for nu, c in rows:
            mono = "*".join(
                f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}"
                for j, e in enumerate(nu)
                if e > 0
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def series_one(r: int, D: int) -> PrimeLocalSeries:
    return PrimeLocalSeries(r, D, {tuple([0] * r): 1})


def series_mul(a: PrimeLocalSeries, b: PrimeLocalSeries, D: int | None = None) -> PrimeLocalSeries:
    """Product truncated to total degree D (default: min of operand bounds)."""
    if a.r != b.r:
        raise ValueError("variable counts differ")
    if D is None:
        D = min(a.D, b.D)
    out = PrimeLocalSeries(a.r, D, {})
    for nu, c in a.coeffs.items():
        da = sum(nu)
        if da > D:
            continue
        for mu, d in b.coeffs.items():
            if da + sum(mu) > D:
                continue
            key = tuple(n + m for n, m in zip(nu, mu))
            out.coeffs[key] = out.coeffs.get(key, 0) + c * d
    out.coeffs = {nu: c for nu, c in out.coeffs.items() if c}
    return out


def _mul_one_minus_power(s: PrimeLocalSeries, j: int, a: int) -> PrimeLocalSeries:
    """Multiply by (1 - x_j^a), truncated to s.D."""
    out = PrimeLocalSeries(s.r, s.D, dict(s.coeffs))
    for nu, c in s.coeffs.items():
        if sum(nu) + a > s.D:
            continue
        key = list(nu)
        key[j] += a
        key = tuple(key)
        out.coeffs[key] = out.coeffs.get(key, 0) - c
    out.coeffs = {nu: c for nu, c in out.coeffs.items() if c}
    return out


# --- generators ----------------------------------------------------------------

@dataclass(frozen=True)
class LocalGenerator:
    """Prime-independent rule nu -> raw local Dirichlet coefficient."""

    r: int
    kind: str  # product | lcm | gcd
    fid: DivisorFunctionId
    rule: Callable[[ExponentTuple], int]


def generator_for(fid: DivisorFunctionId, kind: str, r: int) -> LocalGenerator:
    """Local coefficient rule for f applied to the product / lcm / gcd of the tuple."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if fid.kind == "mobius":
        raise ValueError("mobius has no product/lcm generator in the catalog")
    if kind == "product":
        rule = lambda nu: fid.local_value(sum(nu))
    elif kind == "lcm":
        rule = lambda nu: fid.local_value(max(nu))
    elif kind == "gcd":
        rule = lambda nu: fid.local_value(min(nu))
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return LocalGenerator(r, kind, fid, rule)


def raw_local_series(g: LocalGenerator, D: int) -> PrimeLocalSeries:
    """Raw local factor: coefficient at nu is the generator rule value."""
    if D < 0:
        raise ValueError("D must be >= 0")
    out = PrimeLocalSeries(g.r, D, {})
    for nu in tuples_up_to_degree(g.r, D):
        v = g.rule(nu)
        if v:
            out.coeffs[nu] = v
    return out


# --- zeta shapes and normalization ----------------------------------------------

def zeta_shape_for(fid: DivisorFunctionId, r: int) -> list[list[int]]:
    """Multiset of zeta-argument multipliers per variable.

    Shape [a, b] for variable j means the series carries prefactor
    zeta(a*s_j) * zeta(b*s_j); normalization multiplies the raw local factor
    by (1 - x_j^a)(1 - x_j^b).
    """
    if fid.kind == "tau1k":
        per_var = [1, fid.k]
    elif fid.kind in ("tau", "taustar"):
        per_var = [1, 1]
    elif fid.kind == "tauexp":
        per_var = [1, 2]
    else:
        raise ValueError(f"no zeta shape for {fid.kind}")
    return [list(per_var) for _ in range(r)]


def normalize(raw: PrimeLocalSeries, shape: list[list[int]], D: int | None = None) -> PrimeLocalSeries:
    """Multiply the raw local factor by the inverse zeta local factors.

    Shape entry a for variable j contributes a factor (1 - x_j^a).  The
    result is the correction-series local factor, with constant term 1.
    """
    if len(shape) != raw.r:
        raise ValueError("shape arity does not match series")
    out = raw
    if D is not None and D != raw.D:
        if D > raw.D:
            raise ValueError("cannot extend truncation beyond the raw series")
        out = PrimeLocalSeries(raw.r, D, {nu: c for nu, c in raw.coeffs.items() if sum(nu) <= D})
    for j, multipliers in enumerate(shape):
        if not multipliers:
            raise ValueError("empty zeta shape entry")
        for a in multipliers:
            out = _mul_one_minus_power(out, j, a)
    return out


def normalized_series(
    fid: DivisorFunctionId, kind: str, r: int, D: int
) -> PrimeLocalSeries:
    """Raw-series + normalize in one step, the usual entry point."""
    gen = generator_for(fid, kind, r)
    raw = raw_local_series(gen, D)
    return normalize(raw, zeta_shape_for(fid, r))


# --- closed forms from explicit formulas -----------------------------------------

def closed_form_pair_tau1k(k: int, D: int) -> PrimeLocalSeries:
    """Two-variable correction for tau1k of a product, explicit form.

    1 + sum_{j=1..k-1} x^j y^(k-j) - sum_{j=1..k} x^j y^(k+1-j).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    out = PrimeLocalSeries(2, D, {})
    out.coeffs[(0, 0)] = 1
    for j in range(1, k):
        if k <= D:
            out.coeffs[(j, k - j)] = 1
    for j in range(1, k + 1):
        if k + 1 <= D:
            out.coeffs[(j, k + 1 - j)] = -1
    return out


def closed_form_tau_elementary(r: int, D: int) -> PrimeLocalSeries:
    """r-variable correction for tau of a product: signed elementary-symmetric
    monomials, coefficient (-1)^(j-1) * (j-1) on each squarefree monomial in
    j >= 2 distinct variables."""
    from itertools import combinations

    if r < 1:
        raise ValueError("r must be >= 1")
    out = series_one(r, D)
    for j in range(2, r + 1):
        if j > D:
            break
        for subset in combinations(range(r), j):
            nu = [0] * r
            for i in subset:
                nu[i] = 1
            out.coeffs[tuple(nu)] = (-1) ** (j - 1) * (j - 1)
    return out


def closed_form_unitary(r: int, D: int) -> PrimeLocalSeries:
    """r-variable correction for the unitary divisor count: expansion of
    prod(1-x_j) * (2 - prod(1-x_j))."""
    if r < 1:
        raise ValueError("r must be >= 1")
    p = series_one(r, D)
    for j in range(r):
        p = _mul_one_minus_power(p, j, 1)
    two = PrimeLocalSeries(r, D, {tuple([0] * r): 2})
    two_minus_p = PrimeLocalSeries(r, D, dict(two.coeffs))
    for nu, c in p.coeffs.items():
        two_minus_p.coeffs[nu] = two_minus_p.coeffs.get(nu, 0) - c
    two_minus_p.coeffs = {nu: c for nu, c in two_minus_p.coeffs.items() if c}
    return series_mul(p, two_minus_p, D)


CLOSED_FORMS = {
    "tau1k-pair": closed_form_pair_tau1k,
    "tau-elementary": closed_form_tau_elementary,
    "unitary": closed_form_unitary,
}


def closed_form(name: str, param: int, D: int) -> PrimeLocalSeries:
    """Dispatch by name: tau1k-pair(k), tau-elementary(r), unitary(r)."""
    try:
        builder = CLOSED_FORMS[name]
    except KeyError:
        raise ValueError(f"unknown closed form {name!r}") from None
    return builder(param, D)


# --- comparison and diagnostics ---------------------------------------------------

def series_equal(
    a: PrimeLocalSeries, b: PrimeLocalSeries, D: int | None = None
) -> tuple[bool, ExponentTuple | None]:
    """Compare coefficients up to min(D, a.D, b.D).

    Returns (True, None) or (False, witness) with the lexicographically
    least differing exponent tuple.
    """
    if a.r != b.r:
        raise ValueError("variable counts differ")
    bound = min(a.D, b.D) if D is None else min(D, a.D, b.D)
    witness = None
    for nu in sorted(set(a.coeffs) | set(b.coeffs)):
        if sum(nu) > bound:
            continue
        if a.coeffs.get(nu, 0) != b.coeffs.get(nu, 0):
            if witness is None or nu < witness:
                witness = nu
    return (witness is None), witness


def abs_weight_sum(s: PrimeLocalSeries, sigmas: list[float], p: float = 2.0) -> float:
    """Summability diagnostic: sum of |c_nu| * p^(-nu.sigma) over stored terms.

    Grows without bound in D under a wrong normalization; stays bounded when
    the coefficients vanish where the convergence argument needs them to.
    """
    if len(sigmas) != s.r:
        raise ValueError("sigma arity mismatch")
    total = 0.0
    for nu, c in s.coeffs.items():
        w = sum(n * sg for n, sg in zip(nu, sigmas))
        total += abs(c) * p ** (-w)
    return total
