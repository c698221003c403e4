"""Holomorphic modular forms of even weight on the full modular group.

Generators (Eisenstein series, delta, j), dimension formulas from the
decomposition k = 12*o + k' with k' in {0, 4, 6, 8, 10, 14}, the echelonized
Miller basis, Hecke operators, and the coefficient-size report used when
separating cusp forms from forms with poles.

Everything is exact.  A small module-level cache keeps the generators at the
highest precision computed so far; requests at lower precision are served by
truncation, so reported coefficients never change between calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactnum import NumberFieldElement
from .qseries import KIND_NUMBERFIELD, LaurentSeries, PrecisionError

_bernoulli_cache: list = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m via sum_j C(m+1, j) B_j = 0 (B_1 = -1/2)."""
    if m < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    while len(_bernoulli_cache) <= m:
        n = len(_bernoulli_cache)
        acc = sum(comb(n + 1, j) * _bernoulli_cache[j] for j in range(n))
        _bernoulli_cache.append(Fraction(-acc, n + 1))
    return _bernoulli_cache[m]


def sigma_list(power: int, prec: int) -> list:
    """[sigma_power(1), ..., sigma_power(prec)] by one divisor sweep."""
    acc = [0] * (prec + 1)
    for d in range(1, prec + 1):
        e = d**power
        for n in range(d, prec + 1, d):
            acc[n] += e
    return acc[1:]


def weight_decompose(k: int) -> tuple:
    """(o_k, k') with k = 12*o_k + k' and k' in {0, 4, 6, 8, 10, 14}."""
    if k % 2:
        raise ValueError(f"weight {k} is odd")
    r = k % 12
    if r == 2:
        return (k - 14) // 12, 14
    return (k - r) // 12, r


def dim_Mk(k: int) -> int:
    """Dimension of the space of holomorphic forms of weight k."""
    if k % 2:
        raise ValueError(f"weight {k} is odd")
    if k < 0:
        return 0
    o_k, _ = weight_decompose(k)
    return max(o_k + 1, 0)


def dim_Sk(k: int) -> int:
    """Dimension of the cuspidal subspace."""
    if k % 2:
        raise ValueError(f"weight {k} is odd")
    if k < 4:
        return 0
    return max(dim_Mk(k) - 1, 0)


@dataclass(frozen=True)
class ModularForm:
    """A holomorphic modular form: even weight, q-expansion with valuation >= 0."""

    weight: int
    series: LaurentSeries
    cuspidal: bool = False

    def __post_init__(self):
        if self.weight % 2:
            raise ValueError("weight must be even")
        if self.series.valuation < 0:
            raise ValueError("holomorphic forms have no pole at infinity")
        if self.cuspidal and not self.series.is_zero:
            if self.series.coefficient_or_zero(0) != 0:
                raise ValueError("cuspidal form with nonzero constant term")

    @property
    def prec(self) -> int:
        return self.series.prec

    def coefficient(self, n: int):
        return self.series.coefficient_or_zero(n)

    def __add__(self, other: "ModularForm") -> "ModularForm":
        if self.weight != other.weight:
            raise ValueError("cannot add forms of different weights")
        return ModularForm(
            self.weight, self.series + other.series, self.cuspidal and other.cuspidal
        )

    def __sub__(self, other: "ModularForm") -> "ModularForm":
        if self.weight != other.weight:
            raise ValueError("cannot subtract forms of different weights")
        return ModularForm(
            self.weight, self.series - other.series, self.cuspidal and other.cuspidal
        )

    def scale(self, c) -> "ModularForm":
        return ModularForm(self.weight, self.series.scale(c), self.cuspidal)

    def __mul__(self, other: "ModularForm") -> "ModularForm":
        if not isinstance(other, ModularForm):
            return NotImplemented
        return ModularForm(
            self.weight + other.weight,
            self.series * other.series,
            self.cuspidal or other.cuspidal,
        )

    def truncate(self, prec: int) -> "ModularForm":
        return ModularForm(self.weight, self.series.truncate(prec), self.cuspidal)


# ---------------------------------------------------------------------------
# generators with a grow-only cache
# ---------------------------------------------------------------------------

_generator_cache: dict = {}


def _cached(name: str, prec: int, builder):
    """Serve from the cache, truncating; rebuild only when more is needed.

    Confine concurrent use to one task or guard externally; the cache itself
    is a plain dict.
    """
    have = _generator_cache.get(name)
    if have is None or have.prec < prec:
        have = builder(prec)
        _generator_cache[name] = have
    return have.truncate(prec)


def eisenstein(k: int, prec: int) -> ModularForm:
    """E_k = 1 - (2k/B_k) sum sigma_(k-1)(n) q^n, normalized constant term 1."""
    if k % 2 or k < 4:
        raise ValueError(f"Eisenstein series needs even weight >= 4, got {k}")
    if prec < 0:
        raise ValueError("prec must be >= 0")

    def build(p: int) -> LaurentSeries:
        factor = Fraction(-2 * k, 1) / bernoulli(k)
        sig = sigma_list(k - 1, p)
        coeffs = [Fraction(1)] + [factor * s for s in sig]
        return LaurentSeries(0, coeffs, p)

    series = _cached(f"E{k}", prec, build)
    return ModularForm(k, series)


def delta(prec: int) -> ModularForm:
    """The discriminant cusp form Delta = (E4^3 - E6^2)/1728."""
    if prec < 1:
        raise ValueError("Delta needs prec >= 1")

    def build(p: int) -> LaurentSeries:
        e4 = eisenstein(4, p).series
        e6 = eisenstein(6, p).series
        return (e4.pow(3) - e6.pow(2)).scale(Fraction(1, 1728))

    return ModularForm(12, _cached("Delta", prec, build), cuspidal=True)


def delta_product(prec: int) -> ModularForm:
    """Delta by the product formula q*prod(1-q^n)^24: the independent route.

    Uses the pentagonal-number expansion of prod(1-q^n) and four squarings,
    sharing no code path with the Eisenstein construction in :func:`delta`.
    """
    if prec < 1:
        raise ValueError("Delta needs prec >= 1")

    def build(p: int) -> LaurentSeries:
        eta = [0] * p  # prod(1-q^n) to O(q^p), exponents 0..p-1
        k = 0
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 >= p and g2 >= p:
                break
            sign = -1 if k % 2 else 1
            if g1 < p:
                eta[g1] += sign
            if k and g2 < p:
                eta[g2] += sign
            k += 1
        s = LaurentSeries(0, [Fraction(c) for c in eta], p - 1)
        s8 = s.pow(8).truncate(p - 1)
        s24 = (s8.pow(2).truncate(p - 1) * s8).truncate(p - 1)
        return s24.shift(1)

    return ModularForm(12, _cached("DeltaProduct", prec, build), cuspidal=True)


def j_invariant(prec: int) -> LaurentSeries:
    """The modular function j = E4^3 / Delta, valuation -1."""

    def build(p: int) -> LaurentSeries:
        e4cubed = eisenstein(4, p + 2).series.pow(3)
        dinv = delta(p + 2).series.inverse()
        return (e4cubed * dinv).truncate(p)

    return _cached("j", prec, build)


# ---------------------------------------------------------------------------
# Miller basis
# ---------------------------------------------------------------------------


_miller_cache: dict = {}


def miller_basis(k: int, prec: int) -> list:
    """Echelon basis g_0, ..., g_(d-1) of weight k with g_i = q^i + O(q^d).

    Spanning monomials are Delta^i * E4^a * E6^b with 4a + 6b = k - 12i; the
    reduction is exact Gaussian elimination from the top valuation down.
    Results grow-only cached per weight.
    """
    if k % 2:
        raise ValueError("weight must be even")
    d = dim_Mk(k)
    if d == 0:
        return []
    if prec < d:
        prec = d  # need at least the pivot window
    have = _miller_cache.get(k)
    if have is not None and have[0].prec >= prec:
        return [g.truncate(prec) for g in have]
    basis = _miller_basis_fresh(k, d, prec)
    _miller_cache[k] = basis
    return basis


def _miller_basis_fresh(k: int, d: int, prec: int) -> list:
    raw = []
    e4 = e6 = dl = None
    for i in range(d):
        rem = k - 12 * i
        if rem % 4 == 0:
            a, b = rem // 4, 0
        else:
            a, b = (rem - 6) // 4, 1
        s = LaurentSeries.one(prec)
        if i:
            if dl is None:
                dl = delta(prec).series
            s = dl.pow(i).truncate(prec)
        if a:
            if e4 is None:
                e4 = eisenstein(4, prec).series
            s = (s * e4.pow(a)).truncate(prec)
        if b:
            if e6 is None:
                e6 = eisenstein(6, prec).series
            s = (s * e6).truncate(prec)
        raw.append(s)
    # raw[i] = q^i + ...; clear columns i+1..d-1 using later pivots
    basis = [None] * d
    for i in range(d - 1, -1, -1):
        s = raw[i]
        for j in range(i + 1, d):
            c = s.coefficient_or_zero(j)
            if c != 0:
                s = s - basis[j].series.scale(c)
        basis[i] = ModularForm(k, s, cuspidal=(i > 0))
    return basis


# ---------------------------------------------------------------------------
# Hecke operators
# ---------------------------------------------------------------------------


def hecke_tp_series(series: LaurentSeries, weight: int, p: int) -> LaurentSeries:
    """Action on q-expansions: (T_p f)(n) = a(pn) + p^(k-1) a(n/p).

    Valid for holomorphic expansions (valuation >= 0).  Output precision is
    floor(prec / p).
    """
    if p < 2:
        raise ValueError("Hecke index must be a prime >= 2")
    if series.valuation < 0:
        raise ValueError("Hecke action implemented for holomorphic expansions only")
    out_prec = series.prec // p
    if out_prec < 1 and not series.is_zero:
        raise PrecisionError(
            f"need precision >= {p} to apply T_{p} (have {series.prec})"
        )
    pk = Fraction(p) ** (weight - 1)
    coeffs = []
    for n in range(0, out_prec + 1):
        c = series.coefficient_or_zero(p * n)
        if n % p == 0:
            c = c + series.coefficient_or_zero(n // p) * pk
        coeffs.append(c)
    return LaurentSeries(0, coeffs, out_prec)


def hecke_Tp(f: ModularForm, p: int) -> ModularForm:
    """Hecke operator T_p on a holomorphic form; cuspidality is preserved."""
    return ModularForm(f.weight, hecke_tp_series(f.series, f.weight, p), f.cuspidal)


def hecke_bound_report(f: ModularForm, N: int) -> Fraction:
    """max over 1 <= n <= N of |a(n)| / n^(k/2) for a cusp form.

    For number-field coefficients the absolute value is the largest among the
    real embeddings (certified Fraction approximations); the returned maximum
    is then itself an approximation good to ~2^-48.
    """
    if not f.cuspidal:
        raise ValueError("Hecke bound report applies to cusp forms")
    if f.prec < N:
        raise PrecisionError(f"need {N} coefficients, have {f.prec}")
    half = f.weight // 2
    best = Fraction(0)
    for n in range(1, N + 1):
        a = f.series.coefficient_or_zero(n)
        if isinstance(a, NumberFieldElement):
            mag = max(abs(a.embed(i, 56)) for i in range(a.field.degree))
        else:
            mag = abs(a)
        ratio = mag / Fraction(n) ** half
        if ratio > best:
            best = ratio
    return best


def valence_check(f, k: int | None = None) -> bool:
    """True iff ord_infinity(f) <= o_k, the valence bound for nonzero forms."""
    series = f.series if hasattr(f, "series") else f
    if k is None:
        k = f.weight
    if series.is_zero:
        raise ValueError("valence bound is undefined for the zero series")
    o_k, _ = weight_decompose(k)
    return series.order() <= o_k
