"""The canonical basis of weakly holomorphic forms and cuspidal projection.

For even weight k write k = 12*o + k' with k' in {0, 4, 6, 8, 10, 14}.  For
each m >= -o there is a unique weight-k form with expansion

    q^(-m) + (nothing between q^(-m+1) and q^o) + O(q^(o+1)),

and these span the whole space of forms holomorphic away from the cusp.  The
construction here seeds with Delta^o * E_k' (E_0 = 1, negative powers via
exact series inversion), then repeatedly multiplies by j and clears the gap
against the elements already built.  Subtracting off the basis multiples of a
form's principal part leaves a cusp form: the projection used to reduce
questions about poles to questions about cusp forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modforms import ModularForm, dim_Sk, eisenstein, delta, j_invariant, weight_decompose
from .qseries import LaurentSeries, PrecisionError


@dataclass(frozen=True)
class WeaklyForm:
    """A weakly holomorphic modular form: even weight, finite pole at infinity."""

    weight: int
    series: LaurentSeries

    def __post_init__(self):
        if self.weight % 2:
            raise ValueError("weight must be even")

    @property
    def o_k(self) -> int:
        return weight_decompose(self.weight)[0]

    @property
    def k_prime(self) -> int:
        return weight_decompose(self.weight)[1]

    @property
    def prec(self) -> int:
        return self.series.prec

    def coefficient(self, n: int):
        return self.series.coefficient_or_zero(n)

    def __add__(self, other: "WeaklyForm") -> "WeaklyForm":
        if self.weight != other.weight:
            raise ValueError("cannot add weakly forms of different weights")
        return WeaklyForm(self.weight, self.series + other.series)

    def __sub__(self, other: "WeaklyForm") -> "WeaklyForm":
        if self.weight != other.weight:
            raise ValueError("cannot subtract weakly forms of different weights")
        return WeaklyForm(self.weight, self.series - other.series)

    def scale(self, c) -> "WeaklyForm":
        return WeaklyForm(self.weight, self.series.scale(c))

    def truncate(self, prec: int) -> "WeaklyForm":
        return WeaklyForm(self.weight, self.series.truncate(prec))


def as_weakly(f) -> WeaklyForm:
    """Accept a WeaklyForm or ModularForm."""
    if isinstance(f, WeaklyForm):
        return f
    if isinstance(f, ModularForm):
        return WeaklyForm(f.weight, f.series)
    raise TypeError(f"expected a weight-tagged form, got {type(f).__name__}")


# per-weight cache of built elements; confine to one task or guard externally
_basis_cache: dict = {}


def _seed(k: int, prec: int) -> LaurentSeries:
    """Delta^o_k * E_k', the element of maximal vanishing order o_k."""
    o_k, k_prime = weight_decompose(k)
    s = LaurentSeries.one(prec + max(0, -o_k))
    if k_prime:
        s = eisenstein(k_prime, prec + max(0, -o_k)).series
    if o_k > 0:
        s = (s * delta(prec).series.pow(o_k)).truncate(prec)
    elif o_k < 0:
        dinv = delta(prec + 2 * (-o_k)).series.inverse()
        s = (s * dinv.pow(-o_k)).truncate(prec)
    return s.truncate(prec)


def _build_elements(k: int, upto_m: int, prec: int) -> list:
    """Elements for m = -o_k .. upto_m, each exact to at least the requested prec."""
    o_k, _ = weight_decompose(k)
    if prec < o_k + 1:
        raise PrecisionError(f"need prec >= o_k + 1 = {o_k + 1}")
    steps = upto_m + o_k  # number of j-multiplications from the seed
    work_prec = prec + steps + abs(o_k) + 2
    jq = j_invariant(work_prec) if steps > 0 else None
    elements = [_seed(k, work_prec)]
    for m in range(-o_k + 1, upto_m + 1):
        nxt = elements[-1] * jq
        # clear every exponent in [-m+1, o_k] against the earlier elements
        for mm in range(m - 1, -o_k - 1, -1):
            c = nxt.coefficient_or_zero(-mm)
            if c != 0:
                prev = elements[mm + o_k]
                if prev.prec > nxt.prec:
                    prev = prev.truncate(nxt.prec)
                nxt = nxt - prev.scale(c)
        elements.append(nxt)
    assert all(e.prec >= prec for e in elements)
    return [e.truncate(prec) for e in elements]


def dj_basis_element(k: int, m: int, prec: int) -> WeaklyForm:
    """The unique weight-k form q^(-m) + O(q^(o_k+1)), for m >= -o_k."""
    o_k, _ = weight_decompose(k)
    if m < -o_k:
        raise ValueError(
            f"no basis element with m = {m} < {-o_k}: the vanishing order of a "
            f"nonzero weight-{k} form is at most {o_k}"
        )
    if prec < o_k + 1:
        raise PrecisionError(f"need prec >= o_k + 1 = {o_k + 1}")
    cached = _basis_cache.get(k)
    if cached is None or cached[0] < prec or len(cached[1]) <= m + o_k:
        build_prec = max(prec, cached[0] if cached else 0)
        known_m = (len(cached[1]) - 1 - o_k) if cached else -o_k
        build_m = max(m, known_m, -o_k)
        elements = _build_elements(k, build_m, build_prec)
        _basis_cache[k] = (build_prec, elements)
        cached = _basis_cache[k]
    return WeaklyForm(k, cached[1][m + o_k].truncate(prec))


def principal_part(f) -> dict:
    """All coefficients at non-positive exponents, keyed by m >= 0 -> a(-m).

    Always includes m = 0, so a cusp form reports {0: 0}.
    """
    f = as_weakly(f)
    out = {0: f.series.coefficient_or_zero(0)}
    for n in range(f.series.valuation, 0):
        out[-n] = f.series.coefficient_or_zero(n)
    return out


def cuspidal_projection(f) -> ModularForm:
    """f minus the basis combination of its principal part: a cusp form.

    Exact; the result is checked to vanish at q^0 and below (or to be zero
    outright when the weight has no cusp forms).
    """
    f = as_weakly(f)
    o_k, _ = weight_decompose(f.weight)
    if f.series.prec < o_k + 1:
        raise PrecisionError(
            f"need prec >= o_k + 1 = {o_k + 1} to determine the projection"
        )
    result = f.series
    for m, c in sorted(principal_part(f).items()):
        if c != 0:
            elem = dj_basis_element(f.weight, m, f.series.prec)
            result = result - elem.series.scale(c)
    if not result.is_zero and result.order() < 1:
        raise ArithmeticError("projection failed to land in the cuspidal subspace")
    if dim_Sk(f.weight) == 0 and not result.is_zero:
        raise ArithmeticError(
            f"weight {f.weight} has no cusp forms but the projection is nonzero"
        )
    return ModularForm(f.weight, result, cuspidal=True)
