"""Projective ratio sets of Fourier coefficients over primes.

For two q-expansions f and g, the object of study is the set of points
[a_f(p) : a_g(p)] in the projective line, collected over primes p up to a
bound.  Proportional forms give a single point; the main phenomenon this
package exists to exhibit is that non-proportional forms spray out more and
more distinct points as the bound grows.

Deduplication is exact wherever exactness is possible: rational ratios by
Fraction equality, same-field ratios by field-element equality.  Ratios of
coefficients drawn from *different* quadratic fields are compared through
certified interval enclosures of the chosen real embeddings: intervals that
separate prove distinctness, and overlapping intervals are reported as
unresolved rather than merged, so the point count is an upper count with the
candidate coincidences listed.

Primes where both coefficients vanish define no projective point; they are
excluded from the set but logged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import NumberFieldElement
from .modforms import dim_Sk, weight_decompose
from .qseries import KindMismatchError, LaurentSeries, PrecisionError

SEPARATION_BITS = 200


def primes_upto(x: int) -> list:
    """All primes <= x by a byte sieve."""
    if x < 2:
        return []
    sieve = bytearray(b"\x01") * (x + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(x**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : x + 1 : p] = b"\x00" * ((x - start) // p + 1)
    return [i for i in range(2, x + 1) if sieve[i]]


def as_series(obj) -> LaurentSeries:
    """Accept a LaurentSeries or anything carrying one in ``.series``."""
    if isinstance(obj, LaurentSeries):
        return obj
    inner = getattr(obj, "series", None)
    if isinstance(inner, LaurentSeries):
        return inner
    raise TypeError(f"cannot read a q-expansion from {type(obj).__name__}")


@dataclass(frozen=True)
class ProjectivePoint:
    """Canonical representative: (ratio, 1) for finite points, (1, 0) at infinity.

    ``u`` is a Fraction or NumberFieldElement; number-field values that happen
    to be rational are collapsed to Fractions so equal ratios met along
    different routes deduplicate.
    """

    u: object
    v: Fraction

    @classmethod
    def finite(cls, ratio) -> "ProjectivePoint":
        if isinstance(ratio, NumberFieldElement) and ratio.is_rational():
            ratio = ratio.rational_value()
        return cls(ratio, Fraction(1))

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(Fraction(1), Fraction(0))

    @property
    def is_infinity(self) -> bool:
        return self.v == 0

    def key(self):
        if self.is_infinity:
            return ("inf",)
        if isinstance(self.u, NumberFieldElement):
            return ("nf", self.u.field.coeffs, self.u.coords)
        return ("q", self.u)

    def interval(self, embedding: int, bits: int) -> tuple:
        """Certified enclosure (lo, hi) of the real value under the embedding."""
        if self.is_infinity:
            raise ValueError("the point at infinity has no finite enclosure")
        if isinstance(self.u, NumberFieldElement):
            approx = self.u.embed(embedding, bits + 2)
            eps = Fraction(1, 2 ** (bits + 1))
            return (approx - eps, approx + eps)
        return (self.u, self.u)

    def __repr__(self):
        if self.is_infinity:
            return "[1:0]"
        return f"[{self.u}:1]"


@dataclass(frozen=True)
class RatioSet:
    """Deduplicated ratio points with full per-prime provenance."""

    X: int
    points: dict  # key -> ProjectivePoint, in first-appearance order
    log: tuple  # (p, key) for every prime contributing a point
    skipped: tuple  # primes with a_f(p) = a_g(p) = 0
    unresolved: tuple = ()  # (key1, key2) cross-field pairs not separated

    def size(self) -> int:
        return len(self.points)

    def count_upto(self, x: int) -> int:
        seen = set()
        for p, key in self.log:
            if p <= x:
                seen.add(key)
        return len(seen)

    def ratio_values(self) -> list:
        """Finite exact ratios, sorted; for compact assertions in tests."""
        finite = [pt.u for pt in self.points.values() if not pt.is_infinity]
        rationals = sorted(x for x in finite if isinstance(x, Fraction))
        others = [x for x in finite if not isinstance(x, Fraction)]
        return rationals + others

    def has_infinity(self) -> bool:
        return any(pt.is_infinity for pt in self.points.values())

    def point_ids(self) -> dict:
        """key -> stable integer id in first-appearance order."""
        return {key: i for i, key in enumerate(self.points)}

    def to_json(self) -> dict:
        ids = self.point_ids()
        return {
            "X": self.X,
            "size": self.size(),
            "skipped_primes": list(self.skipped),
            "unresolved_pairs": len(self.unresolved),
            "points": [
                {"id": ids[key], "point": repr(pt)} for key, pt in self.points.items()
            ],
        }


def _is_zero_coeff(c) -> bool:
    return c.is_zero() if isinstance(c, NumberFieldElement) else c == 0


def _classify_kinds(fs: LaurentSeries, gs: LaurentSeries):
    """same-field exact comparison, or cross-field interval comparison."""
    ff = fs.field
    gf = gs.field
    if ff is None or gf is None or ff == gf:
        return "exact"
    return "crossfield"


def ratio_set(
    f,
    g,
    X: int,
    embeddings: tuple = (0, 0),
    sep_bits: int = SEPARATION_BITS,
) -> RatioSet:
    """The set of points [a_f(p) : a_g(p)] over primes p <= X.

    Needs both expansions to precision X.  ``embeddings`` picks one real
    embedding per side and matters only when the two series live over
    different quadratic fields; in that cross-field mode two point classes
    merge only when they arise from identical exact coefficient pairs, and
    classes whose certified enclosures overlap are reported in
    ``unresolved`` instead of being merged.
    """
    fs, gs = as_series(f), as_series(g)
    if fs.prec < X or gs.prec < X:
        raise PrecisionError(
            f"ratio set to {X} needs both series to precision >= {X} "
            f"(have {fs.prec} and {gs.prec})"
        )
    mode = _classify_kinds(fs, gs)

    points: dict = {}
    log = []
    skipped = []
    for p in primes_upto(X):
        a = fs.coefficient_or_zero(p)
        b = gs.coefficient_or_zero(p)
        a_zero, b_zero = _is_zero_coeff(a), _is_zero_coeff(b)
        if a_zero and b_zero:
            skipped.append(p)
            continue
        if b_zero:
            pt = ProjectivePoint.infinity()
        else:
            pt = _finite_point(a, b, embeddings, sep_bits)
        key = pt.key()
        if key not in points:
            points[key] = pt
        log.append((p, key))

    unresolved = ()
    if mode == "crossfield":
        unresolved = tuple(
            _cross_field_audit(points, fs.field, gs.field, embeddings, sep_bits)
        )
    return RatioSet(X, points, tuple(log), tuple(skipped), unresolved)


def _finite_point(a, b, embeddings, sep_bits):
    a_nf = isinstance(a, NumberFieldElement)
    b_nf = isinstance(b, NumberFieldElement)
    if a_nf and b_nf and a.field != b.field:
        # collapse rational-valued sides so the ratio stays in one field
        if a.is_rational():
            return ProjectivePoint.finite(a.rational_value() / b)
        if b.is_rational():
            return ProjectivePoint.finite(a / b.rational_value())
        ia = _nf_interval(a, embeddings[0], sep_bits)
        ib = _nf_interval(b, embeddings[1], sep_bits)
        return _CrossPoint((a.field.coeffs, a.coords, b.field.coeffs, b.coords),
                           _interval_div(ia, ib))
    return ProjectivePoint.finite(a / b)


@dataclass(frozen=True)
class _CrossPoint:
    """A cross-field ratio: exact pair provenance plus a certified enclosure.

    Ratios merge only when the exact (numerator, denominator) pairs coincide;
    everything subtler is left to the separation audit.
    """

    pair: tuple
    enclosure: tuple

    @property
    def is_infinity(self) -> bool:
        return False

    def key(self):
        return ("cross", self.pair)

    def __repr__(self):
        lo, hi = self.enclosure
        return f"[~{float((lo + hi) / 2):.12g}:1]"


def _nf_interval(x: NumberFieldElement, embedding: int, bits: int) -> tuple:
    approx = x.embed(embedding, bits + 2)
    eps = Fraction(1, 2 ** (bits + 1))
    return (approx - eps, approx + eps)


def _interval_div(ia: tuple, ib: tuple) -> tuple:
    lo_b, hi_b = ib
    if lo_b <= 0 <= hi_b:
        raise ArithmeticError("denominator interval contains zero; raise sep_bits")
    candidates = [ia[0] / lo_b, ia[0] / hi_b, ia[1] / lo_b, ia[1] / hi_b]
    return (min(candidates), max(candidates))


def _cross_field_audit(points: dict, f_field, g_field, embeddings, sep_bits) -> list:
    """Pairs of distinct point classes whose enclosures fail to separate."""
    enclosures = []
    for key, pt in points.items():
        if pt.is_infinity:
            continue
        if isinstance(pt, _CrossPoint):
            enclosures.append((key, pt.enclosure))
        elif isinstance(pt.u, NumberFieldElement):
            idx = embeddings[0] if pt.u.field == f_field else embeddings[1]
            enclosures.append((key, _nf_interval(pt.u, idx, sep_bits)))
        else:
            enclosures.append((key, (pt.u, pt.u)))
    unresolved = []
    for i in range(len(enclosures)):
        ki, (lo_i, hi_i) = enclosures[i]
        for j in range(i + 1, len(enclosures)):
            kj, (lo_j, hi_j) = enclosures[j]
            comparable_exactly = (
                ki[0] == kj[0] == "q"
                or (ki[0] == kj[0] == "nf" and ki[1] == kj[1])
            )
            if comparable_exactly:
                continue  # exact arithmetic already settled these
            if hi_i < lo_j or hi_j < lo_i:
                continue  # certified distinct
            unresolved.append((ki, kj))
    return unresolved


def ratio_growth(f, g, X_grid) -> dict:
    """|R_X| along a grid of bounds, plus a bounded/growing verdict hint.

    The verdict is a report, not a proof: "bounded" just means the count was
    constant over the last half of the grid.  The exact proportionality test
    is the only sound way to certify the bounded side.
    """
    grid = sorted(set(int(x) for x in X_grid))
    if not grid:
        raise ValueError("empty grid")
    rs = ratio_set(f, g, grid[-1])
    counts = [(x, rs.count_upto(x)) for x in grid]
    tail = [c for _, c in counts[len(counts) // 2 :]]
    verdict = "bounded" if all(c == tail[0] for c in tail) else "growing"
    return {"counts": counts, "verdict": verdict, "ratio_set": rs}


def _weight_of(obj) -> int | None:
    w = getattr(obj, "weight", None)
    return w


def proportionality_test(f, g, k: int, pole_order: int):
    """The exact constant c with f = c*g, or None.

    Precondition: both inputs are weakly modular of weight k with pole order
    at most ``pole_order``.  Agreement of every coefficient up to
    o_k + pole_order + dim S_k + 2 then *proves* proportionality for genuine
    weight-k forms (the difference would be a form vanishing past its maximal
    possible order), so the verdict is sound rather than heuristic.
    """
    for obj in (f, g):
        w = _weight_of(obj)
        if w is not None and w != k:
            raise ValueError(f"input of weight {w} where weight {k} was required")
    fs, gs = as_series(f), as_series(g)
    if fs.valuation < -pole_order or gs.valuation < -pole_order:
        raise ValueError("input has a deeper pole than the stated pole order")
    o_k, _ = weight_decompose(k)
    need = o_k + pole_order + dim_Sk(k) + 2
    if fs.prec < need or gs.prec < need:
        raise PrecisionError(
            f"sound proportionality verdict at weight {k} needs precision >= {need}"
        )
    if fs.field is not None and gs.field is not None and fs.field != gs.field:
        raise KindMismatchError("proportionality across different fields is not exact")
    if gs.is_zero:
        return Fraction(1) if fs.is_zero else None
    if fs.is_zero:
        return Fraction(0)
    for s in (fs, gs):
        if s.order() > o_k:
            raise ValueError(
                f"vanishing order {s.order()} exceeds the valence bound {o_k}: "
                f"not a nonzero weight-{k} form"
            )
    # candidate from the leading coefficient of g
    lead = gs.order()
    a_at_lead = fs.coefficient_or_zero(lead)
    if _is_zero_coeff(a_at_lead):
        return None
    c = a_at_lead / gs.coefficient(lead)
    lo = min(fs.valuation, gs.valuation)
    for n in range(lo, need + 1):
        if fs.coefficient_or_zero(n) != c * gs.coefficient_or_zero(n):
            return None
    return c


def square_ratio_probe(f, g, X: int) -> bool:
    """True iff a_f(p)^2 = a_g(p)^2 exactly for every prime p <= X.

    When true, the ratio set is verified on the spot to sit inside
    {[1:1], [1:-1]}.
    """
    fs, gs = as_series(f), as_series(g)
    if fs.prec < X or gs.prec < X:
        raise PrecisionError(f"square-ratio probe to {X} needs precision >= {X}")
    if _classify_kinds(fs, gs) != "exact":
        raise KindMismatchError("square-ratio probe requires exactly comparable kinds")
    for p in primes_upto(X):
        a = fs.coefficient_or_zero(p)
        b = gs.coefficient_or_zero(p)
        if not _is_zero_coeff((a - b) * (a + b)):
            return False
    rs = ratio_set(fs, gs, X)
    allowed = {("q", Fraction(1)), ("q", Fraction(-1))}
    assert set(rs.points) <= allowed, "square ratios must land on [1:1] or [1:-1]"
    return True
