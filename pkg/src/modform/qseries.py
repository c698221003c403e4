"""Truncated Laurent series in q with exact coefficients.

A ``LaurentSeries`` stores the coefficients of exponents ``valuation`` through
``prec`` inclusive.  Exponents below the valuation are exactly zero; exponents
above ``prec`` are unknown, and asking for them raises instead of silently
returning zero.  Every operation computes the largest output precision that is
sound given its inputs, so a coefficient reported once never changes when the
computation is redone at higher precision.

Coefficients are homogeneous per series: all ``Fraction`` or all
``NumberFieldElement`` over one field.  Multiplication of long integer series
goes through Kronecker substitution (pack the coefficients into one big
integer, multiply once, unpack), which keeps thousand-term exact products
cheap without any external bignum dependency.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .exactnum import FieldMismatchError, MinimalPolynomial, NumberFieldElement, format_rational, parse_rational

KIND_RATIONAL = "rational"
KIND_NUMBERFIELD = "numberfield"


class KindMismatchError(ValueError):
    """Mixing rational and number-field series (or distinct fields)."""


class PrecisionError(ValueError):
    """A coefficient or operation was requested beyond the stored precision."""


# ---------------------------------------------------------------------------
# integer convolution via Kronecker substitution
# ---------------------------------------------------------------------------

_PLAIN_CUTOFF = 4096  # len(a)*len(b) below this: plain schoolbook loops


def _pack_signed(xs, nbytes: int) -> int:
    pos = bytearray(nbytes * len(xs))
    neg = bytearray(nbytes * len(xs))
    for i, x in enumerate(xs):
        if x > 0:
            pos[i * nbytes : i * nbytes + (x.bit_length() + 7) // 8] = x.to_bytes(
                (x.bit_length() + 7) // 8, "little"
            )
        elif x < 0:
            y = -x
            neg[i * nbytes : i * nbytes + (y.bit_length() + 7) // 8] = y.to_bytes(
                (y.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


def _convolve_int(a, b):
    """Exact integer convolution; returns list of length len(a)+len(b)-1."""
    n_out = len(a) + len(b) - 1
    max_a = max(map(abs, a))
    max_b = max(map(abs, b))
    if max_a == 0 or max_b == 0:
        return [0] * n_out
    nnz_a = sum(1 for x in a if x)
    nnz_b = sum(1 for x in b if x)
    if min(nnz_a, nnz_b) * max(len(a), len(b)) <= _PLAIN_CUTOFF * 16:
        out = [0] * n_out
        if nnz_a <= nnz_b:
            sparse, dense = a, b
        else:
            sparse, dense = b, a
        for i, x in enumerate(sparse):
            if x:
                for j, y in enumerate(dense):
                    if y:
                        out[i + j] += x * y
        return out
    # Kronecker substitution.  Slot width bounds |sum of products| strictly
    # below 2**(slot-1) so signed digits decode unambiguously.
    slot = (max_a * max_b * min(len(a), len(b))).bit_length() + 2
    slot = ((slot + 7) // 8) * 8
    nbytes = slot // 8
    prod = _pack_signed(a, nbytes) * _pack_signed(b, nbytes)
    half = 1 << (slot - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n_out, "little")
    raw = (prod + bias).to_bytes(nbytes * n_out + nbytes, "little")
    return [
        int.from_bytes(raw[k * nbytes : (k + 1) * nbytes], "little") - half
        for k in range(n_out)
    ]


def _convolve_fraction(a, b):
    """Exact convolution of Fraction lists, scaling to integers when long."""
    if len(a) * len(b) <= _PLAIN_CUTOFF:
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    da = lcm(*(x.denominator for x in a))
    db = lcm(*(x.denominator for x in b))
    ia = [x.numerator * (da // x.denominator) for x in a]
    ib = [x.numerator * (db // x.denominator) for x in b]
    scale = da * db
    return [Fraction(v, scale) for v in _convolve_int(ia, ib)]


def _convolve_nf(a, b, field):
    """Convolution of NumberFieldElement lists over one quadratic field."""
    if field.degree == 1:
        prod = _convolve_fraction([x.coords[0] for x in a], [x.coords[0] for x in b])
        return [NumberFieldElement(field, (v,)) for v in prod]
    a0 = [x.coords[0] for x in a]
    a1 = [x.coords[1] for x in a]
    b0 = [x.coords[0] for x in b]
    b1 = [x.coords[1] for x in b]
    p00 = _convolve_fraction(a0, b0)
    p11 = _convolve_fraction(a1, b1)
    mixed = _convolve_fraction(
        [x + y for x, y in zip(a0, a1)], [x + y for x, y in zip(b0, b1)]
    )
    c0poly, c1poly = field.coeffs[0], field.coeffs[1]
    out = []
    for u, v, w in zip(p00, p11, mixed):
        cross = w - u - v  # a0*b1 + a1*b0
        out.append(NumberFieldElement(field, (u - v * c0poly, cross - v * c1poly)))
    return out


# ---------------------------------------------------------------------------
# LaurentSeries
# ---------------------------------------------------------------------------


class LaurentSeries:
    """Exact truncated Laurent series: sum of coeffs[n-valuation] * q^n."""

    __slots__ = ("valuation", "prec", "coeffs", "kind", "field")

    def __init__(self, valuation: int, coeffs, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            if not coeffs:
                raise ValueError("empty coefficient list needs an explicit prec")
            prec = valuation + len(coeffs) - 1
        if prec < valuation:
            raise ValueError(f"prec {prec} below valuation {valuation}")
        if len(coeffs) != prec - valuation + 1:
            raise ValueError("coefficient list length does not match prec - valuation + 1")

        kind = KIND_RATIONAL
        field = None
        for c in coeffs:
            if isinstance(c, NumberFieldElement):
                kind = KIND_NUMBERFIELD
                field = c.field
                break
        if kind == KIND_RATIONAL:
            coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        else:
            fixed = []
            for c in coeffs:
                if isinstance(c, NumberFieldElement):
                    if c.field != field:
                        raise KindMismatchError("mixed number fields within one series")
                    fixed.append(c)
                else:
                    fixed.append(NumberFieldElement.from_rational(field, c))
            coeffs = fixed

        # Normalize: advance the valuation past leading zeros so the leading
        # stored coefficient is nonzero unless the series is identically zero.
        first = 0
        while first < len(coeffs) - 1 and self._iszero(coeffs[first]):
            first += 1
        if first == len(coeffs) - 1 and self._iszero(coeffs[first]):
            # identically zero up to prec: canonical storage
            valuation = prec
            coeffs = coeffs[first:]
        elif first:
            valuation += first
            coeffs = coeffs[first:]

        self.valuation = valuation
        self.prec = prec
        self.coeffs = tuple(coeffs)
        self.kind = kind
        self.field = field

    @staticmethod
    def _iszero(c) -> bool:
        return c.is_zero() if isinstance(c, NumberFieldElement) else c == 0

    def _zero_coeff(self):
        if self.kind == KIND_NUMBERFIELD:
            return NumberFieldElement.zero(self.field)
        return Fraction(0)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, prec: int, field: MinimalPolynomial | None = None) -> "LaurentSeries":
        c = NumberFieldElement.zero(field) if field is not None else Fraction(0)
        return cls(prec, [c], prec)

    @classmethod
    def constant(cls, value, prec: int) -> "LaurentSeries":
        if prec < 0:
            raise ValueError("constant series needs prec >= 0")
        zero = Fraction(0) if not isinstance(value, NumberFieldElement) else NumberFieldElement.zero(value.field)
        return cls(0, [value] + [zero] * prec, prec)

    @classmethod
    def one(cls, prec: int) -> "LaurentSeries":
        return cls.constant(Fraction(1), prec)

    @classmethod
    def monomial(cls, exponent: int, prec: int, coeff=1) -> "LaurentSeries":
        if prec < exponent:
            raise ValueError("prec below the monomial exponent")
        zero = Fraction(0) if not isinstance(coeff, NumberFieldElement) else NumberFieldElement.zero(coeff.field)
        return cls(exponent, [coeff] + [zero] * (prec - exponent), prec)

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(self._iszero(c) for c in self.coeffs)

    def order(self) -> int:
        """Exponent of the leading nonzero coefficient; undefined for zero."""
        if self.is_zero:
            raise ValueError("order of the zero series is undefined")
        return self.valuation

    def coefficient(self, n: int):
        """The stored coefficient of q^n; raises outside [valuation, prec]."""
        if n > self.prec:
            raise PrecisionError(f"coefficient of q^{n} beyond stored precision {self.prec}")
        if n < self.valuation:
            raise PrecisionError(
                f"coefficient of q^{n} below the valuation {self.valuation}"
            )
        return self.coeffs[n - self.valuation]

    def coefficient_or_zero(self, n: int):
        """Like :meth:`coefficient`, but exponents below the valuation are 0."""
        if n > self.prec:
            raise PrecisionError(f"coefficient of q^{n} beyond stored precision {self.prec}")
        if n < self.valuation:
            return self._zero_coeff()
        return self.coeffs[n - self.valuation]

    # -- kind handling ----------------------------------------------------

    def promote(self, field: MinimalPolynomial) -> "LaurentSeries":
        """Reinterpret a rational series over the given number field."""
        if self.kind == KIND_NUMBERFIELD:
            if self.field != field:
                raise KindMismatchError("series already lives over a different field")
            return self
        coeffs = [NumberFieldElement.from_rational(field, c) for c in self.coeffs]
        return LaurentSeries(self.valuation, coeffs, self.prec)

    def _unify(self, other: "LaurentSeries"):
        if self.kind == other.kind:
            if self.kind == KIND_NUMBERFIELD and self.field != other.field:
                raise KindMismatchError("series live over different number fields")
            return self, other
        raise KindMismatchError("rational and number-field series do not mix implicitly")

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        a, b = self._unify(other)
        val = min(a.valuation, b.valuation)
        prec = min(a.prec, b.prec)
        if prec < val:
            raise PrecisionError("operands share no sound coefficient range")
        out = []
        for n in range(val, prec + 1):
            out.append(a.coefficient_or_zero(n) + b.coefficient_or_zero(n))
        return LaurentSeries(val, out, prec)

    def __neg__(self):
        return LaurentSeries(self.valuation, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "LaurentSeries":
        """Multiply by an exact scalar (precision unchanged)."""
        if isinstance(scalar, NumberFieldElement) and self.kind == KIND_RATIONAL:
            return self.promote(scalar.field).scale(scalar)
        if self._iszero_scalar(scalar):
            return LaurentSeries.zero(self.prec, self.field)
        return LaurentSeries(self.valuation, [c * scalar for c in self.coeffs], self.prec)

    @staticmethod
    def _iszero_scalar(s) -> bool:
        return s.is_zero() if isinstance(s, NumberFieldElement) else s == 0

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by q^m (exact; both valuation and precision shift)."""
        return LaurentSeries(self.valuation + m, list(self.coeffs), self.prec + m)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        if self.kind != other.kind:
            if self.kind == KIND_RATIONAL:
                return self.promote(other.field) * other
            return self * other.promote(self.field)
        a, b = self._unify(other)
        prec = min(a.prec + b.valuation, b.prec + a.valuation)
        val = a.valuation + b.valuation
        if prec < val:
            raise PrecisionError("product has no sound coefficients at these precisions")
        if a.is_zero or b.is_zero:
            return LaurentSeries.zero(prec, a.field)
        if a.kind == KIND_NUMBERFIELD:
            conv = _convolve_nf(list(a.coeffs), list(b.coeffs), a.field)
        else:
            conv = _convolve_fraction(list(a.coeffs), list(b.coeffs))
        return LaurentSeries(val, conv[: prec - val + 1], prec)

    def __rmul__(self, other):
        return self.scale(other)

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse by Newton iteration.

        Requires a nonzero leading coefficient.  Output valuation is
        -valuation and output precision is prec - 2*valuation, which is the
        largest sound choice.
        """
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero series")
        lead = self.coeffs[0]
        v = self.valuation
        rel = self.prec - v  # number of known terms past the leading one
        if self.kind == KIND_NUMBERFIELD:
            inv_lead = lead.inverse()
            one = NumberFieldElement.one(self.field)
        else:
            inv_lead = 1 / lead
            one = Fraction(1)
        # normalized u = 1 + u1 q + ...; invert to rel+1 terms
        u = [c * inv_lead for c in self.coeffs]
        b = [one]
        m = 1
        while m < rel + 1:
            m2 = min(2 * m, rel + 1)
            e = self._list_mul(u[:m2], b, m2)  # = u*b = 1 + O(q^m)
            corr = [-c for c in e[m:m2]]
            if any(not self._iszero(c) for c in corr):
                t = self._list_mul(b, corr, m2 - m)
                b = b + [self._zero_coeff()] * (m2 - len(b))
                for i, c in enumerate(t):
                    b[m + i] = b[m + i] + c
            else:
                b = b + [self._zero_coeff()] * (m2 - len(b))
            m = m2
        coeffs = [c * inv_lead for c in b]
        return LaurentSeries(-v, coeffs, self.prec - 2 * v)

    def _list_mul(self, xs, ys, keep: int):
        if self.kind == KIND_NUMBERFIELD:
            out = _convolve_nf(xs, ys, self.field)
        else:
            out = _convolve_fraction(xs, ys)
        return out[:keep]

    def pow(self, e: int) -> "LaurentSeries":
        """Integer power by repeated squaring; negative e inverts first."""
        if e < 0:
            return self.inverse().pow(-e)
        if e == 0:
            return LaurentSeries.one(self.prec - self.valuation)
        base = self
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __pow__(self, e: int):
        return self.pow(e)

    def truncate(self, new_prec: int) -> "LaurentSeries":
        """Forget coefficients beyond new_prec (never extends knowledge)."""
        if new_prec > self.prec:
            raise PrecisionError("truncate cannot raise precision")
        if new_prec == self.prec:
            return self
        if new_prec < self.valuation:
            return LaurentSeries.zero(new_prec, self.field)
        return LaurentSeries(
            self.valuation, list(self.coeffs[: new_prec - self.valuation + 1]), new_prec
        )

    # -- comparisons ------------------------------------------------------

    def _key(self):
        first = 0
        cs = self.coeffs
        while first < len(cs) and self._iszero(cs[first]):
            first += 1
        return (self.prec, self.valuation + first if first < len(cs) else None, cs[first:], self.field)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def agrees_with(self, other: "LaurentSeries", upto: int) -> bool:
        """Exact agreement of all coefficients of exponent <= upto."""
        if self.prec < upto or other.prec < upto:
            raise PrecisionError("agreement check beyond stored precision")
        lo = min(self.valuation, other.valuation)
        return all(
            self.coefficient_or_zero(n) == other.coefficient_or_zero(n)
            for n in range(lo, upto + 1)
        )

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == KIND_NUMBERFIELD:
            coeffs = [c.to_json() for c in self.coeffs]
        else:
            coeffs = [format_rational(c) for c in self.coeffs]
        return {"valuation": self.valuation, "prec": self.prec, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data) -> "LaurentSeries":
        raw = data["coeffs"]
        coeffs = []
        for c in raw:
            if isinstance(c, dict):
                coeffs.append(NumberFieldElement.from_json(c))
            else:
                coeffs.append(parse_rational(str(c)))
        return cls(int(data["valuation"]), coeffs, int(data["prec"]))

    def csv_rows(self):
        """(n, coefficient-string) rows for every stored exponent."""
        for n in range(self.valuation, self.prec + 1):
            c = self.coefficient_or_zero(n)
            if isinstance(c, NumberFieldElement):
                yield n, ";".join(format_rational(x) for x in c.coords)
            else:
                yield n, format_rational(c)

    def __repr__(self):
        terms = []
        shown = 0
        for n in range(self.valuation, self.prec + 1):
            c = self.coeffs[n - self.valuation]
            if self._iszero(c):
                continue
            if n == 0:
                terms.append(f"{c}")
            elif n == 1:
                terms.append(f"{c}*q")
            else:
                terms.append(f"{c}*q^{n}")
            shown += 1
            if shown >= 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O(q^{self.prec + 1})>"


# ---------------------------------------------------------------------------
# operation-style wrappers
# ---------------------------------------------------------------------------


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def series_sub(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a - b


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def series_inv(a: LaurentSeries) -> LaurentSeries:
    return a.inverse()


def series_pow(a: LaurentSeries, e: int) -> LaurentSeries:
    return a.pow(e)


def coefficient(a: LaurentSeries, n: int):
    return a.coefficient(n)
