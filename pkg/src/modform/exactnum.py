"""Exact scalar arithmetic: rationals and real quadratic number field elements.

Every q-expansion coefficient in this package is either a ``fractions.Fraction``
or a ``NumberFieldElement`` over a fixed quadratic field.  All arithmetic is
exact; approximation enters only through ``nf_embed``, which returns a Fraction
within a certified distance of the true real embedding.

Number field support is deliberately capped at degree 2: that covers every
Hecke eigenvalue field occurring for cusp forms of weight at most 26 on the
full modular group, and avoids general polynomial factorisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Rational = Fraction


class FieldMismatchError(ValueError):
    """Combining number field elements that live over different fields."""


class DegreeCapError(ValueError):
    """Minimal polynomial of degree 3 or higher (unsupported by design)."""


class RootIsolationError(ValueError):
    """The requested real root of a minimal polynomial does not exist."""


def format_rational(x: Fraction) -> str:
    """Serialize a rational as ``p`` or ``p/q`` (always reduced, q > 0)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Inverse of :func:`format_rational`; round-trips bit-exactly."""
    return Fraction(s.strip())


def _is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_rational_square(x: Fraction) -> bool:
    """True iff x is the square of a rational number."""
    return _is_perfect_square(x.numerator) and _is_perfect_square(x.denominator)


def exact_sqrt(x: Fraction) -> Fraction:
    """Exact nonnegative square root of a rational square."""
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(isqrt(x.numerator), isqrt(x.denominator))


def sqrt_lower(x: Fraction, bits: int) -> Fraction:
    """Lower approximation s of sqrt(x) with 0 <= sqrt(x) - s <= 2**-bits.

    Exact integer square roots throughout; requires x >= 0.
    """
    if x < 0:
        raise ValueError("square root of a negative rational")
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den; floor-scale by 2**bits.
    t = isqrt((num * den) << (2 * bits))
    return Fraction(t, den << bits)


@dataclass(frozen=True)
class MinimalPolynomial:
    """Monic polynomial c0 + c1*x + ... + x^t over Q, irreducible, t <= 2.

    ``coeffs`` lists coefficients from the constant term up, including the
    leading 1.  Irreducibility for t = 2 is certified by the discriminant not
    being a rational square; degree >= 3 inputs are rejected outright.
    """

    coeffs: tuple

    def __init__(self, coeffs):
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) < 2:
            raise ValueError("minimal polynomial needs degree >= 1")
        if len(cs) > 3:
            raise DegreeCapError(
                f"degree {len(cs) - 1} minimal polynomial: only degree <= 2 supported"
            )
        if cs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if len(cs) == 3 and is_rational_square(cs[1] * cs[1] - 4 * cs[0]):
            raise ValueError("reducible quadratic: discriminant is a rational square")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def discriminant(self) -> Fraction:
        if self.degree == 1:
            return Fraction(1)
        return self.coeffs[1] * self.coeffs[1] - 4 * self.coeffs[0]

    def is_totally_real(self) -> bool:
        return self.degree == 1 or self.discriminant > 0

    def real_roots(self, bits: int = 64) -> tuple:
        """Real roots, ascending, as Fractions within 2**-bits of the truth.

        Deterministic embedding order for the whole package: embeddings are
        indexed by ascending root value.
        """
        if self.degree == 1:
            return (-self.coeffs[0],)
        disc = self.discriminant
        if disc < 0:
            raise RootIsolationError("minimal polynomial has no real roots")
        s = sqrt_lower(disc, bits + 3)
        c1 = self.coeffs[1]
        return ((-c1 - s) / 2, (-c1 + s) / 2)

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "MinimalPolynomial":
        return cls([parse_rational(str(c)) for c in data])

    def __repr__(self):
        return f"MinimalPolynomial({[format_rational(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class NumberFieldElement:
    """Element of Q[x]/(m(x)) in the power basis 1, t, ..., t^(deg-1)."""

    field: MinimalPolynomial
    coords: tuple

    def __init__(self, field, coords):
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != field.degree:
            raise ValueError("coordinate vector length must equal the field degree")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", cs)

    @classmethod
    def from_rational(cls, field: MinimalPolynomial, value) -> "NumberFieldElement":
        coords = [Fraction(value)] + [Fraction(0)] * (field.degree - 1)
        return cls(field, coords)

    @classmethod
    def zero(cls, field: MinimalPolynomial) -> "NumberFieldElement":
        return cls.from_rational(field, 0)

    @classmethod
    def one(cls, field: MinimalPolynomial) -> "NumberFieldElement":
        return cls.from_rational(field, 1)

    @classmethod
    def generator(cls, field: MinimalPolynomial) -> "NumberFieldElement":
        """The class t of x, i.e. coords (0, 1); for degree 1 the root itself."""
        if field.degree == 1:
            return cls(field, (-field.coeffs[0],))
        return cls(field, (0, 1))

    # -- coercion -------------------------------------------------------

    def _coerce(self, other) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise FieldMismatchError("elements live over different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement.from_rational(self.field, other)
        raise TypeError(f"cannot coerce {type(other).__name__} into the field")

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (self.coords[0] * o.coords[0],))
        a0, a1 = self.coords
        b0, b1 = o.coords
        c0, c1 = self.field.coeffs[0], self.field.coeffs[1]
        # t^2 = -c1*t - c0
        cross = a1 * b1
        return NumberFieldElement(
            self.field,
            (a0 * b0 - cross * c0, a0 * b1 + a1 * b0 - cross * c1),
        )

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero number field element")
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (1 / self.coords[0],))
        a0, a1 = self.coords
        c0, c1 = self.field.coeffs[0], self.field.coeffs[1]
        # conj(a0 + a1*t) = (a0 - a1*c1) - a1*t; norm = a0^2 - a0*a1*c1 + a1^2*c0
        norm = a0 * a0 - a0 * a1 * c1 + a1 * a1 * c0
        return NumberFieldElement(self.field, ((a0 - a1 * c1) / norm, -a1 / norm))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "NumberFieldElement":
        """The image under the nontrivial field automorphism (identity if t = 1)."""
        if self.field.degree == 1:
            return self
        a0, a1 = self.coords
        c1 = self.field.coeffs[1]
        # t + conj(t) = -c1
        return NumberFieldElement(self.field, (a0 - a1 * c1, -a1))

    # -- embeddings -----------------------------------------------------

    def embed(self, which: int, bits: int = 64) -> Fraction:
        """Fraction within 2**-bits of the image under the ``which``-th real embedding."""
        if not 0 <= which < self.field.degree:
            raise ValueError(f"embedding index {which} out of range")
        if self.field.degree == 1 or self.is_rational():
            return self.coords[0]
        a0, a1 = self.coords
        # Guard bits absorb the multiplication by a1.
        guard = max(abs(a1.numerator).bit_length(), 1) + 4
        root = self.field.real_roots(bits + guard)[which]
        return a0 + a1 * root

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "minpoly": self.field.to_json(),
            "coords": [format_rational(c) for c in self.coords],
        }

    @classmethod
    def from_json(cls, data) -> "NumberFieldElement":
        field = MinimalPolynomial.from_json(data["minpoly"])
        return cls(field, [parse_rational(str(c)) for c in data["coords"]])

    def __repr__(self):
        if self.field.degree == 1:
            return format_rational(self.coords[0])
        a0, a1 = self.coords
        return f"({format_rational(a0)} + {format_rational(a1)}*t)"


def nf_arith(a: NumberFieldElement, b: NumberFieldElement, op: str) -> NumberFieldElement:
    """Exact field arithmetic; ``op`` is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def nf_embed(a: NumberFieldElement, which: int, bits: int = 64) -> Fraction:
    """Real embedding of ``a``, certified to absolute error <= 2**-bits."""
    return a.embed(which, bits)
