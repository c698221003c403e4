"""Numerical growth diagnostics for Fourier coefficients.

Coefficients of forms with a pole grow like e^(4*pi*sqrt(m*n)), far beyond
double range for moderate n, while the exact integers involved run to
thousands of bits.  All size comparisons therefore happen in log-space: an
exact integer or rational converts to (sign, log|value|) without ever building
a float of its magnitude.  The expected main growth term and the exponential
sums and Bessel function entering it are provided alongside diagnostics that
track how quickly a(n) divided by the main term stabilizes.  The limiting
constants themselves are never asserted, only the stabilization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import NumberFieldElement
from .qseries import PrecisionError


def log_abs_exact(x) -> float:
    """Natural log of |x| for an exact int/Fraction of any size; x != 0."""
    if isinstance(x, Fraction):
        return log_abs_exact(x.numerator) - log_abs_exact(x.denominator)
    n = abs(int(x))
    if n == 0:
        raise ValueError("log of zero")
    if n.bit_length() <= 900:
        return math.log(n)
    shift = n.bit_length() - 64
    return math.log(n >> shift) + shift * math.log(2)


@dataclass(frozen=True)
class LogMagnitude:
    """A signed quantity stored as (sign, log of absolute value)."""

    sign: int
    log_abs: float = float("-inf")

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0, or +1")

    @classmethod
    def from_exact(cls, x) -> "LogMagnitude":
        if isinstance(x, NumberFieldElement):
            raise TypeError("embed number field values before taking magnitudes")
        if x == 0:
            return cls(0)
        return cls(1 if x > 0 else -1, log_abs_exact(x))

    @classmethod
    def from_log(cls, sign: int, log_abs: float) -> "LogMagnitude":
        return cls(sign, log_abs)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        if self.sign == 0 or other.sign == 0:
            return LogMagnitude(0)
        return LogMagnitude(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: "LogMagnitude") -> "LogMagnitude":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero magnitude")
        if self.sign == 0:
            return LogMagnitude(0)
        return LogMagnitude(self.sign * other.sign, self.log_abs - other.log_abs)

    def value(self) -> float:
        """The float this represents; raises on overflow rather than inf."""
        if self.sign == 0:
            return 0.0
        if self.log_abs > 700:
            raise OverflowError("magnitude exceeds double range; stay in log-space")
        return self.sign * math.exp(self.log_abs)


def kloosterman_A(m: int, c: int, n: int) -> complex:
    """sum over d in [0, c), gcd(d, c) = 1, of e((n*d - m*a)/c), a*d = 1 mod c.

    Double-precision complex; the c = 1 term (always 1) is the only value
    entering the main growth term.
    """
    if m < 1 or n < 1 or c < 1:
        raise ValueError("arguments must be positive")
    total = 0j
    for d in range(c):
        if math.gcd(d, c) != 1:
            continue
        a = pow(d, -1, c)
        total += cmath.exp(2j * cmath.pi * (n * d - m * a) / c)
    return total


def bessel_I(order: int, z: float) -> float:
    """Modified Bessel function by its power series, summed to convergence.

    Terms are added until the next one drops below 2**-64 of the partial sum.
    Raises OverflowError once e^z leaves double range; use
    :func:`bessel_I_log` there.
    """
    if order < 0 or z < 0:
        raise ValueError("order and argument must be nonnegative")
    if z > 700:
        raise OverflowError("argument too large for double range; use bessel_I_log")
    half = z / 2.0
    term = half**order / math.factorial(order)
    total = term
    t = 0
    while term > total * 2.0**-64:
        t += 1
        term *= half * half / (t * (order + t))
        total += term
    return total


def bessel_I_log(order: int, z: float) -> LogMagnitude:
    """log-space evaluation of the same series, valid for large arguments."""
    if order < 0 or z < 0:
        raise ValueError("order and argument must be nonnegative")
    if z == 0:
        return LogMagnitude.from_exact(1 if order == 0 else 0)
    loghalf = math.log(z / 2.0)
    # log of term t; the maximum sits near t ~ z/2
    def logterm(t: int) -> float:
        return (order + 2 * t) * loghalf - math.lgamma(t + 1) - math.lgamma(order + t + 1)

    peak = max(0, int(z / 2))
    logmax = max(logterm(peak), logterm(0))
    total = 0.0
    t = 0
    while True:
        lt = logterm(t)
        total += math.exp(lt - logmax)
        if t > peak and lt - logmax < -64 * math.log(2):
            break
        t += 1
    return LogMagnitude(1, logmax + math.log(total))


def main_term(k: int, m: int, n: int) -> LogMagnitude:
    """The expected growth (n/m)^((k-1)/2) e^(4 pi sqrt(mn)) (mn)^(-1/4).

    Only the constant-free part: the weight-dependent limiting constant is
    unknown and never asserted, and the c = 1 exponential sum is 1.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    log = (
        0.5 * (k - 1) * (math.log(n) - math.log(m))
        + 4.0 * math.pi * math.sqrt(m * n)
        - 0.25 * (math.log(m) + math.log(n))
    )
    return LogMagnitude(1, log)


@dataclass(frozen=True)
class DiagnosticReport:
    """Estimate sequence plus a tail-stability summary."""

    points: tuple  # (n, estimate) pairs, estimate a signed float
    skipped: tuple  # n values whose coefficient was exactly zero
    tail_rel_variation: float

    def estimates(self) -> list:
        return [e for _, e in self.points]


def _tail_variation(values) -> float:
    tail = values[len(values) // 2 :]
    if not tail:
        return float("nan")
    lo, hi = min(tail), max(tail)
    scale = min(abs(lo), abs(hi))
    if scale == 0:
        return float("inf")
    return (hi - lo) / scale


def ck_diagnostic(k: int, m: int, n_grid, f=None) -> DiagnosticReport:
    """a(n) of the pole-order-m basis element divided by its main term.

    The sequence should flatten to the weight's limiting constant; the report
    carries the relative spread over the tail (second half) of the grid.
    Coefficients are converted to log-space exactly, so the grid may run far
    past double range.
    """
    from .djbasis import dj_basis_element

    if m < 1:
        raise ValueError("the exponential main term needs pole order m >= 1")
    n_grid = sorted(n_grid)
    if f is None:
        f = dj_basis_element(k, m, n_grid[-1])
    series = f.series if hasattr(f, "series") else f
    if series.prec < n_grid[-1]:
        raise PrecisionError("form not computed far enough for the grid")
    points = []
    skipped = []
    for n in n_grid:
        a = series.coefficient_or_zero(n)
        if a == 0:
            skipped.append(n)
            continue
        est = LogMagnitude.from_exact(a) / main_term(k, m, n)
        points.append((n, est.value()))
    return DiagnosticReport(
        tuple(points), tuple(skipped), _tail_variation([e for _, e in points])
    )


def dk_diagnostic(k: int, n_grid, f=None) -> DiagnosticReport:
    """a(n) / n^(k-1) for the pole-free basis element of weight k >= 4.

    For weights with a one-dimensional space this element is the Eisenstein
    series, so the estimates oscillate within the divisor-sum envelope
    [1, zeta(k-1)) times the first coefficient rather than converging.
    """
    from .djbasis import dj_basis_element

    if k < 4:
        raise ValueError("needs weight k >= 4")
    n_grid = sorted(n_grid)
    if f is None:
        f = dj_basis_element(k, 0, n_grid[-1])
    series = f.series if hasattr(f, "series") else f
    if series.prec < n_grid[-1]:
        raise PrecisionError("form not computed far enough for the grid")
    points = []
    skipped = []
    for n in n_grid:
        a = series.coefficient_or_zero(n)
        if a == 0:
            skipped.append(n)
            continue
        points.append((n, float(a / Fraction(n) ** (k - 1))))
    return DiagnosticReport(
        tuple(points), tuple(skipped), _tail_variation([e for _, e in points])
    )
