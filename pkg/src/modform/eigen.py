"""Hecke eigenform decomposition of the cuspidal subspace.

The operator T_2 acting on the echelonized cusp basis splits every space
handled here (cuspidal dimension at most 2, which covers all even weights up
to 26).  Its characteristic polynomial is either a product of rational linear
factors, giving eigenforms with rational coefficients, or an irreducible
quadratic; in the latter case the conjugate pair of eigenforms is stored once,
over the real quadratic field generated by the eigenvalue, with the two real
embeddings realizing the pair.

The coefficient field is presented in the power basis (1, a(2)), so the
rational coordinate vectors of the coefficients are canonical: a(n) =
a_1(n) * 1 + a_2(n) * a(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    DegreeCapError,
    MinimalPolynomial,
    NumberFieldElement,
    exact_sqrt,
    is_rational_square,
)
from .modforms import dim_Sk, hecke_tp_series, miller_basis
from .qseries import LaurentSeries, PrecisionError

_EIGEN_VERIFY_PRIMES = (2, 3, 5, 7)


def t2_matrix(k: int, prec: int | None = None) -> tuple:
    """Matrix M of T_2 on the cuspidal echelon basis: T_2 g_i = sum_j M[j][i] g_j.

    Entries are exact rationals (in fact integers).  Needs at least
    2*(dim+1) coefficients of the basis.
    """
    d = dim_Sk(k)
    if d < 1:
        raise ValueError(f"weight {k} has no cusp forms")
    need = 2 * (d + 1)
    if prec is None:
        prec = need
    if prec < need:
        raise PrecisionError(f"need prec >= {need} to assemble the T_2 matrix")
    cusp = miller_basis(k, prec)[1:]
    cols = []
    for g in cusp:
        tg = hecke_tp_series(g.series, k, 2)
        cols.append([tg.coefficient_or_zero(j) for j in range(1, d + 1)])
    return tuple(tuple(cols[i][j] for i in range(d)) for j in range(d))


def _charpoly_2x2(m) -> tuple:
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return det, -tr  # x^2 - tr*x + det, constant first


@dataclass(frozen=True)
class EigenformPackage:
    """A normalized Hecke eigenform (or a conjugate pair stored once).

    ``field`` is the minimal polynomial of a(2) over Q; ``series`` carries
    NumberFieldElement coefficients in the power basis (1, a(2)); the
    embeddings, ordered by ascending real value of a(2), realize the Galois
    conjugates.
    """

    weight: int
    field: MinimalPolynomial
    series: LaurentSeries

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def prec(self) -> int:
        return self.series.prec

    def coefficient(self, n: int) -> NumberFieldElement:
        return self.series.coefficient_or_zero(n)

    def embeddings(self, bits: int = 64) -> tuple:
        return self.field.real_roots(bits)

    def conjugate(self) -> "EigenformPackage":
        """The Galois-conjugate eigenform over the same field (identity if t=1)."""
        if self.degree == 1:
            return self
        coeffs = [c.conjugate() for c in self.series.coeffs]
        return EigenformPackage(
            self.weight,
            self.field,
            LaurentSeries(self.series.valuation, coeffs, self.series.prec),
        )

    def coordinate_series(self, index: int) -> LaurentSeries:
        """The rational q-series of the ``index``-th power-basis coordinate."""
        if not 0 <= index < self.degree:
            raise ValueError("coordinate index out of range")
        coeffs = [c.coords[index] for c in self.series.coeffs]
        return LaurentSeries(self.series.valuation, coeffs, self.series.prec)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "minpoly": self.field.to_json(),
            "series": self.series.to_json(),
        }


def _verify_eigen_equation(pkg: EigenformPackage, pmax: int) -> None:
    # a(p) a(n) = a(pn) + p^(k-1) a(n/p), checked exactly on a window
    s = pkg.series
    k = pkg.weight
    for p in _EIGEN_VERIFY_PRIMES:
        if p > pmax or s.prec < p:
            continue
        ap = s.coefficient_or_zero(p)
        nmax = min(50, s.prec // p)
        for n in range(1, nmax + 1):
            lhs = ap * s.coefficient_or_zero(n)
            rhs = s.coefficient_or_zero(p * n)
            if n % p == 0:
                rhs = rhs + s.coefficient_or_zero(n // p) * Fraction(p) ** (k - 1)
            if lhs != rhs:
                raise ArithmeticError(
                    f"eigen-equation fails at p={p}, n={n} for weight {k}"
                )


def eigen_decompose(k: int, prec: int, verify_pmax: int = 7) -> list:
    """Normalized Hecke eigenforms of weight k, one package per Galois orbit.

    The characteristic polynomial of T_2 is factored over Q: rational roots
    give rational eigenforms, an irreducible quadratic is kept whole and the
    package lives over the corresponding real quadratic field.  Weights with
    cuspidal dimension above 2 are rejected by the degree cap.
    """
    d = dim_Sk(k)
    if d == 0:
        return []
    if d > 2:
        raise DegreeCapError(
            f"cuspidal dimension {d} at weight {k} exceeds the degree-2 cap"
        )
    need = max(prec, 2 * (d + 1))
    basis = miller_basis(k, need)
    cusp = [g.series.truncate(prec) if g.series.prec > prec else g.series for g in basis[1:]]
    matrix = t2_matrix(k, 2 * (d + 1))

    packages = []
    if d == 1:
        lam = matrix[0][0]
        field = MinimalPolynomial([-lam, 1])
        series = cusp[0].promote(field)
        packages.append(EigenformPackage(k, field, series))
    else:
        c0, c1 = _charpoly_2x2(matrix)
        disc = c1 * c1 - 4 * c0
        if disc == 0:
            raise ArithmeticError(
                f"characteristic polynomial of T_2 at weight {k} is not squarefree"
            )
        if is_rational_square(disc):
            # two rational eigenvalues; eigenvector (1, lambda) since the
            # echelon basis gives a(1)=1, a(2)=lambda
            root = exact_sqrt(disc)
            lams = sorted(((-c1 - root) / 2, (-c1 + root) / 2))
            for lam in lams:
                field = MinimalPolynomial([-lam, 1])
                series = (cusp[0] + cusp[1].scale(lam)).promote(field)
                packages.append(EigenformPackage(k, field, series))
        else:
            field = MinimalPolynomial([c0, c1, 1])
            tau = NumberFieldElement.generator(field)
            series = cusp[0].promote(field) + cusp[1].promote(field).scale(tau)
            packages.append(EigenformPackage(k, field, series))

    for pkg in packages:
        if pkg.coefficient(1) != NumberFieldElement.one(pkg.field):
            raise ArithmeticError("eigenform normalization a(1) = 1 failed")
        _verify_eigen_equation(pkg, verify_pmax)
    return packages


def qbasis_decompose(pkg: EigenformPackage, n: int) -> tuple:
    """Rational coordinates of a(n) in the power basis (1, a(2), ...)."""
    return pkg.coefficient(n).coords


def conjugate_expansions(pkg: EigenformPackage, nmax: int, bits: int = 64) -> list:
    """The real-embedded coefficient sequences, one per embedding.

    Returns ``degree`` lists of Fractions approximating sigma_j(a(n)) for
    n = 1..nmax, each within 2**-bits of the truth.
    """
    if pkg.prec < nmax:
        raise PrecisionError(f"package holds {pkg.prec} coefficients, need {nmax}")
    roots = pkg.field.real_roots(bits + 8)
    out = []
    for root in roots:
        seq = []
        for n in range(1, nmax + 1):
            c = pkg.coefficient(n).coords
            val = c[0] if pkg.degree == 1 else c[0] + c[1] * root
            seq.append(val)
        out.append(seq)
    return out
