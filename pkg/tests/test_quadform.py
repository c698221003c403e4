from fractions import Fraction

import pytest

from modform.modforms import eisenstein
from modform.quadform import (
    GramMatrix,
    SpanError,
    d16plus_gram,
    e8_gram,
    e8e8_gram,
    rep_count,
    rep_counts_upto,
    theta_series,
    ratio_set_quadforms,
)


def naive_box_count(Q: GramMatrix, n: int) -> int:
    """Oracle for small forms: scan the full box bounded via the inverse Gram.

    x_i^2 <= 2n * (A^-1)_ii by Cauchy-Schwarz in the A-inner product.
    """
    d = Q.dimension
    inv = _fraction_inverse([[Fraction(v) for v in row] for row in Q.entries])
    B = max(int((2 * n * inv[i][i]) ** 0.5) + 1 for i in range(d))
    count = 0
    x = [0] * d

    def rec(i):
        nonlocal count
        if i == d:
            if Q.value(x) == n:
                count += 1
            return
        for v in range(-B, B + 1):
            x[i] = v
            rec(i + 1)

    rec(0)
    return count


def _fraction_inverse(m):
    d = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(m)]
    for i in range(d):
        piv = next(r for r in range(i, d) if aug[r][i] != 0)
        aug[i], aug[piv] = aug[piv], aug[i]
        inv_p = 1 / aug[i][i]
        aug[i] = [v * inv_p for v in aug[i]]
        for r in range(d):
            if r != i and aug[r][i] != 0:
                f = aug[r][i]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[i])]
    return [row[d:] for row in aug]


def ambient_e8_counts(N: int) -> list:
    """Independent oracle: E8 vector counts by norm, in standard coordinates.

    Models the lattice directly as the even-coordinate-sum integer vectors
    together with the all-half-integers coset of even sum, with no Gram
    matrix or Cholesky step involved.  Q(x) = |x|^2 / 2.  Counts come from
    tabulating 4-coordinate halves and convolving.
    """
    from collections import Counter
    from itertools import product
    from math import isqrt

    counts = [0] * (N + 1)

    # integer class: x in Z^8, sum(x) even, |x|^2 = 2n
    B = isqrt(2 * N)
    ints = Counter()
    for y in product(range(-B, B + 1), repeat=4):
        s = sum(v * v for v in y)
        if s <= 2 * N:
            ints[(s, sum(y) % 2)] += 1
    for (s1, p1), c1 in ints.items():
        for (s2, p2), c2 in ints.items():
            tot = s1 + s2
            if tot <= 2 * N and tot % 2 == 0 and (p1 + p2) % 2 == 0:
                counts[tot // 2] += c1 * c2

    # half-integer class via u = 2x (odd coordinates): |u|^2 = 8n, sum(u) = 0 mod 4
    Umax = isqrt(8 * N)
    odd = [u for u in range(-Umax, Umax + 1) if u % 2]
    halves = Counter()
    for y in product(odd, repeat=4):
        s = sum(v * v for v in y)
        if s <= 8 * N:
            halves[(s, sum(y) % 4)] += 1
    for (s1, r1), c1 in halves.items():
        for (s2, r2), c2 in halves.items():
            tot = s1 + s2
            if tot <= 8 * N and tot % 8 == 0 and (r1 + r2) % 4 == 0:
                counts[tot // 8] += c1 * c2

    return counts


def test_builtin_grams_are_level_one():
    for g in (e8_gram(), e8e8_gram(), d16plus_gram()):
        assert g.is_level_one()
        assert g.determinant() == 1
        assert all(g.entries[i][i] % 2 == 0 for i in range(g.dimension))


def test_rejects_bad_gram():
    with pytest.raises(ValueError):
        GramMatrix([[2, 1], [1, -2]])  # not positive definite
    with pytest.raises(ValueError):
        GramMatrix([[1, 0], [0, 2]])  # odd diagonal
    with pytest.raises(ValueError):
        GramMatrix([[2, 1], [0, 2]])  # not symmetric


def test_rep_count_trivial_zero():
    assert rep_count(e8_gram(), 0) == 1


def test_e8_root_counts():
    e8 = e8_gram()
    assert rep_count(e8, 1) == 240
    assert rep_count(e8, 2) == 2160


def test_rep_count_matches_naive_box_small_form():
    small = GramMatrix([[2, 1], [1, 4]])
    for n in range(0, 11):
        assert rep_count(small, n) == naive_box_count(small, n)


def test_rep_count_matches_ambient_oracle():
    # the abstract Gram enumeration against the standard-coordinate model
    e8 = e8_gram()
    oracle = ambient_e8_counts(10)
    for n in range(0, 11):
        assert rep_count(e8, n) == oracle[n]


def test_rep_counts_upto_consistency():
    # the budgeted tree walk against the per-shell equation solver
    e8 = e8_gram()
    N = 10
    counts = rep_counts_upto(e8, N)
    assert counts[0] == 1
    for n in range(N + 1):
        assert counts[n] == rep_count(e8, n)
    # ball count equals the sum of shell counts
    assert sum(counts) == sum(rep_count(e8, n) for n in range(N + 1))


def test_theta_coefficients_are_even_for_positive_n():
    t = theta_series(e8_gram(), 30)
    for n in range(1, 31):
        assert t.coefficient(n) % 2 == 0


def test_theta_e8_is_weight4_eisenstein():
    t = theta_series(e8_gram(), 100, verify_terms=2)
    e4 = eisenstein(4, 100).series
    assert t.series.agrees_with(e4, 100)
    assert t.weight == 4


def test_theta_sixteen_dimensional_agreement():
    ta = theta_series(e8e8_gram(), 100)
    tb = theta_series(d16plus_gram(), 100)
    assert ta.series.agrees_with(tb.series, 100)
    diff = ta.series - tb.series
    assert diff.is_zero


def test_theta_window_cross_check_values():
    # the enumerated windows themselves: r(1) and r(2) for both 16d lattices
    assert rep_count(e8e8_gram(), 1) == 480
    assert rep_count(d16plus_gram(), 1) == 480
    assert rep_count(e8e8_gram(), 2) == 61920
    assert rep_count(d16plus_gram(), 2) == 61920


def test_theta_rejects_non_level_one():
    with pytest.raises(ValueError):
        theta_series(GramMatrix([[2, 0], [0, 2]]), 10)


def test_ratio_set_equal_forms():
    rs = ratio_set_quadforms(e8e8_gram(), d16plus_gram(), 1000)
    assert rs.size() == 1
    assert rs.ratio_values() == [Fraction(1)]


def test_ratio_set_same_form_trivial():
    rs = ratio_set_quadforms(e8_gram(), e8_gram(), 100)
    assert rs.size() == 1
    assert rs.ratio_values() == [Fraction(1)]


def test_gram_json_round_trip():
    g = e8_gram()
    assert GramMatrix.from_json(g.to_json()) == g
