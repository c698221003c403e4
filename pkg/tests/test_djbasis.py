import random
from fractions import Fraction

import pytest

from modform.djbasis import (
    WeaklyForm,
    as_weakly,
    cuspidal_projection,
    dj_basis_element,
    principal_part,
)
from modform.modforms import delta, eisenstein, j_invariant, miller_basis, weight_decompose
from modform.qseries import LaurentSeries, PrecisionError


def test_f00_is_one():
    f = dj_basis_element(0, 0, 10)
    assert f.series.coefficient(0) == 1
    assert all(f.series.coefficient_or_zero(n) == 0 for n in range(1, 11))


def test_f01_is_j_minus_744():
    f = dj_basis_element(0, 1, 20)
    j = j_invariant(20)
    assert f.series.agrees_with(j - LaurentSeries.constant(Fraction(744), 20), 20)
    assert f.series.coefficient_or_zero(0) == 0


def test_f12_minus1_is_delta():
    f = dj_basis_element(12, -1, 25)
    assert f.series.agrees_with(delta(25).series, 25)


def test_rejects_m_below_maximal_vanishing():
    with pytest.raises(ValueError):
        dj_basis_element(12, -2, 10)


def test_rejects_insufficient_precision():
    with pytest.raises(PrecisionError):
        dj_basis_element(24, 1, 1)  # o_24 = 2 needs prec >= 3


def test_gap_property():
    for k in (-12, 0, 4, 12, 16, 24):
        o_k, _ = weight_decompose(k)
        for m in range(-o_k, 11):
            f = dj_basis_element(k, m, o_k + 12)
            assert f.series.coefficient(-m) == 1
            for n in range(-m + 1, o_k + 1):
                assert f.series.coefficient_or_zero(n) == 0


def test_uniqueness_different_construction_path():
    # rebuild f_{k,m} by reducing j^s * seed in one pass instead of iterating
    for k, m in ((0, 3), (12, 2), (-12, 4)):
        o_k, _ = weight_decompose(k)
        prec = 50
        f = dj_basis_element(k, m, prec)
        steps = m + o_k
        width = prec + steps + abs(o_k) + 4
        alt = dj_basis_element(k, -o_k, width).series
        jq = j_invariant(width)
        alt = alt * jq.pow(steps)
        for mm in range(m - 1, -o_k - 1, -1):
            c = alt.coefficient_or_zero(-mm)
            if c != 0:
                g = dj_basis_element(k, mm, alt.prec).series
                alt = alt - g.scale(c)
        assert f.series.agrees_with(alt.truncate(prec), prec)


def test_principal_part_examples():
    assert principal_part(delta(10)) == {0: 0}
    f01 = dj_basis_element(0, 1, 10)
    assert principal_part(f01) == {1: 1, 0: 0}
    assert principal_part(eisenstein(4, 10)) == {0: 1}


def test_projection_fixes_cusp_forms():
    d = delta(30)
    proj = cuspidal_projection(d)
    assert proj.series.agrees_with(d.series, 30)


def test_projection_of_weight12_eisenstein():
    e12 = eisenstein(12, 30)
    proj = cuspidal_projection(e12)
    assert not proj.series.is_zero
    assert proj.series.order() >= 1
    c = proj.series.coefficient(1)
    assert c != 0
    assert proj.series.agrees_with(delta(30).series.scale(c), 30)


def test_projection_kills_weight0():
    f01 = dj_basis_element(0, 1, 15)
    proj = cuspidal_projection(f01)
    assert proj.series.is_zero


def test_projection_idempotent_and_linear_random():
    rng = random.Random(1203)
    for _ in range(20):
        k = rng.choice((12, 16, 24))
        o_k, _ = weight_decompose(k)
        prec = 25

        def rand_weakly():
            f = WeaklyForm(k, LaurentSeries.zero(prec))
            for m in range(-o_k, 3):
                c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                if c:
                    f = f + dj_basis_element(k, m, prec).scale(c)
            return f

        f, g = rand_weakly(), rand_weakly()
        alpha = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        beta = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        lin = cuspidal_projection(f.scale(alpha) + g.scale(beta))
        split = cuspidal_projection(f).scale(alpha) + cuspidal_projection(g).scale(beta)
        assert lin.series.agrees_with(split.series, lin.prec)
        again = cuspidal_projection(as_weakly(cuspidal_projection(f)))
        assert again.series.agrees_with(cuspidal_projection(f).series, again.prec)


def test_projection_of_zero_is_zero():
    z = WeaklyForm(12, LaurentSeries.zero(10))
    assert cuspidal_projection(z).series.is_zero
    assert principal_part(z) == {0: 0}


def test_negative_weight_elements_exist():
    f = dj_basis_element(-12, 1, 10)
    assert f.series.order() == -1
    assert f.series.coefficient(-1) == 1
    # 1/Delta begins q^-1 + 24 + 324q
    assert f.series.coefficient(0) == 24
    assert f.series.coefficient(1) == 324
