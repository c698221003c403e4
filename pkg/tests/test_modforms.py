from fractions import Fraction

import pytest

from modform.modforms import (
    ModularForm,
    bernoulli,
    delta,
    delta_product,
    dim_Mk,
    dim_Sk,
    eisenstein,
    hecke_Tp,
    hecke_bound_report,
    j_invariant,
    miller_basis,
    sigma_list,
    valence_check,
    weight_decompose,
)
from modform.qseries import LaurentSeries


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_eisenstein_normalization():
    # -2k/B_k: B4 = -1/30 gives 240; B6 = 1/42 gives -504
    assert eisenstein(4, 3).coefficient(1) == 240
    assert eisenstein(6, 3).coefficient(1) == -504
    for k in (4, 6, 8, 10, 12, 14, 16):
        assert eisenstein(k, 2).coefficient(0) == 1


def test_eisenstein_rejects_bad_weight():
    with pytest.raises(ValueError):
        eisenstein(5, 10)
    with pytest.raises(ValueError):
        eisenstein(2, 10)


def test_delta_against_product_formula():
    a = delta(120).series
    b = delta_product(120).series
    assert a.agrees_with(b, 120)
    assert a.coefficient(1) == 1
    assert a.coefficient(2) == -24


def test_j_leading_terms():
    j = j_invariant(12)
    assert j.order() == -1
    assert j.coefficient(-1) == 1
    assert j.coefficient(0) == 744
    # derive the q coefficient along an independent route: E4^3 * (1/Delta)
    # with Delta taken from the product formula
    e4cubed = eisenstein(4, 14).series.pow(3)
    alt = e4cubed * delta_product(14).series.inverse()
    assert j.coefficient(1) == alt.coefficient(1)
    assert j.coefficient(1) == 196884


def test_weight_decompose():
    assert weight_decompose(12) == (1, 0)
    assert weight_decompose(2) == (-1, 14)
    assert weight_decompose(26) == (1, 14)
    assert weight_decompose(0) == (0, 0)
    assert weight_decompose(-12) == (-1, 0)
    for k in range(-40, 41, 2):
        o, kp = weight_decompose(k)
        assert k == 12 * o + kp and kp in {0, 4, 6, 8, 10, 14}


def test_dimensions():
    assert dim_Sk(12) == 1
    assert dim_Sk(24) == 2
    assert dim_Mk(0) == 1
    table = {0: 1, 2: 0, 4: 1, 6: 1, 8: 1, 10: 1, 12: 2, 14: 1, 16: 2, 24: 3, 26: 2}
    for k, d in table.items():
        assert dim_Mk(k) == d
    assert dim_Sk(0) == 0 and dim_Sk(2) == 0 and dim_Sk(4) == 0
    assert dim_Mk(-8) == 0
    with pytest.raises(ValueError):
        dim_Mk(7)


def test_miller_basis_trivial_weight():
    basis = miller_basis(0, 5)
    assert len(basis) == 1
    assert basis[0].series.coefficient(0) == 1


def test_miller_basis_weight12_contains_delta():
    basis = miller_basis(12, 30)
    assert len(basis) == 2
    assert basis[1].cuspidal
    assert basis[1].series.agrees_with(delta(30).series, 30)


def test_miller_basis_weight8_is_e4_squared():
    basis = miller_basis(8, 20)
    assert len(basis) == 1
    e4sq = eisenstein(4, 20).series.pow(2)
    assert basis[0].series.agrees_with(e4sq, 20)


def test_miller_basis_echelon_property():
    for k in (0, 4, 12, 16, 24, 36):
        d = dim_Mk(k)
        basis = miller_basis(k, 2 * d + 10)
        assert len(basis) == d
        for i, g in enumerate(basis):
            for n in range(0, d):
                expect = 1 if n == i else 0
                assert g.series.coefficient_or_zero(n) == expect
            assert valence_check(g)


def test_hecke_t2_on_delta():
    f = delta(40)
    t2 = hecke_Tp(f, 2)
    expect = f.series.scale(-24)
    for n in (1, 2, 3):
        assert t2.series.coefficient_or_zero(n) == expect.coefficient_or_zero(n)


def test_hecke_eisenstein_eigenvalue():
    # T_p E4 has a(0) = 1 + p^3 and a(1) = sigma_3(p), so eigenvalue 1 + p^3
    for p in (2, 3, 5):
        f = eisenstein(4, 6 * p)
        tp = hecke_Tp(f, p)
        sig3 = sigma_list(3, p)[p - 1]
        assert tp.coefficient(0) == 1 + p**3
        assert tp.coefficient(1) == 240 * sig3
        scaled = f.series.scale(1 + p**3)
        assert tp.series.agrees_with(scaled.truncate(tp.prec), tp.prec)


def test_hecke_zero_form():
    z = ModularForm(12, LaurentSeries.zero(20), cuspidal=True)
    assert hecke_Tp(z, 2).series.is_zero


def test_tau_multiplicativity_small():
    N = 600
    tau = delta(N).series
    pairs = [(2, 3), (2, 5), (3, 5), (4, 9), (8, 27), (5, 7), (16, 25), (11, 13)]
    for m, n in pairs:
        assert tau.coefficient(m * n) == tau.coefficient(m) * tau.coefficient(n)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        assert tau.coefficient(p * p) == tau.coefficient(p) ** 2 - p**11


def test_hecke_preserves_cusp_forms():
    for k in (12, 16, 18, 20, 22, 24, 26, 30, 36):
        d = dim_Mk(k)
        basis = miller_basis(k, 30)
        for g in basis[1:]:
            for p in (2, 3, 5, 7, 11, 13):
                tp = hecke_Tp(g, p)
                assert tp.series.coefficient_or_zero(0) == 0


def test_hecke_bound_report_delta():
    f = delta(200)
    assert hecke_bound_report(f, 1) == 1
    assert hecke_bound_report(f, 2) == 1  # max(1, 24/2^6) = 1
    assert hecke_bound_report(f, 200) < 10


def test_hecke_bound_rejects_noncuspidal():
    with pytest.raises(ValueError):
        hecke_bound_report(eisenstein(4, 10), 5)


def test_valence_check():
    assert valence_check(delta(10))  # ord 1 = o_12: boundary case
    assert valence_check(eisenstein(4, 10))
    q2 = LaurentSeries.monomial(2, 10)
    assert not valence_check(q2, 12)  # no weight-12 form is q^2 + O(q^3)
    with pytest.raises(ValueError):
        valence_check(LaurentSeries.zero(5), 12)


def test_modular_form_weight_mismatch():
    with pytest.raises(ValueError):
        delta(10) + eisenstein(4, 10)


def test_cuspidal_flag_guard():
    with pytest.raises(ValueError):
        ModularForm(4, eisenstein(4, 5).series, cuspidal=True)
