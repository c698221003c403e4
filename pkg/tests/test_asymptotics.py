import math
from fractions import Fraction

import pytest

from modform.asymptotics import (
    LogMagnitude,
    bessel_I,
    bessel_I_log,
    ck_diagnostic,
    dk_diagnostic,
    kloosterman_A,
    log_abs_exact,
    main_term,
)


def euler_phi(c):
    return sum(1 for d in range(1, c + 1) if math.gcd(d, c) == 1)


def test_kloosterman_c1_is_one():
    for m in (1, 2, 7):
        for n in (1, 3, 10):
            assert kloosterman_A(m, 1, n) == pytest.approx(1.0)


def test_kloosterman_hand_values():
    # c=2: d=1, a=1: e^(pi i (2*1 - 1*1)) = -1
    assert kloosterman_A(1, 2, 2) == pytest.approx(-1.0)
    # c=3: (d,a) = (1,1) and (2,2): exponents vanish, sum = 2
    assert kloosterman_A(1, 3, 1) == pytest.approx(2.0)


def test_kloosterman_symmetry():
    for c in range(1, 11):
        for m in (1, 2, 3):
            for n in (1, 2, 5):
                lhs = kloosterman_A(m, c, n)
                rhs = kloosterman_A(n, c, m)
                assert abs(lhs - rhs) < 1e-10


def test_kloosterman_term_count_bound():
    for c in range(1, 51):
        assert abs(kloosterman_A(2, c, 3)) <= euler_phi(c) + 1e-9


def test_bessel_at_zero():
    assert bessel_I(0, 0.0) == 1.0
    assert bessel_I(1, 0.0) == 0.0


def test_bessel_small_argument():
    # partial sums of sum (1/2)^(2t) / (t!)^2, frozen from a 20-term
    # Fraction evaluation
    oracle = sum(Fraction(1, 4) ** t / Fraction(math.factorial(t)) ** 2 for t in range(20))
    assert bessel_I(0, 1.0) == pytest.approx(float(oracle), abs=1e-14)
    assert float(oracle) == pytest.approx(1.2660658777520084, abs=1e-15)


def test_bessel_asymptotic_band():
    # first correction term is -(4n^2-1)/(8z): negative for n >= 1, +1/(8z)
    # for n = 0, so the n = 0 ratio legitimately peeks just above 1
    z = 50.0
    for order in (1, 2):
        ratio = bessel_I(order, z) * math.sqrt(2 * math.pi * z) / math.exp(z)
        assert 0.9 <= ratio <= 1.0
    ratio0 = bessel_I(0, z) * math.sqrt(2 * math.pi * z) / math.exp(z)
    assert 0.9 <= ratio0 <= 1.0 + 1.1 / (8 * z)


def test_bessel_overflow_contract():
    with pytest.raises(OverflowError):
        bessel_I(0, 800.0)
    lg = bessel_I_log(0, 800.0)
    # asymptotically e^z/sqrt(2 pi z)
    assert lg.sign == 1
    assert lg.log_abs == pytest.approx(800.0 - 0.5 * math.log(2 * math.pi * 800.0), rel=1e-6)


def test_bessel_log_matches_direct():
    for order, z in ((0, 1.0), (1, 10.0), (2, 50.0)):
        assert bessel_I_log(order, z).value() == pytest.approx(bessel_I(order, z), rel=1e-12)


def test_main_term_plug_in():
    assert main_term(6, 1, 1).log_abs == pytest.approx(4 * math.pi)
    assert main_term(0, 1, 4).log_abs == pytest.approx(8 * math.pi - 0.75 * math.log(4))
    assert main_term(0, 1, 100).log_abs > main_term(0, 1, 99).log_abs


def test_log_abs_exact_huge():
    n = 10**500 + 12345
    assert log_abs_exact(n) == pytest.approx(500 * math.log(10), rel=1e-12)
    assert log_abs_exact(Fraction(-3, 7)) == pytest.approx(math.log(3 / 7), rel=1e-12)
    with pytest.raises(ValueError):
        log_abs_exact(0)


def test_log_magnitude_algebra():
    a = LogMagnitude.from_exact(-8)
    b = LogMagnitude.from_exact(2)
    assert (a / b).value() == pytest.approx(-4.0)
    assert (a * b).sign == -1
    assert LogMagnitude.from_exact(0).is_zero()


def test_ck_diagnostic_j_minus_744():
    report = ck_diagnostic(0, 1, range(100, 401, 20))
    assert not report.skipped
    assert all(e > 0 for e in report.estimates())
    assert report.tail_rel_variation < 0.05


def test_ck_diagnostic_weight12_pole():
    report = ck_diagnostic(12, 1, range(100, 401, 20))
    assert report.tail_rel_variation < 0.10


def test_ck_cauchy_shrink():
    for k, m in ((0, 1), (4, 1), (12, 1)):
        narrow = ck_diagnostic(k, m, range(50, 201, 10))
        wide = ck_diagnostic(k, m, range(100, 401, 20))
        assert wide.tail_rel_variation < narrow.tail_rel_variation


def test_dk_diagnostic_weight4_envelope():
    zeta3 = sum(1 / Fraction(j) ** 3 for j in range(1, 200))
    report = dk_diagnostic(4, range(1, 200))
    lo, hi = 240.0, float(240 * zeta3) + 1e-6
    for n, est in report.points:
        assert lo - 1e-9 <= est <= hi


def test_dk_diagnostic_prime_values():
    report = dk_diagnostic(4, [97, 101])
    for n, est in report.points:
        assert est == pytest.approx(240 * (1 + n**-3))


def test_dk_diagnostic_weight8_first():
    report = dk_diagnostic(8, [1])
    assert report.points[0][1] == pytest.approx(480.0)
