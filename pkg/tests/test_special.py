"""Log-gamma machinery against the C library and exact values."""

import math

import pytest

from dbarkit.errors import ParameterDomainError
from dbarkit.special import (
    log_factorial,
    log_gamma,
    log_gamma_ratio,
    log_gamma_second_difference,
)


def test_log_gamma_exact_points():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=5e-15)
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
    assert log_gamma(11.0) == pytest.approx(math.log(3628800.0), rel=1e-14)


def test_log_gamma_matches_libm():
    # math.lgamma is an independent implementation; the contract is 1e-13
    for i in range(1, 4000):
        x = 0.5 + 0.05 * i
        ref = math.lgamma(x)
        assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_log_gamma_reflection_region():
    for x in (0.001, 0.02, 0.1, 0.3, 0.49):
        ref = math.lgamma(x)
        assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_log_gamma_domain():
    with pytest.raises(ParameterDomainError):
        log_gamma(0.0)
    with pytest.raises(ParameterDomainError):
        log_gamma(-3.2)


def test_log_factorial():
    assert log_factorial(0) == 0.0
    assert log_factorial(1) == 0.0
    assert log_factorial(10) == pytest.approx(math.log(3628800.0), rel=1e-14)
    with pytest.raises(ParameterDomainError):
        log_factorial(-1)


def test_ratio_small_arguments_vs_lgamma():
    # direct subtraction of lgamma is safe at small x; use it as the oracle
    for x, s in [(0.7, 1.3), (1.0, 1.0), (2.5, 0.5), (5.0, 2.0), (12.0, 0.25)]:
        ref = math.lgamma(x + s) - math.lgamma(x)
        assert log_gamma_ratio(x, s) == pytest.approx(ref, abs=1e-13)


def test_ratio_integer_shift_is_a_log():
    # Gamma(x+1)/Gamma(x) = x, so the log-ratio must be ln x to high accuracy
    for x in (1.0, 17.0, 1e3, 1e4, 123456.0):
        assert log_gamma_ratio(x, 1.0) == pytest.approx(math.log(x), rel=1e-14)


def test_second_difference_identity():
    # with s = 1 the second difference collapses to ln(y) - ln(y-1)
    for y in (2.0, 5.5, 40.0, 1e4):
        ref = math.log(y) - math.log(y - 1.0)
        assert log_gamma_second_difference(y, 1.0) == pytest.approx(ref, rel=1e-13)


def test_second_difference_small_arguments_vs_lgamma():
    for y, s in [(1.5, 0.5), (2.0, 1.0), (4.0, 2.0), (10.0, 0.9)]:
        ref = (math.lgamma(y + s) - 2.0 * math.lgamma(y) + math.lgamma(y - s))
        assert log_gamma_second_difference(y, s) == pytest.approx(ref, abs=5e-14)


def test_difference_domains():
    with pytest.raises(ParameterDomainError):
        log_gamma_ratio(-1.0, 0.5)
    with pytest.raises(ParameterDomainError):
        log_gamma_ratio(1.0, -2.0)
    with pytest.raises(ParameterDomainError):
        log_gamma_second_difference(1.0, 1.5)
