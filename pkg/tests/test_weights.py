"""Weight specifications, closed-form moments and the quadrature oracle."""

import math

import numpy as np
import pytest

from dbarkit.errors import DivergenceError, ParameterDomainError
from dbarkit.weights import (
    CustomRadial,
    DiscPolynomial,
    FockExponential,
    MomentSequence,
    disc_moment_closed,
    fock_moment_closed,
    moment_log,
    moment_quadrature,
)

LOG_PI = math.log(math.pi)


class TestClosedForms:
    def test_disc_trivial_area(self):
        # integral of 1 over the unit disc is pi
        assert disc_moment_closed(0.0, 0) == pytest.approx(LOG_PI, rel=1e-15)

    def test_disc_examples(self):
        assert disc_moment_closed(0.0, 1) == pytest.approx(math.log(math.pi / 2), rel=1e-14)
        assert disc_moment_closed(0.0, 2) == pytest.approx(math.log(math.pi / 3), rel=1e-14)
        assert disc_moment_closed(1.0, 0) == pytest.approx(math.log(math.pi / 2), rel=1e-14)

    def test_fock_examples(self):
        # c_n^2 = (2 pi / m) Gamma((2n+2)/m); for m = 2 that is pi * n!
        assert fock_moment_closed(2.0, 0) == pytest.approx(LOG_PI, rel=1e-14)
        assert fock_moment_closed(2.0, 1) == pytest.approx(LOG_PI, rel=1e-14)
        assert fock_moment_closed(2.0, 3) == pytest.approx(math.log(6 * math.pi), rel=1e-14)
        assert fock_moment_closed(4.0, 0) == pytest.approx(
            math.log(math.pi ** 1.5 / 2.0), rel=1e-14)

    def test_parameter_domains(self):
        with pytest.raises(ParameterDomainError):
            disc_moment_closed(-0.5, 0)
        with pytest.raises(ParameterDomainError):
            fock_moment_closed(0.0, 0)
        with pytest.raises(ParameterDomainError):
            disc_moment_closed(0.0, -1)
        with pytest.raises(ParameterDomainError):
            DiscPolynomial(-1.0)
        with pytest.raises(ParameterDomainError):
            FockExponential(-2.0)
        with pytest.raises(ParameterDomainError):
            CustomRadial(lambda r: r, support_radius=0.0)

    def test_moment_log_dispatch(self):
        assert moment_log(DiscPolynomial(0.5), 3) == disc_moment_closed(0.5, 3)
        assert moment_log(FockExponential(3.0), 2) == fock_moment_closed(3.0, 2)

    def test_moment_log_is_pure(self):
        for w in (DiscPolynomial(1.5), FockExponential(2.5)):
            for n in (0, 7, 40):
                assert moment_log(w, n) == moment_log(w, n)  # bit-identical


class TestQuadratureOracle:
    def test_disc_oracle_spot(self):
        got = moment_quadrature(DiscPolynomial(0.0), 1, rel_tol=1e-10)
        assert got == pytest.approx(math.log(math.pi / 2), abs=1e-10)

    def test_fock_oracle_spot(self):
        got = moment_quadrature(FockExponential(2.0), 5, rel_tol=1e-10)
        assert got == pytest.approx(math.log(math.pi * 120.0), abs=1e-10)

    def test_custom_unit_density(self):
        w = CustomRadial(lambda r: np.ones_like(r), support_radius=1.0)
        assert moment_quadrature(w, 0) == pytest.approx(LOG_PI, abs=1e-9)

    def test_oracle_equivalence_sample(self):
        # full n <= 50 sweep runs in the acceptance suite
        for w in (DiscPolynomial(0.0), DiscPolynomial(0.5), DiscPolynomial(3.0),
                  FockExponential(2.0), FockExponential(3.0), FockExponential(4.0)):
            for n in (0, 3, 17, 50):
                assert abs(moment_log(w, n) - moment_quadrature(w, n)) <= 1e-9

    def test_custom_scalar_callable_adapted(self):
        w = CustomRadial(lambda r: 1.0, support_radius=1.0)
        assert moment_quadrature(w, 0) == pytest.approx(LOG_PI, abs=1e-9)

    def test_rel_tol_domain(self):
        with pytest.raises(ParameterDomainError):
            moment_quadrature(DiscPolynomial(0.0), 0, rel_tol=0.5)
        with pytest.raises(ParameterDomainError):
            moment_quadrature(DiscPolynomial(0.0), 0, rel_tol=1e-15)

    def test_divergent_custom_density_overflow(self):
        w = CustomRadial(lambda r: np.exp(r), support_radius=math.inf)
        with pytest.raises(DivergenceError) as info:
            moment_quadrature(w, 2)
        assert info.value.order == 2

    def test_divergent_custom_density_slow(self):
        # r/(1+r) -> 1, so every moment diverges; the clamp guard must notice
        w = CustomRadial(lambda r: 1.0 / (1.0 + r), support_radius=math.inf)
        with pytest.raises(DivergenceError) as info:
            moment_quadrature(w, 0)
        assert info.value.order == 0


class TestMomentSequence:
    def test_lazy_cache(self):
        ms = MomentSequence(DiscPolynomial(0.0))
        assert ms.computed_upto == -1
        ms.log_moment(5)
        assert ms.computed_upto == 5
        ms.log_moment(2)  # no shrink, no recompute
        assert ms.computed_upto == 5
        assert len(ms.log_moments) == 6

    def test_disc_values_match_closed_form(self):
        ms = MomentSequence(DiscPolynomial(2.5))
        for n in range(60):
            assert ms.log_moment(n) == pytest.approx(
                disc_moment_closed(2.5, n), abs=1e-12)

    def test_fock_values_match_closed_form(self):
        ms = MomentSequence(FockExponential(3.0))
        for n in (0, 1, 13, 100):
            assert ms.log_moment(n) == fock_moment_closed(3.0, n)

    def test_ratios_consistent_with_logs(self):
        for w in (DiscPolynomial(1.0), FockExponential(2.0)):
            ms = MomentSequence(w)
            for n in range(20):
                assert ms.log_ratio(n) == pytest.approx(
                    ms.log_moment(n + 1) - ms.log_moment(n), abs=1e-12)

    def test_disc_ratio_monotone_and_bounded(self):
        # c_{n+1}^2/c_n^2 = (n+1)/(alpha+n+2): strictly increasing, below 1
        for alpha in (0.0, 1.0, 2.5):
            ms = MomentSequence(DiscPolynomial(alpha))
            ratios = [ms.ratio(n) for n in range(200)]
            assert all(b > a for a, b in zip(ratios, ratios[1:]))
            assert all(r < 1.0 for r in ratios)
            for n in (0, 10, 199):
                assert ratios[n] == pytest.approx(
                    (n + 1.0) / (alpha + n + 2.0), rel=1e-13)

    def test_log_convexity(self):
        for w in (DiscPolynomial(0.0), DiscPolynomial(2.5),
                  FockExponential(2.0), FockExponential(4.0)):
            ms = MomentSequence(w)
            assert ms.log_convexity_defect(2000) <= 1e-12

    def test_log_convexity_custom(self):
        w = CustomRadial(lambda r: np.ones_like(r), support_radius=1.0)
        ms = MomentSequence(w, quad_rel_tol=1e-10)
        # quadrature-backed logs carry the oracle tolerance, not 1e-12
        assert ms.log_convexity_defect(25) <= 1e-9

    def test_custom_matches_disc(self):
        custom = MomentSequence(CustomRadial(lambda r: np.ones_like(r),
                                             support_radius=1.0))
        for n in range(10):
            assert custom.log_moment(n) == pytest.approx(
                disc_moment_closed(0.0, n), abs=1e-9)
