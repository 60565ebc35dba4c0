"""The solution operator: coefficient algebra and its quadrature oracles."""

import math

import numpy as np
import pytest

from dbarkit.errors import ConvergenceDomainError, ParameterDomainError
from dbarkit.solver import (
    HolomorphicCoeffs,
    HybridFunction,
    apply_solution_operator,
    bound_constant,
    dbar_residual,
    defect_norm_quadrature,
    defect_norm_sq,
    kernel_eval,
    monomial_inner_product,
    project_dilated,
    reproduce_check,
    space_norm_sq,
)
from dbarkit.weights import DiscPolynomial, FockExponential, MomentSequence


@pytest.fixture(scope="module")
def disc0():
    return MomentSequence(DiscPolynomial(0.0))


@pytest.fixture(scope="module")
def disc1():
    return MomentSequence(DiscPolynomial(1.0))


@pytest.fixture(scope="module")
def fock2():
    return MomentSequence(FockExponential(2.0))


@pytest.fixture(scope="module")
def fock4():
    return MomentSequence(FockExponential(4.0))


def random_poly(rng, max_degree=30):
    d = int(rng.integers(0, max_degree + 1))
    return HolomorphicCoeffs(rng.standard_normal(d + 1)
                             + 1j * rng.standard_normal(d + 1))


class TestHolomorphicCoeffs:
    def test_trailing_zeros_stripped(self):
        f = HolomorphicCoeffs([1.0, 2.0, 0.0, 0.0])
        assert f.coeffs == (1 + 0j, 2 + 0j)
        assert f.degree == 1

    def test_zero_polynomial(self):
        f = HolomorphicCoeffs([0.0, 0.0])
        assert f.degree == -1
        assert f(0.7 + 0.1j) == 0j

    def test_evaluation(self):
        f = HolomorphicCoeffs([1.0, 0.0, 1.0])  # 1 + z^2
        assert f(2.0j) == pytest.approx(-3.0 + 0j)
        vals = f(np.array([0.0, 1.0, 1.0j]))
        assert vals == pytest.approx(np.array([1.0, 2.0, 0.0]))


class TestApply:
    def test_constant_input(self, fock2):
        # S(1) = zbar: the correction sum is empty
        F = apply_solution_operator(HolomorphicCoeffs([1.0]), fock2)
        assert F.conj_factor.coeffs == (1 + 0j,)
        assert F.holo_part.coeffs == ()
        assert F.value(2.0 + 1.0j) == pytest.approx(2.0 - 1.0j)

    def test_linear_fock(self, fock2):
        # c_1^2/c_0^2 = 1, so S(z) = |z|^2 - 1
        F = apply_solution_operator(HolomorphicCoeffs([0.0, 1.0]), fock2)
        assert F.holo_part.coeffs == pytest.approx((-1 + 0j,))
        assert F.value(1.0j) == pytest.approx(0.0 + 0j)

    def test_linear_disc(self, disc0):
        F = apply_solution_operator(HolomorphicCoeffs([0.0, 1.0]), disc0)
        assert F.holo_part.coeffs == pytest.approx((-0.5 + 0j,))

    def test_conj_factor_identical(self, fock4):
        rng = np.random.default_rng(1)
        for _ in range(10):
            f = random_poly(rng)
            F = apply_solution_operator(f, fock4)
            assert F.conj_factor.coeffs == f.coeffs  # exact, not approx
            assert F.dbar.coeffs == f.coeffs


class TestKernel:
    def test_origin(self, fock2):
        assert kernel_eval(fock2, 0.0, 0.0) == pytest.approx(1.0 / math.pi, rel=1e-13)

    def test_gaussian_exponential(self, fock2):
        # sum q^k / (pi k!) = e^q / pi
        got = kernel_eval(fock2, 1.0, 1.0, rel_tol=1e-12)
        assert got == pytest.approx(math.e / math.pi, rel=1e-11)
        got = kernel_eval(fock2, 1.0 + 0.5j, 0.3 - 0.2j, rel_tol=1e-12)
        q = (1.0 + 0.5j) * (0.3 + 0.2j)
        assert got == pytest.approx(np.exp(q) / math.pi, rel=1e-11)

    def test_disc_closed_form(self, disc0):
        # sum (k+1) q^k / pi = 1 / (pi (1-q)^2)
        got = kernel_eval(disc0, 0.5, 0.5, rel_tol=1e-12)
        assert got == pytest.approx(16.0 / (9.0 * math.pi), rel=1e-11)

    def test_disc_domain(self, disc0):
        with pytest.raises(ConvergenceDomainError):
            kernel_eval(disc0, 1.0, 0.5)
        with pytest.raises(ConvergenceDomainError):
            kernel_eval(disc0, 0.5, 1.2)

    def test_rel_tol_domain(self, disc0):
        with pytest.raises(ParameterDomainError):
            kernel_eval(disc0, 0.1, 0.1, rel_tol=1.0)

    def test_term_budget(self, disc0, monkeypatch):
        import dbarkit.solver as solver_mod
        from dbarkit.errors import SeriesTruncationError
        monkeypatch.setattr(solver_mod, "_KERNEL_TERM_BUDGET", 50)
        with pytest.raises(SeriesTruncationError):
            kernel_eval(disc0, 0.999, 0.999, rel_tol=1e-10)


class TestProjectDilated:
    def test_constant_maps_to_zero(self, fock2):
        out = project_dilated(HolomorphicCoeffs([1.0]), 0.5, fock2)
        assert out.degree == -1

    def test_linear_fock(self, fock2):
        out = project_dilated(HolomorphicCoeffs([0.0, 1.0]), 0.5, fock2)
        assert out.coeffs == pytest.approx((0.5 + 0j,))

    def test_quadratic_disc(self, disc0):
        out = project_dilated(HolomorphicCoeffs([0.0, 0.0, 1.0]), 0.9, disc0)
        assert out.coeffs == pytest.approx((0j, 0.81 * (2.0 / 3.0) + 0j))

    def test_rho_domain(self, disc0):
        f = HolomorphicCoeffs([1.0])
        for rho in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ParameterDomainError):
                project_dilated(f, rho, disc0)


class TestDefectNorm:
    def test_constant(self, disc1):
        # |a_0|^2 c_1^2 regardless of rho
        want = math.exp(disc1.log_moment(1))
        for rho in (0.3, 0.8, 1.0):
            got = defect_norm_sq(HolomorphicCoeffs([1.0]), rho, disc1)
            assert got == pytest.approx(want, rel=1e-13)

    def test_linear_fock(self, fock2):
        got = defect_norm_sq(HolomorphicCoeffs([0.0, 1.0]), 1.0, fock2)
        assert got == pytest.approx(math.pi, rel=1e-13)

    def test_linear_disc(self, disc0):
        got = defect_norm_sq(HolomorphicCoeffs([0.0, 1.0]), 1.0, disc0)
        assert got == pytest.approx(math.pi / 12.0, rel=1e-13)

    def test_norm_consistency_basis_route(self, fock4):
        # independent accumulation through the basis coordinates b_k = a_k c_k
        from dbarkit.spectrum import eigenvalue
        rng = np.random.default_rng(7)
        f = random_poly(rng, 20)
        direct = defect_norm_sq(f, 1.0, fock4)
        via_basis = 0.0
        for k, a in enumerate(f):
            b = a * math.exp(0.5 * fock4.log_moment(k))
            via_basis += eigenvalue(fock4, k) * abs(b) ** 2
        assert direct == pytest.approx(via_basis, rel=1e-12)

    def test_gaussian_isometry(self, fock2):
        rng = np.random.default_rng(11)
        for _ in range(10):
            f = random_poly(rng)
            ratio = defect_norm_sq(f, 1.0, fock2) / space_norm_sq(f, fock2)
            assert ratio == pytest.approx(1.0, abs=1e-10)

    def test_l2_bound_with_constant_four(self, fock2):
        # the solution obeys ||S(f)||^2 <= 4 ||f||^2; with the isometry the
        # actual constant is 1
        rng = np.random.default_rng(13)
        for _ in range(10):
            f = random_poly(rng)
            assert defect_norm_sq(f, 1.0, fock2) <= 4.0 * space_norm_sq(f, fock2)

    def test_rho_domain(self, disc0):
        with pytest.raises(ParameterDomainError):
            defect_norm_sq(HolomorphicCoeffs([1.0]), 0.0, disc0)
        with pytest.raises(ParameterDomainError):
            defect_norm_sq(HolomorphicCoeffs([1.0]), 1.2, disc0)

    def test_dilation_bound(self, fock4):
        # defect(f, rho) <= bound_constant * ||f||^2 uniformly in rho
        rng = np.random.default_rng(17)
        for _ in range(5):
            f = random_poly(rng, 15)
            c = bound_constant(fock4, max(f.degree, 1))
            norm2 = space_norm_sq(f, fock4)
            for rho in (0.1, 0.5, 0.9, 1.0):
                assert defect_norm_sq(f, rho, fock4) <= c * norm2 * (1 + 1e-12)


class TestBoundConstant:
    def test_gaussian(self, fock2):
        assert bound_constant(fock2, 100) == pytest.approx(1.0, abs=1e-12)

    def test_disc(self, disc0):
        assert bound_constant(disc0, 100) == pytest.approx(0.5, rel=1e-14)

    def test_fock4(self, fock4):
        want = 1.0 / math.sqrt(math.pi)  # lambda_0 = Gamma(1)/Gamma(1/2)
        assert bound_constant(fock4, 10) == pytest.approx(want, rel=1e-13)
        # and lambda_0 really dominates the first ten eigenvalues
        from dbarkit.spectrum import eigenvalue
        assert all(eigenvalue(fock4, k) <= want for k in range(1, 11))

    def test_domain(self, fock2):
        with pytest.raises(ParameterDomainError):
            bound_constant(fock2, 0)


class TestOrthogonality:
    def test_pure_conjugate_monomial(self, disc0):
        F = HybridFunction(HolomorphicCoeffs([1.0]), HolomorphicCoeffs([]))
        for j in range(5):
            assert monomial_inner_product(F, j, disc0) == 0j

    def test_operator_output_exactly_orthogonal(self, fock2):
        F = apply_solution_operator(HolomorphicCoeffs([0.0, 1.0]), fock2)
        assert monomial_inner_product(F, 0, fock2) == 0j

    def test_seeded_random_inputs(self):
        rng = np.random.default_rng(101)
        for w in (DiscPolynomial(2.0), FockExponential(2.0), FockExponential(4.0)):
            ms = MomentSequence(w)
            for _ in range(10):
                f = random_poly(rng, 30)
                F = apply_solution_operator(f, ms)
                norm_f = math.sqrt(space_norm_sq(f, ms))
                for j in range(f.degree + 3):
                    assert abs(monomial_inner_product(F, j, ms)) <= 1e-12 * norm_f

    def test_general_hybrid_is_not_orthogonal(self, fock2):
        F = HybridFunction(HolomorphicCoeffs([0.0, 1.0]), HolomorphicCoeffs([5.0]))
        assert abs(monomial_inner_product(F, 0, fock2)) > 1.0


class TestDbarResidual:
    def test_zbar_case(self, fock2):
        F = HybridFunction(HolomorphicCoeffs([1.0]), HolomorphicCoeffs([]))
        pts = [0.1 + 0.2j, -1.0j, 2.0, 0.5 - 0.5j]
        assert dbar_residual(F, HolomorphicCoeffs([1.0]), pts) <= 1e-9

    def test_quadratic(self, fock2):
        rng = np.random.default_rng(5)
        pts = 2.0 * np.sqrt(rng.uniform(0, 1, 100)) * np.exp(
            2j * math.pi * rng.uniform(0, 1, 100))
        f = HolomorphicCoeffs([0.0, 1.0])
        F = apply_solution_operator(f, fock2)
        assert dbar_residual(F, f, pts) <= 1e-6

    def test_seeded_degree_20(self, fock4):
        rng = np.random.default_rng(23)
        pts = 2.0 * np.sqrt(rng.uniform(0, 1, 100)) * np.exp(
            2j * math.pi * rng.uniform(0, 1, 100))
        f = HolomorphicCoeffs(rng.standard_normal(21) + 1j * rng.standard_normal(21))
        F = apply_solution_operator(f, fock4)
        fmax = float(np.max(np.abs(f(pts))))
        assert dbar_residual(F, f, pts) <= 1e-6 * max(1.0, fmax)

    def test_h_domain(self, fock2):
        F = HybridFunction(HolomorphicCoeffs([1.0]), HolomorphicCoeffs([]))
        with pytest.raises(ParameterDomainError):
            dbar_residual(F, HolomorphicCoeffs([1.0]), [0.0], h=1e-2)
        with pytest.raises(ParameterDomainError):
            dbar_residual(F, HolomorphicCoeffs([1.0]), [], h=1e-5)


class TestQuadratureOracles:
    def test_defect_quadrature_matches_formula(self, fock4):
        f = HolomorphicCoeffs([0.5, -1.0 + 0.25j, 0.0, 0.75j])
        for rho in (0.5, 0.9):
            quad = defect_norm_quadrature(f, rho, fock4, rel_tol=1e-10)
            formula = defect_norm_sq(f, rho, fock4)
            assert quad == pytest.approx(formula, rel=1e-8)

    def test_defect_quadrature_disc(self, disc1):
        f = HolomorphicCoeffs([1.0, 2.0j])
        quad = defect_norm_quadrature(f, 0.7, disc1, rel_tol=1e-10)
        formula = defect_norm_sq(f, 0.7, disc1)
        assert quad == pytest.approx(formula, rel=1e-8)

    def test_reproduce_constant(self, disc0):
        got = reproduce_check(disc0, HolomorphicCoeffs([1.0]), 0.3 + 0.1j)
        assert got == pytest.approx(1.0 + 0j, rel=1e-6)

    def test_reproduce_linear(self, disc1):
        got = reproduce_check(disc1, HolomorphicCoeffs([0.0, 1.0]), 0.5)
        assert got == pytest.approx(0.5 + 0j, rel=1e-6)

    def test_reproduce_quadratic_fock(self, fock2):
        z = 1.0 + 0.5j
        got = reproduce_check(fock2, HolomorphicCoeffs([0.0, 0.0, 1.0]), z)
        assert got == pytest.approx(z * z, rel=1e-6)

    def test_reproduce_degree_cap(self, disc0):
        with pytest.raises(ParameterDomainError):
            reproduce_check(disc0, HolomorphicCoeffs([0.0] * 11 + [1.0]), 0.1)

    def test_reproduce_domain(self, disc0):
        with pytest.raises(ConvergenceDomainError):
            reproduce_check(disc0, HolomorphicCoeffs([1.0]), 1.5)
