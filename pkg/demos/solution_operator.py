#!/usr/bin/env python3
"""Applying the canonical solution operator to polynomial data.

For holomorphic f, the canonical solution of du/dzbar = f is

    S(f)(z) = zbar f(z) - sum_(k>=1) a_k (c_k^2/c_(k-1)^2) z^(k-1),

stored here as the pair (f, h).  That structure makes the two defining
properties checkable by coefficient algebra alone: the Wirtinger derivative
d/dzbar is exactly f, and every inner product against a monomial cancels
exactly.  Finite differences and quadrature then act only as oracles for the
evaluation code.
"""

import math

import numpy as np

from dbarkit import (
    DiscPolynomial,
    FockExponential,
    HolomorphicCoeffs,
    MomentSequence,
    apply_solution_operator,
    dbar_residual,
    defect_norm_quadrature,
    defect_norm_sq,
    kernel_eval,
    monomial_inner_product,
    reproduce_check,
    space_norm_sq,
)


def main():
    fock2 = MomentSequence(FockExponential(2.0))
    disc0 = MomentSequence(DiscPolynomial(0.0))

    print("S(1) = zbar and S(z) = |z|^2 - c_1^2/c_0^2:")
    for label, ms in (("fock:m=2", fock2), ("disc:alpha=0", disc0)):
        F = apply_solution_operator(HolomorphicCoeffs([0.0, 1.0]), ms)
        print(f"  {label}: h = {[c.real for c in F.holo_part]}")

    print("\nexactness on a random degree-12 polynomial (Gaussian weight):")
    rng = np.random.default_rng(3)
    f = HolomorphicCoeffs(rng.standard_normal(13) + 1j * rng.standard_normal(13))
    F = apply_solution_operator(f, fock2)
    pts = 2.0 * np.sqrt(rng.uniform(0, 1, 200)) * np.exp(2j * math.pi * rng.uniform(0, 1, 200))
    print(f"  d/dzbar residual (central differences): {dbar_residual(F, f, pts):.3e}")
    worst = max(abs(monomial_inner_product(F, j, fock2)) for j in range(f.degree + 3))
    print(f"  worst |<S(f), z^j>|: {worst:.3e}  (exact zero by construction)")

    print("\nGaussian isometry: ||S(f)||^2 / ||f||^2 at m = 2:")
    print(f"  {defect_norm_sq(f, 1.0, fock2) / space_norm_sq(f, fock2):.15f}")

    print("\nnorm identity vs 2-D quadrature (m = 4, rho = 0.9, degree 3):")
    fock4 = MomentSequence(FockExponential(4.0))
    g = HolomorphicCoeffs([0.5, -1.0 + 0.25j, 0.0, 0.75j])
    quad = defect_norm_quadrature(g, 0.9, fock4)
    formula = defect_norm_sq(g, 0.9, fock4)
    print(f"  quadrature {quad:.12e}")
    print(f"  formula    {formula:.12e}")

    print("\nreproducing kernel: pointwise values and the reproducing integral:")
    print(f"  K(1,1) Gaussian      = {kernel_eval(fock2, 1.0, 1.0).real:.12g} "
          f"(e/pi = {math.e/math.pi:.12g})")
    got = reproduce_check(fock2, HolomorphicCoeffs([0.0, 0.0, 1.0]), 1.0 + 0.5j)
    print(f"  P(z^2) at 1+0.5j     = {got:.12g} (z^2 = {(1.0 + 0.5j)**2:.12g})")


if __name__ == "__main__":
    main()
