#!/usr/bin/env python3
"""Numerical hypothesis checks for plurisubharmonic weights on C^n.

For weights of the form tau * p(z) the Hilbert-Schmidt conclusion in several
variables needs four properties of p: a finite conjugate p*, superlinear
growth, p~/p -> 1 at infinity (p~ being the sup of p over a unit ball), and
integrability of exp((tau - sigma) p).  All four are probed numerically by
grid search + local zoom; the checker reports "consistent with", never
"proven".
"""

import numpy as np

from dbarkit import (
    PshWeight,
    check_hilbert_schmidt_hypotheses,
    conjugate_transform,
    sup_shift,
)


def main():
    # |z|^2: the model weight; every check passes and p* = |w|^2/4
    gauss = PshWeight(1, lambda z: np.sum(np.abs(z) ** 2, axis=-1))
    print("p(z) = |z|^2")
    for w in (1.0, 2.0, 1.0 + 1.0j):
        got = conjugate_transform(gauss, [w])
        print(f"  p*({w}) = {got:.6f}   (|w|^2/4 = {abs(w) ** 2 / 4:.6f})")
    for z in (3.0, 1000.0):
        shifted = sup_shift(gauss, [z])
        print(f"  p~({z}) = {shifted:.6f}, ratio p~/p = {shifted / abs(z) ** 2:.9f}")

    print()
    print(check_hilbert_schmidt_hypotheses(gauss, tau=1.0, sigma=2.0))

    # |z|: grows only linearly, so the superlinear-growth check must fail
    linear = PshWeight(1, lambda z: np.sum(np.abs(z), axis=-1))
    print("\np(z) = |z|")
    print(check_hilbert_schmidt_hypotheses(linear, tau=1.0, sigma=2.0))


if __name__ == "__main__":
    main()
