"""The canonical solution operator on polynomial inputs.

For a holomorphic f(z) = sum a_k z^k the canonical solution of du/dzbar = f
(the solution orthogonal to the holomorphic subspace) is

    S(f)(z) = zbar * f(z) - sum_{k>=1} a_k (c_k^2 / c_{k-1}^2) z^(k-1),

which the toolkit represents structurally as a :class:`HybridFunction`
zbar * g(z) + h(z).  In that representation the equation du/dzbar = f and the
orthogonality <S(f), z^j> = 0 are facts of coefficient algebra, checkable
exactly; pointwise evaluation, finite differences and quadrature are demoted
to oracle roles.

Inputs are finite Taylor polynomials.  They are dense in the spaces at hand
and every formula acts coefficientwise, so desk-scale verification loses
nothing; genuinely infinite expansions are out of scope.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceDomainError,
    ParameterDomainError,
    SeriesTruncationError,
)
from .quadrature import adaptive_quad, unbounded_radial_quad
from .spectrum import eigenvalue
from .weights import DiscPolynomial, MomentSequence

_KERNEL_TERM_BUDGET = 10 ** 6


@dataclass(frozen=True)
class HolomorphicCoeffs:
    """Finite Taylor coefficient vector a_0 ... a_d (trailing zeros stripped)."""

    coeffs: tuple

    def __init__(self, coeffs=()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Polynomial degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> complex:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0j

    def __call__(self, z):
        """Evaluate by Horner's rule; accepts scalars or ndarrays."""
        acc = 0j * z
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def __iter__(self):
        return iter(self.coeffs)


@dataclass(frozen=True)
class HybridFunction:
    """zbar * g(z) + h(z) with polynomial g and h.

    The Wirtinger derivative d/dzbar of this expression is g identically, so
    ``conj_factor`` *is* the right-hand side the function solves for.
    """

    conj_factor: HolomorphicCoeffs
    holo_part: HolomorphicCoeffs

    def value(self, z):
        return np.conjugate(z) * self.conj_factor(z) + self.holo_part(z)

    @property
    def dbar(self) -> HolomorphicCoeffs:
        """d/dzbar at coefficient level (exact)."""
        return self.conj_factor


def apply_solution_operator(f: HolomorphicCoeffs,
                            moments: MomentSequence) -> HybridFunction:
    """S(f) as zbar*f(z) + h(z) with h_{k-1} = -a_k c_k^2 / c_{k-1}^2.

    By construction dS(f)/dzbar = f exactly; orthogonality to the holomorphic
    subspace is checked by :func:`monomial_inner_product`.
    """
    h = [-f.coefficient(k) * math.exp(moments.log_ratio(k - 1))
         for k in range(1, f.degree + 1)]
    return HybridFunction(conj_factor=f, holo_part=HolomorphicCoeffs(h))


def space_norm_sq(f: HolomorphicCoeffs, moments: MomentSequence) -> float:
    """||f||^2 = sum |a_k|^2 c_k^2 in the weighted space."""
    return sum(abs(a) ** 2 * math.exp(moments.log_moment(k))
               for k, a in enumerate(f))


def kernel_eval(moments: MomentSequence, z: complex, w: complex,
                rel_tol: float = 1e-10) -> complex:
    """Reproducing kernel K(z, w) = sum_k (z wbar)^k / c_k^2.

    The series is truncated once a ratio-test bound on the remaining tail
    falls below ``rel_tol`` times the partial sum's magnitude.  For the disc
    weights both arguments must lie strictly inside the unit disc.
    """
    if not (1e-14 < rel_tol < 1e-2):
        raise ParameterDomainError(
            f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol!r}")
    z = complex(z)
    w = complex(w)
    if isinstance(moments.weight, DiscPolynomial):
        if abs(z) >= 1.0 or abs(w) >= 1.0:
            raise ConvergenceDomainError(
                "kernel series for disc weights needs |z| < 1 and |w| < 1, "
                f"got |z|={abs(z)!r}, |w|={abs(w)!r}")
    q = z * w.conjugate()
    absq = abs(q)
    term = complex(math.exp(-moments.log_moment(0)))
    total = term
    k = 0
    while True:
        # growth factor |term_{k+1}| / |term_k|; decreasing by log-convexity
        growth = absq * math.exp(-moments.log_ratio(k))
        if growth < 1.0:
            tail = abs(term) * growth / (1.0 - growth)
            if tail <= rel_tol * max(abs(total), 1e-300):
                return total
        if k + 1 > _KERNEL_TERM_BUDGET:
            raise SeriesTruncationError(
                f"kernel series did not meet its tail bound within "
                f"{_KERNEL_TERM_BUDGET} terms (|z wbar| = {absq!r})")
        term = term * q * math.exp(-moments.log_ratio(k))
        total += term
        k += 1


def project_dilated(f: HolomorphicCoeffs, rho: float,
                    moments: MomentSequence) -> HolomorphicCoeffs:
    """Projection of zbar * f(rho z) back to the holomorphic subspace.

    Coefficient k-1 of the result is a_k (c_k^2 / c_{k-1}^2) rho^k.
    """
    if not (0.0 < rho < 1.0):
        raise ParameterDomainError(f"rho must lie in (0, 1), got {rho!r}")
    out = [f.coefficient(k) * math.exp(moments.log_ratio(k - 1)) * rho ** k
           for k in range(1, f.degree + 1)]
    return HolomorphicCoeffs(out)


def defect_norm_sq(f: HolomorphicCoeffs, rho: float,
                   moments: MomentSequence) -> float:
    """||zbar f_rho - P(zbar f_rho)||^2 = sum_k |a_k|^2 c_k^2 rho^(2k) lambda_k.

    With rho = 1 this is ||S(f)||^2 (the k = 0 term being |a_0|^2 c_1^2).
    """
    if not (0.0 < rho <= 1.0):
        raise ParameterDomainError(f"rho must lie in (0, 1], got {rho!r}")
    total = 0.0
    for k, a in enumerate(f):
        if a == 0:
            continue
        total += (abs(a) ** 2 * math.exp(moments.log_moment(k))
                  * rho ** (2 * k) * eigenvalue(moments, k))
    return total


def bound_constant(moments: MomentSequence, N: int) -> float:
    """max(lambda_0, ..., lambda_N): a computable uniform-bound witness.

    ``defect_norm_sq(f, rho) <= bound_constant(moments, N) * ||f||^2`` for
    every polynomial f of degree <= N and every rho in (0, 1].
    """
    if not (isinstance(N, (int, np.integer)) and N >= 1):
        raise ParameterDomainError(f"N must be an integer >= 1, got {N!r}")
    return max(eigenvalue(moments, k) for k in range(int(N) + 1))


def monomial_inner_product(F: HybridFunction, j: int,
                           moments: MomentSequence) -> complex:
    """<F, z^j> by coefficient algebra.

    Radial orthogonality leaves exactly two contributions:
    <zbar z^(j+1), z^j> = c_{j+1}^2 and <z^j, z^j> = c_j^2, so

        <F, z^j> = g_{j+1} c_{j+1}^2 + h_j c_j^2
                 = c_j^2 * (g_{j+1} * r_j + h_j),        r_j = c_{j+1}^2/c_j^2.

    The factored form is used on purpose: when F came from
    :func:`apply_solution_operator`, h_j is the float -g_{j+1} * r_j with the
    identical r_j, so the bracket cancels exactly in floating point.
    """
    if not (isinstance(j, (int, np.integer)) and j >= 0):
        raise ParameterDomainError(f"j must be an integer >= 0, got {j!r}")
    g = F.conj_factor.coefficient(j + 1)
    h = F.holo_part.coefficient(j)
    if g == 0 and h == 0:
        return 0j
    return math.exp(moments.log_moment(j)) * (
        g * math.exp(moments.log_ratio(j)) + h)


def dbar_residual(F: HybridFunction, f: HolomorphicCoeffs, points,
                  h: float = 1e-5) -> float:
    """max over points of |finite-difference d/dzbar of F  -  f|.

    The Wirtinger derivative (d/dx + i d/dy)/2 is approximated by central
    differences of step ``h`` on the evaluated F; this validates the
    evaluation code against the exact coefficient-level identity.
    """
    if not (1e-8 < h < 1e-3):
        raise ParameterDomainError(f"h must lie in (1e-8, 1e-3), got {h!r}")
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise ParameterDomainError("points must be a nonempty collection")
    if not np.all(np.isfinite(pts)):
        raise ParameterDomainError("points must be finite")
    wirt = (F.value(pts + h) - F.value(pts - h)
            + 1j * (F.value(pts + 1j * h) - F.value(pts - 1j * h))) / (4.0 * h)
    return float(np.max(np.abs(wirt - f(pts))))


# ---------------------------------------------------------------------------
# quadrature oracles: these re-derive the coefficient identities by numerical
# integration and are intentionally independent of the algebra above.
# ---------------------------------------------------------------------------


def _theta_count(degree: int, minimum: int = 32) -> int:
    n = minimum
    while n < 4 * (degree + 2):
        n *= 2
    return n


def _radial_profile(weight, radii, fn):
    """2 pi * r * density(r) * mean_theta fn(w) on the circle |w| = r.

    ``fn`` maps an ndarray of points w to values; rows whose density already
    underflowed to zero are skipped so the polynomial factors can never
    produce inf * 0.
    """
    radii = np.asarray(radii, dtype=float)
    dens = weight.density(radii)
    out = np.zeros(radii.shape, dtype=complex)
    mask = dens > 0.0
    if np.any(mask):
        vals = fn(radii[mask])
        out[mask] = 2.0 * math.pi * radii[mask] * dens[mask] * vals
    return out


def defect_norm_quadrature(f: HolomorphicCoeffs, rho: float,
                           moments: MomentSequence,
                           rel_tol: float = 1e-10) -> float:
    """integral of |zbar f(rho z) - P(zbar f_rho)(z)|^2 dmu by quadrature.

    Radial-angular: the angular average is a trapezoid over enough uniform
    angles to integrate the trigonometric polynomial exactly; the radial
    integral is adaptive.  Must agree with :func:`defect_norm_sq`.
    """
    if not (0.0 < rho < 1.0):
        raise ParameterDomainError(f"rho must lie in (0, 1), got {rho!r}")
    weight = moments.weight
    proj = project_dilated(f, rho, moments)
    ntheta = _theta_count(f.degree + 1)
    phases = np.exp(2j * math.pi * np.arange(ntheta) / ntheta)

    def angular_mean(rs):
        w = rs[:, None] * phases[None, :]
        diff = np.conjugate(w) * f(rho * w) - proj(w)
        return np.mean(diff.real ** 2 + diff.imag ** 2, axis=1)

    def radial(rs):
        return _radial_profile(weight, rs, angular_mean)

    if math.isinf(weight.support_radius):
        d = max(f.degree, 0)
        m = getattr(weight, "m", 2.0)
        peak = ((2.0 * d + 3.0) / m) ** (1.0 / m)
        value, _ = unbounded_radial_quad(
            radial, rel_tol=0.25 * rel_tol,
            points=[0.5 * peak, peak, 2.0 * peak])
    else:
        value, _ = adaptive_quad(radial, 0.0, weight.support_radius,
                                 rel_tol=0.25 * rel_tol)
    return float(np.real(value))


def reproduce_check(moments: MomentSequence, f: HolomorphicCoeffs, z: complex,
                    rel_tol: float = 1e-8) -> complex:
    """integral of K(z, w) f(w) dmu(w), which must reproduce f(z).

    Validates the kernel series and the quadrature stack jointly.  Restricted
    to low degrees (<= 10) where the angular aliasing of the fixed 128-angle
    grid is far below every tolerance in use.
    """
    if not (1e-14 < rel_tol < 1e-2):
        raise ParameterDomainError(
            f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol!r}")
    if f.degree > 10:
        raise ParameterDomainError(
            f"reproduce_check is restricted to degree <= 10, got {f.degree}")
    z = complex(z)
    weight = moments.weight
    if isinstance(weight, DiscPolynomial) and abs(z) >= 1.0:
        raise ConvergenceDomainError(
            f"evaluation point must satisfy |z| < 1, got |z|={abs(z)!r}")
    ntheta = 128
    phases = np.exp(2j * math.pi * np.arange(ntheta) / ntheta)
    absz = abs(z)

    def kernel_coeff_count(qmax: float) -> int:
        # log-domain tail test: the term magnitudes can overflow a double
        # long before the density window closes.
        if qmax <= 0.0:
            return 0
        k = 0
        log_term = -moments.log_moment(0)
        log_total = log_term
        log_eps = math.log(1e-18)
        while True:
            growth = qmax * math.exp(-moments.log_ratio(k))
            if growth < 1.0:
                log_tail = log_term + math.log(growth / (1.0 - growth))
                if log_tail <= log_eps + log_total:
                    return k
            if k > _KERNEL_TERM_BUDGET:
                raise SeriesTruncationError(
                    "kernel series for the reproducing integral did not "
                    f"converge within {_KERNEL_TERM_BUDGET} terms")
            log_term += math.log(qmax) - moments.log_ratio(k)
            log_total = max(log_total, log_term)
            k += 1

    def angular_mean(rs):
        cut = kernel_coeff_count(absz * float(rs.max()))
        coeffs = [math.exp(-moments.log_moment(k)) for k in range(cut + 1)]
        w = rs[:, None] * phases[None, :]
        v = np.zeros_like(w)
        u = z * np.conjugate(w)
        for c in reversed(coeffs):
            v = v * u + c
        return np.mean(v * f(w), axis=1)

    def radial(rs):
        return _radial_profile(weight, rs, angular_mean)

    if math.isinf(weight.support_radius):
        m = getattr(weight, "m", 2.0)
        d = max(f.degree, 0)
        peak = ((2.0 * d + 3.0) / m) ** (1.0 / m)
        guess = max(peak, absz, 1.0)
        value, _ = unbounded_radial_quad(
            radial, rel_tol=0.05 * rel_tol,
            points=[0.5 * guess, guess, 2.0 * guess, 4.0 * guess])
    else:
        value, _ = adaptive_quad(radial, 0.0, weight.support_radius,
                                 rel_tol=0.05 * rel_tol)
    return complex(value)
