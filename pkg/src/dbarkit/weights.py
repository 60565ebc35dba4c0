"""Radial weights and their moment sequences.

A radial weight on a disc (or on all of the plane) is described by one of
three specifications:

* :class:`DiscPolynomial` -- density (1 - |z|^2)^alpha on the unit disc;
* :class:`FockExponential` -- density exp(-|z|^m) on the whole plane;
* :class:`CustomRadial` -- a caller-supplied radial density.

The moments are the squared monomial norms

    c_n^2 = 2 pi * integral_0^R r^(2n+1) density(r) dr,

kept in natural-log form throughout: the factorial-type growth of c_n^2
overflows doubles near n = 170, while every quantity the toolkit consumes
(ratios, eigenvalues, kernel coefficients) only needs differences of logs.

Closed forms exist for the first two families; the adaptive quadrature in
:func:`moment_quadrature` is deliberately kept independent of them and acts
as the verification oracle.  For custom weights the quadrature is the only
route.  Orthogonality of the monomials is automatic for radial densities;
their *completeness* cannot be decided from samples and remains the caller's
responsibility for custom weights.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import DivergenceError, ParameterDomainError
from .quadrature import adaptive_quad, unbounded_radial_quad
from .special import LOG_2PI, LOG_PI, log_factorial, log_gamma, log_gamma_ratio


@dataclass(frozen=True)
class DiscPolynomial:
    """Weight (1 - |z|^2)^alpha on the unit disc, alpha >= 0."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (math.isfinite(a) and a >= 0.0):
            raise ParameterDomainError(
                f"DiscPolynomial requires alpha >= 0, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def support_radius(self) -> float:
        return 1.0

    def density(self, r):
        r = np.asarray(r, dtype=float)
        base = np.clip(1.0 - r * r, 0.0, None)
        return np.where(r <= 1.0, base ** self.alpha, 0.0)

    @property
    def label(self) -> str:
        return f"disc:alpha={self.alpha:g}"


@dataclass(frozen=True)
class FockExponential:
    """Weight exp(-|z|^m) on the whole plane, m > 0."""

    m: float

    def __post_init__(self):
        m = float(self.m)
        if not (math.isfinite(m) and m > 0.0):
            raise ParameterDomainError(
                f"FockExponential requires m > 0, got {self.m!r}")
        object.__setattr__(self, "m", m)

    @property
    def support_radius(self) -> float:
        return math.inf

    def density(self, r):
        r = np.asarray(r, dtype=float)
        return np.exp(-(r ** self.m))

    @property
    def label(self) -> str:
        return f"fock:m={self.m:g}"


@dataclass(frozen=True)
class CustomRadial:
    """A caller-supplied radial density with the given support radius.

    ``density`` must accept a float ndarray of radii and return nonnegative
    values of the same shape (a scalar-only callable is adapted on the fly).
    Finiteness of the moments is only checked when they are computed.
    """

    density_fn: Callable = field(compare=False)
    support_radius: float = math.inf

    def __post_init__(self):
        rr = float(self.support_radius)
        if not rr > 0.0:
            raise ParameterDomainError(
                f"CustomRadial support_radius must be positive, got "
                f"{self.support_radius!r}")
        object.__setattr__(self, "support_radius", rr)

    def density(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            try:
                vals = np.asarray(self.density_fn(r), dtype=float)
                if vals.shape != r.shape:
                    raise ValueError
            except (TypeError, ValueError):
                vals = np.asarray([self.density_fn(float(x)) for x in r.ravel()],
                                  dtype=float).reshape(r.shape)
        return vals

    @property
    def label(self) -> str:
        return "custom"


WeightSpec = Union[DiscPolynomial, FockExponential, CustomRadial]


def _check_order(n) -> int:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterDomainError(f"moment order must be an integer >= 0, got {n!r}")
    return int(n)


def disc_moment_closed(alpha: float, n) -> float:
    """ln c_n^2 for the disc weight: ln pi + ln n! - sum_{j=1}^{n+1} ln(alpha+j).

    Accumulated termwise in log domain, so no factorial is ever formed.
    """
    n = _check_order(n)
    if not (math.isfinite(alpha) and alpha >= 0.0):
        raise ParameterDomainError(f"disc weight requires alpha >= 0, got {alpha!r}")
    denom = 0.0
    for j in range(1, n + 2):
        denom += math.log(alpha + j)
    return LOG_PI + log_factorial(n) - denom


def fock_moment_closed(m: float, n) -> float:
    """ln c_n^2 for the exponential weight: ln(2 pi / m) + ln Gamma((2n+2)/m).

    The identity c_n^2 = (2 pi / m) Gamma((2n+2)/m) follows from substituting
    u = r^m in the defining integral; the quadrature oracle revalidates it in
    the test suite.
    """
    n = _check_order(n)
    if not (math.isfinite(m) and m > 0.0):
        raise ParameterDomainError(f"fock weight requires m > 0, got {m!r}")
    return LOG_2PI - math.log(m) + log_gamma((2.0 * n + 2.0) / m)


def moment_log(weight: WeightSpec, n) -> float:
    """ln c_n^2 by closed form where one exists, by quadrature otherwise."""
    n = _check_order(n)
    if isinstance(weight, DiscPolynomial):
        return disc_moment_closed(weight.alpha, n)
    if isinstance(weight, FockExponential):
        return fock_moment_closed(weight.m, n)
    if isinstance(weight, CustomRadial):
        return moment_quadrature(weight, n)
    raise ParameterDomainError(f"unknown weight specification {weight!r}")


def moment_quadrature(weight: WeightSpec, n, rel_tol: float = 1e-10) -> float:
    """ln c_n^2 by adaptive quadrature of 2 pi * int r^(2n+1) density(r) dr.

    Unbounded supports are folded onto [0, 1) by r = t/(1-t), so the tail is
    charged to the ordinary error estimate.  Independent of the closed forms;
    this is the oracle the closed forms are tested against.
    """
    n = _check_order(n)
    if not (1e-14 < rel_tol < 1e-2):
        raise ParameterDomainError(
            f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol!r}")
    power = 2 * n + 1

    if isinstance(weight, DiscPolynomial):
        alpha = weight.alpha

        def f(r):
            base = np.clip(1.0 - r * r, 0.0, None)
            return 2.0 * math.pi * r ** power * base ** alpha

        value, _ = adaptive_quad(f, 0.0, 1.0, rel_tol=0.25 * rel_tol)
    elif isinstance(weight, FockExponential):
        m = weight.m

        def f(r):
            r = np.asarray(r, dtype=float)
            with np.errstate(divide="ignore"):
                expo = LOG_2PI + power * np.log(r) - r ** m
            return np.exp(expo)

        peak = (power / m) ** (1.0 / m)
        value, _ = unbounded_radial_quad(
            f, rel_tol=0.25 * rel_tol,
            points=[0.25 * peak, 0.5 * peak, peak, 2.0 * peak, 4.0 * peak])
    elif isinstance(weight, CustomRadial):
        def f(r):
            r = np.asarray(r, dtype=float)
            dens = weight.density(r)
            if np.any(dens < 0.0):
                raise ParameterDomainError(
                    "custom radial density returned negative values")
            out = np.zeros_like(r)
            mask = dens > 0.0
            with np.errstate(over="ignore"):
                out[mask] = 2.0 * math.pi * r[mask] ** power * dens[mask]
            return out

        try:
            if math.isinf(weight.support_radius):
                value, _ = unbounded_radial_quad(f, rel_tol=0.25 * rel_tol,
                                                 initial=32)
                # the substitution clamps at r ~ 1e12, which turns a slowly
                # divergent integral into a huge finite one; a convergent
                # moment must have an integrand that has died out long before
                probe = np.array([1e6, 1e8])
                tail_scale = float(np.max(f(probe) * probe))
                if not tail_scale <= rel_tol * abs(value):
                    raise DivergenceError(
                        f"moment of order {n} looks divergent: the integrand "
                        "has not decayed by r = 1e8", order=n)
            else:
                value, _ = adaptive_quad(f, 0.0, weight.support_radius,
                                         rel_tol=0.25 * rel_tol, initial=16)
        except DivergenceError as exc:
            if exc.order is not None:
                raise
            raise DivergenceError(
                f"moment of order {n} diverges for the custom density",
                order=n) from exc
    else:
        raise ParameterDomainError(f"unknown weight specification {weight!r}")

    value = float(np.real(value))
    if not (math.isfinite(value) and value > 0.0):
        raise DivergenceError(
            f"moment of order {n} is not a finite positive number "
            f"(got {value!r})", order=n)
    return math.log(value)


class MomentSequence:
    """Lazy log-domain cache of the moments c_n^2 of one weight.

    The cache is observationally pure: queries extend it monotonically and
    repeated queries return bit-identical values.  Instances are therefore
    safe to share between concurrent readers.

    ``log_ratio(n)`` returns ln(c_{n+1}^2 / c_n^2) through a path that keeps
    its *absolute* error at a few ulp even when the log moments themselves
    are huge; eigenvalue computations depend on this.
    """

    def __init__(self, weight: WeightSpec, quad_rel_tol: float = 1e-10):
        if not isinstance(weight, (DiscPolynomial, FockExponential, CustomRadial)):
            raise ParameterDomainError(f"unknown weight specification {weight!r}")
        self.weight = weight
        self._quad_rel_tol = quad_rel_tol
        self._logs: list[float] = []

    # -- cache ------------------------------------------------------------

    def ensure(self, n: int) -> None:
        """Extend the cache so that ln c_k^2 is available for all k <= n."""
        n = _check_order(n)
        w = self.weight
        while len(self._logs) <= n:
            k = len(self._logs)
            if isinstance(w, DiscPolynomial):
                if k == 0:
                    self._logs.append(LOG_PI - math.log(w.alpha + 1.0))
                else:
                    self._logs.append(self._logs[k - 1] + self.log_ratio(k - 1))
            elif isinstance(w, FockExponential):
                self._logs.append(fock_moment_closed(w.m, k))
            else:
                self._logs.append(moment_quadrature(w, k, self._quad_rel_tol))

    @property
    def computed_upto(self) -> int:
        """Largest order currently cached (-1 when empty)."""
        return len(self._logs) - 1

    @property
    def log_moments(self) -> np.ndarray:
        """Copy of the cached ln c_n^2 values."""
        return np.array(self._logs, dtype=float)

    # -- queries ------------------------------------------------------------

    def log_moment(self, n: int) -> float:
        self.ensure(n)
        return self._logs[n]

    def moment(self, n: int) -> float:
        return math.exp(self.log_moment(n))

    def log_ratio(self, n: int) -> float:
        """ln(c_{n+1}^2 / c_n^2), with variant-specific cancellation control."""
        n = _check_order(n)
        w = self.weight
        if isinstance(w, DiscPolynomial):
            return math.log(n + 1.0) - math.log(w.alpha + n + 2.0)
        if isinstance(w, FockExponential):
            return log_gamma_ratio((2.0 * n + 2.0) / w.m, 2.0 / w.m)
        return self.log_moment(n + 1) - self.log_moment(n)

    def ratio(self, n: int) -> float:
        """c_{n+1}^2 / c_n^2."""
        return math.exp(self.log_ratio(n))

    def log_convexity_defect(self, n_max: int) -> float:
        """max over 1 <= n < n_max of ln c_n^2 - (ln c_{n-1}^2 + ln c_{n+1}^2)/2.

        Nonpositive (up to rounding) for every genuine weight, by
        Cauchy-Schwarz on the defining integrals.
        """
        n_max = _check_order(n_max)
        worst = -math.inf
        for n in range(1, n_max):
            worst = max(worst, 0.5 * (self.log_ratio(n - 1) - self.log_ratio(n)))
        return worst

    def __repr__(self) -> str:  # pragma: no cover
        return (f"MomentSequence({self.weight!r}, "
                f"computed_upto={self.computed_upto})")
