"""The unit ball in C^2 with weight (1 - |z1|^2 - |z2|^2)^alpha.

On (0,1)-forms with holomorphic coefficients the solution operator acts on
the orthonormal basis u_{n1,n2} dzbar_1, u_{n1,n2} dzbar_2 built from the
monomials z1^n1 z2^n2 / c_{n1,n2}.  The squared norms of its values are the
per-direction "form energies"

    ||S(u_{n1,n2} dzbar_1)||^2 = (alpha + n2 + 2)
        / ((alpha + n1 + n2 + 3)(alpha + n1 + n2 + 2)),

and the double sum of the two directions over n1, n2 >= 1 diverges: in two
variables the operator fails to be Hilbert-Schmidt for every alpha >= 0,
in contrast with the one-variable disc.

The kernel prefactor deserves a note: matching the series expansion at
z = w = 0 forces K(0,0) = 1/c_{0,0}^2 = (alpha+1)(alpha+2)/pi^2, and for
alpha = 0 the classical ball kernel 2/pi^2 (1 - <z,w>)^{-3} confirms it, so
:func:`ball_kernel_closed` carries the prefactor (alpha+1)(alpha+2)/pi^2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceDomainError,
    DivergenceError,
    ParameterDomainError,
    SeriesTruncationError,
)
from .quadrature import adaptive_quad
from .special import LOG_PI, log_factorial

_LOG_PI2 = 2.0 * LOG_PI
_TERM_BUDGET = 10 ** 6


def _check_alpha(alpha: float) -> float:
    if not (math.isfinite(alpha) and alpha >= 0.0):
        raise ParameterDomainError(f"ball weight requires alpha >= 0, got {alpha!r}")
    return float(alpha)


def _check_order(n, name: str) -> int:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterDomainError(f"{name} must be an integer >= 0, got {n!r}")
    return int(n)


def ball_moment_log(alpha: float, n1, n2) -> float:
    """ln c_{n1,n2}^2 = ln pi^2 + ln n1! + ln n2! - sum_{j=1}^{n1+n2+2} ln(alpha+j)."""
    alpha = _check_alpha(alpha)
    n1 = _check_order(n1, "n1")
    n2 = _check_order(n2, "n2")
    denom = 0.0
    for j in range(1, n1 + n2 + 3):
        denom += math.log(alpha + j)
    return _LOG_PI2 + log_factorial(n1) + log_factorial(n2) - denom


@dataclass(frozen=True)
class BallMomentGrid:
    """2-D array of ln c_{n1,n2}^2, exactly symmetric in (n1, n2)."""

    alpha: float
    log_moments: np.ndarray

    @classmethod
    def build(cls, alpha: float, n_max: int) -> "BallMomentGrid":
        alpha = _check_alpha(alpha)
        n_max = _check_order(n_max, "n_max")
        grid = np.empty((n_max + 1, n_max + 1))
        grid[0, 0] = ball_moment_log(alpha, 0, 0)
        for n2 in range(n_max):
            # c_{0,n2+1}^2 / c_{0,n2}^2 = (n2+1)/(alpha+n2+3)
            grid[0, n2 + 1] = grid[0, n2] + math.log(n2 + 1.0) \
                - math.log(alpha + n2 + 3.0)
        for n1 in range(n_max):
            for n2 in range(n_max + 1):
                grid[n1 + 1, n2] = grid[n1, n2] + math.log(n1 + 1.0) \
                    - math.log(alpha + n1 + n2 + 3.0)
        # the formula is symmetric; mirror the upper triangle so the stored
        # values are symmetric bit for bit
        iu = np.triu_indices(n_max + 1, k=1)
        grid[(iu[1], iu[0])] = grid[iu]
        if not np.all(np.isfinite(grid)):
            raise DivergenceError("ball moment grid contains non-finite entries")
        return cls(alpha=alpha, log_moments=grid)

    def log_moment(self, n1: int, n2: int) -> float:
        return float(self.log_moments[n1, n2])


def form_energy(alpha: float, n1, n2, direction: int) -> float:
    """||S(u_{n1,n2} dzbar_direction)||^2 from the closed form.

    Direction 1 gives (alpha+n2+2)/((alpha+n1+n2+3)(alpha+n1+n2+2));
    direction 2 swaps n1 and n2.  Equals the moment-ratio difference
    c_{n1+1,n2}^2/c_{n1,n2}^2 - c_{n1,n2}^2/c_{n1-1,n2}^2 for n1 >= 1,
    which :func:`form_energy_from_moments` re-derives through the moment
    route for the test suite.
    """
    alpha = _check_alpha(alpha)
    n1 = _check_order(n1, "n1")
    n2 = _check_order(n2, "n2")
    if direction not in (1, 2):
        raise ParameterDomainError(f"direction must be 1 or 2, got {direction!r}")
    if direction == 2:
        n1, n2 = n2, n1
    sigma = alpha + n1 + n2
    return (alpha + n2 + 2.0) / ((sigma + 3.0) * (sigma + 2.0))


def ball_log_ratio(alpha: float, n1, n2) -> float:
    """ln(c_{n1+1,n2}^2 / c_{n1,n2}^2) = ln(n1+1) - ln(alpha+n1+n2+3).

    The cancellation-free form of the log-moment difference (compare the
    1-D :meth:`MomentSequence.log_ratio`); the other index direction follows
    by symmetry of the moments.
    """
    alpha = _check_alpha(alpha)
    n1 = _check_order(n1, "n1")
    n2 = _check_order(n2, "n2")
    return math.log(n1 + 1.0) - math.log(alpha + n1 + n2 + 3.0)


def form_energy_from_moments(alpha: float, n1, n2, direction: int) -> float:
    """The dzbar_direction energy by the moment-ratio route, n_direction >= 1.

    Evaluates r * expm1(delta) with r = c^2(n1,n2)/c^2(n1-1,n2) and delta the
    second log-moment difference.  The regrouping

        delta = log1p(1/n1) - log1p(1/(alpha+n1+n2+2))

    keeps full relative accuracy (subtracting the two log-ratios directly
    loses ~3 digits by n1+n2 = 50).  The agreement with :func:`form_energy`
    witnesses the algebraic identity between the two closed forms.
    """
    alpha = _check_alpha(alpha)
    n1 = _check_order(n1, "n1")
    n2 = _check_order(n2, "n2")
    if direction not in (1, 2):
        raise ParameterDomainError(f"direction must be 1 or 2, got {direction!r}")
    if direction == 2:
        n1, n2 = n2, n1
    if n1 < 1:
        raise ParameterDomainError("the moment-ratio route needs n_direction >= 1")
    lr_prev = ball_log_ratio(alpha, n1 - 1, n2)
    delta = math.log1p(1.0 / n1) - math.log1p(1.0 / (alpha + n1 + n2 + 2.0))
    return math.exp(lr_prev) * math.expm1(delta)


def ball_hs_partial_sum(alpha: float, N: int) -> float:
    """sum_{n1,n2=1}^{N} of both direction energies, row-major order.

    Grows without bound as N increases: the Hilbert-Schmidt test fails on
    the two-dimensional ball.  N = 0 is the empty sum.
    """
    alpha = _check_alpha(alpha)
    N = _check_order(N, "N")
    total = 0.0
    for n1 in range(1, N + 1):
        for n2 in range(1, N + 1):
            sigma = alpha + n1 + n2
            denom = (sigma + 3.0) * (sigma + 2.0)
            total += (alpha + n2 + 2.0) / denom + (alpha + n1 + 2.0) / denom
    return total


def ball_kernel_series(alpha: float, z, w, rel_tol: float = 1e-10) -> complex:
    """Kernel sum over multi-indices: sum z^nu wbar^nu / c_nu^2.

    Summed diagonal by diagonal in sigma = n1 + n2 with a ratio-test tail
    bound.  Requires both arguments strictly inside the unit ball of C^2.
    """
    alpha = _check_alpha(alpha)
    if not (1e-14 < rel_tol < 1e-2):
        raise ParameterDomainError(
            f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol!r}")
    z1, z2 = complex(z[0]), complex(z[1])
    w1, w2 = complex(w[0]), complex(w[1])
    if math.hypot(abs(z1), abs(z2)) >= 1.0 or math.hypot(abs(w1), abs(w2)) >= 1.0:
        raise ConvergenceDomainError(
            "ball kernel series requires both points strictly inside the ball")
    q1 = z1 * w1.conjugate()
    q2 = z2 * w2.conjugate()
    u = abs(q1) + abs(q2)

    # cumulative logs of P(sigma) = prod_{j=1}^{sigma+2} (alpha+j) and sigma!
    log_p = math.log(alpha + 1.0) + math.log(alpha + 2.0)
    log_fact = [0.0]
    q1_pow = [1.0 + 0j]
    q2_pow = [1.0 + 0j]
    total = 0j
    sigma = 0
    terms = 0
    while True:
        diag = 0j
        for n1 in range(sigma + 1):
            n2 = sigma - n1
            coeff = math.exp(log_p - log_fact[n1] - log_fact[n2] - _LOG_PI2)
            diag += coeff * q1_pow[n1] * q2_pow[n2]
        total += diag
        terms += sigma + 1
        # bound on diagonal sigma+1: exp(log_p') u^(sigma+1) / (sigma+1)! / pi^2
        growth = u * (alpha + sigma + 3.0) / (sigma + 1.0)
        log_next = (log_p + math.log(alpha + sigma + 3.0)
                    - log_fact[sigma] - math.log(sigma + 1.0) - _LOG_PI2
                    + (sigma + 1) * math.log(u) if u > 0.0 else -math.inf)
        if u == 0.0:
            return total
        if growth < 1.0:
            tail = math.exp(log_next) / (1.0 - growth)
            if tail <= rel_tol * max(abs(total), 1e-300):
                return total
        if terms > _TERM_BUDGET:
            raise SeriesTruncationError(
                f"ball kernel series exceeded {_TERM_BUDGET} terms")
        sigma += 1
        log_p += math.log(alpha + sigma + 2.0)
        log_fact.append(log_fact[-1] + math.log(sigma))
        q1_pow.append(q1_pow[-1] * q1)
        q2_pow.append(q2_pow[-1] * q2)


def ball_kernel_closed(alpha: float, z, w) -> complex:
    """(alpha+1)(alpha+2)/pi^2 * (1 - z1 wbar1 - z2 wbar2)^(-(alpha+3)).

    The prefactor is pinned by the series' (0,0) term, 1/c_{0,0}^2; see the
    module docstring.
    """
    alpha = _check_alpha(alpha)
    z1, z2 = complex(z[0]), complex(z[1])
    w1, w2 = complex(w[0]), complex(w[1])
    t = z1 * w1.conjugate() + z2 * w2.conjugate()
    pref = (alpha + 1.0) * (alpha + 2.0) / math.pi ** 2
    return pref * (1.0 - t) ** (-(alpha + 3.0))


def ball_moment_quadrature(alpha: float, n1, n2, rel_tol: float = 1e-10) -> float:
    """ln c_{n1,n2}^2 by nested 1-D adaptive quadratures (independent oracle).

    Uses the substitution s1 = 1 - r1^2 - r2^2, s2 = 1 - r2^2, under which

        c^2 = pi^2 * int_0^1 (1-s2)^n2 [ int_0^s2 (s2-s1)^n1 s1^alpha ds1 ] ds2.
    """
    alpha = _check_alpha(alpha)
    n1 = _check_order(n1, "n1")
    n2 = _check_order(n2, "n2")
    if not (1e-14 < rel_tol < 1e-2):
        raise ParameterDomainError(
            f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol!r}")

    def inner(s2: float) -> float:
        def g(s1):
            return (s2 - s1) ** n1 * s1 ** alpha

        value, _ = adaptive_quad(g, 0.0, s2, rel_tol=1e-12, initial=4)
        return float(np.real(value))

    def outer(s2s):
        s2s = np.asarray(s2s, dtype=float)
        return np.array([(1.0 - s) ** n2 * inner(s) for s in s2s])

    value, _ = adaptive_quad(outer, 0.0, 1.0, rel_tol=0.25 * rel_tol, initial=4)
    value = math.pi ** 2 * float(np.real(value))
    if not (math.isfinite(value) and value > 0.0):
        raise DivergenceError(
            f"ball moment ({n1},{n2}) is not finite positive (got {value!r})")
    return math.log(value)
