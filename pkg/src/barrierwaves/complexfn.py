"""Scalar special functions used by the half-plane propagator.

Everything here is a plain complex-to-complex (or real-to-real) function
with no geometry attached:

* ``faddeeva_w``      -- the Faddeeva function w(z) = exp(-z^2) erfc(-iz)
* ``erfcx``           -- the scaled complementary error function
                         exp(z^2) erfc(z) for complex argument, equal to
                         (2/sqrt(pi)) * Integral_0^inf exp(-s^2 - 2 z s) ds;
                         this is the boundary-layer factor of the propagator
* ``erfcx_by_quadrature`` -- slow adaptive-quadrature reference for ``erfcx``
* ``gamma_real``      -- Euler Gamma on a guarded real domain
* ``mittag_leffler_half`` -- E_{1/2,1/2}, the growth envelope of the
                         operator-series bounds, plus a log-space companion

``erfcx`` and ``erfcx_by_quadrature`` are deliberately independent code
paths: the former goes through the Faddeeva function, the latter integrates
the defining integral directly, so each one cross-checks the other.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import wofz

SQRT_PI = math.sqrt(math.pi)
TWO_OVER_SQRT_PI = 2.0 / SQRT_PI

# exp overflows above this; used to fail fast instead of returning inf
_LOG_DBL_MAX = math.log(np.finfo(float).max)


class ToleranceNotReached(ArithmeticError):
    """Adaptive refinement hit its subdivision cap before converging."""


def faddeeva_w(z):
    """Faddeeva function w(z) = exp(-z**2) * erfc(-1j*z).

    Parameters
    ----------
    z : complex or array_like
        Evaluation point(s), any quadrant.

    Returns
    -------
    complex or ndarray
        w(z), relative accuracy ~1e-13.  On the closed upper half-plane
        |w(z)| <= 1; in the lower half-plane the value grows like
        2*exp(-z**2) and may overflow to inf for Im(z) << 0.  Callers that
        need the growing branch at large arguments should fold the
        exponential analytically (see ``greens``) instead of evaluating it
        here.
    """
    return wofz(z)


def erfcx(z):
    """Scaled complementary error function exp(z^2)*erfc(z) for complex z.

    Satisfies the reflection identity erfcx(z) + erfcx(-z) = 2*exp(z^2),
    the bound |erfcx(z)| <= 2*exp(|z|^2), and |erfcx(z)| <= 1 for
    Re(z) >= 0.  Computed as w(iz).
    """
    z = np.asarray(z, dtype=complex)
    out = wofz(1j * z)
    if out.ndim == 0:
        return complex(out)
    return out


def erfcx_by_quadrature(z, tol=1e-13):
    """Reference value of ``erfcx`` by adaptive integration.

    Integrates (2/sqrt(pi)) * exp(-s^2 - 2 z s) over s in [0, inf) with
    composite Gauss-Legendre panels, doubling the panel count until two
    successive refinements agree to ``tol`` (relative).  Independent of the
    Faddeeva-function route, so it serves as the oracle for ``erfcx``.

    Parameters
    ----------
    z : complex
        Point with Re(z) >= 0.  (For Re(z) < 0 the integral still
        converges but loses relative accuracy to cancellation; use the
        reflection identity instead.)
    tol : float
        Relative agreement required between successive refinements.

    Raises
    ------
    ValueError
        If Re(z) < 0.
    ToleranceNotReached
        If the refinement cap is hit first.
    """
    z = complex(z)
    if z.real < 0:
        raise ValueError("erfcx_by_quadrature requires Re(z) >= 0; use the reflection identity")
    # exp(-s^2 - 2 z s) with Re z >= 0 is below 1e-36 beyond s = 9
    upper = 9.0
    nodes, weights = leggauss(32)
    prev = None
    npanels = 2
    while npanels <= 4096:
        edges = np.linspace(0.0, upper, npanels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
        half = 0.5 * (edges[1] - edges[0])
        s = mid + half * nodes[None, :]
        vals = np.exp(-s * s - 2.0 * z * s)
        total = TWO_OVER_SQRT_PI * half * np.sum(weights[None, :] * vals)
        if prev is not None and abs(total - prev) <= tol * max(abs(total), 1e-300):
            return complex(total)
        prev = total
        npanels *= 2
    raise ToleranceNotReached(f"erfcx quadrature did not reach tol={tol} at z={z}")


def gamma_real(x):
    """Euler Gamma for real x in [0.4, 200].

    The window covers every half-integer and integer argument the
    coefficient bounds need (Gamma((n+1)/2) for n up to the operator-order
    cap) while staying clear of the poles and of overflow.

    Raises
    ------
    ValueError
        If x is outside [0.4, 200].
    """
    if not 0.4 <= x <= 200.0:
        raise ValueError(f"gamma_real domain is [0.4, 200], got {x}")
    return math.gamma(x)


def mittag_leffler_half(x):
    """Mittag-Leffler function E_{1/2,1/2}(x) = sum_n x^n / Gamma((n+1)/2).

    Grows like 2*x*exp(x^2); this is the envelope controlling how fast the
    operator-series majorants blow up with the datum growth rate.

    Parameters
    ----------
    x : float
        Nonnegative argument.

    Raises
    ------
    ValueError
        If x < 0.
    OverflowError
        If the value exceeds the double range (x around 26.6 and above).
        Use ``log_mittag_leffler_half`` there.
    """
    if x < 0:
        raise ValueError(f"mittag_leffler_half requires x >= 0, got {x}")
    # terms advance via q_n = Gamma((n+1)/2)/Gamma((n+2)/2), which obeys
    # q_{n+2} = q_n (n+1)/(n+2); no Gamma of a large integer is ever formed
    q_even = SQRT_PI          # q_0
    q_odd = 2.0 / SQRT_PI     # q_1
    term = 1.0 / SQRT_PI      # x^0 / Gamma(1/2)
    total = term
    comp = 0.0
    for n in range(100000):
        if n % 2 == 0:
            term = term * x * q_even
            q_even = q_even * (n + 1) / (n + 2)
        else:
            term = term * x * q_odd
            q_odd = q_odd * (n + 1) / (n + 2)
        # Neumaier update (terms are nonnegative but keep the general form)
        s = total + term
        if math.isinf(s):
            raise OverflowError(f"mittag_leffler_half overflows at x={x}")
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        if n > 4 and term < 1e-16 * total:
            return total + comp
    raise ToleranceNotReached(f"mittag_leffler_half series stalled at x={x}")


def log_mittag_leffler_half(x):
    """Natural log of E_{1/2,1/2}(x), stable for large x.

    The continuity-constant bounds square E_{1/2,1/2} at arguments where
    the value itself is far beyond double range, so the bound arithmetic
    runs in log space through this function.
    """
    if x < 0:
        raise ValueError(f"log_mittag_leffler_half requires x >= 0, got {x}")
    if x == 0.0:
        return -math.log(SQRT_PI)
    if x <= 20.0:
        return math.log(mittag_leffler_half(x))
    # log-sum-exp over log(x^n / Gamma((n+1)/2)); terms peak near n = 2 x^2
    from scipy.special import gammaln

    n_peak = int(2.0 * x * x)
    width = int(12.0 * math.sqrt(n_peak) + 40)
    n = np.arange(max(0, n_peak - width), n_peak + width + 1, dtype=float)
    logs = n * math.log(x) - gammaln((n + 1.0) / 2.0)
    m = logs.max()
    return float(m + math.log(np.sum(np.exp(logs - m))))
