"""Numerical Bromwich integrals (1/2 pi i) int e^{pt} f(p) dp for transforms
that are real on the positive axis and holomorphic in the cut plane apart
from finitely many real poles.

Two paths are provided:

* a left-opening hyperbola p(u) = c + S(1 - cosh u) + i k S sinh u that
  crosses the real axis only at ``c``; every singularity right of ``c`` is
  excluded and the cut (-inf, 0] is enclosed. Along the branches e^{pt}
  decays exponentially, so the trapezoid rule in u converges geometrically.
* the vertical line Re p = c, integrated with QUADPACK's Fourier-weight
  routine (cosine/sine weights on a semi-infinite interval).

Both return the integral multiplied by e^{-ct}, so callers can assemble
results in log space when e^{ct} overflows.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ConvergenceError

# e^{-DECAY_TARGET} is the relative size of the integrand at the truncation
# point of the hyperbola
DECAY_TARGET = 40.0
# S = min(distance to the nearest singularity, SCALE_CAP / t)
SCALE_CAP = 5.0
_GAUSS_POINTS = 8


@dataclass(frozen=True)
class Hyperbola:
    crossing: float
    scale: float
    aspect: float = 1.0

    def point(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s, k = self.scale, self.aspect
        p = self.crossing + s * (1.0 - np.cosh(u)) + 1j * k * s * np.sinh(u)
        dp = -s * np.sinh(u) + 1j * k * s * np.cosh(u)
        return p, dp


@dataclass(frozen=True)
class ContourResult:
    value: np.ndarray | float
    nodes: int
    height: float


def aspect_for_exponent(max_exponent: float) -> float:
    """Aspect ratio k = Im/Re slope of the hyperbola branches such that
    max_exponent * (asymptotic angle) stays below pi/2, keeping Re Phi(p) >= 0
    along the branches (needed when the transform contains e^{-s Phi(p)})."""
    margin = 0.05
    if max_exponent <= 0.0:
        theta = 0.75 * math.pi
    else:
        theta = min(0.75 * math.pi, max(0.5 * math.pi + margin, (0.5 * math.pi - margin) / max_exponent))
    return math.tan(math.pi - theta)


def _nodes(rule: str, h: float, upper: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, upper] for (1/pi) int_0^upper Im g(u) du."""
    if rule == "trapezoid":
        u = np.arange(0.0, upper + 0.5 * h, h)
        w = np.full(u.shape, h)
        w[0] *= 0.5
        return u, w
    if rule == "gauss-segments":
        xg, wg = np.polynomial.legendre.leggauss(_GAUSS_POINTS)
        starts = np.arange(0.0, upper, h)
        u = (starts[:, None] + 0.5 * h * (xg + 1.0)).ravel()
        w = np.tile(0.5 * h * wg, starts.size)
        return u, w
    raise ValueError(f"unknown quadrature rule {rule!r}")


def hyperbola_integral(
    fhat,
    t: float,
    crossing: float,
    distance: float,
    *,
    aspect: float = 1.0,
    nodes: int = 64,
    rule: str = "trapezoid",
    rtol: float = 1e-12,
    max_nodes: int = 1 << 17,
    max_height: float = math.inf,
    scale: float | None = None,
) -> ContourResult:
    """e^{-ct} (1/2 pi i) int e^{pt} fhat(p) dp along a hyperbola crossing the
    real axis at c = ``crossing``.

    ``distance`` is the gap between the crossing and the nearest
    singularity. ``fhat`` maps a 1-D complex array of nodes to an array whose
    last axis runs over the nodes; the result has the remaining shape. The
    step is halved until two successive sums agree to ``rtol`` (relative to
    the largest entry) or to the rounding floor of the sum.

    ``scale`` overrides the default hyperbola size min(distance, 5/t); it
    is needed when the transform has its own exponential factor whose saddle
    sets the natural size of the contour.
    """
    if not (t > 0.0 and distance > 0.0):
        raise ValueError("t and distance must be positive")
    if scale is None:
        scale = min(distance, SCALE_CAP / t)
    path = Hyperbola(crossing, scale, aspect)
    upper = math.acosh(1.0 + DECAY_TARGET / (scale * t))
    height = aspect * scale * math.sinh(upper)
    if height > max_height:
        raise ConvergenceError(
            f"contour tail needs |Im p| up to {height:.3e}, above the cap {max_height:.3e}"
        )
    h = upper / nodes
    prev = None
    n = 0
    while True:
        u, w = _nodes(rule, h, upper)
        n = u.size
        p, dp = path.point(u)
        with np.errstate(over="ignore", invalid="ignore"):
            g = (np.exp((p - crossing) * t) * dp) * fhat(p)
        if not np.all(np.isfinite(g)):
            raise ConvergenceError("transform is not finite on the inversion contour")
        val = (g.imag @ w) / math.pi
        if prev is not None:
            delta = np.max(np.abs(val - prev))
            size = np.max(np.abs(val))
            floor = 64.0 * np.finfo(float).eps * np.max(np.abs(g.imag) @ w) / math.pi
            if delta <= max(rtol * size, floor):
                break
        if 2 * n > max_nodes:
            raise ConvergenceError(f"contour quadrature did not settle with {n} nodes")
        prev = val
        h *= 0.5
    if np.ndim(val) == 0:
        val = float(val)
    return ContourResult(val, n, height)


def line_integral(fhat, t: float, abscissa: float, *, atol: float = 1e-13) -> ContourResult:
    """e^{-ct} (1/2 pi i) int_{c-i inf}^{c+i inf} e^{pt} fhat(p) dp for scalar
    ``fhat`` on the vertical line Re p = c.

    With conjugate symmetry the integral equals
    (1/pi) int_0^inf [cos(tau t) Re f - sin(tau t) Im f] dtau, which is
    passed to QUADPACK's Fourier routine (absolute tolerance only).
    """
    c = abscissa

    def re_f(tau):
        return fhat(complex(c, tau)).real

    def im_f(tau):
        return fhat(complex(c, tau)).imag

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        cos_part, _ = integrate.quad(re_f, 0.0, math.inf, weight="cos", wvar=t, epsabs=atol,
                                     limlst=200, limit=1000)
        sin_part, _ = integrate.quad(im_f, 0.0, math.inf, weight="sin", wvar=t, epsabs=atol,
                                     limlst=200, limit=1000)
    return ContourResult((cos_part - sin_part) / math.pi, 0, math.inf)
