"""Reference evaluator for the one-parameter Mittag-Leffler function on the
real line, E_a(z) = sum_k z^k / Gamma(a k + 1), 0 < a <= 1.

This is the ground truth for the power-law kernel, where the growth
solution is E_a(lam t^a) and the relaxation solution E_a(-lam t^a). It uses
its own gamma routine and shares no code with the kernel or inversion
modules.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate
from scipy.special import erfcx

from . import _gamma
from .errors import DomainError

_EPS = 2.220446049250313e-16
OVERLAP_TOL = 1e-9


class PrecisionLossWarning(UserWarning):
    pass


@dataclass(frozen=True)
class MLParams:
    alpha: float
    series_cutoff: float = 5.0
    asymptotic_terms: int = 10

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.series_cutoff <= 0.0 or self.asymptotic_terms < 1:
            raise DomainError("series_cutoff must be > 0 and asymptotic_terms >= 1")


def _term(alpha: float, k: int, az: float, logz: float) -> float:
    """|z|^k / Gamma(alpha k + 1); direct products are more accurate than
    exp(k log|z| - lgamma) while both factors stay in range."""
    x = alpha * k + 1.0
    if x < 170.0 and k * abs(logz) < 700.0:
        return az**k * _gamma.rgamma(x)
    return math.exp(k * logz - _gamma.lgamma(x))


def taylor_series(alpha: float, z: float) -> tuple[float, float]:
    """Sum the power series until the terms stagnate below machine epsilon.

    Returns (value, largest |term|); the second number measures how much
    cancellation the sum suffered for z < 0.
    """
    if z == 0.0:
        return 1.0, 1.0
    az = abs(z)
    logz = math.log(az)
    neg = z < 0.0
    terms = [1.0]
    biggest = 1.0
    k = 0
    prev = 1.0
    while True:
        k += 1
        mag = _term(alpha, k, az, logz)
        term = -mag if (neg and k % 2) else mag
        terms.append(term)
        biggest = max(biggest, mag)
        total = math.fsum(terms)
        if mag < prev and mag <= _EPS * max(abs(total), _EPS * biggest):
            return total, biggest
        prev = mag
        if k > 100000:
            return total, biggest


def _algebraic_terms(alpha: float, z: float, n_terms: int) -> list[float]:
    return [z ** (-k) * _gamma.rgamma(1.0 - alpha * k) for k in range(1, n_terms + 1)]


def asymptotic(alpha: float, z: float, n_terms: int = 10) -> float:
    """Large-|z| expansion. For z > 0 the exponential term
    (1/a) exp(z^(1/a)) dominates; for z < 0 only the algebraic tail remains."""
    tail = math.fsum(_algebraic_terms(alpha, z, n_terms))
    if z > 0.0:
        big = z ** (1.0 / alpha)
        if big > 709.0:
            return math.inf
        return math.exp(big) / alpha - tail
    return -tail


def _negative_integral(alpha: float, x: float) -> float:
    """E_a(-x) for x > 0 from the completely monotone spectral representation
    E_a(-x) = int_0^inf exp(-r x^(1/a)) K_a(r) dr."""
    c = math.cos(math.pi * alpha)
    pref = math.sin(math.pi * alpha) / math.pi
    scale = x ** (1.0 / alpha)

    def f(r):
        ra = r**alpha
        return pref * r ** (alpha - 1.0) * math.exp(-r * scale) / (ra * ra + 2.0 * ra * c + 1.0)

    # split at the scale of the exponential and at r = 1 where the
    # denominator has its structure
    cuts = sorted({1.0, 1.0 / scale})
    pieces = [(0.0, cuts[0])] + list(zip(cuts[:-1], cuts[1:])) + [(cuts[-1], math.inf)]
    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in pieces:
            val, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-13, limit=200)
            total += val
    return total


def _half_closed_form(z: float) -> float:
    # E_{1/2}(z) = exp(z^2) erfc(-z)
    if z >= 0.0:
        return 2.0 * math.exp(z * z) - float(erfcx(z))
    return float(erfcx(-z))


def regime_gap(params: MLParams, z: float) -> float:
    """Relative disagreement between the series and the asymptotic expansion."""
    s, _ = taylor_series(params.alpha, z)
    a = asymptotic(params.alpha, z, params.asymptotic_terms)
    return abs(s - a) / abs(s)


def _check_overlap(params: MLParams, z: float) -> None:
    """Warn when the two regimes disagree inside the overlap window
    |z - cutoff| <= 1; the returned value is unaffected."""
    if z ** (1.0 / params.alpha) >= 700.0:
        return
    gap = regime_gap(params, z)
    if gap > OVERLAP_TOL:
        warnings.warn(
            f"series and asymptotic evaluations of E_{params.alpha}({z}) differ by {gap:.2e}",
            PrecisionLossWarning,
            stacklevel=3,
        )


def mittag_leffler(params: MLParams | float, z: float) -> float:
    if not isinstance(params, MLParams):
        params = MLParams(float(params))
    alpha = params.alpha
    z = float(z)
    if not math.isfinite(z):
        raise DomainError("z must be finite")
    if alpha == 1.0:
        return math.exp(z)
    if alpha == 0.5:
        return _half_closed_form(z)
    if z == 0.0:
        return 1.0

    if z > 0.0:
        if abs(z - params.series_cutoff) <= 1.0:
            _check_overlap(params, z)
        if z <= params.series_cutoff:
            return taylor_series(alpha, z)[0]
        # the positive series never cancels, so it backs up the expansion
        # whenever the divergent algebraic tail is not negligible
        terms = _algebraic_terms(alpha, z, params.asymptotic_terms)
        value = asymptotic(alpha, z, params.asymptotic_terms)
        smallest = min((abs(t) for t in terms if t != 0.0), default=0.0)
        if smallest <= 1e-15 * value or z ** (1.0 / alpha) >= 700.0:
            return value
        return taylor_series(alpha, z)[0]

    # z < 0: the series alternates and cancels; use it only while the
    # largest term stays small, otherwise the asymptotic expansion when its
    # smallest retained term is negligible, otherwise the spectral integral.
    if -z <= params.series_cutoff:
        value, biggest = taylor_series(alpha, z)
        if biggest * _EPS <= 1e-14 * abs(value):
            return value
    if -z > params.series_cutoff:
        terms = _algebraic_terms(alpha, z, params.asymptotic_terms)
        candidate = -math.fsum(terms)
        smallest = min(abs(t) for t in terms if t != 0.0)
        if smallest <= 1e-14 * abs(candidate):
            return candidate
    return _negative_integral(alpha, -z)


def log_mittag_leffler(params: MLParams | float, z: float) -> float:
    """log E_a(z) for z >= 0, usable where E_a(z) overflows."""
    if not isinstance(params, MLParams):
        params = MLParams(float(params))
    alpha = params.alpha
    if z < 0.0:
        raise DomainError("log_mittag_leffler is provided for z >= 0")
    big = z ** (1.0 / alpha)
    if z <= params.series_cutoff or big < 600.0:
        return math.log(mittag_leffler(params, z))
    tail = math.fsum(_algebraic_terms(alpha, z, params.asymptotic_terms))
    return big - math.log(alpha) + math.log1p(-alpha * tail * math.exp(-big))
