"""The subordination kernel G(s, t) and the growth solution rebuilt from it.

G(., t) is a probability density in s whose Laplace transform in t is
g(s, p) = K(p) exp(-s Phi(p)); the growth solution then has the
representation u(t) = int_0^inf exp(lam s) G(s, t) ds.

Each value G(s, t) is an inverse Laplace transform, computed on a
hyperbola that crosses the real axis at the saddle point of
p t - s Phi(p) (where Phi'(c) = t/s) or at 1/t, whichever is larger. The
exponential part exp(c t - s Phi(c)) is factored out, so deep tails of G
keep full relative accuracy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import contour as _contour
from .errors import ConvergenceError, DomainError, NonFiniteError
from .kernel import KernelSymbol, _gauss_legendre_01

NEGATIVE_TOL = 1e-8
MASS_TOL = 1e-6
GRID_POINTS = 200
GRID_SPAN = (1e-4, 50.0)
# composite Gauss-Legendre over s: points per panel, stopping rule
_PANEL_POINTS = 16
_QUAD_RTOL = 1e-11
_TAIL_RATIO = 1e-18
_MAX_DOUBLINGS = 60
_MAX_PANEL_LEVELS = 9
_UNDERFLOW_LOG = -745.0


def g_hat(symbol: KernelSymbol, s: float, p):
    """K(p) exp(-s Phi(p)), combined in log space so that a huge K or a huge
    s Phi does not overflow an intermediate."""
    if not (s >= 0.0 and math.isfinite(s)):
        raise DomainError(f"s must be nonnegative and finite, got {s}")
    log_val = np.log(np.asarray(symbol.laplace_K(p), dtype=complex)) - s * np.asarray(symbol.phi(p), dtype=complex)
    with np.errstate(over="ignore"):
        val = np.exp(log_val)
    if not np.all(np.isfinite(val)):
        raise NonFiniteError("g(s, p) overflows")
    if np.isrealobj(p) or np.all(np.imag(p) == 0):
        val = val.real
    return val.item() if val.ndim == 0 else val


def _crossing(symbol: KernelSymbol, s: float, t: float) -> float:
    base = 1.0 / t
    if s == 0.0:
        return base
    target = t / s
    f = lambda x: math.log(symbol.phi_prime(math.exp(x))) - math.log(target)  # noqa: E731
    lo = math.log(base)
    if f(lo) <= 0.0:
        return base
    hi = lo + 1.0
    while f(hi) > 0.0:
        hi += 1.0 + (hi - lo)
        if hi > 700.0:
            return math.exp(700.0)
    return math.exp(brentq(f, lo, hi, xtol=1e-12))


def kernel_value(symbol: KernelSymbol, s: float, t: float, aspect: float | None = None) -> float:
    """G(s, t) for one pair."""
    if aspect is None:
        aspect = _contour.aspect_for_exponent(symbol.max_exponent)
    c = _crossing(symbol, s, t)
    phi_c = symbol.phi(c)

    log_scale = c * t - s * phi_c
    # the contour sum is of the size Phi(c) times the aspect; below this
    # bound G underflows and the (costly) integral is skipped
    if log_scale + math.log1p(phi_c * max(aspect, 1.0)) < _UNDERFLOW_LOG:
        return 0.0

    def fhat(p):
        return symbol.laplace_K(p) * np.exp(-s * (symbol.phi(p) - phi_c))

    # the saddle sets the contour size
    res = _contour.hyperbola_integral(fhat, t, c, c, aspect=aspect, scale=c)
    return math.exp(log_scale) * res.value


@dataclass
class SubordinationSlice:
    t: float
    s_grid: list[float]
    g_values: list[float]
    mass: float
    min_value: float
    clamped: int = 0
    ok: bool = True
    notes: list[str] = field(default_factory=list)


def default_s_grid(symbol: KernelSymbol, t: float, points: int = GRID_POINTS) -> np.ndarray:
    """Geometric grid over [1e-4, 50] times the natural s-scale 1/Phi(1/t)."""
    scale = 1.0 / symbol.phi(1.0 / t)
    return np.geomspace(GRID_SPAN[0] * scale, GRID_SPAN[1] * scale, points)


def _integrate_s(fun, scale: float) -> float:
    """int_0^inf fun(s) ds for a smooth, eventually decaying fun.

    The upper limit doubles from ``scale`` until fun has fallen by
    _TAIL_RATIO below its largest sample and is decreasing; then panel
    Gauss-Legendre sums are refined until they settle.
    """
    peak = 0.0
    upper = scale
    prev = None
    for _ in range(_MAX_DOUBLINGS):
        val = abs(fun(upper))
        peak = max(peak, val)
        if prev is not None and val < prev and val <= _TAIL_RATIO * peak:
            break
        prev = val
        upper *= 2.0
    else:
        raise ConvergenceError(f"integrand in s still not decaying at s = {upper:.3e}")
    xg, wg = _gauss_legendre_01(_PANEL_POINTS)
    panels = max(8, int(math.ceil(upper / scale)))
    last = None
    for _ in range(_MAX_PANEL_LEVELS):
        edges = np.linspace(0.0, upper, panels + 1)
        width = edges[1] - edges[0]
        nodes = (edges[:-1, None] + width * xg).ravel()
        total = math.fsum(w * fun(s) for s, w in zip(nodes, np.tile(width * wg, panels)))
        if last is not None and abs(total - last) <= _QUAD_RTOL * abs(total):
            return total
        last = total
        panels *= 2
    raise ConvergenceError("s-quadrature did not settle under panel refinement")


def subordination_kernel(symbol: KernelSymbol, t: float, s_grid=None) -> SubordinationSlice:
    """G(s, t) on ``s_grid`` together with the mass int_0^inf G(s, t) ds.

    Values in [-1e-8, 0) are clamped to zero (and counted); anything more
    negative marks the slice as failed.
    """
    if not (t > 0.0 and math.isfinite(t)):
        raise DomainError(f"t must be positive and finite, got {t}")
    grid = default_s_grid(symbol, t) if s_grid is None else np.asarray(s_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("s_grid must be a non-empty 1-D sequence")
    if np.any(grid < 0.0) or np.any(np.diff(grid) <= 0.0) or not np.all(np.isfinite(grid)):
        raise DomainError("s_grid must be nonnegative, finite and strictly increasing")
    aspect = _contour.aspect_for_exponent(symbol.max_exponent)
    values = [kernel_value(symbol, float(s), t, aspect) for s in grid]

    seen = list(values)
    clamped = 0

    def density(s):
        nonlocal clamped
        g = kernel_value(symbol, float(s), t, aspect)
        seen.append(g)
        if -NEGATIVE_TOL <= g < 0.0:
            clamped += 1
            return 0.0
        return g

    mass = _integrate_s(density, 1.0 / symbol.phi(1.0 / t))
    min_value = float(min(seen))
    notes = []
    ok = True
    if min_value < -NEGATIVE_TOL:
        ok = False
        notes.append(f"G has a value {min_value:.3e} below -{NEGATIVE_TOL:g}")
    if abs(mass - 1.0) > MASS_TOL:
        ok = False
        notes.append(f"mass {mass:.12g} differs from 1 by more than {MASS_TOL:g}")
    clamped += sum(1 for g in values if -NEGATIVE_TOL <= g < 0.0)
    return SubordinationSlice(
        t=float(t), s_grid=[float(s) for s in grid], g_values=[float(g) for g in values],
        mass=mass, min_value=min_value, clamped=clamped, ok=ok, notes=notes,
    )


def laplace_mass(symbol: KernelSymbol, p: float) -> float:
    """int_0^inf g(s, p) ds by the s-quadrature; equals 1/p exactly."""
    if not p > 0.0:
        raise DomainError("p must be positive")
    return _integrate_s(lambda s: g_hat(symbol, s, p), 1.0 / symbol.phi(p))


def growth_via_subordination(symbol: KernelSymbol, lam: float, t: float) -> float:
    """u(t) = int_0^inf exp(lam s) G(s, t) ds."""
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be positive and finite, got {lam}")
    if not (t > 0.0 and math.isfinite(t)):
        raise DomainError(f"t must be positive and finite, got {t}")
    aspect = _contour.aspect_for_exponent(symbol.max_exponent)

    def integrand(s):
        g = kernel_value(symbol, float(s), t, aspect)
        return math.exp(lam * s) * max(g, 0.0) if g >= -NEGATIVE_TOL else math.exp(lam * s) * g

    scale = min(1.0 / symbol.phi(1.0 / t), 1.0 / lam)
    return _integrate_s(integrand, scale)
