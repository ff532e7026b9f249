"""Growth and relaxation solutions by numerical Laplace inversion.

The growth solution has transform K(p) / (Phi(p) - lam) = 1/p + lam / (p (Phi(p) - lam)),
with a single simple pole at p0 on the positive axis. Two evaluation modes
are offered:

``residue_split``
    u(t) = A e^{p0 t} + V(t), with the residue term in closed form and
    V(t) = 1 + lam (1/2 pi i) int_{Re p = r} e^{pt} / (p (Phi - lam)) dp for
    some 0 < r < p0.
``bromwich``
    the full transform integrated on a contour crossing the real axis at
    gamma > p0.

The integrals are computed on a left-opening hyperbola (see
:mod:`gfcgrowth.contour`); by Cauchy's theorem this equals the vertical-line
integral, since the region in between is free of singularities. The
vertical line itself is available with ``path="line"`` as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import contour as _contour
from .errors import DomainError, InadmissibleKernelError
from .kernel import KernelSymbol, check_admissibility
from .rootfind import asymptotic_amplitude, p0_of_lambda

MIN_NODES = 64
DEFAULT_HEIGHT_CAP = 1e8
RELAXATION_GAMMA = 1.0
# e^{p0 t} beyond this is only reported in log space
LOG_SPACE_THRESHOLD = 700.0


@dataclass(frozen=True)
class ContourSpec:
    """Inversion contour parameters.

    ``gamma`` and ``r`` are the real-axis crossings for the bromwich and the
    residue-split modes; ``None`` selects the defaults (gamma = 2 p0,
    r = min(p0/2, 1/t), relaxation gamma = min(1, 1/t)).
    """

    gamma: float | None = None
    r: float | None = None
    truncation_height: float = DEFAULT_HEIGHT_CAP
    nodes: int = MIN_NODES
    rule: str = "trapezoid"
    path: str = "hyperbola"
    rtol: float = 1e-12
    max_nodes: int = 1 << 17

    def __post_init__(self):
        if self.nodes < MIN_NODES:
            raise DomainError(f"nodes must be >= {MIN_NODES}, got {self.nodes}")
        if self.rule not in ("trapezoid", "gauss-segments"):
            raise DomainError(f"rule must be 'trapezoid' or 'gauss-segments', got {self.rule!r}")
        if self.path not in ("hyperbola", "line"):
            raise DomainError(f"path must be 'hyperbola' or 'line', got {self.path!r}")
        if not self.truncation_height > 0.0:
            raise DomainError("truncation_height must be positive")
        for name in ("gamma", "r"):
            v = getattr(self, name)
            if v is not None and not (v > 0.0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive and finite")
        if self.gamma is not None and self.r is not None and not self.r < self.gamma:
            raise DomainError("r must be smaller than gamma")

    def validate_for(self, p0: float) -> None:
        if self.r is not None and not self.r < p0:
            raise DomainError(f"r = {self.r} must lie below p0 = {p0}")
        if self.gamma is not None and not self.gamma > p0:
            raise DomainError(f"gamma = {self.gamma} must exceed p0 = {p0}")


@dataclass
class GrowthSolution:
    lam: float
    p0: float
    amplitude: float
    times: list[float]
    values: list[float]
    remainders: list[float]
    normalized: list[float]
    log_values: list[float]
    mode: str
    nodes: list[int] = field(default_factory=list)

    @property
    def remainder_ratios(self) -> list[float]:
        """V(t) e^{-p0 t}, computed without forming e^{p0 t}."""
        return [n - self.amplitude for n in self.normalized]


def _times(times) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(times, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("times must be a non-empty 1-D sequence")
    if np.any(~(arr > 0.0)) or np.any(~np.isfinite(arr)):
        raise DomainError("times must be positive and finite")
    return arr


def _integrate(fhat, t: float, crossing: float, distance: float, spec: ContourSpec, aspect: float):
    """e^{-ct} times the inverse transform at t."""
    if spec.path == "line":
        scalar = lambda p: complex(fhat(np.array([p]))[0])  # noqa: E731
        return _contour.line_integral(scalar, t, crossing)
    return _contour.hyperbola_integral(
        fhat, t, crossing, distance,
        aspect=aspect, nodes=spec.nodes, rule=spec.rule, rtol=spec.rtol,
        max_nodes=spec.max_nodes, max_height=spec.truncation_height,
    )


def _require_admissible(symbol: KernelSymbol) -> None:
    report = check_admissibility(symbol)
    if not report.all_ok:
        raise InadmissibleKernelError(
            "residue-split inversion needs the limit conditions and "
            "int_1^inf ds/(s Phi(s)) < inf: " + "; ".join(report.notes)
        )


def solve_growth(
    symbol: KernelSymbol,
    lam: float,
    times,
    contour: ContourSpec | None = None,
    mode: str = "residue_split",
) -> GrowthSolution:
    """Solve D_(k) u = lam u, u(0) = 1 on the given times."""
    spec = contour or ContourSpec()
    if mode not in ("residue_split", "bromwich"):
        raise DomainError(f"mode must be 'residue_split' or 'bromwich', got {mode!r}")
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be positive and finite, got {lam}")
    ts = _times(times)
    if mode == "residue_split":
        _require_admissible(symbol)
    root = p0_of_lambda(symbol, lam)
    p0 = root.p0
    spec.validate_for(p0)
    amp = asymptotic_amplitude(symbol, lam, root)

    if mode == "residue_split":
        def fhat(p):
            return 1.0 / (p * (symbol.phi(p) - lam))
    else:
        def fhat(p):
            return symbol.laplace_K(p) / (symbol.phi(p) - lam)

    values, remainders, normalized, logs, nodes = [], [], [], [], []
    for t in ts:
        t = float(t)
        if mode == "residue_split":
            c = spec.r if spec.r is not None else min(0.5 * p0, 1.0 / t)
            res = _integrate(fhat, t, c, min(c, p0 - c), spec, 1.0)
            # V = 1 + lam e^{ct} S; everything below is scaled by e^{-p0 t}
            norm = amp + math.exp(-p0 * t) + lam * math.exp((c - p0) * t) * res.value
            v = 1.0 + lam * math.exp(c * t) * res.value if c * t < LOG_SPACE_THRESHOLD else math.nan
            remainders.append(v)
        else:
            c = spec.gamma if spec.gamma is not None else 2.0 * p0
            res = _integrate(fhat, t, c, min(c - p0, c), spec, 1.0)
            norm = math.exp((c - p0) * t) * res.value
            remainders.append(math.nan)
        log_u = p0 * t + math.log(norm) if norm > 0.0 else math.nan
        if p0 * t < LOG_SPACE_THRESHOLD:
            u = math.exp(p0 * t) * norm
        else:
            u = math.inf
        values.append(u)
        normalized.append(norm)
        logs.append(log_u)
        nodes.append(res.nodes)
    return GrowthSolution(
        lam=float(lam), p0=p0, amplitude=amp, times=[float(t) for t in ts],
        values=values, remainders=remainders, normalized=normalized,
        log_values=logs, mode=mode, nodes=nodes,
    )


def solve_relaxation(symbol: KernelSymbol, lam: float, times, contour: ContourSpec | None = None) -> list[float]:
    """Solve D_(k) u = -lam u, u(0) = 1. The transform K/(Phi + lam) has no
    poles off the cut, so any crossing c > 0 works; c = min(gamma, 1/t)
    keeps e^{ct} of order one and the sum free of cancellation."""
    spec = contour or ContourSpec()
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be positive and finite, got {lam}")
    ts = _times(times)
    gamma = spec.gamma if spec.gamma is not None else RELAXATION_GAMMA

    def fhat(p):
        return symbol.laplace_K(p) / (symbol.phi(p) + lam)

    out = []
    for t in ts:
        t = float(t)
        c = min(gamma, 1.0 / t)
        res = _integrate(fhat, t, c, c, spec, 1.0)
        out.append(math.exp(c * t) * res.value)
    return out


def remainder_ratio(symbol: KernelSymbol, lam: float, t: float, contour: ContourSpec | None = None) -> float:
    """V(t) e^{-p0 t}, where V = u - A e^{p0 t}."""
    sol = solve_growth(symbol, lam, [t], contour, mode="residue_split")
    return sol.remainder_ratios[0]

