"""Direct time stepping for D_(k) u = lam u, u(0) = 1.

With u piecewise linear on the mesh, the regularized derivative
int_0^t k(t - tau) u'(tau) dtau at t_n becomes

    sum_j (u_{j+1} - u_j) / (t_{j+1} - t_j) * [K1(t_n - t_j) - K1(t_n - t_{j+1})],

where K1 is the cumulative kernel. The last term involves u_n with the
coefficient c_n = K1(h_n) / h_n, so each step solves one linear equation.
Work is O(N^2); nothing but the per-step diagonal weights is stored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StepSizeError
from .kernel import KernelSymbol


@dataclass(frozen=True)
class MeshSpec:
    horizon: float
    steps: int
    grading: float = 2.0

    def __post_init__(self):
        if not (self.horizon > 0.0 and math.isfinite(self.horizon)):
            raise DomainError(f"horizon must be positive and finite, got {self.horizon}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise DomainError(f"steps must be a positive integer, got {self.steps}")
        if not (self.grading >= 1.0 and math.isfinite(self.grading)):
            raise DomainError(f"grading must be >= 1, got {self.grading}")

    def points(self) -> np.ndarray:
        """t_j = horizon (j / steps)^grading, j = 0..steps."""
        t = self.horizon * (np.arange(self.steps + 1) / self.steps) ** self.grading
        t[-1] = self.horizon
        return t


@dataclass
class StepSolution:
    mesh: MeshSpec
    times: np.ndarray
    values: np.ndarray
    #: K1(h_n) for n = 1..steps, the diagonal increments of the scheme
    weights_cache: np.ndarray

    def at(self, t: float) -> float:
        """Linear interpolation of the piecewise-linear solution."""
        if not (0.0 <= t <= self.mesh.horizon):
            raise DomainError(f"t = {t} lies outside [0, {self.mesh.horizon}]")
        return float(np.interp(t, self.times, self.values))


def _march(symbol: KernelSymbol, rhs: float, mesh: MeshSpec) -> StepSolution:
    t = mesh.points()
    n_steps = mesh.steps
    h = np.diff(t)
    u = np.empty(n_steps + 1)
    u[0] = 1.0
    slopes = np.empty(n_steps)
    diag = np.empty(n_steps)
    for n in range(1, n_steps + 1):
        # K1(t_n - t_j) for j = 0..n-1; K1(0) = 0 closes the last increment
        k1 = np.append(symbol.cumulative_kernel(t[n] - t[:n]), 0.0)
        w = k1[:-1] - k1[1:]
        diag[n - 1] = w[-1]
        c = w[-1] / h[n - 1]
        if not c - rhs > 0.0:
            raise StepSizeError(
                f"implicit coefficient K1(h)/h - lambda = {c - rhs:.3e} <= 0 at step {n}; "
                "refine the mesh"
            )
        history = float(w[:-1] @ slopes[: n - 1]) if n > 1 else 0.0
        u[n] = (c * u[n - 1] - history) / (c - rhs)
        slopes[n - 1] = (u[n] - u[n - 1]) / h[n - 1]
    return StepSolution(mesh=mesh, times=t, values=u, weights_cache=diag)


def solve_growth_direct(symbol: KernelSymbol, lam: float, mesh: MeshSpec) -> StepSolution:
    """March D_(k) u = lam u on the graded mesh. lam = 0 is accepted and
    returns u = 1."""
    if not (lam >= 0.0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be nonnegative and finite, got {lam}")
    return _march(symbol, float(lam), mesh)


def solve_relaxation_direct(symbol: KernelSymbol, lam: float, mesh: MeshSpec) -> StepSolution:
    """The same scheme for D_(k) u = -lam u."""
    if not (lam >= 0.0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be nonnegative and finite, got {lam}")
    return _march(symbol, -float(lam), mesh)


def cumulative_kernel(symbol: KernelSymbol, t):
    """K1(t) = int_0^t k(s) ds."""
    return symbol.cumulative_kernel(t)
