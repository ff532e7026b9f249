"""Admissible convolution kernels described through their Laplace symbols.

A kernel ``k`` is represented by ``Phi(p) = p K(p)``, where ``K`` is the
Laplace transform of ``k``. Every concrete symbol here is a complete
Bernstein function: it extends holomorphically to the cut plane
``C \\ (-inf, 0]`` and the Stieltjes representation
``Phi(p) = int p / (p + t) sigma(dt)`` holds for a nonnegative measure sigma.

Evaluation functions accept scalars or numpy arrays and return the same
shape. Complex input is evaluated on the principal branch.
"""
from __future__ import annotations

import abc
import functools
import math
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import BarycentricInterpolator
from scipy.special import exp1, rgamma

from .errors import DomainError, InputError, NonFiniteError

# Gauss-Legendre rule used by DistributedOrder; the doubled rule is the
# refinement check.
DO_QUAD_NODES = 64
DO_REFINEMENT_TOL = 1e-10


def _gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _prepare(p, *, allow_complex: bool = True) -> tuple[np.ndarray, bool]:
    arr = np.asarray(p)
    scalar = arr.ndim == 0
    if np.iscomplexobj(arr):
        if not allow_complex:
            raise DomainError("argument must be real")
        arr = arr.astype(complex)
        on_cut = (arr.imag == 0.0) & (arr.real <= 0.0)
    else:
        arr = arr.astype(float)
        on_cut = arr <= 0.0
    if np.any(on_cut):
        raise DomainError("argument lies on the branch cut (-inf, 0]")
    if np.any(~np.isfinite(arr)):
        raise DomainError("argument must be finite")
    return np.atleast_1d(arr), scalar


def _finish(values: np.ndarray, scalar: bool, what: str):
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(f"{what} is not finite (overflow in evaluation)")
    if scalar:
        v = values[0]
        return complex(v) if np.iscomplexobj(values) else float(v)
    return values


def _positive_reals(s, what: str) -> tuple[np.ndarray, bool]:
    arr = np.asarray(s, dtype=float)
    if np.any(~(arr > 0.0)) or np.any(~np.isfinite(arr)):
        raise DomainError(f"{what} requires finite positive arguments")
    return np.atleast_1d(arr), arr.ndim == 0


@dataclass(frozen=True)
class StieltjesMeasure:
    """Finite nonnegative measure on [0, inf): point atoms plus quadrature
    nodes that discretize an absolutely continuous part."""

    atoms: tuple[tuple[float, float], ...] = ()
    density_nodes: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((float(a), float(m)) for a, m in self.atoms))
        object.__setattr__(
            self, "density_nodes", tuple((float(a), float(m)) for a, m in self.density_nodes)
        )
        pairs = self.atoms + self.density_nodes
        if not pairs:
            raise InputError("measure must have at least one atom or node")
        for loc, mass in pairs:
            if not (math.isfinite(loc) and loc >= 0.0):
                raise InputError(f"measure location {loc} must be finite and >= 0")
            if not (math.isfinite(mass) and mass > 0.0):
                raise InputError(f"measure mass {mass} must be finite and > 0")
        if not math.isfinite(self.moment()):
            raise NonFiniteError("sum of mass/(1+location) overflows")

    @classmethod
    def from_density(cls, density, lo: float, hi: float, n: int = 64) -> "StieltjesMeasure":
        """Discretize ``density(t) dt`` on [lo, hi] with Gauss-Legendre nodes
        in log t (lo > 0) or in t (lo == 0)."""
        x, w = _gauss_legendre_01(n)
        if lo > 0.0:
            a, b = math.log(lo), math.log(hi)
            t = np.exp(a + (b - a) * x)
            weights = (b - a) * w * t * np.asarray(density(t), dtype=float)
        else:
            t = lo + (hi - lo) * x
            weights = (hi - lo) * w * np.asarray(density(t), dtype=float)
        keep = weights > 0.0
        return cls(density_nodes=tuple(zip(t[keep].tolist(), weights[keep].tolist())))

    @cached_property
    def locations(self) -> np.ndarray:
        return np.array([a for a, _ in self.atoms + self.density_nodes])

    @cached_property
    def masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms + self.density_nodes])

    def moment(self) -> float:
        return math.fsum(m / (1.0 + a) for a, m in self.atoms + self.density_nodes)


class KernelSymbol(abc.ABC):
    """Complete Bernstein symbol Phi of an admissible kernel."""

    #: growth exponent of |Phi| at infinity (1 for logarithmically corrected
    #: linear growth); used to steer inversion contours away from the region
    #: where Re Phi < 0.
    max_exponent: float = 1.0

    @abc.abstractmethod
    def _phi(self, p: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _phi_prime(self, p: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _k(self, s: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _k1(self, t: np.ndarray) -> np.ndarray: ...

    @property
    @abc.abstractmethod
    def kind(self) -> str: ...

    def describe(self) -> dict:
        d = {"kind": self.kind}
        d.update(asdict(self))  # type: ignore[call-overload]
        return d

    # Public evaluation ---------------------------------------------------

    def phi(self, p):
        arr, scalar = _prepare(p)
        return _finish(self._phi(arr), scalar, "Phi")

    def phi_prime(self, p):
        arr, scalar = _prepare(p, allow_complex=False)
        return _finish(self._phi_prime(arr), scalar, "Phi'")

    def laplace_K(self, p):
        arr, scalar = _prepare(p)
        return _finish(self._phi(arr) / arr, scalar, "K")

    def kernel_k(self, s):
        arr, scalar = _positive_reals(s, "kernel_k")
        return _finish(self._k(arr), scalar, "k")

    def cumulative_kernel(self, t):
        arr, scalar = _positive_reals(t, "cumulative_kernel")
        return _finish(self._k1(arr), scalar, "K1")


@dataclass(frozen=True)
class PowerLaw(KernelSymbol):
    """k(t) = t^(-alpha) / Gamma(1 - alpha): the Caputo-Djrbashian case."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")

    kind = "power_law"

    @property
    def max_exponent(self) -> float:  # type: ignore[override]
        return self.alpha

    def _phi(self, p):
        return p**self.alpha

    def _phi_prime(self, p):
        return self.alpha * p ** (self.alpha - 1.0)

    def _k(self, s):
        return s ** (-self.alpha) * rgamma(1.0 - self.alpha)

    def _k1(self, t):
        return t ** (1.0 - self.alpha) * rgamma(2.0 - self.alpha)


@dataclass(frozen=True)
class Mixture(KernelSymbol):
    """Finite sum of power laws, Phi(p) = sum_j w_j p^(a_j)."""

    terms: tuple[tuple[float, float], ...]

    kind = "mixture"

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((float(w), float(a)) for w, a in self.terms))
        if not self.terms:
            raise InputError("mixture needs at least one (weight, exponent) term")
        for w, a in self.terms:
            if not w > 0.0:
                raise InputError(f"mixture weight must be > 0, got {w}")
            if not (0.0 < a < 1.0):
                raise InputError(f"mixture exponent must lie in (0, 1), got {a}")

    @property
    def max_exponent(self) -> float:  # type: ignore[override]
        return max(a for _, a in self.terms)

    @cached_property
    def _w(self) -> np.ndarray:
        return np.array([w for w, _ in self.terms])

    @cached_property
    def _a(self) -> np.ndarray:
        return np.array([a for _, a in self.terms])

    def _phi(self, p):
        return (p[..., None] ** self._a) @ self._w

    def _phi_prime(self, p):
        return (p[..., None] ** (self._a - 1.0)) @ (self._w * self._a)

    def _k(self, s):
        return (s[..., None] ** (-self._a)) @ (self._w * rgamma(1.0 - self._a))

    def _k1(self, t):
        return (t[..., None] ** (1.0 - self._a)) @ (self._w * rgamma(2.0 - self._a))


@dataclass(frozen=True)
class DistributedOrder(KernelSymbol):
    """Distributed-order derivative with weight mu on [0, 1].

    ``mu_nodes`` are the values of mu at equispaced points of [0, 1]
    (a single value means a constant weight); mu is their polynomial
    interpolant. Phi(p) = int_0^1 p^a mu(a) da is evaluated with a fixed
    Gauss-Legendre rule.
    """

    mu_nodes: tuple[float, ...] = (1.0,)
    n_quad: int = DO_QUAD_NODES

    kind = "distributed_order"
    max_exponent = 1.0

    def __post_init__(self):
        object.__setattr__(self, "mu_nodes", tuple(float(m) for m in self.mu_nodes))
        if not self.mu_nodes:
            raise InputError("mu_nodes must contain at least one value")
        if any(not math.isfinite(m) for m in self.mu_nodes):
            raise InputError("mu_nodes must be finite")
        x, _ = _gauss_legendre_01(2 * self.n_quad)
        mu = self.mu(x)
        if np.any(mu < 0.0) or not np.any(mu > 0.0):
            raise InputError("mu must be nonnegative on [0, 1] and not identically zero")

    def mu(self, a):
        a = np.asarray(a, dtype=float)
        if len(self.mu_nodes) == 1:
            return np.full_like(a, self.mu_nodes[0])
        xs = np.linspace(0.0, 1.0, len(self.mu_nodes))
        return BarycentricInterpolator(xs, self.mu_nodes)(a)

    def _rule(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        x, w = _gauss_legendre_01(n)
        return x, w * self.mu(x)

    @cached_property
    def _coarse(self):
        return self._rule(self.n_quad)

    @cached_property
    def _fine(self):
        return self._rule(2 * self.n_quad)

    @staticmethod
    def _powers(p, x):
        # overflow surfaces as a non-finite result, reported by the caller
        with np.errstate(over="ignore", invalid="ignore"):
            return np.exp(np.log(p)[..., None] * x)

    def _phi(self, p):
        x, c = self._coarse
        return self._powers(p, x) @ c

    def refinement_error(self, p) -> np.ndarray:
        """Relative change of Phi(p) when the quadrature rule is doubled."""
        arr, _ = _prepare(p)
        x, c = self._fine
        fine = self._powers(arr, x) @ c
        return np.abs(self._phi(arr) - fine) / np.abs(fine)

    def _phi_prime(self, p):
        x, c = self._coarse
        return self._powers(p, x - 1.0) @ (c * x)

    def _k(self, s):
        x, c = self._coarse
        return self._powers(s, -x) @ (c * rgamma(1.0 - x))

    def _k1(self, t):
        x, c = self._coarse
        return self._powers(t, 1.0 - x) @ (c * rgamma(2.0 - x))


@dataclass(frozen=True)
class FromMeasure(KernelSymbol):
    """Phi(p) = sum p/(p+t) m over a finite Stieltjes measure; k is a finite
    sum of decaying exponentials. Phi is bounded, so such kernels never pass
    the limit conditions as p -> inf."""

    measure: StieltjesMeasure

    kind = "measure"
    max_exponent = 0.0

    def _phi(self, p):
        m = self.measure
        return (p[..., None] / (p[..., None] + m.locations)) @ m.masses

    def _phi_prime(self, p):
        m = self.measure
        loc = m.locations
        return (loc / (p[..., None] + loc) ** 2) @ m.masses

    def _k(self, s):
        m = self.measure
        return np.exp(-s[..., None] * m.locations) @ m.masses

    def _k1(self, t):
        m = self.measure
        loc = m.locations
        tt = t[..., None]
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(loc > 0.0, -np.expm1(-tt * loc) / np.where(loc > 0, loc, 1.0), tt)
        return terms @ m.masses


@dataclass(frozen=True)
class Logarithmic(KernelSymbol):
    """Phi(p) = log(1 + p), sigma(dt) = dt/t on [1, inf), k = E1.

    A complete Bernstein function that violates the integrability
    condition int_1^inf ds/(s Phi(s)) < inf; kept as a negative control.
    """

    kind = "logarithmic"
    max_exponent = 0.0

    def describe(self) -> dict:
        return {"kind": self.kind}

    def _phi(self, p):
        return np.log1p(p)

    def _phi_prime(self, p):
        return 1.0 / (1.0 + p)

    def _k(self, s):
        return exp1(s)

    def _k1(self, t):
        return t * exp1(t) - np.expm1(-t)


def builtin_kernels() -> list[KernelSymbol]:
    """The admissible kernels exercised by the test and acceptance suites."""
    return [
        PowerLaw(0.5),
        Mixture(((1.0, 0.5), (1.0, 1.0 / 3.0))),
        DistributedOrder(),
    ]


# Module-level operations ------------------------------------------------


def phi(symbol: KernelSymbol, p):
    return symbol.phi(p)


def phi_prime(symbol: KernelSymbol, p):
    return symbol.phi_prime(p)


def laplace_K(symbol: KernelSymbol, p):
    return symbol.laplace_K(p)


def kernel_k(symbol: KernelSymbol, s):
    return symbol.kernel_k(s)


def cumulative_kernel(symbol: KernelSymbol, t):
    """K1(t) = int_0^t k(s) ds."""
    return symbol.cumulative_kernel(t)


def sector_bounds(symbol: KernelSymbol, p) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (lower, |Phi(p)|, upper) of the complete-Bernstein sector
    inequality sqrt((1+cos f)/2) Phi(|p|) <= |Phi(p)| <= sqrt(2/(1+cos f)) Phi(|p|)
    with f = arg p."""
    p = np.atleast_1d(np.asarray(p, dtype=complex))
    c = np.sqrt((1.0 + np.cos(np.angle(p))) / 2.0)
    base = np.asarray(symbol.phi(np.abs(p)))
    return c * base, np.abs(np.asarray(symbol.phi(p))), base / c


# Admissibility ------------------------------------------------------------

LIMIT_EXTREME_DECADE = 280
LIMIT_FACTOR = 100.0
TAIL_TOL = 1e-8
TAIL_LOG_CAP = 690.0


@dataclass
class AdmissibilityReport:
    # limits_5_ok: K(p) -> inf as p -> 0 and K(p) -> 0 as p -> inf
    # limits_6_ok: Phi(p) -> 0 as p -> 0 and Phi(p) -> inf as p -> inf
    # condition_16_*: int_1^inf ds / (s Phi(s)) converges, and its value
    limits_5_ok: bool
    limits_6_ok: bool
    condition_16_ok: bool
    condition_16_value: float | None
    condition_16_divergent: bool
    notes: list[str] = field(default_factory=list)
    samples: dict = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return self.limits_5_ok and self.limits_6_ok and self.condition_16_ok

    def to_dict(self) -> dict:
        return {
            "limits_5_ok": self.limits_5_ok,
            "limits_6_ok": self.limits_6_ok,
            "condition_16_ok": self.condition_16_ok,
            "condition_16_value": self.condition_16_value,
            "condition_16_divergent": self.condition_16_divergent,
            "notes": list(self.notes),
            "samples": self.samples,
        }


def _limit_toward(values: np.ndarray, ref: float, target: str) -> bool:
    """values ordered from p=1 out to the extreme sample."""
    tail = values[-5:]
    if target == "zero":
        monotone = bool(np.all(np.diff(tail) < 0.0))
        return monotone and values[-1] <= ref / LIMIT_FACTOR
    monotone = bool(np.all(np.diff(tail) > 0.0))
    return monotone and values[-1] >= ref * LIMIT_FACTOR


def _check_limits(symbol: KernelSymbol) -> tuple[bool, bool, dict]:
    decades = np.arange(0, LIMIT_EXTREME_DECADE + 1, dtype=float)
    up = 10.0**decades
    down = 10.0 ** (-decades)
    with np.errstate(over="ignore", invalid="ignore"):
        phi_up = np.asarray(symbol._phi(up), dtype=float)
        phi_down = np.asarray(symbol._phi(down), dtype=float)
    K_up, K_down = phi_up / up, phi_down / down
    K1, phi1 = K_up[0], phi_up[0]
    k_limits = bool(_limit_toward(K_down, K1, "inf") and _limit_toward(K_up, K1, "zero"))
    phi_limits = bool(_limit_toward(phi_down, phi1, "zero") and _limit_toward(phi_up, phi1, "inf"))
    sample_p = [1e-8, 1e-4, 1.0, 1e4, 1e8]
    samples = {
        "p": sample_p,
        "K": [float(v) for v in np.asarray(symbol._phi(np.array(sample_p))) / sample_p],
        "pK": [float(v) for v in np.asarray(symbol._phi(np.array(sample_p)))],
        "extreme_decade": LIMIT_EXTREME_DECADE,
        "K_at_extremes": [float(K_down[-1]), float(K_up[-1])],
        "pK_at_extremes": [float(phi_down[-1]), float(phi_up[-1])],
    }
    return k_limits, phi_limits, samples


def tail_integral(symbol: KernelSymbol, tol: float = TAIL_TOL) -> tuple[float | None, dict]:
    """Estimate int_1^inf ds / (s Phi(s)).

    With s = e^x the integral is int_0^inf dx / Phi(e^x); it is accumulated
    over successive doublings of the upper limit S_max (x-steps of log 2)
    with a 20-point Gauss rule per step. Convergence is declared once an
    increment falls below ``tol * max(1, partial)`` while still decreasing;
    the geometric tail of the remaining increments is then added. Returns
    (None, info) when the increments never decay before S_max = e^690.
    """
    step = math.log(2.0)
    n_steps = int(TAIL_LOG_CAP / step)
    xg, wg = _gauss_legendre_01(20)
    x = (np.arange(n_steps)[:, None] + xg) * step
    with np.errstate(over="ignore"):
        vals = 1.0 / np.asarray(symbol._phi(np.exp(x).ravel()), dtype=float).reshape(x.shape)
    incr = step * (vals @ wg)
    partial = np.cumsum(incr)
    for k in range(1, n_steps):
        if incr[k] < tol * max(1.0, partial[k]) and incr[k] < incr[k - 1]:
            q = incr[k] / incr[k - 1]
            tail = incr[k] * q / (1.0 - q)
            return float(partial[k] + tail), {"s_max": math.exp((k + 1) * step), "doublings": k + 1}
    return None, {"s_max": math.exp(n_steps * step), "last_increment": float(incr[-1])}


@functools.lru_cache(maxsize=256)
def check_admissibility(symbol: KernelSymbol) -> AdmissibilityReport:
    """Numerical evidence for the limit conditions on K and pK and for the
    integrability condition int_1^inf ds/(s Phi(s)) < inf."""
    notes: list[str] = []
    k_limits, phi_limits, samples = _check_limits(symbol)
    if not k_limits:
        notes.append("K(p) does not show K->inf as p->0 and K->0 as p->inf")
    if not phi_limits:
        notes.append("pK(p) does not show pK->0 as p->0 and pK->inf as p->inf")
    value, info = tail_integral(symbol)
    samples["tail_integral"] = info
    if value is None:
        notes.append("partial integrals of 1/(s Phi(s)) do not settle; treated as divergent")
    if isinstance(symbol, DistributedOrder):
        err = symbol.refinement_error(np.geomspace(1e-8, 1e8, 33))
        worst = float(np.max(err))
        samples["quadrature_refinement_error"] = worst
        if worst > DO_REFINEMENT_TOL:
            notes.append(f"reduced precision: doubled quadrature changes Phi by {worst:.2e}")
    return AdmissibilityReport(
        limits_5_ok=k_limits,
        limits_6_ok=phi_limits,
        condition_16_ok=value is not None,
        condition_16_value=value,
        condition_16_divergent=value is None,
        notes=notes,
        samples=samples,
    )
