"""The growth rate p0(lambda), the unique positive root of Phi(p) = lambda."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketError, DomainError, NonFiniteError
from .kernel import KernelSymbol

REL_TOL = 1e-13
RESIDUAL_TOL = 1e-12
SUPERADDITIVE_SLACK = 1e-12
_MAX_EXP2 = 1023
_MIN_EXP2 = -1074
_MAX_ITER = 200


@dataclass(frozen=True)
class RootResult:
    p0: float
    residual: float
    iterations: int
    bracket: tuple[float, float]


def _bracket(symbol: KernelSymbol, lam: float) -> tuple[float, float]:
    lo = hi = 1.0
    f = symbol.phi(1.0)
    if f < lam:
        e = 0
        while f < lam:
            e += 1
            if e > _MAX_EXP2:
                raise BracketError(
                    f"Phi saturates at {f:.17g} < lambda = {lam:.17g}; kernel is not onto (0, inf)",
                    saturation=f,
                )
            lo, hi = hi, math.ldexp(1.0, e)
            f = symbol.phi(hi)
    elif f > lam:
        e = 0
        while f > lam:
            e -= 1
            if e < _MIN_EXP2:
                raise BracketError(
                    f"Phi stays above {f:.17g} > lambda = {lam:.17g} as p -> 0",
                    saturation=f,
                )
            hi, lo = lo, math.ldexp(1.0, e)
            f = symbol.phi(lo)
    return lo, hi


def p0_of_lambda(symbol: KernelSymbol, lam: float) -> RootResult:
    """Bracket by doubling/halving from p = 1, then Newton iteration in
    x = log p, falling back to bisection whenever a step leaves the bracket."""
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be positive and finite, got {lam}")
    lo, hi = _bracket(symbol, lam)
    bracket = (lo, hi)
    if symbol.phi(lo) == lam:
        return RootResult(lo, 0.0, 0, bracket)
    if symbol.phi(hi) == lam:
        return RootResult(hi, 0.0, 0, bracket)

    a, b = math.log(lo), math.log(hi)
    x = 0.5 * (a + b)
    it = 0
    for it in range(1, _MAX_ITER + 1):
        p = math.exp(x)
        f = symbol.phi(p) - lam
        if f == 0.0:
            break
        if f < 0.0:
            a = x
        else:
            b = x
        try:
            slope = p * symbol.phi_prime(p)
        except NonFiniteError:
            slope = 0.0
        x_new = x - f / slope if slope > 0.0 else 0.5 * (a + b)
        if not (a <= x_new <= b):
            x_new = 0.5 * (a + b)
        # relative change of p equals the change of log p
        done = abs(x_new - x) <= REL_TOL or (b - a) <= REL_TOL
        x = x_new
        if done:
            break
    p0 = math.exp(x)
    residual = symbol.phi(p0) - lam
    return RootResult(p0, residual, it, bracket)


def asymptotic_amplitude(symbol: KernelSymbol, lam: float, root: RootResult | None = None) -> float:
    """A = lambda / (Phi'(p0) p0), the coefficient of exp(p0 t) in the
    large-time behaviour of the growth solution."""
    root = root or p0_of_lambda(symbol, lam)
    return lam / (symbol.phi_prime(root.p0) * root.p0)


def superadditivity_check(symbol: KernelSymbol, x: float, y: float) -> bool:
    """True iff p0(x + y) > p0(x) + p0(y) with a relative margin."""
    if not (x > 0.0 and y > 0.0):
        raise DomainError("superadditivity_check needs x, y > 0")
    pxy = p0_of_lambda(symbol, x + y).p0
    px = p0_of_lambda(symbol, x).p0
    py = p0_of_lambda(symbol, y).p0
    return pxy > px + py + SUPERADDITIVE_SLACK * pxy
