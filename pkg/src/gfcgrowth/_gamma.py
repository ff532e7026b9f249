"""Gamma function kept in-repo so the Mittag-Leffler reference evaluator does
not share its gamma routine with the kernel code.

Gamma on [1, 2) comes from a Lanczos approximation (g = 607/128, 15
coefficients); larger arguments use the upward recurrence, which keeps
the relative error near a few ulps up to the overflow point. Large
arguments of ``lgamma`` use the Stirling series.
"""
import math

_G = 607.0 / 128.0
_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_OVERFLOW = 171.6
# Stirling coefficients B_2k / (2k (2k - 1))
_STIRLING = (1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _sinpi(x: float) -> float:
    # sin(pi x) with the argument reduced exactly before scaling by pi
    n = round(x)
    r = math.sin(math.pi * (x - n))
    return -r if n % 2 else r


def _lanczos(x: float) -> float:
    """Gamma(x) for x in [1, 2]."""
    z = x - 1.0
    a = _COEF[0]
    for i in range(1, len(_COEF)):
        a += _COEF[i] / (z + i)
    t = z + _G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * a


def gamma(x: float) -> float:
    if _is_nonpositive_integer(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x < 1.0:
        if x < 0.5:
            # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
            return math.pi / (_sinpi(x) * gamma(1.0 - x))
        return _lanczos(x + 1.0) / x
    if x > _OVERFLOW:
        return math.inf
    n = int(math.floor(x)) - 1
    y = x - n
    prod = 1.0
    for j in range(n):
        prod *= y + j
    return _lanczos(y) * prod


def lgamma(x: float) -> float:
    """log|Gamma(x)| for real x that is not a nonpositive integer."""
    if _is_nonpositive_integer(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.log(math.pi / abs(_sinpi(x))) - lgamma(1.0 - x)
    if x < 20.0:
        return math.log(gamma(x))
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for c in _STIRLING:
        series += c * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series


def gamma_sign(x: float) -> float:
    if x > 0.0:
        return 1.0
    if _is_nonpositive_integer(x):
        raise ValueError(f"gamma has a pole at {x}")
    # Gamma alternates sign between consecutive negative integers
    return -1.0 if int(math.floor(x)) % 2 else 1.0


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if _is_nonpositive_integer(x):
        return 0.0
    if x > _OVERFLOW:
        return gamma_sign(x) * math.exp(-lgamma(x))
    return 1.0 / gamma(x)
