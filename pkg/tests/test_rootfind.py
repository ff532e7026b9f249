import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from gfcgrowth.errors import BracketError, DomainError
from gfcgrowth.kernel import DistributedOrder, FromMeasure, Mixture, PowerLaw, StieltjesMeasure, builtin_kernels
from gfcgrowth.rootfind import asymptotic_amplitude, p0_of_lambda, superadditivity_check

MIX = Mixture(((1.0, 0.5), (1.0, 1.0 / 3.0)))


def _do_inverse(lam):
    # independent bracketed solve of (p - 1)/log p = lam
    f = lambda x: (math.exp(x) - 1.0) / x - lam if x != 0.0 else 1.0 - lam  # noqa: E731
    return math.exp(brentq(f, -50.0, 50.0, xtol=1e-15, rtol=1e-15))


def test_p0_examples():
    assert p0_of_lambda(PowerLaw(0.5), 2.0).p0 == pytest.approx(4.0, rel=1e-13, abs=0)
    assert p0_of_lambda(MIX, 2.0).p0 == pytest.approx(1.0, rel=1e-13, abs=0)
    assert p0_of_lambda(DistributedOrder(), math.e - 1.0).p0 == pytest.approx(math.e, rel=1e-12, abs=0)


def test_root_result_fields():
    r = p0_of_lambda(PowerLaw(0.5), 3.0)
    lo, hi = r.bracket
    assert PowerLaw(0.5).phi(lo) <= 3.0 <= PowerLaw(0.5).phi(hi)
    assert abs(r.residual) <= 1e-12 * 3.0
    assert 0 < r.iterations < 50


def test_amplitude_examples():
    assert asymptotic_amplitude(PowerLaw(0.5), 3.0) == pytest.approx(2.0, rel=1e-12, abs=0)
    assert asymptotic_amplitude(Mixture(((1.0, 0.999),)), 1.0) == pytest.approx(1.0 / 0.999, rel=1e-12, abs=0)
    assert asymptotic_amplitude(MIX, 2.0) == pytest.approx(2.4, rel=1e-12, abs=0)


def test_amplitude_matches_finite_difference_slope():
    lam = 2.0
    p0 = p0_of_lambda(MIX, lam).p0
    h = 1e-6
    slope = (MIX.phi(p0 + h) - MIX.phi(p0 - h)) / (2 * h)
    assert asymptotic_amplitude(MIX, lam) == pytest.approx(lam / (slope * p0), rel=1e-8, abs=0)


def test_superadditivity_examples():
    assert superadditivity_check(PowerLaw(0.5), 1.0, 1.0)
    assert superadditivity_check(PowerLaw(0.5), 1.0, 3.0)
    assert superadditivity_check(DistributedOrder(), 1.0, 1.0)
    do = _do_inverse
    assert do(2.0) > 2.0 * do(1.0)


def test_bracket_failure_reports_saturation():
    atom = FromMeasure(StieltjesMeasure(atoms=((1.0, 1.0),)))
    with pytest.raises(BracketError) as info:
        p0_of_lambda(atom, 2.0)
    assert info.value.saturation == pytest.approx(1.0, rel=1e-12, abs=0)


@pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
def test_invalid_lambda(lam):
    with pytest.raises(DomainError):
        p0_of_lambda(PowerLaw(0.5), lam)


@pytest.mark.parametrize("kernel", builtin_kernels(), ids=lambda k: k.kind)
def test_residual_on_random_lambdas(kernel):
    rng = np.random.default_rng(3)
    # for the distributed-order kernel p0(1e-3) lies below the smallest
    # double (log p0 ~ -1077), so its range starts at 2e-3
    lo = -3.0 if not isinstance(kernel, DistributedOrder) else math.log10(2e-3)
    for lam in 10.0 ** rng.uniform(lo, 3.0, 200):
        r = p0_of_lambda(kernel, lam)
        assert abs(r.residual) <= 1e-12 * max(1.0, lam)


def test_distributed_order_small_lambda_underflows():
    with pytest.raises(BracketError):
        p0_of_lambda(DistributedOrder(), 1e-3)


@pytest.mark.parametrize("kernel", builtin_kernels(), ids=lambda k: k.kind)
def test_p0_monotone_in_lambda(kernel):
    lams = np.geomspace(0.01, 100.0, 60)
    p = [p0_of_lambda(kernel, x).p0 for x in lams]
    assert np.all(np.diff(p) > 0.0)


@settings(max_examples=100, deadline=None)
@given(alpha=st.floats(0.05, 0.95), lam=st.floats(1e-3, 1e3))
def test_power_law_scale_identity(alpha, lam):
    expected = lam ** (1.0 / alpha)
    if not 1e-300 < expected < 1e300:
        return
    assert p0_of_lambda(PowerLaw(alpha), lam).p0 == pytest.approx(expected, rel=1e-12, abs=0)


@pytest.mark.parametrize("kernel", builtin_kernels(), ids=lambda k: k.kind)
def test_superadditivity_on_random_pairs(kernel):
    rng = np.random.default_rng(11)
    xy = rng.uniform(0.0, 100.0, (500, 2))
    xy[xy == 0.0] = 1e-9
    violations = [tuple(v) for v in xy if not superadditivity_check(kernel, *v)]
    assert violations == []


def test_distributed_order_root_matches_independent_inverse():
    for lam in (0.1, 0.7, 3.0, 40.0):
        assert p0_of_lambda(DistributedOrder(), lam).p0 == pytest.approx(_do_inverse(lam), rel=1e-11, abs=0)
