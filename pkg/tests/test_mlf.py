import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfcgrowth import _gamma
from gfcgrowth.errors import DomainError
from gfcgrowth.mlf import (
    MLParams,
    PrecisionLossWarning,
    asymptotic,
    log_mittag_leffler,
    mittag_leffler,
    regime_gap,
    taylor_series,
)


def _half(z):
    # e^{z^2} erfc(-z) from the standard library erfc
    return math.exp(z * z) * math.erfc(-z)


def test_examples():
    assert mittag_leffler(MLParams(1.0), 1.0) == pytest.approx(math.e, rel=1e-15, abs=0)
    for a in (0.2, 0.5, 0.9):
        assert mittag_leffler(MLParams(a), 0.0) == 1.0
    assert mittag_leffler(MLParams(0.5), 1.0) == pytest.approx(5.008980, rel=1e-6, abs=0)
    assert mittag_leffler(0.5, 1.0) == pytest.approx(_half(1.0), rel=1e-14, abs=0)


def test_gamma_routine():
    assert _gamma.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14, abs=0)
    for n in range(1, 20):
        assert _gamma.gamma(n) == pytest.approx(math.factorial(n - 1), rel=1e-13, abs=0)
    assert _gamma.rgamma(-3.0) == 0.0
    assert _gamma.lgamma(200.5) == pytest.approx(math.lgamma(200.5), rel=1e-13, abs=0)
    assert _gamma.gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13, abs=0)


@pytest.mark.parametrize("alpha", [0.0, -0.1, 1.5])
def test_params_validated(alpha):
    with pytest.raises(DomainError):
        MLParams(alpha)


@pytest.mark.parametrize("z", np.round(np.linspace(-3.0, 3.0, 61), 10).tolist())
def test_half_closed_form_matches_series(z, request):
    if z < -2.55:
        # the alternating series has terms ~6000x larger than its sum at
        # z = -3, so double rounding alone exceeds 1e-12
        request.applymarker(pytest.mark.xfail(strict=True, reason="series cancellation beyond double precision"))
    s, _ = taylor_series(0.5, z)
    assert s == pytest.approx(_half(z), rel=1e-12, abs=0)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("z", np.linspace(4.0, 6.0, 11).tolist())
def test_regime_overlap(alpha, z, request):
    if alpha == 0.7 and z < 4.7:
        # the optimally truncated expansion is only good to ~3e-8 here
        request.applymarker(pytest.mark.xfail(strict=True, reason="asymptotic expansion error above 1e-9 for z < 4.7"))
    assert regime_gap(MLParams(alpha), z) <= 1e-9


def test_precision_loss_reported_in_overlap_window():
    with pytest.warns(PrecisionLossWarning):
        mittag_leffler(MLParams(0.7), 4.2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        mittag_leffler(MLParams(0.3), 4.5)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7, 0.9])
def test_monotone_on_positive_axis(alpha):
    # stop where E_a overflows a double
    top = min(12.0, 700.0**alpha)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionLossWarning)
        v = [mittag_leffler(alpha, float(z)) for z in np.linspace(0.0, top, 121)]
    assert np.all(np.diff(v) > 0.0)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_asymptotic_amplitude(alpha):
    # E_a(z) a e^{-z^{1/a}} -> 1
    prev = None
    for x in (10.0, 30.0, 50.0):
        z = x**alpha
        ratio = math.exp(log_mittag_leffler(alpha, z) - z ** (1.0 / alpha)) * alpha
        if prev is not None:
            assert abs(ratio - 1.0) <= max(abs(prev - 1.0), 1e-12)
        prev = ratio
    assert prev == pytest.approx(1.0, abs=1e-3)


def test_negative_axis_against_half_closed_form_via_general_path():
    # alpha slightly off 1/2 so the closed form is bypassed; compare neighbours
    for z in (-0.5, -3.0, -8.0):
        lo = mittag_leffler(0.5 - 1e-7, z)
        assert lo == pytest.approx(_half(z), rel=1e-5, abs=0)
    # E_{1/2}(-x) ~ (1 - 1/(2 x^2)) / (x sqrt(pi)) for large x
    x = 30.0
    lead = (1.0 - 0.5 / x**2) / (x * math.sqrt(math.pi))
    assert mittag_leffler(0.5 - 1e-7, -x) == pytest.approx(lead, rel=1e-5, abs=0)


@settings(max_examples=60, deadline=None)
@given(z=st.floats(-25.0, -0.01))
def test_negative_axis_completely_monotone_bounds(z):
    v = mittag_leffler(0.6, z)
    assert 0.0 < v < 1.0


def test_log_ml_large_argument():
    z = 40.0**0.5
    assert log_mittag_leffler(0.5, z) == pytest.approx(z * z + math.log(2.0), rel=1e-12, abs=0)
    assert math.isfinite(log_mittag_leffler(0.3, 8.0))
    assert asymptotic(0.3, 8.0) == math.inf


def test_log_ml_rejects_negative():
    with pytest.raises(DomainError):
        log_mittag_leffler(0.5, -1.0)
