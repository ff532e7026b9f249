import math
import warnings

import numpy as np
import pytest

from gfcgrowth.errors import ConvergenceError, DomainError, InadmissibleKernelError
from gfcgrowth.invert import ContourSpec, remainder_ratio, solve_growth, solve_relaxation
from gfcgrowth.kernel import FromMeasure, Logarithmic, PowerLaw, StieltjesMeasure, builtin_kernels
from gfcgrowth.mlf import PrecisionLossWarning, mittag_leffler
from gfcgrowth.rootfind import asymptotic_amplitude

E_HALF_1 = math.e * math.erfc(-1.0)
E_HALF_M1 = math.e * math.erfc(1.0)
TINY = ContourSpec(truncation_height=1e20)


def _ml(alpha, z):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionLossWarning)
        return mittag_leffler(alpha, z)


def test_growth_examples():
    sol = solve_growth(PowerLaw(0.5), 1.0, [1.0, 25.0])
    assert sol.values[0] == pytest.approx(E_HALF_1, rel=1e-12, abs=0)
    assert sol.values[0] == pytest.approx(5.008980, rel=1e-6, abs=0)
    assert 1.99 <= math.exp(-25.0) * sol.values[1] <= 2.01


def test_growth_initial_value():
    # u - 1 ~ t^{1/2}/Gamma(3/2), so t must be ~1e-13 to get within 1e-6
    sol = solve_growth(PowerLaw(0.5), 1.0, [1e-13], TINY)
    assert sol.values[0] == pytest.approx(1.0, abs=1e-6)


def test_residue_split_decomposition_is_exact():
    sol = solve_growth(PowerLaw(0.3), 1.0, [0.2, 1.0, 4.0])
    for t, u, v in zip(sol.times, sol.values, sol.remainders):
        assert u == pytest.approx(sol.amplitude * math.exp(sol.p0 * t) + v, rel=1e-13, abs=0)


def test_relaxation_examples():
    vals = solve_relaxation(PowerLaw(0.5), 1.0, [1e-13, 1.0, 100.0], TINY)
    assert vals[0] == pytest.approx(1.0, abs=1e-6)
    assert vals[1] == pytest.approx(E_HALF_M1, rel=1e-12, abs=0)
    assert vals[1] == pytest.approx(0.4275836, rel=1e-6, abs=0)
    assert vals[2] == pytest.approx(1.0 / math.sqrt(math.pi * 100.0), rel=0.05, abs=0)
    assert vals[2] == pytest.approx(math.erfc(10.0) * math.exp(100.0), rel=1e-10, abs=0)


def test_remainder_ratio_examples():
    k = PowerLaw(0.5)
    r1, r5, r25 = (remainder_ratio(k, 1.0, t) for t in (1.0, 5.0, 25.0))
    assert abs(r5) < abs(r1)
    assert abs(r25) < 0.01 * asymptotic_amplitude(k, 1.0)
    # V = u - 2 e^{t}: closed form for alpha = 1/2, lam = 1 is -erfc(t^{1/2}) e^{t}
    assert r1 == pytest.approx(-math.erfc(1.0), rel=1e-10, abs=0)
    for kern in builtin_kernels():
        assert math.isfinite(remainder_ratio(kern, 1.0, 0.01))


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_mode_agreement(alpha):
    ts = np.linspace(0.1, 5.0, 25)
    a = solve_growth(PowerLaw(alpha), 1.0, ts).values
    b = solve_growth(PowerLaw(alpha), 1.0, ts, mode="bromwich").values
    assert np.allclose(a, b, rtol=1e-8, atol=0)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_oracle_agreement(alpha, lam):
    ts = np.geomspace(0.1, 10.0, 30)
    sol = solve_growth(PowerLaw(alpha), lam, ts)
    ref = np.array([_ml(alpha, lam * t**alpha) for t in ts])
    assert np.max(np.abs(np.array(sol.values) / ref - 1.0)) <= 1e-6


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_asymptotic_convergence(alpha):
    lam = 1.0
    sol = solve_growth(PowerLaw(alpha), lam, [1.0])
    p0 = sol.p0
    t_check = 20.0 / p0 * max(1.0, p0)
    ts = np.linspace(1.0, t_check, 20)
    sol = solve_growth(PowerLaw(alpha), lam, ts)
    dev = np.abs(np.array(sol.normalized) - sol.amplitude)
    assert dev[-1] <= 0.01 * sol.amplitude
    assert np.all(np.diff(dev) < 0.0)


def test_log_space_for_large_times():
    sol = solve_growth(PowerLaw(0.5), 1.0, [800.0])
    assert sol.values[0] == math.inf
    assert sol.log_values[0] == pytest.approx(800.0 + math.log(2.0), rel=1e-12, abs=0)
    assert math.isfinite(sol.normalized[0])


@pytest.mark.parametrize("kernel", builtin_kernels(), ids=lambda k: k.kind)
def test_relaxation_completely_monotone(kernel):
    v = np.array(solve_relaxation(kernel, 1.0, np.linspace(0.01, 10.0, 200)))
    assert np.all(v > 0.0) and np.all(v <= 1.0)
    for order in (1, 2, 3):
        assert np.all(np.diff(v, order) * (-1.0) ** order >= 0.0)


@pytest.mark.parametrize("kernel", builtin_kernels(), ids=lambda k: k.kind)
def test_growth_monotone(kernel):
    v = solve_growth(kernel, 1.0, np.linspace(0.01, 10.0, 100)).values
    assert np.all(np.diff(v) >= 0.0)


def test_line_path_matches_hyperbola():
    for kern in builtin_kernels():
        a = solve_growth(kern, 1.0, [0.7], ContourSpec(path="line")).values[0]
        b = solve_growth(kern, 1.0, [0.7]).values[0]
        assert a == pytest.approx(b, rel=1e-8, abs=0)


def test_gauss_segments_rule_matches_trapezoid():
    a = solve_growth(PowerLaw(0.4), 1.0, [0.5, 2.0], ContourSpec(rule="gauss-segments")).values
    b = solve_growth(PowerLaw(0.4), 1.0, [0.5, 2.0]).values
    assert np.allclose(a, b, rtol=1e-11, atol=0)


def test_refuses_kernel_with_divergent_tail_integral():
    with pytest.raises(InadmissibleKernelError):
        solve_growth(Logarithmic(), 1.0, [1.0])


def test_refuses_bounded_symbol():
    atom = FromMeasure(StieltjesMeasure(atoms=((1.0, 1.0),)))
    with pytest.raises(InadmissibleKernelError):
        solve_growth(atom, 0.5, [1.0])


def test_truncation_cap_reported():
    with pytest.raises(ConvergenceError):
        solve_growth(PowerLaw(0.5), 1.0, [1e-9])


@pytest.mark.parametrize(
    "kwargs",
    [dict(nodes=32), dict(rule="simpson"), dict(path="talbot"), dict(gamma=-1.0), dict(r=2.0, gamma=1.0)],
)
def test_contour_spec_validation(kwargs):
    with pytest.raises(DomainError):
        ContourSpec(**kwargs)


def test_contour_abscissae_checked_against_p0():
    with pytest.raises(DomainError):
        solve_growth(PowerLaw(0.5), 1.0, [1.0], ContourSpec(r=1.5))
    with pytest.raises(DomainError):
        solve_growth(PowerLaw(0.5), 1.0, [1.0], ContourSpec(gamma=0.5), mode="bromwich")


def test_explicit_abscissae():
    a = solve_growth(PowerLaw(0.5), 1.0, [1.0], ContourSpec(r=0.5)).values[0]
    b = solve_growth(PowerLaw(0.5), 1.0, [1.0], ContourSpec(gamma=3.0), mode="bromwich").values[0]
    assert a == pytest.approx(E_HALF_1, rel=1e-11, abs=0)
    assert b == pytest.approx(E_HALF_1, rel=1e-11, abs=0)


def test_rejects_bad_times_and_lambda():
    with pytest.raises(DomainError):
        solve_growth(PowerLaw(0.5), 1.0, [0.0])
    with pytest.raises(DomainError):
        solve_growth(PowerLaw(0.5), -1.0, [1.0])
    with pytest.raises(DomainError):
        solve_relaxation(PowerLaw(0.5), 0.0, [1.0])
