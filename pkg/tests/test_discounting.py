import math

import numpy as np
import pytest

from fuzzychoice.core_math import DomainError
from fuzzychoice.discounting import (
    DiscountParams,
    InsufficientDataError,
    annualized_rate,
    average_rate,
    discount,
    fit_discount,
    load_points_csv,
    params_from_arbitrage,
    product_identity,
    subadditive_combine,
)


def test_params_validation():
    DiscountParams(0.0, 0.1)
    with pytest.raises(DomainError):
        DiscountParams(0.5, 0.1)
    with pytest.raises(DomainError):
        DiscountParams(-1.0, 0.0)


@pytest.mark.parametrize("h, rho, n, expected", [
    (-1e-12, 0.005, 100, 0.6065306597126334),  # exp(-0.5)
    (-3.0, 0.0175, 12, 0.8497101353101589),  # 1.63**(-1/3)
    (-3.0, 0.0175, 0, 1.0),
    (-5.0, 0.05, 0, 1.0),
])
def test_discount_values(h, rho, n, expected):
    assert discount(DiscountParams(h, rho), n) == pytest.approx(expected, rel=1e-13)


def test_discount_decreasing_and_vectorized():
    p = DiscountParams(-3.0, 0.7)
    n = np.arange(0, 200)
    d = discount(p, n)
    assert d[0] == 1.0 and np.all(np.diff(d) < 0) and np.all(d > 0)
    with pytest.raises(DomainError):
        discount(p, -1)


@pytest.mark.parametrize("s_m, s_M, n, kappa, W0, h, rho", [
    (1, 1, 1, 100, 1000, -1.0, 0.1),
    (0.5, 0.75, 6, 300, 10_000, -0.25, 0.015),
])
def test_params_from_arbitrage(s_m, s_M, n, kappa, W0, h, rho):
    p = params_from_arbitrage(s_m, s_M, n, kappa, W0)
    assert p.h == pytest.approx(h) and p.rho == pytest.approx(rho)


def test_arbitrage_many_trials_tends_to_exponential():
    hs = [params_from_arbitrage(0.8, 0.6, n, 10, 100).h for n in (1, 10, 100, 10_000)]
    assert all(a < b < 0 for a, b in zip(hs, hs[1:]))
    assert abs(hs[-1]) < 1e-4


@pytest.mark.parametrize("bad", [
    (0, 1, 1, 1, 1), (1, 0, 1, 1, 1), (1, 1, 0, 1, 1), (1, 1, 1, 0, 1), (1, 1, 1, 1, 0), (1.2, 1, 1, 1, 1),
])
def test_params_from_arbitrage_errors(bad):
    with pytest.raises(DomainError):
        params_from_arbitrage(*bad)


@pytest.mark.parametrize("m, M, t, expected", [
    (15, 30, 0.25, 2.772588722239781),
    (250, 300, 1 / 12, 2.1878586815274555),
    (3000, 3500, 0.25, 0.6166027193090332),
])
def test_annualized_rate(m, M, t, expected):
    assert annualized_rate(m, M, t) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("m, M, t", [(0, 1, 1), (10, 10, 1), (10, 5, 1), (10, 20, 0)])
def test_annualized_rate_errors(m, M, t):
    with pytest.raises(DomainError):
        annualized_rate(m, M, t)


def test_subadditive_examples():
    divided, undivided = subadditive_combine(DiscountParams(-1.0, 1.0), 1.0, 1.0)
    assert divided == pytest.approx(0.25, rel=1e-14)
    assert undivided == pytest.approx(1 / 3, rel=1e-14)
    d, u = subadditive_combine(DiscountParams(-2.0, 0.3), 0.0, 4.0)
    assert d == u
    d, u = subadditive_combine(DiscountParams(-1e-12, 0.3), 2.0, 5.0)
    assert abs(d - u) < 1e-9


def test_subadditivity_and_identity_random():
    rng = np.random.default_rng(7)
    for _ in range(2000):
        h, rho = rng.uniform(-5, -0.01), rng.uniform(1e-3, 1.0)
        a, b = rng.uniform(1e-3, 20, size=2)
        p = DiscountParams(h, rho)
        divided, undivided = subadditive_combine(p, a, b)
        assert divided < undivided
        assert abs(divided - product_identity(h, rho * a, rho * b)) < 1e-10


def test_time_effect():
    n = np.arange(1, 121)
    for h in (-0.1, -1.0, -3.0, -5.0):
        r = average_rate(DiscountParams(h, 0.05), n)
        assert np.all(np.diff(r) < 0)
    r = average_rate(DiscountParams(-1e-3, 0.05), n)
    assert np.all(np.diff(r) <= 1e-15)


def test_magnitude_effect():
    for h in (-0.1, -1.0, -3.0):
        for rho0 in (0.01, 0.1, 0.5):
            base = -math.log(discount(DiscountParams(h, rho0), 1))
            for r in (1.5, 2.0, 5.0, 20.0):
                scaled = -math.log(discount(DiscountParams(h, r * rho0), 1)) / r
                assert base >= scaled


def test_fit_round_trip():
    truth = DiscountParams(-3.0, 0.0175)
    pts = [(n, discount(truth, n)) for n in range(1, 25)]
    res = fit_discount(pts)
    assert res.converged
    assert abs(res.h + 3.0) < 0.05
    assert abs(res.rho - 0.0175) < 0.0005
    assert res.residual < 1e-10
    assert res.params == DiscountParams(res.h, res.rho)


def test_fit_exponential_data():
    pts = [(1, math.exp(-0.1)), (5, math.exp(-0.5))]
    res = fit_discount(pts)
    assert -0.01 < res.h <= 0
    assert res.rho == pytest.approx(0.1, rel=1e-6)


def test_fit_recovers_other_shapes():
    for h, rho in ((-0.5, 0.2), (-5.0, 0.05), (-1.0, 1.5)):
        truth = DiscountParams(h, rho)
        res = fit_discount([(n, discount(truth, n)) for n in (0.5, 1, 2, 4, 8, 16, 32)])
        assert res.h == pytest.approx(h, rel=1e-4)
        assert res.rho == pytest.approx(rho, rel=1e-4)


def test_fit_unconstrained_diagnostic():
    # concave-in-rate data (h > 0 family) is only reachable without the constraint
    h, rho = 0.3, 0.1
    pts = [(n, (1 - h * rho * n) ** (1 / h)) for n in range(1, 10)]
    free = fit_discount(pts, unconstrained=True)
    assert free.h == pytest.approx(h, rel=1e-4)
    assert free.params is None
    tied = fit_discount(pts)
    assert tied.h <= 0 and tied.residual > free.residual


def test_fit_errors():
    with pytest.raises(InsufficientDataError):
        fit_discount([(1, 0.9)])
    with pytest.raises(InsufficientDataError):
        fit_discount([(1, 0.9), (1, 0.8)])
    with pytest.raises(DomainError):
        fit_discount([(1, 0.9), (2, 1.2)])


def test_fit_non_convergence_is_flagged(monkeypatch):
    import fuzzychoice.discounting as mod
    monkeypatch.setattr(mod, "_MAX_EVALS", 5)
    res = fit_discount([(n, 0.9 ** n) for n in range(1, 6)])
    assert not res.converged
    assert math.isfinite(res.residual)


def test_load_points_csv(tmp_path):
    f = tmp_path / "pts.csv"
    f.write_text("delay_periods,discount_factor\n1,0.9\n2,0.85\n")
    assert load_points_csv(f) == [(1.0, 0.9), (2.0, 0.85)]
    g = tmp_path / "bad.csv"
    g.write_text("delay,discount\n1,0.9\n")
    with pytest.raises(DomainError):
        load_points_csv(g)
