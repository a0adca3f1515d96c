"""Convolution-summation growth classification."""

import math

import numpy as np
import pytest

from fracstep import DcsCase, dcs_bound, dcs_sum, doubling_scan, observed_order


def test_case_validation():
    DcsCase(r=0.3, p=-1.0, q=2.0, n=4)
    with pytest.raises(ValueError):
        DcsCase(r=0.0, p=1.0, q=1.0, n=4)
    with pytest.raises(ValueError):
        DcsCase(r=1.0, p=1.0, q=1.0, n=1)


def test_sum_trivial_cases():
    # p = q = 0 counts the terms
    for n in (2, 5, 100, 4096):
        assert dcs_sum(DcsCase(r=1.7, p=0.0, q=0.0, n=n)) == float(n - 1)
    # n=3, r=1, p=q=1: (3-1)*1 + (3-2)*2 = 4
    assert dcs_sum(DcsCase(r=1.0, p=1.0, q=1.0, n=3)) == 4.0


def test_sum_against_plain_loop():
    rng = np.random.default_rng(31)
    for _ in range(10):
        case = DcsCase(
            r=float(rng.uniform(0.2, 3.0)),
            p=float(rng.uniform(-1.5, 1.5)),
            q=float(rng.uniform(-1.5, 2.5)),
            n=int(rng.integers(2, 200)),
        )
        direct = sum(
            (case.n ** case.r - k ** case.r) ** case.p * k ** case.q
            for k in range(1, case.n)
        )
        assert dcs_sum(case) == pytest.approx(direct, rel=1e-12)


def test_sum_overflow():
    with pytest.raises(OverflowError):
        dcs_sum(DcsCase(r=3.0, p=300.0, q=0.0, n=2 ** 20))


def test_regime_classification():
    rep = dcs_bound(DcsCase(r=0.3, p=-1.0, q=2.0, n=64))
    assert rep.regime == "min=-1"
    assert rep.bound == pytest.approx(64.0 ** 2.7 * (1.0 + math.log(64.0)))

    rep = dcs_bound(DcsCase(r=1.0, p=0.5, q=0.5, n=64))
    assert rep.regime == "min>-1"
    assert rep.bound == pytest.approx(64.0 ** 2.0)

    rep = dcs_bound(DcsCase(r=2.0, p=-2.0, q=3.0, n=64))
    assert rep.regime == "min<-1"
    assert rep.bound == pytest.approx(64.0 ** max(-4.0, 1.0))

    assert rep.ratio == pytest.approx(rep.value / rep.bound)


def test_boundary_warning():
    with pytest.warns(UserWarning, match="log boundary"):
        dcs_bound(DcsCase(r=1.0, p=-1.0 + 5e-9, q=2.0, n=16))
    # exact hit stays silent and picks the log regime
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rep = dcs_bound(DcsCase(r=1.0, p=-1.0, q=2.0, n=16))
    assert rep.regime == "min=-1"


def test_doubling_scan_bounded():
    for (r, p, q) in ((0.3, -1.0, 2.0), (1.0, 0.5, 0.5), (2.0, -2.0, 3.0), (3.0, -1.0, 0.1)):
        reports, bounded = doubling_scan(r, p, q, 14)
        assert bounded, f"scan flagged ({r}, {p}, {q}) as unbounded"
        assert len(reports) == 14
        assert all(rep.value > 0 for rep in reports)
        # the classification never flips across n for fixed exponents
        assert len({rep.regime for rep in reports}) == 1


def test_doubling_scan_ratio_stabilizes():
    # boundedness in the testable sense: consecutive ratios settle within 2x
    reports, _ = doubling_scan(0.3, -1.0, 2.0, 16)
    ratios = [rep.ratio for rep in reports[-4:]]
    for a, b in zip(ratios, ratios[1:]):
        assert 0.5 <= b / a <= 2.0


def test_beta_moment_limit():
    # r=1, p=q=0.5: S / n^2 approaches B(1.5, 1.5) = pi/8
    case = DcsCase(r=1.0, p=0.5, q=0.5, n=2 ** 16)
    ratio = dcs_sum(case) / case.n ** 2
    assert ratio == pytest.approx(math.pi / 8.0, rel=0.02)


def test_doubling_scan_validation():
    with pytest.raises(ValueError):
        doubling_scan(1.0, 0.0, 0.0, 0)
    with pytest.raises(ValueError):
        doubling_scan(1.0, 0.0, 0.0, 21)


def test_observed_order():
    assert observed_order(4.0, 1.0) == pytest.approx(2.0)
    assert observed_order(1.0, 1.0) == 0.0
    with pytest.raises(ValueError):
        observed_order(0.0, 1.0)
    with pytest.raises(ValueError):
        observed_order(1.0, -1.0)
