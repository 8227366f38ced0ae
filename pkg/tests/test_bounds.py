import math

import numpy as np
import pytest

from overlapq.bounds import (
    bhattacharyya,
    bounds_report,
    check_hellinger_sandwich,
    check_ovl_bound,
    hellinger,
    hellinger_sq,
    om_distance,
    om_youden_decomposition,
    ovl_youden_form,
    youden_index,
    youden_optimal_cutoff,
)
from overlapq.densities import draw, kde_fit, normal_density
from overlapq.errors import InvalidParameterError
from overlapq.overlap import om_quadrature, ovl_quadrature

from oracles import midpoint_integral, phi_cdf, phi_pdf, q_closed

N01 = normal_density(0, 1)
THETA_GRID = [0, 0.1, 0.164, 0.5, 1, 2, 4]
# 2 (1 - exp(-theta^2 / 8))
HSQ_1 = 0.2350061948308091
HSQ_0164 = 0.006712709612304968


def kde_pairs(count, seed0=100):
    pairs = []
    for k in range(count):
        rs = np.random.default_rng(seed0 + k)
        shift = rs.uniform(0, 2)
        scale = rs.uniform(0.5, 2)
        pairs.append((kde_fit(rs.normal(0, 1, 60)), kde_fit(rs.normal(shift, scale, 80))))
    return pairs


NORMAL_PAIRS = [(N01, normal_density(t, 1)) for t in THETA_GRID]
KDE_PAIRS = kde_pairs(10)


def test_hellinger_identical():
    assert hellinger(N01, normal_density(0, 1)) == pytest.approx(0.0, abs=1e-8)


def test_hellinger_closed_form():
    assert HSQ_1 == pytest.approx(2 * (1 - math.exp(-1 / 8)), rel=1e-14)
    assert hellinger_sq(N01, normal_density(1, 1)) == pytest.approx(HSQ_1, abs=1e-4)
    assert hellinger_sq(N01, normal_density(0.164, 1)) == pytest.approx(HSQ_0164, abs=1e-6)


def test_hellinger_disjoint():
    assert hellinger(N01, normal_density(40, 1)) == pytest.approx(math.sqrt(2), abs=1e-6)


def test_bhattacharyya_against_midpoint_oracle():
    oracle = midpoint_integral(lambda x: math.sqrt(phi_pdf(x) * phi_pdf(x, 1.0)), -12, 13, 200_000)
    assert oracle == pytest.approx(math.exp(-1 / 8), abs=1e-10)
    assert bhattacharyya(N01, normal_density(1, 1)) == pytest.approx(oracle, abs=1e-8)


def test_om_distance_range_and_symmetry():
    p1 = normal_density(0.7, 1.3)
    d = om_distance(N01, p1)
    assert 0 <= d <= 1
    assert d == om_distance(p1, N01)
    assert om_distance(N01, normal_density(0, 1)) == pytest.approx(0.0, abs=1e-6)


def test_sandwich_at_zero():
    checks = check_hellinger_sandwich(N01, normal_density(0, 1))
    for c in checks:
        assert c.lhs == pytest.approx(0, abs=1e-6) and c.rhs == pytest.approx(0, abs=1e-6)


def test_sandwich_at_0164_reports_upper_violation():
    lower, upper = check_hellinger_sandwich(N01, normal_density(0.164, 1))
    d = 1 - q_closed(0.164)
    assert lower.name == "hellinger_lower" and lower.asserted and lower.satisfied
    assert lower.lhs == pytest.approx(HSQ_0164 * (1 - HSQ_0164 / 4), abs=1e-6)
    assert lower.rhs == pytest.approx(d, abs=1e-4)
    assert upper.name == "hellinger_upper" and not upper.asserted
    assert upper.rhs == pytest.approx(4 * HSQ_0164, abs=1e-5)
    assert not upper.satisfied and upper.slack < -0.06


def test_sandwich_at_four():
    lower, _ = check_hellinger_sandwich(N01, normal_density(4, 1))
    assert lower.satisfied and lower.rhs <= 1


def test_ovl_bound_at_0164():
    bc_check, ovl_check = check_ovl_bound(N01, normal_density(0.164, 1))
    assert bc_check.rhs == pytest.approx(math.exp(-0.164**2 / 4), abs=1e-8)
    ovl = 2 * phi_cdf(-0.082)
    assert ovl_check.rhs == pytest.approx((1 - (1 - ovl) ** 2) ** 2, abs=1e-6)
    assert ovl_check.rhs == pytest.approx(0.99147, abs=1e-5)
    assert bc_check.satisfied and ovl_check.satisfied


@pytest.mark.parametrize("p0, p1", NORMAL_PAIRS + KDE_PAIRS)
def test_asserted_bounds_hold(p0, p1):
    report = bounds_report(p0, p1)
    assert report.violations() == []
    for c in report.checks:
        if c.asserted:
            assert c.slack >= -1e-8
    assert 0 <= report.hellinger_sq <= 2 and 0 <= report.d_om <= 1


def test_report_lists_upper_violation_separately():
    report = bounds_report(N01, normal_density(0.164, 1))
    assert report.violations() == []
    assert [c.name for c in report.violations(asserted_only=False)] == ["hellinger_upper"]
    assert {"checks", "om", "ovl"} <= set(report.as_dict())


@pytest.mark.parametrize("theta, expected", [(0, 1.0), (0.164, q_closed(0.164)), (1, q_closed(1))])
def test_youden_examples(theta, expected):
    est = om_youden_decomposition(N01, normal_density(theta, 1))
    assert est.value == pytest.approx(expected, abs=1e-6)
    mask = om_youden_decomposition(N01, normal_density(theta, 1), force_mask=True)
    assert mask.value == pytest.approx(expected, abs=1e-3)


def test_youden_reverse_direction():
    est = om_youden_decomposition(normal_density(1, 1), N01)
    assert est.value == pytest.approx(q_closed(1), abs=1e-6)


@pytest.mark.parametrize("p0, p1", NORMAL_PAIRS[:-1] + KDE_PAIRS[:5] + [(N01, normal_density(0.3, 2))])
def test_youden_matches_quadrature(p0, p1):
    quad = om_quadrature(p0, p1).value
    assert abs(om_youden_decomposition(p0, p1).value - quad) < 1e-3


def test_youden_disjoint():
    est = om_youden_decomposition(N01, normal_density(40, 1))
    assert est.value == 0 and est.degenerate_support


def test_youden_grid_validation():
    with pytest.raises(InvalidParameterError):
        om_youden_decomposition(N01, N01, 50)


def test_youden_index_examples():
    assert youden_index(N01, normal_density(0, 1), 0.37) == pytest.approx(1.0, abs=1e-15)
    assert youden_index(N01, normal_density(2, 1), 1.0) == pytest.approx(2 * phi_cdf(1), abs=1e-12)
    assert youden_index(N01, normal_density(2, 1), 1.0) == pytest.approx(1.682689492137086, abs=1e-12)


def test_youden_optimal_cutoff_midpoint():
    c, j = youden_optimal_cutoff(N01, normal_density(2, 1))
    assert c == pytest.approx(1.0, abs=1e-6)
    assert j == pytest.approx(1.682689492137086, abs=1e-12)


@pytest.mark.parametrize("theta", [0.5, 1, 2, 3])
def test_youden_maximum_relates_to_ovl(theta):
    # the maximiser sits where the likelihood ratio crosses 1, and F(A) + Gbar(A) on that set is OVL
    p1 = normal_density(theta, 1)
    c, j = youden_optimal_cutoff(N01, p1)
    assert c == pytest.approx(theta / 2, abs=1e-6)
    ovl = ovl_quadrature(N01, p1).value
    assert ovl_youden_form(N01, p1) == pytest.approx(ovl, abs=1e-8)
    assert j == pytest.approx(2 - 2 * phi_cdf(-theta / 2), abs=1e-10)
    assert j == pytest.approx(2 - ovl, abs=1e-5)
