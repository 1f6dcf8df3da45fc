"""Gamma function, domain types, and the adaptive fractional integrators."""

import math

import numpy as np
import pytest

from fracbound.corpus import exact_rl_left, exact_rl_mid, exact_rl_right, random_lipschitz, tent
from fracbound.quadrature import (DEFAULT_SETTINGS, DomainError, Interval, Order,
                                  QuadratureSettings, abs_moment_quadrature, gamma_fn,
                                  rl_left, rl_mid, rl_right)

ITV = Interval(0.0, 1.0)
SQRT2_3 = math.sqrt(2.0) / 3.0


# ----------------------------------------------------------------------
# gamma_fn
# ----------------------------------------------------------------------

@pytest.mark.parametrize("arg, want", [
    (1.0, 1.0),
    (0.5, math.sqrt(math.pi)),
    (5.0, 24.0),
])
def test_gamma_anchors(arg, want):
    assert gamma_fn(arg) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("arg", [0.1, 0.5, 1.0, 2.5, 7.3, 33.0, 99.5, 170.0])
def test_gamma_recurrence(arg):
    assert gamma_fn(arg + 1.0) == pytest.approx(arg * gamma_fn(arg), rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, 172.0, math.nan, math.inf])
def test_gamma_domain_errors(bad):
    with pytest.raises(DomainError):
        gamma_fn(bad)


# ----------------------------------------------------------------------
# domain types
# ----------------------------------------------------------------------

def test_order_rejects_out_of_range():
    for bad in (0.0, 1e-9, 171.0, -2.0, math.nan):
        with pytest.raises(DomainError):
            Order(bad)
    assert Order(1).alpha == 1.0


def test_interval_validation():
    with pytest.raises(DomainError):
        Interval(1.0, 1.0)
    with pytest.raises(DomainError):
        Interval(2.0, 1.0)
    with pytest.raises(DomainError):
        Interval(0.0, math.inf)
    assert Interval(-1.5, 2.5).width == 4.0


def test_settings_validation():
    with pytest.raises(DomainError):
        QuadratureSettings(abs_tol=1e-15)
    with pytest.raises(DomainError):
        QuadratureSettings(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureSettings(max_subdivisions=20_000)
    assert DEFAULT_SETTINGS.abs_tol == 1e-11


# ----------------------------------------------------------------------
# rl_left / rl_right / rl_mid point values
# ----------------------------------------------------------------------

def test_rl_left_constant_singular_kernel():
    got = rl_left(lambda t: 1.0, ITV, Order(0.5), 1.0)
    assert got == pytest.approx(2.0 / gamma_fn(0.5), rel=1e-10)


def test_rl_left_classical_identity():
    assert rl_left(lambda t: t, ITV, Order(1.0), 1.0) == pytest.approx(0.5, rel=1e-12)


def test_rl_left_tent_half_panel():
    f = tent(ITV, 0.5)
    got = rl_left(f, ITV, Order(0.5), 0.5, kinks=f.breakpoints)
    assert got == pytest.approx(SQRT2_3 / gamma_fn(0.5), rel=1e-10)


def test_rl_left_empty_range_and_domain():
    assert rl_left(lambda t: 5.0, ITV, Order(0.5), 0.0) == 0.0
    with pytest.raises(DomainError):
        rl_left(lambda t: 1.0, ITV, Order(0.5), 1.5)


def test_rl_right_constant_and_tent():
    assert rl_right(lambda t: 1.0, ITV, Order(0.5), 0.0) == pytest.approx(
        2.0 / gamma_fn(0.5), rel=1e-10)
    f = tent(ITV, 0.5)
    got = rl_right(f, ITV, Order(0.5), 0.5, kinks=f.breakpoints)
    assert got == pytest.approx(SQRT2_3 / gamma_fn(0.5), rel=1e-10)
    assert rl_right(lambda t: 7.0, ITV, Order(2.0), 1.0) == 0.0


def test_rl_mid_values():
    assert rl_mid(lambda t: 1.0, 0.3, 0.3, Order(0.5)) == 0.0
    got = rl_mid(lambda t: 3.0, 0.25, 0.75, Order(0.5))
    assert got == pytest.approx(3.0 * 0.5 ** 0.5 / gamma_fn(1.5), rel=1e-10)
    assert rl_mid(lambda t: t, 0.25, 0.75, Order(1.0)) == pytest.approx(0.25, rel=1e-12)
    with pytest.raises(DomainError):
        rl_mid(lambda t: t, 0.75, 0.25, Order(1.0))


# ----------------------------------------------------------------------
# abs_moment_quadrature
# ----------------------------------------------------------------------

def test_abs_moment_elementary():
    assert abs_moment_quadrature(1.0, 0.0, 1.0, 0.0, "left", Order(1.0)) == pytest.approx(
        0.5, rel=1e-12)
    assert abs_moment_quadrature(1.0, 0.0, 1.0, 0.0, "left", Order(2.0)) == pytest.approx(
        1.0 / 6.0, rel=1e-12)


def test_abs_moment_golden_singular():
    # node right of the panel: int_0^0.5 (0.75 - t) t^(-1/2) dt = 7/(6*sqrt(2))
    got = abs_moment_quadrature(0.75, 0.0, 0.5, 0.0, "left", Order(0.5))
    assert got == pytest.approx(7.0 / (6.0 * math.sqrt(2.0)), rel=1e-10)


def test_abs_moment_right_kernel():
    # int_0^1 |0.25 - t| (1 - t)^0 dt = 0.25^2/2 + 0.75^2/2
    got = abs_moment_quadrature(0.25, 0.0, 1.0, 1.0, "right", Order(1.0))
    assert got == pytest.approx(0.03125 + 0.28125, rel=1e-12)


def test_abs_moment_anchor_validation():
    with pytest.raises(DomainError):
        abs_moment_quadrature(0.5, 0.0, 1.0, 0.5, "left", Order(1.0))
    with pytest.raises(DomainError):
        abs_moment_quadrature(0.5, 0.0, 1.0, 0.0, "right", Order(1.0))
    with pytest.raises(DomainError):
        abs_moment_quadrature(0.5, 0.0, 1.0, 0.0, "sideways", Order(1.0))


# ----------------------------------------------------------------------
# operator properties
# ----------------------------------------------------------------------

ALPHAS = (0.5, 1.0, 1.5, 2.0)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("seed", [3, 17])
def test_reflection_symmetry(alpha, seed):
    # rl_right at lower = a+b-u equals rl_left of the reflected function at u
    w = random_lipschitz(seed, ITV)
    f = w.function
    a, b = ITV.a, ITV.b
    reflected = lambda t: f(a + b - t)
    for u in (0.25, 0.5, 0.9):
        lhs = rl_right(f, ITV, Order(alpha), a + b - u, kinks=f.breakpoints)
        rhs = rl_left(reflected, ITV, Order(alpha), u,
                      kinks=[a + b - t for t in f.breakpoints])
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_linearity(alpha):
    f = random_lipschitz(5, ITV).function
    g = random_lipschitz(6, ITV).function
    combo = lambda t: 2.0 * f(t) - 3.0 * g(t)
    kinks = sorted(set(f.breakpoints) | set(g.breakpoints))
    lhs = rl_left(combo, ITV, Order(alpha), 0.8, kinks=kinks)
    rhs = (2.0 * rl_left(f, ITV, Order(alpha), 0.8, kinks=f.breakpoints)
           - 3.0 * rl_left(g, ITV, Order(alpha), 0.8, kinks=g.breakpoints))
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


def test_classical_reduction():
    # alpha = 1 reduces to the plain integral (here: exact trapezoid sum)
    w = random_lipschitz(9, ITV)
    f = w.function
    got = rl_left(f, ITV, Order(1.0), 1.0, kinks=f.breakpoints)
    bps, vals = f.breakpoints, f.values
    plain = sum((vals[i] + vals[i + 1]) / 2.0 * (bps[i + 1] - bps[i])
                for i in range(len(bps) - 1))
    assert got == pytest.approx(plain, rel=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("lam", [0.0, 0.3, 0.5, 1.0])
def test_constant_telescoping(alpha, lam):
    c = 2.75
    a, b = ITV.a, ITV.b
    v = (1.0 - lam) * a + lam * b
    order = Order(alpha)
    total = gamma_fn(alpha + 1.0) / (b - a) ** alpha * (
        rl_left(lambda t: c, ITV, order, v) + rl_right(lambda t: c, ITV, order, v))
    assert total == pytest.approx(c * (lam ** alpha + (1.0 - lam) ** alpha), abs=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_tolerance_monotonicity(alpha):
    # tightening tolerances never increases the error vs the exact oracle
    w = random_lipschitz(21, ITV)
    f = w.function
    order = Order(alpha)
    exact = exact_rl_left(f, order, 0.85)
    loose = QuadratureSettings(abs_tol=1e-6, rel_tol=1e-6)
    tight = QuadratureSettings(abs_tol=1e-12, rel_tol=1e-12)
    err_loose = abs(rl_left(f, ITV, order, 0.85, loose, kinks=f.breakpoints) - exact)
    err_tight = abs(rl_left(f, ITV, order, 0.85, tight, kinks=f.breakpoints) - exact)
    assert err_tight <= err_loose + 1e-15


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_quadrature_matches_exact_corpus(alpha, seed):
    w = random_lipschitz(seed, ITV)
    f = w.function
    order = Order(alpha)
    for upper in (0.3, 0.85, 1.0):
        got = rl_left(f, ITV, order, upper, kinks=f.breakpoints)
        want = exact_rl_left(f, order, upper)
        assert abs(got - want) <= max(1e-10, 1e-8 * abs(want))
    for lower in (0.0, 0.4):
        got = rl_right(f, ITV, order, lower, kinks=f.breakpoints)
        want = exact_rl_right(f, order, lower)
        assert abs(got - want) <= max(1e-10, 1e-8 * abs(want))
    got = rl_mid(f, 0.2, 0.7, order, kinks=f.breakpoints)
    want = exact_rl_mid(f, 0.2, 0.7, order)
    assert abs(got - want) <= max(1e-10, 1e-8 * abs(want))


def test_tolerance_failure_carries_estimate():
    starved = QuadratureSettings(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=3)
    from fracbound.quadrature import QuadratureToleranceError
    with pytest.raises(QuadratureToleranceError) as info:
        rl_left(lambda t: math.cos(377.0 * t), ITV, Order(0.5), 1.0, starved)
    assert math.isfinite(info.value.estimate)
    assert info.value.error_bound > 1e-13


def test_check_identities_scales_samples_to_contract():
    from fracbound.cli import RunConfig, cmd_check_identities
    rep = cmd_check_identities(RunConfig(trials=1, alpha_grid=(0.5,)))
    assert rep.aggregate["evaluations"] >= 500


def test_general_interval_and_high_order():
    itv = Interval(-3.0, 5.0)
    w = random_lipschitz(33, itv)
    f = w.function
    for alpha in (0.7, 4.0, 10.0):
        order = Order(alpha)
        got = rl_left(f, itv, order, 2.0, kinks=f.breakpoints)
        want = exact_rl_left(f, order, 2.0)
        assert got == pytest.approx(want, rel=1e-8, abs=1e-10)
