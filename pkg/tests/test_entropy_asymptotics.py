"""Large-V mean/variance formulas and the Kronecker-delta resolutions."""

import math
import random

import pytest

from page_entropy.entropy import (BipartitionSpec, asymptotic_average,
                                  asymptotic_terms, asymptotic_variance,
                                  distinguishable_asymptotic,
                                  distinguishable_exact_average,
                                  exact_average, kronecker_resolution,
                                  n_crit, resolve_x1, resolve_x2,
                                  resolved_average, x1_powerlaw, x2_powerlaw,
                                  y_exponent)
from page_entropy.errors import DomainError, NumericalError
from page_entropy.local_model import catalog
from page_entropy.numerics import erfc, erfcx, exp_times_erfc
from page_entropy.saddle import beta_family, n_star

TWO_PI = 2.0 * math.pi


def test_leading_terms_fermions_half_filling():
    m = catalog("fermions")
    t = asymptotic_terms(m, 100, 0.5, 0.5)
    ref = 50 * math.log(2) + 0.5 * (0.5 + math.log(0.5) - 1.0)
    assert abs(t.value - ref) < 1e-12
    assert abs(t.value - 34.0608) < 1e-4
    assert t.b == 0.0  # beta'(1/2) = 0 kills the sqrt(V) term
    assert t.at_half_f and t.at_n_star


def test_leading_terms_fermions_third_filling():
    m = catalog("fermions")
    t = asymptotic_terms(m, 640, 0.25, 1 / 3)
    beta_third = math.log(3) - (2 / 3) * math.log(2)
    assert abs(t.a - beta_third / 4) < 1e-12
    assert t.b == 0.0
    assert abs(t.c - 0.5 * (0.25 + math.log(0.75))) < 1e-12
    assert not t.at_half_f and not t.at_n_star
    # at f=1/2 the sqrt(V) coefficient appears
    t2 = asymptotic_terms(m, 640, 0.5, 1 / 3)
    sol = beta_family(m, 1 / 3)
    b_ref = -abs(sol.beta1) / math.sqrt(TWO_PI * abs(sol.beta2))
    assert abs(t2.b - b_ref) < 1e-12
    assert abs(b_ref + 0.13035547304580566) < 1e-12  # -ln2 / sqrt(9 pi)


def test_both_deltas_fire_at_hardcore2_peak():
    m = catalog("hardcore_bosons_2species")
    t = asymptotic_terms(m, 200, 0.5, 2 / 3)
    assert t.at_half_f and t.at_n_star
    assert t.b == 0.0
    assert abs(t.c - 0.5 * (0.5 + math.log(0.5) - 1.0)) < 1e-12


def test_fraction_normalization_and_errors():
    m = catalog("fermions")
    a = asymptotic_terms(m, 100, 0.3, 0.4)
    b = asymptotic_terms(m, 100, 0.7, 0.4)
    # 1 - 0.7 is not the float 0.3, so agreement is to rounding only
    assert abs(a.value - b.value) < 1e-12
    with pytest.raises(DomainError):
        asymptotic_terms(m, 100, 0.0, 0.4)
    with pytest.raises(DomainError):
        asymptotic_terms(m, 100, 0.5, 1.0)  # boundary filling


def test_b_and_nstar_delta_mutually_exclusive():
    # b is proportional to |beta'| which vanishes exactly where the
    # n = n* delta fires, so they can never both contribute
    m = catalog("hardcore_bosons_2species")
    for f in (0.21, 0.5, 0.37):
        for n in (0.3, 2 / 3, 0.8, 0.95):
            t = asymptotic_terms(m, 100, f, n)
            assert not (t.b != 0.0 and t.at_n_star)


def test_asymptotic_average_spec_entry():
    m = catalog("fermions")
    spec = BipartitionSpec(100, 50, 50)
    assert abs(asymptotic_average(m, spec)
               - asymptotic_terms(m, 100, 0.5, 0.5).value) < 1e-15


def test_resolved_off_critical_equals_asymptotic():
    m = catalog("fermions")
    n = 1 / 3
    r = resolved_average(m, 1e4, 0.3, n)
    a = asymptotic_terms(m, 1e4, 0.3, n).value
    assert abs(r - a) < 1e-8


def test_resolved_on_critical_f_limit():
    # at f = 1/2 with n != n*, the X1 block leaves a slowly decaying
    # residue erfcx(sqrt(|beta''*| V / 2) |n - n*|)/2; V = 1e4 sits at
    # ~1.2e-2, the sub-1e-3 regime starts around V ~ 1e8
    m = catalog("fermions")
    n = 1 / 3
    sol_star = beta_family(m, 0.5)
    for V, bound in ((1e4, None), (1e8, 1e-3)):
        r = resolved_average(m, V, 0.5, n)
        a = asymptotic_terms(m, V, 0.5, n).value
        residue = 0.5 * erfcx(
            math.sqrt(abs(sol_star.beta2) / 2) * abs(n - 0.5) * math.sqrt(V))
        assert abs(abs(r - a) - residue) < 1e-9
        if bound is not None:
            assert abs(r - a) < bound


def test_resolved_symmetric_in_f():
    m = catalog("spin_j", 1)
    for f in (0.2, 0.35, 0.45):
        lhs = resolved_average(m, 400, f, 1.2)
        rhs = resolved_average(m, 400, 1 - f, 1.2)
        assert abs(lhs - rhs) < 1e-12
    with pytest.raises(DomainError):
        resolved_average(m, 2, 0.5, 1.0)  # V >= 4 contract


def test_resolved_tracks_exact_spin1():
    m = catalog("spin_j", 1)
    V, N = 16, 24
    for v_a in range(1, 16):
        r = resolved_average(m, V, v_a / V, N / V)
        e = exact_average(m, BipartitionSpec(V, N, v_a))
        assert abs(r - e) < 0.05


def test_x1_bounds_and_mirror_symmetry():
    m = catalog("fermions")
    rng = random.Random(31)
    for _ in range(60):
        V = rng.uniform(10, 1e5)
        f = rng.uniform(0.05, 0.95)
        n = rng.uniform(0.05, 0.95)
        x1 = resolve_x1(m, V, f, n)
        assert 0.0 <= x1 <= 1.0 + 1e-9
        mirrored = resolve_x1(m, V, 1.0 - f, n)
        assert abs(x1 - mirrored) < 1e-12
        flipped = resolve_x1(m, V, f, 1.0 - n)  # n* = 1/2 midpoint
        assert abs(x1 - flipped) < 1e-9
    with pytest.raises(DomainError):
        resolve_x1(catalog("bosons"), 100, 0.5, 0.5)


def test_x1_peak_value_and_small_lambda_n_limit():
    m = catalog("fermions")
    # exactly on both deltas the crossover saturates and the resolved
    # correction reproduces the -1/2 of the two-delta asymptotic formula
    assert abs(resolve_x1(m, 1e6, 0.5, 0.5) - 1.0) < 1e-12
    # continuity of the analytic Lambda_n -> 0 limit
    at_zero = resolve_x1(m, 1e4, 0.48, 0.5)
    near_zero = resolve_x1(m, 1e4, 0.48, 0.5 + 1e-11)
    assert abs(at_zero - near_zero) < 1e-6
    assert abs(at_zero - math.exp(-2 * 0.02e4 * math.log(2))) < 1e-12


def test_x2_nonpositive_and_off_critical_zero():
    m = catalog("fermions")
    n = 1 / 3
    rng = random.Random(32)
    for _ in range(40):
        V = rng.uniform(10, 1e5)
        f = rng.uniform(0.05, 0.5)
        x2 = resolve_x2(m, V, f, n)
        assert x2 <= 1e-12
    assert abs(resolve_x2(m, 1e6, 0.05, n)) < 1e-300
    sol = beta_family(m, n)
    deficit = abs(sol.beta1) * math.sqrt(1e6 / (TWO_PI * abs(sol.beta2)))
    assert abs(resolve_x2(m, 1e6, 0.5, n) + deficit) < 1e-9
    with pytest.raises(NumericalError):
        resolve_x2(m, 100, 0.4, 0.5)  # beta'(n*) = 0


def test_x1_powerlaw_case_table():
    m = catalog("fermions")
    sol = beta_family(m, 0.5)
    bstar, ab2 = sol.beta, abs(sol.beta2)
    rng = random.Random(33)
    for _ in range(10):
        lf = rng.uniform(0.05, 3.0)
        ln = rng.uniform(0.05, 3.0)
        # below the critical powers
        assert x1_powerlaw(m, 0.7, 0.5, lf, ln) == 0.0
        assert x1_powerlaw(m, 1.0, 0.3, lf, ln) == 0.0
        # above both
        assert x1_powerlaw(m, 1.4, 0.8, lf, ln) == 1.0
        # edges
        got = x1_powerlaw(m, 2.0, 0.5, lf, ln)
        ref = exp_times_erfc(0.5 * ln * ln * ab2,
                             math.sqrt(0.5 * ab2) * abs(ln))
        assert abs(got - ref) < 1e-12
        got = x1_powerlaw(m, 1.0, 2.0, lf, ln)
        assert abs(got - math.exp(-2 * abs(lf) * bstar)) < 1e-12
        # the full (s=1, t=1/2) surface against a direct evaluation
        got = x1_powerlaw(m, 1.0, 0.5, lf, ln)
        u = ln * ln * ab2
        direct = 0.5 * (
            exp_times_erfc(0.5 * u + 2 * lf * bstar,
                           math.sqrt(0.5 * ab2) * (u + 2 * lf * bstar)
                           / abs(ln * ab2))
            + exp_times_erfc(0.5 * u - 2 * lf * bstar,
                             math.sqrt(0.5 * ab2) * (u - 2 * lf * bstar)
                             / abs(ln * ab2)))
        assert abs(got - direct) < 1e-10 * max(1.0, abs(direct))


def test_x1_powerlaw_matches_resolve_at_scaling():
    m = catalog("fermions")
    lf, ln = 0.8, -0.6
    for V in (1e4, 1e6):
        f = 0.5 + lf / V
        n = 0.5 + ln / math.sqrt(V)
        assert abs(resolve_x1(m, V, f, n)
                   - x1_powerlaw(m, 1.0, 0.5, lf, ln)) < 1e-9


def test_x2_powerlaw_case_table():
    m = catalog("fermions")
    n = 1 / 3
    sol = beta_family(m, n)
    beta, ab1, ab2 = sol.beta, abs(sol.beta1), abs(sol.beta2)
    rng = random.Random(34)
    for _ in range(10):
        lf = rng.uniform(-2.0, 2.0)
        V = rng.uniform(50, 1e5)
        deficit = ab1 * math.sqrt(V / (TWO_PI * ab2))
        assert x2_powerlaw(m, n, 0.3, lf, V) == 0.0
        got = x2_powerlaw(m, n, 0.5, lf, V)
        ref = math.sqrt(V) * (
            abs(lf) * beta * erfc(math.sqrt(2 * ab2) * abs(lf) * beta / ab1)
            - ab1 / math.sqrt(TWO_PI * ab2)
            * math.exp(-2 * ab2 * lf * lf * beta * beta / (ab1 * ab1)))
        assert abs(got - ref) < 1e-10 * max(1.0, abs(ref))
        got = x2_powerlaw(m, n, 0.75, lf, V)
        ref = abs(lf) * V**0.25 * beta - deficit
        assert abs(got - ref) < 1e-10 * max(1.0, abs(ref))
        got = x2_powerlaw(m, n, 1.7, lf, V)
        assert abs(got + deficit) < 1e-10 * max(1.0, deficit)


def test_x2_powerlaw_half_case_at_zero_offset():
    # Lambda_f = 0 at s = 1/2 reduces to the sqrt(V) delta coefficient
    m = catalog("fermions")
    n = 1 / 3
    sol = beta_family(m, n)
    V = 4e4
    got = x2_powerlaw(m, n, 0.5, 0.0, V)
    ref = -abs(sol.beta1) * math.sqrt(V / (TWO_PI * abs(sol.beta2)))
    assert abs(got - ref) < 1e-10 * abs(ref)


def test_kronecker_resolution_panel():
    m = catalog("fermions")
    panel = kronecker_resolution(m, 400, 0.45, 0.4)
    assert panel.s == 1.0 and panel.t == 0.5
    assert abs(panel.lambda_f - (-0.05 * 400)) < 1e-12
    assert abs(panel.lambda_n - (0.4 - 0.5) * 20) < 1e-12
    assert 0.0 <= panel.x1 <= 1.0 + 1e-9
    assert panel.x2 <= 0.0
    nostar = kronecker_resolution(catalog("bosons"), 400, 0.45, 0.4)
    assert nostar.x1 is None and nostar.lambda_n is None
    at_peak = kronecker_resolution(m, 400, 0.45, 0.5)
    assert at_peak.x2 is None  # beta' = 0 there


def test_y_exponent_and_n_crit():
    m = catalog("fermions")
    n = 1 / 3
    assert abs(y_exponent(m, 0.5, n, 0.5 * n)) < 1e-14
    assert abs(n_crit(m, 0.5, n) - n / 2) < 1e-15
    # root-finding oracle on the exact Y at f = 0.48
    f = 0.48
    lo, hi = 0.3 * f * n, 1.7 * f * n
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if y_exponent(m, f, n, mid) < 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    approx = n_crit(m, f, n)
    assert abs(root - approx) < 5e-4  # linearized vs exact crossing
    with pytest.raises(DomainError):
        n_crit(m, 0.7, n)
    with pytest.raises(NumericalError):
        n_crit(m, 0.3, 0.5)  # beta' and n - n* vanish together


def test_asymptotic_variance_values():
    m = catalog("fermions")
    n = 1 / 3
    sol = beta_family(m, n)
    got = asymptotic_variance(m, 100, 0.25, n)
    pref = (math.sqrt(TWO_PI) * sol.beta1**2 / abs(sol.beta2)**1.5
            * (0.25 * 0.75) * 100**1.5)
    ref = pref * math.exp(-sol.beta * 100)
    assert abs(got.value - ref) < 1e-12 * ref
    assert abs(got.log_value - math.log(ref)) < 1e-9
    half = asymptotic_variance(m, 100, 0.5, n)
    shape = 0.25 - 1.0 / TWO_PI
    assert abs(shape - 0.09085) < 5e-6
    assert abs(half.prefactor
               - pref / (0.25 * 0.75) * shape) < 1e-9 * half.prefactor
    # beta'(n*) = 0 kills the leading order entirely
    at_star = asymptotic_variance(m, 100, 0.25, 0.5)
    assert at_star.value == 0.0 and at_star.log_value is None


def test_distinguishable_asymptotic_terms():
    t = distinguishable_asymptotic(100, 100, 25)
    assert abs(t.c1 - 0.25) < 1e-15
    assert abs(t.c2 - 0.2157615543388171) < 1e-12  # -0.75 ln 0.75
    assert t.c3 == 0.0
    t2 = distinguishable_asymptotic(100, 100, 50)
    assert abs(t2.c3 - math.sqrt(1.0 / TWO_PI) * math.log(2)) < 1e-15
    # super-extensive: the mean outgrows any volume law
    small = distinguishable_exact_average(50, 50, 25) / 50
    large = distinguishable_exact_average(400, 400, 200) / 400
    assert large > small + 0.5
