"""Exact sector dimensions: closed forms, convolution identity, symmetry."""

import math
import random

from page_entropy.dimensions import (dim_fixed_n, dim_table,
                                     distinguishable_dim,
                                     extended_binomial_closed)
from page_entropy.local_model import catalog, power, product

FIVE = ("fermions", "hardcore_bosons_2species", "bosons",
        "bosons_2species_unordered", "bosons_2species_ordered")


def poly_power_oracle(coeffs, V, cap):
    """(sum a_k z^k)^V truncated at degree cap, by naive repeated products."""
    acc = [1]
    for _ in range(V):
        out = [0] * (cap + 1)
        for i, x in enumerate(acc):
            if x == 0 or i > cap:
                continue
            for j, y in enumerate(coeffs):
                if i + j > cap:
                    break
                out[i + j] += x * y
        acc = out
    return acc


def test_fermion_dims_are_binomials():
    m = catalog("fermions")
    for V in range(1, 31):
        for N in range(0, V + 1):
            assert dim_fixed_n(m, V, N) == math.comb(V, N)
    assert dim_fixed_n(m, 4, 2) == 6
    assert dim_fixed_n(m, 5, 9) == 0  # beyond V*n_max: empty, not an error
    assert dim_fixed_n(m, 5, -1) == 0


def test_boson_dims_are_stars_and_bars():
    m = catalog("bosons")
    for V in range(1, 12):
        for N in range(0, 15):
            assert dim_fixed_n(m, V, N) == math.comb(N + V - 1, N)
    assert dim_fixed_n(m, 3, 2) == 6


def test_ordered_two_species_dims():
    m = catalog("bosons_2species_ordered")
    for V in range(1, 8):
        for N in range(0, 10):
            assert dim_fixed_n(m, V, N) == (2**N) * math.comb(N + V - 1, N)


def test_spin1_spot_value():
    assert dim_fixed_n(catalog("spin_j", 1), 4, 4) == 19


def test_dim_table_matches_naive_polynomial_power():
    rng = random.Random(4)
    for name in FIVE:
        m = catalog(name)
        for _ in range(4):
            V = rng.randrange(1, 10)
            cap = rng.randrange(0, 12)
            got = dim_table(m, V, cap)
            ref = poly_power_oracle(m.coefficients(cap + 1), V, cap)
            assert list(got) == ref[:cap + 1]


def test_dim_table_edges():
    m = catalog("fermions")
    assert list(dim_table(m, 3, 3)) == [1, 3, 3, 1]
    assert list(dim_table(catalog("hardcore_bosons_2species"), 2, 2)) == \
        [1, 4, 4]
    # V=1 returns the coefficient row itself
    two = catalog("spin_j", 1)
    assert list(dim_table(two, 1, 5)) == [1, 1, 1, 0, 0, 0]
    # V=0: the empty lattice has one state at N=0
    assert list(dim_table(m, 0, 2)) == [1, 0, 0]
    # truncation beyond V*n_max zero-pads
    assert list(dim_table(m, 2, 5)) == [1, 2, 1, 0, 0, 0]


def test_extended_binomial_matches_powering():
    for n_max in (1, 2, 3, 4):
        m = catalog("capped_bosons", n_max)
        for V in range(1, 31):
            for N in range(0, V * n_max + 1):
                assert extended_binomial_closed(V, N, n_max) == \
                    dim_fixed_n(m, V, N)
    assert extended_binomial_closed(3, 3, 2) == 7
    assert extended_binomial_closed(4, 4, 2) == 19
    assert extended_binomial_closed(4, 2, 1) == 6


def test_convolution_identity_all_models():
    for name in FIVE:
        m = catalog(name)
        n_max = m.n_max if m.n_max is not None else 3  # probe window
        for V in range(2, 13):
            cap = V * n_max
            full = dim_table(m, V, cap)
            for V_A in range(0, V + 1):
                ta = dim_table(m, V_A, cap)
                tb = dim_table(m, V - V_A, cap)
                for N in range(0, cap + 1):
                    total = sum(ta[k] * tb[N - k]
                                for k in range(max(0, N - len(tb) + 1),
                                               min(N, len(ta) - 1) + 1))
                    assert total == full[N]


def test_palindromic_symmetry_spin_models():
    for j in (0.5, 1, 1.5, 2):
        m = catalog("spin_j", j)
        top = m.n_max
        for V in range(1, 12):
            row = dim_table(m, V, V * top)
            assert list(row) == list(row)[::-1]


def test_composite_model_dims():
    mixed = product([catalog("fermions"), catalog("bosons")])
    # d_N for ((1+z)/(1-z))^V: convolution of C(V,j) with C(N-j+V-1, V-1)
    for V in range(1, 6):
        for N in range(0, 8):
            ref = sum(math.comb(V, j) * math.comb(N - j + V - 1, V - 1)
                      for j in range(0, min(V, N) + 1))
            assert dim_fixed_n(mixed, V, N) == ref
    doubled = power(catalog("fermions"), 2)
    for V in range(1, 7):
        for N in range(0, 2 * V + 1):
            assert dim_fixed_n(doubled, V, N) == math.comb(2 * V, N)


def test_distinguishable_dim():
    assert distinguishable_dim(4, 0) == 1
    assert distinguishable_dim(4, 2) == 16
    assert distinguishable_dim(10, 3) == 1000
