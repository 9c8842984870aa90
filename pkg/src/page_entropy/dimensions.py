"""Exact sector dimensions d_N(V) = [z^N] zeta(z)^V.

Everything here is exact integer arithmetic on Python ints (which serve as
the arbitrary-precision dimension type throughout the package): polynomial
coefficient lists convolved with binary exponentiation, truncated at the
requested particle number.  Floats never appear, so dimensions with
thousands of digits are fine.
"""

from __future__ import annotations

from math import comb

from .errors import DomainError
from .local_model import LocalModel

# Per-model cache of computed tables, keyed (V, cap); evicted FIFO.
_TABLE_CACHE_SLOTS = 64


def dim_fixed_n(model: LocalModel, V: int, N: int) -> int:
    """Dimension of the N-particle sector of V sites; 0 for an empty sector."""
    if N < 0:
        return 0
    return dim_table(model, V, N)[N]


def dim_table(model: LocalModel, V: int, N_cap: int) -> tuple[int, ...]:
    """All sector dimensions d_0 .. d_{N_cap} for V sites, exact.

    One truncated polynomial power serves every N at once; results are
    cached on the model.
    """
    if V < 0:
        raise DomainError(f"V must be nonnegative, got {V}")
    if N_cap < 0:
        raise DomainError(f"N_cap must be nonnegative, got {N_cap}")
    if model.n_max is not None:
        # beyond V * n_max every entry is 0; avoid pointless convolutions
        N_eff = min(N_cap, V * model.n_max)
    else:
        N_eff = N_cap
    cache = getattr(model, "_dim_tables", None)
    if cache is None:
        cache = {}
        model._dim_tables = cache
    hit = cache.get((V, N_eff))
    if hit is None:
        hit = tuple(_power_coefficients(model, V, N_eff))
        if len(cache) >= _TABLE_CACHE_SLOTS:
            cache.pop(next(iter(cache)))
        cache[(V, N_eff)] = hit
    if N_cap == N_eff:
        return hit
    return hit + (0,) * (N_cap - N_eff)


def extended_binomial_closed(V: int, N: int, n_max: int) -> int:
    """Closed form for [z^N] (1 + z + ... + z^n_max)^V.

    Alternating sum of ordinary binomials; exact, and independent of the
    convolution route for cross-checks.
    """
    if V < 0 or n_max < 1:
        raise DomainError("extended binomial needs V >= 0 and n_max >= 1")
    if N < 0 or N > V * n_max:
        return 0
    if V == 0:
        return 1 if N == 0 else 0
    total = 0
    period = n_max + 1
    for k in range(min(V, N // period) + 1):
        term = comb(V, k) * comb(V + N - k * period - 1, V - 1)
        total += -term if k & 1 else term
    return total


def distinguishable_dim(V: int, N: int) -> int:
    """Sector dimension V**N for N labeled (distinguishable) particles."""
    if V < 1 or N < 0:
        raise DomainError("distinguishable_dim needs V >= 1 and N >= 0")
    return V ** N


def _power_coefficients(model: LocalModel, V: int, cap: int) -> list[int]:
    """Coefficients of zeta(z)^V mod z^(cap+1), by binary exponentiation."""
    if V == 0:
        return [1] + [0] * cap
    base_len = cap if model.n_max is None else min(cap, model.n_max)
    base = [model.coefficient(k) for k in range(base_len + 1)]
    result = [1]
    e = V
    while True:
        if e & 1:
            result = _mul_trunc(result, base, cap)
        e >>= 1
        if not e:
            break
        base = _mul_trunc(base, base, cap)
    result.extend(0 for _ in range(cap + 1 - len(result)))
    return result


def _mul_trunc(p: list[int], q: list[int], cap: int) -> list[int]:
    """Product of coefficient lists, truncated at degree cap."""
    out = [0] * min(len(p) + len(q) - 1, cap + 1)
    n_out = len(out)
    for i, pi in enumerate(p):
        if not pi or i >= n_out:
            continue
        j_hi = min(len(q), n_out - i)
        for j in range(j_hi):
            qj = q[j]
            if qj:
                out[i + j] += pi * qj
    return out
