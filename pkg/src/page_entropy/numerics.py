"""Special-function kernels that stay accurate for huge integer arguments.

Sector dimensions in this package are exact Python integers that routinely
exceed the double range (hundreds of digits), so the log / digamma / trigamma
helpers here never convert the full integer to float.  Logs come from the
bit length plus the leading bits; digamma and trigamma switch between an
exact recurrence (small arguments) and the standard asymptotic series.
"""

from __future__ import annotations

import math

from scipy.special import erfcx as _scipy_erfcx

from .errors import DomainError

_LN2 = math.log(2.0)
_EULER_GAMMA = 0.5772156649015328606
_PI2_OVER_6 = math.pi * math.pi / 6.0

# Arguments at or above this use the asymptotic series; below it the exact
# recurrence down to Psi(1) / Psi'(1).
_SERIES_THRESHOLD = 16

# Digamma asymptotic tail: Psi(x) ~ ln x - 1/(2x) - sum B_2k / (2k x^2k).
# Coefficients of x^{-2}, x^{-4}, ... ; truncation error < 1e-15 at x >= 17.
_DIGAMMA_TAIL = (-1.0 / 12.0, 1.0 / 120.0, -1.0 / 252.0, 1.0 / 240.0,
                 -1.0 / 132.0)

# Trigamma asymptotic tail: Psi'(x) ~ 1/x + 1/(2x^2) + sum B_2k x^{-2k-1}.
# Coefficients of x^{-3}, x^{-5}, ... ; truncation error < 1e-15 at x >= 17.
_TRIGAMMA_TAIL = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                  5.0 / 66.0)


def ln_big(d) -> float:
    """Natural log of a positive integer of any size.

    Uses the bit length and the leading 96 bits only, so the value never
    goes through a lossy full-integer float conversion.  Relative error
    is a few ulp (< 1e-14) regardless of magnitude.
    """
    d = _as_positive_int(d, "ln_big")
    bits = d.bit_length()
    if bits <= 96:
        return math.log(d)
    shift = bits - 96
    return math.log(d >> shift) + shift * _LN2


def digamma_of_dim(d) -> float:
    """Psi(d + 1) for a nonnegative integer dimension d of any size.

    Exact harmonic recurrence for d < 16, asymptotic series at x = d + 1
    otherwise; absolute error < 1e-12 everywhere (far smaller in practice).
    """
    d = _as_dim_int(d, "digamma_of_dim")
    if d < _SERIES_THRESHOLD:
        # Psi(d+1) = -gamma + H_d, summed smallest-first.
        acc = 0.0
        for k in range(d, 0, -1):
            acc += 1.0 / k
        return acc - _EULER_GAMMA
    x = d + 1
    result = ln_big(x)
    inv = _safe_inverse(x)
    if inv == 0.0:
        return result
    inv2 = inv * inv
    tail = 0.0
    power = inv2
    for coeff in _DIGAMMA_TAIL:
        tail += coeff * power
        power *= inv2
    return result - 0.5 * inv + tail


def trigamma_of_dim(d) -> float:
    """Psi'(d + 1) for a nonnegative integer dimension d of any size.

    Exact recurrence for d < 16, asymptotic series otherwise; absolute
    error < 1e-12.  Underflows smoothly to 0 for astronomically large d.
    """
    d = _as_dim_int(d, "trigamma_of_dim")
    if d < _SERIES_THRESHOLD:
        acc = 0.0
        for k in range(d, 0, -1):
            acc -= 1.0 / (k * k)
        return acc + _PI2_OVER_6
    x = d + 1
    inv = _safe_inverse(x)
    if inv == 0.0:
        return 0.0
    inv2 = inv * inv
    result = inv + 0.5 * inv2
    power = inv * inv2
    for coeff in _TRIGAMMA_TAIL:
        result += coeff * power
        power *= inv2
    return result


def erfc(x: float) -> float:
    """Complementary error function, saturating to 2 / 0 beyond |x| = 30."""
    if x >= 30.0:
        return 0.0
    if x <= -30.0:
        return 2.0
    return math.erfc(x)


def erfcx(x: float) -> float:
    """Scaled complementary error function exp(x^2) erfc(x).

    Used wherever exp(A) * erfc(B) would overflow before the product tames.
    """
    return float(_scipy_erfcx(x))


def exp_times_erfc(a: float, b: float) -> float:
    """exp(a) * erfc(b) without intermediate overflow.

    Finite whenever the true product is; relies on erfcx for b >= 0 and on
    the reflection erfc(b) = 2 - erfc(-b) otherwise.
    """
    if b >= 0.0:
        ex = a - b * b
        if ex < -745.0:
            return 0.0
        return erfcx(b) * math.exp(ex)
    # erfc(b) in (1, 2), so the product overflows only if exp(a) does.
    if a > 709.0:
        return math.inf
    return 2.0 * math.exp(a) - erfcx(-b) * math.exp(a - b * b)


def _safe_inverse(x: int) -> float:
    """1/x for a positive integer, 0.0 once the true value underflows."""
    if x.bit_length() > 1000:
        return 0.0
    return 1.0 / float(x)


def _as_positive_int(d, where: str) -> int:
    d = _as_dim_int(d, where)
    if d == 0:
        raise DomainError(f"{where}: log of zero dimension")
    return d


def _as_dim_int(d, where: str) -> int:
    if isinstance(d, bool) or not isinstance(d, int):
        raise DomainError(f"{where}: expected an integer dimension, got {d!r}")
    if d < 0:
        raise DomainError(f"{where}: dimension must be nonnegative, got {d}")
    return d
