"""Saddle-point solution for the sector-dimension growth rate.

For filling n = N/V, the leading behavior ln d_N ~ V beta(n) comes from the
unique positive root z0 of

    Z(z) = z zeta'(z) / zeta(z) = n,

with beta(n) = ln zeta(z0) - n ln z0.  Z is strictly increasing from 0 to
n_max (or to infinity inside the convergence disk), so the root is found by
bracketing + bisection and polished with Newton steps.  First and second
derivatives of beta come in closed form from the same evaluation, never
from finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, NumericalError
from .local_model import LocalModel, eval_zeta

# n this close to a support edge snaps to the analytic boundary values.
_BOUNDARY_SNAP = 1e-9
_MAX_EXPANSIONS = 200


@dataclass(frozen=True)
class SaddleSolution:
    """beta family at one filling: beta and its first two n-derivatives.

    beta1 = -ln z0 and beta2 = -z0'/z0 in closed form; alpha is the
    prefactor sqrt(-beta2 / 2 pi) of the leading dimension asymptotics.
    At a support boundary (n -> 0 or n -> n_max) the derivatives diverge:
    the record carries the analytic beta value, signed infinities, and
    at_boundary=True.
    """
    n: float
    z0: float
    beta: float
    beta1: float
    beta2: float
    alpha: float
    at_boundary: bool = False


def solve_z0(model: LocalModel, n: float) -> float:
    """Root of Z(z) = n, relative error < 1e-13.

    Requires 0 < n, and n < n_max for finite support.  For unbounded
    models the root always lies inside the convergence disk.
    """
    n = float(n)
    if not n > 0.0:
        raise DomainError(f"filling must be positive, got n={n}")
    if model.n_max is not None and n >= model.n_max:
        raise DomainError(f"filling n={n} is not below n_max={model.n_max}")

    z = _bracketed_root(model, n)
    return z


def beta_family(model: LocalModel, n: float) -> SaddleSolution:
    """SaddleSolution at filling n, snapping to analytic boundary values.

    Within 1e-9 of n = 0 the exact limits are beta = ln a_0, beta' = +inf;
    within 1e-9 of a finite n_max they are beta = ln a_{n_max},
    beta' = -inf.  Both carry beta2 = -inf and at_boundary=True.
    """
    n = float(n)
    if abs(n) <= _BOUNDARY_SNAP:
        return SaddleSolution(n=0.0, z0=0.0, beta=math.log(model.coefficient(0)),
                              beta1=math.inf, beta2=-math.inf, alpha=math.inf,
                              at_boundary=True)
    if model.n_max is not None and abs(n - model.n_max) <= _BOUNDARY_SNAP:
        top = model.coefficient(model.n_max)
        return SaddleSolution(n=float(model.n_max), z0=math.inf,
                              beta=math.log(top), beta1=-math.inf,
                              beta2=-math.inf, alpha=math.inf,
                              at_boundary=True)

    z0 = solve_z0(model, n)
    f, f1, f2 = eval_zeta(model, z0)
    beta = math.log(f) - n * math.log(z0)
    beta1 = -math.log(z0)
    ratio = f1 / f
    psi2 = n / (z0 * z0) + f2 / f - ratio * ratio
    beta2 = -1.0 / (z0 * z0 * psi2)
    alpha = math.sqrt(max(-beta2, 0.0) / (2.0 * math.pi))
    return SaddleSolution(n=n, z0=z0, beta=beta, beta1=beta1, beta2=beta2,
                          alpha=alpha)


def n_star(model: LocalModel) -> Optional[float]:
    """Filling where beta peaks: zeta'(1)/zeta(1) for finite support, else None.

    Unbounded models have beta strictly increasing, so no peak exists.
    """
    if model.n_max is None:
        return None
    f, f1, _ = eval_zeta(model, 1.0)
    return f1 / f


def ln_dim_asymptotic(model: LocalModel, V: int, n: float) -> float:
    """Leading asymptotics of ln d_N: V beta - (1/2) ln V + ln alpha."""
    if V < 1:
        raise DomainError(f"V must be >= 1, got {V}")
    sol = beta_family(model, n)
    if sol.at_boundary:
        raise DomainError("dimension asymptotics are not defined at the "
                          "support boundary")
    return V * sol.beta - 0.5 * math.log(V) + math.log(sol.alpha)


def _z_of(model: LocalModel, z: float) -> float:
    f, f1, _ = eval_zeta(model, z)
    return z * f1 / f


def _bracketed_root(model: LocalModel, n: float) -> float:
    lo, hi = _initial_bracket(model, n)

    # bisect to ~1e-6 relative, enough for Newton to take over
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _z_of(model, mid) < n:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-6 * mid:
            break

    z = 0.5 * (lo + hi)
    for _ in range(60):
        f, f1, f2 = eval_zeta(model, z)
        ratio = f1 / f
        value = z * ratio - n
        # tighten the bracket first so an endpoint hit is not rejected
        if value > 0.0:
            hi = z
        else:
            lo = z
        deriv = ratio + z * (f2 / f - ratio * ratio)
        z_next = z - value / deriv
        if not lo <= z_next <= hi:
            z_next = 0.5 * (lo + hi)
        if abs(z_next - z) <= 1e-15 * abs(z_next):
            return z_next
        z = z_next
    if abs(_z_of(model, z) - n) <= 1e-10 * n:
        return z
    raise NumericalError(f"saddle Newton iteration stalled at n={n} "
                         f"for {model.label}")


def _initial_bracket(model: LocalModel, n: float):
    if model.n_max is not None:
        lo = hi = 1.0
        count = 0
        while _z_of(model, lo) >= n:
            lo *= 0.25
            count += 1
            if count > _MAX_EXPANSIONS:
                raise NumericalError("bracketing failed toward z = 0")
        count = 0
        while _z_of(model, hi) <= n:
            hi *= 4.0
            count += 1
            if count > _MAX_EXPANSIONS:
                raise NumericalError("bracketing failed toward z = inf")
        return lo, hi

    radius = model.radius
    lo = 0.5 * radius
    count = 0
    while _z_of(model, lo) >= n:
        lo *= 0.25
        count += 1
        if count > _MAX_EXPANSIONS:
            raise NumericalError("bracketing failed toward z = 0")
    gap = 0.25 * radius
    hi = radius - gap
    count = 0
    while hi <= lo or _z_of(model, hi) <= n:
        gap *= 0.25
        hi = radius - gap
        count += 1
        if count > _MAX_EXPANSIONS:
            raise NumericalError("bracketing failed toward the radius")
    return lo, hi
