"""
Scalar special functions used by every other module

Gamma, rising/falling factorials, the generalized hypergeometric 0Fq series,
Bessel J_nu and its positive zeros, the two-parameter Mittag-Leffler
function and the two-term Gamma-ratio asymptotic.
"""

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import mpmath
import numpy as np
from loguru import logger
from scipy import optimize, special

from fracspectral.errors import (
    DomainError,
    GammaOverflowError,
    InvalidParameterError,
    PrecisionLossError,
    SeriesDivergenceError,
)

MAX_TERMS = 10_000
SERIES_RTOL = 1e-14

# Mittag-Leffler regimes, see mittag_leffler()
ML_SWITCH = 10.0
ML_ASYMPTOTIC_SCALE = 40.0
ML_PRECISION_BUDGET = 1e8

BESSEL_SCAN_STEP = 0.1
BESSEL_MAX_SCAN_STEPS = 200_000
BESSEL_XTOL = 1e-13


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class HypergeometricParams:
    lower_params: Tuple[float, ...]
    argument: float

    def __post_init__(self):
        object.__setattr__(self, "lower_params", tuple(float(b) for b in self.lower_params))
        for b in self.lower_params:
            if _is_nonpositive_integer(b):
                raise InvalidParameterError(f"lower parameter {b} is a non-positive integer, 0F{len(self.lower_params)} undefined")


@dataclass(frozen=True)
class MittagLefflerParams:
    alpha: float
    mu: float
    argument: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 2.0:
            raise InvalidParameterError(f"Mittag-Leffler step alpha={self.alpha} must lie in (0, 2]")
        if self.mu <= 0.0:
            raise InvalidParameterError(f"Mittag-Leffler second parameter mu={self.mu} must be positive")


def gamma(x: float) -> float:
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at x={x}")
    value = float(special.gamma(x))
    if not math.isfinite(value):
        raise GammaOverflowError(f"Gamma({x}) overflows double precision")
    return value


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x), taken as 0 at the poles."""
    return float(special.rgamma(x))


def pochhammer_rising(a: float, n: int) -> float:
    if n < 0:
        raise DomainError(f"rising factorial needs n >= 0, got {n}")
    return math.prod((a + i for i in range(n)), start=1.0)


def falling_factorial(a: float, n: int) -> float:
    if n < 0:
        raise DomainError(f"falling factorial needs n >= 0, got {n}")
    return math.prod((a - i for i in range(n)), start=1.0)


def hyp0fq_terms(params: HypergeometricParams, count: int) -> np.ndarray:
    """First `count` terms of the 0Fq series, by the exact term ratio."""
    b = np.asarray(params.lower_params)
    z = params.argument
    terms = np.empty(count)
    term = 1.0
    for k in range(count):
        terms[k] = term
        term *= z / ((k + 1) * np.prod(b + k))
    return terms


def hyp0fq(params: HypergeometricParams) -> float:
    b = np.asarray(params.lower_params)
    z = params.argument
    terms: List[float] = [1.0]
    term, running = 1.0, 1.0
    for k in range(MAX_TERMS):
        ratio = z / ((k + 1) * np.prod(b + k))
        term *= ratio
        terms.append(term)
        running += term
        # past the peak the terms fall monotonically, so the first small one bounds the tail
        if abs(ratio) < 0.5 and abs(term) <= SERIES_RTOL * max(abs(running), np.finfo(float).tiny):
            break
    else:
        raise SeriesDivergenceError(f"0F{len(b)} series at z={z} did not converge in {MAX_TERMS} terms")
    return math.fsum(terms)


def bessel_j(nu: float, z: float) -> float:
    return float(special.jv(nu, z))


def bessel_j_zero(nu: float, n: int) -> float:
    """n-th positive zero of J_nu: scan from nu + 1 in steps of 0.1, then Brent."""
    if n < 1:
        raise DomainError(f"zero index must be positive, got {n}")
    x = nu + 1.0
    f_prev = bessel_j(nu, x)
    found = 0
    for _ in range(BESSEL_MAX_SCAN_STEPS):
        x_next = x + BESSEL_SCAN_STEP
        f_next = bessel_j(nu, x_next)
        if f_prev == 0.0:
            found += 1
            if found == n:
                return x
        elif f_prev * f_next < 0.0:
            found += 1
            if found == n:
                return optimize.brentq(lambda t: bessel_j(nu, t), x, x_next, xtol=BESSEL_XTOL, rtol=4 * np.finfo(float).eps)
        x, f_prev = x_next, f_next
    raise SeriesDivergenceError(f"bracketing zero #{n} of J_{nu} exceeded {BESSEL_MAX_SCAN_STEPS} scan steps")


def gamma_ratio_asymptotic(z: float, a: float, b: float) -> float:
    """
    Gamma(z+a)/Gamma(z+b) ~ z^(a-b) [1 + (a-b)(a+b-1)/(2z)]; estimates only.

    Evaluated as (z + (a+b-1)/2)^(a-b): same first-order term, and the
    relative remainder is -(a-b)((a-b)^2 - 1)/(24 z^2) to leading order.
    """
    d = a - b
    if d == 0.0:
        return 1.0
    return (z + (a + b - 1.0) / 2.0) ** d


def _ml_decay_start(alpha: float, mu: float, absz: float) -> int:
    # first index from which |term_{j+1}/term_j| ~ |z| (alpha j + mu)^(-alpha) stays below 1/2
    j = 0
    while True:
        s = alpha * j + mu
        if s >= 10.0 and absz * gamma_ratio_asymptotic(s, 0.0, alpha) < 0.5:
            return j
        j += 1
        if j > MAX_TERMS:
            raise SeriesDivergenceError(f"Mittag-Leffler series at |z|={absz} has no decaying tail within {MAX_TERMS} terms")


def _ml_series_double(alpha: float, mu: float, z: float) -> float:
    absz = abs(z)
    start = _ml_decay_start(alpha, mu, absz) if absz > 0 else 0
    log_absz = math.log(absz) if absz > 0 else -math.inf
    terms: List[float] = [reciprocal_gamma(mu)]
    running = terms[0]
    for j in range(1, MAX_TERMS):
        magnitude = math.exp(j * log_absz - special.gammaln(alpha * j + mu))
        term = -magnitude if (z < 0 and j % 2) else magnitude
        terms.append(term)
        running += term
        if j >= start and magnitude <= SERIES_RTOL * max(abs(running), np.finfo(float).tiny):
            break
    else:
        raise SeriesDivergenceError(f"Mittag-Leffler series at z={z} did not converge in {MAX_TERMS} terms")
    value = math.fsum(terms)
    if not math.isfinite(value):
        raise SeriesDivergenceError(f"Mittag-Leffler E(z={z}, alpha={alpha}, mu={mu}) overflows")
    peak = max(abs(t) for t in terms)
    if peak > ML_PRECISION_BUDGET * max(abs(value), np.finfo(float).tiny):
        raise PrecisionLossError(f"Mittag-Leffler series at z={z} cancels by a factor {peak / abs(value):.2e}")
    return value


def _ml_series_extended(alpha: float, mu: float, z: float, scale: float) -> float:
    # moderate negative arguments: the same series with enough guard digits for the cancellation
    dps = 25 + int(math.ceil(scale / math.log(10.0)))
    start = _ml_decay_start(alpha, mu, abs(z))
    with mpmath.workdps(dps):
        zz = mpmath.mpf(z)
        a, m = mpmath.mpf(alpha), mpmath.mpf(mu)
        eps = mpmath.mpf(10) ** (-dps + 5)
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        for j in range(MAX_TERMS):
            term = power * mpmath.rgamma(a * j + m)
            total += term
            if j >= start and abs(term) <= eps * abs(total):
                break
            power *= zz
        else:
            raise SeriesDivergenceError(f"extended Mittag-Leffler series at z={z} did not converge in {MAX_TERMS} terms")
        return float(total)


def _ml_asymptotic(alpha: float, mu: float, z: float, scale: float) -> float:
    # residues at the poles z^(1/alpha) e^(+-i pi/alpha) plus the algebraic Hankel-cut series
    exponential = 0.0
    if alpha > 1.0:
        zeta = scale * cmath.exp(1j * math.pi / alpha)
        exponential = (2.0 / alpha) * (zeta ** (1.0 - mu) * cmath.exp(zeta)).real
    algebraic = 0.0
    previous = math.inf
    for r in range(1, MAX_TERMS):
        term = -(z ** -r) * reciprocal_gamma(mu - alpha * r)
        if term == 0.0:
            continue
        if abs(term) > previous:
            break
        algebraic += term
        previous = abs(term)
        if abs(term) <= SERIES_RTOL * 1e-3 * abs(algebraic):
            break
    return exponential + algebraic


def mittag_leffler(params: MittagLefflerParams) -> float:
    """
    E(z, mu) = sum_j z^j / Gamma(alpha j + mu)

    z >= 0, or |z| <= 10 with |z|^(1/alpha) <= 10: compensated double series.
    z < -10 otherwise: extended-precision series while |z|^(1/alpha) < 40,
    the pole-residue plus algebraic asymptotic expansion beyond.
    """
    alpha, mu, z = params.alpha, params.mu, params.argument
    if z == 0.0:
        return reciprocal_gamma(mu)
    scale = abs(z) ** (1.0 / alpha)
    if z > 0.0 or (abs(z) <= ML_SWITCH and scale <= ML_SWITCH):
        return _ml_series_double(alpha, mu, z)
    if scale < ML_ASYMPTOTIC_SCALE:
        logger.debug(f"Mittag-Leffler z={z:.4g}: extended-precision series (scale {scale:.3g})")
        return _ml_series_extended(alpha, mu, z, scale)
    logger.debug(f"Mittag-Leffler z={z:.4g}: asymptotic regime (scale {scale:.3g})")
    return _ml_asymptotic(alpha, mu, z, scale)


def mittag_leffler_value(alpha: float, mu: float, z: float) -> float:
    return mittag_leffler(MittagLefflerParams(alpha=alpha, mu=mu, argument=z))


def ml_decay_constant(alpha: float, mu: float, zs: Sequence[float]) -> float:
    """Smallest M with |E(-z, mu)| (1 + z) <= M over the sampled z >= 0."""
    return max(abs(mittag_leffler_value(alpha, mu, -z)) * (1.0 + z) for z in zs)
