"""Rate model for uplink power-domain NOMA with a shared power budget.

Index convention used throughout: user 1 is the weakest user, gains are
sorted ascending, and every per-user vector is ordered weakest first.
The receiver applies successive interference cancellation decoding the
strongest user first, so user i sees residual interference only from the
weaker users j < i and the weakest user is decoded interference free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LN2 = math.log(2.0)

# |sum(alphas) - 1| tolerance for a valid allocation of the shared budget
SUM_TO_ONE_TOL = 1e-12

# consistency tolerance between a reported sum rate and the sum of rates
RATE_SUM_REL_TOL = 1e-9


class ValidationError(ValueError):
    """An argument violates a documented model invariant."""


class DimensionError(ValidationError):
    """Vector arguments disagree in length."""


def log2_1p(y):
    """log2(1 + y), elementwise, accurate for small y."""
    return np.log1p(y) / LN2


@dataclass(frozen=True)
class TransmitSnr:
    """Transmit SNR rho in linear scale (transmit power over noise power)."""

    rho: float

    def __post_init__(self):
        if not (isinstance(self.rho, (int, float)) and math.isfinite(self.rho)):
            raise ValidationError(f"rho must be a finite number, got {self.rho!r}")
        if self.rho <= 0.0:
            raise ValidationError(f"rho must be positive, got {self.rho!r}")

    @classmethod
    def from_db(cls, snr_db: float) -> "TransmitSnr":
        return cls(10.0 ** (float(snr_db) / 10.0))


@dataclass(frozen=True, eq=False)
class ChannelGains:
    """Squared channel magnitudes |h_i|^2, sorted ascending (weakest first)."""

    gains: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gains, dtype=float)
        if g.ndim != 1 or g.size < 2:
            raise ValidationError("gains must be a 1-d vector of length >= 2")
        if not np.all(np.isfinite(g)):
            raise ValidationError("gains must be finite")
        if np.any(g <= 0.0):
            raise ValidationError("gains must be strictly positive")
        if np.any(np.diff(g) < 0.0):
            raise ValidationError("gains must be sorted ascending (user 1 weakest)")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "gains", g)

    @property
    def m(self) -> int:
        return int(self.gains.size)


@dataclass(frozen=True, eq=False)
class PowerAllocation:
    """Power fractions alpha_i of the shared budget, weakest user first."""

    alphas: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alphas, dtype=float)
        if a.ndim != 1 or a.size < 2:
            raise ValidationError("alphas must be a 1-d vector of length >= 2")
        if not np.all(np.isfinite(a)):
            raise ValidationError("alphas must be finite")
        if np.any(a <= 0.0) or np.any(a >= 1.0):
            raise ValidationError("each alpha must lie strictly inside (0, 1)")
        total = float(a.sum())
        if abs(total - 1.0) > SUM_TO_ONE_TOL:
            raise ValidationError(
                f"alphas must sum to 1 within {SUM_TO_ONE_TOL:g}, got sum {total!r}"
            )
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "alphas", a)

    @property
    def m(self) -> int:
        return int(self.alphas.size)


@dataclass(frozen=True, eq=False)
class RateReport:
    """Per-user NOMA and OMA rates (bits/s/Hz) with their sums."""

    noma_rates: np.ndarray
    oma_rates: np.ndarray
    noma_sum: float
    oma_sum: float

    def __post_init__(self):
        rn = np.asarray(self.noma_rates, dtype=float)
        ro = np.asarray(self.oma_rates, dtype=float)
        if rn.ndim != 1 or ro.ndim != 1 or rn.size != ro.size:
            raise DimensionError("rate vectors must be 1-d and equal length")
        if not (np.all(np.isfinite(rn)) and np.all(np.isfinite(ro))):
            raise ValidationError("rates must be finite")
        if np.any(rn < 0.0) or np.any(ro < 0.0):
            raise ValidationError("rates must be nonnegative")
        for label, vec, total in (("noma", rn, self.noma_sum), ("oma", ro, self.oma_sum)):
            if abs(total - float(vec.sum())) > RATE_SUM_REL_TOL * (1.0 + abs(total)):
                raise ValidationError(f"{label}_sum is inconsistent with its rate vector")
        rn = rn.copy()
        ro = ro.copy()
        rn.setflags(write=False)
        ro.setflags(write=False)
        object.__setattr__(self, "noma_rates", rn)
        object.__setattr__(self, "oma_rates", ro)


def _require_same_length(gains: ChannelGains, alloc: PowerAllocation) -> None:
    if gains.m != alloc.m:
        raise DimensionError(f"{gains.m} gains but {alloc.m} power fractions")


def noma_rates(gains: ChannelGains, alloc: PowerAllocation, snr: TransmitSnr) -> np.ndarray:
    """Per-user uplink NOMA rates under ascending-gain SIC.

    User i receives log2(1 + rho*a_i*g_i / (1 + sum_{j<i} rho*a_j*g_j)):
    the strongest user is decoded first against all weaker signals, the
    weakest user last with no residual interference.
    """
    _require_same_length(gains, alloc)
    sig = snr.rho * alloc.alphas * gains.gains
    interference = np.concatenate(([0.0], np.cumsum(sig[:-1])))
    return log2_1p(sig / (1.0 + interference))


def oma_rates(gains: ChannelGains, snr: TransmitSnr) -> np.ndarray:
    """Orthogonal baseline: each of the M users gets a 1/M resource share."""
    return log2_1p(snr.rho * gains.gains) / gains.m


def noma_sum_rate(gains: ChannelGains, alloc: PowerAllocation, snr: TransmitSnr) -> float:
    """NOMA sum rate log2(1 + sum_i rho*a_i*g_i).

    Equals the sum of `noma_rates` by the telescoping of the SIC chain.
    """
    _require_same_length(gains, alloc)
    return float(log2_1p(snr.rho * float(alloc.alphas @ gains.gains)))
