"""Deterministic Rayleigh-fading channel draws.

Gains are squared magnitudes of unit-variance circularly symmetric complex
Gaussian coefficients, i.e. independent exponential variates with mean 1,
returned sorted ascending. Reported absolute rates are therefore tied to
this unit-mean normalization.

Streams are counter based: the 64-bit seed keys a Philox generator and the
(sweep point, trial) labels select disjoint counter blocks, so any trial
can be regenerated on its own and results do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ChannelGains, ValidationError

_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class SeedSpec:
    """Root seed plus the (sweep point, trial) stream label."""

    seed: int
    point: int = 0
    trial: int = 0

    def __post_init__(self):
        for name in ("seed", "point", "trial"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)):
                raise ValidationError(f"{name} must be an integer, got {value!r}")
            if not 0 <= int(value) <= _UINT64_MAX:
                raise ValidationError(f"{name} must fit in an unsigned 64-bit integer")
            object.__setattr__(self, name, int(value))


def sample_rayleigh_gains(m: int, spec: SeedSpec) -> ChannelGains:
    """Draw m sorted unit-mean exponential gains from the stream of `spec`."""
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ValidationError(f"m must be an integer >= 2, got {m!r}")
    bit_gen = np.random.Philox(key=spec.seed, counter=[0, 0, spec.point, spec.trial])
    rng = np.random.Generator(bit_gen)
    return ChannelGains(np.sort(rng.standard_exponential(int(m))))
