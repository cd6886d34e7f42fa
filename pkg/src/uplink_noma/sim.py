"""Seeded Monte Carlo sweeps comparing NOMA against orthogonal access.

Each sweep averages ergodic rates over Rayleigh fading: rates are computed
per draw and then averaged, never the other way around. Trials are
independent, and because every draw comes from its own (seed, point, trial)
stream the averages are reproducible bit for bit regardless of execution
order or batching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import TransmitSnr, ValidationError, log2_1p
from .allocation import m_user_shares, weak_user_share
from .channel import SeedSpec, sample_rayleigh_gains

MODES = ("two-user-rates", "two-user-sum", "four-user-cases", "m-user-group")

DEFAULT_SNR_DB = tuple(float(db) for db in range(-10, 31, 5))
DEFAULT_TRIALS = 10_000
DEFAULT_SEED = 42
DEFAULT_GROUP_SIZE = 12

# column names per mode, means first, matching CLI output order
SERIES_BY_MODE = {
    "two-user-rates": ("R1_noma", "R2_noma", "R1_oma", "R2_oma"),
    "two-user-sum": ("sum_noma", "sum_oma"),
    "four-user-cases": ("case1", "case2", "case3"),
    "m-user-group": ("sum_noma", "sum_oma"),
}


@dataclass(frozen=True, eq=False)
class SweepConfig:
    """One sweep: mode, group size, SNR grid in dB, trial count, seed."""

    mode: str
    users: int
    snr_db: tuple = DEFAULT_SNR_DB
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not (isinstance(self.users, (int, np.integer)) and self.users >= 2):
            raise ValidationError(f"users must be an integer >= 2, got {self.users!r}")
        if self.mode.startswith("two-user") and self.users != 2:
            raise ValidationError(f"{self.mode} requires users=2, got {self.users}")
        if self.mode == "four-user-cases" and self.users != 4:
            raise ValidationError(f"{self.mode} requires users=4, got {self.users}")
        if not (isinstance(self.trials, (int, np.integer)) and self.trials >= 1):
            raise ValidationError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not (isinstance(self.seed, (int, np.integer)) and 0 <= self.seed < 2**64):
            raise ValidationError("seed must fit in an unsigned 64-bit integer")
        grid = np.asarray(self.snr_db, dtype=float)
        if grid.ndim != 1 or grid.size == 0 or not np.all(np.isfinite(grid)):
            raise ValidationError("snr_db must be a nonempty finite 1-d grid")
        if np.any(np.diff(grid) <= 0.0):
            raise ValidationError("snr_db grid must be strictly ascending")
        object.__setattr__(self, "users", int(self.users))
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "snr_db", tuple(float(v) for v in grid))


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Averaged series over the SNR grid with per-point standard errors."""

    mode: str
    users: int
    snr_db: np.ndarray
    series: dict
    stderr: dict
    trials: int
    seed: int

    def __post_init__(self):
        grid = np.asarray(self.snr_db, dtype=float)
        grid.setflags(write=False)
        object.__setattr__(self, "snr_db", grid)
        for name, table in (("series", self.series), ("stderr", self.stderr)):
            for key, values in table.items():
                arr = np.asarray(values, dtype=float)
                if arr.shape != grid.shape:
                    raise ValidationError(f"{name}[{key!r}] must have one value per point")
                if not np.all(np.isfinite(arr)):
                    raise ValidationError(f"{name}[{key!r}] must be finite")
                if np.any(arr < 0.0):
                    raise ValidationError(f"{name}[{key!r}] must be nonnegative")
                arr.setflags(write=False)
                table[key] = arr
        if set(self.series) != set(self.stderr):
            raise ValidationError("series and stderr must report the same columns")


def _gain_matrix(m: int, trials: int, seed: int, point: int) -> np.ndarray:
    """Stack per-trial sorted gain draws into a (trials, m) matrix."""
    rows = np.empty((trials, m))
    for trial in range(trials):
        rows[trial] = sample_rayleigh_gains(m, SeedSpec(seed, point, trial)).gains
    return rows


def _mean_and_stderr(samples: np.ndarray) -> tuple:
    mean = float(samples.mean())
    if samples.size < 2:
        return mean, 0.0
    return mean, float(samples.std(ddof=1) / math.sqrt(samples.size))


def _pair_group_sum(rho: float, g_weak: np.ndarray, g_strong: np.ndarray) -> np.ndarray:
    """NOMA sum rate of optimally loaded (weak, strong) pairs, elementwise."""
    w = weak_user_share(rho * g_weak)
    return log2_1p(rho * (w * g_weak + (1.0 - w) * g_strong))


def _collect(config: SweepConfig, per_point) -> SweepResult:
    names = SERIES_BY_MODE[config.mode]
    series = {name: np.empty(len(config.snr_db)) for name in names}
    stderr = {name: np.empty(len(config.snr_db)) for name in names}
    for point, snr_db in enumerate(config.snr_db):
        rho = TransmitSnr.from_db(snr_db).rho
        gains = _gain_matrix(config.users, config.trials, config.seed, point)
        for name, samples in zip(names, per_point(rho, gains)):
            series[name][point], stderr[name][point] = _mean_and_stderr(samples)
    return SweepResult(
        mode=config.mode,
        users=config.users,
        snr_db=np.asarray(config.snr_db),
        series=series,
        stderr=stderr,
        trials=config.trials,
        seed=config.seed,
    )


def sweep_two_user(config: SweepConfig) -> SweepResult:
    """Two-user sweep, either per-user rates or sum rates."""
    if config.mode not in ("two-user-rates", "two-user-sum"):
        raise ValidationError(f"sweep_two_user cannot run mode {config.mode!r}")

    def per_point(rho, gains):
        g1, g2 = gains[:, 0], gains[:, 1]
        x = rho * g1
        w = weak_user_share(x)
        if config.mode == "two-user-rates":
            r1 = log2_1p(x * w)
            r2 = log2_1p(rho * (1.0 - w) * g2 / (1.0 + x * w))
            return r1, r2, 0.5 * log2_1p(rho * g1), 0.5 * log2_1p(rho * g2)
        noma = _pair_group_sum(rho, g1, g2)
        oma = 0.5 * (log2_1p(rho * g1) + log2_1p(rho * g2))
        return noma, oma

    return _collect(config, per_point)


def sweep_four_user_cases(config: SweepConfig) -> SweepResult:
    """Sum rates of the three four-user pairings over the grid."""
    if config.mode != "four-user-cases":
        raise ValidationError(f"sweep_four_user_cases cannot run mode {config.mode!r}")

    def per_point(rho, gains):
        g1, g2, g3, g4 = (gains[:, i] for i in range(4))
        case1 = _pair_group_sum(rho, g1, g2) + _pair_group_sum(rho, g3, g4)
        case2 = _pair_group_sum(rho, g1, g3) + _pair_group_sum(rho, g2, g4)
        case3 = _pair_group_sum(rho, g1, g4) + _pair_group_sum(rho, g2, g3)
        return case1, case2, case3

    return _collect(config, per_point)


def sweep_m_user(config: SweepConfig) -> SweepResult:
    """Single M-user NOMA group against the 1/M orthogonal baseline."""
    if config.mode != "m-user-group":
        raise ValidationError(f"sweep_m_user cannot run mode {config.mode!r}")

    def per_point(rho, gains):
        shares = m_user_shares(rho * gains[:, 0], config.users)
        noma = log2_1p(rho * np.sum(shares * gains, axis=1))
        oma = np.sum(log2_1p(rho * gains), axis=1) / config.users
        return noma, oma

    return _collect(config, per_point)


def run_sweep(config: SweepConfig) -> SweepResult:
    """Dispatch a sweep by its mode."""
    if config.mode == "four-user-cases":
        return sweep_four_user_cases(config)
    if config.mode == "m-user-group":
        return sweep_m_user(config)
    return sweep_two_user(config)
