"""Shared domain types and physical conventions.

Everything in this package works in units where the particle mass is 1/2 and
hbar is 1, so the time dependent Schroedinger equation reads

    i d/dt psi + d^2/dx^2 psi - V psi = 0.

The well geometry is a fixed barrier at ``c2/2`` and a barrier moving with
constant velocity ``4 L``, ``ell(t) = 4 L t + c1 L + c2 / 2``.  The instant
``t0 = -c1/4`` (zero-width well) is singular and separates an expanding
branch (t > t0) from a contracting one (t < t0).

All types here are frozen values: safe to share and pass between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    GridMismatchError,
    InadmissibleTimeError,
    SingularTimeError,
)

# A wavefunction value at a space-time point; plain Python/NumPy complex.
ComplexAmplitude = complex

# Guard band around the singular time: times this close to t0 are rejected
# because ell(t) below machine-meaningful size breaks every formula downstream.
SINGULAR_TIME_BAND = 1e-9


class Branch(Enum):
    EXPANDING = "expanding"
    CONTRACTING = "contracting"


@dataclass(frozen=True)
class WellConfig:
    """Geometry of the moving well: static length L and transform constants c1, c2.

    Defaults (c1=1, c2=0, expanding) put the fixed barrier at x=0, the moving
    barrier at L when t=0, and the singular time at t0=-1/4.
    """

    L: float = 1.0
    c1: float = 1.0
    c2: float = 0.0
    branch: Branch = Branch.EXPANDING

    def __post_init__(self):
        if not (self.L > 0):
            raise ValueError(f"box length L must be positive, got {self.L}")

    @property
    def singular_time(self) -> float:
        return -self.c1 / 4.0

    def check_time(self, t: float) -> None:
        """Reject the singular instant (with guard band) and the wrong branch."""
        t0 = self.singular_time
        if abs(t - t0) <= SINGULAR_TIME_BAND:
            raise SingularTimeError(
                f"t={t} is within the guard band of the singular time t0={t0}"
            )
        if self.branch is Branch.EXPANDING and t < t0:
            raise InadmissibleTimeError(
                f"t={t} lies on the contracting side of t0={t0}"
            )
        if self.branch is Branch.CONTRACTING and t > t0:
            raise InadmissibleTimeError(
                f"t={t} lies on the expanding side of t0={t0}"
            )


@dataclass(frozen=True)
class ConfluentConfig:
    """Parameters of the confluent (biparametric) well family.

    ``m`` is the seed-state index, ``omega`` the deformation constant.  The
    family is regular on the open well only for omega <= -1 or omega >= 0;
    construction does not reject other values so the regularity gate can be
    exercised, evaluation raises RegularityViolationError for them.  The lower
    quadrature limit is pinned to x0 = 0.
    """

    m: int = 2
    omega: float = 0.4
    x0: float = 0.0

    def __post_init__(self):
        if self.m < 1 or int(self.m) != self.m:
            raise ValueError(f"seed index m must be a positive integer, got {self.m}")
        if not math.isfinite(self.omega):
            raise ValueError(f"omega must be finite, got {self.omega}")
        if self.x0 != 0.0:
            raise ValueError("the lower quadrature limit x0 is fixed to 0")

    @property
    def is_regular(self) -> bool:
        """True when the confluent denominator cannot vanish inside the well."""
        return self.omega <= -1.0 or self.omega >= 0.0

    @property
    def missing_state_normalizable(self) -> bool:
        """The missing state is square integrable exactly when omega is not -1 or 0."""
        return self.omega != -1.0 and self.omega != 0.0


@dataclass(frozen=True)
class SpaceTimePoint:
    x: float
    t: float


def wall_position(t: float, cfg: WellConfig) -> float:
    """Position ell(t) = 4Lt + c1*L + c2/2 of the moving barrier."""
    cfg.check_time(t)
    return 4.0 * cfg.L * t + cfg.c1 * cfg.L + cfg.c2 / 2.0


def fixed_wall_position(cfg: WellConfig) -> float:
    """Position c2/2 of the static barrier."""
    return cfg.c2 / 2.0


def well_width(t: float, cfg: WellConfig) -> float:
    """Width ell(t) - c2/2 = 4L(t - t0); strictly positive on the expanding branch."""
    return wall_position(t, cfg) - fixed_wall_position(cfg)


def is_inside_well(x, t: float, cfg: WellConfig):
    """Elementwise test for the open interval (fixed wall, moving wall)."""
    lo = fixed_wall_position(cfg)
    hi = wall_position(t, cfg)
    return np.logical_and(np.asarray(x) > lo, np.asarray(x) < hi)


@dataclass(frozen=True)
class SampledField:
    """A complex field sampled on a uniform spatial grid at a fixed time."""

    t: float
    x_min: float
    x_max: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (self.x_min < self.x_max):
            raise ValueError("x_min must be less than x_max")
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("values must be a 1-d sequence of at least 2 samples")
        object.__setattr__(self, "values", vals)

    @property
    def n_points(self) -> int:
        return self.values.size

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def same_grid(self, other: "SampledField") -> bool:
        return (
            self.n_points == other.n_points
            and self.x_min == other.x_min
            and self.x_max == other.x_max
        )

    def require_same_grid(self, other: "SampledField") -> None:
        if not self.same_grid(other):
            raise GridMismatchError(
                f"grids differ: ({self.x_min}, {self.x_max}, {self.n_points}) vs "
                f"({other.x_min}, {other.x_max}, {other.n_points})"
            )
