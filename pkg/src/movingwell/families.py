"""Closed-form potentials and solutions for the three moving-barrier wells.

All three families live on the expanding interval (0, ell(t)) with
ell(t) = L(4t+1) (default transform constants c1=1, c2=0):

* moving box: zero interior potential, states ``moving_box_state``;
* trigonometric Poschl-Teller well, built by a first-order SUSY step on the
  moving box with the nodeless ground state as transformation function;
* biparametric confluent wells, built by a confluent (second) SUSY step that
  admits seed states with nodes and carries a deformation constant omega.

The printed closed forms evaluate products like cot * sin in algebraically
cancelled form so the walls return exact zeros instead of 0 * inf.  Every
state solves i d/dt psi + d^2/dx^2 psi - V psi = 0 with its family potential;
the numerical intertwining engine (susy module) provides the independent
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfluentConfig, WellConfig, wall_position
from .errors import (
    InvalidQuantumNumberError,
    OutsideWellError,
    RegularityViolationError,
    SeedCollisionError,
)
from .staticbox import _check_n


def _require_default_constants(cfg: WellConfig) -> None:
    # The simplified closed forms below assume c1=1, c2=0; other constants go
    # through pointtransform.lift_wavefunction.
    if cfg.c1 != 1.0 or cfg.c2 != 0.0:
        raise ValueError(
            "closed-form families are derived for c1=1, c2=0; "
            f"got c1={cfg.c1}, c2={cfg.c2}"
        )


def _grid(x, t: float, cfg: WellConfig):
    """Validate x against [0, ell(t)] and return (x array, ell, wall masks)."""
    _require_default_constants(cfg)
    l = wall_position(t, cfg)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > l):
        raise OutsideWellError(f"position outside [0, {l}] at t={t}")
    return x, l, (x == 0.0) | (x == l)


def _as_given(values, x):
    return values if np.ndim(x) else values[()]


def _phase(n: int, x, l: float, L: float):
    """exp{i (L/ell) [x^2 + (n pi / 2L)^2]}, the common gauge phase."""
    return np.exp(1j * (L / l) * (x * x + (n * np.pi / (2.0 * L)) ** 2))


def _sin_diff(z):
    """z - sin(z), evaluated by series for small z to avoid cancellation.

    The series through z^11 and the direct form both stay within a few 1e-14
    relative at the 0.35 switch point.
    """
    z = np.asarray(z, dtype=float)
    z2 = z * z
    series = (z * z2 / 6.0) * (1.0 - z2 / 20.0 * (
        1.0 - z2 / 42.0 * (1.0 - z2 / 72.0 * (1.0 - z2 / 110.0))))
    return np.where(np.abs(z) < 0.35, series, z - np.sin(z))


def check_regularity(cc: ConfluentConfig) -> None:
    """Raise unless omega + integral of |u|^2 stays away from zero on (0, ell).

    The integral sweeps (0, 1) monotonically, so the denominator has a root
    inside the well exactly when omega lies in (-1, 0).
    """
    if not cc.is_regular:
        raise RegularityViolationError(
            f"omega={cc.omega} lies in (-1, 0): the confluent denominator "
            "vanishes inside the well"
        )


def _confluent_weight(x, l: float, cc: ConfluentConfig):
    """omega + integral_0^x |u_m|^2 ds in cancellation-safe form.

    Equals omega + (z - sin z)/(2 m pi) with z = 2 m pi x / ell.  For
    omega = -1 the mirrored form about the moving wall avoids losing the
    cubic vanishing there.
    """
    two_m_pi = 2.0 * cc.m * np.pi
    if cc.omega == -1.0:
        return -_sin_diff(two_m_pi * (l - np.asarray(x)) / l) / two_m_pi
    return cc.omega + _sin_diff(two_m_pi * np.asarray(x) / l) / two_m_pi


def moving_box_potential(x, t: float, cfg: WellConfig):
    """Zero inside (0, ell(t)), infinite otherwise."""
    _require_default_constants(cfg)
    l = wall_position(t, cfg)
    x = np.asarray(x, dtype=float)
    vals = np.where((x > 0.0) & (x < l), 0.0, np.inf)
    return _as_given(vals, x)


def moving_box_state(n: int, x, t: float, cfg: WellConfig):
    """State of the expanding box: sqrt(2/ell) sin(n pi x/ell) times the gauge phase.

    Unit norm at every admissible time; exact zeros at both walls.
    """
    _check_n(n)
    x, l, at_wall = _grid(x, t, cfg)
    vals = np.sqrt(2.0 / l) * np.sin(n * np.pi * x / l) * _phase(n, x, l, cfg.L)
    vals = np.where(at_wall, 0.0 + 0.0j, vals)
    return _as_given(vals, x)


def poschl_teller_potential(x, t: float, cfg: WellConfig):
    """Trigonometric Poschl-Teller well 2 (pi/ell)^2 csc^2(pi x/ell) with moving wall."""
    _require_default_constants(cfg)
    l = wall_position(t, cfg)
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < l)
    with np.errstate(divide="ignore"):
        s = np.sin(np.pi * x / l)
        vals = np.where(inside, 2.0 * (np.pi / l) ** 2 / np.where(inside, s * s, 1.0), np.inf)
    return _as_given(vals, x)


def poschl_teller_state(n: int, x, t: float, cfg: WellConfig):
    """Solution of the moving Poschl-Teller well obtained by intertwining, n >= 2.

    The bracket cot(pi x/ell) sin(n pi x/ell) - n cos(n pi x/ell) is evaluated
    with the cotangent product cancelled against sin so both walls give exact
    zeros.  Not unit-normalized; divide by the quadrature norm for densities.
    """
    if n < 2:
        raise InvalidQuantumNumberError(
            f"the Poschl-Teller tower starts at n=2, got n={n}"
        )
    _check_n(n)
    x, l, at_wall = _grid(x, t, cfg)
    theta = np.pi * x / l
    s1 = np.sin(theta)
    safe = np.where(at_wall, 1.0, s1)
    bracket = (np.cos(theta) * np.sin(n * theta) - n * s1 * np.cos(n * theta)) / safe
    vals = (np.pi / cfg.L) * np.sqrt(2.0 / l) * bracket * _phase(n, x, l, cfg.L)
    vals = np.where(at_wall, 0.0 + 0.0j, vals)
    return _as_given(vals, x)


def confluent_well_potential(x, t: float, cfg: WellConfig, cc: ConfluentConfig):
    """Biparametric confluent partner well of the moving box.

    Rational-trigonometric inside (0, ell), infinite otherwise.  Raises
    RegularityViolationError for omega in (-1, 0), where the denominator has
    a root inside the well.
    """
    check_regularity(cc)
    _require_default_constants(cfg)
    l = wall_position(t, cfg)
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < l)
    m = cc.m
    theta = np.pi * x / l
    sm, cm = np.sin(m * theta), np.cos(m * theta)
    # denominator sin(2m theta) - (2 m pi / ell)(x + omega ell) = -2 m pi W
    den = 2.0 * m * np.pi * _confluent_weight(x, l, cc)
    with np.errstate(divide="ignore", invalid="ignore"):
        num = 32.0 * (m * np.pi / l) ** 2 * sm * (
            sm - (m * np.pi / l) * cm * (x + cc.omega * l))
        vals = np.where(inside, num / np.where(inside, den * den, 1.0), np.inf)
    return _as_given(vals, x)


def confluent_well_state(n: int, x, t: float, cfg: WellConfig, cc: ConfluentConfig):
    """Solution of the confluent well for n != m, built from two intertwinings.

    Closed form with the cot(n theta) sin(n theta) product cancelled to
    cos(n theta); exact zeros at the walls.  The coefficient of the cosine
    term is 4 m n (dimensionless), which is what the operator composition
    yields; see the numerical cross-check in the susy module.  Not
    unit-normalized.
    """
    _check_n(n)
    if n == cc.m:
        raise SeedCollisionError(
            f"n={n} collides with the seed index m={cc.m}; "
            "use confluent_missing_state for that slot"
        )
    check_regularity(cc)
    x, l, at_wall = _grid(x, t, cfg)
    m, omega = cc.m, cc.omega
    theta = np.pi * x / l
    sn, cn = np.sin(n * theta), np.cos(n * theta)
    sm = np.sin(m * theta)
    den = 2.0 * m * np.pi * _confluent_weight(x, l, cc)
    num = sn * ((m * m + n * n) * np.sin(2.0 * m * theta)
                + (2.0 * m * np.pi / l) * (m * m - n * n) * (x + omega * l)) \
        - 4.0 * m * n * cn * sm * sm
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (np.pi / cfg.L) ** 2 * np.sqrt(2.0 / l) \
            * (num / np.where(at_wall, 1.0, den)) * _phase(n, x, l, cfg.L)
    vals = np.where(at_wall, 0.0 + 0.0j, vals)
    return _as_given(vals, x)


def confluent_missing_state(x, t: float, cfg: WellConfig, cc: ConfluentConfig):
    """The extra confluent solution u_m / (omega + integral |u_m|^2).

    Square integrable (norm^2 = 1/(omega (omega+1))) with zero wall limits
    exactly when omega is not -1 or 0.  For omega = 0 the limit diverges at
    the fixed wall, for omega = -1 at the moving wall; those two endpoint
    samples report infinity.
    """
    check_regularity(cc)
    x, l, at_wall = _grid(x, t, cfg)
    m = cc.m
    weight = _confluent_weight(x, l, cc)
    envelope = np.sqrt(2.0 / l) * np.sin(m * np.pi * x / l)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (envelope / np.where(at_wall, 1.0, weight)) * _phase(m, x, l, cfg.L)
    vals = np.where(at_wall, 0.0 + 0.0j, vals)
    if not cc.missing_state_normalizable:
        divergent = at_wall & ((x == 0.0) if cc.omega == 0.0 else (x == l))
        vals = np.where(divergent, complex(np.inf, 0.0), vals)
    return _as_given(vals, x)


def instantaneous_energy(n: int, t: float, cfg: WellConfig) -> float:
    """(n pi / ell(t))^2: the static eigenvalue rescaled to the current width."""
    _check_n(n)
    _require_default_constants(cfg)
    return (n * np.pi / wall_position(t, cfg)) ** 2


def wall_motion_energy_shift(n: int, cfg: WellConfig) -> float:
    """Time-independent kinetic-energy excess of a moving-box state.

    The expectation of -d^2/dx^2 in moving_box_state exceeds the instantaneous
    eigenvalue by 4 L^2 (1/3 - 1/(2 n^2 pi^2)): the quadratic gauge phase adds
    the kinetic energy of the flow that stretches the state with the wall.
    """
    _check_n(n)
    return 4.0 * cfg.L**2 * (1.0 / 3.0 - 1.0 / (2.0 * n * n * np.pi * np.pi))


@dataclass(frozen=True)
class Family:
    """Identifier for one of the three solvable families."""

    kind: str  # "box" | "pt" | "confluent"
    confluent: ConfluentConfig | None = None

    _KINDS = ("box", "pt", "confluent")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {self._KINDS}")
        if self.kind == "confluent" and self.confluent is None:
            raise ValueError("the confluent family needs a ConfluentConfig")
        if self.kind != "confluent" and self.confluent is not None:
            raise ValueError(f"family {self.kind!r} does not take a ConfluentConfig")

    @classmethod
    def box(cls) -> "Family":
        return cls("box")

    @classmethod
    def poschl_teller(cls) -> "Family":
        return cls("pt")

    @classmethod
    def confluent_family(cls, cc: ConfluentConfig) -> "Family":
        return cls("confluent", cc)

    def potential(self, cfg: WellConfig):
        """Callable (x, t) -> potential values for this family."""
        if self.kind == "box":
            return lambda x, t: moving_box_potential(x, t, cfg)
        if self.kind == "pt":
            return lambda x, t: poschl_teller_potential(x, t, cfg)
        cc = self.confluent
        return lambda x, t: confluent_well_potential(x, t, cfg, cc)

    def state(self, selector, cfg: WellConfig):
        """Callable (x, t) -> state values; selector is an index or "eps"."""
        self.validate_selector(selector)
        if selector == "eps":
            cc = self.confluent
            return lambda x, t: confluent_missing_state(x, t, cfg, cc)
        n = int(selector)
        if self.kind == "box":
            return lambda x, t: moving_box_state(n, x, t, cfg)
        if self.kind == "pt":
            return lambda x, t: poschl_teller_state(n, x, t, cfg)
        cc = self.confluent
        return lambda x, t: confluent_well_state(n, x, t, cfg, cc)

    def validate_selector(self, selector) -> None:
        if selector == "eps":
            if self.kind != "confluent":
                raise InvalidQuantumNumberError(
                    "the missing-state selector 'eps' exists only for the confluent family"
                )
            return
        n = int(selector)
        if n < 1:
            raise InvalidQuantumNumberError(f"state index must be >= 1, got {n}")
        if self.kind == "pt" and n < 2:
            raise InvalidQuantumNumberError("the Poschl-Teller tower starts at n=2")
        if self.kind == "confluent" and n == self.confluent.m:
            raise SeedCollisionError(
                f"n={n} is the seed slot of the confluent family; use 'eps'"
            )

    @property
    def label(self) -> str:
        if self.kind == "confluent":
            return f"confluent(m={self.confluent.m}, omega={self.confluent.omega})"
        return {"box": "moving box", "pt": "poschl-teller"}[self.kind]
