"""Numerical intertwining engine for time dependent SUSY transformations.

Everything here works on callables (x, t) -> complex and finite differences;
no closed form of a transformed family is used anywhere.  That makes this
module the independent oracle against which the printed closed forms in
``families`` are validated:

* a first-order intertwiner  A(t) (-d/dx + w_x / w)  maps solutions across
  partner potentials;
* the partner potential is V0 - d^2/dx^2 ln|u|^2;
* the confluent step reuses the same seed u through
  v = (omega + integral_0^x |u|^2 ds) / (A(t) conj(u)), which tolerates nodes
  of u as long as the integral term stays away from -omega.

Differentiation uses 6th-order stencils for first derivatives and 4th-order
for the noise-sensitive second log-derivatives; steps scale with the current
well width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConfluentConfig, WellConfig, wall_position
from .errors import (
    NearNodeError,
    RealityViolationError,
    RegularityViolationError,
)
from .numerics import D1_O4, D1_O6, D2_O4, D3_O4, gauss_legendre_nodes

NODE_TOL = 1e-10


def standard_gauge(t: float) -> float:
    """A(t) = 4t + 1, the gauge magnitude of the default-constants families.

    Matches gauge_magnitude(u, t, t_ref) * (4 t_ref + 1) for any seed state of
    the moving box; the reference-time constant is fixed by this choice.
    """
    return 4.0 * t + 1.0


@dataclass(frozen=True)
class TransformationFunction:
    """A seed solution u(x, t) of the starting equation, with its well geometry."""

    u: object  # callable (x, t) -> complex, vectorized in x
    cfg: WellConfig
    label: str = "u"

    def __call__(self, x, t):
        return self.u(x, t)


def _log_samples(u, xs, t):
    """log u at the sample points with the phase unwrapped along the stencil."""
    vals = np.asarray(u(xs, t), dtype=complex)
    mags = np.abs(vals)
    if np.any(mags < NODE_TOL):
        raise NearNodeError(
            f"|u| dropped below {NODE_TOL} on a stencil at t={t}"
        )
    return np.log(mags) + 1j * np.unwrap(np.angle(vals))


def _second_log_derivative(u, x: float, t: float, h: float):
    """d^2/dx^2 ln u by a 4th-order stencil on branch-continuous samples."""
    xs = x + h * np.arange(-2, 3)
    return np.dot(D2_O4, _log_samples(u, xs, t)) / (h * h)


def _shift_off_nodes(u, x: float, t: float, h: float, span: int, shift: float):
    """Nudge a probe until the whole stencil stays clear of nodes of u.

    A node between two samples flips the sign of the envelope, i.e. the
    wrapped phase jumps by about pi there even though no sampled magnitude
    need be small, so the detector looks at adjacent phase increments as well
    as at the absolute magnitudes.
    """
    for _ in range(6):
        xs = x + h * np.arange(-span, span + 1)
        vals = np.asarray(u(xs, t))
        increments = np.angle(vals[1:] * np.conj(vals[:-1]))
        if np.min(np.abs(vals)) >= NODE_TOL and np.max(np.abs(increments)) < 1.0:
            return x
        x += shift
    raise NearNodeError(f"could not find a node-free probe near x={x} at t={t}")


def gauge_magnitude(u: TransformationFunction, t: float, t_ref: float,
                    step_frac: float = 1e-3, time_step: float = 1e-3,
                    spread_tol: float = 1e-6) -> float:
    """|A| = exp{2 integral_{t_ref}^{t} Im[d^2/dx^2 ln u] dt'}.

    The spatial second log-derivative is evaluated at a mid-well probe (moved
    off nodes if needed) and must be x-independent: three probes are compared
    and a spread beyond ``spread_tol`` raises RealityViolationError.  The time
    integral uses composite Simpson with step ``time_step``.
    """
    cfg = u.cfg
    cfg.check_time(t)
    cfg.check_time(t_ref)
    if t == t_ref:
        return 1.0

    def integrand(tp: float) -> float:
        l = wall_position(tp, cfg)
        h = step_frac * l
        imag_parts = []
        for frac in (0.5, 0.38, 0.64):
            xp = _shift_off_nodes(u, frac * l, tp, h, 2, 0.0137 * l)
            imag_parts.append(_second_log_derivative(u, xp, tp, h).imag)
        spread = max(imag_parts) - min(imag_parts)
        if spread > spread_tol:
            raise RealityViolationError(
                f"Im[d2 ln u] varies across probes by {spread:.3e} at t={tp}; "
                "the reality condition fails"
            )
        return imag_parts[0]

    a, b = (t_ref, t) if t_ref < t else (t, t_ref)
    n = max(2, 2 * math.ceil((b - a) / (2.0 * time_step)))
    ts = np.linspace(a, b, n + 1)
    vals = np.array([integrand(tp) for tp in ts])
    hsimp = (b - a) / n
    integral = hsimp / 3.0 * (vals[0] + vals[-1]
                              + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-1:2].sum())
    if t < t_ref:
        integral = -integral
    return float(np.exp(2.0 * integral))


@dataclass(frozen=True)
class Intertwiner:
    """First-order operator A(t) (-d/dx + w_x / w) acting on callables.

    ``source`` is the function whose logarithmic derivative enters; for the
    first SUSY step that is the seed u, for the confluent step the function v.
    ``step_frac`` scales the 6th-order differentiation step with the well
    width (larger default for the confluent step, whose source is itself
    quadrature-defined).
    """

    gauge: object  # callable t -> A(t)
    source: object  # callable (x, t) -> complex
    cfg: WellConfig
    step_frac: float = 1e-4
    label: str = "L"

    def apply(self, psi, x: float, t: float) -> complex:
        """A(t) (-psi_x + (w_x / w) psi) at (x, t), derivatives by 6th order."""
        self.cfg.check_time(t)
        h = self.step_frac * wall_position(t, self.cfg)
        w0 = complex(self.source(x, t))
        if abs(w0) < NODE_TOL:
            raise NearNodeError(
                f"source {self.label} has |w|={abs(w0):.2e} at x={x}, t={t}"
            )
        offs = range(-3, 4)
        dpsi = sum(c * complex(psi(x + k * h, t)) for c, k in zip(D1_O6, offs) if c) / h
        dw = sum(c * complex(self.source(x + k * h, t)) for c, k in zip(D1_O6, offs) if c) / h
        return self.gauge(t) * (-dpsi + (dw / w0) * complex(psi(x, t)))


def first_order_intertwiner(u: TransformationFunction, gauge=standard_gauge,
                            step_frac: float = 1e-4) -> Intertwiner:
    """The operator of the first SUSY step, built directly on the seed u."""
    return Intertwiner(gauge=gauge, source=u.u, cfg=u.cfg,
                       step_frac=step_frac, label=f"L1[{u.label}]")


def partner_potential(V0, u: TransformationFunction, x: float, t: float,
                      step_frac: float = 2e-4) -> float:
    """V0(x, t) - d^2/dx^2 ln|u|^2, the first SUSY partner, by 4th-order stencil."""
    u.cfg.check_time(t)
    h = step_frac * wall_position(t, u.cfg)
    xs = x + h * np.arange(-2, 3)
    vals = np.abs(np.asarray(u(xs, t)))
    if np.any(vals < NODE_TOL):
        raise NearNodeError(f"|u| below {NODE_TOL} on the stencil at x={x}, t={t}")
    d2 = np.dot(D2_O4, 2.0 * np.log(vals)) / (h * h)
    return float(V0(x, t)) - float(d2)


def missing_state_first_order(u: TransformationFunction, gauge, x: float,
                              t: float) -> complex:
    """1/(A(t) conj(u)), the partner-equation solution the intertwiner misses."""
    u.cfg.check_time(t)
    val = complex(u(x, t))
    if abs(val) < NODE_TOL:
        raise NearNodeError(f"|u|={abs(val):.2e} at x={x}, t={t}")
    return 1.0 / (gauge(t) * np.conj(val))


def integrated_density(u: TransformationFunction, x: float, t: float,
                       panels: int = 32, nodes: int = 10) -> float:
    """integral_0^x |u(s, t)|^2 ds by fixed composite Gauss-Legendre.

    The fixed panel count keeps the map x -> integral smooth, so stacking a
    finite-difference derivative on top of it stays clean.
    """
    if x == 0.0:
        return 0.0
    xs, ws = gauss_legendre_nodes(0.0, x, panels, nodes)
    vals = np.abs(np.asarray(u(xs, t)))
    return float(np.dot(ws, vals * vals))


def confluent_solution(u: TransformationFunction, cc: ConfluentConfig, gauge,
                       x: float, t: float) -> complex:
    """v = (omega + integral_0^x |u|^2 ds) / (A(t) conj(u)).

    Regular wherever the numerator stays away from zero; at a node of u the
    value is large but the construction downstream remains finite, so only a
    simultaneous near-zero of numerator and u raises NearNodeError.
    """
    u.cfg.check_time(t)
    weight = cc.omega + integrated_density(u, x, t)
    uval = complex(u(x, t))
    if abs(uval) < NODE_TOL and abs(weight) < NODE_TOL:
        raise NearNodeError(
            f"both |u| and the confluent weight vanish near x={x}, t={t}"
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        return complex(weight / (gauge(t) * np.conj(uval)))


def confluent_partner_potential(V0, u: TransformationFunction,
                                cc: ConfluentConfig, x: float, t: float,
                                step_frac: float = 2e-4) -> float:
    """V0 - 2 d^2/dx^2 ln(omega + integral_0^x |u|^2 ds).

    The first derivative of the integral is |u(x, t)|^2 analytically, so only
    one numeric differentiation (4th order, of |u|^2 / weight) is stacked on
    the quadrature.

    The weight omega + integral is nondecreasing in x, so it vanishes inside
    the well exactly when its endpoint values have opposite signs; that global
    gate is checked up front (zeros exactly at a wall are admissible).
    """
    u.cfg.check_time(t)
    l = wall_position(t, u.cfg)
    total = integrated_density(u, l, t)
    endpoint_product = cc.omega * (cc.omega + total)
    if endpoint_product < 0.0 and min(abs(cc.omega), abs(cc.omega + total)) > 1e-9:
        raise RegularityViolationError(
            f"confluent weight changes sign across the well for omega={cc.omega}"
        )
    h = step_frac * l

    def ratio(s: float) -> float:
        weight = cc.omega + integrated_density(u, s, t)
        if abs(weight) < NODE_TOL:
            raise RegularityViolationError(
                f"confluent weight {weight:.2e} at x={s}, t={t}: "
                "inadmissible omega"
            )
        return abs(complex(u(s, t))) ** 2 / weight

    d_ratio = sum(c * ratio(x + k * h)
                  for c, k in zip(D1_O4, range(-2, 3)) if c) / h
    return float(V0(x, t)) - 2.0 * d_ratio


def confluent_intertwiner(u: TransformationFunction, cc: ConfluentConfig,
                          gauge=standard_gauge,
                          step_frac: float = 2e-3) -> Intertwiner:
    """The operator of the confluent step, with v as its source.

    The default differentiation step is coarser than for the first step: the
    source is quadrature-defined and the operand is typically itself a stencil
    result, so a larger step keeps noise amplification in check.
    """
    def v(x, t):
        if np.ndim(x):
            return np.array([confluent_solution(u, cc, gauge, xi, t) for xi in x])
        return confluent_solution(u, cc, gauge, x, t)

    return Intertwiner(gauge=gauge, source=v, cfg=u.cfg,
                       step_frac=step_frac, label=f"L2[{u.label}]")


def reality_defect(u: TransformationFunction, t: float,
                   step_frac: float = 1e-2, probe_fracs=None) -> float:
    """max over probes of |d^3/dx^3 ln(u / conj(u))| by 4th-order differences.

    Zero (to stencil accuracy) is the condition for the SUSY partner potential
    to come out real.  Probes are shifted off nodes of u automatically.
    """
    cfg = u.cfg
    cfg.check_time(t)
    l = wall_position(t, cfg)
    h = step_frac * l
    if probe_fracs is None:
        probe_fracs = (0.21, 0.37, 0.52, 0.68, 0.81)
    worst = 0.0
    for frac in probe_fracs:
        # the shift must clear the whole stencil footprint in one or two hops
        xp = _shift_off_nodes(u.u, frac * l, t, h, 3, 4.5 * h)
        xs = xp + h * np.arange(-3, 4)
        vals = np.asarray(u(xs, t), dtype=complex)
        phase = np.unwrap(np.angle(vals))
        d3 = np.dot(D3_O4, 2.0 * phase) / h**3
        worst = max(worst, abs(d3))
    return worst
