"""Quadrature and finite-difference verification of closed-form claims.

Residuals of the time dependent Schroedinger equation, norms, overlaps,
energy expectations and convergence studies, all fully numerical: the checks
depend on the closed forms only through the callables handed to them.  Each
check carries an explicit tolerance inside a serializable report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import WellConfig, wall_position
from .errors import NonMonotoneResidualsError, StencilOutOfDomainError
from .numerics import D1_O4, D2_O6, integrate_gl


def tdse_residual(psi, V, x: float, t: float, hx: float, ht: float) -> complex:
    """i d/dt psi + d^2/dx^2 psi - V psi at (x, t) by central differences.

    Time: 4th-order 5-point; space: 6th-order 7-point.  On the moving domain
    the time stencil samples psi at fixed x for shifted times, so x must stay
    interior at every sampled time; check_stencil_domain accounts for the
    wall moving by 4L per unit time.
    """
    dt_vals = np.array([psi(x, t + k * ht) for k in range(-2, 3)], dtype=complex)
    dx_vals = np.array([psi(x + k * hx, t) for k in range(-3, 4)], dtype=complex)
    d_t = np.dot(D1_O4, dt_vals) / ht
    d_xx = np.dot(D2_O6, dx_vals) / (hx * hx)
    return 1j * d_t + d_xx - complex(V(x, t)) * complex(psi(x, t))


def residual_scale(psi, V, x: float, t: float, hx: float, ht: float) -> float:
    """max(|i dt psi|, |dxx psi|, |V psi|) at (x, t): the natural residual scale."""
    dt_vals = np.array([psi(x, t + k * ht) for k in range(-2, 3)], dtype=complex)
    dx_vals = np.array([psi(x + k * hx, t) for k in range(-3, 4)], dtype=complex)
    d_t = np.dot(D1_O4, dt_vals) / ht
    d_xx = np.dot(D2_O6, dx_vals) / (hx * hx)
    return max(abs(d_t), abs(d_xx), abs(complex(V(x, t)) * complex(psi(x, t))))


def check_stencil_domain(x: float, t: float, hx: float, ht: float,
                         cfg: WellConfig) -> None:
    """Raise unless the full space-time stencil stays strictly inside the well."""
    for k in range(-2, 3):
        tk = t + k * ht
        cfg.check_time(tk)
        lk = wall_position(tk, cfg)
        if not (3.0 * hx < x < lk - 3.0 * hx):
            raise StencilOutOfDomainError(
                f"stencil at x={x} leaves (0, {lk}) at shifted time {tk}"
            )


def norm(psi, t: float, cfg: WellConfig, panels: int = 64, nodes: int = 10) -> float:
    """integral_0^ell |psi|^2 dx by composite Gauss-Legendre."""
    cfg.check_time(t)
    l = wall_position(t, cfg)

    def density(xs):
        vals = np.asarray(psi(xs, t))
        return np.abs(vals) ** 2

    return float(integrate_gl(density, 0.0, l, panels, nodes))


def overlap(psi1, psi2, t: float, cfg: WellConfig,
            panels: int = 64, nodes: int = 10) -> complex:
    """integral_0^ell conj(psi1) psi2 dx with the same quadrature as norm."""
    cfg.check_time(t)
    l = wall_position(t, cfg)

    def integrand(xs):
        return np.conj(np.asarray(psi1(xs, t))) * np.asarray(psi2(xs, t))

    return complex(integrate_gl(integrand, 0.0, l, panels, nodes))


def energy_expectation(psi, t: float, cfg: WellConfig, margin_frac: float = 1e-3,
                       step_frac: float = 2e-4, panels: int = 64,
                       nodes: int = 10) -> float:
    """Quadrature of Re[conj(psi) (-d^2/dx^2 psi)] over the well.

    The integrand is evaluated with a 6th-order stencil on the interior
    [margin, ell - margin]; near the walls it vanishes quadratically for every
    family state, so each wall sliver contributes f(margin) * margin / 3.
    The stencil half-width 3h must fit inside the margin.
    """
    cfg.check_time(t)
    l = wall_position(t, cfg)
    margin = margin_frac * l
    h = step_frac * l
    if 3.0 * h >= margin:
        raise ValueError("stencil exceeds the wall margin; lower step_frac")

    def integrand(xs):
        xs = np.asarray(xs)
        d2 = np.zeros(xs.shape, dtype=complex)
        for c, k in zip(D2_O6, range(-3, 4)):
            d2 += c * np.asarray(psi(xs + k * h, t))
        d2 /= h * h
        return (np.conj(np.asarray(psi(xs, t))) * (-d2)).real

    bulk = integrate_gl(integrand, margin, l - margin, panels, nodes)
    slivers = (integrand(np.array([margin]))[0]
               + integrand(np.array([l - margin]))[0]) * margin / 3.0
    return float(bulk + slivers)


def convergence_study(residual_fn, steps) -> float:
    """Observed order: least-squares slope of log(residual) against log(step).

    ``residual_fn`` maps a step size to a residual magnitude.  Residuals must
    decrease monotonically along the (decreasing) steps, otherwise the formula
    being probed is wrong and NonMonotoneResidualsError is raised.
    """
    steps = list(steps)
    if len(steps) < 3:
        raise ValueError("need at least 3 steps for an order estimate")
    res = [float(residual_fn(s)) for s in steps]
    for a, b in zip(res, res[1:]):
        if not (b < a):
            raise NonMonotoneResidualsError(
                f"residuals {res} do not decrease along steps {steps}"
            )
    slope, _ = np.polyfit(np.log(steps), np.log(res), 1)
    return float(slope)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}  value={self.value:.6e}  tol={self.tolerance:.3e}"


@dataclass
class VerificationReport:
    """A named bundle of checks with explicit tolerances, serializable two ways."""

    subject: str
    t: float | None = None
    checks: list[CheckResult] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, value: float, tolerance: float,
            passed: bool | None = None) -> CheckResult:
        if passed is None:
            passed = abs(value) <= tolerance
        result = CheckResult(name, float(value), float(tolerance), bool(passed))
        self.checks.append(result)
        return result

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        header = f"# subject: {self.subject}"
        if self.t is not None:
            header += f"  t={self.t}"
        lines = [header]
        lines += [f"# {k}: {v}" for k, v in sorted(self.meta.items())]
        lines += [c.line() for c in self.checks]
        lines.append(f"# result: {'PASS' if self.all_passed else 'FAIL'} "
                     f"({sum(c.passed for c in self.checks)}/{len(self.checks)})")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "subject": self.subject,
            "t": self.t,
            "meta": self.meta,
            "checks": [
                {"name": c.name, "value": c.value, "tolerance": c.tolerance,
                 "passed": c.passed}
                for c in self.checks
            ],
            "all_passed": self.all_passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True)
