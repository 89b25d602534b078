"""The seed system: a particle in a box with fixed walls at 0 and L."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidQuantumNumberError


def _check_n(n: int) -> None:
    if n < 1 or int(n) != n:
        raise InvalidQuantumNumberError(f"quantum number must be a positive integer, got {n}")


def box_eigenfunction(n: int, y, L: float):
    """sqrt(2/L) sin(n pi y / L) inside (0, L), zero outside.

    Zero outside (rather than an error) keeps lifted wavefunctions total and
    makes quadrature over larger intervals trivial.
    """
    _check_n(n)
    y = np.asarray(y, dtype=float)
    inside = (y > 0.0) & (y < L)
    vals = np.where(inside, np.sqrt(2.0 / L) * np.sin(n * np.pi * y / L), 0.0)
    return vals if vals.ndim else float(vals)


def box_energy(n: int, L: float) -> float:
    """Eigenvalue (n pi / L)^2 of the fixed box."""
    _check_n(n)
    return (n * np.pi / L) ** 2


@dataclass(frozen=True)
class BoxEigenstate:
    """A bound state of the fixed box, bundling its quantum number and length."""

    n: int
    L: float

    def __post_init__(self):
        _check_n(self.n)
        if not (self.L > 0):
            raise ValueError(f"box length must be positive, got {self.L}")

    def __call__(self, y):
        return box_eigenfunction(self.n, y, self.L)

    @property
    def energy(self) -> float:
        return box_energy(self.n, self.L)
