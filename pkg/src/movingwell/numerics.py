"""Finite-difference stencils and quadrature rules shared across the package.

All stencils are central, on uniform grids.  Quadrature is composite
Gauss-Legendre with a fixed, deterministic evaluation order so results are
bit-reproducible for identical configurations.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Central-difference coefficients, indexed by offsets -k..+k.
# first derivative, 4th order (5 points)
D1_O4 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
# first derivative, 6th order (7 points)
D1_O6 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
# second derivative, 4th order (5 points)
D2_O4 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
# second derivative, 6th order (7 points)
D2_O6 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
# third derivative, 4th order (7 points)
D3_O4 = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0


@lru_cache(maxsize=32)
def _leggauss(nodes: int):
    return np.polynomial.legendre.leggauss(nodes)


def gauss_legendre_nodes(a: float, b: float, panels: int, nodes: int):
    """Nodes and weights of composite Gauss-Legendre quadrature on [a, b].

    Exact for polynomials of degree 2*nodes - 1 on each panel.  Returns flat
    arrays ordered panel by panel (deterministic reduction order).
    """
    base_x, base_w = _leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    xs = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    ws = (half[:, None] * base_w[None, :]).ravel()
    return xs, ws


def integrate_gl(f, a: float, b: float, panels: int = 64, nodes: int = 10):
    """Composite Gauss-Legendre integral of a vectorized callable on [a, b]."""
    xs, ws = gauss_legendre_nodes(a, b, panels, nodes)
    vals = np.asarray(f(xs))
    return np.dot(ws, vals)
