"""Distribution fields and their weighted norms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import PhaseSpaceGrid

__all__ = [
    "DistributionField",
    "weighted_sup_norm",
    "l1_xi2_norm",
    "l1_xi2_distance",
]

_X_CHUNK = 8  # spatial rows per temporary when touching full fields


@dataclass
class DistributionField:
    """One species' distribution sampled on the (x, v, eta) tensor grid."""

    grid: PhaseSpaceGrid
    k: int
    values: np.ndarray  # (NX, NV, NE_k)

    def __post_init__(self):
        expected = self.grid.shape(self.k)
        if self.values.shape != expected:
            raise ValueError(f"field shape {self.values.shape} != grid shape {expected}")

    @classmethod
    def zeros(cls, grid: PhaseSpaceGrid, k: int) -> "DistributionField":
        return cls(grid, k, np.zeros(grid.shape(k)))

    def copy(self) -> "DistributionField":
        return DistributionField(self.grid, self.k, self.values.copy())

    def min(self) -> float:
        return float(self.values.min())

    def mass(self) -> float:
        """Total particle number integral over the periodic box."""
        g = self.grid
        return float(self.values.sum() * g.w_x * g.w_phase(self.k))


def weighted_sup_norm(f: DistributionField, q: float) -> float:
    """max over all grid nodes of |xi|^q * f with xi = (v, eta).

    Homogeneous of degree 1 in f and monotone under pointwise ordering;
    q = 0 reduces to the plain sup norm.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    vals = f.values
    if q == 0:
        return float(vals.max())
    w = f.grid.xi_sq(f.k) ** (q / 2.0)
    best = -np.inf
    for i in range(0, vals.shape[0], _X_CHUNK):
        best = max(best, float((vals[i : i + _X_CHUNK] * w[None]).max()))
    return best


def _xi2_weight(grid: PhaseSpaceGrid, k: int) -> np.ndarray:
    return 1.0 + grid.xi_sq(k)


def l1_xi2_norm(f: DistributionField) -> float:
    """L1 norm with weight (1 + |xi|^2) over the full phase space."""
    g = f.grid
    w = _xi2_weight(g, f.k)
    total = 0.0
    for i in range(0, f.values.shape[0], _X_CHUNK):
        total += float(np.einsum("xve,ve->", np.abs(f.values[i : i + _X_CHUNK]), w))
    return total * g.w_x * g.w_phase(f.k)


def l1_xi2_distance(f: DistributionField, h: DistributionField) -> float:
    """Weighted L1((1+|xi|^2) dxi dx) distance between two fields of one species."""
    if f.k != h.k or f.grid is not h.grid:
        raise ValueError("fields must share species and grid")
    g = f.grid
    w = _xi2_weight(g, f.k)
    total = 0.0
    for i in range(0, f.values.shape[0], _X_CHUNK):
        diff = np.abs(f.values[i : i + _X_CHUNK] - h.values[i : i + _X_CHUNK])
        total += float(np.einsum("xve,ve->", diff, w))
    return total * g.w_x * g.w_phase(f.k)
