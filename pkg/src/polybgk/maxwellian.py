"""Discrete Maxwellian families on the truncated grid.

All attractors share one anisotropic Gaussian form
    G(v, eta) = n * C * exp(-m|v-u|^2 / (2 Lambda) - m|eta-eta_bar|^2 / (2 Theta))
evaluated at the grid nodes and then renormalized so the discrete mass
equals n exactly; the continuum normalizing constant is folded into that
rescaling.  Mean and temperature moments are then correct to quadrature
accuracy, which the grid's truncation rule keeps far below test tolerances.

Because the exponent separates, a Maxwellian is stored as a factor pair
A(x, v) * B(x, eta); the solver consumes factor pairs directly and full
fields are materialized only on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, _parallel
from .errors import PolybgkError
from .fields import DistributionField
from .grid import PhaseSpaceGrid
from .mixture import ExchangeSet
from .moments import Moments
from .species import SpeciesParams

__all__ = [
    "DomainError",
    "MaxwellFactors",
    "maxwellian_factors",
    "maxwellian",
    "equilibrium_maxwellian",
    "exchange_maxwellians",
    "fixed_offset_equilibrium",
]


class DomainError(PolybgkError):
    """Maxwellian parameters outside their domain (non-positive temperature
    or negative offset energy)."""


@dataclass
class MaxwellFactors:
    """Separable discrete Maxwellian: values = A[x, v] * B[x, eta]."""

    grid: PhaseSpaceGrid
    k: int
    a: np.ndarray  # (NX, NV), carries density and renormalization
    b: np.ndarray  # (NX, NE_k)

    def materialize(self) -> DistributionField:
        out = np.empty(self.grid.shape(self.k))
        zeros_a = np.zeros_like(self.a)
        zeros_b = np.zeros_like(self.b)
        _parallel.run_blocked(
            _kernels.pair_product, self.grid.nx_total, self.a, self.b, zeros_a, zeros_b, out
        )
        return DistributionField(self.grid, self.k, out)

    def mass(self) -> np.ndarray:
        """Discrete density (NX,) of the factored field."""
        g = self.grid
        return self.a.sum(axis=1) * g.w_v(self.k) * self.b.sum(axis=1) * g.w_eta(self.k)


def _as_field(x, nx: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return np.full(nx, float(arr))
    return arr


def maxwellian_factors(
    grid: PhaseSpaceGrid,
    k: int,
    n,
    u,
    eta_bar,
    lam,
    theta,
) -> MaxwellFactors:
    """Renormalized factor pair of the two-temperature Maxwellian.

    Parameters may be scalars or per-x arrays; ``u`` is (NX, d) or (d,),
    ``eta_bar`` is (NX, l_k) or (l_k,).  Requires n >= 0 and positive
    temperatures.
    """
    sp = grid.species
    m = sp.m[k]
    nx, d, lint = grid.nx_total, grid.d, sp.l[k]
    n = _as_field(n, nx)
    lam = _as_field(lam, nx)
    theta = _as_field(theta, nx)
    u = np.broadcast_to(np.atleast_2d(np.asarray(u, dtype=float)), (nx, d))
    eta_bar = np.broadcast_to(np.atleast_2d(np.asarray(eta_bar, dtype=float)), (nx, lint))

    if np.any(~(lam > 0.0)) or np.any(~(theta > 0.0)):
        raise DomainError(
            f"species {k + 1}: Maxwellian requires positive temperatures "
            f"(min Lambda {float(np.min(lam)):.3e}, min Theta {float(np.min(theta)):.3e})"
        )
    if np.any(n < 0.0):
        raise DomainError(f"species {k + 1}: negative density in Maxwellian")

    v = grid.v_nodes[k]       # (NV, d)
    eta = grid.eta_nodes[k]   # (NE, l)
    dv2 = ((v[None, :, :] - u[:, None, :]) ** 2).sum(axis=2)       # (NX, NV)
    de2 = ((eta[None, :, :] - eta_bar[:, None, :]) ** 2).sum(axis=2)  # (NX, NE)
    with np.errstate(under="ignore"):
        ev = np.exp(-0.5 * m * dv2 / lam[:, None])
        ee = np.exp(-0.5 * m * de2 / theta[:, None])
    mass = ev.sum(axis=1) * grid.w_v(k) * ee.sum(axis=1) * grid.w_eta(k)
    scale = np.where(mass > 0.0, n / np.where(mass > 0.0, mass, 1.0), 0.0)
    return MaxwellFactors(grid, k, ev * scale[:, None], ee)


def maxwellian(grid: PhaseSpaceGrid, k: int, n, u, eta_bar, lam, theta) -> DistributionField:
    """Discrete two-temperature Maxwellian, renormalized to mass n."""
    return maxwellian_factors(grid, k, n, u, eta_bar, lam, theta).materialize()


def equilibrium_maxwellian(moments: Moments, grid: PhaseSpaceGrid, k: int) -> DistributionField:
    """Single-temperature attractor at T = (d Lambda + l Theta) / (d + l)."""
    t = moments.t_equil
    if np.any(~(t > 0.0)):
        raise DomainError(f"species {k + 1}: non-positive equilibrium temperature")
    return maxwellian(grid, k, moments.n, moments.u, moments.eta_bar, t, t)


def exchange_maxwellians(
    exchange: ExchangeSet,
    n1,
    n2,
    grid: PhaseSpaceGrid,
    model: str,
):
    """Interspecies attractors for the cross-collision terms.

    Model 'a' returns the two-temperature pair (M_12, M_21); model 'b'
    additionally returns the single-temperature pair (at T_12, T_21) used by
    its auxiliary relaxation equation.
    """
    m12 = maxwellian(grid, 0, n1, exchange.u_12, exchange.eta_bar_12,
                     exchange.lam_12, exchange.theta_12)
    m21 = maxwellian(grid, 1, n2, exchange.u_21, exchange.eta_bar_21,
                     exchange.lam_21, exchange.theta_21)
    if model == "a":
        return m12, m21
    if model == "b":
        mt12 = maxwellian(grid, 0, n1, exchange.u_12, exchange.eta_bar_12,
                          exchange.t_12, exchange.t_12)
        mt21 = maxwellian(grid, 1, n2, exchange.u_21, exchange.eta_bar_21,
                          exchange.t_21, exchange.t_21)
        return m12, m21, mt12, mt21
    raise ValueError(f"unknown model tag {model!r}")


def fixed_offset_equilibrium(
    grid: PhaseSpaceGrid,
    k: int,
    n: float,
    u,
    t: float,
    w_direction,
    p_inf: float,
) -> DistributionField:
    """Equilibrium with a fixed internal-mean offset w, |w|^2 = 2 p_inf / (m n).

    The offset stores the constant energy density p_inf in the internal
    coordinates, which shifts the equation of state to p = n T + const.
    """
    if p_inf < 0:
        raise DomainError("offset energy p_inf must be nonnegative")
    if n <= 0 or t <= 0:
        raise DomainError("fixed-offset equilibrium needs n > 0 and T > 0")
    sp = grid.species
    what = np.asarray(w_direction, dtype=float)
    if what.shape != (sp.l[k],):
        raise DomainError(f"w_direction must have {sp.l[k]} components")
    norm = np.linalg.norm(what)
    if p_inf > 0 and norm == 0:
        raise DomainError("w_direction must be nonzero when p_inf > 0")
    w = np.zeros(sp.l[k]) if p_inf == 0 else what / norm * np.sqrt(2.0 * p_inf / (sp.m[k] * n))
    return maxwellian(grid, k, n, u, w, t, t)
