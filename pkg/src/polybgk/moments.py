"""Macroscopic quantities of one species and the internal-energy constraint.

Per spatial node the distribution defines: number density n, mean velocity
u, internal mean eta_bar, translational temperature T^t (via
d n T^t = integral m |v-u|^2 f), internal temperature T^r (via
l n T^r = integral m |eta-eta_bar|^2 f) and the pressure tensor.  Mean-centered
second moments are always evaluated two-pass (subtract the mean before
squaring) to avoid cancellation at large bulk speed.

The relaxation temperatures (Lambda, Theta) parameterize the attractor
Maxwellian; they are tied to the kinetic temperatures through the
internal-energy constraint
    (d/2) Lambda = (d/2) T^t + (l/2) T^r - (l/2) Theta,
which makes the attractor carry exactly the thermal energy of f for any
admissible Theta.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels, _parallel
from .errors import NegativeTemperatureError, VacuumError
from .fields import DistributionField
from .species import SpeciesParams

__all__ = ["Moments", "compute_moments", "lambda_from_internal", "equilibrium_temperature"]

DEFAULT_N_FLOOR = 1e-30


@dataclass
class Moments:
    """Moment set of one species over the spatial grid (arrays over NX)."""

    d: int
    l: int
    n: np.ndarray          # (NX,)
    u: np.ndarray          # (NX, d)
    eta_bar: np.ndarray    # (NX, l)
    t_trans: np.ndarray    # (NX,)
    t_rot: np.ndarray      # (NX,)
    pressure: np.ndarray | None = None  # (NX, d, d), diagnostic
    lam: np.ndarray | None = None       # Lambda, set once Theta is known
    theta: np.ndarray | None = None

    @property
    def t_equil(self) -> np.ndarray:
        """Weighted equilibrium temperature T = (d*Lambda + l*Theta)/(d+l)."""
        if self.lam is None or self.theta is None:
            raise ValueError("relaxation temperatures not attached")
        return (self.d * self.lam + self.l * self.theta) / (self.d + self.l)

    def with_theta(self, theta: np.ndarray, species: SpeciesParams, k: int) -> "Moments":
        """Attach Theta and the Lambda recovered from the internal-energy constraint."""
        lam = lambda_from_internal(self.t_trans, self.t_rot, theta, species, k, self.d)
        return replace(self, lam=lam, theta=np.asarray(theta, dtype=float))

    def validate(self, rtol: float = 1e-10) -> None:
        """Check the internal consistency identities of the stored fields."""
        if self.pressure is not None:
            if not np.allclose(self.pressure, np.swapaxes(self.pressure, 1, 2), rtol=rtol):
                raise ValueError("pressure tensor not symmetric")
            trace = np.trace(self.pressure, axis1=1, axis2=2)
            if not np.allclose(trace, self.d * self.n * self.t_trans,
                               rtol=rtol, atol=rtol * max(1e-300, float(np.max(np.abs(trace))))):
                raise ValueError("trace(P) != d * n * T^t")
        if self.lam is not None and self.theta is not None:
            lhs = self.d / 2 * self.lam
            rhs = self.d / 2 * self.t_trans + self.l / 2 * (self.t_rot - self.theta)
            if not np.allclose(lhs, rhs, rtol=rtol, atol=1e-14):
                raise ValueError("internal-energy constraint violated")


def compute_moments(
    f: DistributionField,
    species: SpeciesParams,
    *,
    n_floor: float = DEFAULT_N_FLOOR,
    want_pressure: bool = False,
    aux: DistributionField | None = None,
) -> Moments:
    """Moments of f (or of f + aux when given) per spatial node.

    Raises VacuumError where the density falls below ``n_floor``: bulk
    velocity and temperatures are undefined there and the caller must treat
    the node as a genuine failure, not substitute defaults.
    """
    g = f.grid
    k = f.k
    d, lint = g.d, species.l[k]
    m = species.m[k]
    nmom = 3 + d + lint + d * (d + 1) // 2
    raw = np.empty((g.nx_total, nmom))
    use_g = aux is not None
    gvals = aux.values if use_g else f.values[:1]
    _parallel.run_blocked(
        _kernels.moments_pass, g.nx_total, f.values, gvals, use_g,
        g.v_nodes[k], g.eta_nodes[k], want_pressure, raw,
    )

    wfull = g.w_phase(k)
    s0 = raw[:, 0]
    n = s0 * wfull
    bad = np.flatnonzero(~(n >= n_floor))
    if bad.size:
        raise VacuumError(
            f"species {k + 1}: density below floor {n_floor:g} at spatial nodes "
            f"{bad[:8].tolist()}{'...' if bad.size > 8 else ''} "
            f"(min n = {float(np.min(n)):.3e})"
        )
    u = raw[:, 1 : 1 + d] / s0[:, None]
    eta_bar = raw[:, 1 + d : 1 + d + lint] / s0[:, None]
    t_trans = m * raw[:, 1 + d + lint] / (d * s0)
    t_rot = m * raw[:, 2 + d + lint] / (lint * s0)
    pressure = None
    if want_pressure:
        pressure = np.empty((g.nx_total, d, d))
        idx = 0
        for a in range(d):
            for b in range(a, d):
                pressure[:, a, b] = pressure[:, b, a] = m * wfull * raw[:, 3 + d + lint + idx]
                idx += 1
    return Moments(d=d, l=lint, n=n, u=u, eta_bar=eta_bar,
                   t_trans=t_trans, t_rot=t_rot, pressure=pressure)


def lambda_from_internal(
    t_trans, t_rot, theta, species: SpeciesParams, k: int, d: int
) -> np.ndarray:
    """Lambda = T^t + (l/d) (T^r - Theta); aborts if the result leaves (0, inf)."""
    lam = np.asarray(t_trans, dtype=float) + species.l[k] / d * (
        np.asarray(t_rot, dtype=float) - np.asarray(theta, dtype=float)
    )
    if np.any(~(lam > 0.0)):
        raise NegativeTemperatureError(
            f"species {k + 1}: translational relaxation temperature <= 0 "
            f"(min {float(np.min(lam)):.3e}); state left the admissible region"
        )
    return lam


def equilibrium_temperature(lam, theta, species: SpeciesParams, k: int, d: int) -> np.ndarray:
    return (d * np.asarray(lam) + species.l[k] * np.asarray(theta)) / (d + species.l[k])
