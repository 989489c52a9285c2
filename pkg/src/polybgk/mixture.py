"""Interspecies exchange closure: mixed densities, velocities, internal
means and relaxation temperatures.

The cross-collision attractor of species 1 keeps its own density
(n_12 = n_1, n_21 = n_2: particle numbers are conserved separately) while
its velocity, internal mean and temperatures are convex-type mixtures of
both species chosen so the cross terms conserve total momentum and energy:

    u_12  = delta u_1 + (1-delta) u_2
    u_21  = u_2 - (m_1/m_2) eps (1-delta) (u_2 - u_1)
    Lam_12 = alpha Lam_1 + (1-alpha) Lam_2 + gamma |u_1-u_2|^2
    The_12 = (l_1 The_1 + l_2 The_2)/(l_1+l_2) + gamma~ |eb_1-eb_2|^2
    Lam_21 = [eps m_1 (1-delta)((m_1/m_2) eps (delta-1) + delta + 1)/d - eps gamma] |u_1-u_2|^2
             + eps (1-alpha) Lam_1 + (1 - eps(1-alpha)) Lam_2
    The_21 = eps l_1/(l_1+l_2) The_1 + (1 - eps l_1/(l_1+l_2)) The_2
             - (l_1/l_2) eps gamma~ |eb_1-eb_2|^2
             - eps m_1/l_2 (|eb_12|^2 - |eb_1|^2) - m_2/l_2 (|eb_21|^2 - |eb_2|^2)

Internal means mix on the shared coordinate space: each species' mean is
zero-padded onto the full internal coordinate set, mixed there, then
restricted back to the species' active components; squared norms are taken
on the restricted embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeTemperatureError
from .moments import Moments
from .species import MixtureCouplingParams, SpeciesParams

__all__ = [
    "ExchangeSet",
    "exchange_velocities",
    "exchange_eta",
    "exchange_temperatures",
    "exchange_momentum_gain",
    "exchange_energy_gain",
]


@dataclass
class ExchangeSet:
    """All interspecies exchange quantities over the spatial grid."""

    n_12: np.ndarray
    n_21: np.ndarray
    u_12: np.ndarray
    u_21: np.ndarray
    eta_bar_12: np.ndarray   # restricted to species-1 active components (NX, l1)
    eta_bar_21: np.ndarray   # restricted to species-2 active components (NX, l2)
    lam_12: np.ndarray
    lam_21: np.ndarray
    theta_12: np.ndarray
    theta_21: np.ndarray
    t_12: np.ndarray
    t_21: np.ndarray


def exchange_velocities(u1, u2, coupling: MixtureCouplingParams, species: SpeciesParams):
    """Mixed velocities (u_12, u_21); the u_21 form is what total momentum
    conservation forces once u_12 is declared."""
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    delta, eps = coupling.delta, coupling.epsilon
    u12 = delta * u1 + (1.0 - delta) * u2
    u21 = u2 - species.m[0] / species.m[1] * eps * (1.0 - delta) * (u2 - u1)
    return u12, u21


def _embed(eta_bar: np.ndarray, species: SpeciesParams, k: int) -> np.ndarray:
    """Zero-pad an (.., l_k) internal mean onto the full coordinate set (.., M)."""
    eta_bar = np.atleast_2d(np.asarray(eta_bar, dtype=float))
    out = np.zeros(eta_bar.shape[:-1] + (species.eta_dim,))
    out[..., species.eta_mask(k)] = eta_bar
    return out


def exchange_eta(eta_bar1, eta_bar2, coupling: MixtureCouplingParams, species: SpeciesParams):
    """Mixed internal means, mixed on the embedded coordinates and restricted
    back to each species' active components."""
    e1 = _embed(eta_bar1, species, 0)
    e2 = _embed(eta_bar2, species, 1)
    beta, eps = coupling.beta, coupling.epsilon
    mixed12 = beta * e1 + (1.0 - beta) * e2
    mixed21 = e2 - species.m[0] / species.m[1] * eps * (1.0 - beta) * (e2 - e1)
    eb12 = mixed12[..., species.eta_mask(0)]
    eb21 = mixed21[..., species.eta_mask(1)]
    return eb12, eb21


def _sq(x: np.ndarray) -> np.ndarray:
    return np.sum(np.atleast_2d(x) ** 2, axis=-1)


def exchange_temperatures(
    mom1: Moments,
    mom2: Moments,
    coupling: MixtureCouplingParams,
    species: SpeciesParams,
    d: int,
) -> ExchangeSet:
    """Full exchange set from both species' moments (Lambda/Theta attached).

    Raises NegativeTemperatureError if any output temperature is not
    strictly positive; unreachable for admissible coupling parameters and
    positive inputs.
    """
    if mom1.lam is None or mom2.lam is None:
        raise ValueError("exchange closure needs relaxation temperatures attached")
    m1, m2 = species.m
    l1, l2 = species.l
    eps = coupling.epsilon
    alpha, gamma, gtil = coupling.alpha, coupling.gamma, coupling.gamma_tilde
    delta = coupling.delta

    u12, u21 = exchange_velocities(mom1.u, mom2.u, coupling, species)
    eb12, eb21 = exchange_eta(mom1.eta_bar, mom2.eta_bar, coupling, species)

    du2 = _sq(np.atleast_2d(mom1.u) - np.atleast_2d(mom2.u))
    e1 = _embed(mom1.eta_bar, species, 0)
    e2 = _embed(mom2.eta_bar, species, 1)
    deb2 = _sq(e1 - e2)

    lam12 = alpha * mom1.lam + (1.0 - alpha) * mom2.lam + gamma * du2
    theta12 = (l1 * mom1.theta + l2 * mom2.theta) / (l1 + l2) + gtil * deb2

    drift = (eps * m1 * (1.0 - delta) * (m1 / m2 * eps * (delta - 1.0) + delta + 1.0) / d
             - eps * gamma)
    lam21 = drift * du2 + eps * (1.0 - alpha) * mom1.lam + (1.0 - eps * (1.0 - alpha)) * mom2.lam

    w1 = eps * l1 / (l1 + l2)
    theta21 = (
        w1 * mom1.theta
        + (1.0 - w1) * mom2.theta
        - l1 / l2 * eps * gtil * deb2
        - eps * m1 / l2 * (_sq(eb12) - _sq(np.atleast_2d(mom1.eta_bar)))
        - m2 / l2 * (_sq(eb21) - _sq(np.atleast_2d(mom2.eta_bar)))
    )

    t12 = (d * lam12 + l1 * theta12) / (d + l1)
    t21 = (d * lam21 + l2 * theta21) / (d + l2)

    for name, arr in (("Lambda_12", lam12), ("Lambda_21", lam21),
                      ("Theta_12", theta12), ("Theta_21", theta21),
                      ("T_12", t12), ("T_21", t21)):
        if np.any(~(arr > 0.0)):
            raise NegativeTemperatureError(
                f"exchange temperature {name} not positive (min {float(np.min(arr)):.3e}); "
                "inputs left the admissible region"
            )

    return ExchangeSet(
        n_12=mom1.n.copy(), n_21=mom2.n.copy(),
        u_12=u12, u_21=u21, eta_bar_12=eb12, eta_bar_21=eb21,
        lam_12=lam12, lam_21=lam21, theta_12=theta12, theta_21=theta21,
        t_12=t12, t_21=t21,
    )


def _rates(mom1: Moments, mom2: Moments, species: SpeciesParams, epsilon: float):
    """Effective cross rates nu_12 n_2 and nu_21 n_1 per spatial node."""
    total = mom1.n + mom2.n
    nu = species.nu_tilde(epsilon)
    return nu[0, 1] * mom2.n / total, nu[1, 0] * mom1.n / total


def exchange_momentum_gain(
    exchange: ExchangeSet, mom1: Moments, mom2: Moments,
    coupling: MixtureCouplingParams, species: SpeciesParams,
):
    """Momentum gain rate of each species from its cross-collision term.

    The two returned (NX, d) arrays sum to zero: the discrete statement of
    total momentum conservation in cross collisions.
    """
    r12, r21 = _rates(mom1, mom2, species, coupling.epsilon)
    p1 = species.m[0] * (mom1.n * r12)[:, None] * (exchange.u_12 - mom1.u)
    p2 = species.m[1] * (mom2.n * r21)[:, None] * (exchange.u_21 - mom2.u)
    return p1, p2


def exchange_energy_gain(
    exchange: ExchangeSet, mom1: Moments, mom2: Moments,
    coupling: MixtureCouplingParams, species: SpeciesParams, d: int,
):
    """Total-energy gain rate of each species from its cross-collision term.

    Uses the closed-form moments of the exchange attractors; by the
    internal-energy constraint the attractor thermal energy
    (d Lambda + l Theta)/2 equals that of the distribution itself, so the
    two returned arrays sum to zero for any admissible closure.
    """
    m1, m2 = species.m
    l1, l2 = species.l
    r12, r21 = _rates(mom1, mom2, species, coupling.epsilon)
    gain1 = (
        m1 / 2 * (_sq(exchange.u_12) - _sq(np.atleast_2d(mom1.u)))
        + m1 / 2 * (_sq(exchange.eta_bar_12) - _sq(np.atleast_2d(mom1.eta_bar)))
        + d / 2 * (exchange.lam_12 - mom1.lam)
        + l1 / 2 * (exchange.theta_12 - mom1.theta)
    )
    gain2 = (
        m2 / 2 * (_sq(exchange.u_21) - _sq(np.atleast_2d(mom2.u)))
        + m2 / 2 * (_sq(exchange.eta_bar_21) - _sq(np.atleast_2d(mom2.eta_bar)))
        + d / 2 * (exchange.lam_21 - mom2.lam)
        + l2 / 2 * (exchange.theta_21 - mom2.theta)
    )
    return mom1.n * r12 * gain1, mom2.n * r21 * gain2
