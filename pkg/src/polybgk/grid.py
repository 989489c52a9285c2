"""Phase-space grids: periodic space, truncated velocity and internal boxes.

Layout convention: every distribution is stored as a dense array of shape
``(NX, NV, NE_k)`` where the three axes are the flattened spatial, velocity
and internal-coordinate grids.  Space is periodic with box lengths ``a_i``;
velocity and internal coordinates live on per-species truncated boxes with
uniform midpoint quadrature (node at each cell center, weight = cell volume).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from .errors import ConfigError, TruncationError
from .species import SpeciesParams

__all__ = ["GridConfig", "PhaseSpaceGrid", "build_grid"]


@dataclass(frozen=True)
class GridConfig:
    """Sizes and extents of the discrete phase space.

    ``t_ref`` / ``u_ref`` / ``eta_ref`` describe the hottest Maxwellian the
    run is expected to produce (maximum temperature, bulk speed per axis and
    internal offset per axis); the construction-time truncation check uses
    them to bound the Gaussian mass lost outside the boxes.
    """

    d: int
    lengths: tuple[float, ...]
    nx: tuple[int, ...]
    nv: int
    n_eta: int
    v_max: tuple[float, float]
    eta_max: tuple[float, float]
    t_ref: float
    u_ref: float = 0.0
    eta_ref: float = 0.0
    truncation_tol: float = 1e-10

    @classmethod
    def auto(
        cls,
        species: SpeciesParams,
        *,
        d: int = 1,
        lengths: tuple[float, ...] = (1.0,),
        nx: tuple[int, ...] = (64,),
        nv: int = 48,
        n_eta: int = 24,
        t_max: float = 1.0,
        u_max: float = 0.0,
        eta_offset_max: float = 0.0,
        sigmas: float = 8.0,
        truncation_tol: float = 1e-10,
    ) -> "GridConfig":
        """Extents from the truncation rule v_max = |u|_max + sigmas*sqrt(T_max/m)."""
        v_max = tuple(u_max + sigmas * np.sqrt(t_max / mk) for mk in species.m)
        eta_max = tuple(eta_offset_max + sigmas * np.sqrt(t_max / mk) for mk in species.m)
        return cls(
            d=d, lengths=tuple(lengths), nx=tuple(nx), nv=nv, n_eta=n_eta,
            v_max=v_max, eta_max=eta_max, t_ref=t_max, u_ref=u_max,
            eta_ref=eta_offset_max, truncation_tol=truncation_tol,
        )


def _midpoint_axis(extent: float, n: int) -> tuple[np.ndarray, float]:
    h = 2.0 * extent / n
    return -extent + (np.arange(n) + 0.5) * h, h


def _flatten_axes(axes: list[np.ndarray]) -> np.ndarray:
    """(N, len(axes)) array of all node tuples, C-order (last axis fastest)."""
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=-1)


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Immutable discrete phase space for both species."""

    config: GridConfig
    species: SpeciesParams
    x_axes: tuple[np.ndarray, ...]
    dx: tuple[float, ...]
    v_axes: tuple[tuple[np.ndarray, ...], ...]      # [k][axis]
    eta_axes: tuple[tuple[np.ndarray, ...], ...]    # [k][axis]
    dv: tuple[float, float]
    deta: tuple[float, float]
    # flattened caches
    x_nodes: np.ndarray                              # (NX, d)
    v_nodes: tuple[np.ndarray, np.ndarray]           # [k] -> (NV, d)
    eta_nodes: tuple[np.ndarray, np.ndarray]         # [k] -> (NE_k, l_k)
    v_sq: tuple[np.ndarray, np.ndarray]              # [k] -> (NV,) |v|^2
    eta_sq: tuple[np.ndarray, np.ndarray]            # [k] -> (NE_k,) |eta|^2

    @property
    def d(self) -> int:
        return self.config.d

    @property
    def nx_total(self) -> int:
        return int(np.prod(self.config.nx))

    @property
    def nv_total(self) -> int:
        return self.config.nv ** self.config.d

    def ne_total(self, k: int) -> int:
        return self.config.n_eta ** self.species.l[k]

    def shape(self, k: int) -> tuple[int, int, int]:
        return (self.nx_total, self.nv_total, self.ne_total(k))

    @property
    def w_x(self) -> float:
        return float(np.prod(self.dx))

    def w_v(self, k: int) -> float:
        return self.dv[k] ** self.config.d

    def w_eta(self, k: int) -> float:
        return self.deta[k] ** self.species.l[k]

    def w_phase(self, k: int) -> float:
        """Quadrature weight of one (v, eta) node (uniform midpoint rule)."""
        return self.w_v(k) * self.w_eta(k)

    def quadrature_weights(self, k: int) -> np.ndarray:
        """Explicit per-node (v, eta) weights; constant for the midpoint rule."""
        return np.full(self.nv_total * self.ne_total(k), self.w_phase(k))

    def xi_sq(self, k: int) -> np.ndarray:
        """|xi|^2 = |v|^2 + |eta|^2 over the (NV, NE_k) velocity-internal grid."""
        return self.v_sq[k][:, None] + self.eta_sq[k][None, :]

    def grid_hash(self) -> str:
        h = hashlib.sha256()
        c = self.config
        payload = (
            c.d, c.lengths, c.nx, c.nv, c.n_eta, c.v_max, c.eta_max,
            self.species.m, self.species.l,
        )
        h.update(repr(payload).encode())
        return h.hexdigest()[:16]


def truncation_loss(config: GridConfig, species: SpeciesParams, k: int) -> float:
    """Upper bound on the Gaussian mass fraction outside the (v, eta) boxes.

    Per-axis two-sided normal tail erfc(z / sqrt(2)) at the reference
    temperature, summed over the d velocity axes and l_k internal axes
    (union bound).
    """
    sigma = np.sqrt(config.t_ref / species.m[k])
    zv = (config.v_max[k] - config.u_ref) / sigma
    ze = (config.eta_max[k] - config.eta_ref) / sigma
    if zv <= 0 or ze <= 0:
        return 1.0
    return float(config.d * erfc(zv / np.sqrt(2.0)) + species.l[k] * erfc(ze / np.sqrt(2.0)))


def build_grid(config: GridConfig, species: SpeciesParams) -> PhaseSpaceGrid:
    """Construct the grid, enforcing sizes and the truncation mass-loss check."""
    if config.d < 1 or config.d > 3:
        raise ConfigError(f"spatial dimension must be 1..3, got {config.d}")
    if len(config.lengths) != config.d or len(config.nx) != config.d:
        raise ConfigError("lengths and nx must have one entry per spatial axis")
    if any(a <= 0 for a in config.lengths):
        raise ConfigError(f"box lengths must be positive, got {config.lengths}")
    if any(n < 4 for n in config.nx) or config.nv < 4 or config.n_eta < 4:
        raise ConfigError("need at least 4 nodes per dimension")
    if any(v <= 0 for v in config.v_max) or any(e <= 0 for e in config.eta_max):
        raise ConfigError("velocity and internal extents must be positive")
    if config.t_ref <= 0:
        raise ConfigError("reference temperature must be positive")

    for k in (0, 1):
        loss = truncation_loss(config, species, k)
        if not loss < config.truncation_tol:
            raise TruncationError(
                f"species {k + 1}: estimated truncated mass fraction {loss:.3e} "
                f">= tolerance {config.truncation_tol:.1e}; enlarge v_max/eta_max"
            )

    x_axes, dx = [], []
    for a, n in zip(config.lengths, config.nx):
        h = a / n
        x_axes.append(np.arange(n) * h)
        dx.append(h)

    v_axes, eta_axes, dv, deta = [], [], [], []
    for k in (0, 1):
        ax, h = _midpoint_axis(config.v_max[k], config.nv)
        v_axes.append(tuple(ax.copy() for _ in range(config.d)))
        dv.append(h)
        ax, h = _midpoint_axis(config.eta_max[k], config.n_eta)
        eta_axes.append(tuple(ax.copy() for _ in range(species.l[k])))
        deta.append(h)

    x_nodes = _flatten_axes(x_axes)
    v_nodes = tuple(_flatten_axes(list(v_axes[k])) for k in (0, 1))
    eta_nodes = tuple(_flatten_axes(list(eta_axes[k])) for k in (0, 1))

    return PhaseSpaceGrid(
        config=config,
        species=species,
        x_axes=tuple(x_axes),
        dx=tuple(dx),
        v_axes=tuple(v_axes),
        eta_axes=tuple(eta_axes),
        dv=tuple(dv),
        deta=tuple(deta),
        x_nodes=x_nodes,
        v_nodes=v_nodes,
        eta_nodes=eta_nodes,
        v_sq=tuple(np.sum(v_nodes[k] ** 2, axis=1) for k in (0, 1)),
        eta_sq=tuple(np.sum(eta_nodes[k] ** 2, axis=1) for k in (0, 1)),
    )
