"""Physical constants of the binary mixture and the admissible coupling region.

Conventions (used everywhere in the package):
- species are indexed 0 and 1 in code; formulas in docstrings use the
  physical labels 1 and 2.
- ``m`` is particle mass, ``l`` the number of internal (rotation/vibration)
  degrees of freedom, ``z_rot`` the collision number controlling how slowly
  the internal temperature relaxes to the translational one.
- Collision-frequency coefficients: the effective rate in front of the
  relaxation terms is ``nu_jk * n_k = nu~_jk * n_k / (n_1 + n_2)`` with
  constant ``nu~_jk``.  The user supplies nu~_11, nu~_22 and nu~_21; nu~_12
  is always derived as ``epsilon * nu~_21`` so the momentum/energy closure
  cannot be broken by inconsistent input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

__all__ = [
    "SpeciesParams",
    "MixtureCouplingParams",
    "ConstraintCheck",
    "ValidationReport",
    "validate_coupling",
]


@dataclass(frozen=True)
class SpeciesParams:
    """Constants of both species, index 0 = species 1, index 1 = species 2."""

    m: tuple[float, float]
    l: tuple[int, int]
    z_rot: tuple[float, float]
    nu_intra: tuple[float, float]  # (nu~_11, nu~_22)
    nu_cross_21: float             # nu~_21; nu~_12 = epsilon * nu~_21

    def __post_init__(self):
        if len(self.m) != 2 or len(self.l) != 2 or len(self.z_rot) != 2 or len(self.nu_intra) != 2:
            raise ConfigError("species parameter tuples must have length 2")
        if any(mk <= 0 for mk in self.m):
            raise ConfigError(f"masses must be positive, got {self.m}")
        if any(int(lk) != lk or lk < 1 for lk in self.l):
            raise ConfigError(f"internal degree counts must be integers >= 1, got {self.l}")
        if any(z <= 0 for z in self.z_rot):
            raise ConfigError(f"rotational collision numbers must be positive, got {self.z_rot}")
        if any(nu <= 0 for nu in self.nu_intra) or self.nu_cross_21 <= 0:
            raise ConfigError("all collision-frequency coefficients must be positive")
        object.__setattr__(self, "l", tuple(int(lk) for lk in self.l))

    @property
    def eta_dim(self) -> int:
        """Total number of distinct internal coordinates M (>= max l_k).

        Species k is active on the first l_k components; overlapping leading
        components model degrees of freedom shared by both species.
        """
        return max(self.l)

    def eta_mask(self, k: int) -> np.ndarray:
        mask = np.zeros(self.eta_dim, dtype=bool)
        mask[: self.l[k]] = True
        return mask

    def nu_tilde(self, epsilon: float) -> np.ndarray:
        """2x2 coefficient matrix nu~_jk; row j is the equation index."""
        return np.array(
            [
                [self.nu_intra[0], epsilon * self.nu_cross_21],
                [self.nu_cross_21, self.nu_intra[1]],
            ]
        )

    def z_relax(self, d: int) -> np.ndarray:
        """z_k = Z_r^k * d / (d + l_k), the kinetic-level relaxation divisor."""
        return np.array([self.z_rot[k] * d / (d + self.l[k]) for k in (0, 1)])


@dataclass(frozen=True)
class MixtureCouplingParams:
    """Free parameters of the interspecies exchange closure.

    delta / beta mix velocities / internal means, alpha mixes translational
    relaxation temperatures, gamma / gamma_tilde convert velocity- /
    internal-mean differences into heat, epsilon is the ratio of the cross
    collision frequencies (nu_12 = epsilon * nu_21).
    """

    delta: float
    beta: float
    alpha: float
    gamma: float
    gamma_tilde: float
    epsilon: float


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    value: float
    lower: float
    upper: float
    passed: bool

    def __str__(self):
        status = "ok" if self.passed else "FAIL"
        return f"{self.name}: {self.value:.6g} in [{self.lower:.6g}, {self.upper:.6g}] -> {status}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ConstraintCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[ConstraintCheck]:
        return [c for c in self.checks if not c.passed]

    def format_table(self) -> str:
        return "\n".join(str(c) for c in self.checks)


def gamma_bound(delta: float, epsilon: float, species: SpeciesParams, d: int) -> float:
    """Largest admissible velocity-difference heating coefficient at given delta."""
    x = epsilon * species.m[0] / species.m[1]
    return species.m[0] / d * (1.0 - delta) * ((1.0 + x) * delta + 1.0 - x)


def gamma_tilde_bound(beta: float, epsilon: float, species: SpeciesParams) -> float:
    """Largest admissible internal-difference heating coefficient at given beta."""
    x = epsilon * species.m[0] / species.m[1]
    return species.m[0] / species.l[0] * (1.0 - beta) * ((1.0 + x) * beta + 1.0 - x)


def mixing_weight_interval(epsilon: float, species: SpeciesParams) -> tuple[float, float]:
    """Admissible closed interval for the mixing weights delta and beta."""
    x = epsilon * species.m[0] / species.m[1]
    return (x - 1.0) / (1.0 + x), 1.0


def validate_coupling(
    coupling: MixtureCouplingParams, species: SpeciesParams, d: int = 1
) -> ValidationReport:
    """Check every admissibility constraint of the exchange closure.

    Returns a report listing each constraint with its admissible interval;
    the report passes iff all constraints hold.  Downstream solvers refuse
    to run with a failing report.

    Besides the closure's published constraints, ``epsilon * (1 - alpha) <= 1``
    is enforced: the translational exchange temperature of species 2 is the
    affine combination ``eps*(1-alpha)*Lambda_1 + (1-eps*(1-alpha))*Lambda_2``
    (plus a nonnegative drift-heating term), so positivity for arbitrary
    positive inputs requires both coefficients nonnegative.
    """
    l1, l2 = species.l
    eps = coupling.epsilon
    lo, hi = mixing_weight_interval(eps, species)
    ratio = l1 / (l1 + l2) * eps

    checks = [
        ConstraintCheck(
            "epsilon_frequency_ratio (0 < l1/(l1+l2)*eps <= 1)",
            ratio, np.nextafter(0.0, 1.0), 1.0, 0.0 < ratio <= 1.0,
        ),
        ConstraintCheck("delta_interval", coupling.delta, lo, hi, lo <= coupling.delta <= hi),
        ConstraintCheck("beta_interval", coupling.beta, lo, hi, lo <= coupling.beta <= hi),
        ConstraintCheck(
            "alpha_interval", coupling.alpha, 0.0, 1.0, 0.0 <= coupling.alpha <= 1.0
        ),
    ]

    gmax = gamma_bound(coupling.delta, eps, species, d)
    checks.append(
        ConstraintCheck(
            "gamma_bound", coupling.gamma, 0.0, gmax, 0.0 <= coupling.gamma <= gmax
        )
    )
    gtmax = gamma_tilde_bound(coupling.beta, eps, species)
    checks.append(
        ConstraintCheck(
            "gamma_tilde_bound",
            coupling.gamma_tilde, 0.0, gtmax, 0.0 <= coupling.gamma_tilde <= gtmax,
        )
    )
    ea = eps * (1.0 - coupling.alpha)
    checks.append(
        ConstraintCheck("epsilon_alpha_product (eps*(1-alpha) <= 1)", ea, 0.0, 1.0, ea <= 1.0)
    )
    return ValidationReport(tuple(checks))
