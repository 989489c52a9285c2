import numpy as np
import pytest

from polybgk import GridConfig, MixtureCouplingParams, SpeciesParams, build_grid


@pytest.fixture
def species():
    """Diatomic-style default: l1 = 2, l2 = 3, equal unit masses."""
    return SpeciesParams(
        m=(1.0, 1.0), l=(2, 3), z_rot=(2.0, 3.0),
        nu_intra=(1.0, 1.0), nu_cross_21=1.0,
    )


@pytest.fixture
def coupling():
    return MixtureCouplingParams(
        delta=0.5, beta=0.5, alpha=0.5, gamma=0.05, gamma_tilde=0.05, epsilon=1.0,
    )


@pytest.fixture
def small_grid(species):
    """Unit-test grid: small in x, resolved enough in (v, eta) that quadrature
    error stays below the 1e-8 moment tolerances for temperatures >= 0.6."""
    cfg = GridConfig.auto(
        species, d=1, lengths=(1.0,), nx=(16,), nv=32, n_eta=24,
        t_max=1.3, u_max=0.5, sigmas=7.0,
    )
    return build_grid(cfg, species)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
