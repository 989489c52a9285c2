"""Exchange closure: substitution examples, conservation identities, and
positivity over the admissible region."""

import numpy as np
import pytest

from polybgk import (
    MixtureCouplingParams,
    NegativeTemperatureError,
    SpeciesParams,
    exchange_energy_gain,
    exchange_eta,
    exchange_momentum_gain,
    exchange_temperatures,
    exchange_velocities,
    validate_coupling,
)
from polybgk.moments import Moments
from polybgk.species import gamma_bound, gamma_tilde_bound, mixing_weight_interval


def make_moments(d, l, n, u, eta_bar, lam, theta):
    n = np.atleast_1d(np.asarray(n, dtype=float))
    nx = n.shape[0]
    mom = Moments(
        d=d, l=l, n=n,
        u=np.broadcast_to(np.atleast_2d(u), (nx, d)).astype(float),
        eta_bar=np.broadcast_to(np.atleast_2d(eta_bar), (nx, l)).astype(float),
        t_trans=np.full(nx, np.nan), t_rot=np.full(nx, np.nan),
    )
    mom.lam = np.atleast_1d(np.asarray(lam, dtype=float))
    mom.theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return mom


def coupling_with(**kw):
    base = dict(delta=0.5, beta=0.5, alpha=0.5, gamma=0.0, gamma_tilde=0.0, epsilon=1.0)
    base.update(kw)
    return MixtureCouplingParams(**base)


class TestExchangeVelocities:
    def test_delta_one_keeps_own_velocities(self, species):
        u12, u21 = exchange_velocities([0.3], [0.7], coupling_with(delta=1.0), species)
        assert u12 == pytest.approx([0.3])
        assert u21 == pytest.approx([0.7])

    def test_equal_velocities_fixed_point(self, species, rng):
        for _ in range(20):
            c = coupling_with(delta=rng.uniform(0, 1), epsilon=rng.uniform(0.1, 2.0))
            u = rng.normal(size=1)
            u12, u21 = exchange_velocities(u, u, c, species)
            assert np.allclose(u12, u) and np.allclose(u21, u)

    def test_direct_substitution(self):
        # d=1, m1=1, m2=2, eps=1, delta=0, u1=0, u2=1 -> u12=1, u21=0.5
        sp = SpeciesParams(m=(1.0, 2.0), l=(2, 3), z_rot=(1.0, 1.0),
                           nu_intra=(1.0, 1.0), nu_cross_21=1.0)
        u12, u21 = exchange_velocities([0.0], [1.0], coupling_with(delta=0.0), sp)
        assert u12 == pytest.approx([1.0])
        assert u21 == pytest.approx([0.5])


class TestExchangeEta:
    def test_beta_one_keeps_species1_mean(self, species):
        eb12, eb21 = exchange_eta([1.0, -2.0], [0.5, 0.5, 0.5],
                                  coupling_with(beta=1.0), species)
        assert np.allclose(eb12, [[1.0, -2.0]])

    def test_zero_means_give_zero(self, species):
        eb12, eb21 = exchange_eta([0.0, 0.0], [0.0, 0.0, 0.0], coupling_with(), species)
        assert np.all(eb12 == 0.0) and np.all(eb21 == 0.0)

    def test_masked_mixing_example(self, species):
        # M=3, species 1 active on components 1-2: means (1,1) and (0,2,2)
        # mixed with beta=1/2 give (0.5, 1.5, 1); restriction drops the third
        eb12, eb21 = exchange_eta([1.0, 1.0], [0.0, 2.0, 2.0],
                                  coupling_with(beta=0.5), species)
        assert np.allclose(eb12, [[0.5, 1.5]])
        # species 2 keeps all three components of its combination
        expected21 = np.array([0.0, 2.0, 2.0]) - 0.5 * (np.array([0.0, 2.0, 2.0])
                                                        - np.array([1.0, 1.0, 0.0]))
        assert np.allclose(eb21, [expected21])


class TestExchangeTemperatures:
    def test_difference_free_limit(self, species):
        # alpha=1, gamma=0, equal velocities and means: Lam_12 = Lam_1,
        # The_12 = (l1 The_1 + l2 The_2)/(l1+l2), Lam_21 = Lam_2
        m1 = make_moments(1, 2, 1.0, [0.1], [0.2, 0.3, ][:2], 1.2, 0.9)
        m2 = make_moments(1, 3, 2.0, [0.1], [0.2, 0.3, 0.0], 0.7, 1.1)
        ex = exchange_temperatures(m1, m2, coupling_with(alpha=1.0, beta=1.0), species, d=1)
        assert ex.lam_12 == pytest.approx([1.2])
        assert ex.theta_12 == pytest.approx([(2 * 0.9 + 3 * 1.1) / 5])
        assert ex.lam_21 == pytest.approx([0.7])

    def test_common_equilibrium_fixed_point(self, species, rng):
        for _ in range(30):
            c = coupling_with(delta=rng.uniform(0, 1), beta=rng.uniform(0, 1),
                              alpha=rng.uniform(0, 1), epsilon=rng.uniform(0.1, 2.0))
            u = rng.normal(size=1)
            lam, theta = rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)
            eb = np.zeros(3)
            m1 = make_moments(1, 2, 1.0, u, eb[:2], lam, theta)
            m2 = make_moments(1, 3, 2.0, u, eb, lam, theta)
            ex = exchange_temperatures(m1, m2, c, species, d=1)
            assert ex.lam_12 == pytest.approx([lam]) and ex.lam_21 == pytest.approx([lam])
            assert ex.theta_12 == pytest.approx([theta]) and ex.theta_21 == pytest.approx([theta])
            assert ex.t_12 == pytest.approx([(1 * lam + 2 * theta) / 3])

    def test_vanishing_drift_bracket(self):
        # d=3, m1=m2=1, eps=1, delta=0, gamma=0: the |u1-u2|^2 coefficient in
        # Lambda_21 is (1/3)*1*1*((-1) + 0 + 1) = 0, so Lambda_21 is the plain
        # alpha-mixture
        sp = SpeciesParams(m=(1.0, 1.0), l=(2, 3), z_rot=(1.0, 1.0),
                           nu_intra=(1.0, 1.0), nu_cross_21=1.0)
        m1 = make_moments(3, 2, 1.0, [1.0, 0.0, 0.0], [0.0, 0.0], 1.5, 1.0)
        m2 = make_moments(3, 3, 1.0, [0.0, 0.0, 0.0], [0.0, 0.0, 0.0], 0.5, 1.0)
        ex = exchange_temperatures(m1, m2, coupling_with(delta=0.0, alpha=0.5), sp, d=3)
        assert ex.lam_21 == pytest.approx([0.5 * 1.5 + 0.5 * 0.5], rel=1e-12)

    def test_exchange_densities_copy_own_density(self, species):
        m1 = make_moments(1, 2, 1.7, [0.0], [0.0, 0.0], 1.0, 1.0)
        m2 = make_moments(1, 3, 0.3, [0.0], [0.0, 0.0, 0.0], 1.0, 1.0)
        ex = exchange_temperatures(m1, m2, coupling_with(), species, d=1)
        assert ex.n_12 == pytest.approx([1.7])
        assert ex.n_21 == pytest.approx([0.3])


def random_admissible(rng, species, d):
    lsum = species.l[0] + species.l[1]
    eps = rng.uniform(0.05, lsum / species.l[0])
    lo, hi = mixing_weight_interval(eps, species)
    delta = rng.uniform(lo, hi)
    beta = rng.uniform(lo, hi)
    alpha = rng.uniform(max(0.0, 1.0 - 1.0 / eps), 1.0)
    gamma = rng.uniform(0.0, gamma_bound(delta, eps, species, d))
    gtil = rng.uniform(0.0, gamma_tilde_bound(beta, eps, species))
    return MixtureCouplingParams(delta=delta, beta=beta, alpha=alpha,
                                 gamma=gamma, gamma_tilde=gtil, epsilon=eps)


def random_positive_moments(rng, d, l):
    return make_moments(
        d, l, rng.uniform(0.05, 5.0), rng.normal(0, 1.5, size=d),
        rng.normal(0, 1.5, size=l), rng.uniform(0.02, 6.0), rng.uniform(0.02, 6.0),
    )


class TestClosureIdentities:
    """Momentum and energy exchange sums vanish; positivity on the admissible
    region.  These are the identities that make the cross terms conservative."""

    @pytest.mark.parametrize("masses,ls", [((1.0, 1.0), (2, 3)), ((1.0, 2.5), (3, 2)),
                                           ((0.4, 1.7), (1, 1))])
    def test_momentum_energy_sums_vanish(self, rng, masses, ls):
        sp = SpeciesParams(m=masses, l=ls, z_rot=(1.0, 1.0),
                           nu_intra=(0.8, 1.3), nu_cross_21=0.6)
        d = 2
        for _ in range(300):
            c = random_admissible(rng, sp, d)
            if not validate_coupling(c, sp, d).ok:
                continue
            m1 = random_positive_moments(rng, d, sp.l[0])
            m2 = random_positive_moments(rng, d, sp.l[1])
            ex = exchange_temperatures(m1, m2, c, sp, d)
            p1, p2 = exchange_momentum_gain(ex, m1, m2, c, sp)
            scale = np.abs(p1).max() + np.abs(p2).max() + 1e-30
            assert np.abs(p1 + p2).max() / scale < 1e-12
            e1, e2 = exchange_energy_gain(ex, m1, m2, c, sp, d)
            escale = np.abs(e1).max() + np.abs(e2).max() + 1e-30
            assert np.abs(e1 + e2).max() / escale < 1e-12

    def test_positivity_sweep_never_raises(self, rng, species):
        for _ in range(1000):
            c = random_admissible(rng, species, 1)
            m1 = random_positive_moments(rng, 1, 2)
            m2 = random_positive_moments(rng, 1, 3)
            ex = exchange_temperatures(m1, m2, c, species, d=1)
            for arr in (ex.lam_12, ex.lam_21, ex.theta_12, ex.theta_21, ex.t_12, ex.t_21):
                assert np.all(arr > 0)

    def test_outside_region_can_go_negative(self, species):
        # the added eps*(1-alpha) <= 1 constraint is sharp: violating it with
        # a cold species 1 and hot species 2 drives Lambda_21 negative
        c = coupling_with(epsilon=2.5, alpha=0.0, delta=1.0, beta=1.0)
        assert not validate_coupling(c, species, d=1).ok
        m1 = make_moments(1, 2, 1.0, [0.0], [0.0, 0.0], 0.01, 1.0)
        m2 = make_moments(1, 3, 1.0, [0.0], [0.0, 0.0, 0.0], 10.0, 1.0)
        with pytest.raises(NegativeTemperatureError):
            exchange_temperatures(m1, m2, c, species, d=1)
