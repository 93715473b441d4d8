import numpy as np
import pytest

from coevo import (
    ConfigError,
    InvalidBounds,
    InvalidPersistence,
    InvalidSize,
    NetworkKind,
    OpinionProfile,
    RelationNetwork,
    SimConfig,
    derive_stream,
    validate_config,
)


def make_cfg(**overrides):
    base = dict(
        n=10, epsilon=0.5, phi=0.1, p=2, network_kind=NetworkKind.COMPLETE, seed=0
    )
    base.update(overrides)
    return SimConfig(**base)


class TestValidateConfig:
    def test_reference_parameters_accepted(self):
        cfg = make_cfg()
        assert validate_config(cfg) is cfg

    def test_phi_equal_epsilon_rejected(self):
        with pytest.raises(InvalidBounds):
            validate_config(make_cfg(phi=0.5, epsilon=0.5))

    def test_phi_zero_rejected(self):
        with pytest.raises(InvalidBounds):
            validate_config(make_cfg(phi=0.0))

    def test_epsilon_above_one_rejected(self):
        with pytest.raises(InvalidBounds):
            validate_config(make_cfg(epsilon=1.5))

    def test_odd_community_rejected(self):
        with pytest.raises(InvalidSize):
            validate_config(make_cfg(n=9, network_kind=NetworkKind.COMMUNITY))

    def test_tiny_community_rejected(self):
        with pytest.raises(InvalidSize):
            validate_config(make_cfg(n=2, network_kind=NetworkKind.COMMUNITY))

    def test_scale_free_needs_more_than_seed_nodes(self):
        with pytest.raises(InvalidSize):
            validate_config(make_cfg(n=4, network_kind=NetworkKind.SCALE_FREE))
        validate_config(make_cfg(n=5, network_kind=NetworkKind.SCALE_FREE))

    def test_n_below_two_rejected(self):
        with pytest.raises(InvalidSize):
            validate_config(make_cfg(n=1))

    def test_persistence_below_two_rejected(self):
        with pytest.raises(InvalidPersistence):
            validate_config(make_cfg(p=1))

    def test_seed_range(self):
        with pytest.raises(ConfigError):
            validate_config(make_cfg(seed=-1))
        with pytest.raises(ConfigError):
            validate_config(make_cfg(seed=2**64))
        validate_config(make_cfg(seed=2**64 - 1))

    def test_max_steps_positive(self):
        with pytest.raises(ConfigError):
            validate_config(make_cfg(max_steps=0))

    def test_every_rejection_is_a_named_config_error(self):
        # validation is total: anything rejected maps onto the ConfigError tree
        bad = [
            make_cfg(n=0),
            make_cfg(phi=0.9),
            make_cfg(p=0),
            make_cfg(seed=-5),
            make_cfg(n=7, network_kind=NetworkKind.COMMUNITY),
            make_cfg(n=3, network_kind=NetworkKind.SCALE_FREE),
        ]
        for cfg in bad:
            with pytest.raises(ConfigError):
                validate_config(cfg)


class TestDeriveStream:
    def test_same_pair_same_draws(self):
        a = derive_stream(42, 0).random(100)
        b = derive_stream(42, 0).random(100)
        assert np.array_equal(a, b)

    def test_different_stream_ids_diverge(self):
        a = derive_stream(42, 0).random(100)
        b = derive_stream(42, 1).random(100)
        assert not np.array_equal(a, b)

    def test_call_site_independent(self):
        def site_one():
            return derive_stream(42, 7).random(50)

        def site_two():
            return derive_stream(42, 7).random(50)

        assert np.array_equal(site_one(), site_two())

    def test_rejects_out_of_range(self):
        with pytest.raises(ConfigError):
            derive_stream(-1, 0)
        with pytest.raises(ConfigError):
            derive_stream(0, 2**64)


class TestOpinionProfile:
    def test_valid(self):
        prof = OpinionProfile(np.array([0.0, 0.5, 1.0]), t=3)
        assert prof.n == 3
        assert prof.t == 3

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            OpinionProfile(np.array([0.2, 1.2]))
        with pytest.raises(ValueError):
            OpinionProfile(np.array([-0.1, 0.5]))

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            OpinionProfile(np.array([0.5]), t=-1)

    def test_frozen_array(self):
        prof = OpinionProfile(np.array([0.2, 0.8]))
        with pytest.raises(ValueError):
            prof.opinions[0] = 0.9

    def test_source_array_copied(self):
        src = np.array([0.2, 0.8])
        prof = OpinionProfile(src)
        src[0] = 0.0
        assert prof.opinions[0] == 0.2


class TestRelationNetwork:
    def test_valid(self):
        net = RelationNetwork(np.array([[0, 1], [1, 0]], dtype=bool))
        assert net.n == 2

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            RelationNetwork(np.array([[1, 0], [0, 0]], dtype=bool))

    def test_asymmetry_rejected(self):
        with pytest.raises(ValueError):
            RelationNetwork(np.array([[0, 1], [0, 0]], dtype=bool))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            RelationNetwork(np.zeros((2, 3), dtype=bool))

    def test_frozen_array(self):
        net = RelationNetwork(np.zeros((2, 2), dtype=bool))
        with pytest.raises(ValueError):
            net.adjacency[0, 1] = True
