import numpy as np
import pytest

from spincorr import (
    PRNG_IDENTITY,
    Counts,
    DetectorSettings,
    ModelKind,
    ModelSpec,
    RunConfig,
    SettingsQuad,
    TrialBatch,
    make_rng,
    plus_product_probability,
    run_experiment,
    run_quad,
    sample_pairs,
)

QUANTUM = ModelSpec(ModelKind.QUANTUM_SINGLET)
NONLOCAL = ModelSpec(ModelKind.NONLOCAL_STOCHASTIC)
LOCAL = ModelSpec(ModelKind.LOCAL_LINEAR)

SETTINGS = DetectorSettings.from_degrees(30.0, 0.0)
QUAD = SettingsQuad.from_degrees(0.0, 90.0, 45.0, 135.0)


def tally(r_a: np.ndarray, r_b: np.ndarray) -> Counts:
    return Counts(
        int(np.sum((r_a == 1) & (r_b == 1))),
        int(np.sum((r_a == 1) & (r_b == -1))),
        int(np.sum((r_a == -1) & (r_b == 1))),
        int(np.sum((r_a == -1) & (r_b == -1))),
    )


class TestMakeRng:
    def test_identity_string(self):
        assert PRNG_IDENTITY == "numpy-pcg64-seedseq"

    def test_same_seed_same_stream(self):
        assert make_rng(42).random(4).tolist() == make_rng(42).random(4).tolist()

    def test_seed_validation(self):
        for bad in (-1, 2**64):
            with pytest.raises(ValueError):
                make_rng(bad)
        for bad in (1.5, "7", True):
            with pytest.raises(TypeError):
                make_rng(bad)

    def test_u64_boundary_accepted(self):
        make_rng(0)
        make_rng(2**64 - 1)


class TestCounts:
    def test_totals(self):
        c = Counts(3, 4, 5, 6)
        assert c.n == 18
        assert c.m == 9

    def test_addition(self):
        assert Counts(1, 2, 3, 4) + Counts(4, 3, 2, 1) == Counts(5, 5, 5, 5)

    def test_validation(self):
        with pytest.raises(ValueError):
            Counts(-1, 0, 0, 0)
        with pytest.raises(TypeError):
            Counts(1.0, 0, 0, 0)
        with pytest.raises(TypeError):
            Counts(True, 0, 0, 0)


class TestTrialBatch:
    def test_rejects_empty_counts(self):
        with pytest.raises(ValueError):
            TrialBatch(SETTINGS, QUANTUM, 1, Counts(0, 0, 0, 0))

    def test_rejects_wrong_types(self):
        with pytest.raises(TypeError):
            TrialBatch(SETTINGS, "quantum", 1, Counts(1, 0, 0, 0))
        with pytest.raises(TypeError):
            TrialBatch(SETTINGS, QUANTUM, 1, (1, 0, 0, 0))


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            RunConfig(QUANTUM, SETTINGS, 0, 1)
        with pytest.raises(ValueError):
            RunConfig(QUANTUM, SETTINGS, 10, -3)
        with pytest.raises(TypeError):
            RunConfig(QUANTUM, (0.0, 30.0), 10, 1)


class TestRunExperiment:
    @pytest.mark.parametrize("model", (QUANTUM, NONLOCAL, LOCAL), ids=lambda m: m.name)
    def test_matches_direct_sampling(self, model):
        config = RunConfig(model, SETTINGS, 1_000, 3)
        batch = run_experiment(config)
        expected = tally(*sample_pairs(model, SETTINGS, 1_000, make_rng(3)))
        assert batch.counts == expected
        assert batch.counts.n == 1_000
        assert batch.seed == 3
        assert batch.model is model

    def test_deterministic(self):
        config = RunConfig(QUANTUM, SETTINGS, 20_000, 9)
        assert run_experiment(config) == run_experiment(config)

    def test_certain_outcomes(self):
        aligned = DetectorSettings.from_degrees(0.0, 0.0)
        batch = run_experiment(RunConfig(QUANTUM, aligned, 1_000, 6))
        assert batch.counts.m == 0

        opposite = DetectorSettings.from_degrees(180.0, 0.0)
        batch = run_experiment(RunConfig(NONLOCAL, opposite, 1_000, 6))
        assert batch.counts.m == 1_000

    def test_square_angle_splits_evenly_at_scale(self):
        square = DetectorSettings.from_degrees(90.0, 0.0)
        batch = run_experiment(RunConfig(QUANTUM, square, 1_000_000, 42))
        assert abs(batch.counts.m / batch.counts.n - 0.5) <= 0.005

    def test_internal_blocking_is_stream_transparent(self):
        # n larger than the internal block size must tally the same stream
        n = 600_000
        config = RunConfig(QUANTUM, SETTINGS, n, 12)
        batch = run_experiment(config)
        expected = tally(*sample_pairs(QUANTUM, SETTINGS, n, make_rng(12)))
        assert batch.counts == expected

    def test_rejects_quad_settings(self):
        with pytest.raises(TypeError):
            run_experiment(RunConfig(QUANTUM, QUAD, 10, 1))

    def test_chunked_mode_is_deterministic_and_complete(self):
        config = RunConfig(QUANTUM, SETTINGS, 10_000, 5)
        a = run_experiment(config, chunk_size=3_000)
        b = run_experiment(config, chunk_size=3_000)
        assert a == b
        assert a.counts.n == 10_000

    def test_chunked_mode_uses_different_variates(self):
        config = RunConfig(QUANTUM, SETTINGS, 10_000, 5)
        assert run_experiment(config, chunk_size=3_000).counts != run_experiment(config).counts

    def test_chunk_size_validation(self):
        config = RunConfig(QUANTUM, SETTINGS, 10, 1)
        for bad in (0, -2, True):
            with pytest.raises(ValueError):
                run_experiment(config, chunk_size=bad)


class TestRunQuad:
    def test_batches_follow_pairs_order_with_xored_seeds(self):
        config = RunConfig(QUANTUM, QUAD, 2_000, 40)
        batches = run_quad(config)
        assert len(batches) == 4
        for k, (batch, pair) in enumerate(zip(batches, QUAD.pairs())):
            assert batch.settings == pair
            assert batch.seed == 40 ^ k
            solo = run_experiment(RunConfig(QUANTUM, pair, 2_000, 40 ^ k))
            assert batch == solo

    def test_rejects_single_settings(self):
        with pytest.raises(TypeError):
            run_quad(RunConfig(QUANTUM, SETTINGS, 10, 1))

    def test_degenerate_quad_never_agrees(self):
        quad = SettingsQuad.from_degrees(0.0, 0.0, 0.0, 0.0)
        for batch in run_quad(RunConfig(QUANTUM, quad, 100, 51)):
            assert batch.counts.m == 0

    def test_standard_quad_plus_fractions_track_the_distribution(self):
        batches = run_quad(RunConfig(QUANTUM, QUAD, 1_000_000, 52))
        for batch in batches:
            expected = plus_product_probability(batch.settings.delta)
            assert abs(batch.counts.m / batch.counts.n - expected) <= 0.005

    def test_different_seeds_give_different_counts(self):
        base = DetectorSettings.from_degrees(90.0, 0.0)
        counts = [
            run_experiment(RunConfig(QUANTUM, base, 10_000, seed)).counts for seed in (1, 2, 3)
        ]
        assert counts[0] != counts[1]
        assert counts[1] != counts[2]
