"""Sum-product decoder behaviour, subset selection, and trial outcomes."""

import numpy as np
import pytest

from keyrec.blockmds import construct_block_mds, sample_set
from keyrec.channel import ChannelModel, gen_key, posteriors, transmit
from keyrec.decoder import (
    DecoderConfig,
    SumProductDecoder,
    block_reliability,
    decode_bp,
    fc_evaluate,
    msc_select,
    run_trial,
    sc_evaluate,
)
from keyrec.gf import FieldSpec
from keyrec.qcldpc import PowerMatrix, QcCode, ScalingMatrix, SparseParityCheck, expand
from oracles import all_block_subsets, brute_force_posteriors

GF2 = FieldSpec(1)
GF4 = FieldSpec(2)
GF8 = FieldSpec(3)


def near_point_mass(x, q, weight=1e-9):
    P = np.full((len(x), q), weight / (q - 1))
    P[np.arange(len(x)), x] = 1.0 - weight
    return P


class TestConfig:
    def test_defaults(self):
        cfg = DecoderConfig()
        assert cfg.max_iterations == 100
        assert cfg.epsilon == 1e-12

    def test_validation(self):
        with pytest.raises(ValueError):
            DecoderConfig(max_iterations=0)
        with pytest.raises(ValueError):
            DecoderConfig(epsilon=0.1)
        with pytest.raises(ValueError):
            DecoderConfig(schedule="layered")


class TestDecodeBp:
    def test_point_mass_converges_at_iteration_zero(self):
        code = QcCode(GF8, PowerMatrix(np.array([[0, 1], [2, 0]]), 4),
                      ScalingMatrix(np.array([[1, 3], [2, 5]])))
        H = expand(code)
        x = gen_key(H.n_cols, 8, np.random.default_rng(0))
        res = decode_bp(H, H.syndrome(x), near_point_mass(x, 8))
        assert res.converged and res.iterations == 0
        assert np.array_equal(res.hard, x)

    def test_parity_forces_equality(self):
        H = SparseParityCheck.from_rows(GF2, 2, [[(0, 1), (1, 1)]])
        priors = np.array([[0.5, 0.5], [0.001, 0.999]])
        res = decode_bp(H, np.zeros(1, dtype=np.uint8), priors)
        assert res.beliefs[0, 1] > 0.99
        assert res.hard.tolist() == [1, 1]

    @pytest.mark.parametrize("seed", range(6))
    def test_tree_beliefs_match_enumeration(self, seed):
        # 4 variables, 3 checks over GF(4), cycle-free (a path), q^N = 256.
        rng = np.random.default_rng(seed)
        rows = [
            [(0, int(rng.integers(1, 4))), (1, int(rng.integers(1, 4)))],
            [(1, int(rng.integers(1, 4))), (2, int(rng.integers(1, 4)))],
            [(2, int(rng.integers(1, 4))), (3, int(rng.integers(1, 4)))],
        ]
        H = SparseParityCheck.from_rows(GF4, 4, rows)
        priors = rng.random((4, 4)) + 0.05
        priors /= priors.sum(axis=1, keepdims=True)
        x = gen_key(4, 4, rng)
        synd = H.syndrome(x)
        res = decode_bp(H, synd, priors, DecoderConfig(max_iterations=12, early_stop=False))
        expected = brute_force_posteriors(H, synd, priors)
        assert np.abs(res.beliefs - expected).max() < 1e-6

    def test_beliefs_stay_row_stochastic(self):
        rng = np.random.default_rng(7)
        code = QcCode(GF8, PowerMatrix(rng.integers(0, 5, (2, 3)), 5),
                      ScalingMatrix(rng.integers(1, 8, (2, 3))))
        H = expand(code)
        x = gen_key(H.n_cols, 8, rng)
        y = transmit(x, ChannelModel(8, 0.3), rng)
        res = decode_bp(H, H.syndrome(x), posteriors(y, ChannelModel(8, 0.3)),
                        DecoderConfig(max_iterations=30, early_stop=False))
        assert np.abs(res.beliefs.sum(axis=1) - 1.0).max() < 1e-9
        assert res.beliefs.min() >= 0

    def test_input_validation(self):
        H = SparseParityCheck.from_rows(GF2, 2, [[(0, 1), (1, 1)]])
        with pytest.raises(ValueError):
            decode_bp(H, np.zeros(2, dtype=np.uint8), np.full((2, 2), 0.5))
        with pytest.raises(ValueError):
            decode_bp(H, np.zeros(1, dtype=np.uint8), np.full((3, 2), 0.5))
        bad = np.array([[0.9, 0.3], [0.5, 0.5]])
        with pytest.raises(ValueError):
            decode_bp(H, np.zeros(1, dtype=np.uint8), bad)

    def test_scaling_equivariance(self):
        # Multiplying the truth by a nonzero constant c scales the syndrome
        # by c and permutes each prior row; beliefs must permute to match.
        rng = np.random.default_rng(3)
        code = QcCode(GF8, PowerMatrix(rng.integers(0, 7, (2, 3)), 7),
                      ScalingMatrix(rng.integers(1, 8, (2, 3))))
        H = expand(code)
        cfg = DecoderConfig(max_iterations=8, early_stop=False)
        x = gen_key(H.n_cols, 8, rng)
        y = transmit(x, ChannelModel(8, 0.25), rng)
        priors = posteriors(y, ChannelModel(8, 0.25))
        base = decode_bp(H, H.syndrome(x), priors, cfg)
        c = 5
        perm = GF8.mul_table[c, np.arange(8)]  # s -> c*s
        priors_c = np.zeros_like(priors)
        priors_c[:, perm] = priors
        scaled = decode_bp(H, GF8.mul_table[c, H.syndrome(x)], priors_c, cfg)
        assert np.allclose(scaled.beliefs[:, perm], base.beliefs, atol=1e-12)

    def test_undetected_error_possible(self):
        # Syndrome-consistent but wrong word: point-mass priors at a word
        # in the same coset as the truth converge immediately to that word.
        H = expand(QcCode(GF2, PowerMatrix(np.array([[0, 1]]), 3),
                          ScalingMatrix(np.array([[1, 1]]))))
        x = np.array([1, 0, 1, 0, 1, 0], dtype=np.uint8)
        synd = H.syndrome(x)
        # Add a nonzero codeword (H w = 0) to x.
        w = np.array([1, 1, 1, 1, 1, 1], dtype=np.uint8)
        assert not H.syndrome(w).any()
        other = x ^ w
        res = decode_bp(H, synd, near_point_mass(other, 2))
        assert res.converged
        assert not fc_evaluate(res.hard, x)


class TestEvaluation:
    def test_fc_examples(self):
        a = np.array([1, 2, 3], dtype=np.uint8)
        assert fc_evaluate(a, a.copy())
        b = a.copy()
        b[1] ^= 4
        assert not fc_evaluate(a, b)
        with pytest.raises(ValueError):
            fc_evaluate(a, np.array([1, 2], dtype=np.uint8))

    def test_sc_examples(self):
        hard = np.array([1, 2, 3, 4], dtype=np.uint8)
        truth = np.array([1, 9, 3, 9], dtype=np.uint8)
        assert sc_evaluate(hard, truth, np.array([], dtype=np.int64))
        assert sc_evaluate(hard, truth, np.array([0, 2]))
        assert not sc_evaluate(hard, truth, np.array([0, 1]))
        assert sc_evaluate(hard, truth, np.arange(4)) == fc_evaluate(hard, truth)


class TestBlockReliability:
    def test_point_masses_give_one(self):
        beliefs = np.zeros((6, 8))
        beliefs[np.arange(6), [0, 3, 5, 1, 2, 7]] = 1.0
        assert block_reliability(beliefs, 1, 3) == 1.0
        assert block_reliability(beliefs, 2, 3) == 1.0

    def test_uniform_symbol_dominates(self):
        beliefs = np.zeros((3, 8))
        beliefs[[0, 2], [4, 6]] = 1.0
        beliefs[1] = 1.0 / 8
        assert block_reliability(beliefs, 1, 3) == pytest.approx(0.125)

    def test_matches_direct_recomputation(self):
        rng = np.random.default_rng(0)
        beliefs = rng.random((12, 8))
        beliefs /= beliefs.sum(axis=1, keepdims=True)
        for b in range(1, 5):
            expected = min(beliefs[i].max() for i in range((b - 1) * 3, b * 3))
            assert block_reliability(beliefs, b, 3) == pytest.approx(expected)


class TestMscSelect:
    def test_uniform_block_excluded(self):
        z, kappa = 3, 4
        beliefs = np.zeros((z * kappa, 8))
        beliefs[np.arange(z * kappa), 2] = 1.0
        beliefs[3:6] = 1.0 / 8  # block 2 is uninformative
        kept, excluded = msc_select(beliefs, 1, kappa, z)
        assert excluded == (2,)
        assert kept.tolist() == [0, 1, 2, 6, 7, 8, 9, 10, 11]

    def test_tie_break_excludes_lowest_indices(self):
        beliefs = np.full((8, 8), 1.0 / 8)
        kept, excluded = msc_select(beliefs, 2, 4, 2)
        assert excluded == (1, 2)
        assert kept.tolist() == [4, 5, 6, 7]

    def test_matches_exhaustive_subset_search(self):
        rng = np.random.default_rng(5)
        gamma, kappa, z = 3, 5, 4
        beliefs = rng.random((kappa * z, 8))
        beliefs /= beliefs.sum(axis=1, keepdims=True)
        kept, excluded = msc_select(beliefs, gamma, kappa, z)
        rels = {b: block_reliability(beliefs, b, z) for b in range(1, kappa + 1)}
        best = min(
            all_block_subsets(kappa, gamma),
            key=lambda subset: (sum(rels[b] for b in subset), subset),
        )
        assert excluded == best

    def test_kept_size(self):
        beliefs = np.full((20, 8), 1.0 / 8)
        kept, excluded = msc_select(beliefs, 2, 5, 4)
        assert len(kept) == (5 - 2) * 4


@pytest.fixture(scope="module")
def small_code():
    return construct_block_mds(GF8, 2, 4, 11, 6, np.random.default_rng(8))


class TestRunTrial:

    def test_noiseless_trial(self, small_code):
        out = run_trial(small_code, ChannelModel(8, 0.0), DecoderConfig(), np.random.default_rng(0))
        assert out.converged and out.fc_success and out.msc_success
        assert out.iterations == 0

    def test_outcome_invariants_under_noise(self, small_code):
        decoder = SumProductDecoder(expand(small_code), DecoderConfig(max_iterations=6))
        for seed in range(60):
            out = run_trial(
                small_code,
                ChannelModel(8, 0.35),
                DecoderConfig(max_iterations=6),
                np.random.default_rng(seed),
                decoder=decoder,
                record_per_subset=True,
            )
            assert not out.fc_success or out.msc_success
            if out.fc_success:
                assert all(out.per_subset_success.values())
            assert len(out.msc_excluded) == small_code.gamma
            # The selected subset's verdict matches the per-subset record.
            assert out.per_subset_success[out.msc_excluded] == out.msc_success

    def test_errors_only_in_excluded_blocks(self, small_code):
        # Force a wrong symbol inside an excluded block: subset success
        # with full-word failure.
        z = small_code.z
        truth = gen_key(small_code.n, 8, np.random.default_rng(1))
        hard = truth.copy()
        hard[0] ^= 3  # block 1
        kept = sample_set((2, 3, 4), z)
        assert sc_evaluate(hard, truth, kept)
        assert not fc_evaluate(hard, truth)
