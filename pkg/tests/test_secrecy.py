import math

import numpy as np
import pytest

from wiretapcodes import bitlinalg, capacity, codes, secrecy
from wiretapcodes.bitlinalg import BitMatrix
from wiretapcodes.channels import BEC, BIAWGN, BSC, bec_transmit, modulate


def repetition_pair(n=3):
    h = np.zeros((n - 1, n), dtype=np.uint8)
    for i in range(n - 1):
        h[i, i] = h[i, i + 1] = 1
    return codes.nested_pair_from_coarse(codes.from_parity_check(BitMatrix.from_dense(h)))


def random_pair(rng, n):
    rows = int(rng.integers(0, n + 1))
    h = BitMatrix.from_dense(rng.integers(0, 2, size=(rows, n), dtype=np.uint8))
    return codes.nested_pair_from_coarse(codes.from_parity_check(h))


def message(pair, idx):
    return np.array([(idx >> i) & 1 for i in range(pair.m)], dtype=np.uint8)


class TestEncodeDecode:
    def test_zero_coarse_code_is_identity_map(self):
        zero = codes.from_parity_check(BitMatrix.identity(4))
        pair = codes.nested_pair_from_coarse(zero)
        w = np.array([1, 0, 1, 1], dtype=np.uint8)
        cw = secrecy.encode(pair, w, np.random.default_rng(0))
        assert cw.dither.size == 0
        assert np.array_equal(cw.word, bitlinalg.mat_vec(pair.d, w))

    def test_zero_message_zero_dither(self):
        pair = repetition_pair()
        word = secrecy.coset_word(pair, [0, 0], [0])
        assert not word.any()

    def test_enumeration_covers_space(self):
        # 4 messages x 2 dithers hit all 8 words exactly once
        pair = repetition_pair()
        words = {
            bytes(secrecy.coset_word(pair, message(pair, w), [d]))
            for w in range(4)
            for d in range(2)
        }
        assert len(words) == 8

    def test_round_trip_exhaustive(self):
        pair = repetition_pair()
        rng = np.random.default_rng(1)
        for widx in range(pair.num_messages):
            w = message(pair, widx)
            cw = secrecy.encode(pair, w, rng)
            assert np.array_equal(secrecy.main_decode(pair, cw.word), w)
            assert np.array_equal(bitlinalg.mat_vec(pair.h1, cw.word), w)

    @pytest.mark.parametrize("seed", range(5))
    def test_round_trip_random_pairs(self, seed):
        rng = np.random.default_rng(600 + seed)
        pair = random_pair(rng, int(rng.integers(2, 13)))
        for widx in range(min(pair.num_messages, 16)):
            w = message(pair, widx)
            cw = secrecy.encode(pair, w, rng)
            assert np.array_equal(secrecy.main_decode(pair, cw.word), w)

    @pytest.mark.parametrize("seed", [41, 42])
    def test_round_trip_exhaustive_over_message_and_dither(self, seed):
        rng = np.random.default_rng(seed)
        pair = random_pair(rng, 6)
        for widx in range(pair.num_messages):
            w = message(pair, widx)
            for didx in range(1 << pair.coarse.k):
                dither = np.array(
                    [(didx >> i) & 1 for i in range(pair.coarse.k)], dtype=np.uint8
                )
                word = secrecy.coset_word(pair, w, dither)
                assert np.array_equal(secrecy.main_decode(pair, word), w)

    def test_full_space_coarse_has_empty_message(self):
        pair = codes.nested_pair_from_coarse(codes.from_parity_check(BitMatrix.zeros(1, 4)))
        cw = secrecy.encode(pair, np.zeros(0, dtype=np.uint8), np.random.default_rng(0))
        assert secrecy.main_decode(pair, cw.word).size == 0

    def test_wrong_message_length(self):
        with pytest.raises(ValueError, match="bits"):
            secrecy.encode(repetition_pair(), [1, 0, 1], np.random.default_rng(0))


class TestExactEquivocation:
    def test_all_erased_gives_full_message_entropy(self):
        pair = repetition_pair(4)
        assert secrecy.exact_equivocation_bec(pair, range(4)) == pair.m

    def test_nothing_erased(self):
        assert secrecy.exact_equivocation_bec(repetition_pair(), []) == 0

    def test_single_column_matches_brute_force(self):
        pair = repetition_pair()
        table = secrecy.brute_force_equivocation_bec(pair, 0.5)
        assert secrecy.exact_equivocation_bec(pair, [0]) == table.per_pattern[0b001]

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            secrecy.exact_equivocation_bec(repetition_pair(), [3])

    @pytest.mark.parametrize("seed", range(4))
    def test_rank_identity_all_patterns(self, seed):
        rng = np.random.default_rng(700 + seed)
        n = int(rng.integers(2, 11))
        pair = random_pair(rng, n)
        table = secrecy.brute_force_equivocation_bec(pair, 0.3)
        for pattern in range(1 << n):
            erased = [i for i in range(n) if (pattern >> i) & 1]
            assert table.per_pattern[pattern] == secrecy.exact_equivocation_bec(pair, erased)


class TestMonteCarloBec:
    def test_certain_erasure(self):
        pair = repetition_pair()
        est = secrecy.mc_equivocation_bec(pair, 1.0, 50, np.random.default_rng(0))
        assert est.value == pair.m / pair.n
        assert est.half_width == 0.0

    def test_no_erasure(self):
        est = secrecy.mc_equivocation_bec(repetition_pair(), 0.0, 50, np.random.default_rng(0))
        assert est.value == 0.0

    def test_matches_brute_force_average(self):
        rng = np.random.default_rng(5)
        pair = random_pair(rng, 8)
        eps = 0.35
        exact = secrecy.brute_force_equivocation_bec(pair, eps).average
        est = secrecy.mc_equivocation_bec(pair, eps, 4000, np.random.default_rng(9))
        assert est.value * pair.n == pytest.approx(exact, abs=4 * est.half_width * pair.n + 1e-9)

    def test_monotone_under_coupled_patterns(self):
        # nested erasure patterns (same uniforms, growing eps) cannot lose rank
        rng = np.random.default_rng(6)
        pair = random_pair(rng, 10)
        for _ in range(30):
            u = rng.random(pair.n)
            previous = 0
            for eps in (0.2, 0.5, 0.8):
                erased = np.nonzero(u < eps)[0]
                value = secrecy.exact_equivocation_bec(pair, erased)
                assert value >= previous
                previous = value

    def test_trials_validated(self):
        with pytest.raises(ValueError):
            secrecy.mc_equivocation_bec(repetition_pair(), 0.5, 0, np.random.default_rng(0))


class TestDegradationBounds:
    def test_awgn_matches_bec_run_bit_for_bit(self):
        rng = np.random.default_rng(7)
        pair = random_pair(rng, 12)
        snr = 0.465
        eps = 2 * float(capacity.q_function(math.sqrt(2 * snr)))
        a = secrecy.equivocation_lb_awgn(pair, snr, 200, np.random.default_rng(123))
        b = secrecy.mc_equivocation_bec(pair, eps, 200, np.random.default_rng(123))
        assert a.value == b.value and a.half_width == b.half_width
        assert a.method == "degradation-rank"

    def test_bsc_matches_bec_run_bit_for_bit(self):
        rng = np.random.default_rng(8)
        pair = random_pair(rng, 12)
        a = secrecy.equivocation_lb_bsc(pair, 0.21, 150, np.random.default_rng(5))
        b = secrecy.mc_equivocation_bec(pair, 0.42, 150, np.random.default_rng(5))
        assert a.value == b.value and a.half_width == b.half_width

    def test_extreme_snr_limits(self):
        pair = repetition_pair(4)
        high = secrecy.equivocation_lb_awgn(pair, 50.0, 100, np.random.default_rng(1))
        assert high.value == 0.0
        low = secrecy.equivocation_lb_awgn(pair, 1e-12, 100, np.random.default_rng(1))
        assert low.value == pytest.approx(pair.m / pair.n, abs=1e-6)

    def test_bsc_half_gives_full_rate(self):
        pair = repetition_pair(4)
        est = secrecy.equivocation_lb_bsc(pair, 0.5, 50, np.random.default_rng(2))
        assert est.value == pair.m / pair.n

    def test_parameter_validation(self):
        pair = repetition_pair()
        with pytest.raises(ValueError):
            secrecy.equivocation_lb_awgn(pair, 0.0, 10, np.random.default_rng(0))
        with pytest.raises(ValueError):
            secrecy.equivocation_lb_bsc(pair, 0.6, 10, np.random.default_rng(0))

    def test_borderline_operating_point_nearly_perfect_secrecy(self):
        # (4,6)-dual pair where the embedded erasure rate 0.335 satisfies the
        # typical-pair-threshold condition but not the BP-threshold one; the
        # rank estimate still sits within 0.02 of the full coarse rate.
        code = codes.regular_ldpc(3000, 4, 6, seed=13)
        pair = codes.nested_pair_from_coarse(codes.dual(code))
        est = secrecy.equivocation_lb_awgn(pair, 0.465, 1000, np.random.default_rng(6))
        assert est.value >= pair.rate - 0.02


class TestApproach1:
    def test_error_free_regime_hits_fano_ceiling(self):
        code = codes.regular_ldpc(510, 3, 6, seed=2)
        pair = codes.nested_pair_from_coarse(code)
        est = secrecy.approach1_equivocation_bound(pair, 3.0, 60, 100, np.random.default_rng(3))
        assert est.detail["word_error_rate"] == 0.0
        assert est.value == pytest.approx(1 - capacity.c_biawgn(3.0) - 1 / 510, abs=1e-12)
        assert est.method == "fano-bound"

    def test_bound_within_capacity_band(self):
        code = codes.regular_ldpc(510, 3, 6, seed=2)
        pair = codes.nested_pair_from_coarse(code)
        for snr in (0.4, 0.9, 2.0):
            est = secrecy.approach1_equivocation_bound(pair, snr, 40, 60, np.random.default_rng(4))
            assert 0.0 <= est.value <= 1 - capacity.c_biawgn(snr) + 1e-12

    def test_clamps_at_zero(self):
        pair = repetition_pair(6)
        est = secrecy.approach1_equivocation_bound(pair, 4.0, 10, 20, np.random.default_rng(5))
        assert est.value == 0.0

    def test_zero_snr_is_fully_noisy(self):
        pair = repetition_pair(3)
        est = secrecy.approach1_equivocation_bound(pair, 0.0, 10, 10, np.random.default_rng(6))
        assert est.detail["word_error_rate"] == 1.0
        assert est.value == pytest.approx(max(0.0, 1 - 1 / 3 - 1 / 3), abs=1e-12)


class TestPeeling:
    def test_no_erasures_valid_word(self):
        pair = repetition_pair()
        word, ok = secrecy.peeling_decode_bec(pair.coarse, modulate([1, 1, 1]))
        assert ok and word.tolist() == [1, 1, 1]

    def test_all_erased_fails(self):
        pair = repetition_pair()
        word, ok = secrecy.peeling_decode_bec(pair.coarse, np.zeros(3, dtype=np.int8))
        assert not ok and (word == -1).all()

    def test_single_erasure_forced_by_parity(self):
        code = codes.regular_ldpc(6, 2, 3, seed=0)
        cw = code.random_codeword(np.random.default_rng(11))
        z = modulate(cw).astype(np.int8)
        z[3] = 0
        word, ok = secrecy.peeling_decode_bec(code, z)
        assert ok and np.array_equal(word, cw)

    def test_inconsistent_input_reported(self):
        pair = repetition_pair()
        # 010 is not a repetition codeword and nothing is erased
        word, ok = secrecy.peeling_decode_bec(pair.coarse, modulate([0, 1, 0]))
        assert not ok
        assert word.tolist() == [0, 1, 0]  # unerased positions untouched

    def test_threshold_behaviour_at_n_10k(self):
        code = codes.regular_ldpc(10_000, 3, 6, seed=20)
        x = modulate(np.zeros(10_000, dtype=np.uint8)).astype(np.int8)
        outcomes = {}
        for eps in (0.40, 0.46):
            rng = np.random.default_rng(77)
            ok_count = 0
            for _ in range(200):
                _, ok = secrecy.peeling_decode_bec(code, bec_transmit(x, eps, rng))
                ok_count += ok
            outcomes[eps] = ok_count / 200
        assert outcomes[0.40] >= 0.99  # below threshold 0.4294
        assert outcomes[0.46] <= 0.10  # above threshold


class TestBpDecode:
    def test_noiseless_llrs_succeed_instantly(self):
        code = codes.regular_ldpc(30, 3, 6, seed=1)
        cw = code.random_codeword(np.random.default_rng(0))
        llr = 50.0 * (1.0 - 2.0 * cw)
        bits, ok = secrecy.bp_decode_awgn(code, llr, 0)
        assert ok and np.array_equal(bits, cw)

    def test_all_zero_llrs_fail(self):
        code = codes.regular_ldpc(30, 3, 6, seed=1)
        bits, ok = secrecy.bp_decode_awgn(code, np.zeros(30), 50)
        assert not ok

    def test_high_snr_ensemble_success(self):
        from wiretapcodes.channels import awgn_llr, biawgn_transmit

        code = codes.regular_ldpc(10_002, 4, 6, seed=8)
        x = modulate(np.zeros(10_002, dtype=np.uint8))
        rng = np.random.default_rng(5)
        successes = 0
        for _ in range(100):
            z = biawgn_transmit(x, 2.0, rng)
            bits, ok = secrecy.bp_decode_awgn(code, awgn_llr(z, 2.0), 200)
            successes += ok and not bits.any()
        assert successes >= 99


class TestBruteForce:
    def test_full_space_coarse_has_no_secret(self):
        pair = codes.nested_pair_from_coarse(codes.from_parity_check(BitMatrix.zeros(1, 4)))
        table = secrecy.brute_force_equivocation_bec(pair, 0.7)
        assert table.average == 0.0
        assert not table.per_pattern.any()

    def test_certain_erasure_average(self):
        pair = repetition_pair(4)
        table = secrecy.brute_force_equivocation_bec(pair, 1.0)
        assert table.average == pair.m

    def test_bsc_extremes(self):
        pair = repetition_pair()
        assert secrecy.brute_force_equivocation_bsc(pair, 0.0) == 0.0
        assert secrecy.brute_force_equivocation_bsc(pair, 0.5) == pytest.approx(pair.m, abs=1e-9)

    def test_bsc_between_bec_bounds(self):
        # degrading to BEC(2q) can only lose information about the message
        rng = np.random.default_rng(12)
        pair = random_pair(rng, 8)
        q = 0.2
        exact = secrecy.brute_force_equivocation_bsc(pair, q)
        lower = secrecy.brute_force_equivocation_bec(pair, 2 * q).average
        assert exact >= lower - 1e-9
        assert exact <= pair.m + 1e-9

    def test_dispatch(self):
        pair = repetition_pair()
        assert isinstance(
            secrecy.brute_force_equivocation(pair, BEC(0.5)), secrecy.BecEquivocationTable
        )
        assert isinstance(secrecy.brute_force_equivocation(pair, BSC(0.1)), float)
        with pytest.raises(ValueError, match="continuous"):
            secrecy.brute_force_equivocation(pair, BIAWGN(1.0))

    def test_size_limits(self):
        pair = repetition_pair(13)
        with pytest.raises(ValueError, match="n <= 12"):
            secrecy.brute_force_equivocation_bec(pair, 0.5)
        pair11 = repetition_pair(11)
        with pytest.raises(ValueError, match="n <= 10"):
            secrecy.brute_force_equivocation_bsc(pair11, 0.1)
