"""Coset encoding and equivocation estimation for nested wiretap codes.

The encoder hides an ``m``-bit message as a uniformly random member of the
message's coset; the noiseless main channel recovers it with one syndrome
multiply.  The eavesdropper-side machinery estimates how much of the
message survives:

* On a BEC the conditional message entropy given an erasure pattern is
  *exact*: the transmitted word is uniform on a coset, so the message
  ``w = h1 @ x`` given the unerased positions is uniform on an affine image
  and its entropy equals the GF(2) rank of ``h1`` restricted to the erased
  columns.  Monte Carlo over patterns averages these exact per-pattern
  values.
* For AWGN and BSC eavesdroppers the BEC-embedding degradations make the
  same rank average a lower bound on the true equivocation rate (the
  message, the embedded BEC output, and the final observation form a Markov
  chain).
* When the coarse code itself is the good code, a Fano argument converts
  the eavesdropper's measured in-coset word-error rate into an equivocation
  lower bound.

A brute-force joint-distribution oracle for tiny block lengths validates
the rank identity.  Per-trial work is independent given per-trial
generators; estimates aggregate by pure reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bitlinalg
from ._kernels import rank_words
from .capacity import c_biawgn
from .channels import (
    BEC,
    BIAWGN,
    BSC,
    ChannelModel,
    awgn_llr,
    biawgn_transmit,
    erasure_rate_for_snr,
    modulate,
)
from .codes import NestedCodePair
from .decoders import bp_decode_awgn, peeling_decode_bec  # re-exported decoders
from .thresholds import wilson_interval

__all__ = [
    "CosetCodeword",
    "EquivocationEstimate",
    "BecEquivocationTable",
    "encode",
    "coset_word",
    "main_decode",
    "exact_equivocation_bec",
    "mc_equivocation_bec",
    "equivocation_lb_awgn",
    "equivocation_lb_bsc",
    "approach1_equivocation_bound",
    "brute_force_equivocation",
    "brute_force_equivocation_bec",
    "brute_force_equivocation_bsc",
    "peeling_decode_bec",
    "bp_decode_awgn",
]

_Z95 = 1.96
_BRUTE_FORCE_BEC_LIMIT = 12
_BRUTE_FORCE_BSC_LIMIT = 10


@dataclass(frozen=True)
class CosetCodeword:
    """An encoded transmission: message, dither, and the channel word."""

    message: np.ndarray
    dither: np.ndarray
    word: np.ndarray


@dataclass(frozen=True)
class EquivocationEstimate:
    """Equivocation-rate estimate in bits per channel use.

    ``value`` is the (normalized) estimate, ``half_width`` the reported
    confidence half-width at 95%, and ``method`` one of ``exact-rank``,
    ``degradation-rank``, ``fano-bound``, ``brute-force``.
    """

    value: float
    half_width: float
    trials: int
    method: str
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0 or self.half_width < 0.0:
            raise ValueError(
                f"invalid estimate ({self.value}, +-{self.half_width})"
            )


def coset_word(pair: NestedCodePair, message, dither) -> np.ndarray:
    """The codeword selected inside coset ``message`` by ``dither``:
    ``d @ w  xor  dither @ g1``."""
    w = np.asarray(message, dtype=np.uint8)
    if w.shape != (pair.m,):
        raise ValueError(f"message must have {pair.m} bits, got {w.shape}")
    dith = np.asarray(dither, dtype=np.uint8)
    if dith.shape != (pair.coarse.k,):
        raise ValueError(f"dither must have {pair.coarse.k} bits, got {dith.shape}")
    x = bitlinalg.mat_vec(pair.d, w)
    if pair.coarse.k:
        x ^= bitlinalg.vec_mat(dith, pair.coarse.g)
    return x


def encode(pair: NestedCodePair, message, rng: np.random.Generator) -> CosetCodeword:
    """Encode a message as a uniformly random member of its coset."""
    w = np.asarray(message, dtype=np.uint8)
    if w.shape != (pair.m,):
        raise ValueError(f"message must have {pair.m} bits, got {w.shape}")
    dither = rng.integers(0, 2, size=pair.coarse.k, dtype=np.uint8)
    return CosetCodeword(w.copy(), dither, coset_word(pair, w, dither))


def main_decode(pair: NestedCodePair, received) -> np.ndarray:
    """Recover the message from a noiseless observation: ``h1 @ y``."""
    y = np.asarray(received, dtype=np.uint8)
    if y.shape != (pair.n,):
        raise ValueError(f"received word must have {pair.n} bits, got {y.shape}")
    return bitlinalg.mat_vec(pair.h1, y)


def _erased_rank(pair: NestedCodePair, erased_idx: np.ndarray) -> int:
    if erased_idx.size == 0 or pair.m == 0:
        return 0
    sub = pair._h1_columns.words[erased_idx]
    return int(rank_words(np.ascontiguousarray(sub), pair.m))


def exact_equivocation_bec(pair: NestedCodePair, erased) -> int:
    """Exact message equivocation H(W | Z) in bits for one erasure pattern.

    Equals the rank of the coarse parity-check matrix restricted to the
    erased columns; at most ``min(m, |erased|)``.
    """
    idx = np.asarray(sorted(set(int(i) for i in erased)), dtype=np.int64)
    if idx.size and (idx[0] < 0 or idx[-1] >= pair.n):
        raise ValueError(f"erased positions must lie in 0..{pair.n - 1}")
    return _erased_rank(pair, idx)


def mc_equivocation_bec(
    pair: NestedCodePair,
    erasure_prob: float,
    trials: int,
    rng: np.random.Generator,
) -> EquivocationEstimate:
    """Monte Carlo equivocation rate over i.i.d. BEC erasure patterns.

    Each trial's conditional entropy is exact (rank identity); only the
    pattern average is sampled.  The half-width is the 95% normal interval
    of the per-trial ranks, normalized by the block length.
    """
    if not 0.0 <= erasure_prob <= 1.0:
        raise ValueError(f"erasure probability {erasure_prob} outside [0, 1]")
    if trials < 1:
        raise ValueError("trials must be positive")
    ranks = np.empty(trials, dtype=np.float64)
    for t in range(trials):
        erased = np.nonzero(rng.random(pair.n) < erasure_prob)[0]
        ranks[t] = _erased_rank(pair, erased)
    mean = float(ranks.mean())
    sd = float(ranks.std(ddof=1)) if trials > 1 else 0.0
    return EquivocationEstimate(
        value=mean / pair.n,
        half_width=_Z95 * sd / math.sqrt(trials) / pair.n,
        trials=trials,
        method="exact-rank",
        detail={"erasure_prob": erasure_prob, "n": pair.n, "m": pair.m},
    )


def equivocation_lb_awgn(
    pair: NestedCodePair,
    snr: float,
    trials: int,
    rng: np.random.Generator,
) -> EquivocationEstimate:
    """Equivocation lower bound for an AWGN eavesdropper at the given SNR.

    Runs the BEC rank estimator at the embedded erasure rate
    ``2*Q(sqrt(2*snr))``; by data processing through the degradation this
    lower-bounds the AWGN equivocation rate.  Produces bit-identical values
    to ``mc_equivocation_bec`` at that erasure rate for the same generator
    state.
    """
    if snr <= 0:
        raise ValueError("snr must be positive")
    eps = erasure_rate_for_snr(snr)
    base = mc_equivocation_bec(pair, eps, trials, rng)
    return EquivocationEstimate(
        value=base.value,
        half_width=base.half_width,
        trials=trials,
        method="degradation-rank",
        detail={**base.detail, "snr": snr},
    )


def equivocation_lb_bsc(
    pair: NestedCodePair,
    crossover_prob: float,
    trials: int,
    rng: np.random.Generator,
) -> EquivocationEstimate:
    """Equivocation lower bound for a BSC eavesdropper: the BEC rank
    estimator at the embedded erasure rate ``2q``."""
    if not 0.0 <= crossover_prob <= 0.5:
        raise ValueError(f"crossover probability {crossover_prob} outside [0, 1/2]")
    base = mc_equivocation_bec(pair, 2.0 * crossover_prob, trials, rng)
    return EquivocationEstimate(
        value=base.value,
        half_width=base.half_width,
        trials=trials,
        method="degradation-rank",
        detail={**base.detail, "crossover_prob": crossover_prob},
    )


def approach1_equivocation_bound(
    pair: NestedCodePair,
    snr: float,
    trials: int,
    max_bp_iters: int,
    rng: np.random.Generator,
) -> EquivocationEstimate:
    """Fano-based equivocation bound when the coarse code is the good code.

    Measures the eavesdropper's word-error rate when decoding the coset
    word given the message: the observation is translated by the coset
    leader so plain sum-product decoding on the coarse code applies (a code
    and its cosets share distance properties).  With measured error rate
    ``p`` the reported bound is

        max(0, 1 - c_biawgn(snr) - 1/n - p * R1),

    keeping the finite-length 1/n Fano term explicit.  The half-width is
    the Wilson half-width of ``p`` scaled by ``R1``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if snr < 0:
        raise ValueError("snr must be nonnegative")
    n = pair.n
    r1 = pair.coarse.rate
    errors = 0
    for _ in range(trials):
        w = rng.integers(0, 2, size=pair.m, dtype=np.uint8)
        sent = encode(pair, w, rng)
        leader = bitlinalg.mat_vec(pair.d, w)
        z = biawgn_transmit(modulate(sent.word), snr, rng)
        # Translating by the known coset leader turns in-coset decoding
        # into decoding the coarse codeword dither @ g1.
        llr = awgn_llr(z, snr) * (1.0 - 2.0 * leader.astype(np.float64))
        target = sent.word ^ leader
        bits, ok = bp_decode_awgn(pair.coarse, llr, max_bp_iters)
        if not ok or not np.array_equal(bits, target):
            errors += 1
    p_hat = errors / trials
    w_lo, w_hi = wilson_interval(errors, trials)
    capacity = c_biawgn(snr)
    bound = max(0.0, 1.0 - capacity - 1.0 / n - p_hat * r1)
    return EquivocationEstimate(
        value=bound,
        half_width=(w_hi - w_lo) / 2.0 * r1,
        trials=trials,
        method="fano-bound",
        detail={
            "snr": snr,
            "capacity": capacity,
            "word_error_rate": p_hat,
            "wer_wilson": (w_lo, w_hi),
            "coarse_rate": r1,
            "n": n,
        },
    )


def _message_table(pair: NestedCodePair) -> np.ndarray:
    """messages[x] = integer value of h1 @ x for every n-bit word x."""
    n, m = pair.n, pair.m
    xs = np.arange(1 << n, dtype=np.int64)
    h1 = pair.h1.to_dense()
    w_int = np.zeros(1 << n, dtype=np.int64)
    for i in range(m):
        row_mask = int(sum(1 << j for j in np.nonzero(h1[i])[0]))
        bit = np.bitwise_count(xs & row_mask).astype(np.int64) & 1
        w_int |= bit << i
    return w_int


def _conditional_entropy(keys: np.ndarray, w_int: np.ndarray) -> float:
    """H(W | K) in bits for the uniform joint sample (keys, w_int).

    H = sum over (k, w) cells of P(k, w) * log2(P(k) / P(k, w)); with the
    uniform sample the probabilities are cell counts over the total.
    """
    total = keys.size
    joint = (keys.astype(np.int64) << 32) | w_int
    _, cell_first, cell_cnt = np.unique(joint, return_index=True, return_counts=True)
    _, key_inverse, key_cnt = np.unique(keys, return_inverse=True, return_counts=True)
    k_of_cell = key_cnt[key_inverse[cell_first]].astype(np.float64)
    c = cell_cnt.astype(np.float64)
    return float(np.sum(c / total * (np.log2(k_of_cell) - np.log2(c))))


@dataclass(frozen=True)
class BecEquivocationTable:
    """Exhaustive BEC equivocation: one entry per erasure pattern bitmask,
    plus the erasure-probability-weighted average."""

    per_pattern: np.ndarray
    average: float
    erasure_prob: float


def brute_force_equivocation_bec(
    pair: NestedCodePair, erasure_prob: float
) -> BecEquivocationTable:
    """Exact H(W | Z) by joint enumeration, for every erasure pattern.

    Enumerates all transmitted words and groups them by the unerased
    observation; entry ``p`` of the table is the conditional entropy for
    the pattern whose bit ``i`` marks position ``i`` erased.  The average
    weights patterns by their BEC probability.  Exponential in ``n``;
    refuses ``n > 12``.
    """
    n = pair.n
    if n > _BRUTE_FORCE_BEC_LIMIT:
        raise ValueError(
            f"exhaustive BEC enumeration limited to n <= {_BRUTE_FORCE_BEC_LIMIT}"
        )
    if not 0.0 <= erasure_prob <= 1.0:
        raise ValueError(f"erasure probability {erasure_prob} outside [0, 1]")
    w_int = _message_table(pair)
    xs = np.arange(1 << n, dtype=np.int64)
    per_pattern = np.empty(1 << n, dtype=np.float64)
    full_mask = (1 << n) - 1
    for pattern in range(1 << n):
        keys = xs & (full_mask ^ pattern)  # unerased positions observed
        per_pattern[pattern] = _conditional_entropy(keys, w_int)
    weights = np.array(
        [
            erasure_prob ** bin(p).count("1") * (1 - erasure_prob) ** (n - bin(p).count("1"))
            for p in range(1 << n)
        ]
    )
    return BecEquivocationTable(
        per_pattern=per_pattern,
        average=float(np.dot(per_pattern, weights)),
        erasure_prob=erasure_prob,
    )


def brute_force_equivocation_bsc(pair: NestedCodePair, crossover_prob: float) -> float:
    """Exact H(W | Z) for a BSC eavesdropper by enumerating noise patterns.

    Exponential in ``n`` twice over (words x observations); refuses
    ``n > 10``.
    """
    n = pair.n
    if n > _BRUTE_FORCE_BSC_LIMIT:
        raise ValueError(
            f"exhaustive BSC enumeration limited to n <= {_BRUTE_FORCE_BSC_LIMIT}"
        )
    q = crossover_prob
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"crossover probability {q} outside [0, 1]")
    w_int = _message_table(pair)
    xs = np.arange(1 << n, dtype=np.int64)
    m = pair.m
    num_w = 1 << m
    h_total = 0.0
    log_q = np.log(q) if q > 0 else -np.inf
    log_1q = np.log(1 - q) if q < 1 else -np.inf
    for z in range(1 << n):
        d = np.bitwise_count(xs ^ z).astype(np.float64)
        with np.errstate(invalid="ignore"):
            logp = d * log_q + (n - d) * log_1q
        p_zx = np.exp(np.nan_to_num(logp, nan=-np.inf, neginf=-np.inf)) / (1 << n)
        p_zw = np.bincount(w_int, weights=p_zx, minlength=num_w)
        p_z = p_zw.sum()
        if p_z <= 0:
            continue
        nz = p_zw > 0
        h_total += -np.sum(p_zw[nz] * np.log2(p_zw[nz] / p_z))
    return float(h_total)


def brute_force_equivocation(pair: NestedCodePair, channel: ChannelModel):
    """Ground-truth equivocation oracle for tiny block lengths.

    BEC returns the full per-pattern table; BSC returns H(W|Z) in bits.
    Continuous observations cannot be enumerated, so AWGN is refused.
    """
    if isinstance(channel, BEC):
        return brute_force_equivocation_bec(pair, channel.erasure_prob)
    if isinstance(channel, BSC):
        return brute_force_equivocation_bsc(pair, channel.crossover_prob)
    if isinstance(channel, BIAWGN):
        raise ValueError("brute-force enumeration is not defined for a continuous output")
    raise TypeError(f"unknown channel model {channel!r}")
