"""Seeded eavesdropper-channel simulators and BEC-embedding degradations.

Three memoryless channels are modelled: the binary erasure channel, the
binary symmetric channel, and the binary-input AWGN channel with SNR
``snr = Es/N0`` (so symbols are transmitted at amplitude ``sqrt(2*snr)``
in unit-variance noise).  Modulation maps bit 0 to symbol +1 and bit 1 to
symbol -1; the AWGN channel is output-symmetric, so every capacity,
threshold, and equivocation quantity is independent of this sign choice,
but it fixes the LLR convention: positive LLR favours bit 0.

The two ``*_degraded_transmit`` functions realize each noisy channel as a
BEC followed by a memoryless post-processor, which is what turns a BEC
equivocation bound into a bound for the noisy channel:

* AWGN: erase with probability ``2*Q(sqrt(2*snr))``; surviving symbols are
  redrawn from the normalized difference of the two signal densities on the
  matching half-line, erased symbols from the folded two-sided tail mixture.
  The composed channel is distributed exactly like the direct one.
* BSC(q): erase with probability ``2q``; erased bits are replaced by a fair
  coin.  The composed flip rate is exactly ``q``.

All samplers are pure functions of (input, parameters, generator state);
callers supply one independently seeded ``numpy.random.Generator`` per
worker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import erfc, ndtr, ndtri

ERASED = 0

_SQRT_2PI = np.sqrt(2.0 * np.pi)
_BISECT_TOL = 1e-10


@dataclass(frozen=True)
class BEC:
    """Binary erasure channel with erasure probability ``erasure_prob``."""

    erasure_prob: float

    def __post_init__(self):
        if not 0.0 <= self.erasure_prob <= 1.0:
            raise ValueError(f"erasure probability {self.erasure_prob} outside [0, 1]")


@dataclass(frozen=True)
class BSC:
    """Binary symmetric channel with crossover probability ``crossover_prob``."""

    crossover_prob: float

    def __post_init__(self):
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError(f"crossover probability {self.crossover_prob} outside [0, 1]")


@dataclass(frozen=True)
class BIAWGN:
    """Binary-input AWGN channel with SNR ``snr = Es/N0`` (dimensionless)."""

    snr: float

    def __post_init__(self):
        if self.snr < 0.0:
            raise ValueError(f"SNR {self.snr} must be nonnegative")


ChannelModel = Union[BEC, BSC, BIAWGN]


def modulate(bits) -> np.ndarray:
    """Map bits to symbols: 0 -> +1, 1 -> -1."""
    b = np.asarray(bits, dtype=np.int8)
    return (1 - 2 * b).astype(np.int8)


def signal_amplitude(snr: float) -> float:
    """Mean magnitude sqrt(2*snr) of the received symbol."""
    return float(np.sqrt(2.0 * snr))


def _gauss_q(x) -> np.ndarray:
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / np.sqrt(2.0))


def erasure_rate_for_snr(snr: float) -> float:
    """Erasure probability 2*Q(sqrt(2*snr)) of the embedded BEC."""
    return float(2.0 * _gauss_q(signal_amplitude(snr)))


def bec_transmit(symbols, erasure_prob: float, rng: np.random.Generator) -> np.ndarray:
    """Erase each +-1 symbol independently (erasures become 0)."""
    if not 0.0 <= erasure_prob <= 1.0:
        raise ValueError(f"erasure probability {erasure_prob} outside [0, 1]")
    x = np.asarray(symbols, dtype=np.int8)
    out = x.copy()
    out[rng.random(x.shape) < erasure_prob] = ERASED
    return out


def bsc_transmit(bits, crossover_prob: float, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit independently with the given probability."""
    if not 0.0 <= crossover_prob <= 1.0:
        raise ValueError(f"crossover probability {crossover_prob} outside [0, 1]")
    b = np.asarray(bits, dtype=np.uint8)
    flips = (rng.random(b.shape) < crossover_prob).astype(np.uint8)
    return b ^ flips


def biawgn_transmit(symbols, snr: float, rng: np.random.Generator) -> np.ndarray:
    """y = x * sqrt(2*snr) + n with n standard normal."""
    if snr < 0:
        raise ValueError("SNR must be nonnegative")
    x = np.asarray(symbols, dtype=np.float64)
    return x * signal_amplitude(snr) + rng.standard_normal(x.shape)


def awgn_llr(z, snr: float) -> np.ndarray:
    """Per-symbol LLR log[p(z|bit 0)/p(z|bit 1)] = 2*sqrt(2*snr)*z."""
    if snr < 0:
        raise ValueError("SNR must be nonnegative")
    return 2.0 * signal_amplitude(snr) * np.asarray(z, dtype=np.float64)


def biawgn_density(z, x_symbol: int, snr: float) -> np.ndarray:
    """Channel density g(z | X = x_symbol) for x_symbol in {+1, -1}."""
    if x_symbol not in (+1, -1):
        raise ValueError("x_symbol must be +1 or -1")
    mu = x_symbol * signal_amplitude(snr)
    zz = np.asarray(z, dtype=np.float64)
    return np.exp(-0.5 * (zz - mu) ** 2) / _SQRT_2PI


def degraded_conditional_density(z, zprime: int, snr: float) -> np.ndarray:
    """Density f(z | Z' = zprime) of the AWGN post-processing channel.

    For ``zprime=+1`` the density is the normalized difference of the two
    signal densities on ``z >= 0`` (mirrored for -1); for ``zprime=0`` it is
    the two-sided mixture of the opposing Gaussian tails.  Mixing these with
    the BEC transition probabilities reproduces the direct channel density
    exactly.
    """
    if snr <= 0:
        raise ValueError("degraded decomposition requires snr > 0")
    zz = np.asarray(z, dtype=np.float64)
    eps = erasure_rate_for_snr(snr)
    g_pos = biawgn_density(zz, +1, snr)
    g_neg = biawgn_density(zz, -1, snr)
    if zprime == +1:
        return np.where(zz >= 0, (g_pos - g_neg) / (1.0 - eps), 0.0)
    if zprime == -1:
        return np.where(zz < 0, (g_neg - g_pos) / (1.0 - eps), 0.0)
    if zprime == ERASED:
        return np.where(zz >= 0, g_neg, g_pos) / eps
    raise ValueError("zprime must be +1, 0, or -1")


def _difference_half_cdf(t, mu: float, eps: float) -> np.ndarray:
    """CDF at t >= 0 of the normalized density difference on the half-line."""
    return (ndtr(t - mu) - ndtr(t + mu) + ndtr(mu) - ndtr(-mu)) / (1.0 - eps)


def _sample_difference_half(u: np.ndarray, mu: float, eps: float) -> np.ndarray:
    """Invert the half-line CDF by monotone bisection (tolerance 1e-10)."""
    lo = np.zeros_like(u)
    hi = np.full_like(u, mu + 14.0)
    while True:
        mid = 0.5 * (lo + hi)
        below = _difference_half_cdf(mid, mu, eps) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if hi.size == 0 or float(np.max(hi - lo)) < _BISECT_TOL:
            break
    return 0.5 * (lo + hi)


def _sample_folded_tail(count: int, mu: float, rng: np.random.Generator) -> np.ndarray:
    """Draw from f(z|Z'=0): a fair two-sided mixture of folded Gaussian tails."""
    sign = np.where(rng.random(count) < 0.5, 1.0, -1.0)
    v = rng.random(count) * float(_gauss_q(mu))
    tail = -ndtri(v)  # upper-tail quantile: P(N >= tail) = v, tail >= mu
    return sign * (tail - mu)


def awgn_degraded_transmit(
    symbols,
    snr: float,
    rng: np.random.Generator,
    allow_pure_erasure: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Transmit through the BEC-embedded decomposition of the AWGN channel.

    Returns ``(zprime, z)``: the BEC output over {+1, 0, -1} and the final
    real observation.  The marginal law of ``z`` given the input equals the
    direct channel's; ``z`` always carries the sign of an unerased
    ``zprime``.

    At ``snr = 0`` the erasure rate is one and the unerased conditional
    densities are undefined; that case is rejected unless
    ``allow_pure_erasure`` is set, in which case everything is erased and
    ``z`` is standard normal.
    """
    x = np.asarray(symbols, dtype=np.int8)
    if snr <= 0:
        if not (snr == 0 and allow_pure_erasure):
            raise ValueError(
                "snr must be positive (the erasure rate reaches 1 at snr=0; "
                "pass allow_pure_erasure=True for the all-erasure channel)"
            )
        zprime = np.zeros(x.shape, dtype=np.int8)
        return zprime, rng.standard_normal(x.shape)

    mu = signal_amplitude(snr)
    eps = erasure_rate_for_snr(snr)
    zprime = bec_transmit(x, eps, rng)
    z = np.empty(x.shape, dtype=np.float64)

    kept = zprime != ERASED
    u = rng.random(int(kept.sum()))
    z[kept] = zprime[kept] * _sample_difference_half(u, mu, eps)
    erased = ~kept
    z[erased] = _sample_folded_tail(int(erased.sum()), mu, rng)
    return zprime, z


def bsc_degraded_transmit(
    bits, crossover_prob: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Transmit through the BEC-embedded decomposition of the BSC.

    Returns ``(zprime, z)`` where ``zprime`` is the BEC(2q) output over
    {+1, 0, -1} and ``z`` is the final bit vector: unerased symbols pass
    through, erased ones are replaced by independent fair coin flips, making
    the marginal a BSC(q).
    """
    if not 0.0 <= crossover_prob <= 0.5:
        raise ValueError(f"crossover probability {crossover_prob} outside [0, 1/2]")
    b = np.asarray(bits, dtype=np.uint8)
    zprime = bec_transmit(modulate(b), 2.0 * crossover_prob, rng)
    z = b.copy()
    erased = zprime == ERASED
    z[erased] = rng.integers(0, 2, size=int(erased.sum()), dtype=np.uint8)
    return zprime, z
