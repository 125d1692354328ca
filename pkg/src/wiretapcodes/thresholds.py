"""Noise thresholds: exact BEC density evolution and empirical BP estimates.

The BEC threshold of a degree-distribution ensemble is the largest erasure
probability at which the density-evolution recursion

    x_{l+1} = eps * lam(1 - rho(1 - x_l)),   x_0 = eps

is driven to zero; it is located by bisection on the residual erasure
probability.  For concrete codes on the binary-input AWGN channel the
threshold is estimated empirically from the word-error rate of sum-product
decoding over a grid of SNRs.

Density evolution and bisection are pure; the empirical estimator's trials
are independent given the generator and may be distributed across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import BEC, BIAWGN, BSC, ChannelModel, awgn_llr, biawgn_transmit, modulate
from .codes import DegreeDistribution, LinearCode
from .capacity import q_function
from .decoders import bp_decode_awgn

DE_TOL = 1e-8
DE_MAX_ITER = 10_000
_BRACKET_WIDTH = 1e-4
_SHANNON_SLACK = 1e-3


@dataclass(frozen=True)
class ThresholdResult:
    """A noise-threshold estimate with its bracket and provenance.

    ``value`` is in the channel's natural parameter units (erasure
    probability or SNR) and satisfies ``bracket[0] <= value <= bracket[1]``;
    it is None when a grid search was exhausted without locating the
    threshold.  ``detail`` carries method-specific metadata (iteration
    counts, trial counts, error-rate intervals).
    """

    value: float | None
    bracket: tuple[float, float]
    method: str
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.value is not None and not (
            self.bracket[0] <= self.value <= self.bracket[1]
        ):
            raise ValueError(f"estimate {self.value} outside bracket {self.bracket}")


def de_residual(
    eps: float,
    dd: DegreeDistribution,
    tol: float = DE_TOL,
    max_iter: int = DE_MAX_ITER,
) -> float:
    """Limiting erasure probability of density evolution at channel eps.

    Iterates until successive values differ by less than ``tol`` or the
    iteration budget runs out, and returns the last iterate.  Monotone
    nondecreasing in ``eps`` up to the stopping resolution.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability {eps} outside [0, 1]")
    x = eps
    for _ in range(max_iter):
        x_next = eps * dd.lam(1.0 - dd.rho(1.0 - x))
        if abs(x_next - x) < tol:
            return x_next
        x = x_next
    return x


def bec_bp_threshold(
    dd: DegreeDistribution,
    tol: float = 1e-6,
    de_tol: float = DE_TOL,
    max_iter: int = DE_MAX_ITER,
) -> ThresholdResult:
    """BEC threshold of an ensemble by bisection on the DE residual.

    ``tol`` classifies convergence: the threshold is the largest eps whose
    residual falls below it.  The classification tolerance is kept two
    orders looser than the iteration tolerance ``de_tol`` so that ensembles
    with slow linear contraction (degree-2 variables) are not misclassified
    by the stopping rule.  The final bracket is at most 1e-4 wide, and the
    estimate is checked against the Shannon bound ``1 - design rate``.
    """
    if tol <= de_tol:
        raise ValueError("classification tol must exceed the DE iteration tol")
    lo, hi = 0.0, 1.0
    if de_residual(hi, dd, de_tol, max_iter) < tol:
        lo = hi
    while hi - lo > _BRACKET_WIDTH:
        mid = 0.5 * (lo + hi)
        if de_residual(mid, dd, de_tol, max_iter) < tol:
            lo = mid
        else:
            hi = mid
    estimate = 0.5 * (lo + hi)
    shannon = 1.0 - dd.design_rate
    if estimate > shannon + _SHANNON_SLACK:
        raise RuntimeError(
            f"DE threshold {estimate:.6f} exceeds the Shannon bound {shannon:.6f}"
        )
    return ThresholdResult(
        value=estimate,
        bracket=(lo, hi),
        method="DE-bisection",
        detail={"tol": tol, "de_tol": de_tol, "max_iter": max_iter},
    )


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes outside [0, trials]")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def bp_word_error_rate(
    code: LinearCode,
    snr: float,
    trials: int,
    rng: np.random.Generator,
    max_iters: int = 200,
) -> tuple[int, int]:
    """(word errors, trials) for all-zero transmission through BIAWGN(snr).

    The channel and decoder are symmetric, so the all-zero codeword is
    representative of the ensemble-average behaviour.  A trial counts as an
    error unless decoding converges to the transmitted word itself.
    """
    x = modulate(np.zeros(code.n, dtype=np.uint8))
    errors = 0
    for _ in range(trials):
        z = biawgn_transmit(x, snr, rng)
        bits, ok = bp_decode_awgn(code, awgn_llr(z, snr), max_iters)
        if not ok or bits.any():
            errors += 1
    return errors, trials


def empirical_bp_threshold_awgn(
    code: LinearCode,
    snr_grid,
    trials: int,
    target_wer: float,
    rng: np.random.Generator,
    max_iters: int = 200,
) -> ThresholdResult:
    """Smallest grid SNR whose measured word-error rate meets the target.

    Scans the ascending grid, simulating ``trials`` all-zero transmissions
    per point.  The returned bracket spans from the previous grid point to
    the accepted one; the Wilson interval of the accepted point's error
    rate is recorded in ``detail``.  If no grid point qualifies, the result
    has ``value=None`` and method tag ``"empirical-BP (above grid)"``.
    """
    grid = [float(s) for s in snr_grid]
    if grid != sorted(grid):
        raise ValueError("snr grid must be ascending")
    if trials < 100:
        raise ValueError("need at least 100 trials per grid point")
    prev = grid[0]
    for snr in grid:
        errors, _ = bp_word_error_rate(code, snr, trials, rng, max_iters)
        wer = errors / trials
        if wer <= target_wer:
            w_lo, w_hi = wilson_interval(errors, trials)
            return ThresholdResult(
                value=snr,
                bracket=(prev, snr),
                method="empirical-BP",
                detail={
                    "trials": trials,
                    "target_wer": target_wer,
                    "wer": wer,
                    "wer_wilson": (w_lo, w_hi),
                    "max_iters": max_iters,
                },
            )
        prev = snr
    return ThresholdResult(
        value=None,
        bracket=(grid[-1], math.inf),
        method="empirical-BP (above grid)",
        detail={"trials": trials, "target_wer": target_wer},
    )


def check_secrecy_condition(
    channel: ChannelModel, delta_star: float
) -> tuple[bool, float]:
    """Evaluate the sufficient secrecy condition for a dual-construction
    pair whose base code has BEC threshold ``delta_star``.

    Returns ``(satisfied, margin)`` with the signed margin in probability
    units: BEC needs ``eps >= 1 - delta_star``, BIAWGN needs
    ``Q(sqrt(2*snr)) >= (1 - delta_star)/2``, BSC needs
    ``q >= (1 - delta_star)/2``.
    """
    if not 0.0 <= delta_star <= 1.0:
        raise ValueError(f"threshold {delta_star} outside [0, 1]")
    if isinstance(channel, BEC):
        margin = channel.erasure_prob - (1.0 - delta_star)
    elif isinstance(channel, BIAWGN):
        margin = float(q_function(math.sqrt(2.0 * channel.snr))) - (1.0 - delta_star) / 2.0
    elif isinstance(channel, BSC):
        margin = channel.crossover_prob - (1.0 - delta_star) / 2.0
    else:
        raise TypeError(f"unknown channel model {channel!r}")
    return margin >= 0.0, margin
