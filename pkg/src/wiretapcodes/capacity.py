"""Closed-form and quadrature-based information quantities.

Covers the Gaussian tail function, binary entropy, binary-input AWGN
capacity, the secrecy capacities of the three eavesdropper channels, the
perfect-secrecy rate achieved by the dual-of-good-code coset construction,
the gap between the two, and the rate-equivocation region polygons.

Everything here is a pure function; rates and equivocations are in bits per
channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .channels import BEC, BIAWGN, BSC, ChannelModel

_GEOM_TOL = 1e-9


def q_function(x) -> np.ndarray | float:
    """Upper Gaussian tail Q(x), via the complementary error function."""
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / np.sqrt(2.0))


def binary_entropy(q) -> np.ndarray | float:
    """h(q) = -q log2 q - (1-q) log2 (1-q), with h(0) = h(1) = 0."""
    p = np.asarray(q, dtype=np.float64)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("binary entropy argument outside [0, 1]")
    inner = np.where((p <= 0) | (p >= 1), 0.5, p)
    h = -inner * np.log2(inner) - (1 - inner) * np.log2(1 - inner)
    out = np.where((p <= 0) | (p >= 1), 0.0, h)
    return float(out) if np.isscalar(q) or np.ndim(q) == 0 else out


def _log2_1p_exp(t: float) -> float:
    # log2(1 + e^t), overflow-safe for large |t|.
    if t > 0:
        return (t + math.log1p(math.exp(-t))) / math.log(2.0)
    return math.log1p(math.exp(t)) / math.log(2.0)


def _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _adaptive_simpson(
        f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1
    ) + _adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)


def _integrate(f, a: float, b: float, tol: float) -> float:
    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48)


def c_biawgn(snr: float) -> float:
    """Capacity of the binary-input AWGN channel at SNR Es/N0, in bits.

    Evaluated as ``1 - (1/sqrt(pi)) * integral of exp(-(y - sqrt(snr))^2) *
    log2(1 + exp(-4*y*sqrt(snr))) dy`` by adaptive Simpson quadrature over
    ten standard deviations around the signal mean.  The Gaussian weight
    makes the truncated tails smaller than 1e-40, so the absolute error is
    dominated by the 1e-8 panel tolerance.  Monotone nondecreasing in the
    SNR and clamped to [0, 1].
    """
    if snr < 0:
        raise ValueError("SNR must be nonnegative")
    s = math.sqrt(snr)

    def integrand(y: float) -> float:
        return math.exp(-((y - s) ** 2)) * _log2_1p_exp(-4.0 * y * s)

    val = _integrate(integrand, s - 10.0, s + 10.0, 1e-8)
    return min(1.0, max(0.0, 1.0 - val / math.sqrt(math.pi)))


def secrecy_capacity(channel: ChannelModel) -> float:
    """Secrecy capacity of the type II wiretap channel with this eavesdropper.

    BEC(eps) -> eps; BSC(q) -> h(q); BIAWGN(snr) -> 1 - c_biawgn(snr).
    """
    if isinstance(channel, BEC):
        return channel.erasure_prob
    if isinstance(channel, BSC):
        return float(binary_entropy(channel.crossover_prob))
    if isinstance(channel, BIAWGN):
        return 1.0 - c_biawgn(channel.snr)
    raise TypeError(f"unknown channel model {channel!r}")


def approach2_rate(channel: ChannelModel) -> float:
    """Perfect-secrecy rate achieved by nesting the dual of a capacity-
    achieving erasure code: the erasure rate of the embedded BEC.

    BEC(eps) -> eps; BSC(q) -> 2q; BIAWGN(snr) -> 2*Q(sqrt(2*snr)).
    """
    if isinstance(channel, BEC):
        return channel.erasure_prob
    if isinstance(channel, BSC):
        return 2.0 * channel.crossover_prob
    if isinstance(channel, BIAWGN):
        return float(2.0 * q_function(math.sqrt(2.0 * channel.snr)))
    raise TypeError(f"unknown channel model {channel!r}")


def thangaraj_baseline(q: float) -> float:
    """Best secrecy rate of the earlier error-detecting-code construction
    for the BSC eavesdropper: -log2(1 - q)."""
    if not 0.0 <= q < 1.0:
        raise ValueError(f"baseline rate diverges outside 0 <= q < 1 (got {q})")
    return -math.log2(1.0 - q)


def secrecy_gap(snr: float) -> float:
    """Secrecy capacity minus the coset-construction rate on the AWGN
    eavesdropper: 1 - c_biawgn(snr) - 2*Q(sqrt(2*snr)).

    Reported without clamping; it can be negative outside the usual
    operating range.
    """
    return secrecy_capacity(BIAWGN(snr)) - approach2_rate(BIAWGN(snr))


@dataclass(frozen=True)
class RateEquivocationPoint:
    """A (rate, equivocation-rate) pair in bits per channel use."""

    rate: float
    equivocation: float

    def __post_init__(self):
        if not -_GEOM_TOL <= self.equivocation <= self.rate + _GEOM_TOL <= 1 + 2 * _GEOM_TOL:
            raise ValueError(
                f"need 0 <= Re <= R <= 1, got ({self.rate}, {self.equivocation})"
            )


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain convex hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= _GEOM_TOL:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= _GEOM_TOL:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class RegionPolygon:
    """Convex rate-equivocation region, vertices counterclockwise.

    The vertex list starts at the origin when the origin belongs to the
    region, which makes the CSV serialization unambiguous.
    """

    vertices: tuple[RateEquivocationPoint, ...]

    @classmethod
    def from_points(cls, points) -> "RegionPolygon":
        hull = _convex_hull([(float(r), float(re)) for r, re in points])
        if not hull:
            raise ValueError("empty vertex set")
        start = hull.index(min(hull))
        ordered = hull[start:] + hull[:start]
        return cls(tuple(RateEquivocationPoint(r, re) for r, re in ordered))

    def contains(self, rate: float, equivocation: float, tol: float = 1e-9) -> bool:
        """Point membership for a convex counterclockwise polygon."""
        p = (rate, equivocation)
        verts = [(v.rate, v.equivocation) for v in self.vertices]
        if len(verts) == 1:
            return abs(p[0] - verts[0][0]) <= tol and abs(p[1] - verts[0][1]) <= tol
        if len(verts) == 2:
            a, b = verts
            along = _cross(a, b, p)
            within = min(a[0], b[0]) - tol <= p[0] <= max(a[0], b[0]) + tol
            return abs(along) <= tol and within
        return all(
            _cross(verts[i], verts[(i + 1) % len(verts)], p) >= -tol
            for i in range(len(verts))
        )

    def contains_polygon(self, other: "RegionPolygon", tol: float = 1e-9) -> bool:
        return all(self.contains(v.rate, v.equivocation, tol) for v in other.vertices)

    def is_convex(self) -> bool:
        verts = [(v.rate, v.equivocation) for v in self.vertices]
        if len(verts) < 3:
            return True
        return all(
            _cross(verts[i], verts[(i + 1) % len(verts)], verts[(i + 2) % len(verts)])
            >= -_GEOM_TOL
            for i in range(len(verts))
        )


def achievable_region(snr: float, r1: float, r_dual: float | None = None) -> RegionPolygon:
    """Rate-equivocation region achieved by time-sharing the coset schemes.

    ``r1`` is the rate of a good code whose AWGN threshold lies below
    ``snr`` (it caps the rate axis of the full-equivocation corner) and
    ``r_dual`` is the perfect-secrecy rate of the dual construction,
    defaulting to ``2*Q(sqrt(2*snr))``.  Returns the convex hull of the five
    corner points; dominated and duplicate corners disappear in the hull.
    """
    if not 0.0 <= r1 <= 1.0:
        raise ValueError(f"coarse rate {r1} outside [0, 1]")
    if r_dual is None:
        r_dual = approach2_rate(BIAWGN(snr))
    cap = c_biawgn(snr)
    if r1 > cap + _GEOM_TOL:
        raise ValueError(
            f"coarse rate {r1} exceeds the channel capacity {cap:.4f}; "
            "no good code has its threshold below this SNR"
        )
    points = [
        (0.0, 0.0),
        (r_dual, r_dual),
        (1.0 - r1, 1.0 - cap),
        (1.0, 1.0 - cap),
        (1.0, 0.0),
    ]
    return RegionPolygon.from_points(points)


def capacity_equivocation_region(snr: float) -> RegionPolygon:
    """Outer region {(R, Re): Re <= R <= 1, Re <= 1 - c_biawgn(snr)}."""
    cap = c_biawgn(snr)
    re_max = 1.0 - cap
    points = [(0.0, 0.0), (re_max, re_max), (1.0, re_max), (1.0, 0.0)]
    return RegionPolygon.from_points(points)
