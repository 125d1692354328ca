"""Binary linear codes, LDPC ensembles, dual codes, and nested coset pairs.

A :class:`LinearCode` keeps three views of the same code: the raw check
matrix it was built from (``checks``, kept sparse-friendly for the iterative
decoders), a full-row-rank parity-check matrix ``h``, and a generator ``g``.
The true dimension ``k`` is always computed from rank, never assumed from a
design rate, because finite-length LDPC matrices are routinely rank-deficient
and the coset message length must be exact.

Codes are immutable after construction; distinct codes may be built
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitlinalg
from .bitlinalg import BitMatrix

_LDPC_FIXUP_ROUNDS = 1000


@dataclass(frozen=True)
class DegreeDistribution:
    """Edge-perspective degree distribution pair (variable, check).

    ``var_edge[i]`` is the fraction of edges incident to degree-``i``
    variable nodes and similarly for ``chk_edge``; both must sum to one.
    """

    var_edge: dict[int, float]
    chk_edge: dict[int, float]

    def __post_init__(self):
        for name, dist in (("var_edge", self.var_edge), ("chk_edge", self.chk_edge)):
            if not dist:
                raise ValueError(f"{name} is empty")
            for deg, frac in dist.items():
                if deg < 1 or frac < 0:
                    raise ValueError(f"{name} has invalid entry {deg}: {frac}")
            if abs(sum(dist.values()) - 1.0) > 1e-9:
                raise ValueError(f"{name} fractions must sum to 1")
        r = self.design_rate
        if not -1e-9 <= r <= 1 + 1e-9:
            raise ValueError(f"design rate {r} outside [0, 1]")

    @classmethod
    def regular(cls, dv: int, dc: int) -> "DegreeDistribution":
        return cls({dv: 1.0}, {dc: 1.0})

    def lam(self, x):
        """Variable-edge polynomial: sum of var_edge[i] * x**(i-1)."""
        return sum(f * x ** (d - 1) for d, f in self.var_edge.items())

    def rho(self, x):
        """Check-edge polynomial: sum of chk_edge[i] * x**(i-1)."""
        return sum(f * x ** (d - 1) for d, f in self.chk_edge.items())

    @property
    def design_rate(self) -> float:
        inv_chk = sum(f / d for d, f in self.chk_edge.items())
        inv_var = sum(f / d for d, f in self.var_edge.items())
        return 1.0 - inv_chk / inv_var


class LinearCode:
    """Binary linear code with parity-check and generator views.

    Attributes
    ----------
    n, k : int
        Block length and dimension (``k`` from the exact GF(2) rank).
    h : BitMatrix
        Full-row-rank parity-check matrix, ``(n - k) x n``.
    g : BitMatrix
        Generator matrix, ``k x n``, with ``g @ h.T = 0``.
    checks : BitMatrix
        The check matrix as originally given (possibly redundant rows);
        the iterative decoders run on this structure.
    ensemble : DegreeDistribution or None
        Degree metadata when the code came from an ensemble.
    """

    __slots__ = ("n", "k", "h", "g", "checks", "ensemble", "_edge_cache")

    def __init__(self, n, k, h, g, checks, ensemble=None):
        self.n = n
        self.k = k
        self.h = h
        self.g = g
        self.checks = checks
        self.ensemble = ensemble
        self._edge_cache = None

    @property
    def rate(self) -> float:
        return self.k / self.n

    def codewords(self):
        """Yield all 2**k codewords (small codes only)."""
        if self.k > 20:
            raise ValueError(f"refusing to enumerate 2^{self.k} codewords")
        for idx in range(1 << self.k):
            msg = np.array([(idx >> i) & 1 for i in range(self.k)], dtype=np.uint8)
            yield bitlinalg.vec_mat(msg, self.g)

    def random_codeword(self, rng: np.random.Generator) -> np.ndarray:
        msg = rng.integers(0, 2, size=self.k, dtype=np.uint8)
        return bitlinalg.vec_mat(msg, self.g)

    def edge_lists(self) -> tuple[np.ndarray, np.ndarray]:
        """(check_index, var_index) arrays for the edges of ``checks``.

        Cached: the decoders call this once per decode.
        """
        if self._edge_cache is None:
            ci, vi = np.nonzero(self.checks.to_dense())
            self._edge_cache = (ci.astype(np.int64), vi.astype(np.int64))
        return self._edge_cache

    def degree_distribution(self) -> DegreeDistribution:
        """Empirical edge-perspective degree distribution of ``checks``."""
        col_w = self.checks.column_weights()
        row_w = self.checks.row_weights()
        edges = int(col_w.sum())
        if edges == 0:
            raise ValueError("check matrix has no edges")
        var_edge: dict[int, float] = {}
        for d in np.unique(col_w[col_w > 0]):
            var_edge[int(d)] = float(d * np.count_nonzero(col_w == d) / edges)
        chk_edge: dict[int, float] = {}
        for d in np.unique(row_w[row_w > 0]):
            chk_edge[int(d)] = float(d * np.count_nonzero(row_w == d) / edges)
        return DegreeDistribution(var_edge, chk_edge)

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.k})"


def from_parity_check(h: BitMatrix, ensemble=None) -> LinearCode:
    """Build a code from a parity-check matrix.

    The stored ``h`` is the reduced row echelon form restricted to its
    nonzero rows, so duplicated or dependent check rows yield the same code
    object; the original matrix is retained as ``checks`` for the decoders.
    """
    if h.cols < 1:
        raise ValueError("block length must be at least 1")
    reduced, pivots = bitlinalg.rref(h)
    r = len(pivots)
    h_norm = BitMatrix(r, h.cols, np.ascontiguousarray(reduced.words[:r]))
    g = bitlinalg.nullspace_basis(h_norm)
    return LinearCode(h.cols, h.cols - r, h_norm, g, h.copy(), ensemble)


def dual(code: LinearCode) -> LinearCode:
    """The dual code: generator and parity-check views swap roles."""
    return LinearCode(
        code.n,
        code.n - code.k,
        code.g.copy(),
        code.h.copy(),
        code.g.copy(),
        ensemble=None,
    )


def regular_ldpc(n: int, dv: int, dc: int, seed: int) -> LinearCode:
    """Sample a (dv, dc)-regular LDPC code from the configuration ensemble.

    Edge sockets are matched through a seeded permutation; parallel edges are
    removed by re-permuting the offending sockets against random partners for
    a bounded number of rounds.  Every column of the result has weight
    exactly ``dv`` and every row weight exactly ``dc``; the design rate is
    ``1 - dv/dc`` and the true rate can only be larger.

    Deterministic: the same ``(n, dv, dc, seed)`` always yields the same
    matrix.
    """
    if dv < 1 or dc < 1 or dv >= dc:
        raise ValueError(f"need 1 <= dv < dc, got dv={dv}, dc={dc}")
    if (n * dv) % dc != 0:
        raise ValueError(f"n*dv = {n * dv} is not divisible by dc = {dc}")
    if n < dc:
        raise ValueError(f"block length {n} cannot support row weight {dc}")
    m = n * dv // dc
    rng = np.random.default_rng(seed)
    edges = n * dv
    var_of_socket = np.repeat(np.arange(n, dtype=np.int64), dv)
    chk_of_socket = np.repeat(np.arange(m, dtype=np.int64), dc)[rng.permutation(edges)]

    for _ in range(_LDPC_FIXUP_ROUNDS):
        order = np.lexsort((chk_of_socket, var_of_socket))
        same = (np.diff(var_of_socket[order]) == 0) & (np.diff(chk_of_socket[order]) == 0)
        bad = order[np.nonzero(same)[0]]
        if bad.size == 0:
            break
        partners = rng.integers(0, edges, size=bad.size)
        for a, b in zip(bad, partners):
            chk_of_socket[a], chk_of_socket[b] = chk_of_socket[b], chk_of_socket[a]
    else:
        raise RuntimeError(
            f"could not remove parallel edges after {_LDPC_FIXUP_ROUNDS} rounds"
        )

    dense = np.zeros((m, n), dtype=np.uint8)
    dense[chk_of_socket, var_of_socket] = 1
    h = BitMatrix.from_dense(dense)
    return from_parity_check(h, ensemble=DegreeDistribution.regular(dv, dc))


class NestedCodePair:
    """Fine code {0,1}^n partitioned by a coarse code and its cosets.

    Messages are ``m = n - k1`` bits; message ``w`` indexes the coset
    ``{x : h1 @ x = w}`` of the coarse code.  The coset-leader map ``d``
    satisfies ``h1 @ d = I`` so that ``d @ w`` lands in coset ``w`` and
    decoding is the single multiply ``h1 @ y``.
    """

    __slots__ = ("coarse", "h1", "d", "_h1_columns")

    def __init__(self, coarse: LinearCode, d: BitMatrix):
        self.coarse = coarse
        self.h1 = coarse.h
        self.d = d
        # Columns of h1 packed as rows: the per-trial erasure-pattern ranks
        # reduce to a row gather from this table.
        self._h1_columns = self.h1.transpose()

    @property
    def n(self) -> int:
        return self.coarse.n

    @property
    def m(self) -> int:
        return self.coarse.n - self.coarse.k

    @property
    def num_messages(self) -> int:
        return 1 << self.m

    @property
    def rate(self) -> float:
        return self.m / self.n

    def __repr__(self):
        return f"NestedCodePair(n={self.n}, m={self.m})"


def nested_pair_from_coarse(coarse: LinearCode) -> NestedCodePair:
    """Nest ``coarse`` inside the full space {0,1}^n."""
    return NestedCodePair(coarse, bitlinalg.right_inverse(coarse.h))


class AlistParseError(ValueError):
    """Malformed alist file; the message carries the offending line number."""


def _alist_ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise AlistParseError(f"line {lineno}: {exc}") from None


def read_alist(path) -> LinearCode:
    """Read a parity-check matrix in alist text format.

    Layout: ``n m`` on the first line, the two maximum degrees, per-column
    and per-row degree lists, then one line of 1-based row indices per
    column and one line of 1-based column indices per row.  Zero padding
    after the declared degree is tolerated; a zero or out-of-range index
    among the declared entries is an error.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()

    def need(lineno: int) -> str:
        if lineno > len(lines):
            raise AlistParseError(f"line {lineno}: unexpected end of file")
        return lines[lineno - 1]

    header = _alist_ints(need(1), 1)
    if len(header) != 2:
        raise AlistParseError("line 1: expected 'n m'")
    n, m = header
    if n < 1 or m < 0:
        raise AlistParseError(f"line 1: invalid dimensions n={n}, m={m}")
    if len(_alist_ints(need(2), 2)) != 2:
        raise AlistParseError("line 2: expected two maximum degrees")
    col_deg = _alist_ints(need(3), 3)
    if len(col_deg) != n:
        raise AlistParseError(f"line 3: expected {n} column degrees, got {len(col_deg)}")
    row_deg = _alist_ints(need(4), 4)
    if len(row_deg) != m:
        raise AlistParseError(f"line 4: expected {m} row degrees, got {len(row_deg)}")

    def read_index_block(start, count, degs, limit, what):
        block = []
        for i in range(count):
            lineno = start + i
            entries = _alist_ints(need(lineno), lineno)
            if len(entries) < degs[i]:
                raise AlistParseError(
                    f"line {lineno}: expected {degs[i]} indices, got {len(entries)}"
                )
            idx = entries[: degs[i]]
            for v in idx:
                if v < 1 or v > limit:
                    raise AlistParseError(
                        f"line {lineno}: {what} index {v} outside 1..{limit}"
                    )
            if any(v != 0 for v in entries[degs[i] :]):
                raise AlistParseError(f"line {lineno}: nonzero padding entries")
            block.append(idx)
        return block

    col_block = read_index_block(5, n, col_deg, m, "row")
    row_block = read_index_block(5 + n, m, row_deg, n, "column")

    dense = np.zeros((m, n), dtype=np.uint8)
    for j, rows_1based in enumerate(col_block):
        for r in rows_1based:
            dense[r - 1, j] = 1
    for i, cols_1based in enumerate(row_block):
        expected = set(np.nonzero(dense[i])[0] + 1)
        if set(cols_1based) != expected:
            raise AlistParseError(
                f"line {5 + n + i}: row list disagrees with column lists"
            )
    return from_parity_check(BitMatrix.from_dense(dense))


def write_alist(code: LinearCode, path) -> None:
    """Write the raw check matrix of ``code`` in alist format."""
    dense = code.checks.to_dense()
    m, n = dense.shape
    col_deg = dense.sum(axis=0, dtype=np.int64)
    row_deg = dense.sum(axis=1, dtype=np.int64)
    out = [
        f"{n} {m}",
        f"{int(col_deg.max(initial=0))} {int(row_deg.max(initial=0))}",
        " ".join(str(int(d)) for d in col_deg),
        " ".join(str(int(d)) for d in row_deg),
    ]
    for j in range(n):
        out.append(" ".join(str(int(i) + 1) for i in np.nonzero(dense[:, j])[0]))
    for i in range(m):
        out.append(" ".join(str(int(j) + 1) for j in np.nonzero(dense[i])[0]))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")
