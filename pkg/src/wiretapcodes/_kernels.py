"""GF(2) elimination kernels.

The Monte Carlo equivocation estimators compute one GF(2) rank per trial on
matrices with ~10^3 rows and ~10^3..10^4 columns, so the rank kernel is the
single hottest loop in the package.  A numba-jitted kernel is used when
available; a vectorized numpy fallback (roughly 4x slower) keeps the package
functional without it.  Set WIRETAPCODES_NO_NUMBA=1 to force the fallback.

Both kernels eliminate in place on bit-packed uint64 words (64 matrix columns
per word, column j stored at bit j % 64 of word j // 64) and return the rank.
They only guarantee correct *rank*; eliminated rows may hold garbage in word
positions left of the current pivot word.
"""

from __future__ import annotations

import os

import numpy as np


def _rank_words_numpy(words: np.ndarray, ncols: int) -> int:
    rows = words.shape[0]
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == rows:
            break
        w, b = divmod(c, 64)
        col = (words[r:, w] >> np.uint64(b)) & one
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            tmp = words[r].copy()
            words[r] = words[p]
            words[p] = tmp
        idx = r + nz[1:]
        if idx.size:
            words[idx] ^= words[r]
        r += 1
    return r


def _rank_words_loops(words: np.ndarray, ncols: int) -> int:
    rows, nwords = words.shape
    r = 0
    for c in range(ncols):
        w = c >> 6
        b = np.uint64(c & 63)
        p = -1
        for i in range(r, rows):
            if (words[i, w] >> b) & np.uint64(1):
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(w, nwords):
                t = words[r, j]
                words[r, j] = words[p, j]
                words[p, j] = t
        for i in range(r + 1, rows):
            if (words[i, w] >> b) & np.uint64(1):
                for j in range(w, nwords):
                    words[i, j] ^= words[r, j]
        r += 1
        if r == rows:
            break
    return r


if os.environ.get("WIRETAPCODES_NO_NUMBA"):
    rank_words = _rank_words_numpy
else:
    try:
        from numba import njit

        rank_words = njit(cache=True, nogil=True)(_rank_words_loops)
    except ImportError:  # pragma: no cover
        rank_words = _rank_words_numpy
