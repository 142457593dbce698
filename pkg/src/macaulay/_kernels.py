"""Integer kernels over exponent matrices.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy version.
The numba path is used unless ``MACAULAY_DISABLE_NUMBA`` is set to a true
value or numba cannot be imported.  Both paths return identical results.
"""

from __future__ import annotations

import os
from math import comb

import numpy as np

from .core import EXPONENT_LIMIT

_FLAG = os.environ.get("MACAULAY_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("disabled by MACAULAY_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

_CHUNK = 1 << 16


def as_exponent_array(monos, nvars: int) -> np.ndarray:
    """Stack exponent tuples into an int64 matrix, rejecting oversized entries."""
    arr = np.asarray(list(monos), dtype=np.int64).reshape(-1, nvars)
    if arr.size and (arr.min() < 0 or arr.max() >= EXPONENT_LIMIT):
        raise OverflowError("exponent out of machine range")
    return arr


# ---------------------------------------------------------------------------
# numpy reference path


def monomials_of_degree_numpy(nvars: int, degree: int) -> np.ndarray:
    """All exponent vectors of the given total degree, in lex-descending order."""
    if degree < 0:
        return np.zeros((0, nvars), dtype=np.int64)
    if nvars == 1:
        return np.array([[degree]], dtype=np.int64)
    blocks = []
    for first in range(degree, -1, -1):
        rest = monomials_of_degree_numpy(nvars - 1, degree - first)
        block = np.empty((rest.shape[0], nvars), dtype=np.int64)
        block[:, 0] = first
        block[:, 1:] = rest
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def divisible_mask_numpy(gens: np.ndarray, monos: np.ndarray) -> np.ndarray:
    """mask[i] is True when some row of ``gens`` divides ``monos[i]``."""
    out = np.zeros(monos.shape[0], dtype=np.bool_)
    if gens.shape[0] == 0 or monos.shape[0] == 0:
        return out
    for start in range(0, monos.shape[0], _CHUNK):
        block = monos[start:start + _CHUNK]
        out[start:start + _CHUNK] = (block[:, None, :] >= gens[None, :, :]).all(axis=2).any(axis=1)
    return out


def minimal_rows_numpy(gens: np.ndarray) -> np.ndarray:
    """Indices of rows not divisible by another row (first copy of duplicates kept)."""
    m = gens.shape[0]
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    div = (gens[None, :, :] <= gens[:, None, :]).all(axis=2)  # div[i, j]: row j divides row i
    np.fill_diagonal(div, False)
    equal = (gens[None, :, :] == gens[:, None, :]).all(axis=2)
    earlier = np.tril(np.ones((m, m), dtype=np.bool_), k=-1)
    # a duplicate only kills the later copy
    killers = div & ~(equal & ~earlier)
    return np.flatnonzero(~killers.any(axis=1)).astype(np.int64)


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _monomials_of_degree_nb(nvars, degree, count):
        out = np.zeros((count, nvars), dtype=np.int64)
        if count == 0:
            return out
        cur = np.zeros(nvars, dtype=np.int64)
        cur[0] = degree
        row = 0
        while True:
            out[row, :] = cur
            row += 1
            if row == count:
                break
            # step to the next vector in lex-descending order
            j = nvars - 2
            while cur[j] == 0:
                j -= 1
            cur[j] -= 1
            tail = cur[nvars - 1]
            cur[nvars - 1] = 0
            cur[j + 1] = tail + 1
        return out

    @njit(cache=True)
    def _divisible_mask_nb(gens, monos):
        n = monos.shape[0]
        m = gens.shape[0]
        k = monos.shape[1]
        out = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            for g in range(m):
                ok = True
                for v in range(k):
                    if gens[g, v] > monos[i, v]:
                        ok = False
                        break
                if ok:
                    out[i] = True
                    break
        return out

    @njit(cache=True)
    def _minimal_rows_nb(gens):
        m = gens.shape[0]
        k = gens.shape[1]
        keep = np.ones(m, dtype=np.bool_)
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                divides = True
                equal = True
                for v in range(k):
                    if gens[j, v] > gens[i, v]:
                        divides = False
                        break
                    if gens[j, v] != gens[i, v]:
                        equal = False
                if divides and (not equal or j < i):
                    keep[i] = False
                    break
        return np.flatnonzero(keep).astype(np.int64)

    def monomials_of_degree_numba(nvars: int, degree: int) -> np.ndarray:
        if degree < 0:
            return np.zeros((0, nvars), dtype=np.int64)
        if nvars == 1:
            return np.array([[degree]], dtype=np.int64)
        return _monomials_of_degree_nb(nvars, degree, comb(degree + nvars - 1, nvars - 1))

    def divisible_mask_numba(gens: np.ndarray, monos: np.ndarray) -> np.ndarray:
        if gens.shape[0] == 0 or monos.shape[0] == 0:
            return np.zeros(monos.shape[0], dtype=np.bool_)
        return _divisible_mask_nb(np.ascontiguousarray(gens), np.ascontiguousarray(monos))

    def minimal_rows_numba(gens: np.ndarray) -> np.ndarray:
        if gens.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return _minimal_rows_nb(np.ascontiguousarray(gens))

    monomials_of_degree = monomials_of_degree_numba
    divisible_mask = divisible_mask_numba
    minimal_rows = minimal_rows_numba
else:  # pragma: no cover
    monomials_of_degree = monomials_of_degree_numpy
    divisible_mask = divisible_mask_numpy
    minimal_rows = minimal_rows_numpy


def count_standard(gens: np.ndarray, nvars: int, degree: int) -> int:
    """Number of degree-``degree`` monomials divisible by no row of ``gens``."""
    monos = monomials_of_degree(nvars, degree)
    return int(monos.shape[0] - divisible_mask(gens, monos).sum())
