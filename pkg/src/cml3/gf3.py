"""Exact linear algebra over the three-element field.

Rows are sparse mappings from orderable column keys to nonzero residues
mod 3.  Rank and kernel come from deterministic Gaussian elimination with
smallest-key pivoting and augmented bookkeeping, so every kernel vector is
an exact certificate: recombining the input rows with it gives zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

# Column count above which elimination switches from a dense uint8 matrix
# to dict-based rows.
DENSE_MAX_COLS = 4096


def gf3(value: int) -> int:
    return value % 3


def gf3_inv(value: int) -> int:
    """Multiplicative inverse mod 3 (1 and 2 are self-inverse)."""
    v = value % 3
    if v == 0:
        raise ZeroDivisionError("0 has no inverse in GF(3)")
    return v


class SparseRow:
    """A sparse row over GF(3): column key -> nonzero residue.

    Stored zeros are dropped at construction; iteration follows the column
    key order.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping | Iterable[tuple] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        cleaned = {}
        for key, value in items:
            v = value % 3
            if v:
                cleaned[key] = v
        self._entries = tuple(sorted(cleaned.items()))

    def items(self):
        return self._entries

    def keys(self):
        return tuple(k for k, _ in self._entries)

    def get(self, key, default=0):
        for k, v in self._entries:
            if k == key:
                return v
        return default

    def __getitem__(self, key):
        for k, v in self._entries:
            if k == key:
                return v
        raise KeyError(key)

    def __iter__(self):
        return iter(self.keys())

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if isinstance(other, SparseRow):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return f"SparseRow({dict(self._entries)!r})"


@dataclass(frozen=True)
class RankResult:
    """Rank plus an exact, canonical kernel description of a row system.

    kernel_basis holds one coefficient per input row; every vector
    recombines the rows to exactly zero, and rank + len(kernel_basis)
    equals the number of input rows.
    """

    rank: int
    kernel_basis: tuple[tuple[int, ...], ...]
    pivot_keys: tuple


def rank_and_kernel(rows: Iterable[Mapping | SparseRow]) -> RankResult:
    """Echelonize a sparse row system over GF(3).

    Args:
        rows: sparse rows sharing one totally ordered column-key universe.

    Returns:
        RankResult with deterministic pivot keys (columns processed in
        ascending key order) and the kernel basis in reduced row echelon
        form over the row-index coordinates.
    """
    normalized = []
    for row in rows:
        items = row.items() if hasattr(row, "items") else row
        cleaned = {}
        for key, value in items:
            v = value % 3
            if v:
                cleaned[key] = v
        normalized.append(cleaned)

    nrows = len(normalized)
    if nrows == 0:
        return RankResult(0, (), ())

    keys = sorted({k for row in normalized for k in row})
    if len(keys) <= DENSE_MAX_COLS:
        rank, pivot_cols, kernel = _eliminate_dense(normalized, keys)
        pivot_keys = tuple(keys[c] for c in pivot_cols)
    else:
        rank, pivot_keys, kernel = _eliminate_sparse(normalized)
    return RankResult(rank, _canonical_kernel(kernel, nrows), pivot_keys)


def rank_only(rows: Iterable[Mapping | SparseRow]) -> tuple[int, tuple]:
    """Rank and pivot keys without kernel bookkeeping.

    Same pivoting rule as rank_and_kernel, but skips the augmented block,
    which matters when the row count is much larger than the column count.
    """
    normalized = []
    for row in rows:
        items = row.items() if hasattr(row, "items") else row
        cleaned = {}
        for key, value in items:
            v = value % 3
            if v:
                cleaned[key] = v
        if cleaned:
            normalized.append(cleaned)
    if not normalized:
        return 0, ()

    keys = sorted({k for row in normalized for k in row})
    col_of = {k: i for i, k in enumerate(keys)}
    nrows, ncols = len(normalized), len(keys)
    mat = np.zeros((nrows, ncols), dtype=np.uint8)
    for i, row in enumerate(normalized):
        for k, v in row.items():
            mat[i, col_of[k]] = v

    rank = 0
    pivot_cols = []
    for col in range(ncols):
        candidates = np.nonzero(mat[rank:, col])[0]
        if candidates.size == 0:
            continue
        piv = rank + int(candidates[0])
        if piv != rank:
            mat[[rank, piv]] = mat[[piv, rank]]
        if mat[rank, col] == 2:
            mat[rank] = (mat[rank] * 2) % 3
        below = rank + 1 + np.nonzero(mat[rank + 1 :, col])[0]
        if below.size:
            factors = (3 - mat[below, col].astype(np.int64)) % 3
            mat[below] = (mat[below] + np.outer(factors, mat[rank])) % 3
        pivot_cols.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, tuple(keys[c] for c in pivot_cols)


def _eliminate_dense(rows: list[dict], keys: list):
    col_of = {k: i for i, k in enumerate(keys)}
    nrows, ncols = len(rows), len(keys)
    aug = np.zeros((nrows, ncols + nrows), dtype=np.uint8)
    for i, row in enumerate(rows):
        for k, v in row.items():
            aug[i, col_of[k]] = v
        aug[i, ncols + i] = 1

    rank = 0
    pivot_cols = []
    for col in range(ncols):
        candidates = np.nonzero(aug[rank:, col])[0]
        if candidates.size == 0:
            continue
        piv = rank + int(candidates[0])
        if piv != rank:
            aug[[rank, piv]] = aug[[piv, rank]]
        if aug[rank, col] == 2:
            aug[rank] = (aug[rank] * 2) % 3
        others = np.nonzero(aug[:, col])[0]
        others = others[others != rank]
        if others.size:
            factors = (3 - aug[others, col].astype(np.int64)) % 3
            aug[others] = (aug[others] + np.outer(factors, aug[rank])) % 3
        pivot_cols.append(col)
        rank += 1
        if rank == nrows:
            break

    kernel = [tuple(int(v) for v in aug[i, ncols:]) for i in range(rank, nrows)]
    return rank, pivot_cols, kernel


def _eliminate_sparse(rows: list[dict]):
    nrows = len(rows)
    pivots: dict = {}  # lead key -> (row dict, combo dict)
    kernel = []
    for idx, row in enumerate(rows):
        cur = dict(row)
        combo = {idx: 1}
        while cur:
            lead = min(cur)
            hit = pivots.get(lead)
            if hit is None:
                inv = gf3_inv(cur[lead])
                if inv != 1:
                    cur = {k: (v * inv) % 3 for k, v in cur.items()}
                    combo = {k: (v * inv) % 3 for k, v in combo.items()}
                pivots[lead] = (cur, combo)
                break
            prow, pcombo = hit
            factor = (3 - cur[lead]) % 3
            for k, v in prow.items():
                nv = (cur.get(k, 0) + factor * v) % 3
                if nv:
                    cur[k] = nv
                elif k in cur:
                    del cur[k]
            for k, v in pcombo.items():
                nv = (combo.get(k, 0) + factor * v) % 3
                if nv:
                    combo[k] = nv
                elif k in combo:
                    del combo[k]
        else:
            vec = [0] * nrows
            for k, v in combo.items():
                vec[k] = v
            kernel.append(tuple(vec))
    rank = len(pivots)
    return rank, tuple(sorted(pivots)), kernel


def _canonical_kernel(kernel: list[tuple[int, ...]], width: int):
    """Reduce kernel vectors to their unique RREF basis."""
    if not kernel:
        return ()
    mat = np.array(kernel, dtype=np.uint8) % 3
    rank = 0
    for col in range(width):
        candidates = np.nonzero(mat[rank:, col])[0]
        if candidates.size == 0:
            continue
        piv = rank + int(candidates[0])
        if piv != rank:
            mat[[rank, piv]] = mat[[piv, rank]]
        if mat[rank, col] == 2:
            mat[rank] = (mat[rank] * 2) % 3
        others = np.nonzero(mat[:, col])[0]
        others = others[others != rank]
        if others.size:
            factors = (3 - mat[others, col].astype(np.int64)) % 3
            mat[others] = (mat[others] + np.outer(factors, mat[rank])) % 3
        rank += 1
        if rank == mat.shape[0]:
            break
    return tuple(tuple(int(v) for v in mat[i]) for i in range(rank))
