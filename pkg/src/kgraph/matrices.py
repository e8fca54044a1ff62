"""Exact integer sparse matrices (scipy CSR, int64) and the few helpers the
relation checkers need."""

from __future__ import annotations

from functools import reduce
from typing import Iterable

import numpy as np
import scipy.sparse as sp
import sympy

DTYPE = np.int64


def zeros(n: int) -> sp.csr_array:
    return sp.csr_array((n, n), dtype=DTYPE)


def identity(n: int) -> sp.csr_array:
    return sp.identity(n, dtype=DTYPE, format="csr").tocsr()


def from_triplets(n: int, triplets: Iterable) -> sp.csr_array:
    triplets = list(triplets)
    if not triplets:
        return zeros(n)
    rows, cols, vals = zip(*triplets)
    return sp.csr_array((np.array(vals, dtype=DTYPE), (np.array(rows), np.array(cols))), shape=(n, n))


def to_triplets(a: sp.csr_array) -> list[list[int]]:
    c = sp.coo_array(a)
    c.sum_duplicates()
    out = [[int(r), int(col), int(v)] for r, col, v in zip(c.row, c.col, c.data) if v != 0]
    return sorted(out)


def adjoint(a: sp.csr_array) -> sp.csr_array:
    return sp.csr_array(a.T)


def mul(*ms: sp.csr_array) -> sp.csr_array:
    return reduce(lambda x, y: sp.csr_array(x @ y), ms)


def total(ms: Iterable[sp.csr_array], n: int) -> sp.csr_array:
    ms = list(ms)
    if not ms:
        return zeros(n)
    return reduce(lambda x, y: sp.csr_array(x + y), ms)


def first_nonzero(a: sp.csr_array) -> tuple[int, int] | None:
    c = sp.coo_array(a)
    c.sum_duplicates()
    hits = sorted((int(r), int(col)) for r, col, v in zip(c.row, c.col, c.data) if v != 0)
    return hits[0] if hits else None


def is_zero(a: sp.csr_array) -> bool:
    return first_nonzero(a) is None


def difference_at(a: sp.csr_array, b: sp.csr_array) -> tuple[int, int] | None:
    """First position where ``a`` and ``b`` differ, or None when equal."""
    d = sp.csr_array(a - b)
    if d.count_nonzero() == 0:
        return None
    return first_nonzero(d)


def coo_parts(a: sp.csr_array) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    c = sp.coo_array(a)
    return c.row, c.col, c.data


def side_by_side(blocks: dict[int, tuple], count: int, n: int) -> sp.csr_array:
    """``count`` blocks of size ``n`` side by side, given as ``coo_parts`` by index;
    missing indices are zero blocks."""
    if not blocks:
        return sp.csr_array((n, count * n), dtype=DTYPE)
    rows = np.concatenate([r for r, _, _ in blocks.values()])
    cols = np.concatenate([c + i * n for i, (_, c, _) in blocks.items()])
    vals = np.concatenate([v for _, _, v in blocks.values()]).astype(DTYPE)
    return sp.csr_array((vals, (rows, cols)), shape=(n, count * n))


def differences_by_block(a: sp.csr_array, b: sp.csr_array, width: int) -> dict[int, tuple[int, int]]:
    """For side-by-side blocks of ``width`` columns, the first position (within
    its block) where ``a`` and ``b`` differ, keyed by block index."""
    c = sp.coo_array(sp.csr_array(a - b))
    c.sum_duplicates()
    out: dict[int, tuple[int, int]] = {}
    for r, col, v in zip(c.row.tolist(), c.col.tolist(), c.data.tolist()):
        if v == 0:
            continue
        blk, pos = divmod(col, width)
        pos = (r, pos)
        if blk not in out or pos < out[blk]:
            out[blk] = pos
    return out


def equal(a: sp.csr_array, b: sp.csr_array) -> bool:
    return difference_at(a, b) is None


def is_projection(a: sp.csr_array) -> bool:
    return equal(a, adjoint(a)) and equal(mul(a, a), a)


def is_partial_permutation(a: sp.csr_array) -> bool:
    """0/1 entries with at most one 1 in each row and column."""
    c = sp.coo_array(a)
    c.sum_duplicates()
    nz = c.data != 0
    if not np.all(c.data[nz] == 1):
        return False
    rows, cols = c.row[nz], c.col[nz]
    return len(set(rows.tolist())) == len(rows) and len(set(cols.tolist())) == len(cols)


def rank(a: sp.csr_array) -> int:
    """Exact rank over the rationals."""
    if a.shape[0] == 0 or is_zero(a):
        return 0
    return int(sympy.Matrix(a.toarray().tolist()).rank())


def leq_projection(p: sp.csr_array, q: sp.csr_array) -> bool:
    """``p <= q`` for projections, tested as ``q p = p``."""
    return equal(mul(q, p), p)


def trace(a: sp.csr_array) -> int:
    return int(a.diagonal().sum())
