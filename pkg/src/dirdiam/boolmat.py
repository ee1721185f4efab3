"""Sparse boolean matrices with bitset-backed products.

Rows store sorted column indices.  Products OR together big-int bitmasks, one
per row of the right factor, so a boolean matrix product is a handful of
Python big-int operations per output row.  An optional row-blocking knob
splits the left factor's rows into chunks; it exists to bound peak working
set and never changes the result.
"""
from __future__ import annotations

from dataclasses import dataclass

# default cap on block_rows * B.cols bits of product accumulator
_DEFAULT_BLOCK_BITS = 1 << 22


@dataclass(frozen=True)
class SparseBoolMatrix:
    rows: int
    cols: int
    row_entries: tuple  # row_entries[i] = sorted tuple of column indices

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.row_entries) != self.rows:
            raise ValueError("row_entries length must equal row count")
        for i, entries in enumerate(self.row_entries):
            prev = -1
            for c in entries:
                if not (prev < c < self.cols):
                    raise ValueError(
                        f"row {i}: entries must be strictly increasing in [0, {self.cols})")
                prev = c

    @classmethod
    def from_rows(cls, rows, cols, entries):
        """entries: iterable over per-row iterables of column indices
        (need not be sorted or deduplicated)."""
        return cls(rows, cols, tuple(tuple(sorted(set(r))) for r in entries))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple((i,) for i in range(n)))

    @property
    def nnz(self):
        return sum(len(r) for r in self.row_entries)

    def row_masks(self):
        """Rows as big-int bitmasks (bit c set iff entry (i, c) present)."""
        return [_mask(r) for r in self.row_entries]


def _mask(cols_iterable):
    m = 0
    for c in cols_iterable:
        m |= 1 << c
    return m


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _product_masks(a, b, block_rows=None):
    """Row bitmasks of the boolean product a @ b."""
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    if block_rows is None:
        block_rows = max(1, _DEFAULT_BLOCK_BITS // max(1, b.cols))
    if block_rows < 1:
        raise ValueError("block_rows must be >= 1")
    bmasks = b.row_masks()
    out = []
    for lo in range(0, a.rows, block_rows):
        for entries in a.row_entries[lo:lo + block_rows]:
            acc = 0
            for j in entries:
                acc |= bmasks[j]
            out.append(acc)
    if not a.rows:
        out = []
    return out


def product(a, b, block_rows=None):
    """Boolean matrix product over (OR, AND)."""
    masks = _product_masks(a, b, block_rows)
    return SparseBoolMatrix(a.rows, b.cols, tuple(tuple(_bits(m)) for m in masks))


def find_zero_entry(c, row_labels=None, col_labels=None):
    """First (row, col) position where ``c`` has a zero, scanning rows in
    order and columns left to right; None if the matrix is all ones or has
    no entries at all (zero rows or zero columns).

    Labels, when given, translate the returned indices.
    """
    if c.rows == 0 or c.cols == 0:
        return None
    full = (1 << c.cols) - 1
    for i, entries in enumerate(c.row_entries):
        missing = full & ~_mask(entries)
        if missing:
            j = (missing & -missing).bit_length() - 1
            return (row_labels[i] if row_labels is not None else i,
                    col_labels[j] if col_labels is not None else j)
    return None


def all_pairs_witnessed(pairs, block_rows=None):
    """Given factor pairs [(A_0, B_0), (A_1, B_1), ...] of identical outer
    shape, report whether every output position (i, j) is nonzero in at
    least one of the products A_k @ B_k.

    Vacuously True when the output has no positions.  Raises on an empty
    family or mismatched shapes.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one factor pair")
    rows, cols = pairs[0][0].rows, pairs[0][1].cols
    for a, b in pairs:
        if a.rows != rows or b.cols != cols:
            raise ValueError("factor pairs disagree on output shape")
    if rows == 0 or cols == 0:
        return True
    full = (1 << cols) - 1
    acc = [0] * rows
    for a, b in pairs:
        for i, m in enumerate(_product_masks(a, b, block_rows)):
            acc[i] |= m
        if all(m == full for m in acc):
            return True
    return all(m == full for m in acc)
