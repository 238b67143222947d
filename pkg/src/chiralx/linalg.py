"""Exact sparse linear algebra over the rationals.

Matrices are stored as dicts of sparse columns; every computation is done
with Fraction pivots, so ranks and kernels are exact.  Sizes here are small
(hundreds of rows at most), plain fraction Gaussian elimination is enough.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction


class SparseMatrix:
    """Sparse rational matrix with named (hashable) row and column keys."""

    def __init__(self):
        self.cols = {}  # col_key -> {row_key: Fraction}

    def set_column(self, col_key, entries):
        col = {r: v for r, v in entries.items() if v != 0}
        self.cols[col_key] = col

    def add_entry(self, row_key, col_key, value):
        col = self.cols.setdefault(col_key, {})
        new = col.get(row_key, 0) + value
        if new == 0:
            col.pop(row_key, None)
        else:
            col[row_key] = new

    def num_cols(self):
        return len(self.cols)

    def column_keys(self):
        return list(self.cols.keys())

    def is_zero(self):
        return all(not col for col in self.cols.values())

    def compose(self, other):
        """Matrix product self*other; other's columns are expanded through self."""
        out = SparseMatrix()
        for ck, col in other.cols.items():
            acc = {}
            for mid, v in col.items():
                inner = self.cols.get(mid)
                if inner is None:
                    continue
                for r, w in inner.items():
                    nv = acc.get(r, Fraction(0)) + v * w
                    if nv == 0:
                        acc.pop(r, None)
                    else:
                        acc[r] = nv
            out.cols[ck] = acc
        return out


def rank(columns):
    """Exact rank of a list of sparse columns ({row_key: Fraction})."""
    pivots = {}  # pivot row -> reduced column
    r = 0
    for col in columns:
        col = _reduce(dict(col), pivots)
        if col:
            piv = _pick_pivot(col)
            inv = Rat(1, 1) / col[piv]
            col = {k: v * inv for k, v in col.items()}
            pivots[piv] = col
            r += 1
    return r


def _pick_pivot(col):
    # deterministic: smallest row key under repr ordering
    return min(col.keys(), key=repr)


def _reduce(col, pivots):
    changed = True
    while changed:
        changed = False
        for piv, pcol in pivots.items():
            c = col.get(piv)
            if c:
                for k, v in pcol.items():
                    nv = col.get(k, 0) - c * v
                    if nv == 0:
                        col.pop(k, None)
                    else:
                        col[k] = nv
                changed = True
    return col


class Echelon:
    """Incremental echelon basis; supports membership tests and rank queries."""

    def __init__(self):
        self.pivots = {}

    def add(self, col):
        """Reduce col against the basis; insert if independent.  Returns True if added."""
        col = _reduce(dict(col), self.pivots)
        if not col:
            return False
        piv = _pick_pivot(col)
        inv = Rat(1, 1) / col[piv]
        self.pivots[piv] = {k: v * inv for k, v in col.items()}
        return True

    def contains(self, col):
        return not _reduce(dict(col), self.pivots)

    @property
    def rank(self):
        return len(self.pivots)


def kernel_dimension(columns, num_rows_hint=None):
    """dim ker of the linear map sending basis vector i to columns[i]."""
    return len(columns) - rank(columns)
