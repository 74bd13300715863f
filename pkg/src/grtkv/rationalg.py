"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; matrices are small dense row-major
containers.  Everything the graded solvers need reduces to :func:`rref` and
:func:`kernel_basis`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class QMatrix:
    """Dense matrix of rationals, stored row-major and treated as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = [Fraction(e) for e in entries]
        if not entries:
            entries = [Fraction(0)] * (rows * cols)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"QMatrix({self.rows}, {self.cols}, {[str(e) for e in self.entries]})"

    def apply(self, v: Sequence) -> list[Fraction]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum((self.entries[base + j] * v[j] for j in range(self.cols) if v[j]),
                           Fraction(0)))
        return out


def _primitive_int_row(row: Sequence[Fraction]) -> list[int] | None:
    """Scale a rational row to coprime integers; None for the zero row."""
    den = 1
    for e in row:
        if e:
            d = e.denominator
            den = den * d // gcd(den, d)
    ints = [int(e * den) for e in row]
    g = 0
    for e in ints:
        if e:
            g = gcd(g, e)
    if g == 0:
        return None
    return [e // g for e in ints]


def _echelon_int(rows: Iterable[Sequence], cols: int) -> dict[int, list[int]]:
    """Fraction-free incremental echelon form.

    Returns a map pivot column -> integer row whose first nonzero entry is at
    that column.  Rows are kept primitive (content 1) to stop coefficient growth.
    """
    pivots: dict[int, list[int]] = {}
    for raw in rows:
        r = _primitive_int_row([Fraction(e) for e in raw])
        if r is None:
            continue
        for c in range(cols):
            a = r[c]
            if not a:
                continue
            p = pivots.get(c)
            if p is None:
                if a < 0:
                    r = [-e for e in r]
                pivots[c] = r
                break
            b = p[c]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            r = [fa * x - fb * y for x, y in zip(r, p)]
            g = 0
            for e in r:
                if e:
                    g = gcd(g, e)
            if g == 0:
                break
            if g != 1:
                r = [e // g for e in r]
    return pivots


def _reduced_rows(pivots: dict[int, list[int]], cols: int) -> list[list[Fraction]]:
    order = sorted(pivots)
    rows = {c: [Fraction(e, pivots[c][c]) for e in pivots[c]] for c in order}
    # back-substitution from the last pivot upwards
    for idx in range(len(order) - 1, -1, -1):
        c = order[idx]
        prow = rows[c]
        for c2 in order[:idx]:
            r = rows[c2]
            f = r[c]
            if f:
                rows[c2] = [x - f * y for x, y in zip(r, prow)]
    return [rows[c] for c in order]


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row-echelon form and the increasing list of pivot columns.

    Zero rows are kept at the bottom so the shape of the input is preserved.
    """
    pivots = _echelon_int(m.to_rows(), m.cols)
    reduced = _reduced_rows(pivots, m.cols)
    zero = [Fraction(0)] * m.cols
    reduced += [zero] * (m.rows - len(reduced))
    return QMatrix.from_rows(reduced, m.cols) if m.rows else QMatrix(0, m.cols), sorted(pivots)


def rank(m: QMatrix) -> int:
    return len(_echelon_int(m.to_rows(), m.cols))


def rank_of_rows(rows: Iterable[Sequence], cols: int) -> int:
    return len(_echelon_int(rows, cols))


def kernel_from_rows(rows: Iterable[Sequence], cols: int) -> list[list[Fraction]]:
    """Right null space of the matrix whose rows are given lazily.

    Each returned vector has exactly one free coordinate equal to 1 and zeros
    on the other free coordinates.
    """
    pivots = _echelon_int(rows, cols)
    reduced = _reduced_rows(pivots, cols)
    pivot_cols = sorted(pivots)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for pc, r in zip(pivot_cols, reduced):
            v[pc] = -r[f]
        basis.append(v)
    return basis


def kernel_basis(m: QMatrix) -> list[list[Fraction]]:
    """Basis of ``{v : m v = 0}``; its size is ``cols - rank(m)``."""
    return kernel_from_rows(m.to_rows(), m.cols)


def row_space_rref(vectors: Iterable[Sequence], cols: int) -> list[list[Fraction]]:
    """Canonical basis (RREF rows) of the span of ``vectors``."""
    return _reduced_rows(_echelon_int(vectors, cols), cols)
