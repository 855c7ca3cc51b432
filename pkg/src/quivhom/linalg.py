"""Dense matrices over exact rationals or 64-bit floats.

Every matrix carries a field-mode tag fixed at construction: "exact"
(entries are fractions.Fraction) or "float". Rank in exact mode is the
rank over the rationals; in float mode it counts pivots above a
tolerance under partial pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import FieldModeError

EXACT = "exact"
FLOAT = "float"

_F0 = Fraction(0)
_F1 = Fraction(1)

# Bareiss is quadratic in the smaller dimension with big-integer minors;
# past this size the sparse elimination path wins comfortably.
_BAREISS_LIMIT = 48


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """Row-major dense matrix with a fixed field mode."""

    rows: int
    cols: int
    entries: tuple
    mode: str

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise FieldModeError(f"unknown field mode {self.mode!r}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], mode: str = EXACT) -> DenseMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        conv = float if mode == FLOAT else Fraction
        return cls(nrows, ncols, tuple(conv(x) for x in flat), mode)

    @classmethod
    def zeros(cls, rows: int, cols: int, mode: str = EXACT) -> DenseMatrix:
        zero = 0.0 if mode == FLOAT else _F0
        return cls(rows, cols, (zero,) * (rows * cols), mode)

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> DenseMatrix:
        zero, one = (0.0, 1.0) if mode == FLOAT else (_F0, _F1)
        ent = [zero] * (n * n)
        for i in range(n):
            ent[i * n + i] = one
        return cls(n, n, tuple(ent), mode)

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DenseMatrix)
            and self.mode == other.mode
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def transpose(self) -> DenseMatrix:
        ent = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return DenseMatrix(self.cols, self.rows, ent, self.mode)

    def _check_mode(self, other: DenseMatrix) -> None:
        if self.mode != other.mode:
            raise FieldModeError("mixed exact/float operands")

    def matmul(self, other: DenseMatrix) -> DenseMatrix:
        self._check_mode(other)
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = 0.0 if self.mode == FLOAT else _F0
        out = [zero] * (self.rows * other.cols)
        oc = other.cols
        # skip zero left-entries: boundary matrices are extremely sparse
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a == 0:
                    continue
                obase = k * oc
                out_base = i * oc
                for j in range(oc):
                    b = other.entries[obase + j]
                    if b != 0:
                        out[out_base + j] += a * b
        return DenseMatrix(self.rows, other.cols, tuple(out), self.mode)

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        return self.matmul(other)

    def sub(self, other: DenseMatrix) -> DenseMatrix:
        self._check_mode(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        ent = tuple(a - b for a, b in zip(self.entries, other.entries))
        return DenseMatrix(self.rows, self.cols, ent, self.mode)

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        return self.sub(other)

    def rank(self, tol: float = 1e-9) -> int:
        """Rank of the matrix. Exact mode: the rank over the rationals
        (fraction-free Bareiss elimination; a sparse elimination takes over
        for large matrices). Float mode: pivots with |p| > tol under
        Gaussian elimination with partial pivoting."""
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.mode == FLOAT:
            if tol < 0:
                raise ValueError("tol must be nonnegative")
            return _rank_float(self, tol)
        rows = _integer_rows(self)
        if min(self.rows, self.cols) <= _BAREISS_LIMIT:
            return _rank_bareiss(rows, self.cols)
        return _rank_sparse(rows)

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        """A basis of the right null space {x : self @ x == 0}.

        Exact mode only. Vectors come from the reduced echelon form, one
        per free column in ascending column order, with entry 1 at the
        free column.
        """
        if self.mode != EXACT:
            raise FieldModeError("kernel_basis requires exact mode")
        reduced, pivots = _rref(self)
        free = [j for j in range(self.cols) if j not in pivots]
        basis: list[tuple[Fraction, ...]] = []
        for f in free:
            vec = [_F0] * self.cols
            vec[f] = _F1
            for r, pc in enumerate(pivots):
                vec[pc] = -reduced[r][f]
            basis.append(tuple(vec))
        return basis


def _rank_float(m: DenseMatrix, tol: float) -> int:
    a = [list(m.row(i)) for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    rank = 0
    r = 0
    for c in range(ncols):
        piv, best = -1, tol
        for i in range(r, nrows):
            v = abs(a[i][c])
            if v > best:
                piv, best = i, v
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        pval = prow[c]
        for i in range(r + 1, nrows):
            f = a[i][c] / pval
            if f != 0.0:
                row = a[i]
                for j in range(c, ncols):
                    row[j] -= f * prow[j]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def _integer_rows(m: DenseMatrix) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves rank)."""
    out: list[list[int]] = []
    for i in range(m.rows):
        row = m.row(i)
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _rank_bareiss(a: list[list[int]], ncols: int) -> int:
    """Fraction-free Gaussian elimination (Bareiss), first-nonzero pivoting."""
    nrows = len(a)
    prev = 1
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if a[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _rank_sparse(rows: list[list[int]]) -> int:
    """Exact integer rank by sparse elimination with Markowitz-style
    pivoting; rows are gcd-normalized to keep entries small."""
    sparse: list[dict[int, int]] = []
    for row in rows:
        d = {j: x for j, x in enumerate(row) if x != 0}
        if d:
            g = gcd(*d.values())
            if g > 1:
                d = {j: x // g for j, x in d.items()}
            sparse.append(d)
    col_rows: dict[int, set[int]] = {}
    for i, d in enumerate(sparse):
        for j in d:
            col_rows.setdefault(j, set()).add(i)
    rank = 0
    while True:
        best: tuple[int, int] | None = None
        for j, rs in col_rows.items():
            if rs:
                key = (len(rs), j)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        c = best[1]
        piv = min(col_rows[c], key=lambda i: (len(sparse[i]), i))
        prow = sparse[piv]
        p = prow[c]
        rank += 1
        for j in prow:
            col_rows[j].discard(piv)
        for i in list(col_rows[c]):
            row = sparse[i]
            f = row[c]
            g = gcd(p, f)
            a, b = p // g, f // g
            # row <- a*row - b*prow (a valid elementary operation since a != 0)
            if a != 1:
                for j in row:
                    row[j] *= a
            for j, pv in prow.items():
                nv = row.get(j, 0) - b * pv
                if nv:
                    if j not in row:
                        col_rows.setdefault(j, set()).add(i)
                    row[j] = nv
                elif j in row:
                    del row[j]
                    col_rows[j].discard(i)
            if row:
                g = gcd(*row.values())
                if g > 1:
                    for j in row:
                        row[j] //= g
    return rank


def _rref(m: DenseMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot cols)."""
    a = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = -1
        for i in range(r, m.rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        pval = a[r][c]
        a[r] = [x / pval for x in a[r]]
        prow = a[r]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[: len(pivots)], pivots


def matrix_from_columns(cols: Iterable[Sequence], mode: str = EXACT) -> DenseMatrix:
    """Convenience constructor from a sequence of columns."""
    cols = list(cols)
    if not cols:
        return DenseMatrix.zeros(0, 0, mode)
    return DenseMatrix.from_rows(list(map(list, zip(*cols))), mode)
