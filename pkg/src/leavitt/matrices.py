"""Dense exact matrices over a field, with the group-inverse machinery.

Everything is elimination-based and exact: rank, rank factorization
m = C R (C of full column rank, R of full row rank), and the group inverse
m# = C (RC)^-2 R, which exists precisely when RC is invertible, i.e. when
rank(m^2) = rank(m).
"""

from __future__ import annotations

from .errors import NotGroupInvertible, PreconditionError
from .fields import QQ


class Matrix:
    """Immutable exact matrix; rows of field scalars."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows, field=QQ, ncols=None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise PreconditionError("ragged matrix")
        else:
            self.ncols = ncols or 0
        self.field = field

    @classmethod
    def zero(cls, nrows, ncols, field=QQ):
        z = field.zero()
        return cls([[z] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def identity(cls, n, field=QQ):
        z, o = field.zero(), field.one()
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_int_rows(cls, rows, field=QQ):
        return cls([[field.from_int(x) for x in r] for r in rows], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self):
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.field,
            self.nrows,
        )

    def __add__(self, other):
        self._match(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.field,
            self.ncols,
        )

    def __sub__(self, other):
        self._match(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.field,
            self.ncols,
        )

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.field, self.ncols)

    def scale(self, scalar):
        return Matrix([[a * scalar for a in r] for r in self.rows], self.field, self.ncols)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise PreconditionError(f"shape mismatch: {self.shape} * {other.shape}")
        z = self.field.zero()
        cols = other.transpose().rows
        return Matrix(
            [[_dot(r, c, z) for c in cols] for r in self.rows], self.field, other.ncols
        )

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def _match(self, other):
        if self.shape != other.shape:
            raise PreconditionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix[{body}]"

    # -- elimination -----------------------------------------------------

    def rref(self):
        """(reduced row echelon form, pivot column list)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        lead = 0
        for col in range(self.ncols):
            pivot_row = next((i for i in range(lead, self.nrows) if rows[i][col]), None)
            if pivot_row is None:
                continue
            rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
            inv = self.field.one() / rows[lead][col]
            rows[lead] = [a * inv for a in rows[lead]]
            for i in range(self.nrows):
                if i != lead and rows[i][col]:
                    factor = rows[i][col]
                    rows[i] = [a - factor * b for a, b in zip(rows[i], rows[lead])]
            pivots.append(col)
            lead += 1
            if lead == self.nrows:
                break
        return Matrix(rows, self.field, self.ncols), pivots

    def rank(self):
        return len(self.rref()[1])

    def rank_factorization(self):
        """C (nrows x r) and R (r x ncols) with self == C R."""
        reduced, pivots = self.rref()
        r = len(pivots)
        C = Matrix(
            [[self.rows[i][j] for j in pivots] for i in range(self.nrows)],
            self.field,
            r,
        )
        R = Matrix(reduced.rows[:r], self.field, self.ncols)
        return C, R

    def inverse(self):
        if self.nrows != self.ncols:
            raise PreconditionError("only square matrices invert")
        n = self.nrows
        aug = Matrix(
            [list(self.rows[i]) + list(Matrix.identity(n, self.field).rows[i]) for i in range(n)],
            self.field,
            2 * n,
        )
        reduced, pivots = aug.rref()
        if pivots != list(range(n)):
            raise NotGroupInvertible("matrix is singular")
        return Matrix([r[n:] for r in reduced.rows], self.field, n)

    def group_inverse(self):
        """The unique b with aba=a, bab=b, ab=ba; exists iff rank(m)=rank(m^2)."""
        C, R = self.rank_factorization()
        core = R * C
        try:
            core_inv = core.inverse()
        except NotGroupInvertible:
            raise NotGroupInvertible(
                "no group inverse: rank(m^2) < rank(m)"
            ) from None
        return C * core_inv * core_inv * R

    def is_group_invertible(self):
        C, R = self.rank_factorization()
        return (R * C).rank() == R.nrows


def _dot(row, col, zero):
    acc = zero
    for a, b in zip(row, col):
        acc = acc + a * b
    return acc


class BlockMatrix:
    """Element of a finite direct sum of matrix algebras, blockwise exact."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        self.blocks = tuple(blocks)

    @classmethod
    def zero(cls, sizes, field=QQ):
        return cls(Matrix.zero(n, n, field) for n in sizes)

    @property
    def sizes(self):
        return tuple(b.nrows for b in self.blocks)

    def _match(self, other):
        if self.sizes != other.sizes:
            raise PreconditionError("block structure mismatch")

    def __add__(self, other):
        self._match(other)
        return BlockMatrix(a + b for a, b in zip(self.blocks, other.blocks))

    def __sub__(self, other):
        self._match(other)
        return BlockMatrix(a - b for a, b in zip(self.blocks, other.blocks))

    def __neg__(self):
        return BlockMatrix(-b for b in self.blocks)

    def __mul__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        self._match(other)
        return BlockMatrix(a * b for a, b in zip(self.blocks, other.blocks))

    def scale(self, scalar):
        return BlockMatrix(b.scale(scalar) for b in self.blocks)

    def transpose(self):
        return BlockMatrix(b.transpose() for b in self.blocks)

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks)

    def rank(self):
        return sum(b.rank() for b in self.blocks)

    def group_inverse(self):
        out = []
        for i, b in enumerate(self.blocks):
            try:
                out.append(b.group_inverse())
            except NotGroupInvertible:
                raise NotGroupInvertible(f"block {i} has no group inverse") from None
        return BlockMatrix(out)

    def is_group_invertible(self):
        return all(b.is_group_invertible() for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"BlockMatrix(sizes={list(self.sizes)})"
