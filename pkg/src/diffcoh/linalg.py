"""Exact dense linear algebra over the scalar rings.

Matrices are immutable, row-major, and generic over a ring object from
``scalars``.  Elimination (rank, kernel, solve, inverse) is restricted
to fields and uses a deterministic pivot rule: scan columns left to
right, take the first row with a nonzero entry.  Determinant and
adjugate are cofactor expansions and work over any commutative ring,
including jet rings; jet matrices are inverted by eliminating the base
part and summing the finite geometric series of the nilpotent remainder.
"""

from __future__ import annotations

from typing import Any, Callable, Sequence

from .scalars import Jet, JetRing


class LinAlgError(ValueError):
    """Raised for shape mismatches and operations outside a ring's domain."""


class Matrix:
    """An immutable exact matrix over a ring object."""

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: Any, nrows: int, ncols: int, entries: tuple) -> None:
        if nrows < 0 or ncols < 0 or len(entries) != nrows * ncols:
            raise LinAlgError(f"entry count {len(entries)} != {nrows}x{ncols}")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: Any, rows: Sequence[Sequence[Any]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        for row in rows:
            if len(row) != ncols:
                raise LinAlgError("ragged rows")
        return cls(ring, nrows, ncols, tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls, ring: Any, n: int) -> "Matrix":
        return cls(
            ring,
            n,
            n,
            tuple(ring.one if i == j else ring.zero for i in range(n) for j in range(n)),
        )

    @classmethod
    def zeros(cls, ring: Any, nrows: int, ncols: int) -> "Matrix":
        return cls(ring, nrows, ncols, (ring.zero,) * (nrows * ncols))

    @classmethod
    def column(cls, ring: Any, values: Sequence[Any]) -> "Matrix":
        return cls(ring, len(values), 1, tuple(values))

    @classmethod
    def from_columns(cls, ring: Any, columns: Sequence[Sequence[Any]], nrows: int) -> "Matrix":
        for col in columns:
            if len(col) != nrows:
                raise LinAlgError("column length mismatch")
        return cls(
            ring,
            nrows,
            len(columns),
            tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))),
        )

    def at(self, i: int, j: int) -> Any:
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.ncols + j] for i in range(self.nrows))

    def rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.nrows)]

    def to_lists(self) -> list[list[Any]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and other.nrows == self.nrows
            and other.ncols == self.ncols
            and other.entries == self.entries
        )

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, {self.to_lists()!r})"

    def _same_shape(self, other: "Matrix") -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise LinAlgError(
                f"shape mismatch {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        r = self.ring
        return Matrix(
            r,
            self.nrows,
            self.ncols,
            tuple(r.add(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        r = self.ring
        return Matrix(
            r,
            self.nrows,
            self.ncols,
            tuple(r.sub(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "Matrix":
        r = self.ring
        return Matrix(r, self.nrows, self.ncols, tuple(r.neg(a) for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinAlgError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        r = self.ring
        out = []
        for i in range(self.nrows):
            left = self.row(i)
            for j in range(other.ncols):
                acc = r.zero
                for k in range(self.ncols):
                    acc = r.add(acc, r.mul(left[k], other.entries[k * other.ncols + j]))
                out.append(acc)
        return Matrix(r, self.nrows, other.ncols, tuple(out))

    def scale(self, c: Any) -> "Matrix":
        r = self.ring
        return Matrix(r, self.nrows, self.ncols, tuple(r.mul(c, a) for a in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ring,
            self.ncols,
            self.nrows,
            tuple(self.at(i, j) for j in range(self.ncols) for i in range(self.nrows)),
        )

    def matvec(self, v: Sequence[Any]) -> list[Any]:
        if len(v) != self.ncols:
            raise LinAlgError(f"vector length {len(v)} != {self.ncols} columns")
        r = self.ring
        out = []
        for i in range(self.nrows):
            acc = r.zero
            row = self.row(i)
            for k in range(self.ncols):
                acc = r.add(acc, r.mul(row[k], v[k]))
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(a == z for a in self.entries)

    def trace(self) -> Any:
        if self.nrows != self.ncols:
            raise LinAlgError("trace of a non-square matrix")
        r = self.ring
        acc = r.zero
        for i in range(self.nrows):
            acc = r.add(acc, self.at(i, i))
        return acc

    def map_entries(self, fn: Callable[[Any], Any], ring: Any = None) -> "Matrix":
        return Matrix(
            ring if ring is not None else self.ring,
            self.nrows,
            self.ncols,
            tuple(fn(a) for a in self.entries),
        )


def _require_field(ring: Any, what: str) -> None:
    if not getattr(ring, "is_field", False):
        raise LinAlgError(f"{what} requires a field, got {ring!r}")


def _echelon(m: Matrix) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices).

    Pivot rule: for each column in order, use the first remaining row
    with a nonzero entry.  Deterministic for reproducible bases.
    """
    _require_field(m.ring, "elimination")
    f = m.ring
    rows = [list(m.row(i)) for i in range(m.nrows)]
    pivots: list[int] = []
    lead = 0
    for col in range(m.ncols):
        pivot_row = None
        for i in range(lead, m.nrows):
            if rows[i][col] != f.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        inv = f.inv(rows[lead][col])
        rows[lead] = [f.mul(inv, x) for x in rows[lead]]
        for i in range(m.nrows):
            if i != lead and rows[i][col] != f.zero:
                c = rows[i][col]
                rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == m.nrows:
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    return len(_echelon(m)[1])


def kernel_basis(m: Matrix) -> list[list[Any]]:
    """Basis of the right kernel, one vector per free column, in
    increasing free-column order; the free coordinate is set to one."""
    f = m.ring
    rows, pivots = _echelon(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for r_idx, p_col in enumerate(pivots):
            v[p_col] = f.neg(rows[r_idx][free])
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence[Any]) -> list[Any] | None:
    """One solution of m x = b, or None when the system is inconsistent.

    Free coordinates are set to zero, so the answer is deterministic.
    """
    if len(b) != m.nrows:
        raise LinAlgError(f"rhs length {len(b)} != {m.nrows} rows")
    f = m.ring
    _require_field(f, "solve")
    aug = Matrix(
        f,
        m.nrows,
        m.ncols + 1,
        tuple(x for i in range(m.nrows) for x in (*m.row(i), b[i])),
    )
    rows, pivots = _echelon(aug)
    if m.ncols in pivots:
        return None
    x = [f.zero] * m.ncols
    for r_idx, p_col in enumerate(pivots):
        x[p_col] = rows[r_idx][m.ncols]
    return x


def column_space_basis(m: Matrix) -> list[list[Any]]:
    """The pivot columns of m, a deterministic basis of the column space."""
    _, pivots = _echelon(m)
    return [list(m.col(j)) for j in pivots]


def field_matrix_inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise LinAlgError("inverse of a non-square matrix")
    f = m.ring
    _require_field(f, "matrix inverse")
    n = m.nrows
    aug = Matrix(
        f,
        n,
        2 * n,
        tuple(
            x
            for i in range(n)
            for x in (*m.row(i), *(f.one if j == i else f.zero for j in range(n)))
        ),
    )
    rows, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise LinAlgError("matrix is singular")
    return Matrix(f, n, n, tuple(rows[i][n + j] for i in range(n) for j in range(n)))


def det(m: Matrix) -> Any:
    """Determinant by cofactor expansion; valid over any commutative ring."""
    if m.nrows != m.ncols:
        raise LinAlgError("determinant of a non-square matrix")
    r = m.ring
    n = m.nrows
    if n == 0:
        return r.one

    def expand(rows: list[int], cols: list[int]) -> Any:
        if len(rows) == 1:
            return m.at(rows[0], cols[0])
        acc = r.zero
        top = rows[0]
        rest = rows[1:]
        for k, c in enumerate(cols):
            minor = expand(rest, cols[:k] + cols[k + 1 :])
            term = r.mul(m.at(top, c), minor)
            acc = r.add(acc, term) if k % 2 == 0 else r.sub(acc, term)
        return acc

    return expand(list(range(n)), list(range(n)))


def adjugate(m: Matrix) -> Matrix:
    """Adjugate (transposed cofactor matrix): m @ adjugate(m) = det(m) * I."""
    if m.nrows != m.ncols:
        raise LinAlgError("adjugate of a non-square matrix")
    r = m.ring
    n = m.nrows
    if n == 0:
        return m
    if n == 1:
        return Matrix(r, 1, 1, (r.one,))
    out = [[r.zero] * n for _ in range(n)]
    indices = list(range(n))
    for i in range(n):
        rows = indices[:i] + indices[i + 1 :]
        for j in range(n):
            cols = indices[:j] + indices[j + 1 :]
            sub = Matrix.from_rows(r, [[m.at(a, b) for b in cols] for a in rows])
            minor = det(sub)
            # adjugate is the transpose of the cofactor matrix
            out[j][i] = minor if (i + j) % 2 == 0 else r.neg(minor)
    return Matrix.from_rows(r, out)


def jet_matrix_inverse(m: Matrix) -> Matrix:
    """Inverse of a jet matrix whose base part is invertible.

    Writes m = M0 + N with M0 the base part and N nilpotent (entries
    have zero base coefficient), inverts M0 over the base field, and
    sums the geometric series of -M0^{-1} N, which terminates after
    ``ngens`` steps because every product of ngens+1 generators dies.
    """
    ring = m.ring
    if not isinstance(ring, JetRing):
        raise LinAlgError("jet_matrix_inverse expects a matrix over a jet ring")
    if m.nrows != m.ncols:
        raise LinAlgError("inverse of a non-square matrix")
    base = ring.base
    base_part = m.map_entries(lambda x: x.coefficient(()), base)
    base_inv = field_matrix_inverse(base_part).map_entries(ring.embed, ring)
    n = Matrix.identity(ring, m.nrows) - (base_inv @ m)  # nilpotent
    acc = Matrix.identity(ring, m.nrows)
    term = Matrix.identity(ring, m.nrows)
    for _ in range(ring.ngens):
        term = term @ n
        if term.is_zero():
            break
        acc = acc + term
    return acc @ base_inv


def matrix_inverse(m: Matrix) -> Matrix:
    """Inverse over a field or a jet ring, dispatching on the ring."""
    if isinstance(m.ring, JetRing):
        return jet_matrix_inverse(m)
    return field_matrix_inverse(m)


def embed_matrix(m: Matrix, ring: JetRing) -> Matrix:
    """Lift a base-field matrix into a jet ring."""
    if m.ring != ring.base:
        raise LinAlgError("matrix base field does not match jet ring base")
    return m.map_entries(ring.embed, ring)


def jet_part(m: Matrix, subset: Sequence[int]) -> Matrix:
    """Extract the base-field matrix of coefficients of one monomial."""
    ring = m.ring
    if not isinstance(ring, JetRing):
        raise LinAlgError("jet_part expects a matrix over a jet ring")
    key = frozenset(subset)
    return m.map_entries(lambda x: x.coefficient(key), ring.base)
