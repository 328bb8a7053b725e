"""Cohomology of finite cochain complexes and long-exact-sequence checks.

Both the group and the Lie theory produce the same shape of data: a
subcomplex A (cochains of the difference operator), a quotient complex C
(ordinary cochains), and a total complex B_n = C_n + A_n whose
differential is the block map

    (c, a)  ->  (dC c, K c + dA a),

where K anticommutes with the differentials.  The short exact sequence
0 -> A -> B -> C -> 0 then yields a long exact sequence in cohomology
whose connecting map is induced by K.  This module computes explicit
bases for all cohomology spaces and verifies exactness at every node by
two criteria: consecutive maps compose to zero, and ranks add up to the
dimension of the middle space.

Degrees are 1-based; every complex here starts in degree 1 (there are
no degree-0 cochains in the normalized theory).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .linalg import Matrix, column_space_basis, kernel_basis, rank, solve


class InternalCheckError(RuntimeError):
    """A structural identity the theory guarantees failed to hold.

    Raised when, for example, an induced map produces a vector outside
    the cocycle space.  Indicates corrupt inputs or an implementation
    bug, never bad user data.
    """


@dataclass(frozen=True)
class LESNode:
    degree: int
    node: str
    ok: bool
    detail: str


@dataclass
class CohomologySpace:
    """Explicit basis data for one cohomology space H^n = Z / B."""

    dim_total: int
    reps: list[list[Any]]
    boundaries: list[list[Any]]

    @property
    def dim(self) -> int:
        return len(self.reps)


def block_matrix(ring: Any, blocks: list[list[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of blocks with consistent shapes."""
    row_heights = [row[0].nrows for row in blocks]
    col_widths = [b.ncols for b in blocks[0]]
    for row in blocks:
        for j, b in enumerate(row):
            if b.ncols != col_widths[j] or b.nrows != row[0].nrows:
                raise ValueError("inconsistent block shapes")
    entries = []
    for bi, row in enumerate(blocks):
        for i in range(row_heights[bi]):
            for b in row:
                entries.extend(b.row(i))
    return Matrix(ring, sum(row_heights), sum(col_widths), tuple(entries))


def cohomology_space(field: Any, d_out: Matrix, d_in: Matrix | None) -> CohomologySpace:
    """H = ker(d_out) / im(d_in) with deterministic representative choice.

    Representatives are the kernel-basis vectors that are independent
    modulo the boundary space, in kernel-basis order.
    """
    cocycles = kernel_basis(d_out)
    boundaries = column_space_basis(d_in) if d_in is not None else []
    span: list[list[Any]] = list(boundaries)
    reps: list[list[Any]] = []
    n = d_out.ncols
    for z in cocycles:
        mat = Matrix.from_columns(field, span, n)
        if solve(mat, z) is None:
            reps.append(z)
            span.append(z)
    if len(reps) != len(cocycles) - len(boundaries):
        raise InternalCheckError(
            "boundary space is not contained in the cocycle space; "
            "the differentials do not compose to zero"
        )
    return CohomologySpace(dim_total=n, reps=reps, boundaries=boundaries)


def class_coordinates(field: Any, space: CohomologySpace, vector: list[Any]) -> list[Any]:
    """Coordinates of a cocycle's class in the chosen representative basis."""
    columns = space.reps + space.boundaries
    mat = Matrix.from_columns(field, columns, space.dim_total)
    x = solve(mat, vector)
    if x is None:
        raise InternalCheckError("vector is not a cocycle of the target complex")
    return x[: space.dim]


def induced_map(
    field: Any,
    chain_map: Matrix,
    dom: CohomologySpace,
    cod: CohomologySpace,
) -> Matrix:
    """Matrix of the map induced on cohomology by a cocycle-preserving map."""
    cols = [class_coordinates(field, cod, chain_map.matvec(rep)) for rep in dom.reps]
    return Matrix.from_columns(field, cols, cod.dim)


@dataclass
class LESData:
    """The three complexes of a difference theory, as matrix providers.

    ``dim_a(n)`` / ``dim_c(n)`` give space dimensions; ``d_a(n)`` /
    ``d_c(n)`` the differentials X_n -> X_{n+1}; ``k(n)`` the
    anticommuting map C_n -> A_{n+1}.
    """

    field: Any
    dim_a: Callable[[int], int]
    dim_c: Callable[[int], int]
    d_a: Callable[[int], Matrix]
    d_c: Callable[[int], Matrix]
    k: Callable[[int], Matrix]

    def dim_b(self, n: int) -> int:
        return self.dim_c(n) + self.dim_a(n)

    def d_b(self, n: int) -> Matrix:
        f = self.field
        zero = Matrix.zeros(f, self.dim_c(n + 1), self.dim_a(n))
        return block_matrix(f, [[self.d_c(n), zero], [self.k(n), self.d_a(n)]])

    def inclusion(self, n: int) -> Matrix:
        f = self.field
        return block_matrix(
            f,
            [
                [Matrix.zeros(f, self.dim_c(n), self.dim_a(n))],
                [Matrix.identity(f, self.dim_a(n))],
            ],
        )

    def projection(self, n: int) -> Matrix:
        f = self.field
        return block_matrix(
            f,
            [[Matrix.identity(f, self.dim_c(n)), Matrix.zeros(f, self.dim_c(n), self.dim_a(n))]],
        )


def verify_anticommutation(data: LESData, max_degree: int) -> list[LESNode]:
    """Check d_A K + K d_C = 0 degreewise, the identity that makes the
    total differential square to zero."""
    out = []
    for n in range(1, max_degree + 1):
        lhs = data.d_a(n + 1) @ data.k(n)
        rhs = data.k(n + 1) @ data.d_c(n)
        ok = (lhs + rhs).is_zero()
        out.append(
            LESNode(
                degree=n,
                node="anticommutation",
                ok=ok,
                detail="d_A K + K d_C = 0" if ok else "d_A K + K d_C != 0",
            )
        )
    return out


def verify_les(data: LESData, max_degree: int) -> list[LESNode]:
    """Verify exactness of the long exact sequence through ``max_degree``.

    Checks the three node types for each degree n <= max_degree:
    at H^n(B) (image of inclusion = kernel of projection), at H^n(C)
    (image of projection = kernel of connecting map), and at H^{n+1}(A)
    (image of connecting map = kernel of inclusion).
    """
    f = data.field

    def h(which: str, n: int) -> CohomologySpace:
        if which == "A":
            d_out, d_in = data.d_a(n), (data.d_a(n - 1) if n > 1 else None)
        elif which == "B":
            d_out, d_in = data.d_b(n), (data.d_b(n - 1) if n > 1 else None)
        else:
            d_out, d_in = data.d_c(n), (data.d_c(n - 1) if n > 1 else None)
        return cohomology_space(f, d_out, d_in)

    ha = {n: h("A", n) for n in range(1, max_degree + 2)}
    hb = {n: h("B", n) for n in range(1, max_degree + 2)}
    hc = {n: h("C", n) for n in range(1, max_degree + 1)}

    i_star = {n: induced_map(f, data.inclusion(n), ha[n], hb[n]) for n in ha}
    p_star = {n: induced_map(f, data.projection(n), hb[n], hc[n]) for n in hc}
    k_star = {n: induced_map(f, data.k(n), hc[n], ha[n + 1]) for n in hc}

    nodes = []

    def check(degree: int, node: str, first: Matrix, second: Matrix, middle_dim: int) -> None:
        composes = (second @ first).is_zero()
        ranks = rank(first) + rank(second) == middle_dim
        ok = composes and ranks
        if ok:
            detail = "exact"
        elif not composes:
            detail = "consecutive maps do not compose to zero"
        else:
            detail = (
                f"rank {rank(first)} + rank {rank(second)} != dim {middle_dim}"
            )
        nodes.append(LESNode(degree=degree, node=node, ok=ok, detail=detail))

    for n in range(1, max_degree + 1):
        check(n, f"H^{n}(total)", i_star[n], p_star[n], hb[n].dim)
        check(n, f"H^{n}(quotient)", p_star[n], k_star[n], hc[n].dim)
        check(n + 1, f"H^{n + 1}(sub)", k_star[n], i_star[n + 1], ha[n + 1].dim)
    return nodes
