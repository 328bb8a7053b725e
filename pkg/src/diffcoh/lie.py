"""Difference Lie algebras and their cohomology.

A difference operator on a Lie algebra is a linear map D with

    D[x, y] = [Dx, y] + [x, Dy] + [Dx, Dy],

equivalently: D_+ = id + D is a Lie algebra endomorphism.  A
representation of (g, D) is (V, T, theta) with theta an ordinary
representation and

    T(theta(x) u) = theta(Dx) u + theta(x) T(u) + theta(Dx) T(u).

The complexes mirror the group side: ordinary Chevalley-Eilenberg
cochains Hom(wedge^n g, V) twisted by theta, the same spaces shifted by
one twisted by theta_D(x) = theta(x) + theta(Dx), and the pair complex
coupling them through the connecting cochain map

    K(z)(x_1..x_n) = (-1)^n ( sum over nonempty subsets S of
                              z(.. D at positions in S ..)
                              - T z(x_1..x_n) ),

which by multilinearity equals
(-1)^n ( z(D_+ x_1, .., D_+ x_n) - z(x) - T z(x) ).  Both forms are
evaluated on every call and compared; disagreement aborts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .exactness import (
    InternalCheckError,
    LESData,
    LESNode,
    cohomology_space,
    verify_anticommutation,
    verify_les,
)
from .groups import ValidationError, ValidationReport
from .linalg import Matrix, solve


class LieError(ValueError):
    """Raised for malformed Lie data (shape errors, non-closed brackets)."""


class LieAlgebra:
    """A finite-dimensional Lie algebra over a field, given by structure
    constants; antisymmetry is built in, the Jacobi identity is checked
    on all basis triples at construction."""

    def __init__(
        self, field: Any, dim: int, brackets: Mapping[tuple[int, int], Sequence[Any]]
    ) -> None:
        self.field = field
        self.dim = dim
        table: dict[tuple[int, int], tuple] = {}
        for (i, j), vec in brackets.items():
            if not 0 <= i < j < dim:
                raise LieError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            vec = tuple(vec)
            if len(vec) != dim:
                raise LieError(f"bracket [e{i},e{j}] has {len(vec)} coordinates != {dim}")
            table[(i, j)] = vec
        self._table = table
        report = self._check_jacobi()
        if not report.ok:
            raise ValidationError(report)

    def bracket_basis(self, i: int, j: int) -> tuple:
        f = self.field
        if i == j:
            return (f.zero,) * self.dim
        if i < j:
            return self._table.get((i, j), (f.zero,) * self.dim)
        return tuple(f.neg(c) for c in self._table.get((j, i), (f.zero,) * self.dim))

    def bracket(self, x: Sequence[Any], y: Sequence[Any]) -> list[Any]:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == f.zero:
                continue
            for j, yj in enumerate(y):
                if yj == f.zero:
                    continue
                c = f.mul(xi, yj)
                for m, b in enumerate(self.bracket_basis(i, j)):
                    out[m] = f.add(out[m], f.mul(c, b))
        return out

    def _check_jacobi(self) -> ValidationReport:
        report = ValidationReport("Lie algebra")
        f = self.field
        basis = [
            [f.one if m == i else f.zero for m in range(self.dim)]
            for i in range(self.dim)
        ]
        for i, j, k in itertools.combinations(range(self.dim), 3):
            acc = [f.zero] * self.dim
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                term = self.bracket(self.bracket(basis[a], basis[b]), basis[c])
                acc = [f.add(x, y) for x, y in zip(acc, term)]
            if any(x != f.zero for x in acc):
                report.add(
                    "jacobi",
                    (i, j, k),
                    f"[[e{i},e{j}],e{k}] + [[e{j},e{k}],e{i}] + [[e{k},e{i}],e{j}] != 0",
                )
        return report

    def basis_vector(self, i: int) -> list[Any]:
        f = self.field
        return [f.one if m == i else f.zero for m in range(self.dim)]

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, field={self.field!r})"


def check_lie_difference(lie: LieAlgebra, d: Matrix) -> ValidationReport:
    """Check D[x,y] = [Dx,y] + [x,Dy] + [Dx,Dy] on all basis pairs."""
    report = ValidationReport("Lie difference operator")
    f = lie.field
    if d.nrows != lie.dim or d.ncols != lie.dim or d.ring != f:
        report.add("shape", (d.nrows, d.ncols), f"expected {lie.dim}x{lie.dim} over {f!r}")
        return report
    for i, j in itertools.combinations(range(lie.dim), 2):
        ei, ej = lie.basis_vector(i), lie.basis_vector(j)
        dei, dej = d.matvec(ei), d.matvec(ej)
        lhs = d.matvec(lie.bracket(ei, ej))
        rhs = [
            f.add(f.add(a, b), c)
            for a, b, c in zip(
                lie.bracket(dei, ej), lie.bracket(ei, dej), lie.bracket(dei, dej)
            )
        ]
        if lhs != rhs:
            report.add(
                "difference-identity",
                (i, j),
                f"D[e{i},e{j}] != [De{i},e{j}] + [e{i},De{j}] + [De{i},De{j}]",
            )
    return report


class LieDifferenceOp:
    """A validated difference operator on a Lie algebra; ``d_plus`` is
    the endomorphism id + D."""

    def __init__(self, lie: LieAlgebra, d: Matrix) -> None:
        report = check_lie_difference(lie, d)
        if not report.ok:
            raise ValidationError(report)
        self.lie = lie
        self.d = d
        self.d_plus = Matrix.identity(lie.field, lie.dim) + d

    def __repr__(self) -> str:
        return f"LieDifferenceOp(dim={self.lie.dim})"


def check_lie_rep(
    lie: LieAlgebra, d: Matrix, theta: Sequence[Matrix], t: Matrix
) -> ValidationReport:
    """Check theta is a Lie homomorphism and (T, theta) satisfies the
    difference-representation law against D, both on basis elements."""
    report = ValidationReport("Lie difference representation")
    f = lie.field
    if len(theta) != lie.dim:
        report.add("shape", (len(theta),), f"expected {lie.dim} matrices")
        return report
    dimv = t.nrows
    if t.ncols != dimv or t.ring != f:
        report.add("T-square", (t.nrows, t.ncols), "T must be square over the base field")
        return report
    for i, m in enumerate(theta):
        if m.nrows != dimv or m.ncols != dimv or m.ring != f:
            report.add("theta-shape", (i,), "theta(e_i) has wrong shape or ring")
            return report

    def theta_of(vec: Sequence[Any]) -> Matrix:
        acc = Matrix.zeros(f, dimv, dimv)
        for i, c in enumerate(vec):
            if c != f.zero:
                acc = acc + theta[i].scale(c)
        return acc

    for i, j in itertools.combinations(range(lie.dim), 2):
        lhs = theta_of(lie.bracket_basis(i, j))
        rhs = (theta[i] @ theta[j]) - (theta[j] @ theta[i])
        if lhs != rhs:
            report.add(
                "theta-homomorphism",
                (i, j),
                f"theta[e{i},e{j}] != theta(e{i}) theta(e{j}) - theta(e{j}) theta(e{i})",
            )
    if not report.ok:
        return report
    for i in range(lie.dim):
        th_dei = theta_of(d.matvec(lie.basis_vector(i)))
        lhs = t @ theta[i]
        rhs = th_dei + (theta[i] @ t) + (th_dei @ t)
        if lhs != rhs:
            report.add(
                "difference-compatibility",
                (i,),
                f"T theta(e{i}) != theta(De{i}) + theta(e{i}) T + theta(De{i}) T",
            )
    return report


class LieRep:
    """A validated representation (V, T, theta) of a difference Lie
    algebra; bundles the algebra and the operator it was checked against."""

    def __init__(self, dop: LieDifferenceOp, theta: Sequence[Matrix], t: Matrix) -> None:
        report = check_lie_rep(dop.lie, dop.d, theta, t)
        if not report.ok:
            raise ValidationError(report)
        self.dop = dop
        self.lie = dop.lie
        self.field = dop.lie.field
        self.theta = tuple(theta)
        self.t = t
        self.dimv = t.nrows

    def theta_of(self, vec: Sequence[Any]) -> Matrix:
        f = self.field
        acc = Matrix.zeros(f, self.dimv, self.dimv)
        for i, c in enumerate(vec):
            if c != f.zero:
                acc = acc + self.theta[i].scale(c)
        return acc

    def __repr__(self) -> str:
        return f"LieRep(dim={self.lie.dim}, dimv={self.dimv})"


def theta_d_matrices(rep: LieRep) -> tuple[Matrix, ...]:
    """theta_D(x) = theta(x) + theta(Dx) on basis elements, re-verified
    to be a Lie algebra homomorphism."""
    lie = rep.lie
    d = rep.dop.d
    out = tuple(
        rep.theta[i] + rep.theta_of(d.matvec(lie.basis_vector(i)))
        for i in range(lie.dim)
    )

    def of(vec: Sequence[Any]) -> Matrix:
        acc = Matrix.zeros(rep.field, rep.dimv, rep.dimv)
        for i, c in enumerate(vec):
            if c != rep.field.zero:
                acc = acc + out[i].scale(c)
        return acc

    for i, j in itertools.combinations(range(lie.dim), 2):
        lhs = of(lie.bracket_basis(i, j))
        rhs = (out[i] @ out[j]) - (out[j] @ out[i])
        if lhs != rhs:
            raise InternalCheckError(
                "theta + theta D fails to be a homomorphism although the "
                "representation validated; inputs are corrupt"
            )
    return out


class LieCochain:
    """An alternating V-valued n-cochain, stored on increasing basis
    tuples and evaluated elsewhere by permutation sign."""

    def __init__(
        self,
        lie: LieAlgebra,
        dimv: int,
        degree: int,
        coeffs: Mapping[tuple, Sequence[Any]] | Iterable[tuple] = (),
    ) -> None:
        if degree < 1:
            raise LieError(f"cochain degree must be >= 1, got {degree}")
        self.lie = lie
        self.field = lie.field
        self.dimv = dimv
        self.degree = degree
        self._zero = (self.field.zero,) * dimv
        store: dict[tuple, tuple] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for args, vec in items:
            args = tuple(args)
            if len(args) != degree:
                raise LieError(f"argument tuple {args} has length != {degree}")
            if any(not 0 <= i < lie.dim for i in args):
                raise LieError(f"argument tuple {args} out of range")
            if list(args) != sorted(set(args)):
                raise LieError(f"coefficients are stored on increasing tuples: {args}")
            vec = tuple(vec)
            if len(vec) != dimv:
                raise LieError(f"value at {args} has length {len(vec)} != {dimv}")
            if args in store:
                raise LieError(f"duplicate argument tuple {args}")
            if vec != self._zero:
                store[args] = vec
        self.coeffs = store

    def value_at_basis(self, args: Sequence[int]) -> tuple:
        args = tuple(args)
        if len(set(args)) != len(args):
            return self._zero
        order = sorted(range(len(args)), key=lambda k: args[k])
        inversions = sum(
            1
            for a in range(len(order))
            for b in range(a + 1, len(order))
            if order[a] > order[b]
        )
        value = self.coeffs.get(tuple(sorted(args)), self._zero)
        if inversions % 2:
            return tuple(self.field.neg(x) for x in value)
        return value

    def value_on_vectors(self, vectors: Sequence[Sequence[Any]]) -> tuple:
        """Full multilinear evaluation on coordinate vectors."""
        if len(vectors) != self.degree:
            raise LieError(f"expected {self.degree} arguments, got {len(vectors)}")
        f = self.field
        out = list(self._zero)
        for combo in itertools.product(range(self.lie.dim), repeat=self.degree):
            c = f.one
            for v, i in zip(vectors, combo):
                c = f.mul(c, v[i])
                if c == f.zero:
                    break
            if c == f.zero:
                continue
            val = self.value_at_basis(combo)
            if val == self._zero:
                continue
            for m in range(self.dimv):
                out[m] = f.add(out[m], f.mul(c, val[m]))
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _like(self, coeffs: Mapping[tuple, tuple]) -> "LieCochain":
        return LieCochain(self.lie, self.dimv, self.degree, coeffs)

    def _compatible(self, other: "LieCochain") -> None:
        if (
            other.lie is not self.lie
            or other.dimv != self.dimv
            or other.degree != self.degree
        ):
            raise LieError("cochains live in different spaces")

    def __add__(self, other: "LieCochain") -> "LieCochain":
        self._compatible(other)
        f = self.field
        keys = set(self.coeffs) | set(other.coeffs)
        return self._like(
            {
                k: tuple(
                    map(
                        f.add,
                        self.coeffs.get(k, self._zero),
                        other.coeffs.get(k, self._zero),
                    )
                )
                for k in keys
            }
        )

    def __neg__(self) -> "LieCochain":
        f = self.field
        return self._like({k: tuple(map(f.neg, v)) for k, v in self.coeffs.items()})

    def __sub__(self, other: "LieCochain") -> "LieCochain":
        return self + (-other)

    def scale(self, c: Any) -> "LieCochain":
        f = self.field
        return self._like(
            {k: tuple(f.mul(c, x) for x in v) for k, v in self.coeffs.items()}
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LieCochain)
            and other.lie is self.lie
            and other.dimv == self.dimv
            and other.degree == self.degree
            and other.coeffs == self.coeffs
        )

    def __repr__(self) -> str:
        return f"LieCochain(degree={self.degree}, support={len(self.coeffs)})"


@dataclass(frozen=True)
class LieCochainPair:
    """An element (zeta, xi) of the Lie pair complex; xi is absent in
    degree 1."""

    zeta: LieCochain
    xi: LieCochain | None

    def __post_init__(self) -> None:
        if self.zeta.degree == 1:
            if self.xi is not None:
                raise LieError("degree-1 pairs have no second component")
        else:
            if self.xi is None:
                raise LieError(f"degree-{self.zeta.degree} pairs need a second component")
            if self.xi.degree != self.zeta.degree - 1:
                raise LieError(
                    f"second component has degree {self.xi.degree}, "
                    f"expected {self.zeta.degree - 1}"
                )
            if self.xi.lie is not self.zeta.lie or self.xi.dimv != self.zeta.dimv:
                raise LieError("pair components live over different data")

    @property
    def degree(self) -> int:
        return self.zeta.degree


def zero_lie_cochain(lie: LieAlgebra, dimv: int, degree: int) -> LieCochain:
    return LieCochain(lie, dimv, degree)


def ce_coboundary(theta: Sequence[Matrix], z: LieCochain) -> LieCochain:
    """The Chevalley-Eilenberg coboundary twisted by a representation
    given on basis elements.  Degrees above dim(g) are zero spaces, so
    the result is then the zero cochain."""
    lie = z.lie
    f = z.field
    n = z.degree
    out: dict[tuple, tuple] = {}
    for args in itertools.combinations(range(lie.dim), n + 1):
        acc = [f.zero] * z.dimv
        for k in range(n + 1):
            rest = args[:k] + args[k + 1 :]
            term = theta[args[k]].matvec(list(z.value_at_basis(rest)))
            if k % 2:
                acc = [f.sub(x, y) for x, y in zip(acc, term)]
            else:
                acc = [f.add(x, y) for x, y in zip(acc, term)]
        for a, b in itertools.combinations(range(n + 1), 2):
            rest = tuple(args[m] for m in range(n + 1) if m not in (a, b))
            w = lie.bracket_basis(args[a], args[b])
            term = [f.zero] * z.dimv
            for m, c in enumerate(w):
                if c == f.zero:
                    continue
                val = z.value_at_basis((m,) + rest)
                term = [f.add(x, f.mul(c, y)) for x, y in zip(term, val)]
            if (a + b) % 2:
                acc = [f.sub(x, y) for x, y in zip(acc, term)]
            else:
                acc = [f.add(x, y) for x, y in zip(acc, term)]
        out[args] = tuple(acc)
    return LieCochain(lie, z.dimv, n + 1, out)


def k_map(rep: LieRep, z: LieCochain) -> LieCochain:
    """The connecting cochain map on the Lie side, computed two ways.

    Subset form: (-1)^n ( sum over nonempty S of z(.. D at S ..) - T z ).
    Closed form: (-1)^n ( z(D_+ x_1, .., D_+ x_n) - z(x) - T z(x) ).
    The forms agree by multilinearity; they are compared on every
    increasing tuple and any mismatch aborts with an internal error.
    """
    lie = rep.lie
    f = rep.field
    n = z.degree
    if z.dimv != rep.dimv:
        raise LieError(f"cochain has values in dimension {z.dimv}, rep in {rep.dimv}")
    d = rep.dop.d
    d_plus = rep.dop.d_plus
    negate = n % 2 == 1
    out: dict[tuple, tuple] = {}
    for args in itertools.combinations(range(lie.dim), n):
        basis_vecs = [lie.basis_vector(i) for i in args]
        d_vecs = [d.matvec(v) for v in basis_vecs]
        zx = z.value_at_basis(args)
        tzx = rep.t.matvec(list(zx))

        subset_sum = [f.zero] * z.dimv
        for r in range(1, n + 1):
            for positions in itertools.combinations(range(n), r):
                vecs = [
                    d_vecs[k] if k in positions else basis_vecs[k] for k in range(n)
                ]
                term = z.value_on_vectors(vecs)
                subset_sum = [f.add(x, y) for x, y in zip(subset_sum, term)]
        subset_val = [f.sub(x, y) for x, y in zip(subset_sum, tzx)]

        closed = z.value_on_vectors([d_plus.matvec(v) for v in basis_vecs])
        closed_val = [
            f.sub(f.sub(x, y), w) for x, y, w in zip(closed, zx, tzx)
        ]

        if subset_val != closed_val:
            raise InternalCheckError(
                f"connecting map forms disagree at {args}: subset {subset_val} "
                f"vs closed {closed_val}"
            )
        if negate:
            subset_val = [f.neg(x) for x in subset_val]
        out[args] = tuple(subset_val)
    return LieCochain(lie, z.dimv, n, out)


def delta_theta(rep: LieRep, pair: LieCochainPair) -> LieCochainPair:
    """Differential of the Lie pair complex:
    delta(zeta, xi) = (d^theta zeta, d^{theta_D} xi + K zeta)."""
    zeta = ce_coboundary(rep.theta, pair.zeta)
    xi = k_map(rep, pair.zeta)
    if pair.xi is not None:
        xi = xi + ce_coboundary(theta_d_matrices(rep), pair.xi)
    return LieCochainPair(zeta, xi)


class LieCochainSpace:
    """Coordinates on Hom(wedge^n g, V): increasing tuples ordered
    lexicographically, value coordinates innermost."""

    def __init__(self, lie: LieAlgebra, dimv: int, degree: int) -> None:
        self.lie = lie
        self.dimv = dimv
        self.degree = degree
        self.tuples = list(itertools.combinations(range(lie.dim), degree))
        self.index = {t: i for i, t in enumerate(self.tuples)}
        self.size = len(self.tuples) * dimv

    def to_vector(self, z: LieCochain) -> list[Any]:
        if z.degree != self.degree:
            raise LieError(f"degree {z.degree} != space degree {self.degree}")
        vec = [self.lie.field.zero] * self.size
        for args, value in z.coeffs.items():
            base = self.index[args] * self.dimv
            for c, x in enumerate(value):
                vec[base + c] = x
        return vec

    def from_vector(self, vec: Sequence[Any]) -> LieCochain:
        if len(vec) != self.size:
            raise LieError(f"vector length {len(vec)} != {self.size}")
        coeffs = {
            t: tuple(vec[i * self.dimv : (i + 1) * self.dimv])
            for i, t in enumerate(self.tuples)
        }
        return LieCochain(self.lie, self.dimv, self.degree, coeffs)

    def basis_cochain(self, k: int) -> LieCochain:
        vec = [self.lie.field.zero] * self.size
        vec[k] = self.lie.field.one
        return self.from_vector(vec)


@dataclass
class LieDegreeDims:
    h_ordinary: int
    h_difference: int
    h_pair: int


@dataclass
class LieCohomologyReport:
    degrees: dict[int, LieDegreeDims]
    notes: list[str]


class LieDifferenceComplex:
    """Matrix-level view of the three complexes attached to (g, D, V, T)."""

    def __init__(self, rep: LieRep) -> None:
        self.rep = rep
        self.lie = rep.lie
        self.field = rep.field
        self.dimv = rep.dimv
        self.theta_d = theta_d_matrices(rep)
        self._spaces: dict[int, LieCochainSpace] = {}
        self._matrices: dict[tuple[str, int], Matrix] = {}

    def space(self, degree: int) -> LieCochainSpace:
        if degree not in self._spaces:
            self._spaces[degree] = LieCochainSpace(self.lie, self.dimv, degree)
        return self._spaces[degree]

    def _operator_matrix(self, key: str, n: int, fn, out_degree: int) -> Matrix:
        cache_key = (key, n)
        if cache_key not in self._matrices:
            dom = self.space(n)
            cod = self.space(out_degree)
            cols = [cod.to_vector(fn(dom.basis_cochain(k))) for k in range(dom.size)]
            self._matrices[cache_key] = Matrix.from_columns(self.field, cols, cod.size)
        return self._matrices[cache_key]

    def d_ordinary(self, n: int) -> Matrix:
        return self._operator_matrix(
            "d", n, lambda z: ce_coboundary(self.rep.theta, z), n + 1
        )

    def d_difference(self, n: int) -> Matrix:
        return self._operator_matrix(
            "dD", n, lambda z: ce_coboundary(self.theta_d, z), n + 1
        )

    def k_matrix(self, n: int) -> Matrix:
        return self._operator_matrix("K", n, lambda z: k_map(self.rep, z), n)

    def les_data(self) -> LESData:
        f = self.field

        def dim_a(n: int) -> int:
            return 0 if n <= 1 else self.space(n - 1).size

        def dim_c(n: int) -> int:
            return self.space(n).size

        def d_a(n: int) -> Matrix:
            if n <= 1:
                return Matrix.zeros(f, dim_a(n + 1), 0)
            return self.d_difference(n - 1)

        return LESData(
            field=f,
            dim_a=dim_a,
            dim_c=dim_c,
            d_a=d_a,
            d_c=self.d_ordinary,
            k=self.k_matrix,
        )

    def cohomology_dims(self, max_degree: int) -> LieCohomologyReport:
        data = self.les_data()
        degrees = {}
        for n in range(1, max_degree + 1):
            h_ord = cohomology_space(
                self.field, data.d_c(n), data.d_c(n - 1) if n > 1 else None
            ).dim
            h_diff = cohomology_space(
                self.field, data.d_a(n), data.d_a(n - 1) if n > 1 else None
            ).dim
            h_pair = cohomology_space(
                self.field, data.d_b(n), data.d_b(n - 1) if n > 1 else None
            ).dim
            degrees[n] = LieDegreeDims(h_ord, h_diff, h_pair)
        return LieCohomologyReport(degrees=degrees, notes=[])

    def verify_delta_squared(self, max_degree: int) -> list[LESNode]:
        data = self.les_data()
        nodes = verify_anticommutation(data, max_degree)
        for n in range(1, max_degree + 1):
            ok = (data.d_b(n + 1) @ data.d_b(n)).is_zero()
            nodes.append(
                LESNode(
                    degree=n,
                    node="delta-squared",
                    ok=ok,
                    detail="delta delta = 0" if ok else "delta delta != 0",
                )
            )
        return nodes

    def verify_les(self, max_degree: int) -> list[LESNode]:
        return verify_les(self.les_data(), max_degree)


def matrix_lie_algebra(field: Any, basis: Sequence[Matrix]) -> LieAlgebra:
    """The Lie algebra spanned by matrices, with brackets expressed in
    the given basis.  Raises when a commutator leaves the span."""
    if not basis:
        raise LieError("empty basis")
    k = basis[0].nrows
    for b in basis:
        if b.nrows != k or b.ncols != k or b.ring != field:
            raise LieError("basis matrices must be square, equal-size, same field")
    flat = Matrix.from_columns(field, [list(b.entries) for b in basis], k * k)
    brackets = {}
    for i, j in itertools.combinations(range(len(basis)), 2):
        comm = (basis[i] @ basis[j]) - (basis[j] @ basis[i])
        coords = solve(flat, list(comm.entries))
        if coords is None:
            raise LieError(f"[b{i},b{j}] is outside the span of the basis")
        brackets[(i, j)] = tuple(coords)
    return LieAlgebra(field, len(basis), brackets)


def matrix_coords(field: Any, basis: Sequence[Matrix], m: Matrix) -> list[Any]:
    """Coordinates of a matrix in a spanning basis; None is an error."""
    flat = Matrix.from_columns(field, [list(b.entries) for b in basis], len(basis[0].entries))
    coords = solve(flat, list(m.entries))
    if coords is None:
        raise LieError("matrix is outside the span of the basis")
    return coords
