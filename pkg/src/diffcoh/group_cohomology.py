"""Cohomology of difference groups via normalized cochains.

Cochains are normalized: an n-cochain vanishes whenever one of its
arguments is the identity, and the complex starts in degree 1 (there
are no 0-cochains).  Three complexes appear:

* the ordinary complex C^n(G, V) with the coboundary twisted by Theta;
* the difference complex, whose degree-n space is C^{n-1}(G, V) for
  n >= 2 and zero in degree 1, with the coboundary twisted by
  Theta_D(g) = Theta(D(g) g);
* the pair complex C^n + C^{n-1} with differential
  delta(a, b) = (d a, d_D b + K a),

where K = pk + hk couples the two.  K anticommutes with the
coboundaries, so delta squares to zero and the three complexes sit in a
short exact sequence whose long exact sequence has connecting map [a]
-> [K a].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .exactness import (
    LESData,
    LESNode,
    cohomology_space,
    verify_anticommutation,
    verify_les,
)
from .groups import DifferenceRep, FiniteGroup
from .linalg import Matrix, solve


class CochainError(ValueError):
    """Raised for malformed cochains or degree mismatches."""


class BudgetExceededError(RuntimeError):
    def __init__(self, degree: int, required: int, budget: int) -> None:
        super().__init__(
            f"cochain space in degree {degree} needs {required} basis elements, "
            f"budget is {budget}"
        )
        self.degree = degree
        self.required = required
        self.budget = budget


class NotACocycleError(ValueError):
    def __init__(self, witness: tuple, detail: str) -> None:
        super().__init__(f"not a cocycle: {detail} at {witness}")
        self.witness = witness


class GroupCochain:
    """A normalized V-valued n-cochain on a finite group.

    ``values`` maps argument tuples (element indices, none equal to the
    identity) to value vectors; missing tuples mean zero.  Tuples
    containing the identity are rejected at construction and evaluate
    to zero through ``value_at``.
    """

    def __init__(
        self,
        group: FiniteGroup,
        field: Any,
        dim: int,
        degree: int,
        values: Mapping[tuple, Sequence[Any]] | Iterable[tuple] = (),
    ) -> None:
        if degree < 1:
            raise CochainError(f"cochain degree must be >= 1, got {degree}")
        self.group = group
        self.field = field
        self.dim = dim
        self.degree = degree
        self._zero = (field.zero,) * dim
        store: dict[tuple, tuple] = {}
        items = values.items() if isinstance(values, Mapping) else values
        for args, vec in items:
            args = tuple(args)
            if len(args) != degree:
                raise CochainError(f"argument tuple {args} has length != {degree}")
            if any(not 0 <= g < group.order for g in args):
                raise CochainError(f"argument tuple {args} out of range")
            if group.identity in args:
                raise CochainError(
                    f"normalized cochains store no tuples containing the identity: {args}"
                )
            vec = tuple(vec)
            if len(vec) != dim:
                raise CochainError(f"value at {args} has length {len(vec)} != {dim}")
            if args in store:
                raise CochainError(f"duplicate argument tuple {args}")
            if vec != self._zero:
                store[args] = vec
        self.values = store

    def value_at(self, args: Sequence[int]) -> tuple:
        args = tuple(args)
        if self.group.identity in args:
            return self._zero
        return self.values.get(args, self._zero)

    def items(self) -> list[tuple[tuple, tuple]]:
        return sorted(self.values.items())

    def is_zero(self) -> bool:
        return not self.values

    def _like(self, values: Mapping[tuple, tuple]) -> "GroupCochain":
        return GroupCochain(self.group, self.field, self.dim, self.degree, values)

    def _compatible(self, other: "GroupCochain") -> None:
        if (
            other.group is not self.group
            or other.field != self.field
            or other.dim != self.dim
            or other.degree != self.degree
        ):
            raise CochainError("cochains live in different spaces")

    def __add__(self, other: "GroupCochain") -> "GroupCochain":
        self._compatible(other)
        f = self.field
        keys = set(self.values) | set(other.values)
        return self._like(
            {
                k: tuple(map(f.add, self.value_at(k), other.value_at(k)))
                for k in keys
            }
        )

    def __sub__(self, other: "GroupCochain") -> "GroupCochain":
        return self + (-other)

    def __neg__(self) -> "GroupCochain":
        f = self.field
        return self._like({k: tuple(map(f.neg, v)) for k, v in self.values.items()})

    def scale(self, c: Any) -> "GroupCochain":
        f = self.field
        return self._like(
            {k: tuple(f.mul(c, x) for x in v) for k, v in self.values.items()}
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupCochain)
            and other.group is self.group
            and other.field == self.field
            and other.dim == self.dim
            and other.degree == self.degree
            and other.values == self.values
        )

    def __repr__(self) -> str:
        return f"GroupCochain(degree={self.degree}, support={len(self.values)})"


@dataclass(frozen=True)
class CochainPair:
    """An element (alpha, beta) of the pair complex; beta is absent in
    degree 1, where the complex is just C^1(G, V)."""

    alpha: GroupCochain
    beta: GroupCochain | None

    def __post_init__(self) -> None:
        if self.alpha.degree == 1:
            if self.beta is not None:
                raise CochainError("degree-1 pairs have no second component")
        else:
            if self.beta is None:
                raise CochainError(
                    f"degree-{self.alpha.degree} pairs need a second component"
                )
            if self.beta.degree != self.alpha.degree - 1:
                raise CochainError(
                    f"second component has degree {self.beta.degree}, "
                    f"expected {self.alpha.degree - 1}"
                )
            if (
                self.beta.group is not self.alpha.group
                or self.beta.field != self.alpha.field
                or self.beta.dim != self.alpha.dim
            ):
                raise CochainError("pair components live over different data")

    @property
    def degree(self) -> int:
        return self.alpha.degree


def zero_cochain(group: FiniteGroup, field: Any, dim: int, degree: int) -> GroupCochain:
    return GroupCochain(group, field, dim, degree)


def _nonidentity(group: FiniteGroup) -> list[int]:
    return [g for g in group.elements if g != group.identity]


def _tuples(group: FiniteGroup, degree: int) -> list[tuple[int, ...]]:
    return list(itertools.product(_nonidentity(group), repeat=degree))


def coboundary(theta: Sequence[Matrix], a: GroupCochain) -> GroupCochain:
    """The twisted coboundary d^Theta, raising degree by one.

    Normalized cochains have normalized coboundaries, so only
    identity-free tuples are evaluated and stored.
    """
    group = a.group
    f = a.field
    n = a.degree
    out: dict[tuple, tuple] = {}
    for args in _tuples(group, n + 1):
        acc = list(theta[args[0]].matvec(list(a.value_at(args[1:]))))
        sign_pos = True  # tracks (-1)^i for i = 1..n
        for i in range(n):
            sign_pos = not sign_pos
            merged = args[:i] + (group.mul(args[i], args[i + 1]),) + args[i + 2 :]
            term = a.value_at(merged)
            acc = [
                f.add(x, y) if sign_pos else f.sub(x, y) for x, y in zip(acc, term)
            ]
        sign_pos = not sign_pos  # (-1)^{n+1}
        term = a.value_at(args[:n])
        acc = [f.add(x, y) if sign_pos else f.sub(x, y) for x, y in zip(acc, term)]
        out[args] = tuple(acc)
    return GroupCochain(group, f, a.dim, n + 1, out)


def pk(rep: DifferenceRep, a: GroupCochain) -> GroupCochain:
    """The degree-sensitive part of the connecting cochain map.

    Nonzero only in degrees 1 and 2:

        n=1:  -Theta(D g) a(g) + a(D(g) g) - a(D g)
        n=2:  a(D g1, g1) - a(D(g1 g2), g1 g2) + Theta(D(g1) g1) a(D g2, g2)
    """
    dg = rep.dg
    group = dg.group
    f = rep.field
    n = a.degree
    if n >= 3:
        return zero_cochain(group, f, a.dim, n)
    out: dict[tuple, tuple] = {}
    if n == 1:
        for (g,) in _tuples(group, 1):
            d_g = dg.d_of(g)
            first = rep.theta[d_g].matvec(list(a.value_at((g,))))
            second = a.value_at((dg.d_plus_of(g),))
            third = a.value_at((d_g,))
            out[(g,)] = tuple(
                f.sub(f.sub(y, x), z) for x, y, z in zip(first, second, third)
            )
    else:
        for g1, g2 in _tuples(group, 2):
            g12 = group.mul(g1, g2)
            first = a.value_at((dg.d_of(g1), g1))
            second = a.value_at((dg.d_of(g12), g12))
            third = rep.theta[dg.d_plus_of(g1)].matvec(
                list(a.value_at((dg.d_of(g2), g2)))
            )
            out[(g1, g2)] = tuple(
                f.add(f.sub(x, y), z) for x, y, z in zip(first, second, third)
            )
    return GroupCochain(group, f, a.dim, n, out)


def hk(rep: DifferenceRep, a: GroupCochain) -> GroupCochain:
    """The homomorphism part of the connecting cochain map:

        (-1)^n ( a(D(g1) g1, ..., D(gn) gn) - T(a(g)) - a(g) ).
    """
    dg = rep.dg
    group = dg.group
    f = rep.field
    n = a.degree
    negate = n % 2 == 1
    out: dict[tuple, tuple] = {}
    for args in _tuples(group, n):
        plus = tuple(dg.d_plus_of(g) for g in args)
        v = a.value_at(args)
        tv = rep.t.matvec(list(v))
        acc = [
            f.sub(f.sub(x, y), z) for x, y, z in zip(a.value_at(plus), tv, v)
        ]
        if negate:
            acc = [f.neg(x) for x in acc]
        out[args] = tuple(acc)
    return GroupCochain(group, f, a.dim, n, out)


def kk(rep: DifferenceRep, a: GroupCochain) -> GroupCochain:
    """The connecting cochain map K = pk + hk; it anticommutes with the
    twisted coboundaries and induces the connecting homomorphism."""
    return pk(rep, a) + hk(rep, a)


def delta(rep: DifferenceRep, pair: CochainPair) -> CochainPair:
    """Differential of the pair complex:
    delta(a, b) = (d^Theta a, d^{Theta_D} b + K a)."""
    from .groups import induced_rep_theta_d

    alpha = coboundary(rep.theta, pair.alpha)
    beta = kk(rep, pair.alpha)
    if pair.beta is not None:
        theta_d = induced_rep_theta_d(rep)
        beta = beta + coboundary(theta_d, pair.beta)
    return CochainPair(alpha, beta)


class CochainSpace:
    """Coordinates on the space of normalized n-cochains.

    The basis is indexed by (argument tuple, coordinate), tuples in
    lexicographic order of element indices, coordinates innermost.
    """

    def __init__(self, group: FiniteGroup, field: Any, dim: int, degree: int) -> None:
        self.group = group
        self.field = field
        self.dim = dim
        self.degree = degree
        self.tuples = _tuples(group, degree)
        self.index = {t: i for i, t in enumerate(self.tuples)}
        self.size = len(self.tuples) * dim

    def to_vector(self, a: GroupCochain) -> list[Any]:
        if a.degree != self.degree:
            raise CochainError(f"degree {a.degree} != space degree {self.degree}")
        vec = [self.field.zero] * self.size
        for args, value in a.values.items():
            base = self.index[args] * self.dim
            for c, x in enumerate(value):
                vec[base + c] = x
        return vec

    def from_vector(self, vec: Sequence[Any]) -> GroupCochain:
        if len(vec) != self.size:
            raise CochainError(f"vector length {len(vec)} != {self.size}")
        values = {
            t: tuple(vec[i * self.dim : (i + 1) * self.dim])
            for i, t in enumerate(self.tuples)
        }
        return GroupCochain(self.group, self.field, self.dim, self.degree, values)

    def basis_cochain(self, k: int) -> GroupCochain:
        vec = [self.field.zero] * self.size
        vec[k] = self.field.one
        return self.from_vector(vec)


@dataclass
class DegreeDims:
    h_ordinary: int
    h_difference: int
    h_pair: int


@dataclass
class CohomologyReport:
    degrees: dict[int, DegreeDims]
    notes: list[str]


@dataclass
class ConnectingClass:
    """The value of the connecting map on a cocycle: the cochain K a,
    together with whether its class vanishes and a preimage when it does."""

    cochain: GroupCochain
    is_zero_class: bool
    preimage: GroupCochain | None


class DifferenceComplex:
    """Matrix-level view of the three complexes attached to (G, D, V, T)."""

    def __init__(self, rep: DifferenceRep, budget: int = 60000) -> None:
        from .groups import induced_rep_theta_d

        self.rep = rep
        self.dg = rep.dg
        self.group = rep.dg.group
        self.field = rep.field
        self.dim = rep.dim
        self.budget = budget
        self.theta_d = induced_rep_theta_d(rep)
        self._spaces: dict[int, CochainSpace] = {}
        self._matrices: dict[tuple[str, int], Matrix] = {}

    def space(self, degree: int) -> CochainSpace:
        if degree not in self._spaces:
            nonid = self.group.order - 1
            required = (nonid**degree) * self.dim
            if required > self.budget:
                raise BudgetExceededError(degree, required, self.budget)
            self._spaces[degree] = CochainSpace(
                self.group, self.field, self.dim, degree
            )
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
            "d", n, lambda a: coboundary(self.rep.theta, a), n + 1
        )

    def d_difference(self, n: int) -> Matrix:
        return self._operator_matrix(
            "dD", n, lambda a: coboundary(self.theta_d, a), n + 1
        )

    def k_matrix(self, n: int) -> Matrix:
        return self._operator_matrix("K", n, lambda a: kk(self.rep, a), n)

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

    def cohomology_dims(self, max_degree: int) -> CohomologyReport:
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
            degrees[n] = DegreeDims(h_ord, h_diff, h_pair)
        notes = []
        if getattr(self.field, "kind", "") == "prime-field":
            notes.append(
                f"dimensions are over F_{self.field.p}; they need not agree "
                "with characteristic-zero coefficients"
            )
        return CohomologyReport(degrees=degrees, notes=notes)

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

    def connecting_class(self, a: GroupCochain) -> ConnectingClass:
        """Apply the connecting map to an ordinary cocycle and decide
        whether the resulting difference-complex class vanishes."""
        da = coboundary(self.rep.theta, a)
        if not da.is_zero():
            witness = next(args for args, _ in da.items())
            raise NotACocycleError(witness, "ordinary coboundary is nonzero")
        image = kk(self.rep, a)
        n = a.degree
        if n == 1:
            # the difference complex is zero in degree 1: no coboundaries
            return ConnectingClass(image, image.is_zero(), None)
        dom = self.space(n - 1)
        cod = self.space(n)
        mat = self.d_difference(n - 1)
        x = solve(mat, cod.to_vector(image))
        if x is None:
            return ConnectingClass(image, False, None)
        return ConnectingClass(image, True, dom.from_vector(x))
