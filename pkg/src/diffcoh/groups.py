"""Finite groups, difference operators, and their representations.

A difference operator on a group G is a map D: G -> G with

    D(gh) = D(g) g D(h) g^{-1},

the twisted cocycle rule.  It forces D(e) = e and
D(g^{-1}) = (D(g) g)^{-1} g, and g -> D(g) g is a homomorphism.

A representation of (G, D) is a triple (V, T, Theta) with Theta an
ordinary representation and T a linear map satisfying

    T(Theta(g) u) + Theta(g) u = Theta(D(g) g) (T(u) + u).

Constructors validate these laws exhaustively over the (finite) group
and raise with explicit witnesses; ``check_*`` functions return the
report instead of raising.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .linalg import Matrix
from .scalars import PrimeField


@dataclass(frozen=True)
class ValidationIssue:
    check: str
    witness: tuple
    detail: str


@dataclass
class ValidationReport:
    subject: str
    issues: list[ValidationIssue] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, check: str, witness: tuple, detail: str) -> None:
        self.issues.append(ValidationIssue(check, witness, detail))

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        first = self.issues[0]
        return (
            f"{self.subject}: {len(self.issues)} violation(s); first: "
            f"{first.check} at {first.witness}: {first.detail}"
        )


class ValidationError(ValueError):
    def __init__(self, report: ValidationReport) -> None:
        super().__init__(report.summary())
        self.report = report


def _raise_if_bad(report: ValidationReport) -> None:
    if not report.ok:
        raise ValidationError(report)


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[g][h]`` is the index of the product g*h.  Closure,
    associativity, identity, and inverses are checked at construction.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        identity: int = 0,
        labels: Sequence[str] | None = None,
    ) -> None:
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.identity = identity
        if labels is None:
            labels = [f"g{i}" for i in range(self.order)]
        self.labels = tuple(labels)
        _raise_if_bad(self.check())
        inv = [0] * self.order
        for g in range(self.order):
            for h in range(self.order):
                if self.table[g][h] == self.identity:
                    inv[g] = h
                    break
        self._inverse = tuple(inv)

    def check(self) -> ValidationReport:
        report = ValidationReport("group table")
        n = self.order
        if n == 0:
            report.add("nonempty", (), "a group has at least the identity")
            return report
        if not 0 <= self.identity < n:
            report.add("identity-range", (self.identity,), "identity index out of range")
            return report
        if len(self.labels) != n:
            report.add("labels", (len(self.labels),), f"expected {n} labels")
        for g in range(n):
            if len(self.table[g]) != n:
                report.add("shape", (g,), f"row {g} has length {len(self.table[g])}")
                return report
            for h in range(n):
                if not 0 <= self.table[g][h] < n:
                    report.add("closure", (g, h), f"entry {self.table[g][h]} out of range")
                    return report
        e = self.identity
        for g in range(n):
            if self.table[e][g] != g:
                report.add("identity", (e, g), f"e*{g} = {self.table[e][g]}")
            if self.table[g][e] != g:
                report.add("identity", (g, e), f"{g}*e = {self.table[g][e]}")
        for g in range(n):
            if all(self.table[g][h] != e for h in range(n)):
                report.add("inverses", (g,), "no right inverse")
        for g in range(n):
            for h in range(n):
                gh = self.table[g][h]
                for k in range(n):
                    if self.table[gh][k] != self.table[g][self.table[h][k]]:
                        report.add(
                            "associativity",
                            (g, h, k),
                            f"(g h) k = {self.table[gh][k]} but g (h k) = "
                            f"{self.table[g][self.table[h][k]]}",
                        )
                        return report
        return report

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self._inverse[g]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^{-1}."""
        return self.mul(self.mul(g, h), self.inv(g))

    def label(self, g: int) -> str:
        return self.labels[g]

    def is_abelian(self) -> bool:
        return all(
            self.table[g][h] == self.table[h][g]
            for g in range(self.order)
            for h in range(g)
        )

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def check_difference_operator(group: FiniteGroup, d: Sequence[int]) -> ValidationReport:
    """Check the twisted cocycle rule D(gh) = D(g) g D(h) g^{-1} on all
    pairs; on success also confirm the two consequences D(e) = e and
    D(g^{-1}) = (D(g) g)^{-1} g."""
    report = ValidationReport("difference operator")
    n = group.order
    if len(d) != n:
        report.add("shape", (len(d),), f"expected {n} values")
        return report
    for g in range(n):
        if not 0 <= d[g] < n:
            report.add("range", (g,), f"D({group.label(g)}) = {d[g]} out of range")
            return report
    for g in range(n):
        for h in range(n):
            lhs = d[group.mul(g, h)]
            rhs = group.mul(group.mul(d[g], g), group.mul(d[h], group.inv(g)))
            if lhs != rhs:
                report.add(
                    "twisted-cocycle",
                    (g, h),
                    f"D({group.label(g)}*{group.label(h)}) = {group.label(lhs)} "
                    f"but D(g) g D(h) g^-1 = {group.label(rhs)}",
                )
    if report.ok:
        e = group.identity
        if d[e] != e:
            report.add("identity-value", (e,), f"D(e) = {group.label(d[e])} != e")
        for g in range(n):
            expected = group.mul(group.inv(group.mul(d[g], g)), g)
            if d[group.inv(g)] != expected:
                report.add(
                    "inverse-value",
                    (g,),
                    f"D(g^-1) = {group.label(d[group.inv(g)])} != (D(g) g)^-1 g",
                )
    return report


class DifferenceGroup:
    """A finite group together with a validated difference operator."""

    def __init__(self, group: FiniteGroup, d: Sequence[int]) -> None:
        self.group = group
        self.d = tuple(d)
        _raise_if_bad(check_difference_operator(group, self.d))

    def d_of(self, g: int) -> int:
        return self.d[g]

    def d_plus_of(self, g: int) -> int:
        return self.group.mul(self.d[g], g)

    def __repr__(self) -> str:
        return f"DifferenceGroup(order={self.group.order})"


def d_plus(dg: DifferenceGroup) -> tuple[int, ...]:
    """The homomorphism g -> D(g) g attached to a difference operator."""
    group = dg.group
    plus = tuple(group.mul(dg.d[g], g) for g in group.elements)
    for g in group.elements:
        for h in group.elements:
            if plus[group.mul(g, h)] != group.mul(plus[g], plus[h]):
                report = ValidationReport("d_plus")
                report.add(
                    "homomorphism",
                    (g, h),
                    "D(g) g fails to be multiplicative; the difference "
                    "operator validation must have been bypassed",
                )
                raise ValidationError(report)
    return plus


def check_representation(
    dg: DifferenceGroup,
    theta: Sequence[Matrix],
    t: Matrix,
) -> ValidationReport:
    """Check that Theta is a homomorphism into GL(V) and that (T, Theta)
    satisfies the difference-representation law against D."""
    report = ValidationReport("difference representation")
    group = dg.group
    n = group.order
    if len(theta) != n:
        report.add("shape", (len(theta),), f"expected {n} matrices")
        return report
    dim = t.nrows
    ring = t.ring
    if t.ncols != dim:
        report.add("T-square", (t.nrows, t.ncols), "T must be square")
        return report
    for g in range(n):
        mat = theta[g]
        if mat.nrows != dim or mat.ncols != dim or mat.ring != ring:
            report.add("theta-shape", (g,), "Theta(g) has wrong shape or ring")
            return report
    ident = Matrix.identity(ring, dim)
    if theta[group.identity] != ident:
        report.add("theta-identity", (group.identity,), "Theta(e) != I")
    for g in range(n):
        for h in range(n):
            if theta[group.mul(g, h)] != theta[g] @ theta[h]:
                report.add(
                    "theta-homomorphism",
                    (g, h),
                    f"Theta({group.label(g)} {group.label(h)}) != "
                    f"Theta({group.label(g)}) Theta({group.label(h)})",
                )
    if not report.ok:
        return report
    # T(Theta(g) u) + Theta(g) u = Theta(D(g) g) (T(u) + u), checked as matrices
    for g in range(n):
        lhs = (t @ theta[g]) + theta[g]
        rhs = theta[dg.d_plus_of(g)] @ (t + ident)
        if lhs != rhs:
            report.add(
                "difference-compatibility",
                (g,),
                f"(T + id) Theta(g) != Theta(D(g) g) (T + id) at g = {group.label(g)}",
            )
    return report


class DifferenceRep:
    """A validated representation (V, T, Theta) of a difference group."""

    def __init__(self, dg: DifferenceGroup, theta: Sequence[Matrix], t: Matrix) -> None:
        _raise_if_bad(check_representation(dg, theta, t))
        self.dg = dg
        self.theta = tuple(theta)
        self.t = t
        self.field = t.ring
        self.dim = t.nrows

    def __repr__(self) -> str:
        return f"DifferenceRep(dim={self.dim}, field={self.field!r})"


def induced_rep_theta_d(rep: DifferenceRep) -> tuple[Matrix, ...]:
    """Theta_D(g) = Theta(D(g) g), the representation induced along d_plus."""
    dg = rep.dg
    group = dg.group
    theta_d = tuple(rep.theta[dg.d_plus_of(g)] for g in group.elements)
    for g in group.elements:
        for h in group.elements:
            if theta_d[group.mul(g, h)] != theta_d[g] @ theta_d[h]:
                report = ValidationReport("induced representation")
                report.add(
                    "homomorphism",
                    (g, h),
                    "Theta(D(g) g) is not multiplicative; inputs are corrupt",
                )
                raise ValidationError(report)
    return theta_d


def vector_enumeration(field: PrimeField, dim: int) -> list[tuple[int, ...]]:
    """All of F_p^dim in lexicographic order; the zero vector comes first."""
    return list(itertools.product(range(field.p), repeat=dim))


def semidirect_product(dg: DifferenceGroup, rep: DifferenceRep) -> DifferenceGroup:
    """The difference group G x V with (g, u)(h, v) = (gh, u + Theta(g) v)
    and D(g, u) = (D(g), T(u) + u - Theta(D(g)) u).

    Requires a prime-field representation so the product stays finite.
    The returned operator is re-validated exhaustively, which replays the
    proof that the formula satisfies the twisted cocycle rule.
    """
    if not isinstance(rep.field, PrimeField):
        raise ValueError("semidirect product needs a finite (prime-field) module")
    if rep.dim == 0:
        return dg
    group = dg.group
    f = rep.field
    vectors = vector_enumeration(f, rep.dim)
    index_of = {v: i for i, v in enumerate(vectors)}
    nv = len(vectors)

    def idx(g: int, u: tuple[int, ...]) -> int:
        return g * nv + index_of[u]

    table = []
    for g in group.elements:
        for u in vectors:
            row = []
            for h in group.elements:
                theta_g = rep.theta[g]
                for v in vectors:
                    w = tuple(
                        f.add(u[i], x) for i, x in enumerate(theta_g.matvec(list(v)))
                    )
                    row.append(idx(group.mul(g, h), w))
            table.append(row)
    labels = [
        f"({group.label(g)},{','.join(map(str, u))})"
        for g in group.elements
        for u in vectors
    ]
    product = FiniteGroup(table, identity=idx(group.identity, vectors[0]), labels=labels)

    d_total = []
    for g in group.elements:
        theta_dg = rep.theta[dg.d_of(g)]
        for u in vectors:
            tu = rep.t.matvec(list(u))
            thu = theta_dg.matvec(list(u))
            w = tuple(f.sub(f.add(tu[i], u[i]), thu[i]) for i in range(rep.dim))
            d_total.append(idx(dg.d_of(g), w))
    return DifferenceGroup(product, d_total)
