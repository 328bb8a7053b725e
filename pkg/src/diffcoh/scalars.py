"""Exact scalar arithmetic: rationals, prime fields, quadratic extensions, jet rings.

Every computation in this package runs over one of the coefficient rings
defined here.  There is no floating point anywhere: rationals are stdlib
``Fraction`` objects, prime-field elements are canonical residues in
``[0, p)``, and first-order jets are finitely supported maps from subsets
of generators to base-field scalars.

A "ring object" bundles the operations on its scalars (``add``, ``mul``,
``inv``, ...) so that matrices and cochains can stay generic over the
coefficient ring.  Scalars themselves are plain values (``Fraction``,
``int``, ``QuadScalar``, ``Jet``) compared with ``==``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable


class ScalarError(ValueError):
    """Raised for malformed scalars or operations outside a ring's domain."""


def _is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


class Rationals:
    """The field of rational numbers, elements are ``fractions.Fraction``."""

    kind = "rationals"
    is_field = True

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash(self.kind)

    def __repr__(self) -> str:
        return "Rationals()"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a * self.inv(b)

    def conj(self, a: Fraction) -> Fraction:
        return a

    def parse(self, text: Any) -> Fraction:
        if isinstance(text, bool):
            raise ScalarError(f"not a rational scalar: {text!r}")
        if isinstance(text, int):
            return Fraction(text)
        if isinstance(text, str):
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise ScalarError(f"not a rational scalar: {text!r}") from exc
        raise ScalarError(f"not a rational scalar: {text!r}")

    def format(self, a: Fraction) -> str:
        return str(a)


class PrimeField:
    """The field F_p for a prime p; elements are ints in ``[0, p)``."""

    kind = "prime-field"
    is_field = True

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or p < 2:
            raise ScalarError(f"prime-field characteristic must be a prime, got {p!r}")
        for q in range(2, math.isqrt(p) + 1):
            if p % q == 0:
                raise ScalarError(f"prime-field characteristic must be a prime, got {p}")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def conj(self, a: int) -> int:
        return a

    def parse(self, text: Any) -> int:
        if isinstance(text, bool) or not isinstance(text, int):
            raise ScalarError(f"prime-field scalar must be an integer, got {text!r}")
        if not 0 <= text < self.p:
            raise ScalarError(f"prime-field scalar {text} outside [0, {self.p})")
        return text

    def format(self, a: int) -> int:
        return a % self.p


@dataclass(frozen=True)
class QuadScalar:
    """An element a + b*sqrt(d) of a quadratic extension of the rationals."""

    a: Fraction
    b: Fraction

    def __repr__(self) -> str:
        return f"QuadScalar({self.a}, {self.b})"


class QuadraticField:
    """The field Q(sqrt(d)) for a non-square rational d.

    Used for group elements carrying a genuine field automorphism
    (complex conjugation when d = -1).  ``conj`` is the nontrivial
    automorphism a + b*sqrt(d) -> a - b*sqrt(d).
    """

    kind = "quadratic"
    is_field = True

    def __init__(self, d: int | Fraction) -> None:
        d = Fraction(d)
        if d == 0 or (
            _is_perfect_square(d.numerator) and _is_perfect_square(d.denominator)
        ):
            raise ScalarError(f"{d} is a rational square; extension would be trivial")
        self.d = d
        self.zero = QuadScalar(Fraction(0), Fraction(0))
        self.one = QuadScalar(Fraction(1), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self) -> int:
        return hash((self.kind, self.d))

    def __repr__(self) -> str:
        return f"QuadraticField({self.d})"

    def from_int(self, n: int) -> QuadScalar:
        return QuadScalar(Fraction(n), Fraction(0))

    def from_parts(self, a: Any, b: Any) -> QuadScalar:
        return QuadScalar(Fraction(a), Fraction(b))

    def add(self, x: QuadScalar, y: QuadScalar) -> QuadScalar:
        return QuadScalar(x.a + y.a, x.b + y.b)

    def sub(self, x: QuadScalar, y: QuadScalar) -> QuadScalar:
        return QuadScalar(x.a - y.a, x.b - y.b)

    def neg(self, x: QuadScalar) -> QuadScalar:
        return QuadScalar(-x.a, -x.b)

    def mul(self, x: QuadScalar, y: QuadScalar) -> QuadScalar:
        return QuadScalar(x.a * y.a + self.d * x.b * y.b, x.a * y.b + x.b * y.a)

    def inv(self, x: QuadScalar) -> QuadScalar:
        norm = x.a * x.a - self.d * x.b * x.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadScalar(x.a / norm, -x.b / norm)

    def div(self, x: QuadScalar, y: QuadScalar) -> QuadScalar:
        return self.mul(x, self.inv(y))

    def conj(self, x: QuadScalar) -> QuadScalar:
        return QuadScalar(x.a, -x.b)

    def parse(self, text: Any) -> QuadScalar:
        if isinstance(text, (list, tuple)) and len(text) == 2:
            return QuadScalar(Fraction(str(text[0])), Fraction(str(text[1])))
        if isinstance(text, (int, str)):
            return QuadScalar(Fraction(str(text)), Fraction(0))
        raise ScalarError(f"not a quadratic scalar: {text!r}")

    def format(self, x: QuadScalar) -> Any:
        if x.b == 0:
            return str(x.a)
        return [str(x.a), str(x.b)]


def field_from_spec(spec: dict) -> "Rationals | PrimeField | QuadraticField":
    """Build a field from its serialized description.

    Accepts ``{"kind": "rationals"}``, ``{"kind": "Fp", "p": p}``
    (``"prime-field"`` is a synonym for ``"Fp"``), and
    ``{"kind": "quadratic", "d": d}`` for Q(sqrt(d)).
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ScalarError(f"field description must be an object with a 'kind': {spec!r}")
    kind = spec["kind"]
    if kind in ("rationals", "Q"):
        return Rationals()
    if kind in ("Fp", "prime-field"):
        if "p" not in spec:
            raise ScalarError("prime-field description is missing 'p'")
        return PrimeField(spec["p"])
    if kind == "quadratic":
        if "d" not in spec:
            raise ScalarError("quadratic field description is missing 'd'")
        return QuadraticField(spec["d"])
    raise ScalarError(f"unknown field kind {kind!r}")


def field_to_spec(field: "Rationals | PrimeField | QuadraticField") -> dict:
    if isinstance(field, Rationals):
        return {"kind": "rationals"}
    if isinstance(field, PrimeField):
        return {"kind": "Fp", "p": field.p}
    if isinstance(field, QuadraticField):
        d = field.d
        return {"kind": "quadratic", "d": int(d) if d.denominator == 1 else str(d)}
    raise ScalarError(f"field {field!r} has no serialized form")


class Jet:
    """A first-order multi-parameter jet over a base field.

    With generators e_1, ..., e_n satisfying e_i^2 = 0, a jet is the
    finite sum of c_S * prod(e_i for i in S) over subsets S of the
    generators.  ``coeffs`` maps each frozenset S with nonzero
    coefficient to its scalar; the empty set holds the base part.
    """

    __slots__ = ("base", "ngens", "coeffs")

    def __init__(self, base: Any, ngens: int, coeffs: dict[frozenset, Any]) -> None:
        self.base = base
        self.ngens = ngens
        clean = {}
        for subset, c in coeffs.items():
            subset = frozenset(subset)
            if any(not 0 <= i < ngens for i in subset):
                raise ScalarError(f"jet subset {sorted(subset)} outside generator range")
            if c != base.zero:
                clean[subset] = c
        self.coeffs = clean

    def coefficient(self, subset: Iterable[int]) -> Any:
        return self.coeffs.get(frozenset(subset), self.base.zero)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Jet)
            and other.ngens == self.ngens
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ngens, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Jet(0)"
        parts = []
        for subset in sorted(self.coeffs, key=sorted):
            mono = "".join(f"e{i}" for i in sorted(subset)) or "1"
            parts.append(f"{self.coeffs[subset]}*{mono}")
        return "Jet(" + " + ".join(parts) + ")"


class JetRing:
    """Jets over ``base`` in ``ngens`` square-zero commuting generators."""

    kind = "jet"
    is_field = False

    def __init__(self, base: Any, ngens: int) -> None:
        if not base.is_field:
            raise ScalarError("jet ring base must be a field")
        if ngens < 0:
            raise ScalarError("number of jet generators must be nonnegative")
        self.base = base
        self.ngens = ngens
        self.zero = Jet(base, ngens, {})
        self.one = Jet(base, ngens, {frozenset(): base.one})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, JetRing)
            and other.base == self.base
            and other.ngens == self.ngens
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.base, self.ngens))

    def __repr__(self) -> str:
        return f"JetRing({self.base!r}, {self.ngens})"

    def embed(self, c: Any) -> Jet:
        return Jet(self.base, self.ngens, {frozenset(): c})

    def generator(self, i: int) -> Jet:
        if not 0 <= i < self.ngens:
            raise ScalarError(f"no jet generator {i} in a ring with {self.ngens}")
        return Jet(self.base, self.ngens, {frozenset([i]): self.base.one})

    def from_int(self, n: int) -> Jet:
        return self.embed(self.base.from_int(n))

    def add(self, x: Jet, y: Jet) -> Jet:
        coeffs = dict(x.coeffs)
        for subset, c in y.coeffs.items():
            coeffs[subset] = self.base.add(coeffs.get(subset, self.base.zero), c)
        return Jet(self.base, self.ngens, coeffs)

    def neg(self, x: Jet) -> Jet:
        return Jet(
            self.base, self.ngens, {s: self.base.neg(c) for s, c in x.coeffs.items()}
        )

    def sub(self, x: Jet, y: Jet) -> Jet:
        return self.add(x, self.neg(y))

    def mul(self, x: Jet, y: Jet) -> Jet:
        # e_i^2 = 0 kills any product of overlapping monomials.
        base = self.base
        coeffs: dict[frozenset, Any] = {}
        for s, c in x.coeffs.items():
            for t, d in y.coeffs.items():
                if s & t:
                    continue
                u = s | t
                coeffs[u] = base.add(coeffs.get(u, base.zero), base.mul(c, d))
        return Jet(self.base, self.ngens, coeffs)

    def inv(self, x: Jet) -> Jet:
        """Inverse of a unit jet (nonzero base part) via the finite
        geometric series: (c + n)^-1 = c^-1 * sum((-n/c)^k)."""
        c0 = x.coefficient(())
        if c0 == self.base.zero:
            raise ZeroDivisionError("jet with zero base part is not invertible")
        c0inv = self.embed(self.base.inv(c0))
        nilpotent = self.mul(self.sub(x, self.embed(c0)), c0inv)
        acc = self.one
        term = self.one
        for _ in range(self.ngens):
            term = self.neg(self.mul(term, nilpotent))
            acc = self.add(acc, term)
        return self.mul(acc, c0inv)

    def div(self, x: Jet, y: Jet) -> Jet:
        return self.mul(x, self.inv(y))

    def conj(self, x: Jet) -> Jet:
        return Jet(
            self.base, self.ngens, {s: self.base.conj(c) for s, c in x.coeffs.items()}
        )

    def parse(self, data: Any) -> Jet:
        if not isinstance(data, list):
            raise ScalarError(f"jet must be a list of terms, got {data!r}")
        coeffs: dict[frozenset, Any] = {}
        for term in data:
            if not isinstance(term, dict) or set(term) != {"subset", "value"}:
                raise ScalarError(f"jet term must have 'subset' and 'value': {term!r}")
            subset = frozenset(term["subset"])
            if len(subset) != len(term["subset"]):
                raise ScalarError(f"jet term subset has repeats: {term['subset']!r}")
            if subset in coeffs:
                raise ScalarError(f"duplicate jet subset {sorted(subset)}")
            coeffs[subset] = self.base.parse(term["value"])
        return Jet(self.base, self.ngens, coeffs)

    def format(self, x: Jet) -> list:
        return [
            {"subset": sorted(s), "value": self.base.format(c)}
            for s, c in sorted(x.coeffs.items(), key=lambda item: sorted(item[0]))
        ]


def jet_mul(ring: JetRing, x: Jet, y: Jet) -> Jet:
    return ring.mul(x, y)


def jet_coefficient(x: Jet, subset: Iterable[int]) -> Any:
    return x.coefficient(subset)
