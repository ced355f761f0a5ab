"""Diagonal and generalized Inonu-Wigner contractions.

A contraction matrix ``U_eps = A W_eps P`` acts on a bracket by the right
action, so the bracket is first moved by ``A``, then the diagonal limit
is taken, then the result is moved by ``P``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence, Union

from .algebra import (
    Matrix,
    StructureConstants,
    Triple,
    as_rational,
    identity,
    inverse,
    transform,
)


class ContractionError(ValueError):
    """The requested limit does not exist."""

    def __init__(self, message: str, triple: Triple | None = None):
        super().__init__(message if triple is None else f"{message} at {triple}")
        self.triple = triple


class LimitDataError(ContractionError):
    """Supplied limits do not match the nonzero brackets."""


@dataclass(frozen=True)
class Signature:
    exponents: tuple[Fraction, ...]

    def __init__(self, exponents: Sequence[object]):
        object.__setattr__(self, "exponents", tuple(as_rational(a) for a in exponents))

    def __len__(self):
        return len(self.exponents)

    def __getitem__(self, idx):
        return self.exponents[idx]

    def __iter__(self):
        return iter(self.exponents)

    def scaled(self, factor) -> "Signature":
        return Signature([as_rational(factor) * a for a in self.exponents])

    def normalized(self) -> tuple[int, ...]:
        """Primitive integer representative of the positive ray through the signature."""
        den = lcm(*(a.denominator for a in self.exponents)) if self.exponents else 1
        ints = [int(a * den) for a in self.exponents]
        g = gcd(*ints) if ints else 0
        return tuple(x // g for x in ints) if g else tuple(ints)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.exponents)


@dataclass(frozen=True)
class Monomial:
    """The entry ``coef * eps**exp`` of a diagonal family."""

    coef: Fraction
    exp: Fraction

    def __init__(self, coef, exp):
        coef = as_rational(coef)
        if coef == 0:
            raise ValueError("monomial coefficient must be nonzero")
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "exp", as_rational(exp))


@dataclass(frozen=True)
class Abstract:
    """A diagonal entry known only through the limits it produces."""


DiagonalFamily = tuple[Union[Monomial, Abstract], ...]

# Zero encodes a vanishing limit; any other value is a nonzero finite limit.
LimitData = Mapping[Triple, Fraction]


@dataclass(frozen=True)
class TripleClassification:
    E: tuple[Triple, ...]
    N: tuple[Triple, ...]
    F: Mapping[Triple, Fraction] = field(default_factory=dict)

    @property
    def improper(self) -> bool:
        return not self.N


@dataclass(frozen=True)
class ContractionSpec:
    A: Matrix | None
    family: Union[Signature, DiagonalFamily, LimitData]
    P: Matrix | None

    def a_matrix(self, n: int) -> Matrix:
        return self.A if self.A is not None else identity(n)

    def p_matrix(self, n: int) -> Matrix:
        return self.P if self.P is not None else identity(n)


def exponent_sum(alpha: Sequence[Fraction], triple: Triple) -> Fraction:
    i, j, k = triple
    return alpha[i - 1] + alpha[j - 1] - alpha[k - 1]


def classify_triples(c: StructureConstants, alpha: Sequence[object]) -> TripleClassification:
    alpha = Signature(alpha).exponents
    if len(alpha) != c.dim:
        raise ValueError("signature length does not match dimension")
    E, N = [], []
    for t in c.nonzero_triples():
        s = exponent_sum(alpha, t)
        if s < 0:
            raise ContractionError("signature violates validity constraint", t)
        (E if s == 0 else N).append(t)
    return TripleClassification(tuple(E), tuple(N), {t: Fraction(1) for t in E})


def classify_from_family(c: StructureConstants, family: Sequence[Monomial]) -> TripleClassification:
    if len(family) != c.dim:
        raise ValueError("family length does not match dimension")
    if not all(isinstance(f, Monomial) for f in family):
        raise TypeError("abstract entries need explicit limit data")
    alpha = [f.exp for f in family]
    E, N, F = [], [], {}
    for t in c.nonzero_triples():
        s = exponent_sum(alpha, t)
        if s < 0:
            raise ContractionError("diagonal family has no limit", t)
        if s == 0:
            i, j, k = t
            E.append(t)
            F[t] = family[i - 1].coef * family[j - 1].coef / family[k - 1].coef
        else:
            N.append(t)
    return TripleClassification(tuple(E), tuple(N), F)


def classify_from_limits(c: StructureConstants, limits: LimitData) -> TripleClassification:
    """Classification from externally supplied limits, which must cover every bracket."""
    expected = set(c.nonzero_triples())
    given = set(limits)
    missing = sorted(expected - given)
    if missing:
        raise LimitDataError("limit data is missing a nonzero bracket", missing[0])
    extra = sorted(given - expected)
    if extra:
        raise LimitDataError("limit data names a vanishing bracket", extra[0])
    E, N, F = [], [], {}
    for t in sorted(expected):
        v = as_rational(limits[t])
        if v:
            E.append(t)
            F[t] = v
        else:
            N.append(t)
    return TripleClassification(tuple(E), tuple(N), F)


def apply_classification(c: StructureConstants, cls: TripleClassification) -> StructureConstants:
    """Contracted constants: ``c * F`` on surviving brackets, zero elsewhere."""
    return StructureConstants(c.dim, {t: c(*t) * cls.F.get(t, Fraction(1)) for t in cls.E})


def contract_diagonal(c: StructureConstants, alpha: Sequence[object]) -> StructureConstants:
    return apply_classification(c, classify_triples(c, alpha))


def classify(c: StructureConstants, family) -> TripleClassification:
    if isinstance(family, Signature):
        return classify_triples(c, family)
    if isinstance(family, Mapping):
        return classify_from_limits(c, family)
    return classify_from_family(c, family)


def contract_full(c: StructureConstants, spec: ContractionSpec) -> StructureConstants:
    n = c.dim
    a, p = spec.a_matrix(n), spec.p_matrix(n)
    inverse(p)  # fail early on a singular P
    moved = transform(c, a)
    return transform(apply_classification(moved, classify(moved, spec.family)), p)


def family_from_signature(alpha: Sequence[object]) -> tuple[Monomial, ...]:
    return tuple(Monomial(1, a) for a in Signature(alpha))
