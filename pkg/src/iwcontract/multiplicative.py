"""Solving ``y_i y_j / y_k = F`` over the nonzero reals.

Variables are removed one at a time: the degrees of the chosen variable
across all equations are combined through Bezout coefficients into one
equation of degree ``gcd``, which is then divided out of every other
equation.  Only integer powers of equations are ever formed, so the
combination behind each derived equation is an integer vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import factorint

from .algebra import StructureConstants, Triple, as_rational
from .contraction import TripleClassification
from .signature import triple_row


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of ``values`` and coefficients ``d`` with ``sum(d*v) == gcd``, left fold."""
    g, coeffs = 0, []
    for v in values:
        g, u, w = egcd(g, v)
        coeffs = [u * d for d in coeffs] + [w]
    return g, coeffs


class RadicalProduct:
    """``sign * prod p**e`` over primes ``p`` with rational exponents ``e``.

    The prime map is canonical, so equality of two products is exact.
    """

    __slots__ = ("sign", "powers")

    def __init__(self, sign: int = 1, factors: Iterable[tuple[object, object]] = ()):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        powers: dict[int, Fraction] = {}
        for base, exp in factors:
            base, exp = as_rational(base), as_rational(exp)
            if base <= 0:
                raise ValueError("radical bases must be positive")
            for part, direction in ((base.numerator, 1), (base.denominator, -1)):
                for p, k in factorint(part).items():
                    powers[p] = powers.get(p, Fraction(0)) + direction * k * exp
        self.sign = sign
        self.powers = tuple(sorted((p, e) for p, e in powers.items() if e))

    @classmethod
    def from_rational(cls, q) -> "RadicalProduct":
        q = as_rational(q)
        if q == 0:
            raise ValueError("zero has no radical form")
        return cls(1 if q > 0 else -1, [(abs(q), 1)])

    def _combine(self, other: "RadicalProduct", direction: int) -> "RadicalProduct":
        powers = dict(self.powers)
        for p, e in other.powers:
            powers[p] = powers.get(p, Fraction(0)) + direction * e
        return RadicalProduct(self.sign * other.sign, powers.items())

    def __mul__(self, other):
        if not isinstance(other, RadicalProduct):
            other = RadicalProduct.from_rational(other)
        return self._combine(other, 1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RadicalProduct):
            other = RadicalProduct.from_rational(other)
        return self._combine(other, -1)

    def __pow__(self, exponent) -> "RadicalProduct":
        exponent = as_rational(exponent)
        sign = self.sign
        if sign < 0:
            if exponent.denominator % 2 == 0:
                raise ValueError("even root of a negative number")
            sign = -1 if exponent.numerator % 2 else 1
        return RadicalProduct(sign, ((p, e * exponent) for p, e in self.powers))

    def root(self, degree: int) -> "RadicalProduct":
        """Principal real root."""
        return self ** Fraction(1, degree)

    def abs(self) -> "RadicalProduct":
        return RadicalProduct(1, self.powers)

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for _, e in self.powers)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        q = Fraction(self.sign)
        for p, e in self.powers:
            q *= Fraction(p) ** int(e)
        return q

    def __eq__(self, other):
        if not isinstance(other, RadicalProduct):
            try:
                other = RadicalProduct.from_rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.sign == other.sign and self.powers == other.powers

    def __hash__(self):
        return hash((self.sign, self.powers))

    def __repr__(self):
        if self.is_rational():
            return f"RadicalProduct({self.to_fraction()})"
        body = " * ".join(f"{p}^({e})" for p, e in self.powers)
        return f"RadicalProduct({'-' if self.sign < 0 else ''}{body})"


ONE = RadicalProduct()


@dataclass(frozen=True)
class MultiplicativeSystem:
    n: int
    equations: tuple[tuple[tuple[int, ...], Fraction], ...]
    triples: tuple[Triple, ...] = ()

    def __post_init__(self):
        for e, g in self.equations:
            if len(e) != self.n:
                raise ValueError("exponent vector has wrong length")
            if g == 0:
                raise ValueError("right-hand sides must be nonzero")

    @classmethod
    def from_classification(cls, c: StructureConstants, tc: TripleClassification):
        E = sorted(tc.E)
        return cls(c.dim, tuple((triple_row(c.dim, t), as_rational(tc.F[t])) for t in E), tuple(E))


@dataclass(frozen=True)
class MultiplicativeCertificate:
    """Integer powers ``m`` of the equations whose product is contradictory.

    ``unit_mismatch``: the left sides cancel to 1 but the right side is not 1.
    ``negative_square``: the left side is a perfect square, the right side negative.
    """

    kind: str
    m: tuple[int, ...]

    def combined(self, sys: MultiplicativeSystem) -> tuple[tuple[int, ...], Fraction]:
        vec = [0] * sys.n
        rhs = Fraction(1)
        for k, (e, g) in zip(self.m, sys.equations):
            if k:
                vec = [a + k * b for a, b in zip(vec, e)]
                rhs *= Fraction(g) ** k
        return tuple(vec), rhs

    def check(self, sys: MultiplicativeSystem) -> bool:
        if len(self.m) != len(sys.equations):
            return False
        vec, rhs = self.combined(sys)
        if self.kind == "unit_mismatch":
            return not any(vec) and rhs != 1
        if self.kind == "negative_square":
            return all(v % 2 == 0 for v in vec) and rhs < 0
        return False


@dataclass
class EliminationStep:
    variable: int  # 1-based
    degree: int
    exponents: tuple[int, ...]
    rhs: Fraction
    system: list[tuple[tuple[int, ...], Fraction]]  # state after the step


def _eliminate(sys: MultiplicativeSystem):
    sigma = len(sys.equations)
    eqs = [
        [list(e), Fraction(g), [int(s == t) for t in range(sigma)]]
        for s, (e, g) in enumerate(sys.equations)
    ]
    steps: list[EliminationStep] = []
    while True:
        present = [v for v in range(sys.n) if any(e[v] for e, _, _ in eqs)]
        if not present:
            break
        i = present[-1]
        betas = [e[i] for e, _, _ in eqs]
        gbar, delta = bezout(betas)
        ebar = [sum(d * e[v] for d, (e, _, _) in zip(delta, eqs)) for v in range(sys.n)]
        Gbar = Fraction(1)
        mbar = [0] * sigma
        for d, (_, g, m) in zip(delta, eqs):
            if d:
                Gbar *= g ** d
                mbar = [a + d * b for a, b in zip(mbar, m)]
        for eq, b in zip(eqs, betas):
            q = b // gbar
            if q:
                eq[0] = [a - q * x for a, x in zip(eq[0], ebar)]
                eq[1] = eq[1] / Gbar ** q
                eq[2] = [a - q * x for a, x in zip(eq[2], mbar)]
        steps.append(EliminationStep(i + 1, gbar, tuple(ebar), Gbar,
                                     [(tuple(e), g) for e, g, _ in eqs]))
    return steps, eqs


def eliminate(sys: MultiplicativeSystem) -> list[EliminationStep]:
    """The sequence of elimination steps, for inspection."""
    return _eliminate(sys)[0]


def _sign_parity(sys: MultiplicativeSystem):
    """Solve the sign pattern over GF(2); ``(signs, None)`` or ``(None, m)``."""
    rows = []
    for s, (e, g) in enumerate(sys.equations):
        bits = sum(1 << v for v in range(sys.n) if e[v] % 2)
        rows.append([bits, int(g < 0), 1 << s])
    pivots = []
    for v in range(sys.n):
        pr = next((r for r in rows if r[0] >> v & 1), None)
        if pr is None:
            continue
        rows.remove(pr)
        for r in rows + [p for _, p in pivots]:
            if r[0] >> v & 1:
                r[0] ^= pr[0]
                r[1] ^= pr[1]
                r[2] ^= pr[2]
        pivots.append((v, pr))
    for bits, rhs, combo in rows:
        if rhs:
            return None, [combo >> s & 1 for s in range(len(sys.equations))]
    negative = [0] * sys.n
    for v, (bits, rhs, _) in pivots:
        negative[v] = rhs  # fully reduced: free variables are taken positive
    return negative, None


def solve_gamma(sys: MultiplicativeSystem) -> Union[tuple[RadicalProduct, ...], MultiplicativeCertificate]:
    steps, residual = _eliminate(sys)
    for e, g, m in residual:
        if g != 1:
            return MultiplicativeCertificate("unit_mismatch", tuple(m))
    negative, m = _sign_parity(sys)
    if m is not None:
        return MultiplicativeCertificate("negative_square", tuple(m))

    magnitude = [ONE] * sys.n
    for step in reversed(steps):
        i = step.variable - 1
        value = RadicalProduct.from_rational(abs(step.rhs))
        for j, k in enumerate(step.exponents):
            if j != i and k:
                value = value / magnitude[j] ** k
        magnitude[i] = value.root(step.degree)
    gamma = tuple(RadicalProduct(-1 if neg else 1, mag.powers)
                  for neg, mag in zip(negative, magnitude))
    if not verify_gamma(sys, gamma):
        raise AssertionError("multiplicative elimination produced a non-solution")
    return gamma


def verify_gamma(sys: MultiplicativeSystem, gamma: Sequence) -> bool:
    if len(gamma) != sys.n:
        return False
    rational = all(not isinstance(y, RadicalProduct) or y.is_rational() for y in gamma)
    if rational:
        ys = [y.to_fraction() if isinstance(y, RadicalProduct) else as_rational(y) for y in gamma]
        if any(y == 0 for y in ys):
            return False
        for e, g in sys.equations:
            lhs = Fraction(1)
            for y, k in zip(ys, e):
                if k:
                    lhs *= y ** k
            if lhs != g:
                return False
        return True
    ys = [y if isinstance(y, RadicalProduct) else RadicalProduct.from_rational(y) for y in gamma]
    for e, g in sys.equations:
        lhs = ONE
        for y, k in zip(ys, e):
            if k:
                lhs = lhs * y ** k
        if lhs != RadicalProduct.from_rational(g):
            return False
    return True
