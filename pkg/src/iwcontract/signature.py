"""Integer signatures from the mixed system of exponent relations.

Equations ``x_i + x_j - x_k = 0`` come from surviving brackets, strict
inequalities ``x_i + x_j - x_k > 0`` from vanishing ones.  Equations are
removed by fraction-free Gaussian elimination over the integers, the
remaining homogeneous inequalities go through Fourier-Motzkin elimination.
Every derived row carries the combination of original rows it came from,
so an infeasible system yields a checkable vanishing combination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence, Union

from .algebra import StructureConstants, Triple
from .contraction import TripleClassification

SIGN_RELATIONS = (">0", ">=0", "<0", "<=0", "free")


def triple_row(n: int, triple: Triple) -> tuple[int, ...]:
    row = [0] * n
    i, j, k = triple
    row[i - 1] += 1
    row[j - 1] += 1
    row[k - 1] -= 1
    return tuple(row)


def _dot(row, x) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(row, x) if a), Fraction(0))


@dataclass(frozen=True)
class MixedLinearSystem:
    n: int
    eq_rows: tuple[tuple[int, ...], ...] = ()
    ineq_rows: tuple[tuple[int, ...], ...] = ()
    sign_constraints: Mapping[int, str] = field(default_factory=dict)
    eq_triples: tuple[Triple, ...] = ()
    ineq_triples: tuple[Triple, ...] = ()

    def __post_init__(self):
        for rel in self.sign_constraints.values():
            if rel not in SIGN_RELATIONS:
                raise ValueError(f"unknown sign relation {rel!r}")
        for j in self.sign_constraints:
            if not 1 <= j <= self.n:
                raise ValueError(f"sign constraint index {j} out of range")

    def sign_rows(self) -> list[tuple[int, tuple[int, ...], bool]]:
        """Sign constraints as ``(index, row, strict)`` with ``row . x (>|>=) 0``."""
        out = []
        for j in sorted(self.sign_constraints):
            rel = self.sign_constraints[j]
            if rel == "free":
                continue
            row = [0] * self.n
            row[j - 1] = 1 if rel.startswith(">") else -1
            out.append((j, tuple(row), "=" not in rel))
        return out

    def satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.n:
            return False
        return (
            all(_dot(r, x) == 0 for r in self.eq_rows)
            and all(_dot(r, x) > 0 for r in self.ineq_rows)
            and all((_dot(r, x) > 0) if strict else (_dot(r, x) >= 0)
                    for _, r, strict in self.sign_rows())
        )


def build_system(
    c: StructureConstants,
    cls: TripleClassification,
    sign_constraints: Mapping[int, str] | None = None,
) -> MixedLinearSystem:
    n = c.dim
    E, N = sorted(cls.E), sorted(cls.N)
    return MixedLinearSystem(
        n,
        tuple(triple_row(n, t) for t in E),
        tuple(triple_row(n, t) for t in N),
        dict(sign_constraints or {}),
        tuple(E),
        tuple(N),
    )


@dataclass(frozen=True)
class CombinationCertificate:
    """Nonnegative multipliers, one per input row, summing the rows to zero."""

    coeffs: tuple[int, ...]

    def check(self, rows: Sequence[Sequence], strict: Sequence[bool] | None = None) -> bool:
        if len(self.coeffs) != len(rows) or any(m < 0 for m in self.coeffs):
            return False
        strict = [True] * len(rows) if strict is None else strict
        if not any(m > 0 and s for m, s in zip(self.coeffs, strict)):
            return False
        width = len(rows[0]) if rows else 0
        return all(sum(m * Fraction(r[v]) for m, r in zip(self.coeffs, rows)) == 0
                   for v in range(width))


@dataclass(frozen=True)
class InfeasibilityCertificateS:
    eq_coeffs: tuple[int, ...]
    ineq_coeffs: tuple[int, ...]
    sign_coeffs: Mapping[int, int] = field(default_factory=dict)

    def combination(self, sys: MixedLinearSystem) -> tuple[int, ...]:
        total = [0] * sys.n
        parts = list(zip(self.eq_coeffs, sys.eq_rows)) + list(zip(self.ineq_coeffs, sys.ineq_rows))
        parts += [(self.sign_coeffs.get(j, 0), row) for j, row, _ in sys.sign_rows()]
        for m, row in parts:
            for v in range(sys.n):
                total[v] += m * row[v]
        return tuple(total)

    def check(self, sys: MixedLinearSystem) -> bool:
        """True iff this is a valid witness that ``sys`` has no solution."""
        if len(self.eq_coeffs) != len(sys.eq_rows) or len(self.ineq_coeffs) != len(sys.ineq_rows):
            return False
        signs = {j: strict for j, _, strict in sys.sign_rows()}
        if set(self.sign_coeffs) - set(signs):
            return False
        if any(m < 0 for m in self.ineq_coeffs) or any(m < 0 for m in self.sign_coeffs.values()):
            return False
        strict_positive = any(m > 0 for m in self.ineq_coeffs) or any(
            m > 0 and signs[j] for j, m in self.sign_coeffs.items())
        return strict_positive and not any(self.combination(sys))


# -- internal row bookkeeping ---------------------------------------------------

@dataclass
class _Row:
    coeffs: list[Fraction]
    strict: bool
    combo: list[Fraction]  # multipliers over the original rows

    def scaled(self, f: Fraction) -> "_Row":
        return _Row([f * a for a in self.coeffs], self.strict, [f * m for m in self.combo])


def _add(a: _Row, fa, b: _Row, fb, strict: bool) -> _Row:
    return _Row(
        [fa * x + fb * y for x, y in zip(a.coeffs, b.coeffs)],
        strict,
        [fa * x + fb * y for x, y in zip(a.combo, b.combo)],
    )


def _primitive(row: _Row) -> _Row:
    """Rescale by a positive factor so the coefficients are coprime integers."""
    nz = [a for a in row.coeffs if a]
    if not nz:
        return row
    den = lcm(*(a.denominator for a in nz))
    num = gcd(*(int(a * den) for a in nz))
    return row.scaled(Fraction(den, num))


def _clear(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to coprime integers."""
    nz = [v for v in values if v]
    if not nz:
        return tuple(0 for _ in values)
    den = lcm(*(v.denominator for v in nz))
    ints = [int(v * den) for v in values]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


@dataclass
class EliminationResult:
    n: int
    pivots: dict[int, tuple[int, dict[int, int]]]  # i -> (a_i, {j: b_i^j})
    free: tuple[int, ...]
    reduced: list[_Row]
    expression_rows: dict[int, _Row] = field(default_factory=dict)

    @property
    def I(self) -> tuple[int, ...]:
        return tuple(sorted(self.pivots))

    def reduced_rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(a) for a in r.coeffs) for r in self.reduced]

    def back_substitute(self, x_free: Sequence[Fraction]) -> list[Fraction]:
        """Fill the expressed variables from values of the free ones (full-length input)."""
        x = [Fraction(v) for v in x_free]
        for i, (a, b) in self.pivots.items():
            x[i - 1] = sum((Fraction(bj) * x[j - 1] for j, bj in b.items()), Fraction(0)) / a
        return x


def _original_rows(sys: MixedLinearSystem) -> list[tuple[tuple[int, ...], bool]]:
    rows = [(r, True) for r in sys.ineq_rows]
    rows += [(r, strict) for _, r, strict in sys.sign_rows()]
    return rows


def eliminate_equations(sys: MixedLinearSystem) -> EliminationResult:
    n = sys.n
    n_eq = len(sys.eq_rows)
    inequalities = _original_rows(sys)
    width = n_eq + len(inequalities)

    def unit(pos):
        v = [Fraction(0)] * width
        v[pos] = Fraction(1)
        return v

    eqs = [_Row([Fraction(a) for a in r], False, unit(s)) for s, r in enumerate(sys.eq_rows)]
    pivot_rows: dict[int, _Row] = {}
    pending = list(eqs)
    for col in range(n):
        candidates = [r for r in pending if r.coeffs[col]]
        if not candidates:
            continue
        prow = candidates[0]
        pending.remove(prow)
        if prow.coeffs[col] < 0:
            prow = prow.scaled(Fraction(-1))
        prow = _primitive(prow)
        p = prow.coeffs[col]
        others = pending + list(pivot_rows.values())
        reduced_others = []
        for r in others:
            if r.coeffs[col]:
                r = _primitive(_add(r, p, prow, -r.coeffs[col], False))
            reduced_others.append(r)
        pending = reduced_others[: len(pending)]
        for key, r in zip(list(pivot_rows), reduced_others[len(pending):]):
            pivot_rows[key] = r
        pivot_rows[col + 1] = prow

    pivots = {}
    for i, r in sorted(pivot_rows.items()):
        a = int(r.coeffs[i - 1])
        b = {j + 1: -int(v) for j, v in enumerate(r.coeffs) if v and j != i - 1}
        pivots[i] = (a, b)
    free = tuple(v for v in range(1, n + 1) if v not in pivots)

    reduced = []
    for s, (row, strict) in enumerate(inequalities):
        g = _Row([Fraction(a) for a in row], strict, unit(n_eq + s))
        for i, prow in sorted(pivot_rows.items()):
            gi = g.coeffs[i - 1]
            if gi:
                g = _add(g, prow.coeffs[i - 1], prow, -gi, g.strict)
        reduced.append(g)
    return EliminationResult(n, pivots, free, reduced, dict(pivot_rows))


def _fourier_motzkin(rows: list[_Row], variables: Sequence[int], n: int):
    """Returns ``(point, None)`` or ``(None, zero_row)`` for homogeneous rows.

    ``point`` is a full-length list; coordinates outside ``variables`` are 0.
    """
    occurs = {v for v in variables if any(r.coeffs[v - 1] for r in rows)}

    def tidy(rs: list[_Row]):
        seen: dict[tuple, _Row] = {}
        for r in rs:
            r = _primitive(r)
            if not any(r.coeffs):
                if r.strict:
                    return None, r
                continue
            key = tuple(r.coeffs)
            if key not in seen or (r.strict and not seen[key].strict):
                seen[key] = r
        return [seen[k] for k in sorted(seen)], None

    current, bad = tidy(rows)
    if bad is not None:
        return None, bad
    stages = []
    for v in variables:
        stages.append(current)
        col = v - 1
        pos = [r for r in current if r.coeffs[col] > 0]
        neg = [r for r in current if r.coeffs[col] < 0]
        nxt = [r for r in current if not r.coeffs[col]]
        for p in pos:
            for q in neg:
                nxt.append(_add(p, -q.coeffs[col], q, p.coeffs[col], p.strict or q.strict))
        current, bad = tidy(nxt)
        if bad is not None:
            return None, bad

    x = [Fraction(0)] * n
    for v, stage in zip(reversed(variables), reversed(stages)):
        col = v - 1
        lo = hi = None
        lo_strict = hi_strict = False
        for r in stage:
            a = r.coeffs[col]
            if not a:
                continue
            rest = sum((r.coeffs[u] * x[u] for u in range(n) if u != col and r.coeffs[u]),
                       Fraction(0))
            bound = -rest / a
            if a > 0:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_strict = bound, r.strict
            else:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_strict = bound, r.strict
        if lo is not None and hi is not None:
            x[col] = (lo + hi) / 2 if lo < hi else lo
        elif lo is not None:
            x[col] = lo + 1
        elif hi is not None:
            x[col] = hi - 1
        else:
            x[col] = Fraction(1 if v in occurs else 0)
    return x, None


def solve_strict_inequalities(
    rows: Sequence[Sequence], strict: Sequence[bool] | None = None
) -> Union[tuple[Fraction, ...], CombinationCertificate]:
    """Interior point of ``{x : row . x > 0}`` or a vanishing nonnegative combination.

    ``strict[r] = False`` turns row ``r`` into ``row . x >= 0``.
    """
    if not rows:
        return ()
    n = len(rows[0])
    strict = [True] * len(rows) if strict is None else list(strict)
    m = len(rows)
    internal = [
        _Row([Fraction(a) for a in r], s, [Fraction(int(t == u)) for t in range(m)])
        for u, (r, s) in enumerate(zip(rows, strict))
    ]
    point, bad = _fourier_motzkin(internal, range(1, n + 1), n)
    if bad is not None:
        return CombinationCertificate(_clear(bad.combo))
    return tuple(point)


def solve_integer_signature(
    sys: MixedLinearSystem,
) -> Union[tuple[int, ...], InfeasibilityCertificateS]:
    n = sys.n
    if not sys.ineq_rows and not sys.sign_rows():
        return tuple([0] * n)
    elim = eliminate_equations(sys)
    point, bad = _fourier_motzkin(elim.reduced, elim.free, n)
    if bad is not None:
        coeffs = _clear(bad.combo)
        n_eq, n_in = len(sys.eq_rows), len(sys.ineq_rows)
        signs = {j: coeffs[n_eq + n_in + s]
                 for s, (j, _, _) in enumerate(sys.sign_rows()) if coeffs[n_eq + n_in + s]}
        return InfeasibilityCertificateS(coeffs[:n_eq], coeffs[n_eq:n_eq + n_in], signs)
    x = elim.back_substitute(point)
    alpha = _clear(x)
    if not sys.satisfied_by(alpha):
        raise AssertionError(f"solver produced a non-solution {alpha}")
    return alpha
