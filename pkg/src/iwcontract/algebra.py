"""Exact-rational Lie algebras given by structure constants.

Indices are 1-based throughout.  A bracket is stored only for ``i < j``;
the other half of the tensor follows from antisymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

Triple = tuple[int, int, int]
Matrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every scalar in this package is exact.
    """
    if isinstance(value, float):
        raise TypeError(f"floating point value {value!r} is not allowed")
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class StructureConstants:
    """Structure constants ``c_ij^k`` of a bracket on an ``dim``-dimensional space."""

    __slots__ = ("dim", "_entries")

    def __init__(self, dim: int, entries: Mapping[Triple, object] | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        stored: dict[Triple, Fraction] = {}
        for key, raw in (entries or {}).items():
            i, j, k = key
            for idx in key:
                if not 1 <= idx <= dim:
                    raise ValueError(f"index out of range in {key}")
            if i >= j:
                raise ValueError(f"only i < j entries are stored, got {key}")
            value = as_rational(raw)
            if value:
                stored[(i, j, k)] = value
        self._entries = stored

    def __call__(self, i: int, j: int, k: int) -> Fraction:
        if i < j:
            return self._entries.get((i, j, k), Fraction(0))
        if i > j:
            return -self._entries.get((j, i, k), Fraction(0))
        return Fraction(0)

    def items(self) -> Iterator[tuple[Triple, Fraction]]:
        """Nonzero ``i < j`` entries in sorted order."""
        for key in sorted(self._entries):
            yield key, self._entries[key]

    def nonzero_triples(self) -> list[Triple]:
        return sorted(self._entries)

    def full_tensor(self) -> dict[Triple, Fraction]:
        out: dict[Triple, Fraction] = {}
        for (i, j, k), v in self._entries.items():
            out[(i, j, k)] = v
            out[(j, i, k)] = -v
        return out

    def is_abelian(self) -> bool:
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, frozenset(self._entries.items())))

    def __repr__(self):
        body = ", ".join(f"{key}: {v}" for key, v in self.items())
        return f"StructureConstants({self.dim}, {{{body}}})"


def abelian(dim: int) -> StructureConstants:
    return StructureConstants(dim)


@dataclass
class ValidationReport:
    antisymmetry: list[tuple[int, int, int]] = field(default_factory=list)
    jacobi: list[tuple[tuple[int, int, int, int], Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.antisymmetry and not self.jacobi

    def lines(self) -> list[str]:
        out = [f"antisymmetry violated at (i,j,k)={t}" for t in self.antisymmetry]
        out += [f"jacobi violated at (i,j,k,k')={q} residual {r}" for q, r in self.jacobi]
        return out


def validate_tensor(dim: int, tensor: Mapping[Triple, object]) -> ValidationReport:
    """Scan a fully materialized tensor for antisymmetry and Jacobi violations."""
    c: dict[Triple, Fraction] = {}
    for key, v in tensor.items():
        q = as_rational(v)
        if q:
            c[key] = q

    def get(i, j, k):
        return c.get((i, j, k), Fraction(0))

    report = ValidationReport()
    idx = range(1, dim + 1)
    for i, j, k in product(idx, repeat=3):
        if i <= j and get(i, j, k) + get(j, i, k) != 0:
            report.antisymmetry.append((i, j, k))
    for i, j, k, kk in product(idx, repeat=4):
        r = Fraction(0)
        for m in idx:
            r += get(i, j, m) * get(m, k, kk)
            r += get(k, i, m) * get(m, j, kk)
            r += get(j, k, m) * get(m, i, kk)
        if r:
            report.jacobi.append(((i, j, k, kk), r))
    return report


def validate_algebra(c: StructureConstants) -> ValidationReport:
    return validate_tensor(c.dim, c.full_tensor())


# -- matrices -----------------------------------------------------------------

def matrix(rows: Iterable[Iterable[object]]) -> Matrix:
    out = tuple(tuple(as_rational(x) for x in row) for row in rows)
    n = len(out)
    if n == 0 or any(len(row) != n for row in out):
        raise ValueError("matrix must be square and nonempty")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(r == s)) for s in range(n)) for r in range(n))


def diagonal(entries: Sequence[object]) -> Matrix:
    vals = [as_rational(x) for x in entries]
    n = len(vals)
    return tuple(tuple(vals[r] if r == s else Fraction(0) for s in range(n)) for r in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[r][t] * b[t][s] for t in range(n)), Fraction(0)) for s in range(n))
        for r in range(n)
    )


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    work = [list(row) + [Fraction(int(r == s)) for s in range(n)] for r, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is not invertible")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def is_identity(m: Matrix) -> bool:
    return m == identity(len(m))


def transform(c: StructureConstants, u: Matrix) -> StructureConstants:
    """Right action ``(U.mu)(x, y) = U^-1 mu(Ux, Uy)`` on structure constants.

    ``U[i][i']`` is the ``i``-th coordinate of the image of ``e_i'``, so
    ``c'_{i'j'}^{k'} = sum U[i][i'] U[j][j'] Uinv[k'][k] c_ij^k``.
    """
    n = c.dim
    if len(u) != n:
        raise ValueError(f"matrix size {len(u)} does not match dimension {n}")
    uinv = inverse(u)
    if is_identity(u):
        return c
    full = c.full_tensor()
    # (i',j') -> vector over k of sum_{i,j} U[i][i'] U[j][j'] c_ij^k
    out: dict[Triple, Fraction] = {}
    for ip in range(n):
        for jp in range(ip + 1, n):
            mid = [Fraction(0)] * n
            for (i, j, k), v in full.items():
                w = u[i - 1][ip] * u[j - 1][jp]
                if w:
                    mid[k - 1] += w * v
            if not any(mid):
                continue
            for kp in range(n):
                val = sum((uinv[kp][k] * mid[k] for k in range(n) if mid[k]), Fraction(0))
                if val:
                    out[(ip + 1, jp + 1, kp + 1)] = val
    return StructureConstants(n, out)


def is_derivation(c: StructureConstants, d: Sequence[object]) -> bool:
    """True iff ``diag(d)`` is a derivation: ``(d_i + d_j - d_k) c_ij^k = 0``."""
    if len(d) != c.dim:
        raise ValueError("derivation vector has wrong length")
    dv = [as_rational(x) for x in d]
    return all(dv[i - 1] + dv[j - 1] - dv[k - 1] == 0 for i, j, k in c.nonzero_triples())
