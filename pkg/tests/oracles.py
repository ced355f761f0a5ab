"""Independent checks used to judge the solvers.

Nothing here imports the elimination code it is used to check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy


@lru_cache(maxsize=None)
def integer_grid(n: int, bound: int = 6) -> np.ndarray:
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def grid_feasible(n, eq_rows, ineq_rows, sign_rows=(), bound: int = 6) -> bool:
    """Exhaustive search for an integer point in ``[-bound, bound]^n``.

    ``sign_rows`` holds ``(row, strict)`` pairs meaning ``row.x > 0`` / ``>= 0``.
    """
    grid = integer_grid(n, bound)
    ok = np.ones(len(grid), dtype=bool)
    for r in eq_rows:
        ok &= grid @ np.asarray(r, dtype=np.int64) == 0
    for r in ineq_rows:
        ok &= grid @ np.asarray(r, dtype=np.int64) > 0
    for r, strict in sign_rows:
        v = grid @ np.asarray(r, dtype=np.int64)
        ok &= (v > 0) if strict else (v >= 0)
    return bool(ok.any())


def brute_force_points(n, eq_rows, ineq_rows, bound=2):
    """All integer solutions in a small box, pure Python."""
    out = []
    for x in itertools.product(range(-bound, bound + 1), repeat=n):
        if all(sum(a * b for a, b in zip(r, x)) == 0 for r in eq_rows) and all(
                sum(a * b for a, b in zip(r, x)) > 0 for r in ineq_rows):
            out.append(x)
    return out


def valuation(q: Fraction, p: int) -> int:
    v = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def multiplicative_feasible(n, equations, primes=(2, 3)) -> bool:
    """Solvability of ``prod y^e = G`` over nonzero reals.

    Magnitudes: for each prime the log-linear system ``e . u = v_p(G)`` must be
    consistent over Q (rank test).  Signs: some assignment of signs to the
    ``y`` must match every ``sign(G)``; all ``2^n`` assignments are tried.
    Only right-hand sides built from ``primes`` are supported.
    """
    if not equations:
        return True
    for _, g in equations:
        rest = abs(g)
        for p in primes:
            rest /= Fraction(p) ** valuation(rest, p)
        assert rest == 1, "oracle supports only the listed primes"
    E = sympy.Matrix([list(e) for e, _ in equations])
    for p in primes:
        aug = E.row_join(sympy.Matrix([valuation(Fraction(g), p) for _, g in equations]))
        if aug.rank() != E.rank():
            return False
    for signs in itertools.product((1, -1), repeat=n):
        if all(np.prod([s ** (k % 2) for s, k in zip(signs, e)]) == (1 if g > 0 else -1)
               for e, g in equations):
            return True
    return False


def radical_to_float(r) -> float:
    v = float(r.sign)
    for p, e in r.powers:
        v *= float(p) ** float(e)
    return v
