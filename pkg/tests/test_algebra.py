from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iwcontract.algebra import (
    SingularMatrixError,
    StructureConstants,
    abelian,
    as_rational,
    diagonal,
    identity,
    inverse,
    is_derivation,
    matmul,
    matrix,
    transform,
    validate_algebra,
    validate_tensor,
)


def bracket(c, x, y):
    """Evaluate mu(x, y) on coordinate vectors straight from the definition."""
    n = c.dim
    out = [Fraction(0)] * n
    for i in range(n):
        for j in range(n):
            if x[i] and y[j]:
                for k in range(n):
                    out[k] += x[i] * y[j] * c(i + 1, j + 1, k + 1)
    return out


def transform_by_vectors(c, u):
    """``U^-1 mu(U e_a, U e_b)`` computed with explicit vectors."""
    n = c.dim
    uinv = inverse(u)
    cols = [[u[r][s] for r in range(n)] for s in range(n)]
    entries = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = bracket(c, cols[a], cols[b])
            w = [sum(uinv[r][s] * v[s] for s in range(n)) for r in range(n)]
            for k, val in enumerate(w):
                if val:
                    entries[(a + 1, b + 1, k + 1)] = val
    return StructureConstants(n, entries)


def test_rational_parsing():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational("-4") == -4
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("1.5")


def test_storage_is_antisymmetric(h3):
    assert h3(1, 2, 3) == 1
    assert h3(2, 1, 3) == -1
    assert h3(1, 1, 3) == 0
    with pytest.raises(ValueError):
        StructureConstants(3, {(2, 1, 3): 1})
    with pytest.raises(ValueError):
        StructureConstants(3, {(1, 4, 3): 1})


def test_zero_entries_are_dropped():
    assert StructureConstants(2, {(1, 2, 1): 0}) == abelian(2)


class TestValidate:
    def test_heisenberg_valid(self, h3):
        assert validate_algebra(h3).ok

    def test_abelian_valid(self):
        assert validate_algebra(abelian(4)).ok

    def test_broken_jacobi(self):
        c = StructureConstants(3, {(1, 2, 3): 1, (1, 3, 3): 1, (2, 3, 1): 1})
        report = validate_algebra(c)
        assert not report.ok
        # direct expansion of the three summands at (1,2,3,1):
        # c_12^3 c_33^1 + c_31^3 c_32^1 + c_23^1 c_11^1 = 0 + (-1)(-1) + 0
        assert ((1, 2, 3, 1), Fraction(1)) in report.jacobi

    def test_raw_tensor_antisymmetry(self):
        report = validate_tensor(2, {(1, 2, 1): 1, (2, 1, 1): 1})
        assert (1, 2, 1) in report.antisymmetry
        report = validate_tensor(2, {(1, 1, 2): 1})
        assert (1, 1, 2) in report.antisymmetry

    def test_corpus_valid(self, corpus):
        for entry in corpus:
            assert validate_algebra(entry.algebra).ok, entry.name


class TestTransform:
    def test_identity(self, so3):
        assert transform(so3, identity(3)) == so3

    def test_diagonal_scaling(self, h3):
        assert transform(h3, diagonal([1, 1, 2]))(1, 2, 3) == Fraction(1, 2)

    def test_swap(self, h3):
        swap = matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert transform(h3, swap)(1, 2, 3) == -1

    def test_singular(self, h3):
        with pytest.raises(SingularMatrixError, match="not invertible"):
            transform(h3, matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))

    def test_matches_vector_evaluation(self, so3):
        u = matrix([[1, 2, 0], [0, 1, "1/3"], [-1, 0, 1]])
        assert transform(so3, u) == transform_by_vectors(so3, u)


def test_inverse():
    m = matrix([[2, 1], [1, 1]])
    assert matmul(m, inverse(m)) == identity(2)


class TestDerivation:
    def test_heisenberg_grading(self, h3):
        assert is_derivation(h3, [1, 1, 2])

    def test_heisenberg_not(self, h3):
        assert not is_derivation(h3, [1, 1, 1])

    def test_abelian_any(self):
        assert is_derivation(abelian(3), ["1/2", -7, 3])


small = st.integers(-2, 2)


@st.composite
def invertible(draw, n=3):
    """Lower unitriangular times upper triangular with unit-ish diagonal."""
    pivot = st.sampled_from([1, -1, 2, Fraction(1, 2), -3])
    lower = [[draw(small) if s < r else int(s == r) for s in range(n)] for r in range(n)]
    upper = [[draw(small) if s > r else (draw(pivot) if s == r else 0) for s in range(n)] for r in range(n)]
    return matmul(matrix(lower), matrix(upper))


@st.composite
def algebra3(draw):
    """Corpus algebras moved by a random basis change."""
    base = draw(st.sampled_from([
        {(1, 2, 3): 1},
        {(1, 2, 3): 1, (2, 3, 1): 1, (1, 3, 2): -1},
        {(1, 2, 2): 2, (1, 3, 3): -2, (2, 3, 1): 1},
        {(2, 3, 1): 1, (1, 3, 2): -1},
    ]))
    return transform(StructureConstants(3, base), draw(invertible()))


@settings(max_examples=60, deadline=None)
@given(algebra3(), invertible())
def test_round_trip(c, u):
    assert transform(transform(c, u), inverse(u)) == c


@settings(max_examples=60, deadline=None)
@given(algebra3(), invertible(), invertible())
def test_right_action(c, u, v):
    assert transform(c, matmul(u, v)) == transform(transform(c, u), v)


@settings(max_examples=60, deadline=None)
@given(algebra3(), invertible())
def test_transform_keeps_jacobi(c, u):
    assert validate_algebra(c).ok
    assert validate_algebra(transform(c, u)).ok
