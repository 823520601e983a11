"""Exact linear algebra: examples with independent oracles, then laws."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fermatlines.errors import DimensionMismatch
from fermatlines.exact import (Matrix, Subspace, format_fraction, kernel_basis,
                               parse_fraction, rank, rank_modular,
                               random_solution, sample_rational, solve,
                               subspace_contains, subspace_intersect,
                               subspace_sum)
from fermatlines.rng import Rng


def brute_force_rank(rows):
    """Oracle: largest k with a nonzero k x k minor, by determinant expansion."""
    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = Fraction(0)
        for j in range(len(mat)):
            sub = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = mat[0][j] * det(sub)
            total += term if j % 2 == 0 else -term
        return total

    nr, nc = len(rows), len(rows[0])
    for k in range(min(nr, nc), 0, -1):
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                minor = [[rows[i][j] for j in ci] for i in ri]
                if det(minor) != 0:
                    return k
    return 0


def fraction_rref_reference(rows):
    """Oracle: plain rational Gauss-Jordan, no fraction-free tricks."""
    m = [[Fraction(x) for x in row] for row in rows]
    nr, nc = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[piv], m[r] = m[r], m[piv]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:len(pivots)], pivots


def random_matrix(rng, nrows, ncols, bound=9):
    return Matrix([[sample_rational(rng, bound) for _ in range(ncols)]
                   for _ in range(nrows)])


def test_rank_examples():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zeros(2, 2)) == 0
    m = Matrix([[1, 2], [2, 4], [3, 6]])
    assert rank(m) == 1
    assert brute_force_rank(m.data) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(2)).dim == 0
    k = kernel_basis(Matrix([[1, -1]]))
    assert k.dim == 1
    # solved by hand: x0 = x1
    assert k.contains_vector([1, 1])
    assert not k.contains_vector([1, 2])
    assert kernel_basis(Matrix.zeros(3, 3)) == Subspace.full(3)


def test_solve_examples():
    assert solve(Matrix.identity(2), [3, 5]) == [3, 5]
    x = solve(Matrix([[1, -1]]), [0])
    assert x is not None and x[0] == x[1]
    assert solve(Matrix([[1], [1]]), [1, 2]) is None


def test_subspace_examples():
    e1 = Subspace.from_vectors(2, [[1, 0]])
    e2 = Subspace.from_vectors(2, [[0, 1]])
    assert subspace_sum(e1, e2) == Subspace.full(2)
    assert subspace_intersect(e1, e2).dim == 0
    s = Subspace.from_vectors(2, [[1, 1], [1, -1]])
    # hand solution of a*(1,1) + b*(1,-1) = (5,3): a = 4, b = 1
    assert subspace_contains(s, [5, 3])
    one_dim = Subspace.from_vectors(2, [[1, 1]])
    assert not subspace_contains(one_dim, [5, 3])


def test_subspace_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatch):
        subspace_contains(Subspace.full(2), [1, 2, 3])


def test_sample_rational_examples():
    q = sample_rational(Rng(0), 1)
    assert q in (Fraction(-1), Fraction(0), Fraction(1))
    assert sample_rational(Rng(123), 50) == sample_rational(Rng(123), 50)
    rng = Rng(9)
    for _ in range(10_000):
        q = sample_rational(rng, 1000)
        assert -1000 <= q.numerator <= 1000 or abs(q) <= 1000
        assert 1 <= q.denominator <= 1000
        from math import gcd
        assert gcd(abs(q.numerator), q.denominator) == 1
    with pytest.raises(ValueError):
        sample_rational(rng, 0)


def test_rank_plus_nullity_and_kernel_annihilates():
    rng = Rng(41)
    for _ in range(30):
        nr = rng.randint(1, 7)
        nc = rng.randint(1, 7)
        m = random_matrix(rng, nr, nc, bound=6)
        k = kernel_basis(m)
        assert m.rank() + k.dim == nc
        for v in k.basis_vectors():
            assert all(x == 0 for x in m.mul_vec(v))


def test_rank_matches_brute_force_minors():
    rng = Rng(42)
    for _ in range(15):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=4)
        assert m.rank() == brute_force_rank(m.data)


def test_rref_matches_plain_fraction_reference():
    rng = Rng(43)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8), bound=9)
        got_rows, got_piv = m.rref()
        want_rows, want_piv = fraction_rref_reference(m.data)
        assert got_piv == want_piv
        assert got_rows == want_rows


def test_bareiss_and_modular_rank_agree_up_to_60():
    rng = Rng(44)
    for trial in range(100):
        nr = rng.randint(1, 60)
        nc = rng.randint(1, 60)
        # integer-heavy matrices of low rank stress the elimination more
        m = random_matrix(rng, nr, nc, bound=20)
        assert m.rank() == rank_modular(m)


def test_bareiss_on_deliberately_rank_deficient_matrices():
    """Low-rank products stress the column-skip path of the fraction-free
    elimination, where exact divisibility is the subtle claim."""
    rng = Rng(48)
    for _ in range(40):
        m_rows = rng.randint(2, 8)
        n_cols = rng.randint(2, 8)
        inner = rng.randint(1, min(m_rows, n_cols))
        left = random_matrix(rng, m_rows, inner, bound=12)
        right = random_matrix(rng, inner, n_cols, bound=12)
        prod = Matrix([[sum((a * b for a, b in zip(row, right.column(j))),
                            Fraction(0))
                        for j in range(n_cols)] for row in left.data])
        assert prod.rank() <= inner
        got_rows, got_piv = prod.rref()
        want_rows, want_piv = fraction_rref_reference(prod.data)
        assert (got_rows, got_piv) == (want_rows, want_piv)
        assert prod.rank() == rank_modular(prod)


def test_subspace_equality_invariant_under_basis_change():
    rng = Rng(45)
    for _ in range(20):
        amb = rng.randint(2, 6)
        k = rng.randint(1, amb)
        s = Subspace.from_vectors(
            amb, [[sample_rational(rng, 5) for _ in range(amb)] for _ in range(k)])
        if s.dim == 0:
            continue
        # random invertible recombination of the basis
        while True:
            mix = [[sample_rational(rng, 3) for _ in range(s.dim)] for _ in range(s.dim)]
            if Matrix(mix).rank() == s.dim:
                break
        basis = s.basis_vectors()
        recombined = []
        for row in mix:
            v = [Fraction(0)] * amb
            for c, b in zip(row, basis):
                v = [x + c * y for x, y in zip(v, b)]
            recombined.append(v)
        assert Subspace.from_vectors(amb, recombined) == s


def test_subspace_equality_is_equivalence():
    a = Subspace.from_vectors(3, [[1, 2, 3], [0, 1, 1]])
    b = Subspace.from_vectors(3, [[1, 3, 4], [2, 5, 7]])
    c = Subspace.from_vectors(3, [[1, 2, 3]])
    assert a == a
    assert (a == b) == (b == a)
    assert a == b
    assert a != c


def test_sum_intersect_dimension_formula():
    rng = Rng(46)
    for _ in range(20):
        amb = rng.randint(2, 6)
        a = Subspace.from_vectors(
            amb, [[sample_rational(rng, 4) for _ in range(amb)]
                  for _ in range(rng.randint(1, amb))])
        b = Subspace.from_vectors(
            amb, [[sample_rational(rng, 4) for _ in range(amb)]
                  for _ in range(rng.randint(1, amb))])
        total = a.sum(b)
        meet = a.intersect(b)
        assert total.dim + meet.dim == a.dim + b.dim
        assert a.contains(meet) and b.contains(meet)
        assert total.contains(a) and total.contains(b)


def test_random_solution_solves_or_reports_none():
    rng = Rng(47)
    for _ in range(20):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 6)
        m = random_matrix(rng, nr, nc, bound=5)
        rhs = [sample_rational(rng, 5) for _ in range(nr)]
        x = random_solution(m, rhs, rng)
        if x is None:
            assert m.solve(rhs) is None
        else:
            assert m.mul_vec(x) == [Fraction(r) for r in rhs]


def test_fraction_formatting_round_trip():
    assert format_fraction(Fraction(3, 1)) == "3/1"
    assert format_fraction(Fraction(-5, 7)) == "-5/7"
    assert parse_fraction("3/1") == 3
    assert parse_fraction("-5/7") == Fraction(-5, 7)


@given(st.lists(st.lists(st.fractions(max_denominator=50), min_size=3, max_size=3),
                min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_kernel_property_hypothesis(rows):
    m = Matrix(rows)
    k = kernel_basis(m)
    assert m.rank() + k.dim == 3
    for v in k.basis_vectors():
        assert all(x == 0 for x in m.mul_vec(v))
