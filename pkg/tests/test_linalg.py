from fractions import Fraction

from hypothesis import given, settings, strategies as st

from drinfeldkit.fields import GF
from drinfeldkit.linalg import (
    ff_nullspace,
    ff_rank,
    int_kernel,
    lattice_index,
    q_det,
    q_nullspace,
    q_rank,
    q_solve,
    row_hnf,
    smith_diagonal_oracle,
    smith_form,
)

small = st.integers(-6, 6)


def int_matrix(maxr=4, maxc=4):
    return st.integers(1, maxr).flatmap(
        lambda r: st.integers(1, maxc).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=120, deadline=None)
@given(int_matrix())
def test_smith_matches_determinantal_divisors(M):
    got = smith_form(M)
    want = [d for d in smith_diagonal_oracle(M) if d]
    assert got == want
    assert all(b % a == 0 for a, b in zip(got, got[1:]))


@settings(max_examples=80, deadline=None)
@given(int_matrix(3, 5))
def test_int_kernel_is_saturated_kernel(M):
    n = len(M[0])
    K = int_kernel(M, n)
    assert len(K) == n - q_rank(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    if K:
        # saturated: the kernel lattice has trivial elementary divisors
        assert all(d == 1 for d in smith_form(K))


@settings(max_examples=80, deadline=None)
@given(int_matrix(5, 4))
def test_hnf_same_lattice(M):
    H = row_hnf(M)
    assert len(H) == q_rank(M)
    if H:
        assert lattice_index(M, H) == 1
        assert lattice_index(H, M) == 1


def test_lattice_index_simple():
    assert lattice_index([[2, 0], [0, 3]], [[1, 0], [0, 1]]) == 6
    assert lattice_index([[2, 0]], [[1, 0], [0, 1]]) is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_rational_solve(A, x):
    b = [sum(Fraction(a) * v for a, v in zip(row, x)) for row in A]
    sol = q_solve(A, b)
    assert sol is not None
    assert [sum(a * v for a, v in zip(row, sol)) for row in A] == b
    if q_det(A) != 0:
        assert sol == [Fraction(v) for v in x]
    for v in q_nullspace(A, 3):
        assert all(sum(a * c for a, c in zip(row, v)) == 0 for row in A)


def test_finite_field_nullspace():
    K = GF(3)
    rows = [[1, 2, 0], [2, 1, 0]]
    assert ff_rank(K, rows) == 1
    ns = ff_nullspace(K, rows, 3)
    assert len(ns) == 2
    for v in ns:
        for r in rows:
            s = 0
            for a, b in zip(r, v):
                s = K.add(s, K.mul(a, b))
            assert s == 0
