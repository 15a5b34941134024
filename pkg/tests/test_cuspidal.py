from math import gcd

import pytest

from drinfeldkit.cuspidal import (
    cuspidal_order_rank2,
    cuspidal_order_rank_r,
    eisenstein_index,
    hecke_algebra,
    quotient_invariants,
)
from drinfeldkit.fields import GF, DomainError
from drinfeldkit.harmonic import HarmonicError, harmonic_basis, hecke_matrix
from drinfeldkit.linalg import row_hnf
from drinfeldkit.polys import enumerate_monic_irreducibles, monic_polys, primes_up_to
from drinfeldkit.tree import quotient_graph
from conftest import P, field_for


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_rank2_orders(q):
    F = field_for(q)
    for p in enumerate_monic_irreducibles(F, 1):
        assert cuspidal_order_rank2(p) == 1
    for p in enumerate_monic_irreducibles(F, 3)[:3]:
        assert cuspidal_order_rank2(p) == q * q + q + 1
    p4 = enumerate_monic_irreducibles(F, 4)[0] if q < 5 else P(F, "T^4+2")
    assert cuspidal_order_rank2(p4) == q * q + 1


@pytest.mark.parametrize("q", [2, 3])
def test_rank_r_specializes(q):
    F = GF(q)
    primes = primes_up_to(F, 6)[:20]
    assert len(primes) == 20
    for p in primes:
        assert cuspidal_order_rank_r(p, 2) == cuspidal_order_rank2(p)
        P_ = p.abs()
        assert cuspidal_order_rank_r(p, 3) == (P_ ** 2 - 1) // gcd(q ** 3 - 1, P_ - 1)
    for p in enumerate_monic_irreducibles(F, 1):
        assert cuspidal_order_rank_r(p, 3) == q + 1
    for p in enumerate_monic_irreducibles(F, 2):
        assert cuspidal_order_rank_r(p, 3) == (q ** 4 - 1) // gcd(q ** 3 - 1, q ** 2 - 1)


def test_order_errors():
    F = GF(2)
    with pytest.raises(DomainError):
        cuspidal_order_rank2(P(F, "T^2"))
    with pytest.raises(DomainError):
        cuspidal_order_rank_r(P(F, "T"), 1)


def test_quotient_invariants():
    assert quotient_invariants([[2, 0], [0, 6]], [[1, 0], [0, 1]]) == [2, 6]
    assert quotient_invariants([[1, 1], [0, 3]], [[1, 0], [0, 1]]) == [3]


@pytest.mark.parametrize("level", ["T^3+T+1", "T^3+T^2+1"])
def test_index_q2_deg3(level):
    F = GF(2)
    n = P(F, level)
    r = eisenstein_index(n)
    assert r.odd_part() == 7
    assert r.predicted_order == 7
    assert all(r.matches.values())
    assert r.to_json()["predicted_cuspidal_order"] == 7


def test_index_q3_deg3():
    F = GF(3)
    n = enumerate_monic_irreducibles(F, 3)[0]
    r = eisenstein_index(n)
    assert r.matches and all(r.matches.values())
    prime_to_3 = r.index
    while prime_to_3 % 3 == 0:
        prime_to_3 //= 3
    assert prime_to_3 == 13


def test_index_level_T_is_degenerate():
    F = GF(2)
    with pytest.raises(HarmonicError):
        eisenstein_index(P(F, "T"))


def test_lattice_stable_one_degree_further():
    F = GF(2)
    n = P(F, "T^3+T+1")
    G = quotient_graph(n)
    basis = harmonic_basis(G)
    H = hecke_algebra(n, basis=basis, graph=G)
    rows = list(H.basis)
    for m in monic_polys(F, H.B + 1):
        M = hecke_matrix(m, basis).matrix
        rows.append([x for r in M for x in r])
    assert row_hnf(rows) == H.basis


def test_recursive_and_direct_lattices_agree():
    F = GF(2)
    n = P(F, "T^3+T^2+1")
    assert hecke_algebra(n).basis == hecke_algebra(n, direct=True).basis


def test_composite_level_reports_no_prediction():
    F = GF(2)
    r = eisenstein_index(P(F, "T^4"))
    assert r.predicted_order is None and r.index >= 1
