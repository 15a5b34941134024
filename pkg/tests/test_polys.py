import itertools

import pytest
from hypothesis import given, settings, strategies as st
from sympy import divisors, mobius

from drinfeldkit.fields import GF, DomainError
from drinfeldkit.polys import (
    Poly,
    RationalFunc,
    ResidueRing,
    enumerate_monic_irreducibles,
    factor,
    is_irreducible,
    monic_polys,
    residue_field,
    residue_of,
)
from conftest import P, field_for


def necklace(q, d):
    return sum(mobius(d // e) * q ** e for e in divisors(d)) // d


def test_basic_examples():
    F = GF(2)
    T = Poly.T(F)
    assert P(F, "T^2+T").gcd(T) == T
    assert P(F, "T^3+T+1") % T == Poly.const(F, 1)
    assert P(F, "T^3+T+1").abs() == 8


@pytest.mark.parametrize("q,d", [(q, d) for q in (2, 3, 4, 5) for d in (1, 2, 3, 4) if q ** d <= 256])
def test_irreducible_counts(q, d):
    F = field_for(q)
    irr = enumerate_monic_irreducibles(F, d)
    assert len(irr) == necklace(q, d)
    assert all(p.is_monic() and p.deg == d for p in irr)


def test_irreducible_lists_q2():
    F = GF(2)
    names = [[p.format() for p in enumerate_monic_irreducibles(F, d)] for d in (1, 2, 3)]
    assert names == [["T", "T+1"], ["T^2+T+1"], ["T^3+T+1", "T^3+T^2+1"]]


def test_irreducibility_brute_force_q3_deg3():
    F = GF(3)
    lin = list(monic_polys(F, 1))
    quad = list(monic_polys(F, 2))
    reducible = {a * b for a in lin for b in quad}
    for m in monic_polys(F, 3):
        assert is_irreducible(m) == (m not in reducible)


polys2 = st.lists(st.integers(0, 1), min_size=0, max_size=8).map(lambda c: Poly(GF(2), c))
polys3 = st.lists(st.integers(0, 2), min_size=0, max_size=6).map(lambda c: Poly(GF(3), c))


@settings(max_examples=80, deadline=None)
@given(st.one_of(st.tuples(polys2, polys2), st.tuples(polys3, polys3)))
def test_division_and_xgcd(pair):
    a, b = pair
    if b.is_zero():
        return
    qt, r = divmod(a, b)
    assert qt * b + r == a
    assert r.is_zero() or r.deg < b.deg
    g, s, t = a.xgcd(b)
    assert s * a + t * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys3)
def test_factor_reconstructs(a):
    if a.is_zero() or a.deg < 1:
        return
    prod = Poly.const(a.F, a.lc())
    for p, e in factor(a):
        assert is_irreducible(p) and p.is_monic()
        prod = prod * p ** e
    assert prod == a


def test_parse_with_extension_coefficients():
    F = GF(2, 2)
    a = P(F, "(z)*T^2+(z+1)")
    assert a.deg == 2 and a.lc() == F.parse("z")
    assert P(F, a.format()) == a


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        P(GF(2), "T^^2")


def test_rational_functions():
    F = GF(3)
    x = RationalFunc(P(F, "T^2-1"), P(F, "T+1"))
    assert x == RationalFunc.from_poly(P(F, "T-1"))
    y = RationalFunc(Poly.const(F, 1), P(F, "T"))
    assert (x * y.inverse()) * y == x
    assert (x + y) - y == x
    with pytest.raises(DomainError):
        RationalFunc(Poly.const(F, 1), Poly(F, ()))


def test_residue_ring_units():
    F = GF(2)
    R = ResidueRing(P(F, "T^2+T"))
    units = R.units()
    assert len(units) == R.unit_count() == 1
    for u in units:
        assert (R.inverse(u) * u) % R.n == Poly.const(F, 1)
    with pytest.raises(DomainError):
        R.inverse(Poly.T(F))


def test_residue_field_is_a_field():
    F = GF(3)
    p = P(F, "T^2+1")
    K = residue_field(p)
    assert K.order == 9
    a, b = P(F, "T+2"), P(F, "2*T+1")
    assert K.mul(residue_of(a, p), residue_of(b, p)) == residue_of(a * b, p)


def test_frobenius_on_polys():
    F = GF(2, 2)
    a = P(F, "(z)*T+1")
    assert a.frobenius(1) == a ** 4
    assert a.frobenius(2) == a ** 16


def test_monic_enumeration_size():
    F = GF(3)
    assert len(list(monic_polys(F, 2))) == 9
    assert len(set(itertools.chain(*(monic_polys(F, d) for d in range(3))))) == 13
