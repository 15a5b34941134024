import pytest
from hypothesis import given, settings, strategies as st

from drinfeldkit.fields import GF, DomainError, FiniteField, prime_field

FIELDS = [GF(2), GF(3), GF(5), GF(2, 2), GF(3, 2), GF(2, 3)]


def test_q4_generator_relation():
    F = GF(2, 2)
    z = F.parse("z")
    assert F.mul(z, z) == F.parse("z+1")
    assert F.format(F.mul(z, z)) == "1+z"


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        FiniteField(None, p=4)


def test_bad_modulus_rejected():
    with pytest.raises(ValueError):
        GF(2, 2, (1, 0, 1))  # z^2+1 = (z+1)^2


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_multiplicative_group_cyclic_order(F):
    for a in F.nonzero():
        assert F.pow(a, F.order - 1) == 1
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_frobenius_fixes_constants_and_is_additive(F):
    for a in F.elements():
        assert F.frob(a) == F.pow(a, F.q)
        for b in list(F.elements())[:5]:
            assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_format_parse_roundtrip(F):
    for a in F.elements():
        assert F.parse(F.format(a)) == a


def test_division_by_zero():
    with pytest.raises((DomainError, ZeroDivisionError)):
        GF(3).inv(0)


def test_tower_extension_and_embedding():
    F = GF(2, 2)
    K = F.extension(3)
    assert K.order == 64 and K.q == 4
    assert K.var == "z2"
    for c in F.elements():
        for d in F.elements():
            assert K.mul(K.embed(c, F), K.embed(d, F)) == K.embed(F.mul(c, d), F)


def test_minimal_polynomial_over_constants():
    F = GF(3)
    K = F.extension(2)
    for a in K.elements():
        mp = K.minimal_polynomial_over_fq(a)
        val = 0
        for c in reversed(mp):
            val = K.add(K.mul(val, a), K.embed(c, F))
        assert val == 0
        assert len(mp) - 1 in (1, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


def test_elem_wrapper_arithmetic():
    F = GF(5)
    x = F(3)
    assert (x * x).v == 4
    assert (x / x).v == 1
    assert (x ** 4).v == 1
    assert prime_field(5) is F
