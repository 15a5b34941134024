import random

import pytest

from drinfeldkit.fields import GF, DomainError, FFElem
from drinfeldkit.polys import Poly
from drinfeldkit.skew import SkewPoly, kernel_dimension, kernel_over, tau_power_mod
from conftest import field_for


@pytest.mark.parametrize("q", [2, 3, 4])
def test_composition_example(q):
    F = field_for(q)
    T = Poly.T(F)
    one = Poly.const(F, 1)
    f = SkewPoly({0: T, 1: one})
    g = SkewPoly({0: one, 2: T})
    assert f.compose(g) == SkewPoly({0: T, 1: one, 2: T ** 2, 3: T ** q})


def rand_skew(K, n, rng):
    return SkewPoly({i: FFElem(K, rng.randrange(K.order)) for i in range(n + 1)}, zero=K.zero)


@pytest.mark.parametrize("q,m", [(2, 6), (3, 3), (4, 3)])
def test_composition_matches_evaluation(q, m):
    rng = random.Random(q)
    K = field_for(q).extension(m)
    for _ in range(5):
        f, g = rand_skew(K, 2, rng), rand_skew(K, 2, rng)
        h = f.compose(g)
        for v in rng.sample(range(K.order), 10):
            a = FFElem(K, v)
            assert h(a) == f(g(a))


@pytest.mark.parametrize("q,m", [(2, 5), (3, 3)])
def test_right_division(q, m):
    rng = random.Random(7)
    K = field_for(q).extension(m)
    for _ in range(10):
        f, g = rand_skew(K, 4, rng), rand_skew(K, 2, rng)
        if g.is_zero():
            continue
        h, r = f.right_divmod(g)
        assert h.compose(g) + r == f
        assert r.is_zero() or r.qdeg < g.qdeg


def test_right_division_by_zero():
    K = GF(2).extension(3)
    with pytest.raises(DomainError):
        SkewPoly.x(K.one).right_divmod(SkewPoly({}, zero=K.zero))


@pytest.mark.parametrize("q,m", [(2, 4), (3, 2), (2, 6)])
def test_kernel_against_brute_force(q, m):
    rng = random.Random(11)
    K = field_for(q).extension(m)
    for _ in range(4):
        f = rand_skew(K, 2, rng)
        if f.is_zero():
            continue
        roots = [a for a in K.elements() if f(FFElem(K, a)).v == 0]
        basis = kernel_over(f, K)
        assert q ** len(basis) == len(roots)
        assert all(f(FFElem(K, b)).v == 0 for b in basis)


def test_kernel_dimension_matches_kernel_over():
    rng = random.Random(3)
    Fq = GF(2)
    K = Fq.extension(3)
    for n in (1, 2, 3):
        for _ in range(3):
            f = rand_skew(K, 2, rng)
            if f.is_zero() or f[0].is_zero():
                continue
            L = K.extension(n)
            fl = SkewPoly({i: FFElem(L, L.embed(c.v, K)) for i, c in f.terms.items()}, zero=L.zero)
            assert kernel_dimension(f, 3 * n) == len(kernel_over(fl, L))


def test_tau_power_mod_reduces():
    K = GF(3).extension(2)
    f = SkewPoly({0: FFElem(K, 2), 1: FFElem(K, 5), 2: K.one}, zero=K.zero)
    r = tau_power_mod(f, 5)
    direct = SkewPoly.tau(K.one, 5).mod_right(f)
    assert r == direct


def test_height_and_separability():
    K = GF(2).extension(2)
    f = SkewPoly({2: K.one, 3: K.one}, zero=K.zero)
    assert f.height() == 2
    assert not f.is_separable()
