import random
from fractions import Fraction

import pytest

from drinfeldkit.fields import GF, DomainError
from drinfeldkit.polys import Poly, enumerate_monic_irreducibles
from drinfeldkit.tree import (
    DepthError,
    EdgeNF,
    Gamma0,
    VertexNF,
    act,
    edge_normal_form,
    gamma0_equivalent,
    mat_mul,
    matrix,
    quotient_graph,
    stabilizer,
    vertex_normal_form,
)
from conftest import P


def rand_poly(F, d, rng):
    return Poly(F, [rng.randrange(F.order) for _ in range(d + 1)])


def rand_integral(F, rng, iwahori=False, m=2):
    """Polynomial matrix whose class lies in GL_2(O_inf) (or the Iwahori subgroup)."""
    while True:
        a, b, c, d = (rand_poly(F, m, rng) for _ in range(4))
        if iwahori and not c.is_zero() and c.deg >= m:
            continue
        D = a * d - b * c
        if not D.is_zero() and D.deg == 2 * m:
            return (a, b, c, d)


def rand_vertex(F, rng):
    k = rng.randrange(-2, 6)
    u = tuple((e, c) for e in range(min(k, 4)) if (c := rng.randrange(F.order)))
    return VertexNF(k, u, F)


def rand_edge(F, rng):
    v = rand_vertex(F, rng)
    return EdgeNF(rng.choice(["+", "iota"]), v.k, v.u, F)


def rand_gamma(F, n, rng, steps=4):
    g = matrix(F, 1, 0, 0, 1)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:
            h = (Poly.const(F, 1), rand_poly(F, 2, rng), Poly(F), Poly.const(F, 1))
        elif kind == 1:
            h = (Poly.const(F, 1), Poly(F), n * rand_poly(F, 1, rng), Poly.const(F, 1))
        else:
            h = matrix(F, rng.randrange(1, F.order), 0, 0, 1)
        g = mat_mul(g, h)
    return g


def test_identity_vertex():
    F = GF(2)
    assert vertex_normal_form(matrix(F, 1, 0, 0, 1)) == VertexNF(0, (), F)


def test_figure_edge_is_normal():
    F = GF(2)
    for u in F.elements():
        e = EdgeNF("+", 3, ((1, 1),) + (((2, u),) if u else ()), F)
        assert edge_normal_form(e.matrix()) == e
    s_inf = EdgeNF("+", 1, (), F)
    assert edge_normal_form(s_inf.matrix()) == s_inf


@pytest.mark.parametrize("q", [2, 3])
def test_vertex_coset_invariance(q):
    F = GF(q)
    rng = random.Random(q)
    for _ in range(100):
        v = rand_vertex(F, rng)
        g = v.matrix()
        h = rand_integral(F, rng)
        lam = Poly.const(F, rng.randrange(1, q)) * Poly.T(F, rng.randrange(3))
        gh = tuple(x * lam for x in mat_mul(g, h))
        assert vertex_normal_form(gh) == v


@pytest.mark.parametrize("q", [2, 3])
def test_edge_coset_invariance_and_reverse(q):
    F = GF(q)
    rng = random.Random(10 + q)
    for _ in range(100):
        e = rand_edge(F, rng)
        h = rand_integral(F, rng, iwahori=True)
        assert edge_normal_form(mat_mul(e.matrix(), h)) == e
        assert e.reverse().reverse() == e
        assert e.reverse().origin() == e.terminus()
        assert e.terminus() in e.origin().neighbors()


def test_singular_matrix_rejected():
    F = GF(2)
    with pytest.raises(DomainError):
        vertex_normal_form(matrix(F, 1, 1, 1, 1))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_neighbors(q):
    from conftest import field_for

    F = field_for(q)
    rng = random.Random(q)
    std = VertexNF(0, (), F)
    nb = std.neighbors()
    assert nb[-1] == VertexNF(-1, (), F)
    assert {(w.k, w.u) for w in nb[:-1]} == {(1, ((0, c),) if c else ()) for c in F.elements()}
    for _ in range(50):
        v = rand_vertex(F, rng)
        ns = v.neighbors()
        assert len(set(ns)) == q + 1
        for w in ns:
            assert v in w.neighbors()


def test_a_inf_adjacent_to_s_inf():
    F = GF(2)
    s_inf = EdgeNF("+", 1, (), F)
    a_inf = EdgeNF("+", 2, ((1, 1),), F)
    assert a_inf.origin() in s_inf.origin().neighbors()


@pytest.mark.parametrize("q", [2, 3])
def test_action_is_a_group_action(q):
    F = GF(q)
    rng = random.Random(q + 20)
    n = Poly.T(F)
    for _ in range(100):
        e = rand_edge(F, rng)
        g1, g2 = rand_gamma(F, n, rng), rand_gamma(F, n, rng)
        assert act(mat_mul(g1, g2), e) == act(g1, act(g2, e))
        assert act(g1, e.reverse()) == act(g1, e).reverse()
    e = rand_edge(F, rng)
    assert act(matrix(F, 1, 0, 0, 1), e) == e
    with pytest.raises(DomainError):
        act(matrix(F, Poly.T(F), 0, 0, 1), e)


def test_figure_b_edges_inequivalent():
    F = GF(2)
    n = P(F, "T^3+T+1")
    b0 = EdgeNF("+", 3, ((1, 1),), F)
    b1 = EdgeNF("+", 3, ((1, 1), (2, 1)), F)
    assert gamma0_equivalent(b0, b1, n) is None
    assert gamma0_equivalent(b0, b0, n) is not None


@pytest.mark.parametrize("q", [2, 3])
def test_equivalence_witness_round_trip(q):
    F = GF(q)
    rng = random.Random(q + 30)
    n = enumerate_monic_irreducibles(F, 2)[0]
    G = Gamma0(n)
    for _ in range(30):
        e = rand_edge(F, rng)
        g0 = rand_gamma(F, n, rng)
        e2 = act(g0, e)
        w = G.equivalent(e, e2)
        assert w is not None and G.contains(w)
        assert act(w, e) == e2
        back = G.equivalent(e2, e)
        assert back is not None and act(back, e2) == e


def test_stabilizer_orders():
    F = GF(3)
    n = P(F, "T^3+2*T+1")
    rng = random.Random(4)
    for _ in range(30):
        s = stabilizer(rand_edge(F, rng), n)
        assert s % (F.order - 1) == 0
    G = quotient_graph(n)
    for r in G.rays:
        stabs = [G.edges[k].stab for k in r.edges]
        assert all(b == a * F.order for a, b in zip(stabs, stabs[1:]))


@pytest.mark.parametrize("q", [2, 3])
def test_deg3_prime_quotient_shape(q):
    F = GF(q)
    for n in enumerate_monic_irreducibles(F, 3)[:2]:
        G = quotient_graph(n)
        assert len(G.finite_vertices) == 4
        assert len(G.finite_edges) == q + 3
        assert G.cusps == 2
        assert G.genus == q


def test_level_T_is_a_line():
    F = GF(2)
    G = quotient_graph(Poly.T(F))
    assert G.genus == 0 and G.cusps == 2


@pytest.mark.parametrize("level", ["T^2", "T^3+T+1", "T^2+T"])
def test_unfolded_degree(level):
    F = GF(2)
    G = quotient_graph(P(F, level))
    for vk, vc in G.vertices.items():
        if vc.level < G.depth:
            assert G.unfolded_degree(vk) == F.order + 1


def test_edge_involution_pairs_classes():
    F = GF(3)
    G = quotient_graph(P(F, "T^2+1"))
    for k, ec in G.edges.items():
        rk = G.rev(k)
        assert rk in G.edges and rk != k
        assert G.edges[rk].origin == ec.terminus


def test_mu_is_rational():
    F = GF(2)
    G = quotient_graph(P(F, "T^3+T+1"))
    for k in G.edges:
        assert isinstance(G.mu(k), Fraction) and G.mu(k) > 0


def test_shallow_depth_raises():
    F = GF(2)
    with pytest.raises(DepthError):
        quotient_graph(P(F, "T^3+T+1"), depth=3)


def test_exports():
    F = GF(2)
    G = quotient_graph(P(F, "T^3+T+1"))
    j = G.to_json()
    assert j["genus"] == 2 and len(j["cusps"]) == 2
    dot = G.to_dot()
    assert dot.startswith("graph") or dot.startswith("digraph")
