"""The Bruhat-Tits tree of PGL_2(F_inf) and its quotients by Gamma_0(n).

Vertices are classes g F_inf^x GL_2(O_inf) with normal form (pi^k, u; 0, 1), u taken
mod pi^k O_inf.  Oriented edges are classes g F_inf^x I_inf (Iwahori); the edge of g
runs from [g] to [g diag(1, pi)].  Edges of the form (pi^k, u; 0, 1) make up Ed^+
and every other edge is (pi^k, u; 0, 1) iota with iota = (0, 1; pi, 0).

Matrices are 2x2 tuples (a, b, c, d) of polynomials in T; rescaling by powers of T
does not change a class, so pi = 1/T never has to appear in a matrix.

Gamma_0(n)-classes are computed through the quotient GL_2(A)\\T, which is a half-line
v_0, v_1, ... with v_n = [diag(T^n, 1)]: an edge e is moved onto the standard edge
v_m -> v_(m+1) (or its reverse) by some gamma in GL_2(A), and the Gamma_0(n)-class of e
is then the orbit of the bottom row of gamma^-1 in P^1(A/n) under the (finite)
stabilizer of that standard edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .fields import DomainError, FiniteField
from .laurent import expand_at_infinity
from .polys import Poly, RationalFunc, factor

__all__ = [
    "VertexNF",
    "EdgeNF",
    "DepthError",
    "Gamma0",
    "QuotientGraph",
    "vertex_normal_form",
    "edge_normal_form",
    "reverse",
    "origin",
    "terminus",
    "neighbors",
    "edges_from",
    "act",
    "translate",
    "reduce_vertex",
    "reduce_edge",
    "gamma0_equivalent",
    "stabilizer",
    "quotient_graph",
    "mat_mul",
    "mat_det",
    "mat_inv",
]


class DepthError(RuntimeError):
    """Raised when a truncation depth is too small to certify a result."""

    def __init__(self, message, snapshot=None):
        super().__init__(message)
        self.snapshot = snapshot


# -- 2x2 polynomial matrices -------------------------------------------------------------


def _P(F, x):
    return x if isinstance(x, Poly) else Poly.const(F, F.from_int(x) if x < 0 else x % F.order)


def matrix(F, a, b, c, d):
    """A 2x2 matrix over A; integer entries are read as F_q codes (negatives via from_int)."""
    return (_P(F, a), _P(F, b), _P(F, c), _P(F, d))


def mat_mul(X, Y):
    a, b, c, d = X
    e, f, g, h = Y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_det(X) -> Poly:
    a, b, c, d = X
    return a * d - b * c


def mat_inv(X):
    """Inverse of X in GL_2(A) (det must be a nonzero constant)."""
    D = mat_det(X)
    if D.is_zero() or D.deg != 0:
        raise DomainError(f"matrix is not in GL_2(A): det = {D.format()}")
    F = D.F
    s = F.inv(D.c[0])
    a, b, c, d = X
    return (d.scale(s), (-b).scale(s), (-c).scale(s), a.scale(s))


def _identity(F):
    return matrix(F, 1, 0, 0, 1)


def format_matrix(X) -> str:
    a, b, c, d = X
    return f"({a.format()}, {b.format()}; {c.format()}, {d.format()})"


# -- normal forms ----------------------------------------------------------------------


def _truncate(u, k):
    return tuple((e, c) for e, c in u if e < k)


def _format_pi(F, u) -> str:
    if not u:
        return "0"
    parts = []
    for e, c in u:
        mon = "1" if e == 0 else ("pi" if e == 1 else f"pi^{e}")
        cs = F.format(c)
        if "+" in cs:
            cs = f"({cs})"
        if e == 0:
            parts.append(cs)
        else:
            parts.append(mon if cs == "1" else f"{cs}*{mon}")
    return "+".join(parts)


@dataclass(frozen=True)
class VertexNF:
    """Vertex (pi^k, u; 0, 1); ``u`` is ((exponent, code), ...) with exponents < k."""

    k: int
    u: tuple = ()
    F: FiniteField | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_matrix(cls, g) -> "VertexNF":
        a, b, c, d = g
        D = a * d - b * c
        if D.is_zero():
            raise DomainError("singular matrix has no vertex")
        if c.deg > d.deg:
            a, b, c, d = b, a, d, c
        k = 2 * d.deg - D.deg
        if b.is_zero() or d.deg - b.deg >= k:
            u = ()
        else:
            s = expand_at_infinity(RationalFunc(b, d), k)
            u = tuple(s.terms())
        return cls(k, u, d.F)

    def matrix(self):
        """Polynomial representative (T^(m-k), sum u_e T^(m-e); 0, T^m), m = max(k, 0)."""
        F = self.F
        m = max(self.k, 0)
        top = [0] * (m - min((e for e, _ in self.u), default=m) + 1)
        for e, c in self.u:
            top[m - e] = c
        return (Poly.T(F, m - self.k), Poly(F, top), Poly(F), Poly.T(F, m))

    def neighbors(self) -> list["VertexNF"]:
        """q vertices (k+1, u + c pi^k) followed by (k-1, u mod pi^(k-1))."""
        out = []
        for c in self.F.elements():
            u = self.u + ((self.k, c),) if c else self.u
            out.append(VertexNF(self.k + 1, u, self.F))
        out.append(VertexNF(self.k - 1, _truncate(self.u, self.k - 1), self.F))
        return out

    def format(self) -> str:
        return f"(pi^{self.k}, {_format_pi(self.F, self.u)}; 0, 1)"

    def to_json(self):
        return {"k": self.k, "u": [[e, self.F.format(c)] for e, c in self.u]}


@dataclass(frozen=True)
class EdgeNF:
    """Oriented edge: side '+' is (pi^k, u; 0, 1) itself, side 'iota' is that times iota."""

    side: str
    k: int
    u: tuple = ()
    F: FiniteField | None = field(default=None, compare=False, repr=False)

    def plus(self) -> VertexNF:
        return VertexNF(self.k, self.u, self.F)

    def _lower(self) -> VertexNF:
        return VertexNF(self.k - 1, _truncate(self.u, self.k - 1), self.F)

    def origin(self) -> VertexNF:
        return self.plus() if self.side == "+" else self._lower()

    def terminus(self) -> VertexNF:
        return self._lower() if self.side == "+" else self.plus()

    def reverse(self) -> "EdgeNF":
        return EdgeNF("iota" if self.side == "+" else "+", self.k, self.u, self.F)

    def matrix(self):
        M = self.plus().matrix()
        if self.side == "+":
            return M
        a, b, c, d = M
        # M (0, T; 1, 0) is M iota up to the scalar T
        return (b, a * Poly.T(self.F), d, c * Poly.T(self.F))

    @classmethod
    def from_matrix(cls, g) -> "EdgeNF":
        o = VertexNF.from_matrix(g)
        a, b, c, d = g
        T = Poly.T(a.F)
        t = VertexNF.from_matrix((a * T, b, c * T, d))
        if t.k == o.k - 1:
            return cls("+", o.k, o.u, o.F)
        return cls("iota", t.k, t.u, t.F)

    def format(self) -> str:
        body = self.plus().format()
        return body if self.side == "+" else body + "*iota"

    def to_json(self):
        return {"side": self.side, "k": self.k, "u": [[e, self.F.format(c)] for e, c in self.u]}


def vertex_normal_form(g) -> VertexNF:
    return VertexNF.from_matrix(g)


def edge_normal_form(g) -> EdgeNF:
    return EdgeNF.from_matrix(g)


def reverse(e: EdgeNF) -> EdgeNF:
    return e.reverse()


def origin(e: EdgeNF) -> VertexNF:
    return e.origin()


def terminus(e: EdgeNF) -> VertexNF:
    return e.terminus()


def neighbors(v: VertexNF) -> list[VertexNF]:
    return v.neighbors()


def edges_from(v: VertexNF) -> list[EdgeNF]:
    """The q+1 oriented edges with origin v, in the order of ``neighbors``."""
    out = [EdgeNF("iota", w.k, w.u, v.F) for w in v.neighbors()[:-1]]
    out.append(EdgeNF("+", v.k, v.u, v.F))
    return out


def translate(g, e: EdgeNF) -> EdgeNF:
    """g e for any invertible g over A (no determinant condition)."""
    return EdgeNF.from_matrix(mat_mul(g, e.matrix()))


def act(gamma, e: EdgeNF) -> EdgeNF:
    """gamma e for gamma in GL_2(A)."""
    D = mat_det(gamma)
    if D.is_zero() or D.deg != 0:
        raise DomainError(f"det {D.format()} is not in F_q^x")
    return translate(gamma, e)


# -- reduction to the standard half-line --------------------------------------------------


def _row_deg(x, y):
    return max(x.deg, y.deg)


def reduce_vertex(X):
    """(gamma, n) with gamma in GL_2(A) and gamma X in the class of v_n = diag(T^n, 1).

    Row-reduces X over A until its leading-coefficient matrix is invertible; then
    X' = diag(T^d1, T^d2) L with L in GL_2(O_inf)."""
    F = X[0].F
    a, b, c, d = X
    g = list(_identity(F))
    while True:
        d1, d2 = _row_deg(a, b), _row_deg(c, d)
        l1, l2 = (a[d1], b[d1]), (c[d2], d[d2])
        if F.sub(F.mul(l1[0], l2[1]), F.mul(l1[1], l2[0])):
            break
        j = 0 if l2[0] else 1
        if d1 >= d2:
            lam = Poly(F, (0,) * (d1 - d2) + (F.div(l1[j], l2[j]),))
            a, b = a - lam * c, b - lam * d
            g[0], g[1] = g[0] - lam * g[2], g[1] - lam * g[3]
        else:
            j = 0 if l1[0] else 1
            lam = Poly(F, (0,) * (d2 - d1) + (F.div(l2[j], l1[j]),))
            c, d = c - lam * a, d - lam * b
            g[2], g[3] = g[2] - lam * g[0], g[3] - lam * g[1]
    if d1 < d2:
        g = [g[2], g[3], g[0], g[1]]
        d1, d2 = d2, d1
    return tuple(g), d1 - d2


def reduce_edge(e: EdgeNF):
    """(gamma, m, sign): gamma e is the standard edge v_m -> v_(m+1) (sign +1) or its
    reverse (sign -1)."""
    F = e.F
    g, n = reduce_vertex(e.origin().matrix())
    t = VertexNF.from_matrix(mat_mul(g, e.terminus().matrix()))
    if n >= 1:
        if t.k == -n - 1:
            return g, n, 1
        c = dict(t.u).get(-n, 0)
        h = matrix(F, 1, Poly(F, (0,) * n + (c,)), 0, 1)
        return mat_mul(mat_inv(h), g), n - 1, -1
    if t.k == -1:
        return g, 0, 1
    c = dict(t.u).get(0, 0)
    h = matrix(F, c, 1, 1, 0)
    return mat_mul(mat_inv(h), g), 0, 1


def standard_edge(F, m: int, sign: int) -> EdgeNF:
    e = EdgeNF("+", -m, (), F)
    return e if sign > 0 else e.reverse()


# -- Gamma_0(n): P^1(A/n) and stabilizer orbits -------------------------------------------


def _code(p: Poly) -> int:
    q = p.F.order
    v = 0
    for c in reversed(p.c):
        v = v * q + c
    return v


def _decode(F, v: int) -> Poly:
    q = F.order
    cs = []
    while v:
        v, c = divmod(v, q)
        cs.append(c)
    return Poly(F, cs)


def _inv_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = a.xgcd(m)
    if g.deg != 0:
        raise DomainError(f"{a.format()} is not invertible mod {m.format()}")
    return (s.scale(a.F.inv(g.c[0]))) % m


class Gamma0:
    """Gamma_0(n) = {(a, b; c, d) in GL_2(A) : n | c} and its action on the tree."""

    def __init__(self, n: Poly):
        if n.is_zero():
            raise DomainError("level must be nonzero")
        self.n = n.monic()
        self.F = n.F
        self.q = self.F.order
        self.deg = self.n.deg
        self.local = [p ** e for p, e in factor(self.n)] if self.deg > 0 else []
        self.primes = [p for p, _ in factor(self.n)] if self.deg > 0 else []
        self._orbit_cache = {}
        self._gen = next(
            c for c in self.F.nonzero() if all(self.F.pow(c, (self.q - 1) // r) != 1
                                               for r in _prime_factors(self.q - 1))
        ) if self.q > 2 else 1

    # -- P^1(A/n) --------------------------------------------------------------------
    def point(self, x1: Poly, x2: Poly) -> tuple:
        """Canonical form of (x1 : x2), componentwise over the prime-power factors of n."""
        out = []
        for p, M in zip(self.primes, self.local):
            a, b = x1 % M, x2 % M
            if not (a % p).is_zero():
                out.append((0, _code((b * _inv_mod(a, M)) % M)))
            elif not (b % p).is_zero():
                out.append((1, _code((a * _inv_mod(b, M)) % M)))
            else:
                raise DomainError("pair is not unimodular mod n")
        return tuple(out)

    def _lift(self, pt):
        """Per-factor (x1, x2) pairs for a canonical point."""
        out = []
        for (kind, v) in pt:
            r = _decode(self.F, v)
            one = Poly.const(self.F, 1)
            out.append((one, r) if kind == 0 else (r, one))
        return out

    def act_point(self, pt, s) -> tuple:
        """(x1 : x2) (s11, s12; s21, s22)."""
        a, b, c, d = s
        out = []
        for (p, M), (x1, x2) in zip(zip(self.primes, self.local), self._lift(pt)):
            y1 = (x1 * a + x2 * c) % M
            y2 = (x1 * b + x2 * d) % M
            if not (y1 % p).is_zero():
                out.append((0, _code((y2 * _inv_mod(y1, M)) % M)))
            else:
                out.append((1, _code((y1 * _inv_mod(y2, M)) % M)))
        return tuple(out)

    def x_of(self, gamma) -> tuple:
        """Bottom row of gamma^-1, as a point of P^1(A/n)."""
        gi = mat_inv(gamma)
        return self.point(gi[2], gi[3])

    @cached_property
    def points(self) -> list:
        per = []
        for p, M in zip(self.primes, self.local):
            size = self.q ** M.deg
            pts = [(0, v) for v in range(size)]
            pts += [(1, v) for v in range(size) if (_decode(self.F, v) % p).is_zero()]
            per.append(pts)
        out = [()]
        for pts in per:
            out = [o + (x,) for o in out for x in pts]
        return out

    # -- stabilizers of the standard half-line ------------------------------------------
    def _cap(self, m: int) -> int:
        return min(m, self.deg - 1)

    def _generators(self, kind):
        F, g = self.F, self._gen
        gens = [matrix(F, g, 0, 0, 1), matrix(F, 1, 0, 0, g)]
        if kind == "gl2":
            gens += [matrix(F, 1, 1, 0, 1), matrix(F, 0, 1, 1, 0)]
        else:
            gens += [matrix(F, 1, Poly.T(F, i), 0, 1) for i in range(kind + 1)]
        return gens

    def _orbits(self, kind):
        """(orbit id, orbit size) for every point; kind is 'gl2' or a capped degree."""
        if kind in self._orbit_cache:
            return self._orbit_cache[kind]
        parent = {p: p for p in self.points}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self._generators(kind):
            for p in self.points:
                a, b = find(p), find(self.act_point(p, s))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        size = {}
        for p in self.points:
            r = find(p)
            size[r] = size.get(r, 0) + 1
        table = {p: (find(p), size[find(p)]) for p in self.points}
        self._orbit_cache[kind] = table
        return table

    def edge_orbit(self, m: int, pt):
        return self._orbits(self._cap(m))[pt]

    def vertex_orbit(self, n: int, pt):
        return self._orbits("gl2" if n == 0 else self._cap(n))[pt]

    def edge_stab_order(self, m: int, pt) -> int:
        return (self.q - 1) ** 2 * self.q ** (m + 1) // self.edge_orbit(m, pt)[1]

    def vertex_stab_order(self, n: int, pt) -> int:
        if n == 0:
            order = (self.q ** 2 - 1) * (self.q ** 2 - self.q)
        else:
            order = (self.q - 1) ** 2 * self.q ** (n + 1)
        return order // self.vertex_orbit(n, pt)[1]

    # -- classes ---------------------------------------------------------------------
    def edge_key(self, e: EdgeNF):
        """((m, sign, orbit id), gamma) with gamma e standard."""
        g, m, sign = reduce_edge(e)
        pt = self.x_of(g)
        return (m, sign, self.edge_orbit(m, pt)[0]), g

    def vertex_key(self, v: VertexNF):
        g, n = reduce_vertex(v.matrix())
        pt = self.x_of(g)
        return (n, self.vertex_orbit(n, pt)[0]), g

    def _stab_elements(self, kind):
        F = self.F
        units = list(F.nonzero())
        if kind == "gl2":
            for a in F.elements():
                for b in F.elements():
                    for c in F.elements():
                        for d in F.elements():
                            if F.sub(F.mul(a, d), F.mul(b, c)):
                                yield matrix(F, a, b, c, d)
            return
        size = self.q ** (kind + 1) if kind >= 0 else 1
        for a in units:
            for d in units:
                for v in range(size):
                    yield matrix(F, a, _decode(F, v), 0, d)

    def _witness(self, g1, g2, kind):
        """gamma = g2^-1 s g1 in Gamma_0(n) with s in the stabilizer, or None."""
        x1, x2 = self.x_of(g1), self.x_of(g2)
        for s in self._stab_elements(kind):
            if self.act_point(x2, s) == x1:
                gamma = mat_mul(mat_mul(mat_inv(g2), s), g1)
                assert (gamma[2] % self.n).is_zero()
                return gamma
        return None

    def equivalent(self, e1: EdgeNF, e2: EdgeNF):
        (k1, g1), (k2, g2) = self.edge_key(e1), self.edge_key(e2)
        if k1 != k2:
            return None
        gamma = self._witness(g1, g2, self._cap(k1[0]))
        if gamma is None:
            raise AssertionError("equal class keys without a witness")
        return gamma

    def equivalent_vertices(self, v1: VertexNF, v2: VertexNF):
        (k1, g1), (k2, g2) = self.vertex_key(v1), self.vertex_key(v2)
        if k1 != k2:
            return None
        kind = "gl2" if k1[0] == 0 else self._cap(k1[0])
        return self._witness(g1, g2, kind)

    def edge_stabilizer(self, e: EdgeNF) -> int:
        g, m, _ = reduce_edge(e)
        return self.edge_stab_order(m, self.x_of(g))

    def contains(self, gamma) -> bool:
        D = mat_det(gamma)
        return not D.is_zero() and D.deg == 0 and (gamma[2] % self.n).is_zero()

    def cusp_of(self, gamma) -> tuple[Poly, Poly]:
        """The cusp gamma^-1 (infinity) = first column of gamma^-1, coprime entries."""
        gi = mat_inv(gamma)
        return gi[0], gi[2]


def _prime_factors(n: int):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def gamma0_equivalent(e1: EdgeNF, e2: EdgeNF, n: Poly):
    """gamma in Gamma_0(n) with gamma e1 = e2, or None."""
    return Gamma0(n).equivalent(e1, e2)


def stabilizer(e: EdgeNF, n: Poly) -> int:
    """#Stab_{Gamma_0(n)}(e)."""
    return Gamma0(n).edge_stabilizer(e)


# -- quotient graph ----------------------------------------------------------------------


@dataclass
class VertexClass:
    key: tuple
    rep: VertexNF
    level: int
    stab: int


@dataclass
class EdgeClass:
    key: tuple
    rep: EdgeNF
    origin: tuple
    terminus: tuple
    stab: int

    @property
    def level(self) -> int:
        return self.key[0]


@dataclass
class Ray:
    cusp: str
    base: tuple
    vertices: list
    edges: list  # oriented outward


@dataclass
class QuotientGraph:
    """Gamma_0(n)\\T truncated at half-line level L.

    Vertex keys are (n, orbit) and oriented edge keys (m, sign, orbit); the edge
    (m, +1, o) joins levels m and m+1 and (m, -1, o) is its reverse."""

    group: Gamma0
    depth: int
    vertices: dict
    edges: dict
    rays: list = field(default_factory=list)
    finite_vertices: list = field(default_factory=list)
    finite_edges: list = field(default_factory=list)

    @property
    def q(self):
        return self.group.q

    @staticmethod
    def rev(key):
        m, s, o = key
        return (m, -s, o)

    def positive_edges(self) -> list:
        """One oriented key per unoriented edge class: the one whose representative is in Ed^+."""
        out = []
        for k, ec in self.edges.items():
            if ec.rep.side == "+":
                out.append(k)
        return sorted(out)

    def out_edges(self, vkey) -> list:
        return [k for k, ec in self.edges.items() if ec.origin == vkey]

    def multiplicity(self, ekey) -> int:
        """Number of tree edges in the class of ekey leaving a fixed lift of its origin."""
        ec = self.edges[ekey]
        return self.vertices[ec.origin].stab // ec.stab

    def unfolded_degree(self, vkey) -> int:
        return sum(self.multiplicity(k) for k in self.out_edges(vkey))

    def mu(self, ekey) -> Fraction:
        return Fraction(self.q - 1, 2) * self.edges[ekey].stab

    @property
    def frontier(self) -> list:
        return sorted(k for k, v in self.vertices.items() if v.level == self.depth)

    def frontier_edges(self) -> list:
        return sorted(k for k, e in self.edges.items()
                      if max(self.vertices[e.origin].level, self.vertices[e.terminus].level)
                      == self.depth)

    @property
    def cusps(self) -> int:
        return len(self.rays)

    @property
    def genus(self) -> int:
        return len(self.finite_edges) - len(self.finite_vertices) + 1

    def ray_edge_set(self) -> set:
        out = set()
        for r in self.rays:
            for k in r.edges:
                out.add(k)
                out.add(self.rev(k))
        return out

    def edge_key(self, e: EdgeNF):
        return self.group.edge_key(e)[0]

    def value(self, values: dict, key) -> Fraction:
        """Value of a Gamma_0-invariant harmonic cochain on any edge class, extending
        along the cusps by the factor q per step outward beyond the truncation."""
        if key in values:
            return values[key]
        m, s, o = key
        top = self.depth - 1
        if m <= top:
            raise KeyError(key)
        base = values[(top, s, o)]
        return base * self.q ** (m - top)

    # -- export ------------------------------------------------------------------------
    def _vertex_names(self):
        names = {}
        order = sorted(self.vertices, key=lambda k: (k[0], k[1]))
        for i, k in enumerate(order):
            names[k] = f"v{i}"
        return names

    def to_json(self):
        names = self._vertex_names()
        rayset = self.ray_edge_set()
        return {
            "level": self.group.n.format(),
            "depth": self.depth,
            "vertices": [
                {
                    "name": names[k],
                    "level": v.level,
                    "stabilizer": v.stab,
                    "representative": v.rep.format(),
                    "finite": k in self.finite_vertices,
                }
                for k, v in sorted(self.vertices.items(), key=lambda kv: names[kv[0]])
            ],
            "edges": [
                {
                    "origin": names[self.edges[k].origin],
                    "terminus": names[self.edges[k].terminus],
                    "representative": self.edges[k].rep.format(),
                    "stabilizer": self.edges[k].stab,
                    "ray": k in rayset,
                }
                for k in self.positive_edges()
            ],
            "cusps": [
                {"cusp": r.cusp, "base": names[r.base], "length": len(r.edges)}
                for r in self.rays
            ],
            "genus": self.genus,
        }

    def to_dot(self, full: bool = False) -> str:
        """Finite part with one dashed edge per cusp (``full`` adds every truncated class)."""
        names = self._vertex_names()
        rayset = self.ray_edge_set()
        lines = ["digraph quotient {", "  rankdir=LR;"]
        shown = set(self.finite_vertices)
        edges = []
        for k in self.positive_edges():
            ec = self.edges[k]
            if k in rayset and not full:
                continue
            edges.append((k, ec, False))
        if not full:
            for r in self.rays:
                if r.edges:
                    k = r.edges[0]
                    pk = k if self.edges[k].rep.side == "+" else self.rev(k)
                    edges.append((pk, self.edges[pk], True))
        for k, ec, dashed in edges:
            shown.update([ec.origin, ec.terminus])
        cusp_at = {r.vertices[0]: r.cusp for r in self.rays if r.vertices}
        for k in sorted(shown, key=lambda x: names[x]):
            v = self.vertices[k]
            label = f"{names[k]}\\n|Stab|={v.stab}"
            if k in cusp_at and not full:
                label = f"cusp {cusp_at[k]}\\n{names[k]}"
            lines.append(f'  {names[k]} [label="{label}"];')
        for k, ec, dashed in edges:
            style = ", style=dashed" if (dashed or k in rayset) else ""
            lines.append(
                f'  {names[ec.origin]} -> {names[ec.terminus]} '
                f'[label="{ec.rep.plus().format()}\\n|Stab|={ec.stab}"{style}];'
            )
        lines.append("}")
        return "\n".join(lines)


def quotient_graph(n: Poly, depth: int | None = None) -> QuotientGraph:
    """Breadth-first construction of Gamma_0(n)\\T up to half-line level ``depth``.

    Tree edges are explored from the standard vertex and merged by Gamma_0(n)-class.
    The outward pattern must repeat on three consecutive levels below the depth
    (one class per cusp, stabilizers growing by q), otherwise DepthError."""
    G = Gamma0(n)
    F = G.F
    L = depth if depth is not None else max(G.deg, 0) + 3
    if L < 1:
        raise DepthError("depth must be at least 1")
    start = VertexNF(0, (), F)
    vkey, g0 = G.vertex_key(start)
    vertices = {vkey: VertexClass(vkey, start, 0, G.vertex_stab_order(0, G.x_of(g0)))}
    edges = {}
    queue = deque([vkey])
    while queue:
        key = queue.popleft()
        v = vertices[key].rep
        for e in edges_from(v):
            g, m, sign = reduce_edge(e)
            if (m + 1 if sign > 0 else m) > L or (m if sign > 0 else m + 1) > L:
                continue
            pt = G.x_of(g)
            ek = (m, sign, G.edge_orbit(m, pt)[0])
            w = e.terminus()
            wg, wn = reduce_vertex(w.matrix())
            wpt = G.x_of(wg)
            wk = (wn, G.vertex_orbit(wn, wpt)[0])
            if wk not in vertices:
                vertices[wk] = VertexClass(wk, w, wn, G.vertex_stab_order(wn, wpt))
                queue.append(wk)
            if ek not in edges:
                stab = G.edge_stab_order(m, pt)
                edges[ek] = EdgeClass(ek, e, key, wk, stab)
                rk = (m, -sign, ek[2])
                edges[rk] = EdgeClass(rk, e.reverse(), wk, key, stab)
    graph = QuotientGraph(G, L, vertices, edges)
    _check_rays(graph)
    _peel(graph)
    return graph


def _check_rays(graph: QuotientGraph):
    L, q = graph.depth, graph.q
    levels = {}
    for k, v in graph.vertices.items():
        levels.setdefault(v.level, []).append(k)
    snapshot = {lvl: len(ks) for lvl, ks in sorted(levels.items())}
    msg = f"cusp rays not stabilized at depth {L}; increase depth"
    if L < 3 or any(lvl not in levels for lvl in range(L - 3, L + 1)):
        raise DepthError(msg, snapshot)
    counts = {snapshot[lvl] for lvl in range(L - 3, L + 1)}
    if len(counts) != 1:
        raise DepthError(msg, snapshot)
    for lvl in range(L - 3, L + 1):
        for k in levels[lvl]:
            outs = graph.out_edges(k)
            want = 1 if lvl == L else 2
            if len(outs) != want:
                raise DepthError(msg, snapshot)
            for ek in outs:
                ec = graph.edges[ek]
                other = graph.vertices[ec.terminus]
                if other.level == lvl + 1 and other.stab != q * graph.vertices[k].stab:
                    raise DepthError(msg, snapshot)


def _peel(graph: QuotientGraph):
    """Strip cusp rays from the frontier in lockstep; what remains is the finite part."""
    adj = {k: [] for k in graph.vertices}
    for k in graph.positive_edges():
        ec = graph.edges[k]
        adj[ec.origin].append((ec.terminus, k))
        adj[ec.terminus].append((ec.origin, graph.rev(k)))
    alive = set(graph.vertices)
    rays = []
    for f in graph.frontier:
        rays.append({"cur": f, "verts": [], "edges": [], "active": True, "frontier": f})

    def live_links(v):
        return [(w, k) for w, k in adj[v] if w in alive]

    progress = True
    while progress:
        progress = False
        for r in rays:
            if not r["active"]:
                continue
            v = r["cur"]
            links = live_links(v)
            if v not in alive or len(links) != 1 or len(alive) <= 1:
                r["active"] = False
                continue
            w, k = links[0]
            alive.discard(v)
            r["verts"].append(v)
            # k is oriented v -> w; outward orientation is w -> v
            r["edges"].append(graph.rev(k))
            r["cur"] = w
            progress = True
    G = graph.group
    for r in rays:
        rep = graph.vertices[r["frontier"]].rep
        g, _ = reduce_vertex(rep.matrix())
        a, c = G.cusp_of(g)
        graph.rays.append(
            Ray(_cusp_label(a, c, G), r["cur"], list(reversed(r["verts"])),
                list(reversed(r["edges"])))
        )
    graph.finite_vertices = sorted(alive)
    graph.finite_edges = [
        k for k in graph.positive_edges()
        if graph.edges[k].origin in alive and graph.edges[k].terminus in alive
    ]


def _cusp_label(a: Poly, c: Poly, G: Gamma0) -> str:
    if c.is_zero():
        return "inf"
    if a.is_zero():
        return "0"
    g = a.gcd(c)
    a, c = a // g, c // g
    s = a.F.inv(c.lc())
    a, c = a.scale(s), c.scale(s)
    if c.deg == 0:
        return a.format()
    return f"{a.format()}/({c.format()})"
