"""Harmonic cochains on Gamma_0(n)\\T, Hecke operators and Fourier coefficients.

A cochain stores one exact rational per oriented edge class of a truncated quotient
graph.  Beyond the truncation the cusp rays are filled in by harmonicity: each step
outward multiplies the value by q, which is what ``QuotientGraph.value`` does.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import DomainError
from .linalg import int_kernel, q_nullspace, q_rank, q_solve
from .polys import Poly, factor, is_irreducible, monic_polys, primes_up_to
from .tree import DepthError, EdgeNF, QuotientGraph, VertexNF, edges_from, translate

__all__ = [
    "Cochain",
    "HeckeMatrix",
    "FourierTable",
    "harmonic_basis",
    "hecke_set",
    "hecke_apply",
    "hecke_matrix",
    "eisenstein_cochain",
    "fourier_coeffs",
    "fourier_synthesize",
    "check_first_coefficient",
    "petersson_pairing",
    "self_adjointness_report",
    "l_polynomial",
    "weil_bound_check",
    "nu",
]


class HarmonicError(DomainError):
    """A cochain fails a harmonicity or eigen condition."""


# -- cochains ------------------------------------------------------------------------------


class Cochain:
    """Gamma_0(n)-invariant function on oriented edges, alternating under reversal."""

    def __init__(self, graph: QuotientGraph, values: dict):
        self.graph = graph
        vals = {}
        for k in graph.positive_edges():
            v = Fraction(values.get(k, 0))
            vals[k] = v
            vals[graph.rev(k)] = -v
        self.values = vals

    @classmethod
    def from_vector(cls, graph, vec):
        return cls(graph, dict(zip(graph.positive_edges(), vec)))

    def vector(self) -> list:
        return [self.values[k] for k in self.graph.positive_edges()]

    def __call__(self, e) -> Fraction:
        key = self.graph.edge_key(e) if isinstance(e, EdgeNF) else e
        return self.graph.value(self.values, key)

    def __add__(self, o):
        return Cochain.from_vector(self.graph, [a + b for a, b in zip(self.vector(), o.vector())])

    def __sub__(self, o):
        return self + o.scale(-1)

    def scale(self, c):
        return Cochain.from_vector(self.graph, [c * a for a in self.vector()])

    def __eq__(self, o):
        return isinstance(o, Cochain) and self.vector() == o.vector()

    def is_zero(self) -> bool:
        return not any(self.vector())

    def tails(self) -> dict:
        """Per cusp: (value on the outermost stored outward edge, growth ratio)."""
        out = {}
        for r in self.graph.rays:
            k = r.edges[-1] if r.edges else None
            out[r.cusp] = (self.values[k] if k else Fraction(0), self.graph.q)
        return out

    def is_cuspidal(self) -> bool:
        return all(v == 0 for v, _ in self.tails().values())

    def is_harmonic(self) -> bool:
        """Weighted vertex sums vanish below the truncation level."""
        g = self.graph
        for vk, v in g.vertices.items():
            if v.level >= g.depth:
                continue
            if sum(g.multiplicity(k) * self.values[k] for k in g.out_edges(vk)) != 0:
                return False
        return True

    def verify_on_tree(self, radius: int = 3) -> bool:
        """Both axioms at every vertex of the tree ball of the given radius around v_0."""
        F = self.graph.group.F
        start = VertexNF(0, (), F)
        seen = {start}
        frontier = [start]
        for _ in range(radius):
            nxt = []
            for v in frontier:
                for w in v.neighbors():
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        for v in seen:
            total = Fraction(0)
            for e in edges_from(v):
                val = self(e)
                if val + self(e.reverse()) != 0:
                    return False
                total += val
            if total:
                return False
        return True

    def to_json(self):
        return {
            "edges": [
                {"edge": self.graph.edges[k].rep.format(), "value": str(self.values[k])}
                for k in self.graph.positive_edges()
            ],
            "cuspidal": self.is_cuspidal(),
        }

    def __repr__(self):
        return f"Cochain({[str(v) for v in self.vector()]})"


def _constraints(graph: QuotientGraph, cuspidal: bool):
    keys = graph.positive_edges()
    idx = {k: i for i, k in enumerate(keys)}
    rows = []
    for vk in sorted(graph.vertices):
        if graph.vertices[vk].level >= graph.depth:
            continue
        row = [0] * len(keys)
        for k in graph.out_edges(vk):
            if k in idx:
                row[idx[k]] += graph.multiplicity(k)
            else:
                row[idx[graph.rev(k)]] -= graph.multiplicity(k)
        rows.append(row)
    if cuspidal:
        for k in graph.frontier_edges():
            if k in idx:
                row = [0] * len(keys)
                row[idx[k]] = 1
                rows.append(row)
    return rows, keys


def harmonic_basis(graph: QuotientGraph, cuspidal: bool = True) -> list[Cochain]:
    """Saturated integer basis of the (cuspidal) harmonic cochains."""
    if not graph.rays and graph.group.deg > 0:
        raise DepthError("quotient graph has no stabilized cusp rays")
    rows, keys = _constraints(graph, cuspidal)
    return [Cochain.from_vector(graph, v) for v in int_kernel(rows, len(keys))]


def expected_rank(graph: QuotientGraph, cuspidal: bool) -> int:
    return graph.genus if cuspidal else graph.genus + graph.cusps - 1


# -- Hecke operators ---------------------------------------------------------------------


def _polys_below(F, d: int):
    for cs in itertools.product(F.elements(), repeat=d):
        yield Poly(F, cs)


def hecke_set(m: Poly, n: Poly) -> list:
    """S_m: (a, b; 0, d) with a, d monic, ad = m, gcd(a, n) = 1 and deg b < deg d."""
    if m.is_zero():
        raise DomainError("Hecke operator of the zero ideal")
    F = m.F
    m = m.monic()
    out = []
    for da in range(m.deg + 1):
        for a in monic_polys(F, da):
            d, r = divmod(m, a)
            if not r.is_zero() or a.gcd(n).deg > 0:
                continue
            for b in _polys_below(F, d.deg):
                out.append((a, b, Poly(F), d))
    return out


def hecke_edge_map(graph: QuotientGraph, m: Poly, workers: int | None = None) -> dict:
    """Positive edge key -> keys of g e for g in S_m (cached on the graph)."""
    cache = graph.__dict__.setdefault("_hecke_cache", {})
    tag = tuple(m.monic().coeffs())
    if tag in cache:
        return cache[tag]
    S = hecke_set(m, graph.group.n)

    def one(k):
        e = graph.edges[k].rep
        return [graph.edge_key(translate(s, e)) for s in S]

    keys = graph.positive_edges()
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            targets = list(ex.map(one, keys))
    else:
        targets = [one(k) for k in keys]
    cache[tag] = dict(zip(keys, targets))
    return cache[tag]


def hecke_apply(f: Cochain, m: Poly, workers: int | None = None) -> Cochain:
    """(f|T_m)(e) = sum over g in S_m of f(g e)."""
    g = f.graph
    emap = hecke_edge_map(g, m, workers)
    vals = {k: sum((g.value(f.values, t) for t in ts), Fraction(0)) for k, ts in emap.items()}
    return Cochain(g, vals)


def coordinates(f: Cochain, basis: list[Cochain]) -> list[Fraction]:
    A = [list(col) for col in zip(*(b.vector() for b in basis))]
    x = q_solve(A, f.vector()) if basis else []
    if x is None:
        raise HarmonicError("cochain is not in the span of the basis")
    return x


@dataclass
class HeckeMatrix:
    """Column j holds the coordinates of (basis_j)|T_m."""

    m: Poly
    matrix: list
    basis_size: int = 0
    cuspidal: bool = True

    def __post_init__(self):
        self.basis_size = len(self.matrix)

    def __mul__(self, o):
        n = self.basis_size
        M = [[sum(self.matrix[i][k] * o.matrix[k][j] for k in range(n)) for j in range(n)]
             for i in range(n)]
        return HeckeMatrix(self.m * o.m, M, cuspidal=self.cuspidal)

    def to_json(self):
        return {
            "ideal": self.m.format(),
            "matrix": [[int(x) for x in r] for r in self.matrix],
            "cuspidal": self.cuspidal,
        }


def hecke_matrix(m: Poly, basis: list[Cochain], cuspidal: bool = True,
                 workers: int | None = None) -> HeckeMatrix:
    cols = [coordinates(hecke_apply(b, m, workers), basis) for b in basis]
    n = len(basis)
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for r in M for x in r):
        raise HarmonicError("Hecke matrix is not integral on a saturated basis")
    return HeckeMatrix(m.monic(), [[int(x) for x in r] for r in M], cuspidal=cuspidal)


def identity_matrix(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# -- Eisenstein cochain -------------------------------------------------------------------


def _small_primes(F, avoid: Poly, count: int) -> list:
    out = []
    d = 1
    while len(out) < count:
        out += [p for p in primes_up_to(F, d) if p.deg == d and not (avoid % p).is_zero()]
        d += 1
    return out[:count]


def eisenstein_cochain(graph: QuotientGraph) -> Cochain:
    """The line of cochains with E|T_q = (|q|+1) E for the two smallest primes q not
    dividing the (prime) level, normalized as described in the module docs."""
    p = graph.group.n
    if not is_irreducible(p):
        raise DomainError(f"level {p.format()} is not prime")
    F = p.F
    q = graph.q
    full = harmonic_basis(graph, cuspidal=False)
    rows = []
    for ell in _small_primes(F, p, 2):
        M = hecke_matrix(ell, full, cuspidal=False).matrix
        lam = ell.abs() + 1
        rows += [[M[i][j] - lam * (i == j) for j in range(len(full))] for i in range(len(full))]
    null = q_nullspace(rows, len(full))
    if len(null) != 1:
        raise HarmonicError(f"Eisenstein eigenspace has dimension {len(null)}, expected 1")
    E = Cochain(graph, {})
    for c, b in zip(null[0], full):
        E = E + b.scale(c)
    if p.deg == 3:
        target = Fraction((q * q + q + 1) * (q - 1) ** 2)
        have = E(EdgeNF("+", 1, (), F))
    else:
        target = Fraction((q + 1) * (q - 1) ** 2, q)
        have = fourier_star(E, Poly.const(F, 1))
    if have == 0:
        raise HarmonicError("normalizing value vanishes")
    return E.scale(target / have)


# -- Fourier coefficients -----------------------------------------------------------------


def nu(m: Poly, u: dict, q: int, F) -> int:
    """-1 if m*u has a nonzero pi^1 term, q-1 otherwise; u maps exponent -> code."""
    c = 0
    for j, mj in enumerate(m.coeffs()):
        uj = u.get(j + 1, 0)
        if mj and uj:
            c = F.add(c, F.mul(mj, uj))
    return -1 if c else q - 1


def _level_edges(F, k: int):
    """Edges (pi^k, u; 0, 1) with u = sum_{0<i<k} u_i pi^i."""
    for cs in itertools.product(F.elements(), repeat=max(k - 1, 0)):
        u = tuple((i + 1, c) for i, c in enumerate(cs) if c)
        yield EdgeNF("+", k, u, F), dict(u)


def fourier_constant(f: Cochain, k: int) -> Fraction:
    F = f.graph.group.F
    vals = [f(e) for e, _ in _level_edges(F, k)]
    return Fraction(sum(vals), len(vals))


def fourier_star(f: Cochain, m: Poly, k: int | None = None) -> Fraction:
    """f*(m) from the level k = deg m + 2 (or any k >= deg m + 2)."""
    F = f.graph.group.F
    q = f.graph.q
    k = m.deg + 2 if k is None else k
    s = sum(f(e) * nu(m, u, q, F) for e, u in _level_edges(F, k))
    return Fraction(s) / (q ** (k - 1) * (q - 1) * Fraction(q) ** (-k + 2 + m.deg))


@dataclass
class FourierTable:
    q: int
    K: int
    constant: dict = field(default_factory=dict)   # k -> f0(pi^k)
    star: dict = field(default_factory=dict)       # monic m -> f*(m)

    def to_rows(self):
        rows = [("f0", f"pi^{k}", v) for k, v in sorted(self.constant.items())]
        rows += [("f*", m.format(), v)
                 for m, v in sorted(self.star.items(), key=lambda kv: kv[0].sort_key())]
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["object", "index", "exact", "float"])
        for obj, idx, v in self.to_rows():
            w.writerow([obj, idx, str(v), float(v)])
        return buf.getvalue()

    def to_json(self):
        return [{"object": o, "index": i, "exact": str(v), "float": float(v)}
                for o, i, v in self.to_rows()]


def fourier_synthesize(table: FourierTable, F, k: int, u: dict) -> Fraction:
    """Value of the expansion at (pi^k, u; 0, 1)."""
    q = table.q
    total = Fraction(table.constant[k])
    for m, c in table.star.items():
        if m.deg <= k - 2:
            total += Fraction(q) ** (-k + 2 + m.deg) * c * nu(m, u, q, F)
    return total


def fourier_coeffs(f: Cochain, K: int, check: bool = True) -> FourierTable:
    """f0(pi^k) for 1 <= k <= K and f*(m) for deg m <= K - 2, inverted exactly.

    With ``check`` the expansion is re-synthesized on every level and compared."""
    F = f.graph.group.F
    q = f.graph.q
    t = FourierTable(q, K)
    for k in range(1, K + 1):
        t.constant[k] = fourier_constant(f, k)
    for d in range(0, K - 1):
        for m in monic_polys(F, d):
            t.star[m] = fourier_star(f, m)
    if check:
        for k in range(1, K + 1):
            for e, u in _level_edges(F, k):
                if fourier_synthesize(t, F, k, u) != f(e):
                    raise HarmonicError(f"Fourier expansion inconsistent at {e.format()}")
    return t


def check_first_coefficient(f: Cochain, m: Poly) -> bool:
    """(f|T_m)*(1) = |m| f*(m)."""
    one = Poly.const(m.F, 1)
    return fourier_star(hecke_apply(f, m), one) == m.abs() * fourier_star(f, m.monic())


def eisenstein_star_formula(q: int, p: Poly, m: Poly) -> Fraction:
    """Closed form of E*(m) for a degree-3 prime p."""
    val = Fraction((q + 1) * (q - 1) ** 2, q * m.abs())
    for ell, e in factor(m):
        if ell == p:
            continue
        a = ell.abs()
        val *= Fraction(a ** (e + 1) - 1, a - 1)
    return val


# -- pairing ------------------------------------------------------------------------------


def petersson_pairing(f: Cochain, g: Cochain) -> Fraction:
    """sum over oriented edge classes of f(e) g(e) / mu(e); cuspidal inputs only."""
    if not (f.is_cuspidal() and g.is_cuspidal()):
        raise HarmonicError("pairing needs cuspidal cochains (finite support)")
    G = f.graph
    return sum((f.values[k] * g.values[k] / G.mu(k) for k in G.edges), Fraction(0))


@dataclass
class SelfAdjointnessReport:
    m: str
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ideal": self.m, "ok": self.ok, "failures": self.failures}


def self_adjointness_report(m: Poly, basis: list[Cochain]) -> SelfAdjointnessReport:
    images = [hecke_apply(b, m) for b in basis]
    bad = []
    for i, j in itertools.product(range(len(basis)), repeat=2):
        lhs = petersson_pairing(images[i], basis[j])
        rhs = petersson_pairing(basis[i], images[j])
        if lhs != rhs:
            bad.append([i, j, str(lhs), str(rhs)])
    return SelfAdjointnessReport(m.format(), not bad, bad)


def gram_matrix(basis: list[Cochain]) -> list:
    return [[petersson_pairing(a, b) for b in basis] for a in basis]


# -- L-polynomials ---------------------------------------------------------------------


@dataclass
class LPolynomial:
    """Finite part sum_m f*(m) q^(-deg m) U^(deg m), coefficients by degree."""

    q: int
    coeffs: list
    certified_through: int

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def functional_equation(self) -> dict:
        """Test c_(d-j) = lam * q^(-2j) c_j (from U -> 1/(q^2 U)); reported, not asserted."""
        d = self.degree
        if d < 0:
            return {"degree": d, "holds": True, "lambda": None}
        c = self.coeffs
        if c[0] == 0:
            return {"degree": d, "holds": False, "lambda": None}
        lam = c[d] / c[0]
        holds = all(c[d - j] == lam * Fraction(1, self.q ** (2 * j)) * c[j] for j in range(d + 1))
        return {"degree": d, "holds": holds, "lambda": str(lam)}

    def to_json(self):
        return {"coefficients": [str(c) for c in self.coeffs],
                "degree": self.degree,
                "certified_through": self.certified_through,
                "functional_equation": self.functional_equation()}


def l_polynomial(f: Cochain, max_degree: int | None = None) -> LPolynomial:
    """Coefficients through degree ``max_degree`` (default deg n - 1, which covers the
    expected bound deg n - 3 with two vanishing degrees to spare)."""
    if not f.is_cuspidal():
        raise HarmonicError("L-polynomial needs a cuspidal cochain")
    F = f.graph.group.F
    q = f.graph.q
    D = max(f.graph.group.deg - 1, 0) if max_degree is None else max_degree
    coeffs = []
    for d in range(D + 1):
        s = sum((fourier_star(f, m) for m in monic_polys(F, d)), Fraction(0))
        coeffs.append(s / q ** d)
    return LPolynomial(q, coeffs, D)


def weil_bound_check(T: HeckeMatrix, tol: float = 1e-9) -> dict:
    """Exact characteristic polynomial, numeric roots, |lambda| <= 2 sqrt|m|."""
    import numpy as np
    import sympy

    n = T.basis_size
    bound = 2 * math.sqrt(T.m.abs())
    if n == 0:
        return {"charpoly": [1], "eigenvalues": [], "bound": bound, "ok": True}
    x = sympy.symbols("x")
    cp = sympy.Matrix(T.matrix).charpoly(x)
    coeffs = [int(c) for c in cp.all_coeffs()]
    roots = np.roots(coeffs)
    ok = bool(all(abs(r) <= bound + tol for r in roots))
    return {"charpoly": coeffs, "eigenvalues": [complex(r) for r in roots],
            "bound": bound, "ok": ok}
