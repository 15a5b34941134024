"""Cuspidal divisor class orders and the index of the Eisenstein ideal."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from sympy import factorint

from .fields import DomainError
from .harmonic import (
    HarmonicError,
    eisenstein_cochain,
    fourier_constant,
    harmonic_basis,
    hecke_matrix,
)
from .linalg import q_solve, row_hnf, smith_form
from .polys import Poly, factor, is_irreducible, monic_polys
from .tree import quotient_graph

__all__ = [
    "cuspidal_order_rank2",
    "cuspidal_order_rank_r",
    "HeckeAlgebraLattice",
    "EisensteinIdealReport",
    "hecke_algebra",
    "eisenstein_index",
]


def _check_prime(p: Poly):
    if p.is_zero() or not is_irreducible(p):
        raise DomainError(f"{p.format()} is not prime")


def cuspidal_order_rank2(p: Poly) -> int:
    """(|p| - 1) / gcd(q^2 - 1, |p| - 1)."""
    return cuspidal_order_rank_r(p, 2)


def cuspidal_order_rank_r(p: Poly, r: int) -> int:
    """(|p|^(r-1) - 1) / gcd(q^r - 1, |p| - 1)."""
    if r < 2:
        raise DomainError("rank must be at least 2")
    _check_prime(p)
    q = p.F.order
    P = p.abs()
    return (P ** (r - 1) - 1) // gcd(q ** r - 1, P - 1)


def _flat(M):
    return [x for row in M for x in row]


@dataclass
class HeckeAlgebraLattice:
    """Z-span of the T_m (deg m <= B) inside the integer matrices on a cuspidal basis."""

    level: Poly
    B: int
    dim: int
    generators: dict          # monic m -> integer matrix
    basis: list               # HNF rows (flattened matrices)
    history: list = field(default_factory=list)   # (B, rank, hnf digest)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self, row):
        n = self.dim
        return [row[i * n:(i + 1) * n] for i in range(n)]


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _prime_power(Tp, e, norm, divides_level, dim):
    if divides_level:
        out = _identity(dim)
        for _ in range(e):
            out = _matmul(out, Tp)
        return out
    prev, cur = _identity(dim), Tp
    if e == 0:
        return prev
    for _ in range(e - 1):
        nxt = _matmul(cur, Tp)
        prev, cur = cur, [[a - norm * b for a, b in zip(r1, r2)] for r1, r2 in zip(nxt, prev)]
    return cur


def hecke_algebra(n: Poly, B_max: int = 6, basis=None, graph=None,
                  workers: int | None = None, direct: bool = False) -> HeckeAlgebraLattice:
    """Z-span of T_m for deg m <= B, growing B until the HNF repeats twice.

    T_p comes from the coset set S_p; composite T_m from the multiplicative
    recursions unless ``direct`` asks for S_m every time."""
    graph = graph or quotient_graph(n)
    basis = basis if basis is not None else harmonic_basis(graph, cuspidal=True)
    if not basis:
        raise HarmonicError(f"cuspidal space of level {n.format()} is zero")
    F = n.F
    dim = len(basis)
    gens, primes = {}, {}
    history = []
    rows = []
    stable = 0
    prev = None

    def direct_matrix(m):
        return hecke_matrix(m, basis, workers=workers).matrix

    for B in range(0, B_max + 1):
        for m in monic_polys(F, B):
            if direct or B == 0:
                M = direct_matrix(m)
            else:
                fac = factor(m)
                if len(fac) == 1 and fac[0][1] == 1:
                    M = primes.setdefault(B, {}).setdefault(m, direct_matrix(m))
                else:
                    M = _identity(dim)
                    for ell, e in fac:
                        Tl = gens[ell]
                        M = _matmul(M, _prime_power(Tl, e, ell.abs(), (n % ell).is_zero(), dim))
            gens[m] = M
            rows.append(_flat(M))
        hnf = row_hnf(rows)
        digest = tuple(map(tuple, hnf))
        history.append((B, len(hnf)))
        if digest == prev:
            stable += 1
            if stable >= 2:
                return HeckeAlgebraLattice(n, B, dim, gens, hnf, history)
        else:
            stable = 0
        prev = digest
    raise HarmonicError(f"Hecke lattice not stabilized by B = {B_max}; history {history}")


@dataclass
class EisensteinIdealReport:
    level: str
    B: int
    rank: int
    index: int
    index_factorization: dict
    smith: list
    predicted_order: int | None
    eisenstein_constant: str | None
    matches: dict             # ell -> bool, for ell not dividing p(q-1)
    unflagged: dict           # ell -> (index part, predicted part) for ell | p(q-1)

    def odd_part(self) -> int:
        v = self.index
        while v % 2 == 0:
            v //= 2
        return v

    def to_json(self):
        return {
            "level": self.level,
            "B": self.B,
            "rank": self.rank,
            "index": self.index,
            "index_factorization": {str(k): v for k, v in self.index_factorization.items()},
            "smith": self.smith,
            "predicted_cuspidal_order": self.predicted_order,
            "eisenstein_constant": self.eisenstein_constant,
            "matches": {str(k): v for k, v in self.matches.items()},
            "unflagged": {str(k): list(v) for k, v in self.unflagged.items()},
        }


def _ell_part(x: int, ell: int) -> int:
    out = 1
    while x % ell == 0:
        x //= ell
        out *= ell
    return out


def quotient_invariants(sub_rows, lattice_rows) -> list:
    """Invariant factors of L / S (S inside L, equal rank), from Smith normal form."""
    S = row_hnf(sub_rows)
    if len(S) != len(lattice_rows):
        raise HarmonicError("Eisenstein ideal has smaller rank than the Hecke algebra")
    LT = [list(col) for col in zip(*lattice_rows)]
    coords = []
    for s in S:
        x = q_solve(LT, s)
        if x is None or any(v.denominator != 1 for v in x):
            raise HarmonicError("ideal not contained in the Hecke lattice")
        coords.append([int(v) for v in x])
    return [d for d in smith_form(coords) if d != 1]


def eisenstein_index(n: Poly, B_max: int = 6, workers: int | None = None) -> EisensteinIdealReport:
    """[T(n) : E(n)] with E(n) spanned over Z by (T_p - |p| - 1) t, p prime not dividing n."""
    n = n.monic()
    graph = quotient_graph(n)
    basis = harmonic_basis(graph, cuspidal=True)
    H = hecke_algebra(n, B_max, basis, graph, workers)
    q = n.F.order
    dim = H.dim
    ideal_rows = []
    for m, M in H.generators.items():
        if m.deg < 1 or not is_irreducible(m) or (n % m).is_zero():
            continue
        eta = [[M[i][j] - (m.abs() + 1) * (i == j) for j in range(dim)] for i in range(dim)]
        for row in H.basis:
            ideal_rows.append(_flat(_matmul(eta, H.matrix(row))))
    coords_smith = quotient_invariants(ideal_rows, H.basis)
    index = 1
    for d in coords_smith:
        index *= d
    fac = factorint(index)
    prime_level = is_irreducible(n)
    predicted = cuspidal_order_rank2(n) if prime_level else None
    const = None
    if prime_level:
        E = eisenstein_cochain(graph)
        const = str(fourier_constant(E, 1) / (q - 1) ** 2)
    p = n.F.p
    matches, unflagged = {}, {}
    if predicted is not None:
        ells = set(fac) | set(factorint(predicted))
        for ell in sorted(ells):
            a, b = _ell_part(index, ell), _ell_part(predicted, ell)
            if ell == p or (q - 1) % ell == 0:
                unflagged[ell] = (a, b)
            else:
                matches[ell] = a == b
    return EisensteinIdealReport(
        n.format(), H.B, H.rank, index, dict(fac), coords_smith, predicted, const,
        matches, unflagged,
    )
