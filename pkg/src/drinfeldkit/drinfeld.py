"""Drinfeld A-modules over A-fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fields import DomainError, FFElem, FiniteField
from .linalg import ff_rank
from .polys import (
    Poly,
    RationalFunc,
    enumerate_monic_irreducibles,
    factor,
    residue_field,
    residue_of,
)
from .skew import SkewPoly, kernel_dimension, kernel_over

__all__ = [
    "AField",
    "DrinfeldModule",
    "TorsionStructure",
    "IsogenyWitness",
    "InsufficientExtension",
    "torsion_module",
    "rational_torsion_search",
    "full_torsion_module",
    "x0_T_module",
    "x0_product_relation",
    "x0_symbolic_check",
]


class InsufficientExtension(ArithmeticError):
    """The extension-degree cap was reached before the torsion split."""


class AField:
    """A field K with gamma: A -> K, given by t = gamma(T)."""

    def __init__(self, Fq: FiniteField, t, K: FiniteField | None = None, char: Poly | None = None):
        self.Fq, self.t, self.K, self.char = Fq, t, K, char

    @classmethod
    def residue(cls, p: Poly) -> "AField":
        """A/p with gamma the reduction map."""
        K = residue_field(p)
        t = FFElem(K, residue_of(Poly.T(p.F), p))
        return cls(p.F, t, K, p.monic())

    @classmethod
    def finite(cls, K: FiniteField, t_code: int) -> "AField":
        """A finite field K with t = given code; char_A is the minimal polynomial of t."""
        Fq = K
        while Fq.order != K.q:
            Fq = Fq.base
        mp = Poly(Fq, K.minimal_polynomial_over_fq(t_code))
        return cls(Fq, FFElem(K, t_code), K, mp)

    @classmethod
    def function_field(cls, Fq: FiniteField) -> "AField":
        """F = F_q(T) with gamma the inclusion (A-characteristic zero)."""
        return cls(Fq, RationalFunc.from_poly(Poly.T(Fq)), None, None)

    @property
    def is_finite(self) -> bool:
        return self.K is not None

    @property
    def q(self) -> int:
        return self.Fq.q

    def const(self, c: int):
        if self.K is not None:
            return FFElem(self.K, c)
        return self.t.constant(c)

    @property
    def one(self):
        return self.const(1)

    @property
    def zero(self):
        return self.const(0)

    def gamma(self, a: Poly):
        acc = self.zero
        for c in reversed(a.c):
            acc = acc * self.t + self.const(c)
        return acc

    def element(self, x):
        """Coerce an int code, a Poly or a RationalFunc into K."""
        if isinstance(x, (FFElem, RationalFunc)):
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, Poly):
            return self.gamma(x) if self.K is not None else RationalFunc.from_poly(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def format(self, x) -> str:
        return repr(x)

    def __repr__(self):
        if self.K is None:
            return f"F_{self.q}(T)"
        return f"{self.K!r}[t={self.t!r}]"


class DrinfeldModule:
    """phi_T = t x + g_1 x^q + ... + g_r x^(q^r) over an A-field."""

    def __init__(self, base: AField, g):
        g = [base.element(c) for c in g]
        if not g or g[-1].is_zero():
            raise DomainError("top coefficient g_r must be nonzero")
        self.base = base
        self.g = tuple(g)
        self._cache: dict = {}

    @classmethod
    def carlitz(cls, base: AField) -> "DrinfeldModule":
        return cls(base, [base.one])

    @property
    def rank(self) -> int:
        return len(self.g)

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def phi_T(self) -> SkewPoly:
        return SkewPoly([self.base.t, *self.g], zero=self.base.zero)

    def phi(self, a: Poly) -> SkewPoly:
        """phi_a by Horner's rule in phi_T."""
        key = a.c
        if key in self._cache:
            return self._cache[key]
        zero = self.base.zero
        acc = SkewPoly({}, zero=zero)
        pT = self.phi_T
        for c in reversed(a.c):
            acc = acc.compose(pT) if acc.terms else acc
            if c:
                acc = acc + SkewPoly({0: self.base.const(c)}, zero=zero)
        self._cache[key] = acc
        return acc

    def __call__(self, a: Poly) -> SkewPoly:
        return self.phi(a)

    # -- invariants -----------------------------------------------------------------
    def height(self) -> int:
        p = self.base.char
        if p is None:
            raise DomainError("height needs a base of positive A-characteristic")
        ht = self.phi(p).height()
        if ht % p.deg:
            raise ArithmeticError("Ht(phi_p) not divisible by deg p")
        return ht // p.deg

    def j_invariant(self):
        if self.rank != 2:
            raise DomainError("j-invariant is defined here for rank 2 only")
        g1, g2 = self.g
        return g1 ** (self.q + 1) / g2

    def twist(self, c) -> "DrinfeldModule":
        """The module psi = c^{-1} phi c, so that g_i(phi) = g_i(psi) c^(q^i - 1)."""
        return DrinfeldModule(
            self.base, [gi / c ** (self.q ** (i + 1) - 1) for i, gi in enumerate(self.g)]
        )

    def is_isomorphic(self, other: "DrinfeldModule", over: str = "K"):
        """Over K: return c with g_i = h_i c^(q^i - 1), else None (finite K: exhaustive).
        Over the closure: rank 2 compares j; rank 1 is always isomorphic."""
        if self.rank != other.rank:
            return None if over == "K" else False
        if over == "closure":
            if self.rank == 1:
                return True
            if self.rank == 2:
                return self.j_invariant() == other.j_invariant()
            raise DomainError("closure test implemented for rank <= 2")
        if not self.base.is_finite:
            for c in (self.base.one, -self.base.one):
                if _twist_matches(self, other, c):
                    return c
            raise DomainError("isomorphism over F(T) beyond constant twists is not implemented")
        K = self.base.K
        for code in K.nonzero():
            c = FFElem(K, code)
            if _twist_matches(self, other, c):
                return c
        return None

    def isomorphism_field_degree(self, other: "DrinfeldModule", cap: int = 64):
        """Least m such that self and other become isomorphic over the degree-m extension of K."""
        K = self.base.K
        for m in range(1, cap + 1):
            L = K.extension(m)
            for code in L.nonzero():
                c = FFElem(L, code)
                if all(
                    g == h * c ** (self.q ** (i + 1) - 1)
                    for i, (g, h) in enumerate(zip(_lift_all(self.g, L), _lift_all(other.g, L)))
                ):
                    return m
        return None

    # -- reduction --------------------------------------------------------------------
    def good_reduction_at(self, l: Poly) -> bool:
        if self.base.is_finite:
            raise DomainError("reduction is defined for modules over F")
        for gi in self.g[:-1]:
            if gi and gi.ord_at(l) < 0:
                return False
        return self.g[-1].ord_at(l) == 0

    def reduce_at(self, l: Poly) -> "DrinfeldModule":
        if not self.good_reduction_at(l):
            raise DomainError(f"bad reduction at {l}: need ord_l(g_i) >= 0 and ord_l(g_r) = 0")
        base = AField.residue(l)
        return DrinfeldModule(base, [reduce_rational(gi, l) for gi in self.g])

    def __repr__(self):
        return f"DrinfeldModule(rank={self.rank}, phi_T={self.phi_T!r} over {self.base!r})"


def _lift_all(cs, L):
    return [FFElem(L, L.embed(c.v, c.field)) for c in cs]


def _twist_matches(phi, psi, c) -> bool:
    q = phi.q
    return all(g == h * c ** (q ** (i + 1) - 1) for i, (g, h) in enumerate(zip(phi.g, psi.g)))


def reduce_rational(x: RationalFunc, l: Poly) -> FFElem:
    """Image of an l-integral rational function in A/l."""
    K = residue_field(l)
    if x.den % l == Poly(l.F):
        raise DomainError(f"{x} is not integral at {l}")
    num = residue_of(x.num, l)
    den = residue_of(x.den, l)
    return FFElem(K, K.div(num, den))


# -- torsion over finite A-fields -------------------------------------------------------


@dataclass(frozen=True)
class TorsionStructure:
    """A-module  A/d_1 + ... + A/d_s  with d_1 | d_2 | ... | d_s (monic)."""

    divisors: tuple

    @property
    def order(self) -> int:
        n = 1
        for d in self.divisors:
            n *= d.abs()
        return n

    def contains(self, other: "TorsionStructure") -> bool:
        """Whether other embeds: compare invariant factors from the top."""
        a, b = list(self.divisors), list(other.divisors)
        if len(b) > len(a):
            return False
        for x, y in zip(reversed(a), reversed(b)):
            if x % y:
                return False
        return True

    def to_json(self):
        return [d.format() for d in self.divisors]

    def __repr__(self):
        return " + ".join(f"A/({d.format()})" for d in self.divisors) or "0"


def structure_from_counts(Fq: FiniteField, counts: dict) -> TorsionStructure:
    """counts[prime] = [n_1, n_2, ...], n_i = dim_{F_q} of the prime^i-torsion."""
    per_prime = {}
    for p, ns in counts.items():
        d = p.deg
        prev, exps = 0, []
        ge = []
        for n in ns:
            diff = n - prev
            if diff % d:
                raise ArithmeticError(f"kernel dimensions {ns} inconsistent for {p}")
            ge.append(diff // d)
            prev = n
        # ge[i] = number of cyclic factors with exponent >= i+1
        for i, c in enumerate(ge):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            exps += [i + 1] * (c - nxt)
        per_prime[p] = sorted(exps, reverse=True)
    s = max((len(v) for v in per_prime.values()), default=0)
    divs = []
    for k in range(s):
        dk = Poly(Fq, (1,))
        for p, exps in per_prime.items():
            if k < len(exps):
                dk = dk * p ** exps[k]
        divs.append(dk)
    return TorsionStructure(tuple(sorted(divs, key=lambda x: x.deg)))


def splitting_degree(f: SkewPoly, target: int, cap: int) -> int:
    """Least N <= cap with dim ker f in F_{q^N} equal to target."""
    one = f.zero + 1 if not isinstance(f.zero, FFElem) else FFElem(f.zero.field, 1)
    r = SkewPoly.x(one)
    x = SkewPoly.x(one)
    for n in range(1, cap + 1):
        r = SkewPoly({i + 1: c.frob(1) for i, c in r.terms.items()}, zero=f.zero).mod_right(f)
        d = r - x
        dim = f.qdeg if not d.terms else f.rgcd(d).qdeg
        if dim == target:
            return n
    raise InsufficientExtension(f"kernel did not reach dimension {target} within degree {cap}")


def torsion_module(phi: DrinfeldModule, a: Poly, cap: int = 20000) -> TorsionStructure:
    """A-module structure of phi[a] over the algebraic closure of a finite A-field."""
    if not phi.base.is_finite:
        raise DomainError("torsion_module needs a finite A-field")
    if not a:
        raise DomainError("a must be nonzero")
    pa = phi.phi(a)
    target = pa.qdeg - pa.height()
    N = splitting_degree(pa, target, cap)
    counts = {}
    for p, e in factor(a):
        ns = []
        for i in range(1, e + 1):
            ns.append(kernel_dimension(phi.phi(p ** i), N))
        counts[p] = ns
    return structure_from_counts(a.F, counts)


def torsion_kernel_explicit(phi: DrinfeldModule, a: Poly, m: int):
    """Roots of phi_a in the degree-m extension of K (explicit null-space route)."""
    L = phi.base.K.extension(m)
    return kernel_over(phi.phi(a), L)


# -- rational torsion over F ---------------------------------------------------------------


def _module_matrix_structure(phi_bar: DrinfeldModule):
    """Structure of the finite A-module phi_bar(K) from the F_q-matrix of phi_bar_T."""
    K = phi_bar.base.K
    Fq = phi_bar.base.Fq
    q = Fq.order
    dim = _log_q(K.order, q)
    pT = phi_bar.phi_T

    def col(k):
        v = pT(FFElem(K, q ** k)).v
        out = []
        for _ in range(dim):
            v, d = divmod(v, q)
            out.append(d)
        return out

    cols = [col(k) for k in range(dim)]
    M = [[cols[k][i] for k in range(dim)] for i in range(dim)]
    return M, _fq_module_structure(Fq, M)


def _mat_mul(Fq, A, B):
    n = len(A)
    return [
        [
            _sum(Fq, (Fq.mul(A[i][k], B[k][j]) for k in range(n)))
            for j in range(n)
        ]
        for i in range(n)
    ]


def _sum(Fq, it):
    s = 0
    for x in it:
        s = Fq.add(s, x)
    return s


def _poly_at_matrix(Fq, p: Poly, M):
    n = len(M)
    I = [[int(i == j) for j in range(n)] for i in range(n)]
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p.c):
        acc = _mat_mul(Fq, acc, M)
        for i in range(n):
            acc[i][i] = Fq.add(acc[i][i], c)
    return acc


def _charpoly_matrix(Fq, M) -> Poly:
    """Characteristic polynomial via Faddeev-free interpolation-less approach: det(xI - M)."""
    n = len(M)
    # Hessenberg-free: compute det(T I - M) with polynomial entries by fraction-free elimination
    T = Poly.T(Fq)
    A = [[(T if i == j else Poly(Fq)) - Poly(Fq, (M[i][j],)) for j in range(n)] for i in range(n)]
    return _poly_det(A).monic()


def _poly_det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    F = A[0][0].F
    total = Poly(F)
    for j in range(n):
        if not A[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _fq_module_structure(Fq, M) -> TorsionStructure:
    cp = _charpoly_matrix(Fq, M)
    n = len(M)
    counts = {}
    for p, e in factor(cp):
        ns = []
        P = _poly_at_matrix(Fq, p, M)
        Pi = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(e):
            Pi = _mat_mul(Fq, Pi, P)
            ns.append(n - ff_rank(Fq, Pi))
        while len(ns) > 1 and ns[-1] == ns[-2]:
            ns.pop()
        counts[p] = ns
    return structure_from_counts(Fq, counts)


@dataclass
class RationalTorsionReport:
    module: str
    annihilator: Poly
    points: list
    structure: TorsionStructure
    bound: int
    primes_used: list
    reductions: dict = field(default_factory=dict)
    injective: dict = field(default_factory=dict)
    complete_within_bound: bool = True

    def to_json(self):
        return {
            "module": self.module,
            "annihilator": self.annihilator.format(),
            "points": [repr(p) for p in self.points],
            "structure": self.structure.to_json(),
            "certified_bound": self.bound,
            "primes_used": [p.format() for p in self.primes_used],
            "reduction_structures": {k: v.to_json() for k, v in self.reductions.items()},
            "injective_on_prime_to_l_part": self.injective,
        }


def good_primes(phi: DrinfeldModule, budget: int, max_deg: int = 8):
    out = []
    for d in range(1, max_deg + 1):
        for l in enumerate_monic_irreducibles(phi.base.Fq, d):
            if phi.good_reduction_at(l):
                out.append(l)
                if len(out) == budget:
                    return out
    return out


def annihilator_bound(phi: DrinfeldModule, budget: int = 4):
    """prod_q q^{min over good l != q of ord_q(exponent of phi_bar(A/l))}, plus the data used."""
    primes = good_primes(phi, budget)
    if len(primes) < 2:
        raise DomainError("fewer than two good-reduction primes found within budget")
    structs = {}
    for l in primes:
        _, st = _module_matrix_structure(phi.reduce_at(l))
        structs[l] = st
    cand = set()
    for st in structs.values():
        if st.divisors:
            cand |= {p for p, _ in factor(st.divisors[-1])}
    Fq = phi.base.Fq
    ann = Poly(Fq, (1,))
    for p in sorted(cand, key=lambda x: x.sort_key()):
        e = None
        for l, st in structs.items():
            if l == p:
                continue
            top = st.divisors[-1] if st.divisors else Poly(Fq, (1,))
            k = top.ord_at(p)
            e = k if e is None else min(e, k)
        if e:
            ann = ann * p ** e
    return ann, primes, structs


def _candidates(Fq: FiniteField, B: int):
    seen = set()
    nums = [Poly(Fq, cs) for d in range(B + 1) for cs in _all_coeffs(Fq, d)]
    dens = [Poly(Fq, (1,))] + [
        Poly(Fq, tuple(cs) + (1,)) for d in range(1, B + 1) for cs in itertools.product(range(Fq.order), repeat=d)
    ]
    yield RationalFunc(Poly(Fq), Poly(Fq, (1,)))
    for den in dens:
        for num in nums:
            if num.gcd(den).deg != 0:
                continue
            x = RationalFunc(num, den, _reduced=True)
            if x in seen:
                continue
            seen.add(x)
            yield x


def _all_coeffs(Fq, d):
    """Coefficient tuples of exact degree d (leading nonzero)."""
    for top in range(1, Fq.order):
        for tail in itertools.product(range(Fq.order), repeat=d):
            yield tuple(tail) + (top,)


def rational_torsion_search(
    phi: DrinfeldModule,
    B: int | None = None,
    budget: int = 4,
    restrict_to: Poly | None = None,
) -> RationalTorsionReport:
    """Certified torsion points of phi over F = F_q(T) with numerator/denominator degree <= B."""
    if phi.base.is_finite:
        raise DomainError("rational torsion search needs a module over F")
    ann, primes, structs = annihilator_bound(phi, budget)
    a = ann if restrict_to is None else restrict_to
    if B is None:
        B = max(1, 2 * max(a.deg, 0) * phi.rank)
    pa = phi.phi(a)
    sieve = _reduction_sieve(phi, a)
    found = [x for x in _candidates(phi.base.Fq, B) if sieve(x) and pa(x).is_zero()]
    pts = _close_module(phi, found)
    complete = len(pts) == len(found)
    structure = _points_structure(phi, pts, a)
    inj = {}
    for l in primes:
        inj[l.format()] = _reduction_injective(pts, l, phi, a)
    return RationalTorsionReport(
        module=repr(phi),
        annihilator=a,
        points=sorted(pts, key=lambda x: (x.den.sort_key(), x.num.sort_key())),
        structure=structure,
        bound=B,
        primes_used=primes,
        reductions={l.format(): st for l, st in structs.items()},
        injective=inj,
        complete_within_bound=complete,
    )


def _reduction_sieve(phi, a: Poly, count: int = 3):
    """Cheap necessary test: alpha must reduce into phi_bar[a] at a few good primes."""
    filters = []
    for l in good_primes(phi, 12, max_deg=7):
        if l.deg >= 3:
            red = phi.reduce_at(l)
            filters.append((l, residue_field(l), red.phi(a)))
            if len(filters) == count:
                break

    def ok(x: RationalFunc) -> bool:
        for l, K, pa in filters:
            d = residue_of(x.den, l)
            if not d:
                continue
            v = FFElem(K, K.div(residue_of(x.num, l), d))
            if not pa(v).is_zero():
                return False
        return True

    return ok


def _close_module(phi, pts):
    """Smallest set containing pts closed under + and phi_T (finite for torsion input)."""
    S = set(pts) | {RationalFunc(Poly(phi.base.Fq), Poly(phi.base.Fq, (1,)))}
    pT = phi.phi_T
    frontier = list(S)
    while frontier:
        new = []
        for x in frontier:
            img = pT(x)
            if img not in S:
                new.append(img)
                S.add(img)
            for y in list(S):
                s = x + y
                if s not in S:
                    S.add(s)
                    new.append(s)
            for c in phi.base.Fq.nonzero():
                s = x * phi.base.const(c)
                if s not in S:
                    S.add(s)
                    new.append(s)
        frontier = new
    return list(S)


def _points_structure(phi, pts, a: Poly) -> TorsionStructure:
    q = phi.q
    counts = {}
    n = len(pts)
    if n == 1:
        return TorsionStructure(())
    for p, e in factor(a):
        ns = []
        k = 1
        while True:
            pk = phi.phi(p ** k)
            c = sum(1 for x in pts if pk(x).is_zero())
            dim = _log_q(c, q)
            if ns and dim == ns[-1]:
                break
            ns.append(dim)
            k += 1
            if k > e + 8:
                break
        counts[p] = ns
    return structure_from_counts(phi.base.Fq, counts)


def _log_q(n, q):
    d = 0
    while n > 1:
        if n % q:
            raise ArithmeticError("point count is not a power of q")
        n //= q
        d += 1
    return d


def _reduction_injective(pts, l: Poly, phi, a: Poly) -> bool:
    """Injectivity of reduction mod l on the prime-to-l part of the given torsion points."""
    m = a
    while m.deg > 0 and not (m % l):
        m = m // l
    pm = phi.phi(m)
    prime_to_l = [x for x in pts if pm(x).is_zero()]
    images = set()
    for x in prime_to_l:
        if not (x.den % l):
            return False
        images.add(reduce_rational(x, l).v)
    return len(images) == len(prime_to_l)


def full_torsion_module(Fq: FiniteField, V) -> DrinfeldModule:
    """phi_T = T x prod_{0 != v in V}(1 - x/v) for an F_q-subspace V of F spanned by V."""
    Fx = AField.function_field(Fq)
    one = Fx.one
    P = SkewPoly.x(one)
    for w in V:
        w = Fx.element(w) if not isinstance(w, RationalFunc) else w
        pw = P(w)
        if pw.is_zero():
            raise DomainError("spanning vectors are F_q-dependent")
        # (x^q - pw^{q-1} x) ∘ P
        P = SkewPoly({0: -(pw ** (Fq.q - 1)), 1: one}).compose(P)
    # P = prod_{v in span}(x - v); normalize the linear coefficient to T
    c0 = P[0]
    scale = Fx.t / c0
    coeffs = [scale * P[i] for i in range(1, P.qdeg + 1)]
    return DrinfeldModule(Fx, coeffs)


# -- X_0(T) and X_0(T(T+1)) --------------------------------------------------------------


@dataclass
class IsogenyWitness:
    u: SkewPoly
    source: DrinfeldModule
    target: DrinfeldModule

    def verify(self) -> bool:
        return self.u.compose(self.source.phi_T) == self.target.phi_T.compose(self.u)


def factor_isogeny(phi: DrinfeldModule, kernel: SkewPoly):
    """psi with psi_T ∘ kernel = kernel ∘ phi_T, when ker(kernel) is phi-stable."""
    if not kernel.is_separable():
        raise DomainError("kernel polynomial must be separable")
    lhs = kernel.compose(phi.phi_T)
    h, r = lhs.right_divmod(kernel)
    if r.terms:
        raise DomainError(f"kernel is not a phi-submodule: remainder {r!r}")
    t = h[0]
    if t != phi.base.t:
        raise ArithmeticError("quotient has a different structure map")
    psi = DrinfeldModule(phi.base, [h[i] for i in range(1, h.qdeg + 1)])
    return psi, IsogenyWitness(kernel, phi, psi)


def x0_T_module(base: AField, alpha):
    """(phi, kernel) with phi_T = t x + x^q + j^{-1} x^(q^2), j = -alpha^(q+1)/(alpha + t),
    and the cyclic T-kernel x - alpha^{-1} x^q."""
    q = base.q
    if alpha.is_zero():
        raise DomainError("alpha = 0 gives an inseparable kernel")
    denom = alpha + base.t
    if denom.is_zero():
        raise DomainError("alpha = -t makes j infinite")
    j = -(alpha ** (q + 1)) / denom
    phi = DrinfeldModule(base, [base.one, j.inverse()])
    kernel = SkewPoly({0: base.one, 1: -alpha.inverse()})
    return phi, kernel, j


def x0_product_relation(base: AField, samples: int = 50, ext: int = 2, seed: int = 0):
    """Sample (alpha, beta) with a common j admitting cyclic T- and (T+1)-kernels and check
    alpha^(q+1)/(t+alpha) = beta^(q+1)/(t+1+beta).

    Points are drawn from the degree-``ext`` extension of the base, moving to larger
    extensions until ``samples`` pairs are found."""
    import random

    if samples <= 0:
        return []
    rng = random.Random(seed)
    results = []
    seen = set()
    while len(results) < samples:
        if ext > 12:
            raise DomainError(f"could not find {samples} samples in extensions up to degree 12")
        _x0_samples(base, ext, rng, samples, results, seen)
        ext += 1
    return results


def _x0_samples(base, ext, rng, samples, results, seen):
    K = base.K.extension(ext)
    q = base.q
    t = FFElem(K, K.embed(base.t.v, base.t.field))
    t1 = t + 1
    if t.is_zero() or t1.is_zero():
        raise DomainError("A-characteristic must be coprime to T(T+1)")
    Lbase = AField(base.Fq, t, K, base.char)
    codes = list(K.nonzero())
    rng.shuffle(codes)
    elems = [FFElem(K, b) for b in K.nonzero()]
    for code in codes:
        alpha = FFElem(K, code)
        if (alpha + t).is_zero():
            continue
        j = -(alpha ** (q + 1)) / (alpha + t)
        key = (ext, j.v)
        if key in seen:
            continue
        # beta^(q+1) + j beta + j (t+1) = 0
        beta = next((b for b in elems if (b ** (q + 1) + j * b + j * t1).is_zero()), None)
        if beta is None:
            continue
        seen.add(key)
        lhs = alpha ** (q + 1) / (t + alpha)
        rhs = beta ** (q + 1) / (t1 + beta)
        phi, ker_T, _ = x0_T_module(Lbase, alpha)
        ker_T1 = SkewPoly({0: Lbase.one, 1: -beta.inverse()})
        phi_T1 = phi.phi(Poly(base.Fq, (1, 1)))
        results.append(
            {
                "alpha": repr(alpha),
                "beta": repr(beta),
                "j": repr(j),
                "relation": lhs == rhs,
                "T_kernel": _factors(phi, ker_T),
                "T1_kernel": _kills(phi_T1, ker_T1),
            }
        )
        if len(results) >= samples:
            return


def _factors(phi, kernel) -> bool:
    try:
        factor_isogeny(phi, kernel)
        return _kills(phi.phi_T, kernel)
    except DomainError:
        return False


def _kills(pa: SkewPoly, kernel: SkewPoly) -> bool:
    """Whether kernel right-divides pa, i.e. ker(kernel) lies in ker(pa)."""
    return pa.mod_right(kernel).is_zero()


class _SymElem:
    """Element of F_p(t, a) (sympy rational function field) with Frobenius x -> x^q."""

    __slots__ = ("v", "q")

    def __init__(self, v, q):
        self.v, self.q = v, q

    def _w(self, o):
        return o.v if isinstance(o, _SymElem) else o

    def __add__(self, o):
        return _SymElem(self.v + self._w(o), self.q)

    __radd__ = __add__

    def __sub__(self, o):
        return _SymElem(self.v - self._w(o), self.q)

    def __rsub__(self, o):
        return _SymElem(self._w(o) - self.v, self.q)

    def __neg__(self):
        return _SymElem(-self.v, self.q)

    def __mul__(self, o):
        return _SymElem(self.v * self._w(o), self.q)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return _SymElem(self.v / self._w(o), self.q)

    def __pow__(self, e):
        return _SymElem(self.v ** e, self.q)

    def frob(self, i=1):
        return _SymElem(self.v ** (self.q ** i), self.q)

    def is_zero(self):
        return self.v == 0

    def __eq__(self, o):
        return (self - o).is_zero()

    def __repr__(self):
        return str(self.v.as_expr())


def x0_symbolic_check(p: int) -> bool:
    """In F_p(t, a): with j^{-1} = -(t + a)/a^(q+1), x - a^{-1} x^q right-divides x ∘ phi_T and
    kills phi_T (q = p prime)."""
    from sympy import GF as SymGF
    from sympy import field as sym_field

    _, t, a = sym_field("t,a", SymGF(p))
    q = p
    T = _SymElem(t, q)
    A = _SymElem(a, q)
    one = _SymElem(t ** 0, q)
    Jinv = -(T + A) / A ** (q + 1)
    phi_T = SkewPoly({0: T, 1: one, 2: Jinv})
    ker = SkewPoly({0: one, 1: -(one / A)})
    return phi_T.mod_right(ker).is_zero()

