"""Truncated analysis over F_inf = F_q((1/T)).

Lattice sums, the two recursions for exponential coefficients, the Carlitz period
(through its (q-1)-th power only) and checks of e(Tx) = phi_T(e(x)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import DomainError, FiniteField
from .laurent import LaurentSeries, PrecisionError, expand_at_infinity
from .polys import Poly, RationalFunc, monic_polys

__all__ = [
    "LatticeRank1",
    "ExpSeries",
    "FunctionalEquationReport",
    "eisenstein_sum",
    "eisenstein_slice",
    "exp_coeffs_from_eisenstein",
    "exp_coeffs_from_phi",
    "carlitz_period_power",
    "carlitz_product_coeffs",
    "functional_equation_check",
]


@dataclass(frozen=True)
class LatticeRank1:
    """The lattice cA in F_inf.

    Only c^(q-1) enters the sums (E_n vanishes unless (q-1) | n), so the lattice may
    be given by ``c_pow`` = c^(q-1) instead of c itself; this is how the Carlitz
    lattice is represented without choosing a root.
    """

    Fq: FiniteField
    c: LaurentSeries | None = None
    c_pow: LaurentSeries | None = None

    def __post_init__(self):
        if self.c is None and self.c_pow is None:
            object.__setattr__(self, "c", LaurentSeries.one(self.Fq))
        if self.c_pow is None:
            if self.c.is_zero():
                raise DomainError("lattice generator is zero to known precision")
            object.__setattr__(self, "c_pow", self.c ** (self.Fq.order - 1))
        elif self.c_pow.is_zero():
            raise DomainError("lattice generator is zero to known precision")

    @classmethod
    def standard(cls, Fq):
        return cls(Fq)

    @classmethod
    def carlitz(cls, Fq, D: int):
        """pi_C A, through the approximant of pi_C^(q-1) from monic sums up to degree D."""
        return cls(Fq, c_pow=carlitz_period_power(D, Fq))

    def scale_factor(self, n: int, rel_prec: int | None = None) -> LaurentSeries:
        """c^(-n) for (q-1) | n; ``rel_prec`` bounds the expansion when c is exact."""
        q1 = self.Fq.order - 1
        if n % q1:
            raise DomainError("c^(-n) is only determined by c^(q-1) when (q-1) | n")
        return self.c_pow.inverse(rel_prec) ** (n // q1)


@dataclass
class ExpSeries:
    """sum_n e_n x^(q^n) truncated at n = N; ``certificates[n]`` is the absolute
    precision of e_n (None when exact)."""

    coeffs: list
    certificates: list = field(default_factory=list)

    def __post_init__(self):
        if not self.certificates:
            self.certificates = [getattr(c, "prec", None) for c in self.coeffs]

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def replace(self, n: int, value) -> "ExpSeries":
        cs = list(self.coeffs)
        cs[n] = value
        return ExpSeries(cs)

    def to_json(self):
        out = []
        for c in self.coeffs:
            out.append(c.to_json() if isinstance(c, LaurentSeries) else repr(c))
        return {"coefficients": out, "certificates": self.certificates}


# -- lattice sums ----------------------------------------------------------------------------


def _unit_power_sum(Fq: FiniteField, n: int) -> int:
    s = 0
    for u in Fq.nonzero():
        s = Fq.add(s, Fq.inv(Fq.pow(u, n)))
    return s


def eisenstein_slice(Fq: FiniteField, n: int, d: int, prec: int) -> LaurentSeries:
    """sum over monic a of degree d of a^(-n), to absolute precision ``prec``."""
    acc = LaurentSeries.zero(Fq, prec)
    rel = prec - n * d
    if rel <= 0:
        return acc
    for a in monic_polys(Fq, d):
        an = LaurentSeries.from_poly(a ** n)
        acc = acc + an.inverse(rel)
    return acc


def eisenstein_sum(lattice: LatticeRank1, n: int, D: int) -> LaurentSeries:
    """E_n(cA) summed over 0 != a with deg a <= D.

    The omitted terms have valuation >= n (D+1) - n v(c), which is the returned
    precision (intersected with what c is known to)."""
    if n < 1 or D < 0:
        raise DomainError("need n >= 1 and D >= 0")
    Fq = lattice.Fq
    unit = _unit_power_sum(Fq, n)
    if unit == 0:
        # sum over F_q^x of u^(-n) vanishes: E_n = 0 identically
        return LaurentSeries.zero(Fq)
    prec = n * (D + 1)
    acc = LaurentSeries.zero(Fq, prec)
    for d in range(D + 1):
        acc = acc + eisenstein_slice(Fq, n, d, prec)
    return acc.scale(unit) * lattice.scale_factor(n, prec)


def exp_coeffs_from_eisenstein(lattice: LatticeRank1, N: int, D: int) -> ExpSeries:
    """e_n = E_(q^n - 1) + sum_{0<i<n} e_i E_(q^(n-i) - 1)^(q^i), e_0 = 1."""
    if N < 0:
        raise DomainError("N must be >= 0")
    q = lattice.Fq.order
    E = {m: eisenstein_sum(lattice, q ** m - 1, D) for m in range(1, N + 1)}
    es = [LaurentSeries.one(lattice.Fq)]
    for n in range(1, N + 1):
        s = E[n]
        for i in range(1, n):
            s = s + es[i] * E[n - i].frob(i)
        if s.prec is not None and not s.c:
            raise PrecisionError(
                f"e_{n} has no certified coefficient (zero up to pi^{s.prec}); raise D"
            )
        es.append(s)
    return ExpSeries(es)


def carlitz_period_power(D: int, Fq: FiniteField) -> LaurentSeries:
    """-(T^q - T) * sum_{a monic, deg a <= D} a^(1-q), approximating pi_C^(q-1).

    Valuation -q; the precision (q-1)(D+1) - q certifies every returned coefficient."""
    if D < 1:
        raise DomainError("D must be >= 1")
    q = Fq.order
    n = q - 1
    prec = n * (D + 1)
    s = LaurentSeries.zero(Fq, prec)
    for d in range(D + 1):
        s = s + eisenstein_slice(Fq, n, d, prec)
    T = Poly.T(Fq)
    return -(LaurentSeries.from_poly(T ** q - T) * s)


# -- algebraic recursion ---------------------------------------------------------------------


def _coeff_list(phi_or_g):
    """g_1..g_r as RationalFunc over F_q(T); rejects finite A-fields."""
    if hasattr(phi_or_g, "phi_T"):
        phi = phi_or_g
        if phi.base.char is not None:
            raise DomainError(
                "exponential recursion needs A-characteristic zero: T^(q^n) - T vanishes"
            )
        pt = phi.phi_T
        return [pt[i] for i in range(1, pt.qdeg + 1)], phi.base.Fq
    gs = list(phi_or_g)
    Fq = None
    out = []
    for g in gs:
        if isinstance(g, Poly):
            g = RationalFunc.from_poly(g)
        if not isinstance(g, RationalFunc):
            raise DomainError(f"coefficient {g!r} does not live in F_q(T)")
        Fq = g.F
        out.append(g)
    if Fq is None:
        raise DomainError("need at least one coefficient")
    return out, Fq


def exp_coeffs_from_phi(phi_or_g, N: int) -> ExpSeries:
    """(T^(q^n) - T) e_n = sum_i e_(n-i)^(q^i) g_i with e_0 = 1, exactly in F_q(T)."""
    gs, Fq = _coeff_list(phi_or_g)
    q = Fq.order
    T = Poly.T(Fq)
    es = [RationalFunc.from_poly(Poly.const(Fq, 1))]
    for n in range(1, N + 1):
        s = RationalFunc.from_poly(Poly(Fq))
        for i, g in enumerate(gs, start=1):
            if n - i >= 0 and not g.is_zero():
                s = s + es[n - i].frob(i) * g
        es.append(s / RationalFunc.from_poly(T ** (q ** n) - T))
    return ExpSeries(es)


def carlitz_product_coeffs(Fq: FiniteField, N: int) -> list:
    """1 / prod_{0<=i<n} (T^(q^n) - T^(q^i)); equals the recursion's e_n for Carlitz."""
    q = Fq.order
    T = Poly.T(Fq)
    out = [RationalFunc.from_poly(Poly.const(Fq, 1))]
    for n in range(1, N + 1):
        D = Poly.const(Fq, 1)
        for i in range(n):
            D = D * (T ** (q ** n) - T ** (q ** i))
        out.append(RationalFunc.from_poly(D).inverse())
    return out


# -- functional equation ---------------------------------------------------------------------


@dataclass
class FunctionalEquationReport:
    ok: bool
    failing_index: int | None
    checked_through: int

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "ok": self.ok,
            "failing_index": self.failing_index,
            "checked_through": self.checked_through,
        }


def _as_series(x, prec):
    if isinstance(x, LaurentSeries):
        return x
    if isinstance(x, Poly):
        return LaurentSeries.from_poly(x)
    if x.is_polynomial():
        return LaurentSeries.from_poly(x.num.scale(x.F.inv(x.den.c[0])))
    return expand_at_infinity(x, prec)


def functional_equation_check(phi, e: ExpSeries, N: int) -> FunctionalEquationReport:
    """Compare the x^(q^n) coefficients of e(Tx) and phi_T(e(x)) for n <= N.

    Exact for F_q(T) coefficients; for Laurent coefficients only certified digits
    are compared."""
    if N > e.N:
        raise DomainError(f"e is only known through index {e.N}")
    pt = phi.phi_T
    r = pt.qdeg
    q = phi.base.Fq.order
    Fq = phi.base.Fq
    laurent = any(isinstance(c, LaurentSeries) for c in e.coeffs)
    T = Poly.T(Fq)
    if laurent:
        horizon = max((c.prec or 0) for c in e.coeffs) * q ** r + 1
        es = e.coeffs
        gs = [_as_series(pt[i], horizon) for i in range(r + 1)]
        Tser = LaurentSeries.from_poly(T)
    else:
        es = e.coeffs
        gs = [pt[i] for i in range(r + 1)]
    for n in range(N + 1):
        if laurent:
            lhs = es[n] * Tser.frob(n)
        else:
            lhs = es[n] * RationalFunc.from_poly(T ** (q ** n))
        rhs = None
        for i in range(r + 1):
            if n - i < 0:
                break
            term = gs[i] * es[n - i].frob(i) if i else gs[0] * es[n]
            rhs = term if rhs is None else rhs + term
        good = lhs.agrees_with(rhs) if laurent else lhs == rhs
        if not good:
            return FunctionalEquationReport(False, n, N)
    return FunctionalEquationReport(True, None, N)
