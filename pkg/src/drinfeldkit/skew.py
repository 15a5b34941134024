"""Twisted polynomials K{x}: F_q-linear polynomials under composition.

Coefficients may be any field-like objects supporting ``+ - * /``, equality,
``is_zero()`` and ``frob(i)`` (the map c -> c^(q^i)); this covers finite-field
elements, rational functions in T and Laurent series in 1/T.
"""

from __future__ import annotations

import threading
from .fields import DomainError, FFElem, FiniteField
from .linalg import ff_nullspace

__all__ = ["SkewPoly", "kernel_over", "kernel_dimension", "tau_power_mod"]


def _iszero(c) -> bool:
    return c.is_zero()


class SkewPoly:
    """sum_i a_i x^(q^i), stored sparsely as {i: a_i} with nonzero a_i."""

    __slots__ = ("zero", "terms")

    def __init__(self, coeffs, zero=None):
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        terms = {}
        for i, c in items:
            if zero is None:
                zero = c - c
            if not _iszero(c):
                terms[i] = c
        if zero is None:
            raise ValueError("cannot infer the coefficient field of an empty skew polynomial")
        self.zero = zero
        self.terms = terms

    # -- constructors --------------------------------------------------------------
    @classmethod
    def x(cls, one):
        """The identity x."""
        return cls({0: one}, zero=one - one)

    @classmethod
    def tau(cls, one, i: int = 1):
        return cls({i: one}, zero=one - one)

    def _like(self, terms):
        return SkewPoly(terms, zero=self.zero)

    # -- structure -------------------------------------------------------------------
    def __getitem__(self, i):
        return self.terms.get(i, self.zero)

    def coeffs(self):
        """Dense coefficient list a_0 .. a_n."""
        if not self.terms:
            return []
        return [self[i] for i in range(self.qdeg + 1)]

    @property
    def qdeg(self):
        if not self.terms:
            raise DomainError("q-degree of the zero skew polynomial")
        return max(self.terms)

    def height(self) -> int:
        """Ht(f): least i with a_i != 0."""
        if not self.terms:
            raise DomainError("height of the zero skew polynomial")
        return min(self.terms)

    def derivative(self):
        """The constant coefficient a_0 (denoted by a partial sign in the literature)."""
        return self[0]

    def lc(self):
        return self.terms[self.qdeg]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_separable(self) -> bool:
        return 0 in self.terms

    # -- ring operations ------------------------------------------------------------------
    def __add__(self, o):
        out = dict(self.terms)
        for i, c in o.terms.items():
            out[i] = out[i] + c if i in out else c
        return self._like(out)

    def __neg__(self):
        return self._like({i: -c for i, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        """c * f (left multiplication by the constant c, i.e. composition (c x)∘f)."""
        return self._like({i: c * a for i, a in self.terms.items()})

    def compose(self, o: "SkewPoly") -> "SkewPoly":
        """(self∘o): coefficient of x^(q^k) is sum_{i+j=k} a_i b_j^(q^i)."""
        out = {}
        for i, a in self.terms.items():
            for j, b in o.terms.items():
                t = a * (b.frob(i) if i else b)
                k = i + j
                out[k] = out[k] + t if k in out else t
        return self._like(out)

    __mul__ = compose
    __matmul__ = compose

    def __pow__(self, n: int):
        r = SkewPoly.x(self.zero + _one_of(self))
        for _ in range(n):
            r = r.compose(self)
        return r

    def frob(self, i: int = 1) -> "SkewPoly":
        return self._like({k: c.frob(i) for k, c in self.terms.items()})

    def __eq__(self, o):
        if not isinstance(o, SkewPoly):
            return NotImplemented
        keys = set(self.terms) | set(o.terms)
        return all(_iszero(self[i] - o[i]) for i in keys)

    def __hash__(self):
        return hash(tuple(sorted((i, repr(c)) for i, c in self.terms.items())))

    # -- evaluation ---------------------------------------------------------------------
    def __call__(self, alpha, lift=None):
        """f(alpha) = sum a_i alpha^(q^i); ``lift`` maps coefficients into alpha's ring."""
        lift = lift or (lambda c: c)
        acc = None
        power = alpha
        last = 0
        for i in sorted(self.terms):
            power = power.frob(i - last) if i > last else power
            last = i
            t = lift(self.terms[i]) * power
            acc = t if acc is None else acc + t
        if acc is None:
            return alpha - alpha
        return acc

    evaluate = __call__

    # -- division -----------------------------------------------------------------------
    def right_divmod(self, g: "SkewPoly"):
        """(h, r) with self = h∘g + r and qdeg r < qdeg g."""
        if not g.terms:
            raise DomainError("right division by the zero skew polynomial")
        m = g.qdeg
        bm = g.terms[m]
        h = {}
        r = dict(self.terms)
        while r:
            n = max(r)
            if n < m:
                break
            s = n - m
            c = r[n] / (bm.frob(s) if s else bm)
            h[s] = c
            for j, b in g.terms.items():
                t = c * (b.frob(s) if s else b)
                k = s + j
                v = r[k] - t if k in r else -t
                if _iszero(v):
                    r.pop(k, None)
                else:
                    r[k] = v
            r.pop(n, None)
        return self._like(h), self._like(r)

    def mod_right(self, g):
        return self.right_divmod(g)[1]

    def make_monic(self):
        return self.scale(_one_of(self) / self.lc()) if self.terms else self

    def rgcd(self, o: "SkewPoly") -> "SkewPoly":
        """Monic right gcd: generator of K{x}f + K{x}g."""
        a, b = self, o
        while b.terms:
            a, b = b, a.mod_right(b)
        return a.make_monic()

    # -- text ---------------------------------------------------------------------------
    def format(self, fmt=repr) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms):
            cs = fmt(self.terms[i])
            if any(ch in cs for ch in "+-") and not (cs.startswith("(") and cs.endswith(")")):
                cs = f"({cs})"
            mon = "x" if i == 0 else ("x^q" if i == 1 else f"x^q{i}")
            parts.append(mon if cs == "1" else f"{cs}*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return self.format()


def _one_of(f: SkewPoly):
    z = f.zero
    if hasattr(z, "one") and not callable(z.one):
        return z.one
    if isinstance(z, FFElem):
        return FFElem(z.field, 1)
    return z + 1


def tau_power_mod(f: SkewPoly, n: int) -> SkewPoly:
    """x^(q^n) reduced on the right modulo f, by iterated twisting."""
    one = _one_of(f)
    r = SkewPoly.x(one)
    for _ in range(n):
        r = SkewPoly({i + 1: c.frob(1) for i, c in r.terms.items()}, zero=f.zero).mod_right(f)
    return r


def kernel_dimension(f: SkewPoly, n: int) -> int:
    """dim over F_q of the roots of f lying in F_{q^n} (inside an algebraic closure).

    Counted as the q-degree of rgcd(f, x^(q^n) - x), both sides being separable there.
    """
    one = _one_of(f)
    r = tau_power_mod(f, n) - SkewPoly.x(one)
    return f.rgcd(r).qdeg if r.terms else f.make_monic().qdeg


_KCACHE: dict = {}
_KLOCK = threading.Lock()


def kernel_over(f: SkewPoly, K: FiniteField):
    """F_q-basis (as codes of K) of the roots of f in the finite field K.

    Builds the F_q-matrix of alpha -> f(alpha) on K (coordinates: base-q digits of
    codes) and returns its null space.
    """
    if f.is_zero():
        raise DomainError("kernel of the zero skew polynomial is everything")
    q = K.q
    dim = 0
    o = K.order
    while o > 1:
        o //= q
        dim += 1
    key = (id(K), tuple(sorted((i, _code(c)) for i, c in f.terms.items())))
    with _KLOCK:
        cached = _KCACHE.get(key)
    if cached is not None:
        return list(cached)
    Fq = _constants(K)

    def digits(c):
        out = []
        for _ in range(dim):
            c, d = divmod(c, q)
            out.append(d)
        return out

    def lift(c):
        return FFElem(K, K.embed(c.v, c.field)) if isinstance(c, FFElem) else c

    cols = []
    for k in range(dim):
        basis_el = FFElem(K, q ** k)
        cols.append(digits(f(basis_el, lift).v))
    rows = [[cols[k][i] for k in range(dim)] for i in range(dim)]
    null = ff_nullspace(Fq, rows, dim)
    out = [sum(v[k] * q ** k for k in range(dim)) for v in null]
    with _KLOCK:
        _KCACHE[key] = tuple(out)
    return out


def _code(c):
    return c.v if isinstance(c, FFElem) else repr(c)


def _constants(K: FiniteField) -> FiniteField:
    f = K
    while f.base is not None and f.order != K.q:
        f = f.base
    if f.order != K.q:
        raise DomainError("constants field not found in tower")
    return f


def span(K: FiniteField, basis):
    """All F_q-combinations of the given codes (small spaces only)."""
    Fq = _constants(K)
    pts = {0}
    for b in basis:
        pts = {K.add(p, K.mul(c, b)) for p in pts for c in Fq.elements()}
    return sorted(pts)

