"""Laurent series in pi = 1/T over F_q, i.e. elements of F_inf, with explicit precision."""

from __future__ import annotations

from .fields import FiniteField
from .polys import Poly, RationalFunc

__all__ = ["LaurentSeries", "PrecisionError", "expand_at_infinity"]


class PrecisionError(ArithmeticError):
    """Raised when a request reads coefficients beyond the known precision."""


class LaurentSeries:
    """sum_i c_i pi^i with all coefficients at exponents < prec known (prec=None: exact).

    Coefficients are stored densely from ``start`` upward; ``start`` need not be the
    valuation (leading zeros are trimmed on construction).
    """

    __slots__ = ("F", "start", "c", "prec")

    def __init__(self, F: FiniteField, start: int, coeffs, prec: int | None = None):
        cs = list(coeffs)
        if prec is not None:
            keep = max(0, prec - start)
            cs = cs[:keep]
        while cs and cs[0] == 0:
            cs.pop(0)
            start += 1
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            start = prec if prec is not None else 0
        self.F, self.start, self.c, self.prec = F, start, tuple(cs), prec

    # -- constructors ----------------------------------------------------------------
    @classmethod
    def zero(cls, F, prec=None):
        return cls(F, 0, (), prec)

    @classmethod
    def one(cls, F, prec=None):
        return cls(F, 0, (1,), prec)

    @classmethod
    def monomial(cls, F, e: int, c: int = 1, prec=None):
        return cls(F, e, (c,), prec)

    @classmethod
    def from_poly(cls, a: Poly, prec=None) -> "LaurentSeries":
        # a = sum a_k T^k = sum a_k pi^{-k}
        if not a:
            return cls.zero(a.F, prec)
        d = a.deg
        return cls(a.F, -d, tuple(reversed(a.c)), prec)

    def constant(self, c: int) -> "LaurentSeries":
        return LaurentSeries(self.F, 0, (c,), self.prec)

    # -- inspection ------------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return not self.c

    def valuation(self):
        """ord_inf; raises PrecisionError if the series is zero to known precision."""
        if not self.c:
            if self.prec is None:
                return float("inf")
            raise PrecisionError(f"valuation unknown: zero up to pi^{self.prec}")
        return self.start

    def abs(self):
        """|x| = q^{-v}, |0| = 0 (as a Fraction)."""
        from fractions import Fraction

        if not self.c and self.prec is None:
            return Fraction(0)
        return Fraction(self.F.q) ** (-self.valuation())

    def __getitem__(self, e: int) -> int:
        if self.prec is not None and e >= self.prec:
            raise PrecisionError(f"coefficient of pi^{e} beyond precision {self.prec}")
        i = e - self.start
        return self.c[i] if 0 <= i < len(self.c) else 0

    def coefficient(self, e: int) -> int:
        return self[e]

    def terms(self):
        """[(exponent, code)] for nonzero known coefficients."""
        return [(self.start + i, x) for i, x in enumerate(self.c) if x]

    def last_exponent(self):
        return self.start + len(self.c) - 1

    # -- arithmetic ------------------------------------------------------------------
    def _wrap(self, o):
        if isinstance(o, LaurentSeries):
            return o
        if isinstance(o, Poly):
            return LaurentSeries.from_poly(o)
        if isinstance(o, RationalFunc):
            return expand_at_infinity(o, self.prec if self.prec is not None else 0)
        if isinstance(o, int):
            return LaurentSeries(self.F, 0, (self.F.from_int(o),))
        return NotImplemented

    @staticmethod
    def _minprec(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        F = self.F
        prec = self._minprec(self.prec, o.prec)
        if not self.c:
            return LaurentSeries(F, o.start, o.c, prec)
        if not o.c:
            return LaurentSeries(F, self.start, self.c, prec)
        lo = min(self.start, o.start)
        hi = max(self.last_exponent(), o.last_exponent())
        if prec is not None:
            hi = min(hi, prec - 1)
        out = []
        for e in range(lo, hi + 1):
            i, j = e - self.start, e - o.start
            x = self.c[i] if 0 <= i < len(self.c) else 0
            y = o.c[j] if 0 <= j < len(o.c) else 0
            out.append(F.add(x, y))
        return LaurentSeries(F, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.F, self.start, [self.F.neg(x) for x in self.c], self.prec)

    def __sub__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        return o + (-self)

    def _horizon(self):
        """Lower bound for the valuation (start when zero-to-precision)."""
        if self.c:
            return self.start
        return self.prec if self.prec is not None else None

    def __mul__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        F = self.F
        # error terms: O(pi^{Na + vb}) and O(pi^{Nb + va})
        cands = []
        va, vb = self._horizon(), o._horizon()
        if self.prec is not None and vb is not None:
            cands.append(self.prec + vb)
        if o.prec is not None and va is not None:
            cands.append(o.prec + va)
        prec = min(cands) if cands else None
        if not self.c or not o.c:
            if prec is None:
                prec = None if (self.prec is None and o.prec is None) else 0
            return LaurentSeries(F, 0, (), prec)
        start = self.start + o.start
        n = len(self.c) + len(o.c) - 1
        if prec is not None:
            n = min(n, max(0, prec - start))
        out = [0] * n
        add, mul = F.add, F.mul
        for i, x in enumerate(self.c):
            if not x or i >= n:
                continue
            for j, y in enumerate(o.c):
                k = i + j
                if k >= n:
                    break
                if y:
                    out[k] = add(out[k], mul(x, y))
        return LaurentSeries(F, start, out, prec)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentSeries":
        return LaurentSeries(self.F, self.start, [self.F.mul(c, x) for x in self.c], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by pi^k."""
        return LaurentSeries(
            self.F, self.start + k, self.c, None if self.prec is None else self.prec + k
        )

    def inverse(self, rel_prec: int | None = None) -> "LaurentSeries":
        """1/x. Relative precision is inherited; an exact input needs ``rel_prec``."""
        if not self.c:
            raise PrecisionError("inverse of a series that is zero to known precision")
        F = self.F
        v = self.start
        if self.prec is None:
            if len(self.c) == 1:
                return LaurentSeries(F, -v, (F.inv(self.c[0]),))
            if rel_prec is None:
                raise PrecisionError("exact inverse of a non-monomial series needs rel_prec")
            n = rel_prec
        else:
            n = self.prec - v
            if rel_prec is not None:
                n = min(n, rel_prec)
        a = list(self.c[:n]) + [0] * max(0, n - len(self.c))
        inv0 = F.inv(a[0])
        b = [0] * n
        for k in range(n):
            s = 1 if k == 0 else 0
            for i in range(1, k + 1):
                if a[i] and b[k - i]:
                    s = F.sub(s, F.mul(a[i], b[k - i]))
            b[k] = F.mul(s, inv0)
        return LaurentSeries(F, -v, b, -v + n)

    def __truediv__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        rel = None
        if o.prec is None and len(o.c) > 1:
            rel = (self.prec - self._horizon()) if self.prec is not None and self.c else None
            if rel is None:
                raise PrecisionError("division of exact series by a non-monomial needs precision")
        return self * o.inverse(rel)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = LaurentSeries.one(self.F)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def frob(self, i: int = 1) -> "LaurentSeries":
        """x^(q^i): Frobenius is additive, so exponents scale by q^i."""
        F = self.F
        m = F.q ** i
        if not self.c:
            return LaurentSeries(F, 0, (), None if self.prec is None else self.prec * m)
        out = [0] * ((len(self.c) - 1) * m + 1)
        for k, x in enumerate(self.c):
            out[k * m] = F.frob(x, i)
        return LaurentSeries(F, self.start * m, out, None if self.prec is None else self.prec * m)

    def truncate(self, prec: int) -> "LaurentSeries":
        if self.prec is not None and prec > self.prec:
            raise PrecisionError(f"cannot raise precision {self.prec} to {prec}")
        return LaurentSeries(self.F, self.start, self.c, prec)

    def with_precision(self, prec: int | None) -> "LaurentSeries":
        """Lower (never raise) the precision; prec=None keeps it."""
        if prec is None:
            return self
        if self.prec is None or prec < self.prec:
            return self.truncate(prec)
        return self

    def agrees_with(self, o: "LaurentSeries", upto: int | None = None) -> bool:
        """Equality on the jointly certified window (exponents < upto if given)."""
        prec = self._minprec(self.prec, o.prec)
        if upto is not None:
            prec = upto if prec is None else min(prec, upto)
        d = self - o
        if prec is None:
            return not d.c
        return all(e >= prec for e, _ in d.terms())

    def __eq__(self, o):
        if not isinstance(o, LaurentSeries):
            o = self._wrap(o)
            if o is NotImplemented:
                return NotImplemented
        return self.start == o.start and self.c == o.c and self.prec == o.prec

    def __hash__(self):
        return hash((self.start, self.c, self.prec))

    def is_polynomial_part_only(self) -> bool:
        return all(e <= 0 for e, _ in self.terms())

    def __repr__(self):
        F = self.F
        parts = []
        for e, x in self.terms():
            cs = F.format(x)
            if F.base is not None and "+" in cs:
                cs = f"({cs})"
            mon = "1" if e == 0 else ("pi" if e == 1 else f"pi^{e}")
            parts.append(mon if (cs == "1" and e != 0) else (cs if e == 0 else f"{cs}*{mon}"))
        body = "+".join(parts) if parts else "0"
        return body if self.prec is None else f"{body}+O(pi^{self.prec})"

    def to_json(self):
        return {
            "terms": [[e, self.F.format(x)] for e, x in self.terms()],
            "valuation": self.start if self.c else None,
            "precision": self.prec,
        }


def expand_at_infinity(x, N: int) -> LaurentSeries:
    """Expand x in F = F_q(T) (or A) as a series in pi = 1/T, correct for exponents < N."""
    if isinstance(x, Poly):
        x = RationalFunc.from_poly(x)
    F = x.F
    num = LaurentSeries.from_poly(x.num)
    if x.den.deg == 0:
        return num.scale(F.inv(x.den.c[0])).truncate(N)
    den = LaurentSeries.from_poly(x.den)
    if not num.c:
        return LaurentSeries.zero(F, N)
    v = num.start - den.start
    rel = max(0, N - v)
    out = num * den.inverse(rel)
    return out.with_precision(N)
