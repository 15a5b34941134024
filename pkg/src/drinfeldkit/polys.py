"""The ring A = F_q[T], its fraction field F = F_q(T) and residue rings A/n."""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .fields import DomainError, FiniteField, FFElem

__all__ = [
    "Poly",
    "RationalFunc",
    "ResidueRing",
    "is_irreducible",
    "enumerate_monic_irreducibles",
    "monic_polys",
    "factor",
    "NEG_INF",
]


class _NegInf:
    """deg(0): compares below every integer, absorbs addition."""

    def __lt__(self, o):
        return not isinstance(o, _NegInf)

    def __le__(self, o):
        return True

    def __gt__(self, o):
        return False

    def __ge__(self, o):
        return isinstance(o, _NegInf)

    def __add__(self, o):
        return self

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, _NegInf):
            raise ArithmeticError("-inf - -inf")
        return self

    def __neg__(self):
        return float("inf")

    def __eq__(self, o):
        return isinstance(o, _NegInf)

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


def same_field(K, L) -> bool:
    return K is L or (K.order == L.order and K.descriptor() == L.descriptor())


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Element of F_q[T]; coefficients are F_q codes, ascending in T."""

    __slots__ = ("F", "c")

    def __init__(self, F: FiniteField, coeffs=()):
        self.F = F
        self.c = _trim(coeffs)

    # -- constructors ------------------------------------------------------------
    @classmethod
    def T(cls, F, k: int = 1) -> "Poly":
        return cls(F, (0,) * k + (1,))

    @classmethod
    def const(cls, F, c: int) -> "Poly":
        return cls(F, (c,))

    @classmethod
    def parse(cls, F: FiniteField, s: str) -> "Poly":
        """Parse ``c*T^k + ...``; coefficients are integers mod p or ``(z-polys)``."""
        s = s.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial literal")
        out = [0]
        for raw in _split_terms(s):
            sign = 1
            if raw.startswith("-"):
                sign, raw = -1, raw[1:]
            m = re.fullmatch(r"(?:(\(.*\)|[^*T]+)\*?)?(T(?:\^(\d+))?)?", raw)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad term {raw!r}")
            coef = F.parse(m.group(1)) if m.group(1) is not None else 1
            if sign < 0:
                coef = F.neg(coef)
            k = 0 if m.group(2) is None else (1 if m.group(3) is None else int(m.group(3)))
            out += [0] * (k + 1 - len(out))
            out[k] = F.add(out[k], coef)
        return cls(F, out)

    # -- basic properties ----------------------------------------------------------
    @property
    def deg(self):
        return len(self.c) - 1 if self.c else NEG_INF

    def degree(self):
        return self.deg

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def abs(self) -> int:
        """|a| = q^deg a, |0| = 0."""
        return 0 if not self.c else self.F.q ** (len(self.c) - 1)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def coeffs(self):
        return list(self.c)

    # -- arithmetic ----------------------------------------------------------------
    def _wrap(self, o):
        if isinstance(o, Poly):
            return o
        if isinstance(o, int):
            return Poly(self.F, (self.F.from_int(o),))
        if isinstance(o, FFElem) and o.field is self.F:
            return Poly(self.F, (o.v,))
        return NotImplemented

    def __add__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        F = self.F
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = F.add(out[i], x)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.F, [self.F.neg(x) for x in self.c])

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

    def __mul__(self, o):
        if isinstance(o, (RationalFunc,)):
            return NotImplemented
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        F = self.F
        a, b = self.c, o.c
        if not a or not b:
            return Poly(F)
        if F.base is None and min(len(a), len(b)) > 6:
            return Poly(F, _kronecker_mul(a, b, F.p))
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        return Poly(self.F, [self.F.mul(c, x) for x in self.c])

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k."""
        return Poly(self.F, (0,) * k + self.c) if self.c else self

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise DomainError("negative power of a polynomial; use RationalFunc")
        r = Poly(self.F, (1,))
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, o):
        o = self._wrap(o)
        if not o.c:
            raise DomainError("polynomial division by zero")
        F = self.F
        a = list(self.c)
        b = o.c
        db = len(b) - 1
        inv = F.inv(b[-1])
        if len(a) - 1 < db:
            return Poly(F), Poly(F, a)
        quo = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                c = F.mul(c, inv)
                quo[k - db] = c
                for i in range(db + 1):
                    if b[i]:
                        a[k - db + i] = F.sub(a[k - db + i], F.mul(c, b[i]))
        return Poly(F, quo), Poly(F, a[:db])

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __truediv__(self, o):
        return RationalFunc(self, o)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, o: "Poly"):
        """Return (g, s, t) with g = s*self + t*o monic."""
        F = self.F
        r0, r1 = self, o
        s0, s1 = Poly(F, (1,)), Poly(F)
        t0, t1 = Poly(F), Poly(F, (1,))
        while r1:
            qq, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qq * s1
            t0, t1 = t1, t0 - qq * t1
        if not r0:
            return r0, s0, t0
        inv = F.inv(r0.lc())
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.c)][1:])

    def __call__(self, x):
        """Evaluate at ``x`` (any object supporting + and * with F_q constants)."""
        r = None
        for c in reversed(self.c):
            r = _const_like(x, c, self.F) if r is None else r * x + _const_like(x, c, self.F)
        return _const_like(x, 0, self.F) if r is None else r

    def frobenius(self, i: int = 1) -> "Poly":
        """a ↦ a^(q^i): substitute T ↦ T^(q^i) and twist coefficients."""
        if not self.c:
            return self
        F = self.F
        step = F.q ** i
        out = [0] * ((len(self.c) - 1) * step + 1)
        for k, x in enumerate(self.c):
            out[k * step] = F.frob(x, i)
        return Poly(F, out)

    frob = frobenius

    def ord_at(self, p: "Poly") -> int:
        """Exponent of the prime p in self (self ≠ 0)."""
        if not self.c:
            raise DomainError("ord of zero")
        k, a = 0, self
        while True:
            qq, r = divmod(a, p)
            if r:
                return k
            a, k = qq, k + 1

    def eval_mod(self, field, t) -> int:
        """Evaluate at the code ``t`` of a finite field containing F_q."""
        r = 0
        for c in reversed(self.c):
            r = field.add(field.mul(r, t), c)
        return r

    # -- comparison / hashing ----------------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.c == o.c and same_field(self.F, o.F)
        if isinstance(o, int):
            return self.c == _trim((self.F.from_int(o),))
        return NotImplemented

    def __hash__(self):
        return hash((self.F.order, self.c))

    def sort_key(self):
        """Graded lexicographic order: by degree, then coefficients from the top."""
        return (len(self.c), tuple(reversed(self.c)))

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def __repr__(self):
        return self.format()

    def format(self, var: str = "T") -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            x = self.c[k]
            if not x:
                continue
            cs = self.F.format(x)
            if self.F.base is not None and "+" in cs:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                mon = var if k == 1 else f"{var}^{k}"
                terms.append(mon if cs == "1" else f"{cs}*{mon}")
        return "+".join(terms)


def _kronecker_mul(a, b, p):
    """Product of coefficient lists over F_p via one big-integer multiplication."""
    bits = (min(len(a), len(b)) * (p - 1) ** 2).bit_length() + 1
    A = int("".join(format(c, f"0{bits}b") for c in reversed(a)), 2)
    B = int("".join(format(c, f"0{bits}b") for c in reversed(b)), 2)
    n = len(a) + len(b) - 1
    s = format(A * B, "b").rjust(n * bits, "0")
    out = [int(s[i:i + bits], 2) % p for i in range(0, n * bits, bits)]
    out.reverse()
    return out


def _split_terms(s: str):
    """Split on top-level '+' and '-' (keeping '-' with its term)."""
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur:
            out.append(cur)
            cur = "-" if ch == "-" else ""
            continue
        cur += ch
    if cur:
        out.append(cur)
    return out


def _const_like(x, c: int, F: FiniteField):
    if hasattr(x, "constant"):
        return x.constant(c)
    if isinstance(x, FFElem):
        return FFElem(x.field, c)
    if isinstance(x, Poly):
        return Poly(F, (c,))
    if isinstance(x, RationalFunc):
        return RationalFunc(Poly(F, (c,)), Poly(F, (1,)))
    raise TypeError(f"cannot evaluate a polynomial at {type(x).__name__}")


class RationalFunc:
    """Element num/den of F = F_q(T), reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced=False):
        if isinstance(num, RationalFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        if den is None:
            den = Poly(num.F, (1,))
        if isinstance(den, int):
            den = Poly(num.F, (num.F.from_int(den),))
        if not den.c:
            raise DomainError("rational function with zero denominator")
        if not _reduced:
            g = num.gcd(den)
            if g.deg > 0:
                num, den = num // g, den // g
            lc = den.c[-1]
            if lc != 1:
                inv = num.F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def F(self):
        return self.num.F

    @classmethod
    def from_poly(cls, a: Poly) -> "RationalFunc":
        return cls(a, Poly(a.F, (1,)), _reduced=True)

    def constant(self, c: int) -> "RationalFunc":
        return RationalFunc(Poly(self.F, (c,)), Poly(self.F, (1,)), _reduced=True)

    @property
    def zero(self):
        return self.constant(0)

    @property
    def one(self):
        return self.constant(1)

    def _wrap(self, o):
        if isinstance(o, RationalFunc):
            return o
        if isinstance(o, Poly):
            return RationalFunc.from_poly(o)
        if isinstance(o, int):
            return self.constant(self.F.from_int(o))
        if isinstance(o, FFElem) and o.field is self.F:
            return self.constant(o.v)
        return NotImplemented

    def __add__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunc(self.num + o.num, self.den)
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _reduced=True)

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

    def __mul__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        return RationalFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if not self.num:
            raise DomainError("inverse of zero in F_q(T)")
        return RationalFunc(self.den, self.num)

    def __truediv__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunc(self.num ** e, self.den ** e, _reduced=True)

    def frob(self, i: int = 1) -> "RationalFunc":
        return RationalFunc(self.num.frobenius(i), self.den.frobenius(i), _reduced=True)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def deg(self):
        """deg(num) - deg(den); -inf for zero (so -deg is the valuation at infinity)."""
        return NEG_INF if not self.num else self.num.deg - self.den.deg

    def ord_at(self, p: Poly) -> int:
        if not self.num:
            raise DomainError("ord of zero")
        return self.num.ord_at(p) - self.den.ord_at(p)

    def is_polynomial(self) -> bool:
        return self.den.deg == 0

    def __eq__(self, o):
        o2 = self._wrap(o) if not isinstance(o, RationalFunc) else o
        if o2 is NotImplemented:
            return NotImplemented
        return self.num == o2.num and self.den == o2.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.deg == 0:
            return self.num.format()
        return f"({self.num.format()})/({self.den.format()})"


class ResidueRing:
    """A/n for monic n of degree >= 1; elements are reduced Poly representatives."""

    def __init__(self, n: Poly):
        if not n.is_monic() or n.deg < 1:
            raise DomainError("modulus must be monic of positive degree")
        self.n = n
        self.F = n.F

    def __call__(self, a: Poly) -> Poly:
        return a % self.n

    def elements(self):
        F, d = self.F, self.n.deg
        for cs in itertools.product(range(F.order), repeat=d):
            yield Poly(F, cs)

    def inverse(self, a: Poly) -> Poly:
        g, s, _ = a.xgcd(self.n)
        if g.deg != 0:
            raise DomainError(f"{a} is not a unit mod {self.n}")
        return s % self.n

    def is_unit(self, a: Poly) -> bool:
        return (a % self.n) and a.gcd(self.n).deg == 0

    def units(self):
        return [a for a in self.elements() if a and a.gcd(self.n).deg == 0]

    def unit_count(self) -> int:
        count = 1
        for p, e in factor(self.n):
            pa = p.abs()
            count *= (pa - 1) * pa ** (e - 1)
        return count

    def residue_field(self):
        """A/p as a FiniteField (requires prime modulus); T maps to the code ``q``."""
        if not is_irreducible(self.n):
            raise DomainError(f"{self.n} is not prime")
        return residue_field(self.n)


@lru_cache(maxsize=None)
def residue_field(p: Poly) -> FiniteField:
    """The finite field A/p; the class of T has code ``q`` (or 0 when p = T... handled by reduction)."""
    F = p.F
    if p.deg == 1:
        # A/(T - c) = F_q itself, T ↦ c
        K = F
    else:
        K = FiniteField(F, p.c, q=F.q, name=f"A/({p.format()})")
    return K


def residue_of(a: Poly, p: Poly) -> int:
    """Code of a mod p in residue_field(p)."""
    K = residue_field(p)
    r = a % p
    if p.deg == 1:
        return r[0]
    return K.from_coeffs(list(r.c) + [0] * (p.deg - len(r.c)))


def monic_polys(F: FiniteField, d: int):
    """Monic polynomials of degree exactly d, graded lexicographic order."""
    for tail in itertools.product(range(F.order), repeat=d):
        yield Poly(F, tuple(reversed(tail)) + (1,))


def is_irreducible(a: Poly) -> bool:
    """Rabin's test: a | T^(q^n) - T and gcd(T^(q^(n/r)) - T, a) = 1 for primes r | n."""
    n = a.deg
    if n == NEG_INF or n < 1:
        return False
    if n == 1:
        return True
    F = a.F
    a = a.monic()
    T = Poly.T(F)

    def frob_pow(k):
        x = T
        for _ in range(k):
            x = _powmod(x, F.q, a)
        return x

    for r in _prime_divisors(n):
        x = frob_pow(n // r)
        if (x - T).gcd(a).deg != 0:
            return False
    return (frob_pow(n) - T) % a == Poly(F)


def _powmod(x: Poly, e: int, m: Poly) -> Poly:
    r = Poly(x.F, (1,))
    x = x % m
    while e:
        if e & 1:
            r = (r * x) % m
        x = (x * x) % m
        e >>= 1
    return r


def _prime_divisors(n: int):
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


@lru_cache(maxsize=None)
def _irreducibles(F: FiniteField, d: int) -> tuple:
    return tuple(f for f in monic_polys(F, d) if is_irreducible(f))


def enumerate_monic_irreducibles(F: FiniteField, d: int) -> list[Poly]:
    """All monic irreducibles of degree d over F, graded lexicographic order."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return list(_irreducibles(F, d))


def primes_up_to(F: FiniteField, d: int) -> list[Poly]:
    out = []
    for k in range(1, d + 1):
        out += enumerate_monic_irreducibles(F, k)
    return out


def factor(a: Poly) -> list[tuple[Poly, int]]:
    """Factor into monic primes by trial division (desk-scale degrees only)."""
    if not a:
        raise DomainError("factor of zero")
    a = a.monic()
    out = []
    d = 1
    while a.deg > 0:
        if 2 * d > a.deg:
            out.append((a, 1))
            break
        for p in enumerate_monic_irreducibles(a.F, d):
            e = 0
            while True:
                qq, r = divmod(a, p)
                if r:
                    break
                a, e = qq, e + 1
            if e:
                out.append((p, e))
        d += 1
    out.sort(key=lambda pe: pe[0].sort_key())
    return out
