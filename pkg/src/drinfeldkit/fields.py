"""Finite fields as towers over a prime field.

Every element is an ``int`` code.  A field built over ``base`` with a monic
modulus of degree ``n`` encodes ``c_0 + c_1 X + ... + c_{n-1} X^{n-1}`` as
``sum(c_i * base.order**i)``.  Unwinding the tower, the code of any element is
its coordinate vector over F_p written in base ``p``, so addition is always
digit-wise mod ``p`` (XOR when ``p == 2``).

The field F_q of constants is itself a :class:`FiniteField`; residue fields
A/p and their extensions sit on top of it.  ``field.q`` is always the order of
that constants field, and ``field.frob(x, i)`` means ``x**(q**i)``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

__all__ = [
    "FiniteField",
    "FFElem",
    "GF",
    "prime_field",
    "DomainError",
]

# log/antilog tables are built below this order; above it we multiply polynomials
TABLE_LIMIT = 1 << 16
# full addition tables for odd characteristic below this order
ADD_TABLE_LIMIT = 800


class DomainError(ArithmeticError):
    """A mathematical precondition was violated (division by zero, singular input, ...)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """Finite field ``base[X]/(modulus)``, or the prime field F_p when ``base is None``."""

    def __init__(self, base: "FiniteField | None", modulus=None, *, p: int | None = None,
                 q: int | None = None, name: str | None = None):
        self.base = base
        if base is None:
            if p is None or not _is_prime(p):
                raise ValueError(f"prime field needs a prime p, got {p}")
            self.p = p
            self.degree = 1
            self.order = p
            self.modulus = None
        else:
            modulus = tuple(modulus)
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            self.p = base.p
            self.modulus = modulus
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
        # order of the constants field F_q; extensions inherit it from their base
        self.q = q if q is not None else (self.p if base is None else base.q)
        self.name = name
        self.abs_degree = 1 if base is None else base.abs_degree * self.degree  # over F_p
        self._setup_tables()

    # -- construction helpers -------------------------------------------------
    def _setup_tables(self):
        p = self.p
        self._add = None
        if p != 2 and self.order <= ADD_TABLE_LIMIT and self.base is not None:
            digits = [self._pdigits(c) for c in range(self.order)]
            w = self.abs_degree
            pw = [p ** i for i in range(w)]
            tab = []
            for a in range(self.order):
                da = digits[a]
                row = []
                for b in range(self.order):
                    db = digits[b]
                    row.append(sum(((da[i] + db[i]) % p) * pw[i] for i in range(w)))
                tab.append(row)
            self._add = tab
        self._log = self._exp = None
        if self.base is not None and self.order <= TABLE_LIMIT:
            self._build_log_tables()

    def _pdigits(self, c: int) -> list[int]:
        out = []
        for _ in range(self.abs_degree):
            out.append(c % self.p)
            c //= self.p
        return out

    def _build_log_tables(self):
        n = self.order - 1
        factors = _prime_factors(n)
        for g in range(2, self.order) if self.order > 2 else [1]:
            if all(self._pow_slow(g, n // f) != 1 for f in factors):
                break
        else:  # pragma: no cover - every finite field has a generator
            raise RuntimeError("no primitive element found")
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log
        self.generator = g

    # -- digit helpers for tower elements --------------------------------------
    def to_coeffs(self, x: int) -> list[int]:
        """Coordinates of ``x`` over the immediate base field (ascending)."""
        b = self.base.order
        out = []
        for _ in range(self.degree):
            out.append(x % b)
            x //= b
        return out

    def from_coeffs(self, cs) -> int:
        b = self.base.order
        x = 0
        for c in reversed(list(cs)):
            x = x * b + c
        return x

    # -- arithmetic on codes ----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        p, r, m = self.p, 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.base is None:
            return (-a) % self.p
        p, r, m = self.p, 0, 1
        while a:
            r += ((-(a % p)) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.base is None:
            return (a * b) % self.p
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        B = self.base
        x, y = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.degree - 1)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] = B.add(prod[i + j], B.mul(xi, yj))
        mod = self.modulus
        n = self.degree
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n):
                    if mod[i]:
                        prod[k - n + i] = B.sub(prod[k - n + i], B.mul(c, mod[i]))
                prod[k] = 0
        return self.from_coeffs(prod[:n])

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.base is None:
            return pow(a, e, self.p)
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        e %= self.order - 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero in a finite field")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, i: int = 1) -> int:
        """``a ** (q ** i)`` with q the order of the constants field."""
        if a == 0 or self.order == self.q:
            return a
        k = (self.q ** i) % (self.order - 1) if self.order > 1 else 1
        return self.pow(a, k if k else self.order - 1)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` (i.e. ``n mod p``)."""
        return n % self.p

    def embed_base(self, c: int) -> int:
        """Image of a base-field code (a constant polynomial)."""
        return c

    def embed(self, c: int, from_field: "FiniteField") -> int:
        """Embed a code of a subfield lying lower in this tower."""
        if from_field is self:
            return c
        f = self
        while f is not None and f is not from_field:
            f = f.base
        if f is None:
            raise DomainError("field is not a subfield in this tower")
        return c  # constants sit in digit 0 at every level

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    def __call__(self, x) -> "FFElem":
        if isinstance(x, FFElem):
            return FFElem(self, self.embed(x.v, x.field))
        if isinstance(x, (list, tuple)):
            return FFElem(self, self.from_coeffs([int(c) for c in x]))
        return FFElem(self, int(x) % self.order if x >= 0 else self.from_int(x))

    @property
    def zero(self) -> "FFElem":
        return FFElem(self, 0)

    @property
    def one(self) -> "FFElem":
        return FFElem(self, 1)

    def from_fq(self, c: int) -> "FFElem":
        return FFElem(self, c)

    # -- descriptors -----------------------------------------------------------
    def descriptor(self) -> str:
        if self.base is None:
            return f"Fq({self.p},1,-)"
        if self.base.base is None:
            mod = "+".join(f"{c}*z^{i}" for i, c in enumerate(self.modulus) if c)
            return f"Fq({self.p},{self.degree},{mod})"
        return f"Ext[{self.base.descriptor()};deg={self.degree};mod={list(self.modulus)}]"

    def __repr__(self):
        return self.name or self.descriptor()

    @property
    def var(self) -> str:
        """Generator name: z over the prime field, z2, z3, ... further up the tower."""
        depth, f = 0, self
        while f.base is not None:
            depth += 1
            f = f.base
        return "z" if depth == 1 else f"z{depth}"

    def format(self, a: int) -> str:
        """Text form: an integer mod p, or a polynomial in this level's generator."""
        if self.base is None:
            return str(a)
        cs = self.to_coeffs(a)
        terms = []
        for i, c in enumerate(cs):
            if not c:
                continue
            cstr = self.base.format(c)
            if i == 0:
                terms.append(cstr)
                continue
            if "+" in cstr:
                cstr = f"({cstr})"
            mon = self.var if i == 1 else f"{self.var}^{i}"
            terms.append(mon if cstr == "1" else f"{cstr}*{mon}")
        return "+".join(terms) if terms else "0"

    def parse(self, s: str) -> int:
        s = s.strip().replace(" ", "")
        if self.base is None:
            return int(s) % self.p
        while s.startswith("(") and _matching(s, 0) == len(s) - 1:
            s = s[1:-1]
        cs = [0] * self.degree
        var = self.var
        for term in _split_top(s, "+"):
            if not term:
                continue
            coef, mon = "1", term
            star = _split_top(term, "*")
            if len(star) > 1:
                coef, mon = "*".join(star[:-1]), star[-1]
            name, _, power = mon.partition("^")
            if name != var:
                cs[0] = self.base.add(cs[0], self.base.parse(term))
                continue
            k = int(power) if power else 1
            if k >= self.degree:
                raise ValueError(f"{var}-power {k} out of range for {self!r}")
            cs[k] = self.base.add(cs[k], self.base.parse(coef))
        return self.from_coeffs(cs)

    # -- extension -------------------------------------------------------------
    def extension(self, m: int) -> "FiniteField":
        """A degree-``m`` extension built over this field (deterministic modulus)."""
        if m == 1:
            return self
        return _extension_cache(self, m)

    def minimal_polynomial_over_fq(self, a: int) -> list[int]:
        """Minimal polynomial of ``a`` over the constants field F_q, as F_q codes ascending."""
        orbit = [a]
        x = self.frob(a)
        while x != a:
            orbit.append(x)
            x = self.frob(x)
        poly = [1]
        for r in orbit:
            new = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] = self.add(new[i + 1], c)
                new[i] = self.sub(new[i], self.mul(c, r))
            poly = new
        return poly


@lru_cache(maxsize=None)
def _extension_cache(field: FiniteField, m: int) -> FiniteField:
    mod = first_irreducible(field, m)
    return FiniteField(field, mod, q=field.q)


def _matching(s: str, i: int) -> int:
    depth = 0
    for j in range(i, len(s)):
        depth += {"(": 1, ")": -1}.get(s[j], 0)
        if depth == 0:
            return j
    raise ValueError(f"unbalanced parentheses in {s!r}")


def _split_top(s: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


class FFElem:
    """Immutable finite-field element with operator overloading."""

    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is self.field:
                return other.v
            try:
                return self.field.embed(other.v, other.field)
            except DomainError:
                return NotImplemented
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.add(self.v, b))

    __radd__ = __add__

    def __sub__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.sub(self.v, b))

    def __rsub__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.sub(b, self.v))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.v))

    def __mul__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.mul(self.v, b))

    __rmul__ = __mul__

    def __truediv__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.div(self.v, b))

    def __rtruediv__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.div(b, self.v))

    def __pow__(self, e: int):
        return FFElem(self.field, self.field.pow(self.v, e))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.v))

    def frob(self, i: int = 1):
        return FFElem(self.field, self.field.frob(self.v, i))

    def is_zero(self) -> bool:
        return self.v == 0

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, FFElem):
            return self.field is o.field and self.v == o.v or (
                self.field is not o.field and self._coerce(o) == self.v)
        if isinstance(o, int):
            return self.v == self.field.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.v))

    def __repr__(self):
        return self.field.format(self.v)

    @property
    def parent(self):
        return self.field


def _poly_irreducible_over(field: FiniteField, f: list[int]) -> bool:
    """Ben-Or irreducibility test for a monic polynomial over ``field`` (codes ascending)."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    Q = field.order

    def mulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = field.add(prod[i + j], field.mul(x, y))
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n):
                    if f[i]:
                        prod[k - n + i] = field.sub(prod[k - n + i], field.mul(c, f[i]))
        out = prod[:n] + [0] * max(0, n - len(prod))
        return out

    def powmod(a, e):
        r = [1] + [0] * (n - 1)
        while e:
            if e & 1:
                r = mulmod(r, a)
            a = mulmod(a, a)
            e >>= 1
        return r

    def gcd(a, b):
        a = _trim(a)
        b = _trim(b)
        while b:
            a = _polymod(field, a, b)
            a, b = b, a
        return a

    x = [0, 1] + [0] * (n - 2)
    xp = x
    for _ in range(1, n // 2 + 1):
        xp = powmod(xp, Q)
        diff = list(xp)
        diff[1] = field.sub(diff[1], 1)
        if len(gcd(list(f), diff)) > 1:
            return False
    return True


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(field, a, b):
    a = list(a)
    db = len(b) - 1
    inv = field.inv(b[-1])
    while len(a) - 1 >= db and a:
        c = field.mul(a[-1], inv)
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            if bi:
                a[shift + i] = field.sub(a[shift + i], field.mul(c, bi))
        a = _trim(a)
    return a


def first_irreducible(field: FiniteField, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``n`` over ``field`` (graded lex on codes)."""
    for tail in itertools.product(range(field.order), repeat=n):
        f = list(reversed(tail)) + [1]
        if f[0] == 0:
            continue
        if _poly_irreducible_over(field, f):
            return tuple(f)
    raise RuntimeError("no irreducible found")  # pragma: no cover


@lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    return FiniteField(None, p=p, name=f"F_{p}")


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """The constants field F_q, q = p**e.

    For ``e > 1`` the modulus defaults to the first irreducible of degree ``e``
    over F_p in graded lexicographic order, so printed elements are reproducible.
    """
    return _gf(p, e, None if modulus is None else tuple(modulus))


@lru_cache(maxsize=None)
def _gf(p: int, e: int, modulus) -> FiniteField:
    Fp = prime_field(p)
    if e == 1:
        return Fp
    mod = tuple(modulus) if modulus is not None else first_irreducible(Fp, e)
    if len(mod) != e + 1 or not _poly_irreducible_over(Fp, list(mod)):
        raise ValueError(f"modulus {mod} is not irreducible of degree {e}")
    return FiniteField(Fp, mod, q=p ** e, name=f"F_{p**e}")
