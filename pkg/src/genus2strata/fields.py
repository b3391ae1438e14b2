"""Exact arithmetic in F_{p^k}.

Elements are coefficient tuples over F_p in the polynomial basis of an
explicit monic irreducible modulus (k = 1 uses a plain residue).  All
operations are exact; nothing in this package ever rounds.

Curve specs use the wire formats "p:a:b" (prime field, decimal) and
"p:k:c0,...,ck" for an extension modulus c0 + c1 x + ... + ck x^k.
"""

import itertools

_modulus_cache = {}


def _ipoly_trim(c):
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _ipoly_mulmod(a, b, mod, p):
    # a, b reduced mod `mod` (monic, tuple of ints), result reduced
    k = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, k - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(k):
                res[i - k + j] = (res[i - k + j] - c * mod[j]) % p
    return tuple(_ipoly_trim(res[:k] if len(res) > k else res))


def _ipoly_powmod(a, e, mod, p):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _ipoly_mulmod(result, base, mod, p)
        base = _ipoly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(mod, p):
    # Rabin test: x^(p^k) == x mod f, and x^(p^(k/l)) - x coprime to f
    k = len(mod) - 1
    x = (0, 1)
    if _ipoly_powmod(x, p ** k, mod, p) != x:
        return False
    for ell in {d for d in range(2, k + 1) if k % d == 0 and _is_prime(d)}:
        h = _ipoly_powmod(x, p ** (k // ell), mod, p)
        diff = _ipoly_sub(h, x, p)
        if _ipoly_gcd(diff, mod, p) != (1,):
            return False
    return True


def _ipoly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return tuple(_ipoly_trim([c % p for c in out]))


def _ipoly_gcd(a, b, p):
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, _ipoly_mod(a, b, p)
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple((c * inv) % p for c in a)


def _ipoly_mod(a, b, p):
    a = list(a)
    db, dn = len(b) - 1, len(a) - 1
    inv = pow(b[-1], p - 2, p)
    while dn >= db and a:
        c = (a[-1] * inv) % p
        if c:
            for j in range(db + 1):
                a[dn - db + j] = (a[dn - db + j] - c * b[j]) % p
        a.pop()
        dn -= 1
        while a and a[-1] == 0:
            a.pop()
            dn -= 1
    return tuple(a)


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, int(n ** 0.5) + 1):
        if n % q == 0:
            return False
    return True


def default_modulus(p, k):
    """Deterministic monic irreducible of degree k over F_p."""
    if k == 1:
        return (0, 1)
    key = (p, k)
    if key in _modulus_cache:
        return _modulus_cache[key]
    # prefer binomials/trinomials, scanned in a fixed order
    for c in range(1, p):
        cand = (c,) + (0,) * (k - 1) + (1,)
        if _is_irreducible(cand, p):
            _modulus_cache[key] = cand
            return cand
    for d in range(1, p):
        for c in range(p):
            cand = (c, d) + (0,) * (k - 2) + (1,)
            if _is_irreducible(cand, p):
                _modulus_cache[key] = cand
                return cand
    raise ValueError(f"no irreducible modulus found for p={p}, k={k}")


class FiniteField:
    """F_{p^k} with p prime, p >= 5, and an explicit modulus for k > 1."""

    def __init__(self, p, k=1, modulus=None):
        if not _is_prime(p) or p < 5:
            raise ValueError("p must be a prime >= 5")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.p = p
        self.k = k
        if k == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = tuple(c % p for c in (modulus or default_modulus(p, k)))
            if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _is_irreducible(self.modulus, p):
                raise ValueError("modulus is not irreducible")
        self.order = p ** k
        self.zero = Fq(self, 0 if k == 1 else ())
        self.one = Fq(self, 1 if k == 1 else (1,))

    def __call__(self, v):
        if isinstance(v, Fq):
            if v.F is self:
                return v
            if v.F.p != self.p:
                raise ValueError("cannot coerce between different characteristics")
            if v.F.k == 1:
                return self(v.c)
            raise ValueError("cannot coerce between extension fields")
        if isinstance(v, int):
            r = v % self.p
            return Fq(self, r if self.k == 1 else ((r,) if r else ()))
        if isinstance(v, (tuple, list)):
            c = tuple(x % self.p for x in v)
            while c and c[-1] == 0:
                c = c[:-1]
            if len(c) > self.k:
                raise ValueError("coefficient tuple too long")
            return Fq(self, c[0] if self.k == 1 and c else (0 if self.k == 1 else c))
        raise TypeError(f"cannot coerce {v!r}")

    def elements(self):
        if self.k == 1:
            for v in range(self.p):
                yield self(v)
        else:
            for tup in itertools.product(range(self.p), repeat=self.k):
                yield self(tup)

    def random(self, rng):
        if self.k == 1:
            return self(rng.randrange(self.p))
        return self(tuple(rng.randrange(self.p) for _ in range(self.k)))

    def gen(self):
        """The class of x for k > 1, else 1."""
        return self.one if self.k == 1 else self((0, 1))

    def is_square(self, a):
        a = self(a)
        if not a:
            return True
        return a ** ((self.order - 1) // 2) == self.one

    def sqrt(self, a):
        """A square root of a, or None if a is not a square (q odd)."""
        a = self(a)
        if not a:
            return self.zero
        q = self.order
        if not self.is_square(a):
            return None
        if q % 4 == 3:
            return a ** ((q + 1) // 4)
        # Tonelli-Shanks over F_q
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = next(e for e in self.elements() if e and not self.is_square(e))
        m, c, u, r = s, z ** t, a ** t, a ** ((t + 1) // 2)
        while u != self.one:
            i, u2 = 0, u
            while u2 != self.one:
                u2, i = u2 * u2, i + 1
            b = c ** (2 ** (m - i - 1))
            m, c, u, r = i, b * b, u * b * b, r * b
        return r

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and other.p == self.p
                and other.k == self.k and other.modulus == self.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"F_{self.p}" if self.k == 1 else f"F_{self.p}^{self.k}"

    def spec(self):
        if self.k == 1:
            return str(self.p)
        return f"{self.p}:{self.k}:" + ",".join(str(c) for c in self.modulus)


class Fq:
    """An element of a FiniteField; immutable and hashable."""

    __slots__ = ("F", "c")

    def __init__(self, F, c):
        self.F = F
        self.c = c

    def _coerce(self, other):
        if isinstance(other, Fq):
            if other.F is self.F or other.F == self.F:
                return other
            if other.F.k == 1 and other.F.p == self.F.p:
                return self.F(other.c)
            return None
        if isinstance(other, int):
            return self.F(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.F
        if F.k == 1:
            return Fq(F, (self.c + o.c) % F.p)
        a, b = self.c, o.c
        n = max(len(a), len(b))
        out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % F.p
               for i in range(n)]
        while out and out[-1] == 0:
            out.pop()
        return Fq(F, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        F = self.F
        if F.k == 1:
            return Fq(F, (-self.c) % F.p)
        return Fq(F, tuple((-x) % F.p for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.F
        if F.k == 1:
            return Fq(F, (self.c * o.c) % F.p)
        return Fq(F, _ipoly_mulmod(self.c, o.c, F.modulus, F.p))

    __rmul__ = __mul__

    def inverse(self):
        F = self.F
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if F.k == 1:
            return Fq(F, pow(self.c, F.p - 2, F.p))
        return self ** (F.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        F = self.F
        if F.k == 1:
            return Fq(F, pow(self.c, e, F.p))
        return Fq(F, _ipoly_powmod(self.c, e, F.modulus, F.p))

    def __bool__(self):
        return bool(self.c) if self.F.k == 1 else len(self.c) > 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.F.p, self.F.k, self.c))

    def __repr__(self):
        if self.F.k == 1:
            return str(self.c)
        return "(" + ",".join(str(x) for x in (self.c or (0,))) + ")"

    def lift_to(self, ext):
        """Image in an extension of the same prime field (k = 1 source only)."""
        if self.F.k != 1:
            raise ValueError("can only lift prime-field elements")
        return ext(self.c)
