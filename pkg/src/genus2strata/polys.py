"""Univariate polynomial helpers over a FiniteField.

Polynomials are plain lists/tuples of Fq coefficients, ascending degree,
with no trailing zeros ([] is the zero polynomial).  Includes exact root
finding in F_{p^k} via squarefree/distinct-degree/Cantor-Zassenhaus.
"""

import random


def trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def deg(a):
    return len(a) - 1


def add(a, b):
    if not a and not b:
        return []
    n = max(len(a), len(b))
    F = a[0].F if a else b[0].F
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(x + y)
    return trim(out)


def neg(a):
    return [-x for x in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, s):
    return trim([x * s for x in a])


def mul(a, b):
    if not a or not b:
        return []
    F = a[0].F
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return trim(out)


def divmod_poly(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = deg(b)
    if deg(a) < db:
        return [], trim(a)
    inv = b[-1].inverse()
    F = b[-1].F
    q = [F.zero] * (deg(a) - db + 1)
    for i in range(deg(a) - db, -1, -1):
        c = a[i + db] * inv
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] = a[i + j] - c * b[j]
    return trim(q), trim(a[:db])


def mod(a, b):
    return divmod_poly(a, b)[1]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b)
    return monic(a)


def monic(a):
    if not a:
        return []
    return scale(a, a[-1].inverse())


def eval_poly(a, x):
    """Horner evaluation; x may live in an extension of the coefficient field."""
    F = x.F
    acc = F.zero
    for c in reversed(a):
        acc = acc * x + (c.lift_to(F) if c.F.k == 1 and F.k > 1 else c)
    return acc


def lift(a, ext):
    return [c.lift_to(ext) for c in a]


def powmod(a, e, m):
    F = m[0].F
    result = [F.one]
    base = mod(a, m)
    while e:
        if e & 1:
            result = mod(mul(result, base), m)
        base = mod(mul(base, base), m)
        e >>= 1
    return result


def derivative(a):
    if len(a) <= 1:
        return []
    F = a[0].F
    return trim([a[i] * F(i) for i in range(1, len(a))])


def squarefree_part(a):
    a = monic(a)
    d = derivative(a)
    if not d:
        # a is a p-th power: a(x) = g(x^p); recurse on g with rooted coefficients
        F = a[0].F
        p = F.p
        g = [a[i] ** (F.order // p) for i in range(0, len(a), p)]
        return squarefree_part(trim(g))
    return divmod_poly(a, gcd(a, d))[0]


def roots_in_field(a, K, rng=None):
    """All roots of a (coeffs over F_p or K) in the field K, as a sorted list.

    Multiplicities are ignored; use ord computations for those.
    """
    rng = rng or random.Random(0xD1CE)
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial")
    if a and a[0].F != K:
        a = lift(a, K)
    a = squarefree_part(a)
    if deg(a) < 1:
        return []
    # linear-root part: gcd(a, x^q - x)
    x = [K.zero, K.one]
    xq = powmod(x, K.order, a)
    lin = gcd(sub(xq, x), a)
    out = []
    _split_linear(lin, K, rng, out)
    return sorted(out, key=lambda e: e.c if K.k > 1 else (e.c,))


def _split_linear(f, K, rng, out):
    # f = product of distinct monic linear factors over K
    f = monic(f)
    d = deg(f)
    if d <= 0:
        return
    if d == 1:
        out.append(-f[0])
        return
    exp = (K.order - 1) // 2
    while True:
        r = K.random(rng)
        h = powmod([r, K.one], exp, f)
        g = gcd(sub(h, [K.one]), f)
        if 0 < deg(g) < d:
            _split_linear(g, K, rng, out)
            _split_linear(divmod_poly(f, g)[0], K, rng, out)
            return


def from_ints(F, coeffs):
    return trim([F(c) for c in coeffs])
