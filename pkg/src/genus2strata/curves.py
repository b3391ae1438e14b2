"""Short Weierstrass curves y^2 = x^3 + ax + b over F_{p^k} with exact group law.

The identity o is the point at infinity of the Weierstrass model; it doubles
as the marked point of the Picard normal form used everywhere downstream.
Ships a small registry of named curves whose torsion makes every split/torsion
condition of the classification realizable over the prime field.
"""

from .fields import FiniteField


class Point:
    """Affine point or the identity o (x = y = None)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x = x
        self.y = y

    @property
    def is_identity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.x is None:
            return hash("o")
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_identity:
            return "o"
        return f"({self.x},{self.y})"

    def to_json(self):
        if self.is_identity:
            return "O"
        xs = self.x.c if self.x.F.k > 1 else self.x.c
        ys = self.y.c if self.y.F.k > 1 else self.y.c
        return [list(xs) if isinstance(xs, tuple) else xs,
                list(ys) if isinstance(ys, tuple) else ys]


IDENTITY = Point()


def point_key(P):
    """Deterministic sort key for points (identity first)."""
    if P.is_identity:
        return (0,)
    xs = P.x.c if isinstance(P.x.c, tuple) else (P.x.c,)
    ys = P.y.c if isinstance(P.y.c, tuple) else (P.y.c,)
    return (1,) + xs + ys


class EllipticCurve:
    """y^2 = x^3 + ax + b over a FiniteField, with 4a^3 + 27b^2 != 0."""

    def __init__(self, F, a, b):
        self.F = F
        self.a = F(a)
        self.b = F(b)
        if not (F(4) * self.a ** 3 + F(27) * self.b ** 2):
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")
        self._points = None
        self._ext = {}

    # -- group law -----------------------------------------------------

    def contains(self, P):
        if P.is_identity:
            return True
        return P.y * P.y == P.x ** 3 + self.a * P.x + self.b

    def _require(self, P):
        if not self.contains(P):
            raise ValueError(f"point {P} not on {self}")

    def add(self, P, Q):
        self._require(P)
        self._require(Q)
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        if P.x == Q.x:
            if P.y != Q.y or not P.y:
                return IDENTITY
            s = (self.F(3) * P.x * P.x + self.a) / (self.F(2) * P.y)
        else:
            s = (Q.y - P.y) / (Q.x - P.x)
        x3 = s * s - P.x - Q.x
        y3 = s * (P.x - x3) - P.y
        return Point(x3, y3)

    def neg(self, P):
        if P.is_identity:
            return P
        return Point(P.x, -P.y)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, n, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = IDENTITY
        Q = P
        while n:
            if n & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            n >>= 1
        return R

    # -- point sets ----------------------------------------------------

    def points(self):
        """All rational points, identity first, in a fixed scan order."""
        if self._points is None:
            pts = [IDENTITY]
            for x in self.F.elements():
                rhs = x ** 3 + self.a * x + self.b
                if not rhs:
                    pts.append(Point(x, self.F.zero))
                elif self.F.is_square(rhs):
                    y = self.F.sqrt(rhs)
                    pts.append(Point(x, y))
                    pts.append(Point(x, -y))
            self._points = pts
        return self._points

    def order(self):
        return len(self.points())

    def point_order(self, P):
        n = 1
        Q = P
        while not Q.is_identity:
            Q = self.add(Q, P)
            n += 1
        return n

    def n_torsion(self, n):
        """(points, complete): all rational P with nP = o; complete iff all n^2
        geometric torsion points are already rational."""
        if n < 1:
            raise ValueError("n must be >= 1")
        found = [P for P in self.points() if self.mul(n, P).is_identity]
        return found, len(found) == n * n

    def two_torsion(self):
        return [P for P in self.points() if not P.is_identity and not P.y]

    def point_of_exact_order(self, n):
        for P in self.points():
            if not P.is_identity and self.point_order(P) == n:
                return P
        return None

    def random_point(self, rng):
        pts = self.points()
        return pts[rng.randrange(len(pts))]

    # -- base change -----------------------------------------------------

    def base_extend(self, k):
        """The same curve over F_{p^k} (k >= 1), cached."""
        if self.F.k != 1:
            raise ValueError("base_extend only from a prime-field model")
        if k == 1:
            return self
        if k not in self._ext:
            K = FiniteField(self.F.p, k)
            self._ext[k] = EllipticCurve(K, self.a.c, self.b.c)
        return self._ext[k]

    def lift_point(self, P, E_ext):
        if P.is_identity:
            return IDENTITY
        return Point(P.x.lift_to(E_ext.F), P.y.lift_to(E_ext.F))

    # -- misc ------------------------------------------------------------

    def spec(self):
        return f"{self.F.p}:{self.a.c}:{self.b.c}"

    def __eq__(self, other):
        return (isinstance(other, EllipticCurve) and self.F == other.F
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.F, self.a, self.b))

    def __repr__(self):
        return f"E({self.spec()})" if self.F.k == 1 else f"E/{self.F!r}"


def curve_from_spec(spec):
    """Parse "p:a:b" (decimal) into a prime-field curve."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad curve spec {spec!r}; expected p:a:b")
    p, a, b = (int(t) for t in parts)
    return EllipticCurve(FiniteField(p), a, b)


def velu_3_isogeny(E, T):
    """Quotient by the order-3 subgroup <T>: returns (codomain, point map).

    Codomain coefficients are Velu's, the map is Velu's pointwise form
    phi(P) = (x_P + sum_{Q in K*} (x_{P+Q} - x_Q), same in y); its kernel is
    exactly {o, T, 2T}.
    """
    E._require(T)
    if T.is_identity or not E.mul(3, T).is_identity:
        raise ValueError("T must have exact order 3")
    T2 = E.add(T, T)
    t = E.F(2) * (E.F(3) * T.x * T.x + E.a)
    u = E.F(4) * T.y * T.y
    w = u + T.x * t
    E2 = EllipticCurve(E.F, (E.a - E.F(5) * t).c, (E.b - E.F(7) * w).c)
    kernel = (IDENTITY, T, T2)

    def phi(P):
        E._require(P)
        if P in kernel:
            return IDENTITY
        PT = E.add(P, T)
        PT2 = E.add(P, T2)
        x = P.x + (PT.x - T.x) + (PT2.x - T2.x)
        y = P.y + (PT.y - T.y) + (PT2.y - T2.y)
        Q = Point(x, y)
        E2._require(Q)
        return Q

    return E2, phi


# -- registry ------------------------------------------------------------

_REGISTRY_SPECS = {
    # full rational 2-torsion plus points of exact order 4
    "p5_i": "5:4:0",
    # rational order-3 points, full rational 2-torsion (N = 12)
    "p7_c1": "7:0:1",
    # cyclic of order 12: exact order-4 points with free doubling targets
    "p11_c1": "11:0:1",
    # rational order-3 points plus points of order 7 and 21 (N = 21)
    "p13_c4": "13:0:4",
    # order-3 and order-9/18 points, one rational 2-torsion, sqrt(-1) = 4
    "p17_c1": "17:0:1",
    # main lab curve: p = 1 mod 4, sqrt(-1) = 10, full 2-torsion, order 104
    "p101_i": "101:100:0",
}

_registry_cache = {}


def registry_names():
    return list(_REGISTRY_SPECS)


def registry_curve(name):
    """Named test curve, or parse name as a "p:a:b" spec."""
    import os

    specs = dict(_REGISTRY_SPECS)
    override = os.environ.get("GENUS2STRATA_REGISTRY")
    if override:
        import json

        with open(override) as fh:
            specs.update(json.load(fh))
    if name in specs:
        if name not in _registry_cache:
            _registry_cache[name] = curve_from_spec(specs[name])
        return _registry_cache[name]
    return curve_from_spec(name)


def registry_features(name):
    """Computed torsion features used by instance builders."""
    E = registry_curve(name)
    feats = {
        "order": E.order(),
        "two_torsion": E.two_torsion(),
        "order3": E.point_of_exact_order(3),
        "order4": E.point_of_exact_order(4),
        "sqrt_minus_one": E.F.sqrt(E.F(-1)),
    }
    return feats
