"""Line-bundle classes on an elliptic base via the Abel-Jacobi normal form.

Pic(B) = Z x B: a class is (degree, point), where the point is the group-law
sum of any representing divisor.  Two classes are equal iff both coordinates
agree; tensor adds degrees and points, the dual negates both.  Cohomology is
Riemann-Roch plus the degree-0 dichotomy.
"""

from .curves import IDENTITY, Point


class Divisor:
    """Formal integer combination of curve points (finite support)."""

    __slots__ = ("E", "coeffs")

    def __init__(self, E, coeffs=None):
        self.E = E
        d = {}
        for P, n in (coeffs or {}).items():
            if n:
                d[P] = d.get(P, 0) + n
        self.coeffs = {P: n for P, n in d.items() if n}

    def degree(self):
        return sum(self.coeffs.values())

    def support(self):
        return list(self.coeffs)

    def __getitem__(self, P):
        return self.coeffs.get(P, 0)

    def items(self):
        return list(self.coeffs.items())

    def __add__(self, other):
        if other == 0:
            return self
        d = dict(self.coeffs)
        for P, n in other.coeffs.items():
            d[P] = d.get(P, 0) + n
        return Divisor(self.E, d)

    __radd__ = __add__

    def __neg__(self):
        return Divisor(self.E, {P: -n for P, n in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return Divisor(self.E, {P: n * m for P, m in self.coeffs.items()})

    def is_effective(self):
        return all(n > 0 for n in self.coeffs.values())

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.E == other.E and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.E, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{n}*{P}" for P, n in self.coeffs.items())


def divisor(E, *terms):
    """divisor(E, (P, n), (Q, m), ...) or divisor(E, P, Q, ...) for coefficient 1."""
    d = {}
    for t in terms:
        if isinstance(t, tuple) and len(t) == 2 and isinstance(t[1], int):
            P, n = t
        else:
            P, n = t, 1
        d[P] = d.get(P, 0) + n
    return Divisor(E, d)


class LineClass:
    """Abel-Jacobi normal form (degree, point) of a line bundle on E."""

    __slots__ = ("E", "degree", "point")

    def __init__(self, E, degree, point):
        self.E = E
        self.degree = degree
        self.point = point

    def __mul__(self, other):
        if not isinstance(other, LineClass):
            return NotImplemented
        return LineClass(self.E, self.degree + other.degree,
                         self.E.add(self.point, other.point))

    def inverse(self):
        return LineClass(self.E, -self.degree, self.E.neg(self.point))

    def __pow__(self, n):
        return LineClass(self.E, n * self.degree, self.E.mul(n, self.point))

    def __truediv__(self, other):
        return self * other.inverse()

    def is_trivial(self):
        return self.degree == 0 and self.point.is_identity

    def __eq__(self, other):
        return (isinstance(other, LineClass) and self.E == other.E
                and self.degree == other.degree and self.point == other.point)

    def __hash__(self):
        return hash((self.E, self.degree, self.point))

    def __repr__(self):
        return f"O({self.degree};{self.point})"

    def to_json(self):
        return {"deg": self.degree, "point": self.point.to_json()}


def trivial_class(E):
    return LineClass(E, 0, IDENTITY)


def point_class(E, P):
    """O_B(P) for a single point P."""
    return LineClass(E, 1, P)


def class_of(E, D):
    """Abel-Jacobi normal form of a divisor."""
    total = IDENTITY
    for P, n in D.items():
        total = E.add(total, E.mul(n, P))
    return LineClass(E, D.degree(), total)


def h0_h1(L):
    """(h0, h1) by Riemann-Roch: deg > 0 -> (deg, 0); deg < 0 -> (0, -deg);
    degree 0 is (1,1) for the trivial class and (0,0) otherwise."""
    d = L.degree
    if d > 0:
        return d, 0
    if d < 0:
        return 0, -d
    return (1, 1) if L.point.is_identity else (0, 0)


def translate_class(L, a):
    """Pullback of L under translation by a: degree fixed, point shifts by
    minus (deg L) * a."""
    return LineClass(L.E, L.degree, L.E.sub(L.point, L.E.mul(L.degree, a)))


def canonical_divisor(L):
    """The standard representing divisor (d-1)*o + point of the class."""
    return divisor(L.E, (IDENTITY, L.degree - 1), (L.point, 1))


def is_multiple_trivial(E, P, n):
    """Whether O_B(n*P - n*o) is trivial, i.e. nP = o in the group law.

    The classification branches on n = 2 ("O_B(2o-2p) = O_B") and n = 4.
    """
    return E.mul(n, P).is_identity
