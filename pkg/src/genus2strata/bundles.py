"""Symbolic calculus of vector bundles on an elliptic base.

A BundleExpr is a formal direct sum of atoms:

  L(c)        a line bundle class c,
  F(r, c)     the unique indecomposable of rank r, degree 0, twisted so its
              determinant class is c^r (self-dual at c trivial),
  E(r, D)     the unique indecomposable of rank r whose degree is coprime to
              r, keyed by its determinant class D (deg D = 1 mod nothing:
              any degree with gcd(r, deg) = 1),
  S3E3(D, M)  the opaque third symmetric power of the rank-3 E with det D,
              twisted by M (only its rank/degree/cohomology are exposed).

Cohomology is rule-based: an indecomposable of degree d > 0 has (d, 0),
of degree d < 0 has (0, -d); degree 0 is the F_r dichotomy.  These rules
are exactly what the classification needs and are cross-checked against
the Riemann-Roch oracle for sums of line classes.
"""

import math

from .curves import point_key
from .picard import LineClass, h0_h1, trivial_class, point_class


class UnsupportedExpression(Exception):
    """Raised for bundle operations outside the supported grammar."""


class Atom:
    __slots__ = ("kind", "rank", "data")

    def __init__(self, kind, rank, data):
        self.kind = kind      # "L", "F", "E", "S3E3"
        self.rank = rank
        self.data = data      # L: class; F: twist class; E: det class; S3E3: (det, twist)

    def degree(self):
        if self.kind == "L":
            return self.data.degree
        if self.kind == "F":
            return self.rank * self.data.degree
        if self.kind == "E":
            return self.data.degree
        det, twist = self.data
        return 10 + 10 * twist.degree

    def det(self):
        if self.kind == "L":
            return self.data
        if self.kind == "F":
            return self.data ** self.rank
        if self.kind == "E":
            return self.data
        det, twist = self.data
        return det ** 10 * twist ** 10

    def tensor_line(self, L):
        if self.kind == "L":
            return Atom("L", 1, self.data * L)
        if self.kind == "F":
            return Atom("F", self.rank, self.data * L)
        if self.kind == "E":
            return Atom("E", self.rank, self.data * L ** self.rank)
        det, twist = self.data
        return Atom("S3E3", 10, (det, twist * L))

    def dual(self):
        if self.kind == "L":
            return Atom("L", 1, self.data.inverse())
        if self.kind == "F":
            return Atom("F", self.rank, self.data.inverse())
        raise UnsupportedExpression(f"dual of {self.kind} atoms is not supported")

    def cohomology(self):
        d = self.degree()
        if self.kind == "L":
            return h0_h1(self.data)
        if self.kind == "F" and d == 0:
            return (1, 1) if self.data.is_trivial() else (0, 0)
        if self.kind == "S3E3" and d == 0:
            raise UnsupportedExpression("slope-0 S3E3 cohomology is not determined")
        if d > 0:
            return d, 0
        if d < 0:
            return 0, -d
        raise UnsupportedExpression(f"degree-0 {self.kind} atom without a rule")

    def key(self):
        def ck(c):
            return (c.degree,) + point_key(c.point)
        if self.kind == "L":
            return ("L", 1) + ck(self.data)
        if self.kind == "F":
            return ("F", self.rank) + ck(self.data)
        if self.kind == "E":
            return ("E", self.rank) + ck(self.data)
        det, twist = self.data
        return ("S3E3", 10) + ck(det) + ck(twist)

    def render(self):
        def pt(P):
            return "o" if P.is_identity else f"[{P.x},{P.y}]"
        if self.kind == "L":
            return f"O({self.data.degree};{pt(self.data.point)})"
        if self.kind == "F":
            c = self.data
            if c.is_trivial():
                return f"F{self.rank}"
            return f"F{self.rank}({c.degree};{pt(c.point)})"
        if self.kind == "E":
            c = self.data
            return f"E({self.rank};det={c.degree};{pt(c.point)})"
        det, twist = self.data
        return f"S3E(det={pt(det.point)})({twist.degree};{pt(twist.point)})"


class BundleExpr:
    """Formal direct sum of atoms, kept sorted for canonical equality."""

    __slots__ = ("E", "atoms")

    def __init__(self, E, atoms):
        self.E = E
        self.atoms = tuple(sorted(atoms, key=lambda a: a.key()))

    def __add__(self, other):
        if not isinstance(other, BundleExpr):
            return NotImplemented
        return BundleExpr(self.E, self.atoms + other.atoms)

    def __eq__(self, other):
        return (isinstance(other, BundleExpr) and self.E == other.E
                and tuple(a.key() for a in self.atoms)
                == tuple(a.key() for a in other.atoms))

    def __hash__(self):
        return hash((self.E, tuple(a.key() for a in self.atoms)))

    def __repr__(self):
        return self.render()

    def render(self):
        return " (+) ".join(a.render() for a in self.atoms) if self.atoms else "0"


def line(L):
    """Line-bundle atom from a LineClass."""
    return BundleExpr(L.E, [Atom("L", 1, L)])


def line_of_point(E, P):
    return line(point_class(E, P))


def atiyah_f(E, r, twist=None):
    """F_r tensored by a line class (the unique self-dual tower at twist 0)."""
    return BundleExpr(E, [Atom("F", r, twist or trivial_class(E))])


def atiyah_e(E, r, x=None, twist=None, det=None):
    """E_x(r,1) tensor twist, normalized by its determinant class O(x)*twist^r."""
    if det is None:
        base = point_class(E, x)
        det = base * (twist or trivial_class(E)) ** r
    if math.gcd(r, det.degree) != 1:
        raise UnsupportedExpression("E atoms need gcd(rank, degree) = 1")
    return BundleExpr(E, [Atom("E", r, det)])


def sym_cube_e3(E, x, twist=None):
    """Opaque S^3 of E_x(3,1), twisted; rank 10, degree 10(1 + deg twist)."""
    return BundleExpr(E, [Atom("S3E3", 10, (point_class(E, x),
                                            twist or trivial_class(E)))])


def rank(V):
    return sum(a.rank for a in V.atoms)


def deg(V):
    return sum(a.degree() for a in V.atoms)


def det(V):
    out = trivial_class(V.E)
    for a in V.atoms:
        out = out * a.det()
    return out


def tensor_line(V, L):
    return BundleExpr(V.E, [a.tensor_line(L) for a in V.atoms])


def dual(V):
    return BundleExpr(V.E, [a.dual() for a in V.atoms])


def cohomology(V, L=None):
    """(h0, h1) of V tensor L for a degree-0 twist L (default trivial)."""
    if L is not None and L.degree != 0:
        raise UnsupportedExpression("cohomology twists must have degree 0")
    W = tensor_line(V, L) if L is not None else V
    h0 = h1 = 0
    for a in W.atoms:
        a0, a1 = a.cohomology()
        h0 += a0
        h1 += a1
    return h0, h1


def _two_torsion_classes(E):
    pts = E.two_torsion()
    if len(pts) != 3:
        raise UnsupportedExpression(
            "the three 2-torsion classes are not all rational on this curve")
    return [LineClass(E, 0, P) for P in pts]


def sym_power(V, k):
    """Supported symmetric powers:

    - sums of line classes, any k (multinomial expansion);
    - F_2 tensor L, any k: S^k = F_{k+1} tensor L^k;
    - E_x(2,1) tensor L, k in {2, 3}: S^2 = sum of the three nontrivial
      2-torsion classes times O(x), S^3 = two copies of E_x(2,1)(x),
      all twisted by L^k.
    """
    if k < 1:
        raise UnsupportedExpression("k must be >= 1")
    E = V.E
    if k == 1:
        return V
    if all(a.kind == "L" for a in V.atoms):
        import itertools
        out = []
        classes = [a.data for a in V.atoms]
        for combo in itertools.combinations_with_replacement(classes, k):
            c = trivial_class(E)
            for t in combo:
                c = c * t
            out.append(Atom("L", 1, c))
        return BundleExpr(E, out)
    if len(V.atoms) == 1:
        a = V.atoms[0]
        if a.kind == "F" and a.rank == 2:
            return BundleExpr(E, [Atom("F", k + 1, a.data ** k)])
        if a.kind == "E" and a.rank == 2 and k in (2, 3):
            # write the atom as E_x(2,1) tensor M with O(x) = det * M^-2
            det_cls = a.data
            twist_k = None
            if k == 2:
                # S^2(E_x(2,1)) = sum L_i(x); tensor by M^2: dets recombine to
                # L_i * det_cls
                out = [Atom("L", 1, Li * det_cls) for Li in _two_torsion_classes(E)]
                return BundleExpr(E, out)
            # k == 3: S^3(E_x(2,1)) = E_x(2,1)(x) + E_x(2,1)(x); tensoring by
            # M^3 gives two E atoms of determinant det^2 * (det*M^2...) --
            # computed invariantly: each summand has rank 2 and determinant
            # det(S^3 V)/2-share = det_cls^3 per copy
            copy_det = det_cls ** 3
            half = Atom("E", 2, copy_det)
            return BundleExpr(E, [half, half])
    raise UnsupportedExpression(f"unsupported symmetric power: S^{k} of {V.render()}")
