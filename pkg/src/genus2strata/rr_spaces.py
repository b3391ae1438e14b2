"""Explicit Riemann-Roch spaces L(D) on an elliptic curve, with exact
zero divisors and section evaluation.

A rational function is (u + v*y)/d with u, v, d in F_p[x], reduced modulo
y^2 = x^3 + ax + b.  A section of O_B(D) is a pair (function f, shift
divisor D) with div(f) + D >= 0; its zero divisor is div(f) + D.  Local
orders come from the standard local parameters (x - x0 off 2-torsion,
y at 2-torsion, x/y at infinity), so everything is exact.

This module is the brute-force oracle behind the bundle classifier: every
h^0/h^1 claim downstream can be cross-checked against an honest basis and
an evaluation matrix built here.
"""

from .fields import FiniteField
from . import polys
from .curves import IDENTITY, Point, point_key
from .picard import Divisor, divisor, class_of, canonical_divisor, LineClass, point_class


class FieldExtensionNeeded(Exception):
    """Raised when a divisor computation needs a larger coefficient field."""


class BasisSearchError(Exception):
    """Raised when independent evaluation points cannot be found."""


# -- rational functions on E ------------------------------------------------


class FuncElt:
    """(u + v*y)/d on E; u, v, d are coefficient tuples over E's base field."""

    __slots__ = ("E", "u", "v", "d")

    def __init__(self, E, u, v, d):
        u, v, d = polys.trim(u), polys.trim(v), polys.trim(d)
        if not d:
            raise ZeroDivisionError("zero denominator")
        g = polys.gcd(polys.gcd(u, v) if (u or v) else list(d), d)
        if polys.deg(g) > 0:
            u = polys.divmod_poly(u, g)[0]
            v = polys.divmod_poly(v, g)[0]
            d = polys.divmod_poly(d, g)[0]
        lc = d[-1].inverse()
        self.E = E
        self.u = tuple(polys.scale(u, lc))
        self.v = tuple(polys.scale(v, lc))
        self.d = tuple(polys.monic(d))

    def _curve_poly(self):
        F = self.E.F
        return [self.E.b, self.E.a, F.zero, F.one]

    def __add__(self, other):
        other = _coerce(self.E, other)
        u = polys.add(polys.mul(list(self.u), list(other.d)),
                      polys.mul(list(other.u), list(self.d)))
        v = polys.add(polys.mul(list(self.v), list(other.d)),
                      polys.mul(list(other.v), list(self.d)))
        return FuncElt(self.E, u, v, polys.mul(list(self.d), list(other.d)))

    __radd__ = __add__

    def __neg__(self):
        return FuncElt(self.E, polys.neg(list(self.u)), polys.neg(list(self.v)),
                       list(self.d))

    def __sub__(self, other):
        return self + (-_coerce(self.E, other))

    def __rsub__(self, other):
        return _coerce(self.E, other) + (-self)

    def __mul__(self, other):
        other = _coerce(self.E, other)
        C = self._curve_poly()
        u = polys.add(polys.mul(list(self.u), list(other.u)),
                      polys.mul(polys.mul(list(self.v), list(other.v)), C))
        v = polys.add(polys.mul(list(self.u), list(other.v)),
                      polys.mul(list(self.v), list(other.u)))
        return FuncElt(self.E, u, v, polys.mul(list(self.d), list(other.d)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        N = self.norm_num()
        num_u = polys.mul(list(self.u), list(self.d))
        num_v = polys.neg(polys.mul(list(self.v), list(self.d)))
        return FuncElt(self.E, num_u, num_v, N)

    def __truediv__(self, other):
        return self * _coerce(self.E, other).inverse()

    def __rtruediv__(self, other):
        return _coerce(self.E, other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = _const(self.E, self.E.F.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return not self.u and not self.v

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(self.E, other)
        du = polys.sub(polys.mul(list(self.u), list(other.d)),
                       polys.mul(list(other.u), list(self.d)))
        dv = polys.sub(polys.mul(list(self.v), list(other.d)),
                       polys.mul(list(other.v), list(self.d)))
        return not polys.trim(du) and not polys.trim(dv)

    def __repr__(self):
        def fmt(c):
            return "0" if not c else "+".join(f"{ci}*x^{i}" for i, ci in enumerate(c) if ci)
        return f"(({fmt(self.u)})+({fmt(self.v)})y)/({fmt(self.d)})"

    def norm_num(self):
        """u^2 - v^2 (x^3+ax+b), the norm of the numerator (a poly in x)."""
        C = self._curve_poly()
        return polys.sub(polys.mul(list(self.u), list(self.u)),
                         polys.mul(polys.mul(list(self.v), list(self.v)), C))

    def eval(self, P):
        """Plain evaluation at a clean affine point (denominator nonzero)."""
        if P.is_identity:
            raise ZeroDivisionError("use local_data at infinity")
        dv = polys.eval_poly(list(self.d), P.x)
        if not dv:
            raise ZeroDivisionError("denominator vanishes; use local_data")
        u = polys.eval_poly(list(self.u), P.x) if self.u else P.x.F.zero
        v = polys.eval_poly(list(self.v), P.x) if self.v else P.x.F.zero
        return (u + v * P.y) / dv

    def local_data(self, P):
        """(ord, leading coefficient) of the function at P, exactly.

        P may live on a base extension of E; the leading coefficient is taken
        in the canonical local-parameter frame.
        """
        if self.is_zero():
            raise ValueError("local_data of the zero function")
        if P.is_identity:
            return self._local_at_infinity()
        K = P.x.F
        lift = K.k > 1
        u = polys.lift(list(self.u), K) if lift else list(self.u)
        v = polys.lift(list(self.v), K) if lift else list(self.v)
        d = polys.lift(list(self.d), K) if lift else list(self.d)
        C = ([self.E.b.lift_to(K), self.E.a.lift_to(K), K.zero, K.one]
             if lift else self._curve_poly())
        x0, y0 = P.x, P.y
        if y0:
            on, ol = _ord_affine_generic(u, v, C, x0, y0, K)
            m, val = _mult_at(d, x0, K)
            return on - m, ol / val
        h = polys.divmod_poly(C, [-x0, K.one])[0]
        hval = polys.eval_poly(h, x0)
        on, ol = _ord_affine_twotorsion(u, v, x0, hval, K)
        m, val = _mult_at(d, x0, K)
        return on - 2 * m, ol / (val / hval ** m)

    def _local_at_infinity(self):
        du = 2 * polys.deg(self.u) if self.u else None
        dv = 2 * polys.deg(self.v) + 3 if self.v else None
        if dv is None or (du is not None and du > dv):
            pole, lead = du, self.u[-1]
        else:
            pole, lead = dv, self.v[-1]
        return -pole + 2 * polys.deg(self.d), lead / self.d[-1]

    def ord_at(self, P):
        return self.local_data(P)[0]


def _coerce(E, other):
    if isinstance(other, FuncElt):
        if other.E != E:
            raise ValueError("functions on different curves")
        return other
    if isinstance(other, int):
        return _const(E, E.F(other))
    if hasattr(other, "F"):
        return _const(E, other)
    raise TypeError(f"cannot coerce {other!r}")


def _const(E, c):
    return FuncElt(E, [c], [], [E.F.one])


def func_x(E):
    return FuncElt(E, [E.F.zero, E.F.one], [], [E.F.one])


def func_y(E):
    return FuncElt(E, [], [E.F.one], [E.F.one])


def _mult_at(a, x0, K):
    """(multiplicity of x0 as a root of a, deflated value at x0)."""
    m = 0
    a = list(a)
    lin = [-x0, K.one]
    while a and not polys.eval_poly(a, x0):
        a = polys.divmod_poly(a, lin)[0]
        m += 1
    return m, (polys.eval_poly(a, x0) if a else K.zero)


def _ord_affine_generic(u, v, C, x0, y0, K):
    lin = [-x0, K.one]
    s = 0
    while True:
        uv = polys.eval_poly(u, x0) if u else K.zero
        vv = polys.eval_poly(v, x0) if v else K.zero
        if uv or vv:
            break
        u = polys.divmod_poly(u, lin)[0] if u else []
        v = polys.divmod_poly(v, lin)[0] if v else []
        s += 1
    val = uv + vv * y0
    if val:
        return s, val
    conj = uv - vv * y0
    N = polys.sub(polys.mul(u, u), polys.mul(polys.mul(v, v), C))
    m, nval = _mult_at(N, x0, K)
    return s + m, nval / conj


def _ord_affine_twotorsion(u, v, x0, hval, K):
    # local parameter is y; x - x0 = y^2/h(x) with h(x0) != 0
    ou = ov = None
    if u:
        a, ulead = _mult_at(u, x0, K)
        ou = (2 * a, ulead / hval ** a)
    if v:
        b, vlead = _mult_at(v, x0, K)
        ov = (2 * b + 1, vlead / hval ** b)
    if ou is None:
        return ov
    if ov is None or ou[0] < ov[0]:
        return ou
    return ov


# -- principal divisors ------------------------------------------------------


def vertical(E, P):
    """x - x_P, with divisor P + (-P) - 2o."""
    return FuncElt(E, [-P.x, E.F.one], [], [E.F.one])


def line_through(E, P, Q):
    """The non-vertical line function through P and Q (tangent if P = Q)."""
    if P == Q:
        s = (E.F(3) * P.x * P.x + E.a) / (E.F(2) * P.y)
    else:
        s = (Q.y - P.y) / (Q.x - P.x)
    c = P.y - s * P.x
    return FuncElt(E, [-c, -s], [E.F.one], [E.F.one])


def principal_function(E, D):
    """An exact function with div(f) = D; requires deg D = 0 and trivial
    Abel-Jacobi class (this is the constructive triviality certificate)."""
    if D.degree() != 0:
        raise ValueError("principal divisors have degree 0")
    if not class_of(E, D).is_trivial():
        raise ValueError("divisor class is not trivial")
    work = {P: n for P, n in D.items() if not P.is_identity}
    f = _const(E, E.F.one)

    def pick_two(sign):
        pts = sorted((P for P, n in work.items() if sign * n > 0), key=point_key)
        if not pts:
            return None
        P = pts[0]
        if sign * work[P] >= 2:
            return P, P
        if len(pts) >= 2:
            return P, pts[1]
        return None

    while True:
        sign = +1
        pair = pick_two(+1)
        if pair is None:
            sign = -1
            pair = pick_two(-1)
        if pair is None:
            break
        P, Q = pair
        R = E.add(P, Q)
        if R.is_identity:
            g = vertical(E, P)
            delta = {P: -1, Q: -1} if P != Q else {P: -2}
        else:
            # R = P + Q cannot coincide with P or Q since neither is o
            g = line_through(E, P, Q) / vertical(E, R)
            delta = {P: -1, Q: -1, R: +1} if P != Q else {P: -2, R: +1}
        if sign > 0:
            f = f * g
        else:
            f = f / g
            delta = {T: -n for T, n in delta.items()}
        for T, n in delta.items():
            work[T] = work.get(T, 0) + n
            if not work[T]:
                del work[T]
    if work:
        raise ValueError(f"reduction left {work}; divisor was not principal")
    return f


# -- sections ---------------------------------------------------------------


class SectionFn:
    """A global section of O_B(shift): function fn with div(fn) + shift >= 0."""

    __slots__ = ("fn", "shift")

    def __init__(self, fn, shift):
        self.fn = fn
        self.shift = shift

    @property
    def E(self):
        return self.fn.E

    def bundle_class(self):
        return class_of(self.E, self.shift)

    def is_zero(self):
        return self.fn.is_zero()

    def __mul__(self, other):
        if isinstance(other, SectionFn):
            return SectionFn(self.fn * other.fn, self.shift + other.shift)
        return SectionFn(self.fn * other, self.shift)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, SectionFn):
            return NotImplemented
        if other.shift != self.shift:
            raise ValueError("rebase sections to a common shift before adding")
        return SectionFn(self.fn + other.fn, self.shift)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return (isinstance(other, SectionFn) and self.shift == other.shift
                and self.fn == other.fn)

    def rebase(self, new_shift):
        """The same section under the isomorphism O(shift) = O(new_shift)
        (same class required; multiplies by an exact principal function)."""
        if new_shift == self.shift:
            return self
        g = principal_function(self.E, self.shift - new_shift)
        return SectionFn(self.fn * g, new_shift)

    def _shift_coeff(self, P, E_of_P):
        if E_of_P is self.E:
            return self.shift[P]
        n = 0
        for Q, c in self.shift.items():
            if self.E.lift_point(Q, E_of_P) == P:
                n += c
        return n

    def value_at(self, P, E_of_P=None):
        """Honest value at P in the canonical local frame of O(shift).

        Zero iff the section vanishes at P; nonzero values are canonical up
        to the frame, which is all rank and ratio tests need.
        """
        E_of_P = E_of_P or self.E
        zero = self.E.F.zero if P.is_identity else P.x.F.zero
        if self.is_zero():
            return zero
        m = self._shift_coeff(P, E_of_P)
        o, lead = self.fn.local_data(P)
        total = o + m
        if total < 0:
            raise ValueError("not a section: pole exceeds the shift divisor")
        return lead if total == 0 else zero

    def vanishes_at(self, P, E_of_P=None):
        return not self.value_at(P, E_of_P)

    def zero_divisor(self, max_ext=2):
        return zero_divisor(self, max_ext)


def multiply_sections(s, t):
    """Section product; zero divisors add."""
    if s.E != t.E:
        raise ValueError("sections on different curves")
    return s * t


# -- zero divisors -----------------------------------------------------------


def _function_divisor(fn, max_ext):
    """div(fn) represented over a single extension level <= max_ext."""
    E = fn.E
    if fn.is_zero():
        raise ValueError("the zero function has no divisor")
    N = polys.trim(fn.norm_num())
    dpoly = list(fn.d)
    prod = polys.mul(N, dpoly)
    for level in range(1, max_ext + 1):
        K = E.F if level == 1 else FiniteField(E.F.p, level)
        EL = E.base_extend(level)
        prod_K = polys.lift(prod, K) if K.k > 1 else prod
        roots = polys.roots_in_field(prod, K) if polys.deg(prod) >= 1 else []
        covered = 0
        pts = []
        solvable = True
        for x0 in roots:
            covered += _mult_at(prod_K, x0, K)[0]
            aK = E.a.lift_to(K) if K.k > 1 else E.a
            bK = E.b.lift_to(K) if K.k > 1 else E.b
            rhs = x0 ** 3 + aK * x0 + bK
            if not rhs:
                pts.append(Point(x0, K.zero))
            else:
                y0 = K.sqrt(rhs)
                if y0 is None:
                    solvable = False
                    break
                pts.extend([Point(x0, y0), Point(x0, -y0)])
        if not solvable or covered != max(polys.deg(prod), 0):
            continue
        out = {}
        total = 0
        for P in pts:
            o = fn.local_data(P)[0]
            if o:
                out[P] = o
                total += o
        o_inf = fn.local_data(IDENTITY)[0]
        if o_inf:
            out[IDENTITY] = o_inf
            total += o_inf
        if total != 0:
            continue
        return level, EL, out
    raise FieldExtensionNeeded(
        f"divisor support not contained in F_p^k for k <= {max_ext}; "
        "raise max_ext or redraw the instance")


def zero_divisor(s, max_ext=2):
    """Effective divisor of zeros of a section, over the smallest extension
    F_{p^level} (level <= max_ext) containing all of them.

    Returns (Divisor over E.base_extend(level), level)."""
    if s.is_zero():
        raise ValueError("the zero section has no zero divisor")
    E = s.E
    level, EL, fdiv = _function_divisor(s.fn, max_ext)
    out = dict(fdiv)
    for Q, n in s.shift.items():
        QL = E.lift_point(Q, EL)
        out[QL] = out.get(QL, 0) + n
    Z = Divisor(EL, out)
    if not Z.is_effective() or Z.degree() != s.shift.degree():
        raise ValueError("divisor accounting failed; not a valid section?")
    return Z, level


# -- Riemann-Roch bases -------------------------------------------------------


def _monomials(E, m):
    """Basis of L(m*o): x^a y^b with 2a + 3b <= m, b <= 1."""
    F = E.F
    out = []
    for b in (0, 1):
        a = 0
        while 2 * a + 3 * b <= m:
            u = [F.zero] * a + [F.one] if b == 0 else []
            v = [F.zero] * a + [F.one] if b == 1 else []
            out.append(FuncElt(E, u, v, [F.one]))
            a += 1
    return out


def _extra_pole_function(E, S):
    """A function with simple poles exactly at S and o (S != o)."""
    if not S.y:
        return func_y(E) / vertical(E, S)
    Sm = E.neg(S)
    return line_through(E, Sm, Sm) / vertical(E, S)


def rr_basis(E, D, validate=True, seed=0):
    """Basis of L(D) = {f : div(f) + D >= 0}, as sections of O(D).

    Returns exactly h^0(class_of(D)) sections.  Validation certifies linear
    independence through an evaluation matrix of full rank."""
    d = D.degree()
    if d < 0:
        return []
    cls = class_of(E, D)
    if d == 0:
        if not cls.is_trivial():
            return []
        return [SectionFn(principal_function(E, -D), D)]
    S = cls.point
    T = divisor(E, (IDENTITY, d - 1), (S, 1))
    g = principal_function(E, T - D)
    if S.is_identity:
        basis_T = _monomials(E, d)
    elif d == 1:
        basis_T = [_const(E, E.F.one)]
    else:
        basis_T = _monomials(E, d - 1) + [_extra_pole_function(E, S)]
    out = [SectionFn(b * g, D) for b in basis_T]
    if validate:
        _validate_independent(E, out, seed)
    return out


def _clean_points(E, sections, need, max_ext=2):
    """Affine points avoiding all denominators and shift supports, with the
    functions' plain values; extends the field if rational points run out."""
    shift_pts = set()
    for s in sections:
        shift_pts.update(P for P in s.shift.support() if not P.is_identity)
    for level in range(1, max_ext + 1):
        EL = E.base_extend(level)
        lifted_bad = {E.lift_point(Q, EL) for Q in shift_pts} if level > 1 else shift_pts
        pts = []
        for P in EL.points():
            if P.is_identity or P in lifted_bad:
                continue
            try:
                vals = [s.fn.eval(P) for s in sections]
            except ZeroDivisionError:
                continue
            pts.append((P, vals))
            if len(pts) >= need:
                return pts
    raise BasisSearchError("not enough clean evaluation points; extend the field")


def _validate_independent(E, sections, seed=0):
    if not sections:
        return
    deg = sections[0].shift.degree()
    pts = _clean_points(E, sections, deg + 1)
    M = [[vals[i] for (_, vals) in pts] for i in range(len(sections))]
    if _rank(M) != len(sections):
        raise BasisSearchError("basis evaluation matrix is rank-deficient")


def _rank(rows):
    rows = [list(r) for r in rows if r]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    r = 0
    col = 0
    while r < len(rows) and col < ncols:
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
        rank += 1
    return rank


def kernel_dimension(domain_sections, target_class):
    """dim ker of the identity-style map sending each domain section into
    H^0(target_class); all sections must have class equal to target_class."""
    n = len(domain_sections)
    if n == 0:
        return 0
    E = domain_sections[0].E
    tgt = canonical_divisor(target_class)
    nonzero, zero_count = [], 0
    for s in domain_sections:
        if s.is_zero():
            zero_count += 1
        else:
            nonzero.append(s.rebase(tgt))
    if not nonzero:
        return n
    pts = _clean_points(E, nonzero, tgt.degree() + 1)
    M = [[vals[i] for (_, vals) in pts] for i in range(len(nonzero))]
    return zero_count + len(nonzero) - _rank(M)


# -- the extension-presentation oracle ----------------------------------------


def squared_v1_summands(E, p):
    """Classes O(2p), O(2o), O(4o-2p): the summands of S^2 V_1, split case."""
    return (LineClass(E, 2, E.mul(2, p)),
            LineClass(E, 2, IDENTITY),
            LineClass(E, 2, E.neg(E.mul(2, p))))


def alpha_star_kernel(E, p, tau, sections, L):
    """dim ker of (g0,g1,g2,g3) -> f0 g0 + f1 g1 + f2 g2 + f3 g3 from
    H^0(L*(o)) + H^0(L*(2o-2p)) + H^0(L*) + H^0(L*(2p-2o)) to H^0(L*(o+tau)).

    Equals h^1(V_2(-2o) (x) L) for the rank-3 direct image presented by the
    section tuple (f0, f1, f2, f3)."""
    f0, f1, f2, f3 = sections
    Ld = L.inverse()
    o_cls = LineClass(E, 1, IDENTITY)
    two_p = LineClass(E, 0, E.mul(2, p))  # class of 2p - 2o
    domains = [Ld * o_cls, Ld * two_p.inverse(), Ld, Ld * two_p]
    target = Ld * o_cls * point_class(E, tau)
    images = []
    for f, dom in zip((f0, f1, f2, f3), domains):
        for g in rr_basis(E, canonical_divisor(dom), validate=False):
            images.append(f * g)
    return kernel_dimension(images, target)
