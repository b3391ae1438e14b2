"""Numeric bookkeeping for the moduli stratification.

Computes, per stratum: the twisted sextic-coefficient bundle data (the
pieces G_1, G_2 of its presentation, the split form where the presentation
splits, and h^0 with an exact/upper flag), the parameter budget of the
stratum, and the full fourteen-row dimension table with its consequences
(at least two components; every component of dimension 12 or 13; at most
one of dimension 13).

Numerology (exact integers throughout):
  chi   = deg V_1 + (b - 1)
  K^2   = 2 deg V_1 + deg tau + 8(b - 1)
  K^2   = 2 p_a - 4 + 6b + sum_k [(2k-1)(nu_I_k + nu_III_k)
                                  + 2k(nu_II_k + nu_IV_k)] + nu_V
  lower bound at a moduli point: 10 chi - 2 K^2 + p_g.
"""

import itertools
from dataclasses import dataclass, field

from .curves import IDENTITY, registry_curve
from .picard import LineClass, point_class, trivial_class, is_multiple_trivial
from . import bundles as bdl


LABELS = ("I", "IIa", "IIb", "IIc", "IIIa", "IIIc", "IVa", "IVb", "IVc",
          "V_gen", "V_2", "VI", "VIIa", "VIIb")
ALIASES = {"IIIb": "IIIa"}

# which strata have a split sextic presentation (exact h^0 by direct sum)
SPLIT_STRATA = {"IIb", "IIc", "IIIc", "IVa", "IVb", "IVc", "V_gen", "V_2", "VIIb"}


class StratumError(Exception):
    pass


# -- closed formulas ----------------------------------------------------------


def fibration_invariants(deg_v1, deg_tau, b):
    """(chi, K^2) of the surface built from the 5-tuple data."""
    if deg_v1 < 1 or deg_tau < 0 or b < 0:
        raise ValueError("need deg V1 >= 1, deg tau >= 0, b >= 0")
    chi = deg_v1 + (b - 1)
    k2 = 2 * deg_v1 + deg_tau + 8 * (b - 1)
    return chi, k2


@dataclass(frozen=True)
class HorikawaCounts:
    """Fibre counts nu(*) per singularity type of the branch datum."""
    I: dict = field(default_factory=dict)      # k -> count
    II: dict = field(default_factory=dict)
    III: dict = field(default_factory=dict)
    IV: dict = field(default_factory=dict)
    V: int = 0


def horikawa_k2(p_a, b, counts):
    """K^2 from the fibre-type counts."""
    total = 2 * p_a - 4 + 6 * b + counts.V
    ks = set(counts.I) | set(counts.II) | set(counts.III) | set(counts.IV)
    for k in ks:
        if k < 1:
            raise ValueError("fibre-type index k must be >= 1")
        total += (2 * k - 1) * (counts.I.get(k, 0) + counts.III.get(k, 0))
        total += 2 * k * (counts.II.get(k, 0) + counts.IV.get(k, 0))
    return total


def moduli_lower_bound(chi, k2, pg):
    """Local lower bound for the moduli dimension: 10 chi - 2 K^2 + p_g."""
    return 10 * chi - 2 * k2 + pg


# -- stratum realizations ------------------------------------------------------


def _cl(E, *terms):
    """Line class from (point, multiple) terms measured against o."""
    out = trivial_class(E)
    for P, n in terms:
        out = out * (point_class(E, P) ** n)
    return out


def _conditions(label, subcase):
    """Predicates on (E, p, tau) realizing each stratum subcase."""
    def ord_not_24(E, p, tau):
        return not p.is_identity and not is_multiple_trivial(E, p, 4)

    def exact4(E, p, tau):
        return (is_multiple_trivial(E, p, 4)
                and not is_multiple_trivial(E, p, 2))

    def two_tors_p(E, p, tau):
        return is_multiple_trivial(E, p, 2) and not p.is_identity

    def t_not_id(E, p, tau):
        return not tau.is_identity

    def tt(n, m):
        # 2*tau == n*p + m*o in the group law
        def cond(E, p, tau):
            return E.mul(2, tau) == E.mul(n, p)
        return cond

    def not_tt(n, m):
        c = tt(n, m)
        return lambda E, p, tau: not c(E, p, tau)

    base = {
        ("I", "generic"): [ord_not_24, t_not_id],
        ("IIa", "generic"): [exact4, t_not_id, not_tt(2, 0)],
        ("IIa", "2p_eq_2tau"): [exact4, t_not_id, tt(2, 0)],
        ("IIb", "generic"): [exact4, t_not_id],
        ("IIc", "generic"): [exact4, t_not_id, not_tt(2, 0), not_tt(0, 0)],
        ("IIc", "special"): [exact4, t_not_id, tt(2, 0)],
        ("IIIa", "generic"): [ord_not_24, t_not_id, not_tt(2, 0), not_tt(6, 0)],
        ("IIIa", "L3_trivial"): [ord_not_24, t_not_id, tt(6, 0), not_tt(2, 0)],
        ("IIIa", "L_trivial"): [ord_not_24, t_not_id, tt(2, 0)],
        ("IIIa", "both_trivial"): [exact4, t_not_id, tt(2, 0)],
        ("IIIc", "generic"): [ord_not_24, t_not_id],
        ("IVa", "generic"): [lambda E, p, t: not is_multiple_trivial(E, p, 2)
                             and not p.is_identity, t_not_id,
                             not_tt(6, 0), not_tt(4, 0)],
        ("IVb", "generic"): [lambda E, p, t: not is_multiple_trivial(E, p, 2)
                             and not p.is_identity, t_not_id,
                             not_tt(-6, 0), not_tt(-4, 0)],
        ("IVc", "generic"): [lambda E, p, t: not is_multiple_trivial(E, p, 2)
                             and not p.is_identity, t_not_id,
                             not_tt(6, 0), not_tt(-6, 0)],
        ("V_gen", "generic"): [two_tors_p,
                               lambda E, p, t: not is_multiple_trivial(E, t, 2)],
        ("V_2", "generic"): [two_tors_p,
                             lambda E, p, t: is_multiple_trivial(E, t, 2)
                             and not t.is_identity],
        ("VI", "generic"): [t_not_id],
        ("VIIa", "generic"): [lambda E, p, t: not is_multiple_trivial(E, t, 2)],
        ("VIIa", "2o_eq_2tau"): [lambda E, p, t:
                                 is_multiple_trivial(E, t, 2) and not t.is_identity],
        ("VIIb", "generic"): [t_not_id],
    }
    key = (label, subcase)
    if key not in base:
        raise StratumError(f"unknown stratum subcase {label}/{subcase}")
    return base[key]


_DEFAULT_CURVES = ("p7_c1", "p5_i", "p11_c1", "p13_c4", "p17_c1")


def realize(label, subcase="generic", curve=None):
    """A concrete (E, p, tau) satisfying the subcase's torsion conditions."""
    conds = _conditions(label, subcase)
    names = [curve] if curve else list(_DEFAULT_CURVES)
    for name in names:
        E = registry_curve(name) if isinstance(name, str) else name
        pts = E.points()
        for p in pts:
            for tau in pts:
                if tau.is_identity:
                    continue
                if all(c(E, p, tau) for c in conds):
                    return E, p, tau
    raise StratumError(f"no registry realization for {label}/{subcase}")


# -- the sextic-coefficient bundle --------------------------------------------


@dataclass
class A6Data:
    label: str
    subcase: str
    g1: object
    g2: object
    atilde: object        # BundleExpr when split, else None
    split: bool
    h0: int
    exact: bool
    realization: dict

    def to_json(self):
        return {
            "label": self.label, "subcase": self.subcase,
            "g1": self.g1.render(), "g2": self.g2.render(),
            "atilde": self.atilde.render() if self.atilde else None,
            "split": self.split, "h0": self.h0, "exact": self.exact,
            "realization": self.realization,
        }


def _v2_minus_2o(E, p, tau, label):
    from .classifier import _split_bundles
    if label in ("VI",):
        return bdl.atiyah_e(E, 3, x=tau)
    if label == "VIIa":
        return bdl.atiyah_f(E, 2) + bdl.line(point_class(E, tau))
    if label == "VIIb":
        return bdl.atiyah_e(E, 2, x=tau) + bdl.line(trivial_class(E))
    return _split_bundles(E, p, tau, "V" if label.startswith("V_") else label)


def _sym3(V):
    """S^3 of the supported V_2(-2o) shapes: line sums, rank-2 + line, rank-3."""
    E = V.E
    atoms = V.atoms
    if all(a.kind == "L" for a in atoms):
        return bdl.sym_power(V, 3)
    if len(atoms) == 1 and atoms[0].kind == "E" and atoms[0].rank == 3:
        det = atoms[0].data
        return bdl.BundleExpr(E, [bdl.Atom("S3E3", 10,
                                           (det, trivial_class(E)))])
    if len(atoms) == 2:
        two = next((a for a in atoms if a.rank == 2), None)
        one = next((a for a in atoms if a.rank == 1), None)
        if two is not None and one is not None:
            A = bdl.BundleExpr(E, [two])
            L = one.data
            s3 = bdl.sym_power(A, 3)
            s2 = bdl.tensor_line(bdl.sym_power(A, 2), L)
            s1 = bdl.tensor_line(A, L ** 2)
            s0 = bdl.line(L ** 3)
            return s3 + s2 + s1 + s0
    raise bdl.UnsupportedExpression(f"S^3 of {V.render()}")


def _line_triple(V):
    """The (N1, N2, N3) line classes of V_2 for a fully split V_2(-2o)."""
    two_o = LineClass(V.E, 2, IDENTITY)
    return [a.data * two_o for a in V.atoms]


def _monomial_keep(label, V, expo):
    """Which cubic monomials survive the split presentation.

    The conic has a unit coefficient on the square of the slot isomorphic to
    a squared-image summand (the trivial atom of V_2(-2o)); for the doubly
    degenerate stratum the unit sits on the product of the two degree-0
    slots instead."""
    atoms = V.atoms
    if label == "IVc":
        z = [i for i, a in enumerate(atoms) if a.data.degree == 0]
        return expo[z[0]] == 0 or expo[z[1]] == 0
    t = next(i for i, a in enumerate(atoms) if a.data.is_trivial())
    return expo[t] <= 1


def _split_atilde(E, p, tau, label, V):
    if label in ("IIb", "IIIc", "VIIb"):
        # the identity component splits off (W + O); what remains is
        # (S^3 W + S^2 W)(2o - 2tau)
        W = bdl.BundleExpr(E, [next(a for a in V.atoms if a.rank == 2)])
        s = LineClass(E, 0, E.neg(E.mul(2, tau)))
        return bdl.tensor_line(bdl.sym_power(W, 3) + bdl.sym_power(W, 2), s)
    minus = (point_class(E, IDENTITY) ** (-4)) * (point_class(E, tau) ** (-2))
    Ns = _line_triple(V)
    out = []
    for i, j in ((i, j) for i in range(4) for j in range(4 - i)):
        expo = (i, j, 3 - i - j)
        if not _monomial_keep(label, V, expo):
            continue
        c = (Ns[0] ** expo[0]) * (Ns[1] ** expo[1]) * (Ns[2] ** expo[2]) * minus
        out.append(bdl.Atom("L", 1, c))
    return bdl.BundleExpr(E, out)


def a6_for_stratum(label, subcase="generic", curve=None):
    """G_1, G_2 and h^0 of the twisted sextic bundle for one stratum subcase.

    The split flag follows the presentation: where the sequence splits the
    displayed direct sum is returned and h^0 is exact; otherwise h^0 carries
    the coker bound, exact exactly when h^1(G_1) = 0."""
    label = ALIASES.get(label, label)
    if label not in LABELS:
        raise StratumError(f"unknown stratum {label}")
    E, p, tau = realize(label, subcase, curve)
    V = _v2_minus_2o(E, p, tau, label)
    s = LineClass(E, 0, E.neg(E.mul(2, tau)))
    g1 = bdl.tensor_line(V, s)
    g2 = bdl.tensor_line(_sym3(V), s)
    split = label in SPLIT_STRATA
    realization = {"curve": E.spec(), "p": repr(p), "tau": repr(tau)}
    if split:
        atilde = _split_atilde(E, p, tau, label, V)
        h0 = bdl.cohomology(atilde)[0]
        return A6Data(label, subcase, g1, g2, atilde, True, h0, True, realization)
    h0_1, h1_1 = bdl.cohomology(g1)
    h0_2, _ = bdl.cohomology(g2)
    bound = h0_2 - h0_1 + h1_1
    return A6Data(label, subcase, g1, g2, None, False, bound, h1_1 == 0,
                  realization)


def a6_subcases(label):
    label = ALIASES.get(label, label)
    return {
        "I": ("generic",),
        "IIa": ("generic", "2p_eq_2tau"),
        "IIb": ("generic",),
        "IIc": ("special", "generic"),
        "IIIa": ("generic", "L3_trivial", "L_trivial", "both_trivial"),
        "IIIc": ("generic",),
        "IVa": ("generic",), "IVb": ("generic",), "IVc": ("generic",),
        "V_gen": ("generic",), "V_2": ("generic",),
        "VI": ("generic",),
        "VIIa": ("generic", "2o_eq_2tau"),
        "VIIb": ("generic",),
    }[label]


# -- parameter budgets ---------------------------------------------------------


@dataclass
class ParamBudget:
    label: str
    subcase: str
    b: int
    v1: int
    xi: int
    tau: int
    w: int
    fibre_correction: int = 0
    exact: bool = False

    @property
    def total(self):
        return (self.b + self.v1 + self.xi + self.tau + self.w
                - self.fibre_correction)

    def to_json(self):
        return {"label": self.label, "subcase": self.subcase, "B": self.b,
                "V1": self.v1, "xi": self.xi, "tau": self.tau, "w": self.w,
                "fibre_correction": self.fibre_correction,
                "total": self.total, "exact": self.exact}


_XI_PARAMS = {"I": 2, "IIa": 2, "IIb": 2, "IIc": 1, "IIIa": 1, "IIIc": 1,
              "IVa": 0, "IVb": 0, "IVc": 0, "V_gen": 2, "V_2": 2,
              "VI": 2, "VIIa": 1, "VIIb": 1}

_V1_PARAMS = {"I": 1, "IIa": 0, "IIb": 0, "IIc": 0, "IIIa": 1, "IIIc": 1,
              "IVa": 1, "IVb": 1, "IVc": 1, "V_gen": 0, "V_2": 0,
              "VI": 0, "VIIa": 0, "VIIb": 0}

_TAU_PINNED_SUBCASES = {"2p_eq_2tau", "special", "L3_trivial", "L_trivial",
                        "both_trivial", "2o_eq_2tau"}


def _iv_degree_zero_summands(label):
    """(a, b) rows with class a*(p-o) + b*(tau-o): the two degree-0 summands
    of the split sextic bundle for the three m = 2 strata."""
    return {
        "IVa": [(6, -2), (4, -2)],
        "IVb": [(-6, -2), (-4, -2)],
        "IVc": [(6, -2), (-6, -2)],
    }[label]


def _zspan_contains(vectors, target):
    """Whether target lies in the Z-span of up to two integer vectors."""
    import math
    vs = [v for v in vectors if v != (0, 0)]
    tx, ty = target
    if not vs:
        return target == (0, 0)
    if len(vs) == 1:
        a, b = vs[0]
        den, num = (a, tx) if a else (b, ty)
        if num % den:
            return False
        k = num // den
        return (a * k, b * k) == target
    (a, b), (c, d) = vs
    det = a * d - b * c
    if det != 0:
        sn, tn = d * tx - c * ty, -b * tx + a * ty
        return sn % det == 0 and tn % det == 0
    # parallel vectors: combine along the common primitive direction
    g1 = math.gcd(abs(a), abs(b))
    da, db = a // g1, b // g1
    k2 = c // da if da else d // db
    g = math.gcd(g1, abs(k2))
    return _zspan_contains([(da * g, db * g)], target)


def _iv_pattern_budgets(label):
    """Exhaustive triviality patterns of the two degree-0 summands of the
    split sextic bundle, with Q-rank accounting of the joint (p, tau)
    parameters.

    Patterns whose Z-span forces O(2p - 2o) trivial contradict the stratum
    and are skipped.  Asserts the maximum total is 11."""
    rows = _iv_degree_zero_summands(label)
    budgets = []
    for mask in range(4):
        chosen = [rows[i] for i in range(2) if mask & (1 << i)]
        if _zspan_contains(chosen, (2, 0)):
            continue
        if len(chosen) < 2:
            rank = len(chosen)
        else:
            (a, b), (c, d) = chosen
            rank = 2 if a * d - b * c != 0 else 1
        free = 2 - rank
        pb = ParamBudget(label, f"pattern_{mask}", 1,
                         1 if free >= 2 else 0, 0,
                         1 if free >= 1 else 0, 9 + len(chosen) - 1)
        budgets.append(pb)
    mx = max(b.total for b in budgets)
    if mx > 11:
        raise StratumError(f"{label}: pattern budget {mx} exceeds 11")
    return budgets


def stratum_dimension(label, subcase=None):
    """ParamBudget(s) for a stratum; max over subcases when subcase is None.

    V_gen and V_2 carry the fibre correction 1 (the automorphism-pair
    variety has dimension 2, so the generic fibre of the parameter map has
    dimension 1) and are exact; all other budgets are upper bounds."""
    label = ALIASES.get(label, label)
    if label.startswith("IV"):
        budgets = _iv_pattern_budgets(label)
        best = max(budgets, key=lambda b: b.total)
        if subcase is not None:
            best = next(b for b in budgets if b.subcase == subcase)
        return best
    cases = a6_subcases(label) if subcase is None else (subcase,)
    best = None
    for sc in cases:
        a6 = a6_for_stratum(label, sc)
        tau_params = 0 if (sc in _TAU_PINNED_SUBCASES or label == "V_2") else 1
        v1 = _V1_PARAMS[label]
        if label == "IIIa" and sc == "both_trivial":
            v1 = 0
        pb = ParamBudget(label, sc, 1, v1, _XI_PARAMS[label], tau_params,
                         a6.h0 - 1)
        if label in ("V_gen", "V_2"):
            pb.fibre_correction = 1
            pb.exact = True
        if best is None or pb.total > best.total:
            best = pb
    return best


# -- the table -----------------------------------------------------------------


_EXPECTED = {"I": 13, "IIa": 12, "IIb": 12, "IIc": 11, "IIIa": 12, "IIIc": 12,
             "IVa": 11, "IVb": 11, "IVc": 11, "V_gen": 11, "V_2": 12,
             "VI": 12, "VIIa": 11, "VIIb": 11}

_ANNOTATIONS = {
    "I": ["nonempty", "irreducible"],
    "V_gen": ["nonempty"],
    "V_2": ["nonempty", "irreducible component", "generically smooth"],
}


def moduli_table():
    """The fourteen-row dimension table plus its consequences."""
    rows = []
    for label in LABELS:
        pb = stratum_dimension(label)
        dim = pb.total
        row = {
            "label": label,
            "display": "IIIa=IIIb" if label == "IIIa" else label,
            "dimension": dim,
            "exact": pb.exact,
            "disregardable": dim < 12,
            "budget": pb.to_json(),
            "annotations": _ANNOTATIONS.get(label, []),
        }
        rows.append(row)
    exact_vals = [r["dimension"] for r in rows if r["exact"]]
    if any(v > 13 for v in exact_vals):
        raise StratumError("an exact stratum dimension exceeds 13")
    if sum(1 for r in rows if r["dimension"] == 13) != 1:
        raise StratumError("exactly one stratum should reach 13")
    summary = {
        "unirational": True,
        "min_irreducible_components": 2,
        "component_dimensions": [12, 13],
        "max_components_of_dim_13": 1,
    }
    return {"rows": rows, "summary": summary}
