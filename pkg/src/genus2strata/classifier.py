"""Decision procedures for the rank-2/rank-3 direct images.

Covers: the split/indecomposable dichotomy of the rank-2 direct image, the
exclusion of the maximal-degree subsheaf case (e = 2) by a vanishing
certificate, the three-dimensional extension space, the classification of
the rank-3 direct image twisted down by -2o into the fourteen stratum types,
rank-3 recognition from h^1 profiles, and the evaluation-oracle cross-check.
"""

from dataclasses import dataclass, field

from .curves import IDENTITY, Point, point_key
from .picard import (LineClass, point_class, trivial_class, divisor,
                     canonical_divisor, h0_h1, is_multiple_trivial)
from . import bundles as bdl
from .rr_spaces import (SectionFn, rr_basis, alpha_star_kernel, _const,
                        squared_v1_summands)


SPLIT_LABELS = ("I", "IIa", "IIb", "IIc", "IIIa", "IIIb", "IIIc",
                "IVa", "IVb", "IVc", "V")
INDEC_LABELS = ("VI", "VIIa", "VIIb")


class ClassificationError(Exception):
    pass


@dataclass(frozen=True)
class V1Split:
    """V_1 = O(p) (+) O(2o-p)."""
    p: Point


@dataclass(frozen=True)
class V1Indec:
    """V_1 = F_2(eta) with 2*eta in |2o| (eta is 2-torsion)."""
    eta: Point


@dataclass(frozen=True)
class SplitExtension:
    """Extension datum in the split case: which of the three residue classes
    vanish, optionally with concrete sections (f0, f1, f2, f3)."""
    zeros: tuple  # three bools; True = the class vanishes
    sections: tuple = None

    @property
    def m(self):
        return sum(self.zeros)


@dataclass(frozen=True)
class IndecExtension:
    """Extension datum in the indecomposable case: the cokernel point q of
    the generic-v presentation, plus whether the image lies in the unique
    rank-2 subtower (which happens exactly for q = o)."""
    q: Point
    im_v_in_subtower: bool


@dataclass
class Classification:
    labels: tuple
    bundles: dict          # label -> BundleExpr for V2(-2o)
    torsion: dict
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "labels": list(self.labels),
            "bundles": {k: v.render() for k, v in self.bundles.items()},
            "torsion": dict(self.torsion),
            "notes": list(self.notes),
        }


def ext_dimension(E, v1, tau):
    """dim Ext^1 of the torsion quotient by the squared rank-2 image: always 3.

    Split case: sum of h^0(P_i(tau - o)) - h^0(P_i(-o)); indecomposable case:
    h^0(F_3(o + tau)) - h^0(F_3(o))."""
    o = point_class(E, IDENTITY)
    t = point_class(E, tau)
    if isinstance(v1, V1Split):
        total = 0
        for Pi in squared_v1_summands(E, v1.p):
            up = bdl.cohomology(bdl.line(Pi * t / o))[0]
            down = bdl.cohomology(bdl.line(Pi / o))[0]
            total += up - down
        return total
    f3 = bdl.atiyah_f(E, 3)
    up = bdl.cohomology(bdl.tensor_line(f3, o * t), trivial_class(E))
    down = bdl.cohomology(bdl.tensor_line(f3, o), trivial_class(E))
    return up[0] - down[0]


def exclude_e2(E, M, L, deg_T=3):
    """Vanishing certificate ruling out the e = 2 branch.

    With T of degree deg_T, M of degree 2 and L nontrivial torsion of degree
    0, the two leading coefficient bundles T^-1 L^6 and T^-1 M L^5 of the
    residual branch sextic have no sections, so x0^2 divides its equation and
    the branch curve would be non-reduced."""
    if L.degree != 0 or L.is_trivial():
        raise ValueError("L must be a nontrivial torsion class of degree 0")
    if M.degree != 2:
        raise ValueError("M must have degree 2")
    rows = {}
    for i in range(7):
        j = 6 - i
        coeff = (M ** i) * (L ** j)
        coeff = LineClass(E, coeff.degree - deg_T, coeff.point)
        rows[f"a{i}{j}"] = h0_h1(coeff)[0]
    cert = {
        "h0_a06": rows["a06"],
        "h0_a15": rows["a15"],
        "all_coefficients": rows,
        "conclusion": ("a06 = a15 = 0 forces x0^2 to divide the sextic; "
                       "the branch curve is non-reduced, so e = 2 does not occur"),
        "excluded": rows["a06"] == 0 and rows["a15"] == 0,
    }
    return cert


# -- rank-3 recognition -------------------------------------------------------


def recognize_rank3(E, h1_profile, det_cls):
    """Recover a rank-3 bundle of determinant det_cls (degree 1) from its
    h^1(V tensor L) profile over degree-0 classes L.

    Profile: dict LineClass -> positive int (classes with vanishing h^1 are
    omitted).  Returns a BundleExpr, or a tuple of candidate BundleExprs when
    the profile does not separate the two rank-2-plus-line possibilities."""
    if det_cls.degree != 1:
        raise ClassificationError("det must have degree 1")
    peaks = {L: v for L, v in h1_profile.items() if v}
    if any(L.degree != 0 for L in peaks):
        raise ClassificationError("profile classes must have degree 0")
    if not peaks:
        return bdl.atiyah_e(E, 3, det=det_cls)
    if len(peaks) == 1:
        (M, v), = peaks.items()
        if v == 1:
            s_cls = det_cls * M ** 3  # det of V tensor M
            e_part = bdl.BundleExpr(E, [bdl.Atom("E", 2, s_cls * (M.inverse() ** 2))])
            cand1 = e_part + bdl.line(M.inverse())
            cand2 = bdl.atiyah_f(E, 2, M.inverse()) + bdl.line(s_cls * M.inverse())
            return (cand1, cand2)
        if v == 2:
            Minv = M.inverse()
            return (bdl.line(Minv) + bdl.line(Minv)
                    + bdl.line(det_cls * M * M))
        raise ClassificationError(f"peak value {v} exceeds 2")
    if len(peaks) == 2 and all(v == 1 for v in peaks.values()):
        (M1, _), (M2, _) = peaks.items()
        rest = det_cls * M1 * M2
        return bdl.line(M1.inverse()) + bdl.line(M2.inverse()) + bdl.line(rest)
    raise ClassificationError(f"profile {peaks} matches no rank-3 case")


# -- the classification -------------------------------------------------------


def _split_bundles(E, p, tau, label):
    o = IDENTITY
    t = point_class(E, tau)
    two_p = LineClass(E, 0, E.mul(2, p))            # 2p - 2o
    two_o_p = two_p.inverse()                       # 2o - 2p
    if label == "I":
        return bdl.atiyah_e(E, 3, x=tau)
    if label == "IIa":
        return bdl.atiyah_f(E, 2, two_o_p) + bdl.line(t)
    if label == "IIb":
        return bdl.atiyah_e(E, 2, x=tau) + bdl.line(trivial_class(E))
    if label == "IIc":
        return (bdl.line(two_o_p) + bdl.line(trivial_class(E))
                + bdl.line(t * two_p))
    if label == "IIIa":
        return (bdl.BundleExpr(E, [bdl.Atom("E", 2, t * two_o_p)])
                + bdl.line(two_p))
    if label == "IIIb":
        return (bdl.BundleExpr(E, [bdl.Atom("E", 2, t * two_p)])
                + bdl.line(two_o_p))
    if label == "IIIc":
        return bdl.atiyah_e(E, 2, x=tau) + bdl.line(trivial_class(E))
    if label == "IVa":
        return (bdl.line(two_p) + bdl.line(trivial_class(E))
                + bdl.line(t * two_o_p))
    if label == "IVb":
        return (bdl.line(two_o_p) + bdl.line(trivial_class(E))
                + bdl.line(t * two_p))
    if label == "IVc":
        return bdl.line(two_p) + bdl.line(two_o_p) + bdl.line(t)
    if label == "V":
        return (bdl.line(trivial_class(E)) + bdl.line(trivial_class(E))
                + bdl.line(t))
    raise ClassificationError(label)


def classify_v2(E, v1, tau, xi):
    """Stratum label(s) and the decomposition of V_2(-2o).

    Split branch: branches on the torsion of p (is 2(p-o) trivial, is
    4(p-o) trivial) and the vanishing pattern of the extension datum.
    Indecomposable branch: generic cokernel point gives the indecomposable
    rank-3 answer; the special position gives the two-candidate set."""
    if isinstance(v1, V1Indec):
        if not is_multiple_trivial(E, v1.eta, 2):
            raise ClassificationError("eta must be 2-torsion")
        if not isinstance(xi, IndecExtension):
            raise ClassificationError("indecomposable V_1 takes IndecExtension data")
        if xi.im_v_in_subtower != xi.q.is_identity:
            raise ClassificationError(
                "inconsistent datum: the image lies in the rank-2 subtower "
                "exactly when the cokernel point is o")
        torsion = {"q_is_o": xi.q.is_identity}
        if not xi.q.is_identity:
            return Classification(("VI",), {"VI": bdl.atiyah_e(E, 3, x=tau)}, torsion)
        cands = {
            "VIIa": bdl.atiyah_f(E, 2) + bdl.line(point_class(E, tau)),
            "VIIb": bdl.atiyah_e(E, 2, x=tau) + bdl.line(trivial_class(E)),
        }
        return Classification(("VIIa", "VIIb"), cands, torsion,
                              notes=["no criterion separates VIIa from VIIb"])

    if not isinstance(xi, SplitExtension):
        raise ClassificationError("split V_1 takes SplitExtension data")
    if all(xi.zeros):
        raise ClassificationError(
            "trivial extension class: all three residues vanish, so the "
            "direct image is not locally free")
    p = v1.p
    t2 = is_multiple_trivial(E, p, 2)
    t4 = is_multiple_trivial(E, p, 4)
    torsion = {"two_p_minus_2o_trivial": t2, "four_p_minus_4o_trivial": t4}
    z1, z2, z3 = xi.zeros
    m = xi.m

    def one(label, notes=()):
        return Classification((label,), {label: _split_bundles(E, p, tau, label)},
                              torsion, notes=list(notes))

    if t2:
        return one("V")
    if m == 0:
        if not t4:
            return one("I")
        cands = {lbl: _split_bundles(E, p, tau, lbl) for lbl in ("IIa", "IIb")}
        return Classification(
            ("IIa", "IIb"), cands, torsion,
            notes=["order-4 case with m = 0: the (m, torsion) data do not "
                   "separate IIa from IIb"])
    if m == 1:
        if z2:
            return one("IIc") if t4 else one("IIIc")
        return one("IIIa") if z1 else one("IIIb")
    # m == 2
    if z1 and z2:
        return one("IVa")
    if z2 and z3:
        return one("IVb")
    return one("IVc")


# -- concrete extension sections and the oracle cross-check -------------------


def canonical_f0(E, tau):
    """The section of O(tau) vanishing exactly at tau (unique up to scale)."""
    return SectionFn(_const(E, E.F.one), divisor(E, (tau, 1)))


def make_extension_sections(E, p, tau, zeros, seed=0):
    """Concrete (f0, f1, f2, f3) realizing the given vanishing pattern.

    f_i lives in H^0(P_i(tau - o)); its residue class vanishes iff the
    section vanishes at tau, which is arranged exactly for the flagged
    entries (by multiplying f0 into H^0(P_i(-o))) and avoided for the rest
    by a seeded redraw."""
    import random
    rng = random.Random(seed)
    f0 = canonical_f0(E, tau)
    o = point_class(E, IDENTITY)
    t = point_class(E, tau)
    out = [f0]
    for i, Pi in enumerate(squared_v1_summands(E, p)):
        target = Pi * t / o
        if zeros[i]:
            down = rr_basis(E, canonical_divisor(Pi / o), validate=False)
            sec = (f0 * down[0]).rebase(canonical_divisor(target))
        else:
            basis = rr_basis(E, canonical_divisor(target), validate=False)
            for _ in range(64):
                coeffs = [E.F(rng.randrange(E.F.p)) for _ in basis]
                sec = basis[0] * coeffs[0]
                for b, c in zip(basis[1:], coeffs[1:]):
                    sec = sec + b * c
                if not sec.is_zero() and not sec.vanishes_at(tau):
                    break
            else:
                raise ClassificationError("could not draw a nonvanishing section")
        out.append(sec)
    return tuple(out)


def oracle_h1_profile(E, p, tau, sections):
    """h^1(V_2(-2o) tensor L) at the three special degree-0 classes, via the
    evaluation-matrix kernel."""
    two_p = LineClass(E, 0, E.mul(2, p))
    out = {}
    for L in {two_p.inverse(), trivial_class(E), two_p}:
        out[L] = alpha_star_kernel(E, p, tau, sections, L)
    return out


@dataclass
class VerificationReport:
    consistent: bool
    labels: tuple
    profile: dict
    oracle_answer: object
    symbolic_bundles: dict
    notes: list

    def to_json(self):
        prof = {repr(k): v for k, v in sorted(self.profile.items(),
                                              key=lambda kv: point_key(kv[0].point))}
        oracle = self.oracle_answer
        if isinstance(oracle, tuple):
            oracle = [b.render() for b in oracle]
        else:
            oracle = oracle.render()
        return {
            "consistent": self.consistent,
            "labels": list(self.labels),
            "h1_profile": prof,
            "oracle": oracle,
            "symbolic": {k: v.render() for k, v in self.symbolic_bundles.items()},
            "notes": list(self.notes),
        }


def verify_classification(E, p, tau, sections):
    """Cross-check the symbolic classification against the evaluation oracle.

    Computes the h^1 profile with alpha_star_kernel, recognizes the bundle
    from the profile, classifies symbolically from the vanishing pattern,
    and reports agreement.  The known one-sided IIb labelling (the stated
    bundle peaks at the trivial class while the oracle peak sits at the
    order-2 class) is reported, not reconciled."""
    f0, f1, f2, f3 = sections
    zeros = tuple(bool(f.is_zero() or f.vanishes_at(tau)) for f in (f1, f2, f3))
    xi = SplitExtension(zeros=zeros, sections=sections)
    sym = classify_v2(E, V1Split(p), tau, xi)
    profile = oracle_h1_profile(E, p, tau, sections)
    det_cls = point_class(E, tau)
    oracle = recognize_rank3(E, profile, det_cls)
    notes = list(sym.notes)

    oracle_set = set(oracle) if isinstance(oracle, tuple) else {oracle}
    sym_set = set(sym.bundles.values())
    matched = oracle_set & sym_set
    consistent = bool(matched)
    if not consistent and "IIb" in sym.labels:
        # the paper's IIb bundle differs from the oracle's torsion-shifted
        # alternative; IIa must still match
        consistent = sym.bundles.get("IIa") in oracle_set
        notes.append("IIb paper bundle E_tau(2,1)+O differs from the oracle "
                     "alternative at the order-2 peak; both recorded")
    if "V" in sym.labels:
        # case V: profile peak 2 at the trivial class
        consistent = consistent and profile.get(trivial_class(E), 0) == 2
    return VerificationReport(consistent, sym.labels, profile, oracle,
                              sym.bundles, notes)
