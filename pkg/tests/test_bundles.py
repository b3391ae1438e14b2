import pytest

from genus2strata.curves import IDENTITY, registry_curve
from genus2strata.picard import LineClass, point_class, trivial_class, divisor, class_of, h0_h1
from genus2strata import bundles as bdl
from genus2strata.rr_spaces import rr_basis
from genus2strata.picard import canonical_divisor


E = registry_curve("p5_i")
PTS = E.points()
TAU = PTS[5]
NONTRIV = LineClass(E, 0, PTS[1])


def test_indecomposable_cohomology_rules():
    """Degree-1 indecomposables have (1, 0) under every degree-0 twist; the
    self-dual degree-0 tower has (1, 1) only at the trivial twist."""
    W3 = bdl.atiyah_e(E, 3, x=TAU)
    for L in [trivial_class(E), NONTRIV, LineClass(E, 0, PTS[3])]:
        assert bdl.cohomology(W3, L) == (1, 0)
    F3 = bdl.atiyah_f(E, 3)
    assert bdl.cohomology(F3) == (1, 1)
    assert bdl.cohomology(F3, NONTRIV) == (0, 0)
    F2 = bdl.atiyah_f(E, 2)
    assert bdl.cohomology(F2, NONTRIV.inverse()) == (0, 0)


def test_line_sum_cohomology_additive():
    V = (bdl.line(trivial_class(E)) + bdl.line(trivial_class(E))
         + bdl.line(point_class(E, TAU)))
    assert bdl.cohomology(V) == (3, 2)


def test_euler_characteristic():
    exprs = [
        bdl.atiyah_e(E, 3, x=TAU) + bdl.atiyah_f(E, 2) + bdl.line(NONTRIV),
        bdl.atiyah_f(E, 4, LineClass(E, 1, PTS[2])),
        bdl.sym_cube_e3(E, TAU),
        bdl.line(LineClass(E, -3, PTS[4])) + bdl.atiyah_e(E, 2, x=PTS[2]),
    ]
    for V in exprs:
        h0, h1 = bdl.cohomology(V)
        assert h0 - h1 == bdl.deg(V)


def test_sym_square_of_split_rank2():
    p = PTS[3]
    V1 = bdl.line(point_class(E, p)) + bdl.line(LineClass(E, 1, E.neg(p)))
    S2 = bdl.sym_power(V1, 2)
    expected = (bdl.line(LineClass(E, 2, E.mul(2, p)))
                + bdl.line(LineClass(E, 2, IDENTITY))
                + bdl.line(LineClass(E, 2, E.neg(E.mul(2, p)))))
    assert S2 == expected
    assert bdl.rank(S2) == 3 and bdl.deg(S2) == 6


def test_sym_power_degree_rank_laws():
    """rank S^k(rank 2) = k + 1 and deg S^k(rank 2, deg d) = d k(k+1)/2."""
    F2 = bdl.atiyah_f(E, 2, LineClass(E, 1, PTS[2]))   # rank 2, degree 2
    for k in (2, 3, 4):
        S = bdl.sym_power(F2, k)
        assert bdl.rank(S) == k + 1
        assert bdl.deg(S) == 2 * k * (k + 1) // 2
    W = bdl.atiyah_e(E, 2, x=TAU)                      # rank 2, degree 1
    for k in (2, 3):
        S = bdl.sym_power(W, k)
        assert bdl.rank(S) == k + 1
        assert bdl.deg(S) == k * (k + 1) // 2


def test_sym_tower_of_selfdual():
    assert bdl.sym_power(bdl.atiyah_f(E, 2), 2) == bdl.atiyah_f(E, 3)
    assert bdl.sym_power(bdl.atiyah_f(E, 2), 3) == bdl.atiyah_f(E, 4)


def test_sym_square_of_indecomposable_rank2():
    """S^2 of the degree-1 rank-2 indecomposable is the sum of the three
    nontrivial 2-torsion classes twisted by the base point."""
    W = bdl.atiyah_e(E, 2, x=TAU)
    S2 = bdl.sym_power(W, 2)
    assert bdl.rank(S2) == 3 and bdl.deg(S2) == 3
    assert all(a.kind == "L" for a in S2.atoms)
    # determinant both ways: the 2-torsion classes cancel pairwise
    assert bdl.det(S2) == point_class(E, TAU) ** 3
    # cohomology additivity: three degree-1 lines
    assert bdl.cohomology(S2) == (3, 0)


def test_sym_cube_of_indecomposable_rank2():
    W = bdl.atiyah_e(E, 2, x=TAU)
    S3 = bdl.sym_power(W, 3)
    assert bdl.rank(S3) == 4 and bdl.deg(S3) == 6
    assert len(S3.atoms) == 2
    assert all(a.kind == "E" and a.rank == 2 for a in S3.atoms)
    assert bdl.cohomology(S3) == (6, 0)


def test_twists_distribute_over_sym():
    W = bdl.atiyah_e(E, 2, x=TAU)
    M = LineClass(E, 0, PTS[6])
    lhs = bdl.sym_power(bdl.tensor_line(W, M), 2)
    rhs = bdl.tensor_line(bdl.sym_power(W, 2), M ** 2)
    assert lhs == rhs


def test_det_rules():
    W = bdl.atiyah_e(E, 2, x=TAU, twist=NONTRIV)
    assert bdl.det(W) == point_class(E, TAU) * NONTRIV ** 2
    F3 = bdl.atiyah_f(E, 3, NONTRIV)
    assert bdl.det(F3) == NONTRIV ** 3
    assert bdl.dual(F3) == bdl.atiyah_f(E, 3, NONTRIV.inverse())
    assert bdl.dual(bdl.atiyah_f(E, 3)) == bdl.atiyah_f(E, 3)  # self-dual


def test_unsupported_operations_raise():
    W3 = bdl.atiyah_e(E, 3, x=TAU)
    with pytest.raises(bdl.UnsupportedExpression):
        bdl.sym_power(W3, 3)
    with pytest.raises(bdl.UnsupportedExpression):
        bdl.dual(W3)
    with pytest.raises(bdl.UnsupportedExpression):
        bdl.cohomology(W3, point_class(E, TAU))  # twist must have degree 0
    with pytest.raises(bdl.UnsupportedExpression):
        bdl.sym_power(W3 + bdl.line(NONTRIV), 2)


def test_sym_cube_atom():
    S3 = bdl.sym_cube_e3(E, TAU, NONTRIV)
    assert bdl.rank(S3) == 10 and bdl.deg(S3) == 10
    assert bdl.cohomology(S3) == (10, 0)


def test_cohomology_agrees_with_section_oracle():
    """For sums of line classes the rule-based cohomology matches the
    Riemann-Roch basis oracle, across the small registry curves."""
    for name in ("p5_i", "p7_c1"):
        C = registry_curve(name)
        pts = C.points()
        for d in (0, 1, 2, 3):
            for P in pts[:4]:
                L = LineClass(C, d, P)
                V = bdl.line(L) + bdl.line(trivial_class(C))
                h0 = bdl.cohomology(V)[0]
                oracle = (len(rr_basis(C, canonical_divisor(L), validate=False))
                          + len(rr_basis(C, divisor(C), validate=False)))
                assert h0 == oracle


def test_canonical_rendering_stable():
    V = bdl.atiyah_e(E, 3, x=TAU) + bdl.line(NONTRIV)
    W = bdl.line(NONTRIV) + bdl.atiyah_e(E, 3, x=TAU)
    assert V == W and V.render() == W.render()
