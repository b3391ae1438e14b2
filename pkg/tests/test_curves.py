import math

import pytest

from genus2strata.curves import (IDENTITY, curve_from_spec, registry_curve,
                                 registry_features, registry_names,
                                 velu_3_isogeny)

ALL_CURVES = registry_names()


def cayley_table(E):
    pts = E.points()
    idx = {p: i for i, p in enumerate(pts)}
    return pts, [[idx[E.add(P, Q)] for Q in pts] for P in pts]


@pytest.mark.parametrize("name", ALL_CURVES)
def test_group_axioms_exhaustive(name):
    """Associativity, commutativity, identity and inverses over every
    rational point triple (via the Cayley table; all registry p <= 101)."""
    E = registry_curve(name)
    pts, table = cayley_table(E)
    n = len(pts)
    assert pts[0] is IDENTITY
    for i in range(n):
        assert table[0][i] == i and table[i][0] == i
        assert any(table[i][j] == 0 for j in range(n))
        for j in range(n):
            assert table[i][j] == table[j][i]
    for i in range(n):
        ti = table[i]
        for j in range(n):
            tij = table[i][j]
            tj = table[j]
            for k in range(n):
                assert table[tij][k] == ti[tj[k]]


@pytest.mark.parametrize("name", ALL_CURVES)
def test_hasse_bound(name):
    E = registry_curve(name)
    p = E.F.p
    assert abs(E.order() - p - 1) <= math.isqrt(4 * p)


@pytest.mark.parametrize("name", ALL_CURVES)
def test_points_on_curve(name):
    E = registry_curve(name)
    for P in E.points():
        assert E.contains(P)


def test_torsion_basics():
    E = registry_curve("p5_i")
    one, complete1 = E.n_torsion(1)
    assert one == [IDENTITY] and complete1
    two, complete2 = E.n_torsion(2)
    assert len(two) == 4 and complete2
    # y^2 = x^3 - x: the 2-torsion x-coordinates are 0, 1, -1
    xs = sorted(P.x.c for P in two if not P.is_identity)
    assert xs == [0, 1, 4]


def test_torsion_incomplete_flag():
    E = registry_curve("p11_c1")
    two, complete = E.n_torsion(2)
    assert len(two) == 2 and not complete


def test_point_not_on_curve_rejected():
    E = registry_curve("p5_i")
    from genus2strata.curves import Point
    bad = Point(E.F(2), E.F(2))
    assert not E.contains(bad)
    with pytest.raises(ValueError):
        E.add(bad, IDENTITY)


@pytest.mark.parametrize("name", ["p7_c1", "p13_c4", "p17_c1"])
def test_velu_3_isogeny(name):
    E = registry_curve(name)
    T = registry_features(name)["order3"]
    assert T is not None and E.point_order(T) == 3
    E2, phi = velu_3_isogeny(E, T)
    pts = E.points()
    kernel = {IDENTITY, T, E.add(T, T)}
    # kernel collapses, cosets agree
    for P in kernel:
        assert phi(P) is IDENTITY or phi(P).is_identity
    for P in pts:
        assert phi(E.add(P, T)) == phi(P)
    # group homomorphism, exhaustively
    for P in pts:
        for Q in pts:
            assert phi(E.add(P, Q)) == E2.add(phi(P), phi(Q))
    # 3-to-1 onto the image when the kernel is rational
    image = {phi(P) for P in pts}
    assert len(image) * 3 == len(pts)
    assert len({phi(P) for P in pts if phi(P).is_identity}) == 1


def test_velu_rejects_wrong_order():
    E = registry_curve("p7_c1")
    two = E.two_torsion()[0]
    with pytest.raises(ValueError):
        velu_3_isogeny(E, two)


def test_curve_spec_roundtrip():
    E = curve_from_spec("13:0:4")
    assert E.spec() == "13:0:4"
    assert E.order() == 21


def test_registry_features():
    feats = registry_features("p101_i")
    assert feats["order"] == 104
    assert len(feats["two_torsion"]) == 3
    assert feats["order4"] is not None
    i = feats["sqrt_minus_one"]
    assert i is not None and i * i == registry_curve("p101_i").F(-1)


def test_base_extend_and_lift():
    E = registry_curve("p5_i")
    E2 = E.base_extend(2)
    assert E2.F.order == 25
    for P in E.points():
        assert E2.contains(E.lift_point(P, E2))
    # full geometric 2-torsion becomes visible no later than level 2
    assert len(E2.n_torsion(2)[0]) == 4
