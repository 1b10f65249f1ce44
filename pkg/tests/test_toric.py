import pytest

from hilbloc.toric import (
    TLineBundle,
    ToricSurface,
    blowup,
    build_model,
    intersection,
    invariants,
    line_bundle,
    o_bundle,
    p1xp1,
    p2,
)


def test_p2_intersection_form():
    m = p2()
    for a in range(-2, 4):
        for b in range(-2, 4):
            assert intersection(o_bundle(m, a), o_bundle(m, b)) == a * b


def test_p1xp1_intersection_form():
    q = p1xp1()
    for a, b, c, d in ((1, 0, 0, 1), (2, 3, 1, 1), (-1, 2, 2, 0)):
        assert intersection(o_bundle(q, a, b), o_bundle(q, c, d)) == a * d + b * c


def test_canonical_invariants():
    assert p2().c1_squared() == 9 and p2().c2() == 3
    assert p1xp1().c1_squared() == 8 and p1xp1().c2() == 4
    bl = blowup(p2(), 0)
    assert bl.c1_squared() == 8 and bl.c2() == 4


def test_exceptional_curve():
    m = p2()
    bl = blowup(m, 0)
    # the inserted ray's divisor is the exceptional curve: E^2 = -1
    e = line_bundle(bl, (0, 1, 0, 0))
    assert intersection(e, e) == -1
    k = bl.canonical_bundle()
    assert intersection(k, e) == -1  # K.E = -1 for a (-1)-curve


def test_iterated_blowup():
    bl2 = blowup(blowup(p2(), 0), 1)
    assert bl2.euler_number == 5
    assert bl2.c1_squared() == 7


def test_invariants_riemann_roch():
    m = p2()
    for k in range(-1, 4):
        inv = invariants(m, o_bundle(m, k))
        assert inv.chi_O == 1
        assert inv.chi_L == (k + 1) * (k + 2) // 2


def test_build_model_specs():
    assert build_model("p2").name == "p2"
    assert build_model("p1xp1").euler_number == 4
    assert build_model("blowup:p2:0").euler_number == 4
    assert build_model("blowup:blowup:p2:0:1").euler_number == 5
    for bad in ("p3", "blowup:p2:9", "blowup:p2", ""):
        with pytest.raises(ValueError):
            build_model(bad)


def test_fan_validation():
    with pytest.raises(ValueError):
        ToricSurface("bad", ((1, 0), (0, 1), (-1, -2)))
    with pytest.raises(ValueError):
        TLineBundle(p2(), (1, 0))  # wrong length
