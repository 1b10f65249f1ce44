from fractions import Fraction

import pytest

from hilbloc.localization import TautClass, chi_via_RR
from hilbloc.rings import binomial
from hilbloc.series import TruncSeries, todd_series
from hilbloc.toric import blowup, invariants, line_bundle, o_bundle, p1xp1, p2
from hilbloc.universal import (
    FitError,
    chi_Ln_Er,
    chi_from_genfun,
    chi_taut,
    chi_twist_series,
    cohomology_genfun,
    fit_AB,
    fit_five_series,
    gamma_vector,
    h_psi_phi,
    universal_chern_poly,
)


class FakeInv:
    def __init__(self, chi_L, chi_O=2, KL=0, K2=0):
        self.chi_L, self.chi_O, self.KL, self.K2 = chi_L, chi_O, KL, K2


def test_universal_table_n1():
    tab = universal_chern_poly(1)
    vals = tab.evaluate(9, 3)
    assert vals[(2,)] == 3 and vals[(1, 1)] == 9


def test_universal_table_matches_models():
    from hilbloc.localization import chern_numbers_hilb

    for n in (2, 3):
        tab = universal_chern_poly(n)
        for model, pair in ((p2(), (9, 3)), (p1xp1(), (8, 4)), (blowup(p2(), 0), (8, 4))):
            direct = chern_numbers_hilb(model, n).as_dict()
            assert tab.evaluate(*pair) == direct


def test_universal_k3_values():
    tab = universal_chern_poly(2)
    vals = tab.evaluate(0, 24)
    assert vals[(4,)] == 324
    assert vals[(2, 2)] == 828


def test_fit_ab_trivial_ranks():
    for r in (-1, 0, 1):
        pair = fit_AB(r, 3)
        assert all(c == 0 for c in pair.log_a.coeffs)
        assert pair.b == TruncSeries.one("z", 3)


def test_fit_ab_printed_z2_values():
    pair = fit_AB(2, 2)
    assert pair.log_a[2] == Fraction(1, 6) * 2 - Fraction(1, 6) * 8
    assert pair.b[2] == Fraction(1, 24) * 4 - Fraction(1, 24) * 16


def test_fit_ab_symmetry():
    p3, m3 = fit_AB(3, 3), fit_AB(-3, 3)
    assert all(a + b == 0 for a, b in zip(p3.log_a.coeffs, m3.log_a.coeffs))
    assert p3.b == m3.b


def test_fit_ab_rejects_corrupt_data():
    data = {k: chi_twist_series(k, 2, 3) for k in (0, 1, 2)}
    bad = data[2]
    data[2] = TruncSeries("z", 3, [bad[0], bad[1], bad[2] + 1, bad[3]])
    with pytest.raises(FitError):
        fit_AB(2, 3, chi_data=data)


def test_chi_ln_er_matches_localization():
    bl = blowup(p2(), 0)
    L = line_bundle(bl, (2, 1, 0, 0))
    inv = invariants(bl, L)
    for r in (2, -2):
        pair = fit_AB(r, 3)
        for n in (1, 2, 3):
            assert chi_Ln_Er(inv, n, r, pair) == chi_via_RR(bl, n, L, r)


def test_chi_ln_er_k3_closed_form():
    inv = FakeInv(chi_L=4)
    assert chi_Ln_Er(inv, 2, 0, surface="k3") == 10
    assert chi_Ln_Er(inv, 2, 2, surface="k3") == 0


def test_chi_ln_er_abelian_closed_form():
    inv = FakeInv(chi_L=2, chi_O=0)
    assert chi_Ln_Er(inv, 2, 1, surface="abelian") == 1
    with pytest.raises(ValueError):
        chi_Ln_Er(inv, 0, 1, surface="abelian")
    with pytest.raises(ValueError):
        chi_Ln_Er(inv, 2, 1, surface="enriques")


def test_chi_taut_binomial():
    assert chi_taut(6, 1, 4) == 6
    assert chi_taut(3, 2, 3) == 3 * binomial(Fraction(3), 2)


def test_genfun_trivial_cohomology():
    # h*(O) = (1,0,0): h^i(F^[n]) = h^i(F) for every n
    gf = cohomology_genfun((2, 1, 4), (1, 0, 0), 5)
    from hilbloc.rings import Poly

    want = 2 + Poly.var("u") + 4 * Poly.var("u", 2)
    for n in range(1, 6):
        assert Poly.coerce(gf[n - 1]) == want


def test_genfun_u_minus_one_is_chi():
    gf = cohomology_genfun((1, 2, 0), (2, 1, 1), 6)
    for n in range(1, 7):
        assert chi_from_genfun(gf, n) == chi_taut(-1, 2, n)


def test_gamma_vectors_of_references():
    m = p2()
    x = TautClass(((o_bundle(m, 1), 1),), 1)
    assert gamma_vector(m, x) == (1, 0, 3, 9, 3)
    x = TautClass(((o_bundle(m, 1), 2),), 0)
    assert gamma_vector(m, x) == (4, 1, 6, 9, 3)


def test_five_series_rank_only_classes():
    td = todd_series("x", 4)
    series = fit_five_series("expdet", td, 2, 2)
    # x = r*1 has c1(x) = c2(x) = 0, so A2 cannot be seen by expdet data
    assert all(c == 0 for c in series[1].coeffs)


def test_five_series_predicts_blowup():
    bl = blowup(p2(), 0)
    x = TautClass(((line_bundle(bl, (2, 1, 0, 0)), 1), (line_bundle(bl, (1, 0, 0, 0)), 1)))
    order = 2
    phi = TruncSeries("x", 2 * order, [1, 1])
    for psi in ("chern", "segre"):
        series = fit_five_series(psi, phi, 2, order)
        gam = gamma_vector(bl, x)
        pred = sum(
            (s * Fraction(g) for s, g in zip(series, gam)),
            TruncSeries.zero("z", order),
        ).exp()
        assert pred == h_psi_phi(bl, x, psi, phi, order)


def test_five_series_expdet_matches_twist_fit():
    # Psi = exp(c1 det), Phi = Todd on x = O(k) + (r-1)*1 gives the chi series
    r, order = 2, 3
    m = p2()
    td = todd_series("x", 2 * order)
    series = fit_five_series("expdet", td, r, order)
    x = TautClass(((o_bundle(m, 1), 1),), r - 1)
    gam = gamma_vector(m, x)
    pred = sum(
        (s * Fraction(g) for s, g in zip(series, gam)),
        TruncSeries.zero("z", order),
    ).exp()
    assert pred == chi_twist_series(1, r, order)


def test_five_series_bad_psi():
    with pytest.raises(ValueError):
        fit_five_series("euler", todd_series("x", 4), 2, 2)
