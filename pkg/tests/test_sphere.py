import random
from fractions import Fraction

import pytest

from qsphere.algebra import AlgebraElement, a, b, c, d
from qsphere.calculus import EM, EP, VOL, Form, d as dd, wedge
from qsphere.scalars import Scalar, mu, specialize, two_q
from qsphere.sphere import (
    DB,
    DEL,
    DELBAR,
    F0,
    GENS,
    SphereElement,
    SphereForm,
    b0,
    bm,
    bp,
    del_split,
    eigenvalue_on,
    g_minus_plus,
    g_plus_minus,
    hodge_star,
    laplacian,
    lift_iY,
    maxwell_check,
    metric_g,
    one,
    one_form_relation_check,
    proportionality,
    soldering_check,
    sphere_relations_check,
    spin_multiplet,
    star_first_leg,
    star_second_leg,
    upsilon,
    wedge_tables_check,
)

q = Scalar.q_power


def random_sphere_element(rng, length=3):
    """A random product of sphere generators (degree 0 by construction)."""
    out = one
    for _ in range(rng.randrange(1, length + 1)):
        out = out * rng.choice([b0, bp, bm])
    return out


def test_check_functions_all_pass():
    assert sphere_relations_check() == []
    assert soldering_check() == []
    assert one_form_relation_check() == []
    assert wedge_tables_check() == []


def test_types_validate():
    SphereElement(b0 * bp)
    with pytest.raises(ValueError):
        SphereElement(a)
    SphereForm(DB["+"])
    SphereForm(upsilon())
    with pytest.raises(ValueError):
        SphereForm(Form.of(one, "0"))  # vertical direction
    with pytest.raises(ValueError):
        SphereForm(Form.of(a * a, "+"))  # wrong coefficient degree


def test_del_split_values():
    assert DEL["-"] == Form.of(b * b, "+")
    assert DEL["0"] == Form.of(q(1) * (b * d), "+")
    assert DEL["+"] == Form.of(d * d, "+")
    assert DELBAR["-"] == Form.of(a * a, "-")
    assert DELBAR["0"] == Form.of(q(1) * (a * c), "-")
    assert DELBAR["+"] == Form.of(c * c, "-")
    for i in GENS:
        assert DEL[i] + DELBAR[i] == DB[i]


def test_del_in_terms_of_d():
    # each chiral derivative is a combination of the one-forms db_i
    db0, dbp, dbm = DB["0"], DB["+"], DB["-"]
    assert DEL["-"] == q(1) * (bm * db0) - q(-1) * (b0 * dbm)
    assert DEL["+"] == (one + q(1) * b0) * dbp - q(-1) * (bp * db0)
    assert DEL["0"] == q(2) * (bm * dbp) - q(-1) * (b0 * db0)
    assert DELBAR["0"] == bp * dbm - q(1) * (b0 * db0)
    assert DELBAR["-"] == (one + q(-1) * b0) * dbm - q(1) * (bm * db0)
    assert DELBAR["+"] == q(-1) * (bp * db0) - q(1) * (b0 * dbp)


def test_chiral_commutation_table():
    # moving a generator across a chiral one-form
    cases = [
        (DEL["-"] * bp, q(-2) * (bp * DEL["-"])),
        (DEL["-"] * bm, q(2) * (bm * DEL["-"])),
        (DEL["-"] * b0, b0 * DEL["-"]),
        (DEL["+"] * bp, q(2) * (bp * DEL["+"])),
        (DEL["+"] * bm, q(2) * (bm * DEL["+"]) + mu * (bp * DEL["-"])),
        (DEL["+"] * b0, q(4) * (b0 * DEL["+"])),
        (DELBAR["-"] * bp, q(-2) * (bp * DELBAR["-"]) - mu * (bm * DELBAR["+"])),
        (DELBAR["-"] * bm, q(-2) * (bm * DELBAR["-"])),
        (DELBAR["-"] * b0, q(-4) * (b0 * DELBAR["-"])),
        (DELBAR["+"] * bp, q(-2) * (bp * DELBAR["+"])),
        (DELBAR["+"] * bm, q(2) * (bm * DELBAR["+"])),
        (DELBAR["+"] * b0, b0 * DELBAR["+"]),
        (DEL["0"] * bp, bp * DEL["0"]),
        (DEL["0"] * bm, q(4) * (bm * DEL["0"]) + (q(1) - q(3)) * DEL["-"]),
        (DEL["0"] * b0, q(2) * (b0 * DEL["0"])),
        (DELBAR["0"] * bp, q(-4) * (bp * DELBAR["0"]) + (q(-1) - q(-3)) * DELBAR["+"]),
        (DELBAR["0"] * bm, bm * DELBAR["0"]),
        (DELBAR["0"] * b0, q(-2) * (b0 * DELBAR["0"])),
    ]
    for lhs, rhs in cases:
        assert lhs == rhs


def test_chiral_collapse_identities():
    # the middle chiral derivative in terms of the others, and the
    # quadratic collapse relations
    assert DEL["0"] == q(2) * (bm * DEL["+"]) - q(-2) * (bp * DEL["-"])
    assert DELBAR["0"] == bp * DELBAR["-"] - q(4) * (bm * DELBAR["+"])
    assert bp * DEL["-"] == q(1) * (b0 * DEL["0"])
    assert bm * DEL["+"] == q(-2) * ((one + q(-1) * b0) * DEL["0"])
    assert bm * DELBAR["+"] == q(-3) * (b0 * DELBAR["0"])
    assert bp * DELBAR["-"] == (one + q(1) * b0) * DELBAR["0"]
    assert bp * DEL["0"] == q(2) * (b0 * DEL["+"])
    assert bm * DEL["0"] == q(-1) * ((one + q(-1) * b0) * DEL["-"])
    assert bm * DELBAR["0"] == q(-2) * (b0 * DELBAR["-"])
    assert bp * DELBAR["0"] == q(1) * ((one + q(1) * b0) * DELBAR["+"])
    assert (b0 * bm) * DEL["+"] == q(-3) * (((one + q(-1) * b0) * bp) * DEL["-"])
    assert (b0 * bp) * DELBAR["-"] == q(3) * (((one + q(1) * b0) * bm) * DELBAR["+"])
    assert (bm * bm) * DELBAR["+"] == q(-7) * ((b0 * b0) * DELBAR["-"])
    assert (bp * bp) * DELBAR["-"] == (
        ((one + q(3) * b0) * (one + q(1) * b0)) * DELBAR["+"]
    ).scale(q(1))


def test_second_order_exactness():
    # d of either chiral part is a pure area-form multiple, and the two
    # add to zero (nilpotence and anticommutation downstairs)
    rng = random.Random(41)
    samples = [bm, b0, bp, F0] + [random_sphere_element(rng) for _ in range(50)]
    for f in samples:
        delf, dbarf = del_split(f)
        dp, dm = dd(delf), dd(dbarf)
        assert set(dp.terms) <= {VOL}
        assert set(dm.terms) <= {VOL}
        assert dp + dm == 0


def test_chiral_leibniz():
    rng = random.Random(42)
    for _ in range(25):
        f = random_sphere_element(rng)
        g = random_sphere_element(rng)
        delf, dbarf = del_split(f)
        delg, dbarg = del_split(g)
        delfg, dbarfg = del_split(f * g)
        assert delfg == delf * g + f * delg
        assert dbarfg == dbarf * g + f * dbarg


def test_two_form_derivative_identities():
    # d of each chiral derivative against the db wedge table
    db0, dbp, dbm = DB["0"], DB["+"], DB["-"]
    assert dd(DEL["+"]) == wedge(db0, dbp).scale(q(1)) - wedge(dbp, db0).scale(q(-1))
    assert dd(DEL["-"]) == wedge(dbm, db0).scale(q(1)) - wedge(db0, dbm).scale(q(-1))
    assert dd(DEL["0"]) == wedge(dbm, dbp).scale(q(2)) - wedge(db0, db0).scale(q(-1))


def test_metric():
    g = metric_g()
    assert g.is_basic()
    assert set(g.terms) == {(EP, ("-",)), (EM, ("+",))}
    assert g == g_plus_minus() + g_minus_plus()
    assert g.wedge_in().as_form() == 0
    # the chiral halves wedge to opposite multiples of the area form
    assert g_plus_minus().wedge_in().as_form() == upsilon().scale(q(2))
    assert g_minus_plus().wedge_in().as_form() == upsilon().scale(-q(2))


def test_hodge_star():
    f1 = Form.of(one)
    assert hodge_star(f1) == upsilon()
    assert hodge_star(upsilon()) == f1
    rng = random.Random(43)
    for _ in range(20):
        f = random_sphere_element(rng)
        delf, dbarf = del_split(f)
        assert hodge_star(delf) == delf
        assert hodge_star(dbarf) == -dbarf
        x = delf + dbarf + Form.of(f) + f * upsilon()
        assert hodge_star(hodge_star(x)) == x
    with pytest.raises(ValueError):
        hodge_star(Form.of(one, "0"))


def test_hodge_star_bimodule():
    rng = random.Random(44)
    for _ in range(15):
        f = random_sphere_element(rng, 2)
        h = random_sphere_element(rng, 2)
        x = DB[rng.choice("+-0")]
        assert hodge_star(f * (x * h)) == f * (hodge_star(x) * h)


def test_lift_family():
    for alpha in (q(-2) / 2, q(-2) / (1 + q(-4)), Scalar.from_int(0), q(3)):
        lift = lift_iY(alpha)
        assert lift.wedge_in().as_form() == upsilon()
        assert lift.is_basic()
    # the symmetric member is the star of the metric on the first leg,
    # normalized by q^-2/2
    sym = lift_iY(q(-2) / 2)
    assert sym == star_first_leg(metric_g()).scale(q(-2) / 2)
    assert star_second_leg(metric_g()) == g_minus_plus() - g_plus_minus()


def test_laplacian_values():
    assert laplacian(bp) == bp.scale(q(2) * two_q)
    assert laplacian(bm) == bm.scale(q(2) * two_q)
    assert laplacian(F0) == F0.scale(q(2) * two_q)
    assert laplacian(one) == AlgebraElement.zero()
    # the affine shift on b0 alone
    assert laplacian(b0) == b0.scale(q(2) * two_q) + one.scale(q(2))


def test_spin_multiplets():
    v1 = spin_multiplet(1)
    assert v1 == [bm, F0, bp]
    assert eigenvalue_on(v1) == q(2) * two_q
    three_q = q(2) + 1 + q(-2)
    v2 = spin_multiplet(2)
    lam2 = eigenvalue_on(v2)
    assert lam2 == q(2) * two_q * three_q
    assert specialize(lam2, Fraction(1)) == 6
    assert specialize(eigenvalue_on(v1), Fraction(1)) == 2
    assert eigenvalue_on(spin_multiplet(0)) == 0


def test_maxwell():
    for i in "-0+":
        report = maxwell_check(i)
        assert report["coulomb"]
        assert report["massive"]
        assert report["mass_squared"] == q(2) * two_q / 2
    with pytest.raises(ValueError):
        maxwell_check("x")


def test_proportionality_helper():
    assert proportionality(DB["+"].scale(q(5)), DB["+"]) == q(5)
    assert proportionality(DB["+"], DB["-"]) is None
    assert proportionality(Form.zero(), DB["+"]) is None
