import random

import pytest

from qsphere.algebra import a, b, c, d as gd, degree_split, normalize, one
from qsphere.calculus import (
    E0,
    EM,
    EP,
    SCALAR_WORD,
    TOP,
    VOL,
    ExteriorWord,
    Form,
    TensorForm,
    d,
    monopole_curvature,
    monopole_omega,
    omega_recursion_check,
    push_left,
    tensor,
    tensor_append,
    wedge,
)
from qsphere.scalars import ONE, Scalar, q, qint

q2 = Scalar.q_power


def rnd_word(rng, nmax=5):
    return tuple(rng.choice("abcd") for _ in range(rng.randint(1, nmax)))


def basis(word):
    return Form.of(one, word)


def test_word_validity():
    with pytest.raises(AssertionError):
        ExteriorWord(("-", "+"))
    with pytest.raises(AssertionError):
        ExteriorWord(("+", "+"))
    assert ExteriorWord("+-0") == TOP
    assert EP.charge() == 2 and EM.charge() == -2 and E0.charge() == 0


def test_generator_derivatives():
    assert d(a) == Form({E0: a, EP: q * b})
    assert d(b) == Form({EM: a, E0: -(q ** -2) * b})
    assert d(c) == Form({E0: c, EP: q * gd})
    assert d(gd) == Form({EM: c, E0: -(q ** -2) * gd})


def test_commutation_rules():
    # e+- x = q^(deg x) x e+-,  e0 x = q^(2 deg x) x e0
    for x, deg in [(a, 1), (b, -1), (c, 1), (gd, -1)]:
        assert basis(EP) * x == Form({EP: q2(deg) * x})
        assert basis(EM) * x == Form({EM: q2(deg) * x})
        assert basis(E0) * x == Form({E0: q2(2 * deg) * x})
    assert push_left(EP, a) == q * a
    assert push_left(E0, a) == q ** 2 * a
    assert push_left(E0, b * gd) == q ** -4 * (b * gd)


def test_exterior_relations():
    for w in (EP, EM, E0):
        assert wedge(basis(w), basis(w)) == 0
    assert q ** 2 * wedge(basis(EP), basis(EM)) + wedge(basis(EM), basis(EP)) == 0
    assert wedge(basis(E0), basis(EP)) + q ** 4 * wedge(basis(EP), basis(E0)) == 0
    assert wedge(basis(E0), basis(EM)) + q ** -4 * wedge(basis(EM), basis(E0)) == 0
    # canonical top form: e- ^ e+ ^ e0 = -q^2 e+ ^ e- ^ e0
    lhs = wedge(basis(EM), wedge(basis(EP), basis(E0)))
    assert lhs == Form({TOP: -(q ** 2) * one})


def test_d_of_basis_forms():
    assert d(basis(E0)) == Form({VOL: q2(3) * one})
    assert d(basis(EP)) == Form({ExteriorWord("+0"): -(q ** 2 + ONE) * one})
    assert d(basis(EM)) == Form({ExteriorWord("-0"): (q ** -2 + q ** -4) * one})


def test_d_squared_zero():
    rng = random.Random(2024)
    for g in (a, b, c, gd):
        assert not d(d(g))
    for _ in range(60):
        x = normalize(rnd_word(rng))
        assert not d(d(x))
    # and on coefficiented one-forms
    for w in (EP, EM, E0):
        for _ in range(10):
            x = normalize(rnd_word(rng, 3))
            assert not d(d(Form({w: x})))


def test_leibniz():
    rng = random.Random(31)
    for _ in range(40):
        x = normalize(rnd_word(rng, 4))
        y = normalize(rnd_word(rng, 4))
        assert d(x * y) == d(x) * y + x * d(y)


def test_super_leibniz_on_one_forms():
    rng = random.Random(32)
    words = [EP, EM, E0]
    for _ in range(25):
        xi = Form({rng.choice(words): normalize(rnd_word(rng, 3))})
        eta = Form({rng.choice(words): normalize(rnd_word(rng, 3))})
        assert d(wedge(xi, eta)) == wedge(d(xi), eta) - wedge(xi, d(eta))


def test_d_preserves_charge():
    rng = random.Random(33)
    for _ in range(30):
        x = normalize(rnd_word(rng, 5))
        for g, part in degree_split(x).items():
            df = d(part)
            assert df.charges() <= {g}


def test_monopole_connection():
    assert monopole_omega(1) == Form({E0: one})
    assert monopole_omega(-1) == Form({E0: -(q ** -2) * one})
    assert monopole_omega(0) == 0
    for n in range(-6, 7):
        f = monopole_curvature(n)
        assert f == Form({VOL: q2(3) * qint(n, q2(2)) * one})
    assert omega_recursion_check(6)


def test_tensor_crossing():
    # e+ (x) f e- pulls f through with q^(deg f)
    t = tensor(basis(EP), Form({EM: gd * gd}))
    assert t.terms == {(EP, ("-",)): q2(-2) * (gd * gd)}
    t2 = tensor_append(t, Form({EP: b}))
    # two crossings: the e+ word and the e- label
    assert t2.terms == {(EP, ("-", "+")): q2(-2) * q2(-2) * (gd * gd * b)}
    assert wedge(basis(EP), Form({EM: gd * gd})) == tensor(
        basis(EP), Form({EM: gd * gd})
    ).wedge_in().as_form()


def test_tensor_is_basic():
    # d^2 e+ (x) c^2 e- is charge balanced: (-2+2) + (2-2) = 0
    t = tensor(Form({EP: gd * gd}), Form({EM: c * c}))
    assert t.is_basic()
    assert not tensor(basis(EP), Form({EM: c * c})).is_basic()
