import random

import pytest

from qsphere.algebra import AlgebraElement, a, b, c, d as gd, degree_split, normalize, one
from qsphere.bundles import (
    Partition,
    Section,
    bwb_check,
    covariant_D,
    extract_coeffs,
    horizontality_check,
    partition_of_unity,
)
from qsphere.calculus import E0, EM, EP, Form, d
from qsphere.scalars import Scalar, q, qint, two_q

q2 = Scalar.q_power

# e+ / e- coefficients of the sphere generator derivatives
DEL_B = {"-": b * b, "0": q * (b * gd), "+": gd * gd}
DELBAR_B = {"-": a * a, "0": q * (a * c), "+": c * c}


def test_section_degree_guard():
    Section(a * b * c, 1)
    Section(AlgebraElement.zero(), 5)
    with pytest.raises(ValueError):
        Section(a + b)
    with pytest.raises(ValueError):
        Section(a, -1)


def test_covariant_D_values():
    assert covariant_D(Section(a)) == Form({EP: q * b})
    assert covariant_D(Section(c)) == Form({EP: q * gd})
    assert covariant_D(Section(one, 0)) == 0
    # negative charge goes antiholomorphic
    assert covariant_D(Section(b)) == Form({EM: a})
    assert covariant_D(Section(gd)) == Form({EM: c})


def test_connection_property():
    rng = random.Random(21)
    for _ in range(30):
        w = tuple(rng.choice("abcd") for _ in range(rng.randint(1, 4)))
        f = normalize(w)
        parts = degree_split(f)
        g = parts[sorted(parts)[0]]
        # degree-0 sphere function in front
        m = normalize(tuple(rng.choice("abcd") for _ in range(2)))
        m0 = degree_split(m).get(0)
        if not m0:
            continue
        lhs = covariant_D(Section(m0 * g))
        rhs = d(m0) * g + m0 * covariant_D(Section(g))
        assert lhs == rhs


def test_horizontality():
    rng = random.Random(22)
    sample = [a, b, c, gd, a * a]
    for _ in range(20):
        w = tuple(rng.choice("abcd") for _ in range(3))
        x = normalize(w)
        sample.extend(p for p in degree_split(x).values())
    assert horizontality_check(sample) == []
    # a^2 pins the (1+q^2) coefficient
    assert d(a * a).coefficient(E0) == (1 + q ** 2) * (a * a)


def test_partitions():
    for n in (-2, -1, 1, 2):
        p = partition_of_unity(n)
        assert p.degree == n
        total = AlgebraElement.zero()
        for x, y in p.pairs:
            total = total + x * y
        assert total == one
    with pytest.raises(ValueError):
        partition_of_unity(3)
    with pytest.raises(AssertionError):
        Partition(1, [(gd, a)])  # da = 1 + qbc != 1


def test_extract_coeffs_examples():
    # u = b^2 gives the canonical coefficients of the holomorphic leg
    h = Form({EP: b * b})
    fm, f0, fp = extract_coeffs(h)
    assert fm == q2(-2) * (b * b * c * c)
    assert f0 == -(q ** -1) * two_q * (b * b * a * c)
    assert fp == b * b * a * a
    for f in (fm, f0, fp):
        assert Section(f).charge_degree == 0
    # and they recombine to the input against the e+ legs
    recon = sum(
        (f * DEL_B[i] for f, i in [(fm, "-"), (f0, "0"), (fp, "+")]),
        AlgebraElement.zero(),
    )
    assert Form({EP: recon}) == h

    w = a * a
    fm, f0, fp = extract_coeffs(Form({EM: w}))
    assert fm == w * gd * gd
    assert f0 == -two_q * (w * gd * b)
    assert fp == q ** 2 * (w * b * b)


def test_extract_coeffs_guards():
    with pytest.raises(ValueError):
        extract_coeffs(Form({EP: one}))  # degree 0, not -2
    with pytest.raises(ValueError):
        extract_coeffs(Form({E0: b * b}))
    extract_coeffs(Form.zero())


def test_extract_recombine_random():
    rng = random.Random(23)
    count_p = count_m = 0
    while count_p < 50 or count_m < 50:
        x = normalize(tuple(rng.choice("abcd") for _ in range(rng.randint(2, 5))))
        for g, part in degree_split(x).items():
            if g == -2 and count_p < 50:
                h = Form({EP: part})
                fm, f0, fp = extract_coeffs(h)
                recon = fm * DEL_B["-"] + f0 * DEL_B["0"] + fp * DEL_B["+"]
                assert Form({EP: recon}) == h
                count_p += 1
            elif g == 2 and count_m < 50:
                h = Form({EM: part})
                fm, f0, fp = extract_coeffs(h)
                recon = fm * DELBAR_B["-"] + f0 * DELBAR_B["0"] + fp * DELBAR_B["+"]
                assert Form({EM: recon}) == h
                count_m += 1


def test_pure_power_derivative():
    for n in range(1, 7):
        lhs = d(c ** n)
        rhs = (c ** (n - 1)).scale(qint(n, q2(2))) * (
            c * Form.of(one, E0) + q * gd * Form.of(one, EP)
        )
        assert lhs == rhs


def test_bwb():
    for n in range(7):
        assert bwb_check(n) == []
