"""The standard q-sphere: functions, forms, metric, Hodge star, Laplacian.

The sphere sits inside quantum SL(2) as the degree-0 subalgebra,
generated by

    b0 = bc,   b+ = cd,   b- = ab,

and its 2-dimensional exterior calculus is the horizontal part of the
3-d calculus upstairs: one-forms have only e+ and e- components, the
top form is Y = e+ ^ e-.  Working upstairs makes every identity here
decidable by the PBW normal form.

The derivative splits as d = del + delbar (e+ and e- components); on
one-forms del kills the holomorphic part and delbar the antiholomorphic
part, and d of a basic one-form is automatically a multiple of Y (the
e0-containing words cancel) -- several checks below lean on that.
"""

from __future__ import annotations

from .algebra import AlgebraElement
from .algebra import a as _a, b as _b, c as _c, d as _d
from .algebra import coproduct
from .calculus import (
    E0,
    EM,
    EP,
    VOL,
    Form,
    TensorForm,
    d,
    tensor,
    wedge,
)
from .scalars import ONE, Scalar, mu, qint, two_q

_q = Scalar.q_power

b0 = _b * _c
bp = _c * _d
bm = _a * _b
one = AlgebraElement.one()
F0 = one + two_q * b0  # the degree-zero partner of b+- in the spin-1 multiplet

GENS = {"-": bm, "0": b0, "+": bp}


class SphereElement:
    """A degree-0 element (a function on the q-sphere)."""

    __slots__ = ("value",)

    def __init__(self, value: AlgebraElement):
        if any(m.degree() != 0 for m in value.terms):
            raise ValueError("sphere element must have degree 0")
        self.value = value

    def __repr__(self):
        return f"SphereElement({self.value!r})"


class SphereForm:
    """A charge-0 horizontal form: e+ coefficients of degree -2, e- of +2."""

    __slots__ = ("value",)

    _DEGREE = {EP: -2, EM: 2, VOL: 0, (): 0}

    def __init__(self, value: Form):
        for w, x in value.terms.items():
            want = self._DEGREE.get(w)
            if want is None:
                raise ValueError("form does not live on the sphere (e0 present)")
            if any(m.degree() != want for m in x.terms):
                raise ValueError(f"coefficient of {w} must have degree {want}")
        self.value = value

    def __repr__(self):
        return f"SphereForm({self.value!r})"


def _el(x) -> AlgebraElement:
    return x.value if isinstance(x, SphereElement) else x


def _fm(x) -> Form:
    return x.value if isinstance(x, SphereForm) else x


def del_split(f):
    """(del f, delbar f): the e+ and e- parts of df for a sphere function."""
    df = d(_el(f))
    if E0 in df.terms:
        raise RuntimeError("df acquired an e0 part on a degree-0 element")
    return (
        Form({EP: df.coefficient(EP)}),
        Form({EM: df.coefficient(EM)}),
    )


DB = {i: d(GENS[i]) for i in GENS}
DEL = {i: del_split(GENS[i])[0] for i in GENS}
DELBAR = {i: del_split(GENS[i])[1] for i in GENS}


def upsilon() -> Form:
    return Form.of(one, VOL)


def _zero_or_witness(x):
    """None when x vanishes, a rendered witness string otherwise."""
    if not x:
        return None
    return repr(x)


def _run_items(items):
    failures = []
    for name, diff in items:
        w = _zero_or_witness(diff)
        if w is not None:
            failures.append((name, w))
    return failures


def sphere_relations_check():
    """The defining relations of the sphere generators; returns failures."""
    items = [
        ("bp-b0", bp * b0 - _q(2) * (b0 * bp)),
        ("bm-b0", bm * b0 - _q(-2) * (b0 * bm)),
        (
            "bm-bp",
            _q(2) * (bm * bp) - _q(-2) * (bp * bm) - (ONE - _q(-2)) * b0,
        ),
        ("sphere-eq", b0 * (one + _q(1) * b0) - bp * bm),
        ("sphere-eq-alt", b0 * (one + _q(-1) * b0) - _q(2) * (bm * bp)),
    ]
    return _run_items(items)


def soldering_check():
    """The frame/soldering identities expressing e+- downstairs."""
    ep_form = Form.of(one, EP)
    em_form = Form.of(one, EM)
    theta_p = (
        (_a * _a) * DB["+"]
        + _q(-2) * ((_c * _c) * DB["-"])
        - qint(2, _q(-2)) * ((_a * _c) * DB["0"])
    )
    theta_m = (
        (_d * _d) * DB["-"]
        + _q(2) * ((_b * _b) * DB["+"])
        - qint(2, _q(2)) * ((_b * _d) * DB["0"])
    )
    theta_0 = (
        b0 * d(one + _q(1) * b0)
        - _q(2) * (bm * DB["+"])
        - bp * DB["-"]
        + (one + _q(-1) * b0) * DB["0"]
    )
    items = [
        ("soldering-plus", theta_p - ep_form),
        ("soldering-minus", theta_m - em_form),
        ("soldering-zero", theta_0),
    ]
    return _run_items(items)


def one_form_relation_check():
    """The sphere one-form relation, its chiral halves, and the full
    bimodule commutation table, all verified upstairs."""
    db0, dbp, dbm = DB["0"], DB["+"], DB["-"]
    items = [
        ("dSrel-left", _q(2) * (bm * dbp) + bp * dbm - F0 * db0),
        ("dSrel-right", _q(2) * (dbm * bp) + dbp * bm - db0 * F0),
        (
            "dShol-del",
            _q(2) * (bm * DEL["+"]) + bp * DEL["-"] - F0 * DEL["0"],
        ),
        (
            "dShol-delbar",
            _q(2) * (bm * DELBAR["+"]) + bp * DELBAR["-"] - F0 * DELBAR["0"],
        ),
    ]

    def rel(name, lhs, rhs):
        items.append((name, lhs - rhs))

    rel(
        "dbbimod-00",
        db0 * b0,
        (_q(2) * b0 + _q(1) * mu * (b0 * b0)) * db0 - mu * (b0 * bp) * dbm,
    )
    # db0 . b+- = q^(-+2)(1 -+ q^(+-1) mu b0) b+- db0 - (1 - q^(+-2) -+ q^(+-1) mu b0) b0 db+-
    rel(
        "dbbimod-0p",
        db0 * bp,
        _q(-2) * ((one - _q(1) * mu * b0) * bp) * db0
        - ((ONE - _q(2)) * b0 - _q(1) * mu * (b0 * b0)) * dbp,
    )
    rel(
        "dbbimod-0m",
        db0 * bm,
        _q(2) * ((one + _q(-1) * mu * b0) * bm) * db0
        - ((ONE - _q(-2)) * b0 + _q(-1) * mu * (b0 * b0)) * dbm,
    )
    # db+- . b0 = (q^(+-4) +- q^(+-3) mu b0) b0 db+- -+ q^(+-1) mu b0 b+- db0
    rel(
        "dbbimod-p0",
        dbp * b0,
        (_q(4) * b0 + _q(3) * mu * (b0 * b0)) * dbp - _q(1) * mu * (b0 * bp) * db0,
    )
    rel(
        "dbbimod-m0",
        dbm * b0,
        (_q(-4) * b0 - _q(-3) * mu * (b0 * b0)) * dbm + _q(-1) * mu * (b0 * bm) * db0,
    )
    # db+- . b-+ = q^(+-2)(1 +- q^(+-1) mu b0) b-+ db+- -+ q^(+-1) mu q^-1 b0^2 db0
    rel(
        "dbbimod-pm",
        dbp * bm,
        _q(2) * ((one + _q(1) * mu * b0) * bm) * dbp - mu * (b0 * b0) * db0,
    )
    rel(
        "dbbimod-mp",
        dbm * bp,
        _q(-2) * ((one - _q(-1) * mu * b0) * bp) * dbm + _q(-2) * mu * (b0 * b0) * db0,
    )
    # db+- . b+- = q^(+-2)(1 +- q^(+-1) mu b0) b+- db+- -+ q^(-+1) mu b+-^2 db0
    rel(
        "dbbimod-pp",
        dbp * bp,
        _q(2) * ((one + _q(1) * mu * b0) * bp) * dbp - _q(-1) * mu * (bp * bp) * db0,
    )
    rel(
        "dbbimod-mm",
        dbm * bm,
        _q(-2) * ((one - _q(-1) * mu * b0) * bm) * dbm + _q(1) * mu * (bm * bm) * db0,
    )
    # consequences recorded alongside the table
    rel(
        "dbbimod-cross1",
        _q(-1) * (dbp * bm) - db0 * b0,
        -_q(-2) * (b0 * db0) + _q(1) * (bm * dbp),
    )
    rel(
        "dbbimod-cross2",
        _q(1) * (dbm * bp) - _q(-2) * (db0 * b0),
        -(b0 * db0) + _q(-1) * (bp * dbm),
    )
    rel(
        "dbbimod-cross3p",
        dbp * b0 - _q(2) * (db0 * bp),
        _q(2) * (b0 * dbp) - bp * db0,
    )
    rel(
        "dbbimod-cross3m",
        dbm * b0 - _q(-2) * (db0 * bm),
        _q(-2) * (b0 * dbm) - bm * db0,
    )
    return _run_items(items)


# ---------------------------------------------------------------------------
# metric and Hodge theory


def _matmul3(X, Y):
    return [
        [
            sum((X[i][k] * Y[k][j] for k in range(3)), AlgebraElement.zero())
            for j in range(3)
        ]
        for i in range(3)
    ]


def coaction_matrix():
    """Left-coaction matrix M on the frame (db-, db0, db+)."""
    return [
        [_a * _a, two_q * (_a * _b), _b * _b],
        [_c * _a, one + two_q * (_b * _c), _d * _b],
        [_c * _c, two_q * (_c * _d), _d * _d],
    ]


def metric_matrix():
    """Coefficients G of the metric in the frame (db-, db0, db+)."""
    z = AlgebraElement.zero()
    return [
        [z, z, _q(2) * one],
        [z, -(two_q) * one, z],
        [one, z, z],
    ]


def metric_g() -> TensorForm:
    """The q-metric q^2 db- (x) db+ + db+ (x) db- - [2]_q db0 (x) db0."""
    g = (
        _q(2) * tensor(DB["-"], DB["+"])
        + tensor(DB["+"], DB["-"])
        - two_q * tensor(DB["0"], DB["0"])
    )
    assert g.wedge_in().as_form() == 0, "metric is not q-symmetric"
    assert g.is_basic(), "metric does not descend"
    assert set(g.terms) <= {(EP, ("-",)), (EM, ("+",))}, "metric has chiral components"
    # invariance of the coefficient matrix under the coaction
    M, G = coaction_matrix(), metric_matrix()
    Mt = [[M[j][i] for j in range(3)] for i in range(3)]
    assert _matmul3(Mt, _matmul3(G, M)) == G, "metric coefficients not invariant"
    return g


def g_plus_minus() -> TensorForm:
    return (
        _q(2) * tensor(DEL["-"], DELBAR["+"])
        + tensor(DEL["+"], DELBAR["-"])
        - two_q * tensor(DEL["0"], DELBAR["0"])
    )


def g_minus_plus() -> TensorForm:
    return (
        _q(2) * tensor(DELBAR["-"], DEL["+"])
        + tensor(DELBAR["+"], DEL["-"])
        - two_q * tensor(DELBAR["0"], DEL["0"])
    )


def hodge_star(x):
    """The Hodge star: +1 on e+, -1 on e-, *1 = Y and *Y = 1."""
    xf = _fm(x)
    out = Form()
    for w, coeff in xf.terms.items():
        if w == EP:
            out = out + Form({EP: coeff})
        elif w == EM:
            out = out + Form({EM: -coeff})
        elif w == VOL:
            out = out + Form({(): coeff})
        elif w == ():
            out = out + Form({VOL: coeff})
        else:
            raise ValueError("Hodge star is only defined on sphere forms")
    return SphereForm(out) if isinstance(x, SphereForm) else out


# Wedging either chiral half of the metric gives +-q^2 Y (the e+ ^ e-
# crossing factors conspire to a clean scalar), so the lifts of the area
# form are exactly the combinations with alpha - beta = q^-2.  The
# symmetric member alpha = q^-2/2 is proportional to (* (x) id)(g).
_ALPHA_GEOMETRIC = _q(-2) / 2


def lift_iY(alpha: Scalar) -> TensorForm:
    """The family of lifts of the area form: alpha g_{+-} + beta g_{-+}."""
    beta = alpha - 2 * _ALPHA_GEOMETRIC
    lift = alpha * g_plus_minus() + beta * g_minus_plus()
    assert lift.wedge_in().as_form() == upsilon(), "lift does not wedge to the area form"
    return lift


def star_first_leg(tf: TensorForm) -> TensorForm:
    """Hodge star applied to the first tensor leg (one-form words only)."""
    out = TensorForm()
    for (w, labels), x in tf.terms.items():
        sign = {EP: 1, EM: -1}.get(w)
        if sign is None:
            raise ValueError("first leg is not a basis one-form")
        out += TensorForm({(w, labels): x if sign > 0 else -x})
    return out


def star_second_leg(tf: TensorForm) -> TensorForm:
    """Hodge star applied to the last tensor leg."""
    out = TensorForm()
    for (w, labels), x in tf.terms.items():
        if not labels:
            raise ValueError("no tensor leg to act on")
        sign = 1 if labels[-1] == "+" else -1
        out += TensorForm({(w, labels): x if sign > 0 else -x})
    return out


def laplacian(f) -> AlgebraElement:
    """The scalar Laplacian via (box f) Y = del delbar f."""
    _, dbarf = del_split(f)
    two_form = d(dbarf)
    if set(two_form.terms) - {VOL}:
        raise RuntimeError("del delbar f is not proportional to the area form")
    h = two_form.coefficient(VOL)
    # the -1/2 d*d route must agree
    df = d(_el(f))
    check = d(hodge_star(df)).scale(Scalar.from_fraction(-1) / 2)
    assert check == Form({VOL: h}), "Laplacian routes disagree"
    return h


def proportionality(x: Form, y: Form):
    """The Scalar lam with x = lam . y, or None if there is none."""
    if not y.terms:
        return None
    w, coeff = next(iter(y.terms.items()))
    m, co = next(iter(coeff.terms.items()))
    top = x.coefficient(w).terms.get(m)
    if top is None:
        return None
    lam = top / co
    return lam if x == y.scale(lam) else None


def maxwell_check(i):
    """Spin-off of the Laplacian: the massive Maxwell operator on A ~ db_i.

    Checks the Coulomb gauge *d*A = 0 and that -1/4 *d*dA is an exact
    Scalar multiple of A; the proportionality (the mass squared) is
    computed and reported, not assumed.
    """
    if i not in GENS:
        raise ValueError("generator index must be one of '-', '0', '+'")
    delf, dbarf = del_split(GENS[i])
    coef = _q(2) / (2 * two_q)
    A = (dbarf - delf).scale(coef)
    coulomb = hodge_star(d(hodge_star(A)))
    dA = d(A)
    lhs = hodge_star(d(hodge_star(dA))).scale(Scalar.from_fraction(-1) / 4)
    m2 = proportionality(lhs, A)
    return {
        "coulomb": not coulomb,
        "massive": m2 is not None,
        "mass_squared": m2,
    }


# ---------------------------------------------------------------------------
# the displayed two-form tables


def wedge_tables_check():
    """Every displayed 2-form identity: the chiral wedge table, the
    db_i ^ db_j table, and the two volume-form presentations."""
    Y = upsilon()
    dp, dm, d0 = DEL["+"], DEL["-"], DEL["0"]
    bp_, bm_, b0_ = DELBAR["+"], DELBAR["-"], DELBAR["0"]
    items = []

    def rel(name, lhs, rhs):
        items.append((name, lhs - rhs))

    # the four headline relations
    rel(
        "delbardel-line1",
        wedge(dp, bm_) + _q(6) * wedge(bm_, dp),
        ((_q(4) * mu) * (b0 * b0 - one)) * Y,
    )
    rel("delbardel-line2a", wedge(dm, bp_), (_q(2) * (b0 * b0)) * Y)
    rel("delbardel-line2b", wedge(dm, bp_), -_q(2) * wedge(bp_, dm))
    rel("delbardel-line3a", wedge(dm, bm_), ((_q(5)) * (bm * bm)) * Y)
    rel("delbardel-line3b", wedge(dm, bm_), -_q(6) * wedge(bm_, dm))
    rel("delbardel-line4a", wedge(dp, bp_), ((_q(5)) * (bp * bp)) * Y)
    rel("delbardel-line4b", wedge(dp, bp_), -_q(6) * wedge(bp_, dp))
    # the auxiliary table from the same proof
    rel("delbardel-aux-00a", wedge(d0, b0_), (_q(4) * ((one + _q(1) * b0) * b0)) * Y)
    rel("delbardel-aux-00b", wedge(b0_, d0), (-((one + _q(-1) * b0) * b0)) * Y)
    rel("delbardel-aux-0m-a", wedge(d0, bm_), (_q(4) * ((one + _q(1) * b0) * bm)) * Y)
    rel("delbardel-aux-0m-b", wedge(bm_, d0), (-((one + _q(-3) * b0) * bm)) * Y)
    rel("delbardel-aux-p0-a", wedge(dp, b0_), (_q(4) * (bp * (one + _q(1) * b0))) * Y)
    rel("delbardel-aux-p0-b", wedge(b0_, dp), (-(bp * (one + _q(-3) * b0))) * Y)
    rel("delbardel-aux-0p-a", wedge(d0, bp_), (_q(3) * (bp * b0)) * Y)
    rel("delbardel-aux-0p-b", wedge(d0, bp_), -_q(4) * wedge(bp_, d0))
    rel("delbardel-aux-m0-a", wedge(dm, b0_), (_q(5) * (bm * b0)) * Y)
    rel("delbardel-aux-m0-b", wedge(dm, b0_), -_q(4) * wedge(b0_, dm))
    rel(
        "delbardel-aux-sym0",
        _q(-4) * wedge(d0, b0_) + wedge(b0_, d0),
        ((_q(1) - _q(-1)) * (b0 * b0)) * Y,
    )
    rel(
        "delbardel-aux-symm",
        wedge(d0, bm_) + _q(8) * wedge(bm_, d0),
        (-(_q(6) * mu) * bm) * Y,
    )
    rel(
        "delbardel-aux-symp",
        wedge(dp, b0_) + _q(8) * wedge(b0_, dp),
        (-(_q(6) * mu) * bp) * Y,
    )
    # the db_i ^ db_j table
    db0, dbp, dbm = DB["0"], DB["+"], DB["-"]
    three_q = _q(2) + ONE + _q(-2)
    rel(
        "dbdb-mp",
        wedge(dbm, dbp),
        (-(one + (_q(-2) * two_q) * b0 - (_q(-1) * (_q(1) - _q(-1)) * three_q) * (b0 * b0))) * Y,
    )
    rel(
        "dbdb-00",
        wedge(db0, db0),
        (((_q(1) - _q(-1)) * _q(2)) * ((two_q * one + three_q * b0) * b0)) * Y,
    )
    rel("dbdb-0p", wedge(db0, dbp), (((_q(5) - _q(-1)) * b0 - one) * bp) * Y)
    rel("dbdb-p0", wedge(dbp, db0), (((_q(7) - _q(1)) * b0 + _q(4) * one) * bp) * Y)
    rel("dbdb-m0", wedge(dbm, db0), (bm * ((_q(5) - _q(-1)) * b0 - one)) * Y)
    rel("dbdb-0m", wedge(db0, dbm), (bm * ((_q(7) - _q(1)) * b0 + _q(4) * one)) * Y)
    # volume-form presentations in the two charts
    rel(
        "volume-F0",
        wedge(dbp, dbm) - _q(4) * wedge(dbm, dbp),
        ((_q(3) * two_q) * F0) * Y,
    )
    rel(
        "volume-b0",
        _q(1) * (bm * wedge(db0, dbp)) - _q(-1) * (b0 * wedge(dbm, dbp)),
        (_q(2) * (b0 * b0)) * Y,
    )
    return _run_items(items)


# ---------------------------------------------------------------------------
# Laplacian spectral helpers


def spin_multiplet(ell: int):
    """The 2*ell+1 sphere elements obtained by bucketing the coproduct of
    b+^ell over its first-leg monomials (highest-weight matrix elements)."""
    x = bp ** ell
    buckets = {}
    for (m1, m2), co in coproduct(x).items():
        acc = buckets.setdefault(m1, AlgebraElement.zero())
        buckets[m1] = acc + AlgebraElement({m2: co})
    out = [buckets[m] for m in sorted(buckets, key=lambda m: -m.k)]
    assert len(out) == 2 * ell + 1
    for v in out:
        assert SphereElement(v)
    return out


def eigenvalue_on(elements):
    """The single Scalar by which the Laplacian acts on the span; raises
    if any element fails to be an exact eigenvector or values differ."""
    lam = None
    for v in elements:
        hv = laplacian(v)
        m, co = next(iter(v.terms.items()))
        cand = hv.terms.get(m, Scalar.from_int(0)) / co
        assert hv == v.scale(cand), "not an exact eigenvector"
        if lam is None:
            lam = cand
        else:
            assert lam == cand, "eigenvalue is not uniform on the multiplet"
    return lam
