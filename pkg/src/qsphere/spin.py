"""Spinors and the Dirac operator on the q-sphere.

Sections of the two spinor bundles are the degree +-1 subspaces
upstairs: S- is degree +1 (spanned over the sphere by a, c) and S+ is
degree -1 (spanned by b, d).  The Clifford action gamma eats a basic
one-form and a spinor: the e+ coefficient maps S- to S+, the e-
coefficient maps S+ to S-, and the two cross pairings act by zero.
The Dirac operator is gamma composed with the charge +-1 monopole
covariant derivative; it anticommutes with the Z_2 grading, has
eigen-spinors with eigenvalues +-q^(1/2), and its square is the scalar
Laplacian plus a curvature correction on each spin-1 multiplet.

Both spinor bundles are trivial.  The 2x2 idempotent

    e = [[-q^-1 b0, q b-], [-b+, 1 + q b0]]

splits the free rank-2 module into S+ (the image of e) and S- (the
image of 1-e), and transporting the Dirac operator through
(f, g) |-> f(a + L b) + g(c + L d) with L = q^(-1/2) turns it into an
explicit matrix of right-acting difference operators.  The coefficient
triple of df used there is not unique; the canonical extraction from
the charge +-2 partitions of unity is used throughout, and the total
transported operator is checked to be independent of that choice.
"""

from __future__ import annotations

import random

from .algebra import AlgebraElement
from .algebra import a as _a, b as _b, c as _c, d as _d
from .bundles import Section, covariant_D, extract_coeffs, partition_of_unity
from .calculus import EM, EP, Form, TensorForm, d
from .riemann import decompose_legs
from .scalars import Scalar, two_q
from .sphere import (
    DB,
    DEL,
    DELBAR,
    F0,
    GENS,
    SphereForm,
    _run_items,
    b0,
    bm,
    bp,
    del_split,
    g_minus_plus,
    g_plus_minus,
    hodge_star,
    laplacian,
    metric_g,
    one,
)

_q = Scalar.q_power
LAMBDA = Scalar.s_power(-1)  # the trivialisation twist q^(-1/2)
LAMBDA_INV = Scalar.s_power(1)

_zero = AlgebraElement.zero()

# e+ and e- coefficients of the chiral halves of db_i
DELC = {i: DEL[i].coefficient(EP) for i in GENS}
DELBARC = {i: DELBAR[i].coefficient(EM) for i in GENS}
_GENS_SQ = {i: GENS[i] * GENS[i] for i in GENS}


class Spinor:
    """A section of S- (+) S+: a degree +1 part and a degree -1 part."""

    __slots__ = ("minus_part", "plus_part")

    def __init__(self, minus_part=None, plus_part=None):
        minus_part = _zero if minus_part is None else minus_part
        plus_part = _zero if plus_part is None else plus_part
        if any(m.degree() != 1 for m in minus_part.terms):
            raise ValueError("the S- part must have degree +1")
        if any(m.degree() != -1 for m in plus_part.terms):
            raise ValueError("the S+ part must have degree -1")
        self.minus_part = minus_part
        self.plus_part = plus_part

    def __bool__(self):
        return bool(self.minus_part) or bool(self.plus_part)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self
        if not isinstance(other, Spinor):
            return NotImplemented
        return (
            self.minus_part == other.minus_part
            and self.plus_part == other.plus_part
        )

    def __add__(self, other):
        return Spinor(
            self.minus_part + other.minus_part, self.plus_part + other.plus_part
        )

    def __neg__(self):
        return Spinor(-self.minus_part, -self.plus_part)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, co):
        return Spinor(self.minus_part.scale(co), self.plus_part.scale(co))

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if isinstance(other, AlgebraElement):
            return Spinor(other * self.minus_part, other * self.plus_part)
        return NotImplemented

    def __repr__(self):
        return f"Spinor({self.minus_part!r}, {self.plus_part!r})"


GENERATOR_SPINORS = (
    Spinor(minus_part=_a),
    Spinor(minus_part=_c),
    Spinor(plus_part=_b),
    Spinor(plus_part=_d),
)


def gamma(omega, sigma: Spinor) -> Spinor:
    """Clifford action of a one-form: chirality-matched multiplication."""
    t = omega.value if isinstance(omega, SphereForm) else omega
    if set(t.terms) - {EP, EM}:
        raise ValueError("gamma acts on one-forms")
    return Spinor(
        minus_part=t.coefficient(EM) * sigma.plus_part,
        plus_part=t.coefficient(EP) * sigma.minus_part,
    )


def gamma_gamma(tf: TensorForm, sigma: Spinor) -> Spinor:
    """gamma applied twice through a two-legged tensor (inner leg first)."""
    out = Spinor()
    for omega, eta in decompose_legs(tf):
        out = out + gamma(omega, gamma(eta, sigma))
    return out


def _basic_spinor_pairs(h: Form, n: int):
    """Split a form with charge-n spinor tail into basic form x spinor pairs.

    Inserting 1 = sum x_r y_r of the charge-n partition moves the
    surplus degree out of the form coefficient and onto y_r.
    """
    part = partition_of_unity(n)
    pairs = []
    for w, x in h.terms.items():
        shift = -n * w.crossing()
        for xr, yr in part.pairs:
            omega = Form({w: (x * xr).scale(_q(shift))})
            if omega:
                pairs.append((omega, yr))
    return pairs


def dirac(sigma: Spinor) -> Spinor:
    """gamma composed with the monopole covariant derivative at charge +-1."""
    out = Spinor()
    for omega, y in _basic_spinor_pairs(covariant_D(Section(sigma.minus_part, 1)), 1):
        out = out + gamma(omega, Spinor(minus_part=y))
    for omega, y in _basic_spinor_pairs(covariant_D(Section(sigma.plus_part, -1)), -1):
        out = out + gamma(omega, Spinor(plus_part=y))
    return out


def gamma_algebra_check():
    """The composition table and Clifford-type relations of the gamma action.

    All gammas act by left multiplication, so the composition table is
    a family of algebra identities; the operator statements are then
    spot-applied to the generator spinors.
    """
    hp, hm, h0 = DELC["+"], DELC["-"], DELC["0"]
    ap, am, a0 = DELBARC["+"], DELBARC["-"], DELBARC["0"]
    items = [
        ("gamma-comp-m", hm * am - _q(3) * _GENS_SQ["-"]),
        ("gamma-comp-m-rev", am * hm - _q(-1) * _GENS_SQ["-"]),
        ("gamma-comp-p", hp * ap - _q(3) * _GENS_SQ["+"]),
        ("gamma-comp-p-rev", ap * hp - _q(-1) * _GENS_SQ["+"]),
        ("gamma-comp-0", h0 * a0 - _q(2) * ((one + _q(1) * b0) * b0)),
        ("gamma-comp-0-rev", a0 * h0 - (one + _q(-1) * b0) * b0),
        ("gamma-comp-pm", hp * am - (one + _q(3) * b0) * (one + _q(1) * b0)),
        ("gamma-comp-pm-rev", am * hp - (one + _q(-3) * b0) * (one + _q(-1) * b0)),
        ("gamma-comp-mp", hm * ap - _GENS_SQ["0"]),
        ("gamma-comp-mp-rev", ap * hm - _GENS_SQ["0"]),
        (
            "gamma-gamma-scalar",
            _q(2) * _GENS_SQ["0"]
            + (one + _q(3) * b0) * (one + _q(1) * b0)
            - (two_q * _q(2)) * ((one + _q(1) * b0) * b0)
            - one,
        ),
    ]
    g = metric_g()
    for k, sigma in enumerate(GENERATOR_SPINORS):
        for i in "-+":
            db, sdb = DB[i], hodge_star(DB[i])
            sq = gamma(db, gamma(db, sigma))
            ssq = gamma(sdb, gamma(sdb, sigma))
            want = Spinor(
                _q(-1) * (_GENS_SQ[i] * sigma.minus_part),
                _q(3) * (_GENS_SQ[i] * sigma.plus_part),
            )
            items.append((f"gamma-sq-{i}{k}", sq - want))
            items.append((f"gamma-star-sq-{i}{k}", ssq + want))
            anti = gamma(db, gamma(sdb, sigma)) + gamma(sdb, gamma(db, sigma))
            items.append((f"gamma-anti-{i}{k}", anti))
        items.append(
            (
                f"gamma-gamma-{k}",
                gamma_gamma(g, sigma)
                - Spinor(_q(2) * sigma.minus_part, sigma.plus_part),
            )
        )
        items.append(
            (
                f"gamma-gamma-pm-{k}",
                gamma_gamma(g_plus_minus(), sigma) - Spinor(plus_part=sigma.plus_part),
            )
        )
        items.append(
            (
                f"gamma-gamma-mp-{k}",
                gamma_gamma(g_minus_plus(), sigma)
                - Spinor(minus_part=_q(2) * sigma.minus_part),
            )
        )
    return _run_items(items)


def dirac_first_order_check():
    """dirac on b_i times each generator spinor, against the evaluated table."""
    heads = {
        "a": (_q(1) * two_q, _b, "plus_part"),
        "b": (two_q, _a, "minus_part"),
        "c": (_q(1) * two_q, _d, "plus_part"),
        "d": (two_q, _c, "minus_part"),
    }
    corrections = {
        "a": (_zero, _q(1) * _b, _d),
        "b": (_zero, _zero, -(_q(-1) * _c)),
        "c": (-(_q(1) * _b), _zero, _zero),
        "d": (_a, _c, _zero),
    }
    components = {"a": _a, "b": _b, "c": _c, "d": _d}
    items = []
    for name, comp in components.items():
        co, image, out_part = heads[name]
        in_part = "minus_part" if name in "ac" else "plus_part"
        for k, f in enumerate((bm, b0, bp)):
            got = dirac(Spinor(**{in_part: f * comp}))
            want = Spinor(**{out_part: co * (f * image) + corrections[name][k]})
            items.append((f"dirac-first-{name}{k}", got - want))
    return _run_items(items)


def dirac_square_check():
    """The twelve values of the squared Dirac operator on spin-1 times generators.

    dirac applied twice to f times a generator spinor is q^-1 [2]_q
    times the scalar Laplacian of f times the same spinor, plus a fixed
    curvature correction.
    """
    corrections = {
        "a": (_zero, -(_q(-1) * _a), -(_q(-1) * _c)),
        "b": (_zero, _q(1) * _b, _q(1) * _d),
        "c": (_a, _q(1) * _c, _zero),
        "d": (-(_q(2) * _b), -(_q(3) * _d), _zero),
    }
    components = {"a": _a, "b": _b, "c": _c, "d": _d}
    items = []
    for name, comp in components.items():
        part = "minus_part" if name in "ac" else "plus_part"
        for k, f in enumerate((bm, F0, bp)):
            sigma = Spinor(**{part: f * comp})
            got = dirac(dirac(sigma))
            head = (_q(-1) * two_q) * (laplacian(f) * comp)
            want = Spinor(**{part: head + corrections[name][k]})
            items.append((f"dirac-sq-{name}{k}", got - want))
    return _run_items(items)


def _random_sphere_word(rng, length=3):
    out = one
    for _ in range(rng.randrange(1, length + 1)):
        out = out * rng.choice([b0, bp, bm])
    return out


def dirac_commutator_check(sample_size=50, seed=7):
    """[dirac, multiplication by f] equals gamma of df, on seeded samples."""
    rng = random.Random(seed)
    pool = [bm, b0, bp, one]
    items = []
    for t in range(sample_size):
        f = pool[t] if t < 4 else _random_sphere_word(rng)
        sigma = GENERATOR_SPINORS[rng.randrange(4)]
        diff = dirac(f * sigma) - f * dirac(sigma) - gamma(d(f), sigma)
        items.append((f"dirac-com-{t}", diff))
    return _run_items(items)


# ---------------------------------------------------------------------------
# the trivialisation


class SpinorRow:
    """A spinor in the trivialised picture: a row 2-vector over the sphere."""

    __slots__ = ("f", "g")

    def __init__(self, f: AlgebraElement, g: AlgebraElement):
        for x in (f, g):
            if any(m.degree() != 0 for m in x.terms):
                raise ValueError("row entries must be sphere elements")
        self.f = f
        self.g = g

    def to_spinor(self) -> Spinor:
        """Pair the row with the column (a + L b, c + L d), split by degree."""
        return Spinor(
            minus_part=self.f * _a + self.g * _c,
            plus_part=(self.f * _b + self.g * _d).scale(LAMBDA),
        )

    @staticmethod
    def from_spinor(sigma: Spinor) -> "SpinorRow":
        m, p = sigma.minus_part, sigma.plus_part
        return SpinorRow(
            m * _d - (p * _c).scale(LAMBDA_INV * _q(-1)),
            -((m * _b).scale(_q(1))) + (p * _a).scale(LAMBDA_INV),
        )

    def __bool__(self):
        return bool(self.f) or bool(self.g)

    def __eq__(self, other):
        if not isinstance(other, SpinorRow):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __sub__(self, other):
        return SpinorRow(self.f - other.f, self.g - other.g)

    def __repr__(self):
        return f"SpinorRow({self.f!r}, {self.g!r})"


def projector_e():
    """The 2x2 idempotent whose image is S+ and whose kernel summand is S-."""
    return (
        (-(_q(-1) * b0), _q(1) * bm),
        (-bp, one + _q(1) * b0),
    )


def _mat_mul(X, Y):
    return tuple(
        tuple(X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2))
        for i in range(2)
    )


def _mat_col(X, v):
    return tuple(X[i][0] * v[0] + X[i][1] * v[1] for i in range(2))


def _row_mat(v, X):
    return tuple(v[0] * X[0][j] + v[1] * X[1][j] for j in range(2))


def _mat_sub(X, Y):
    return tuple(tuple(X[i][j] - Y[i][j] for j in range(2)) for i in range(2))


_ID2 = ((one, _zero), (_zero, one))


def canonical_coefficients(f):
    """A fixed coefficient triple (f_-, f_0, f_+) with df = f_i db_i.

    The same triple expands both chiral halves -- f_i del b_i = del f
    and f_i delbar b_i = delbar f -- which the transported Dirac
    operator below needs.
    """
    return extract_coeffs(d(f))


def transported_dirac(row: SpinorRow, coeffs=canonical_coefficients) -> SpinorRow:
    """The Dirac operator on row 2-vectors in the trivialisation.

    Matrices multiply from the right; the coefficient extraction plays
    the part of the right-acting derivative entries.
    """
    e = projector_e()
    f, g = row.f, row.g
    fm, f0, fp = coeffs(f)
    gm, g0, gp = coeffs(g)

    out = [f.scale(LAMBDA * _q(1)), g.scale(LAMBDA * _q(1))]

    u = (fm * bm + f0 * b0 + fp * bp, gm * bm + g0 * b0 + gp * bp)
    ue = _row_mat(u, e)
    for j in range(2):
        out[j] = out[j] + (u[j] + ue[j].scale(_q(4) - 1)).scale(LAMBDA * _q(-1))

    third = _row_mat((f0 - gm, fp.scale(_q(-1))), e)
    fourth = _row_mat((-gm, fp.scale(_q(-1)) - g0), _mat_sub(_ID2, e))
    for j in range(2):
        out[j] = out[j] + third[j].scale(LAMBDA * _q(2)) - fourth[j].scale(LAMBDA)

    return SpinorRow(out[0], out[1])


def trivialisation_checks():
    """Everything the trivialisation promises, itemized.

    Covers the idempotent and its kernels, the chiral derivatives of e,
    the covariant derivative in projector form, and agreement of the
    transported Dirac operator with the upstairs one through the
    isomorphism.
    """
    e = projector_e()
    f1 = _mat_sub(_ID2, e)
    de = tuple(tuple(d(x) for x in r) for r in e)
    dele = tuple(tuple(del_split(x)[0] for x in r) for r in e)
    delbare = tuple(tuple(del_split(x)[1] for x in r) for r in e)
    items = []

    ee = _mat_mul(e, e)
    for i in range(2):
        for j in range(2):
            items.append((f"triv-idem-{i}{j}", ee[i][j] - e[i][j]))

    for i, x in enumerate(_mat_col(e, (_a, _c))):
        items.append((f"triv-ker-minus-{i}", x))
    for i, x in enumerate(_mat_col(f1, (_b, _d))):
        items.append((f"triv-ker-plus-{i}", x))

    ede = _mat_mul(e, de)
    dee = _mat_mul(de, e)
    f1df1 = _mat_mul(f1, tuple(tuple(-x for x in r) for r in de))
    for i in range(2):
        for j in range(2):
            items.append((f"triv-del-{i}{j}", dele[i][j] - ede[i][j]))
            items.append((f"triv-delbar-{i}{j}", delbare[i][j] - dee[i][j]))
            items.append((f"triv-delbar-alt-{i}{j}", delbare[i][j] + f1df1[i][j]))

    Dminus = (covariant_D(Section(_a, 1)), covariant_D(Section(_c, 1)))
    Dplus = (covariant_D(Section(_b, -1)), covariant_D(Section(_d, -1)))
    edeac = _mat_col(ede, (_a, _c))
    deebd = _mat_col(dee, (_b, _d))
    for i in range(2):
        items.append((f"triv-D-minus-{i}", Dminus[i] + edeac[i]))
        items.append((f"triv-D-plus-{i}", Dplus[i] - deebd[i]))
    for i, x in enumerate(_mat_col(dele, (_b, _d))):
        items.append((f"triv-del-plus-{i}", x))
    for i, x in enumerate(_mat_col(delbare, (_a, _c))):
        items.append((f"triv-delbar-minus-{i}", x))

    rng = random.Random(7)
    rows = [SpinorRow(one, _zero), SpinorRow(_zero, one)] + [
        SpinorRow(_random_sphere_word(rng), _random_sphere_word(rng))
        for _ in range(10)
    ]
    for t, row in enumerate(rows):
        back = SpinorRow.from_spinor(dirac(row.to_spinor()))
        got = transported_dirac(row)
        items.append((f"triv-dirac-{t}-f", got.f - back.f))
        items.append((f"triv-dirac-{t}-g", got.g - back.g))

    sigma = SpinorRow(one, _zero).to_spinor()
    items.append(("triv-eigenrow", dirac(sigma) - sigma.scale(LAMBDA_INV)))

    return _run_items(items)
