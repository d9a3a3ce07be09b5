"""Riemannian structure of the q-sphere: connection, curvature, Ricci.

The Levi-Civita connection is computed upstairs.  A basic one-form
u e+ + w e- has homogeneous coefficients of degree -+2, and the
monopole covariant derivative of those coefficients assembles into a
two-legged tensor over the sphere algebra:

    nabla(u e+ + w e-) = D(u) (x) e+  +  D(w) (x) e-.

Torsion and cotorsion both vanish, the curvature collapses to the area
form times a chirality-dependent scalar, and contracting a lift of the
area form through the curvature produces Ricci.  Two lifts matter: the
Einstein one, whose Ricci is an exact multiple of the metric, and the
symmetric one, whose Ricci picks up a correction proportional to the
lift itself.

Decomposing a two-legged tensor into sums of honest form (x) form pairs
(needed to differentiate the second leg) is not canonical; it is done
here by inserting the fixed partitions of unity of the charge -+2
bundles, which keeps every curvature computation deterministic.
"""

from __future__ import annotations

from .algebra import AlgebraElement
from .bundles import Section, covariant_D, partition_of_unity
from .calculus import EM, EP, Form, TensorForm, d, push_left, wedge
from .scalars import ONE, Scalar, two_q
from .sphere import (
    DB,
    F0,
    SphereForm,
    _run_items,
    bm,
    bp,
    del_split,
    metric_g,
    one,
    star_second_leg,
    upsilon,
)

_q = Scalar.q_power


def _fm(x) -> Form:
    return x.value if isinstance(x, SphereForm) else x


def tensor_attach(omega: Form, eta: Form) -> TensorForm:
    """omega (x) eta over the sphere, for eta a horizontal one-form.

    Each e+/e- term of eta contributes a leg; its coefficient crosses
    omega's exterior word on the way to the far left.
    """
    out = TensorForm()
    for wb, y in eta.terms.items():
        if wb not in (EP, EM):
            raise ValueError("second tensor factor must be a horizontal one-form")
        for v, z in omega.terms.items():
            out = out + TensorForm({(v, (wb[0],)): z * push_left(v, y)})
    return out


def decompose_legs(tf: TensorForm):
    """Rewrite a one-legged tensor as a list of (omega_r, eta_r) form pairs.

    The leg e^b is padded with 1 = sum x_r y_r at charge -+2 so that
    eta_r = y_r e^b is basic; x_r moves across the tensor sign and picks
    up the crossing factor of omega's exterior word.
    """
    pairs = []
    for (w, labels), x in tf.terms.items():
        if len(labels) != 1:
            raise ValueError("expected exactly one tensor leg")
        beta = labels[0]
        part = partition_of_unity(-2 if beta == "+" else 2)
        shift = (2 if beta == "+" else -2) * w.crossing()
        for xr, yr in part.pairs:
            omega = Form({w: (x * xr).scale(_q(shift))})
            if omega:
                pairs.append((omega, Form.of(yr, beta)))
    return pairs


def nabla(tau) -> TensorForm:
    """The Levi-Civita connection on basic one-forms."""
    t = _fm(tau)
    SphereForm(t)  # degree bookkeeping; raises on non-basic input
    if set(t.terms) - {EP, EM}:
        raise ValueError("the connection applies to one-forms")
    out = TensorForm()
    for w, x in t.terms.items():
        Dx = covariant_D(Section(x, -2 if w == EP else 2))
        for v, z in Dx.terms.items():
            out = out + TensorForm({(v, (w[0],)): z})
    return out


class Connection1:
    """A left connection on one-forms; defaults to the Levi-Civita nabla."""

    __slots__ = ("apply",)

    def __init__(self, apply=nabla):
        self.apply = apply

    def __call__(self, tau) -> TensorForm:
        return self.apply(tau)

    def leibniz_failures(self, samples):
        """(f, tau) pairs where nabla(f tau) != df (x) tau + f nabla(tau)."""
        bad = []
        for f, tau in samples:
            t = _fm(tau)
            lhs = self.apply(f * t)
            rhs = tensor_attach(d(f), t) + f * self.apply(t)
            if lhs != rhs:
                bad.append((f, tau))
        return bad


LEVI_CIVITA = Connection1()


def torsion(tau) -> Form:
    """Wedge of the connection minus the exterior derivative; always 0 here."""
    t = _fm(tau)
    return nabla(t).wedge_in().as_form() - d(t)


# the metric as an explicit sum of basic (x) basic pairs, coefficients out front
G_PRESENTATION = ((_q(2), "-", "+"), (ONE, "+", "-"), (-two_q, "0", "0"))


def cotorsion_parts():
    """The (nabla wedge id) and (id wedge nabla) halves applied to the metric."""
    left = TensorForm()
    right = TensorForm()
    for co, i, j in G_PRESENTATION:
        ti, tj = DB[i], DB[j]
        left = left + tensor_attach(nabla(ti).wedge_in().as_form(), tj).scale(co)
        for (v, labels), x in nabla(tj).terms.items():
            ww = wedge(ti, Form({v: x}))
            right = right + TensorForm(
                {(u, labels): z for u, z in ww.terms.items()}
            ).scale(co)
    return left, right


def cotorsion() -> TensorForm:
    left, right = cotorsion_parts()
    return left - right


class ProjectorE:
    """The 3x3 idempotent presenting the one-forms as a summand of a free module.

    Stored as column (x) row; the single dot product row . column = 1
    makes E^2 = E one engine identity instead of nine.
    """

    __slots__ = ("col", "row")

    def __init__(self):
        self.col = (two_q * bm, F0, two_q * bp)
        self.row = (-bp, F0, -(_q(2) * bm))

    def entry(self, i, j) -> AlgebraElement:
        return self.col[i] * self.row[j]

    def matrix(self):
        return [[self.entry(i, j) for j in range(3)] for i in range(3)]


def projector_checks():
    """Itemized identities tying the projector to the connection."""
    E = ProjectorE()
    db = (DB["-"], DB["0"], DB["+"])
    items = []

    dot = sum((rk * ck for rk, ck in zip(E.row, E.col)), AlgebraElement.zero())
    items.append(("rowcol", dot - one))
    items.append(("rowdb", sum((rk * t for rk, t in zip(E.row, db)), Form.zero())))

    M = E.matrix()
    for i in range(3):
        for j in range(3):
            sq = sum((M[i][k] * M[k][j] for k in range(3)), AlgebraElement.zero())
            items.append((f"EE-{i}{j}", sq - M[i][j]))
        items.append((f"Edb-{i}", sum((M[i][k] * db[k] for k in range(3)), Form.zero())))

    # -E dE reproduces the connection on the generators' differentials
    for j in range(3):
        recomb = TensorForm()
        for i in range(3):
            recomb = recomb + tensor_attach(d(M[j][i]), db[i])
        items.append((f"nablaE-{j}", nabla(db[j]) + recomb))

    # the same recombination on the bare row gives minus the metric
    drow = TensorForm()
    for j in range(3):
        drow = drow + tensor_attach(d(E.row[j]), db[j])
    items.append(("drowdb", drow + metric_g()))

    # each chirality of dE annihilates the matching chirality of db
    for j in range(3):
        hol = TensorForm()
        ahol = TensorForm()
        for i in range(3):
            de, debar = del_split(M[j][i])
            dbi, dbari = del_split_form(db[i])
            hol = hol + tensor_attach(de, dbi)
            ahol = ahol + tensor_attach(debar, dbari)
        items.append((f"holE-{j}", hol))
        items.append((f"aholE-{j}", ahol))

    return _run_items(items)


def del_split_form(tau: Form):
    """(e+ part, e- part) of a one-form."""
    return Form({EP: tau.coefficient(EP)}), Form({EM: tau.coefficient(EM)})


def riemann_tensor(tau) -> TensorForm:
    """Curvature of the connection: (id ^ nabla - d (x) id) applied to nabla(tau).

    Both halves are computed on one shared decomposition of nabla(tau)
    into form (x) form pairs (each half separately depends on the
    choice; the difference does not).  The result is verified to be the
    area form tensor a chirality scalar times the input before it is
    returned.
    """
    t = _fm(tau)
    total = TensorForm()
    for omega, eta in decompose_legs(nabla(t)):
        for (v, labels), x in nabla(eta).terms.items():
            ww = wedge(omega, Form({v: x}))
            total = total + TensorForm({(u, labels): z for u, z in ww.terms.items()})
        total = total - tensor_attach(d(omega), eta)
    up = upsilon()
    expected = tensor_attach(up, Form({EM: t.coefficient(EM)})).scale(two_q)
    expected = expected - tensor_attach(up, Form({EP: t.coefficient(EP)})).scale(
        _q(4) * two_q
    )
    if total != expected:
        raise RuntimeError("curvature is not the area form times the chirality scalar")
    return total


def ricci(lift: TensorForm) -> TensorForm:
    """Contract the curvature through a lift of the area form.

    The curvature acts on the second leg of the lift by the chirality
    scalars [2]_q (e- leg) and -q^4 [2]_q (e+ leg); closing the loop
    with the area form leaves exactly that rescaling of the lift.
    """
    if not lift.is_basic():
        raise ValueError("the lift must be basic to cross the curvature")
    out = TensorForm()
    for (w, labels), x in lift.terms.items():
        lam = two_q if labels[-1] == "-" else -(_q(4) * two_q)
        out = out + TensorForm({(w, labels): x.scale(lam)})
    return out


def einstein_lift() -> TensorForm:
    """The lift of the area form whose Ricci is an exact multiple of the metric."""
    g = metric_g()
    ratio = (1 - _q(-4)) / (1 + _q(-4))
    return (-star_second_leg(g) + g.scale(ratio)).scale(_q(-1) / two_q)


def geometric_lift() -> TensorForm:
    """The symmetric lift: minus the second-leg star of the metric, normalized."""
    return star_second_leg(metric_g()).scale(-(_q(-1) / two_q))
