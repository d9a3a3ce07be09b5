"""Charged line bundles over the q-sphere, realized inside quantum SL(2).

The degree-n component of the algebra serves as the module of sections
of the charge-n bundle.  The monopole connection differentiates a
section f of degree n by

    D f = d f - [n; q^2] f e^0,

which lands in the horizontal (e^+, e^-) directions; the e^0 part of df
is exactly [n; q^2] f, and that cancellation is asserted every time.

Each small charge carries a fixed "partition of unity" -- a finite dual
basis exhibiting the bundle as a direct summand of a free module.  The
charge +-2 partitions drive the canonical extraction of sphere-valued
coefficients from horizontal one-forms; the coefficients of such an
expansion are not unique, so fixing the partitions once keeps every
downstream formula deterministic.
"""

from __future__ import annotations

from .algebra import AlgebraElement
from .algebra import a as _a, b as _b, c as _c, d as _d
from .calculus import E0, EM, EP, Form, d
from .scalars import Scalar, qint, two_q

_q = Scalar.q_power
_q2 = _q(2)


class Section:
    """A homogeneous element viewed as a section of the charge-n bundle."""

    __slots__ = ("value", "charge_degree")

    def __init__(self, value: AlgebraElement, charge_degree=None):
        degs = {m.degree() for m in value.terms}
        if len(degs) > 1:
            raise ValueError(f"section value is not homogeneous: degrees {sorted(degs)}")
        if charge_degree is None:
            charge_degree = degs.pop() if degs else 0
        elif degs and degs.pop() != charge_degree:
            raise ValueError("section value has the wrong degree")
        self.value = value
        self.charge_degree = charge_degree

    def __repr__(self):
        return f"Section({self.value!r}, n={self.charge_degree})"


def covariant_D(f: Section) -> Form:
    """Monopole covariant derivative; the result is horizontal."""
    if not isinstance(f, Section):
        f = Section(f)
    n = f.charge_degree
    out = d(f.value) - Form.of(f.value.scale(qint(n, _q2)), E0)
    assert E0 not in out.terms, "covariant derivative failed to be horizontal"
    return out


def horizontality_check(sample):
    """e^0 coefficient of df must be [n;q^2] f for homogeneous f; returns failures."""
    failures = []
    for f in sample:
        sec = Section(f)  # raises if not homogeneous
        got = d(f).coefficient(E0)
        want = f.scale(qint(sec.charge_degree, _q2))
        if got != want:
            failures.append((f, got, want))
    return failures


class Partition:
    """Pairs (x_r, y_r) with sum x_r y_r = 1, deg y_r = n, deg x_r = -n."""

    __slots__ = ("degree", "pairs")

    def __init__(self, degree, pairs):
        total = AlgebraElement.zero()
        for x, y in pairs:
            assert Section(x).charge_degree == -degree
            assert Section(y).charge_degree == degree
            total = total + x * y
        assert total == AlgebraElement.one(), "partition does not sum to 1"
        self.degree = degree
        self.pairs = tuple(pairs)


def partition_of_unity(n: int) -> Partition:
    if n == 2:
        pairs = [
            (_d * _d, _a * _a),
            ((_b * _b).scale(_q(2)), _c * _c),
            ((_d * _b).scale(-(_q(1) * two_q)), _a * _c),
        ]
    elif n == 1:
        pairs = [(_d, _a), (_b.scale(-_q(1)), _c)]
    elif n == -1:
        pairs = [(_a, _d), (_c.scale(-_q(-1)), _b)]
    elif n == -2:
        pairs = [
            (_a * _a, _d * _d),
            ((_c * _c).scale(_q(-2)), _b * _b),
            ((_a * _c).scale(-(_q(-1) * two_q)), _d * _b),
        ]
    else:
        raise ValueError(f"no partition of unity stored for charge {n}")
    return Partition(n, pairs)


def extract_coeffs(h: Form):
    """Canonical sphere-valued coefficients (f_-, f_0, f_+) of a horizontal form.

    The e^+ coefficient must have degree -2 and the e^- coefficient
    degree +2; the returned triple recombines against the derivatives of
    the sphere generators: f_- db_- + f_0 db_0 + f_+ db_+ = h.
    """
    fm = f0 = fp = AlgebraElement.zero()
    for w, x in h.terms.items():
        if w == EP:
            if any(m.degree() != -2 for m in x.terms):
                raise ValueError("e+ coefficient must have degree -2")
            fm = fm + (x * (_c * _c)).scale(_q(-2))
            f0 = f0 + (x * (_a * _c)).scale(-(_q(-1) * two_q))
            fp = fp + x * (_a * _a)
        elif w == EM:
            if any(m.degree() != 2 for m in x.terms):
                raise ValueError("e- coefficient must have degree +2")
            fm = fm + x * (_d * _d)
            f0 = f0 + (x * (_d * _b)).scale(-two_q)
            fp = fp + (x * (_b * _b)).scale(_q(2))
        else:
            raise ValueError("form has a component outside e+ and e-")
    return fm, f0, fp


def bwb_check(n: int):
    """Derivative formula and holomorphy for the weight-n section basis c^s a^t.

    Returns the list of failing (s, t, what) triples; empty means the
    whole n+1-dimensional family checks out.
    """
    assert n >= 0
    failures = []
    e0_1 = Form.of(AlgebraElement.one(), E0)
    ep_1 = Form.of(AlgebraElement.one(), EP)
    for s in range(n + 1):
        t = n - s
        x = _c ** s * _a ** t
        if s == 0 and t == 0:
            expected = Form.zero()
        elif s == 0:
            expected = (_a ** (t - 1)).scale(qint(t, _q2)) * (
                _a * e0_1 + _b.scale(_q(1)) * ep_1
            )
        elif t == 0:
            expected = (_c ** (s - 1)).scale(qint(s, _q2)) * (
                _c * e0_1 + _d.scale(_q(1)) * ep_1
            )
        else:
            head = x.scale(qint(n, _q2)) * e0_1
            inner = AlgebraElement.one().scale(_q(1) * qint(s, _q2)) + (
                _b * _c
            ).scale(qint(n, _q2))
            tail = (_c ** (s - 1) * _a ** (t - 1) * inner).scale(_q(t)) * ep_1
            expected = head + tail
        if d(x) != expected:
            failures.append((s, t, "derivative formula"))
        Dx = covariant_D(Section(x, n))
        if EM in Dx.terms:
            failures.append((s, t, "holomorphy (e- component)"))
        if E0 in Dx.terms:
            failures.append((s, t, "horizontality (e0 component)"))
    return failures
