"""The left-covariant 3-d differential calculus on quantum SL(2).

Basis one-forms e+, e-, e0 (left-invariant), with commutation rules

    e+- . x = q^(deg x) x . e+-,      e0 . x = q^(2 deg x) x . e0,

exterior derivative fixed on the generators by

    da = a e0 + q b e+        db = a e- - q^-2 b e0
    dc = c e0 + q d e+        dd = c e- - q^-2 d e0

and exterior algebra

    (e+-)^2 = (e0)^2 = 0,   q^2 e+ ^ e- + e- ^ e+ = 0,
    e0 ^ e+- + q^(+-4) e+- ^ e0 = 0,

    d e0 = q^3 e+ ^ e-,   d e+ = -(q^2+1) e+ ^ e0,   d e- = (q^-2+q^-4) e- ^ e0.

The d e+- values are the unique ones compatible with d^2 = 0 given the
rest; that compatibility is asserted at import time.  Forms keep their
algebra coefficients on the far left of each basis word.  Words are
ordered +, -, 0; e.g. the top form is e+ ^ e- ^ e0.

e+- carry charge +-2 and e0 charge 0; a form descends to the sphere
(is "basic") precisely when coefficient degree and word charge cancel.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import AlgebraElement, Monomial, antipode, coproduct, degree_split
from .algebra import a as _ga, b as _gb, c as _gc, d as _gd
from .scalars import ONE, Scalar, qint

_q = Scalar.q_power

_ORD = {"+": 0, "-": 1, "0": 2}
_CHG = {"+": 2, "-": -2, "0": 0}


class ExteriorWord(tuple):
    """An ordered subset of {+, -, 0}, e.g. ('+','-') for e+ ^ e-."""

    __slots__ = ()

    def __new__(cls, letters=()):
        letters = tuple(letters)
        assert all(x in _ORD for x in letters)
        assert all(_ORD[u] < _ORD[v] for u, v in zip(letters, letters[1:]))
        return tuple.__new__(cls, letters)

    def charge(self):
        return sum(_CHG[x] for x in self)

    def crossing(self):
        """Number of q^(deg .) factors a coefficient picks up moving past."""
        return sum(1 if x in "+-" else 2 for x in self)


SCALAR_WORD = ExteriorWord(())
EP = ExteriorWord(("+",))
EM = ExteriorWord(("-",))
E0 = ExteriorWord(("0",))
TOP = ExteriorWord(("+", "-", "0"))
VOL = ExteriorWord(("+", "-"))  # e+ ^ e-, the area form upstairs


def _straighten_word(letters):
    """Sort a letter sequence into canonical order.

    Returns (ExteriorWord, Scalar) or None when a letter repeats.
    """
    letters = list(letters)
    coeff = ONE
    n = len(letters)
    for i in range(n):
        for j in range(n - 1 - i):
            u, v = letters[j], letters[j + 1]
            if u == v:
                return None
            if _ORD[u] > _ORD[v]:
                letters[j], letters[j + 1] = v, u
                if (u, v) == ("-", "+"):
                    coeff = coeff * (-_q(2))
                elif (u, v) == ("0", "+"):
                    coeff = coeff * (-_q(4))
                else:  # ("0", "-")
                    coeff = coeff * (-_q(-4))
    if len(set(letters)) != len(letters):
        return None
    return ExteriorWord(letters), coeff


def push_left(word, x: AlgebraElement) -> AlgebraElement:
    """Move x from the right of the basis word e^word to its left."""
    return push_left_n(ExteriorWord(word).crossing(), x)


def push_left_n(crossings, x: AlgebraElement) -> AlgebraElement:
    if crossings == 0:
        return x
    out = AlgebraElement()
    for m, co in x.terms.items():
        out.terms[m] = co * _q(crossings * m.degree())
    return out


class Form:
    """A differential form: {ExteriorWord: AlgebraElement}, coefficients left."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, x in terms.items():
                if x:
                    self.terms[ExteriorWord(w)] = x

    @staticmethod
    def zero():
        return Form()

    @staticmethod
    def of(x: AlgebraElement, word=()):
        return Form({ExteriorWord(word): x})

    def coefficient(self, word) -> AlgebraElement:
        return self.terms.get(ExteriorWord(word), AlgebraElement())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Form):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, x in other.terms.items():
            v = out.get(w)
            v = x if v is None else v + x
            if v:
                out[w] = v
            elif w in out:
                del out[w]
        f = Form()
        f.terms = out
        return f

    def __neg__(self):
        f = Form()
        f.terms = {w: -x for w, x in self.terms.items()}
        return f

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, other):
        """Left multiplication by a coefficient (or scalar)."""
        if isinstance(other, (int, Scalar)):
            other = AlgebraElement.one().scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        f = Form()
        for w, x in self.terms.items():
            v = other * x
            if v:
                f.terms[w] = v
        return f

    def __mul__(self, other):
        """Right multiplication by a coefficient, or wedge with a form."""
        if isinstance(other, (int, Scalar)):
            other = AlgebraElement.one().scale(other)
        if isinstance(other, AlgebraElement):
            f = Form()
            for w, x in self.terms.items():
                v = x * push_left(w, other)
                if v:
                    f.terms[w] = v
            return f
        if isinstance(other, Form):
            return wedge(self, other)
        return NotImplemented

    def scale(self, co):
        f = Form()
        for w, x in self.terms.items():
            v = x.scale(co)
            if v:
                f.terms[w] = v
        return f

    def degrees(self):
        return {len(w) for w in self.terms}

    def charges(self):
        """All total charges (coefficient degree + word charge) present."""
        out = set()
        for w, x in self.terms.items():
            for m in x.terms:
                out.add(m.degree() + w.charge())
        return out

    def __repr__(self):
        return render_form(self)


def wedge(x: Form, y: Form) -> Form:
    out = Form()
    acc = out.terms
    for w1, x1 in x.terms.items():
        for w2, x2 in y.terms.items():
            st = _straighten_word(w1 + w2)
            if st is None:
                continue
            word, co = st
            v = (x1 * push_left(w1, x2)).scale(co)
            if not v:
                continue
            u = acc.get(word)
            u = v if u is None else u + v
            if u:
                acc[word] = u
            elif word in acc:
                del acc[word]
    return out


# ---------------------------------------------------------------------------
# the exterior derivative

_D_GEN = {
    "a": Form({E0: _ga, EP: _gb.scale(_q(1))}),
    "b": Form({EM: _ga, E0: _gb.scale(-_q(-2))}),
    "c": Form({E0: _gc, EP: _gd.scale(_q(1))}),
    "d": Form({EM: _gc, E0: _gd.scale(-_q(-2))}),
}

_D_WORD_BASE = {
    "0": Form({VOL: AlgebraElement.one().scale(_q(3))}),
    "+": Form({ExteriorWord("+0"): AlgebraElement.one().scale(-(_q(2) + ONE))}),
    "-": Form({ExteriorWord("-0"): AlgebraElement.one().scale(_q(-2) + _q(-4))}),
}


@lru_cache(maxsize=None)
def _d_mono(m: Monomial) -> Form:
    i, j, k, l = m
    if i + j + k + l == 0:
        return Form()
    if i:
        g, rest = "a", Monomial(i - 1, j, k, l)
    elif j:
        g, rest = "b", Monomial(0, j - 1, k, l)
    elif k:
        g, rest = "c", Monomial(0, 0, k - 1, l)
    else:
        g, rest = "d", Monomial(0, 0, 0, l - 1)
    rest_el = AlgebraElement({rest: ONE})
    gen_el = AlgebraElement.gen(g)
    return _D_GEN[g] * rest_el + gen_el * _d_mono(rest)


@lru_cache(maxsize=None)
def _d_word(w: ExteriorWord) -> Form:
    out = Form()
    for r, letter in enumerate(w):
        piece = _D_WORD_BASE[letter]
        if w[:r]:
            piece = wedge(Form.of(AlgebraElement.one(), w[:r]), piece)
        if w[r + 1:]:
            piece = wedge(piece, Form.of(AlgebraElement.one(), w[r + 1:]))
        if r % 2:
            piece = -piece
        out = out + piece
    return out


def d(x) -> Form:
    """Exterior derivative of an algebra element or a form."""
    if isinstance(x, AlgebraElement):
        out = Form()
        for m, co in x.terms.items():
            out = out + _d_mono(m).scale(co)
        return out
    assert isinstance(x, Form)
    out = Form()
    for w, coeff in x.terms.items():
        out = out + wedge(d(coeff), Form.of(AlgebraElement.one(), w))
        out = out + coeff * _d_word(w)
    return out


# ---------------------------------------------------------------------------
# the charge-n monopole connection


def monopole_omega(n: int) -> Form:
    """Connection form of the charge-n monopole: a q-integer multiple of e0."""
    return Form.of(AlgebraElement.one().scale(qint(n, _q(2))), E0)


def monopole_curvature(n: int) -> Form:
    """Curvature d(omega) + omega ^ omega, checked against its closed form."""
    om = monopole_omega(n)
    f = d(om) + wedge(om, om)
    expected = Form.of(AlgebraElement.one().scale(_q(3) * qint(n, _q(2))), VOL)
    assert f == expected
    return f


def _sweedler_omega(x: AlgebraElement) -> Form:
    """omega on the group-like image of x: sum S(x(1)) d(x(2))."""
    out = Form()
    for (m1, m2), co in coproduct(x).items():
        piece = antipode(AlgebraElement({m1: ONE})) * d(AlgebraElement({m2: ONE}))
        out = out + piece.scale(co)
    return out


def omega_recursion_check(nmax: int) -> bool:
    """The two Sweedler routes to omega(t^n) for 0 <= |n| <= nmax."""
    for n in range(nmax + 1):
        assert _sweedler_omega(_ga ** n) == monopole_omega(n), n
        assert _sweedler_omega(_gd ** n) == monopole_omega(-n), -n
    return True


# ---------------------------------------------------------------------------
# algebra-valued tensor products of forms (over the underlying algebra)


class TensorForm:
    """Sum of f . e^word (x) e^l1 (x) e^l2 ... with f on the far left.

    The first leg may be any exterior word; the remaining legs are basis
    one-forms from {+, -} (the charged directions).  Coefficients cross
    the tensor signs because the tensor product is over the algebra.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (w, labels), x in terms.items():
                if x:
                    labels = tuple(labels)
                    assert all(t in "+-" for t in labels)
                    self.terms[(ExteriorWord(w), labels)] = x

    @staticmethod
    def zero():
        return TensorForm()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorForm):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, x in other.terms.items():
            v = out.get(key)
            v = x if v is None else v + x
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        t = TensorForm()
        t.terms = out
        return t

    def __neg__(self):
        t = TensorForm()
        t.terms = {k: -x for k, x in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def scale(self, co):
        t = TensorForm()
        for k, x in self.terms.items():
            v = x.scale(co)
            if v:
                t.terms[k] = v
        return t

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if isinstance(other, AlgebraElement):
            t = TensorForm()
            for k, x in self.terms.items():
                v = other * x
                if v:
                    t.terms[k] = v
            return t
        return NotImplemented

    def is_basic(self):
        """Total charge zero in every term: such tensors descend."""
        for (w, labels), x in self.terms.items():
            chg = w.charge() + sum(_CHG[t] for t in labels)
            for m in x.terms:
                if m.degree() + chg != 0:
                    return False
        return True

    def wedge_in(self) -> "TensorForm":
        """Collapse the first tensor sign with a wedge."""
        t = TensorForm()
        acc = t.terms
        for (w, labels), x in self.terms.items():
            assert labels, "nothing to wedge into"
            st = _straighten_word(w + (labels[0],))
            if st is None:
                continue
            word, co = st
            key = (word, labels[1:])
            v = x.scale(co)
            u = acc.get(key)
            u = v if u is None else u + v
            if u:
                acc[key] = u
            elif key in acc:
                del acc[key]
        return t

    def as_form(self) -> Form:
        """A tensor with no extra legs is a plain form."""
        f = Form()
        for (w, labels), x in self.terms.items():
            assert not labels
            f.terms[w] = x
        return f

    def __repr__(self):
        bits = []
        for (w, labels), x in sorted(
            self.terms.items(), key=lambda kv: (render_word(kv[0][0]), kv[0][1])
        ):
            legs = "(x)".join([render_word(w) or "1"] + [render_word((t,)) for t in labels])
            bits.append(f"({x!r})*{legs}")
        return " + ".join(bits) if bits else "0"


def tensor(x: Form, y: Form) -> TensorForm:
    """x (x) y for a one-form y with charged components only."""
    t = TensorForm()
    for w1, x1 in x.terms.items():
        for w2, x2 in y.terms.items():
            assert w2 in (EP, EM), "second leg must be a charged basis one-form"
            v = x1 * push_left(w1, x2)
            if not v:
                continue
            key = (w1, (w2[0],))
            u = t.terms.get(key)
            u = v if u is None else u + v
            if u:
                t.terms[key] = u
            elif key in t.terms:
                del t.terms[key]
    return t


def tensor_append(tf: TensorForm, y: Form) -> TensorForm:
    """tf (x) y, again for a charged one-form y."""
    t = TensorForm()
    for (w, labels), x in tf.terms.items():
        crossings = w.crossing() + len(labels)
        for w2, x2 in y.terms.items():
            assert w2 in (EP, EM)
            v = x * push_left_n(crossings, x2)
            if not v:
                continue
            key = (w, labels + (w2[0],))
            u = t.terms.get(key)
            u = v if u is None else u + v
            if u:
                t.terms[key] = u
            elif key in t.terms:
                del t.terms[key]
    return t


# ---------------------------------------------------------------------------
# rendering

_WORD_NAMES = {"+": "ep", "-": "em", "0": "e0"}


def render_word(w) -> str:
    return "*".join(_WORD_NAMES[x] for x in w)


def render_form(f: Form) -> str:
    from .algebra import _needs_parens, render_element

    if not f.terms:
        return "0"
    pieces = []
    for w in sorted(f.terms, key=lambda w: (len(w), render_word(w))):
        co = render_element(f.terms[w])
        neg = co.startswith("-") and not _needs_parens(co)
        if neg:
            co = co[1:]
        if _needs_parens(co):
            co = "(" + co + ")"
        ws = render_word(w)
        if not ws:
            body = co
        elif co == "1":
            body = ws
        else:
            body = co + "*" + ws
        pieces.append(("-" if neg else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += (" - " if sign == "-" else " + ") + body
    return out


# the stated d e+- values are the unique ones closing the calculus:
# d^2 must kill the generators
for _g in (_ga, _gb, _gc, _gd):
    assert not d(d(_g)), "exterior derivative does not square to zero"
del _g
