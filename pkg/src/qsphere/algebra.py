"""The coordinate Hopf algebra of quantum SL(2), in PBW normal form.

Generators a, b, c, d with the standard q-commutation relations

    ba = q ab,  ca = q ac,  db = q bd,  dc = q cd,  bc = cb,
    ad = 1 + q^-1 bc,       da = 1 + q bc,

over the field of scalars Q(s), q = s^2.  Normal-form monomials are
a^i b^j c^k (l = 0) and b^j c^k d^l (i = 0); the two families overlap in
the a-and-d-free monomials.  Products are computed by a memoized
straightening recursion; an independent adjacent-rewrite engine on free
words is kept alongside for cross-checking.

The grading: a, c have degree +1 and b, d degree -1, so a monomial has
degree i - j + k - l.  All of the bundle machinery downstream keys off
this grading.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .scalars import ONE, ZERO, Scalar

_q = Scalar.q_power


class Monomial(tuple):
    """PBW monomial a^i b^j c^k d^l with i*l = 0."""

    __slots__ = ()

    def __new__(cls, i, j, k, l):
        assert min(i, j, k, l) >= 0 and i * l == 0
        return tuple.__new__(cls, (i, j, k, l))

    @property
    def i(self):
        return self[0]

    @property
    def j(self):
        return self[1]

    @property
    def k(self):
        return self[2]

    @property
    def l(self):
        return self[3]

    def degree(self):
        """Column degree (monopole charge): a, c count +1 and b, d count -1."""
        i, j, k, l = self
        return i - j + k - l

    def left_degree(self):
        """Row degree: a, b count +1 and c, d count -1.  The antipode
        exchanges the two gradings up to sign."""
        i, j, k, l = self
        return i + j - k - l

    def __repr__(self):
        names = "abcd"
        parts = []
        for n, e in zip(names, self):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"


_UNIT = Monomial(0, 0, 0, 0)


@lru_cache(maxsize=None)
def _straighten(i, j, k, l):
    """a^i b^j c^k d^l (an ordered word, possibly with both i,l > 0)
    as a tuple of (Monomial, Scalar) pairs in normal form."""
    if i == 0 or l == 0:
        return ((Monomial(i, j, k, l), ONE),)
    f = _q(-(j + k))
    out = {}
    for m, c in _straighten(i - 1, j, k, l - 1):
        out[m] = out.get(m, ZERO) + f * c
    for m, c in _straighten(i - 1, j + 1, k + 1, l - 1):
        out[m] = out.get(m, ZERO) + f * _q(-1) * c
    return tuple((m, c) for m, c in out.items() if c)


@lru_cache(maxsize=None)
def _d_pow_a_pow(l, i):
    """d^l a^i in normal form, as a tuple of (Monomial, Scalar) pairs."""
    if l == 0:
        return ((Monomial(i, 0, 0, 0), ONE),)
    if i == 0:
        return ((Monomial(0, 0, 0, l), ONE),)
    out = {}
    for m, c in _d_pow_a_pow(l - 1, i - 1):
        out[m] = out.get(m, ZERO) + c
        al, be, ga, de = m
        m2 = Monomial(al, be + 1, ga + 1, de)
        # right-multiply by bc: picks up q^(2*de), plus the q^(2i-1)
        # from commuting bc back past a^(i-1)
        out[m2] = out.get(m2, ZERO) + c * _q(2 * i - 1 + 2 * de)
    return tuple((m, c) for m, c in out.items() if c)


def mono_mul(m1: Monomial, m2: Monomial):
    """Product of two normal-form monomials as a dict {Monomial: Scalar}."""
    i1, j1, k1, l1 = m1
    i2, j2, k2, l2 = m2
    out = {}
    for (al, be, ga, de), kappa in _d_pow_a_pow(l1, i2):
        coeff = kappa * _q(al * (j1 + k1) + de * (j2 + k2))
        for m, c in _straighten(i1 + al, j1 + be + j2, k1 + ga + k2, de + l2):
            key = m
            v = out.get(key, ZERO) + coeff * c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


class AlgebraElement:
    """A finite Q(s)-linear combination of normal-form monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @staticmethod
    def zero():
        return AlgebraElement()

    @staticmethod
    def one():
        return AlgebraElement({_UNIT: ONE})

    @staticmethod
    def gen(name):
        e = [0, 0, 0, 0]
        e["abcd".index(name)] = 1
        return AlgebraElement({Monomial(*e): ONE})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = AlgebraElement({_UNIT: Scalar.from_int(other)})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = AlgebraElement({_UNIT: Scalar.from_int(other)})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        e = AlgebraElement()
        e.terms = out
        return e

    __radd__ = __add__

    def __neg__(self):
        e = AlgebraElement()
        e.terms = {m: -c for m, c in self.terms.items()}
        return e

    def __sub__(self, other):
        if isinstance(other, int):
            other = AlgebraElement({_UNIT: Scalar.from_int(other)})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, c in mono_mul(m1, m2).items():
                    v = out.get(m, ZERO) + c12 * c
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
        e = AlgebraElement()
        e.terms = out
        return e

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if isinstance(c, int):
            c = Scalar.from_int(c)
        if not c:
            return AlgebraElement()
        e = AlgebraElement()
        e.terms = {m: c * v for m, v in self.terms.items()}
        return e

    def __pow__(self, n):
        assert n >= 0
        out = AlgebraElement.one()
        for _ in range(n):
            out = out * self
        return out

    def is_homogeneous(self):
        degs = {m.degree() for m in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Degree of a homogeneous element (0 for the zero element)."""
        degs = {m.degree() for m in self.terms}
        assert len(degs) <= 1, "inhomogeneous element has no degree"
        return degs.pop() if degs else 0

    def __repr__(self):
        return render_element(self)


# handy module-level generators
a = AlgebraElement.gen("a")
b = AlgebraElement.gen("b")
c = AlgebraElement.gen("c")
d = AlgebraElement.gen("d")
one = AlgebraElement.one()


def degree_split(x: AlgebraElement):
    """Split into graded pieces: {degree: piece}, zero pieces omitted."""
    out = {}
    for m, co in x.terms.items():
        g = m.degree()
        piece = out.setdefault(g, AlgebraElement())
        piece.terms[m] = co
    return out


# ---------------------------------------------------------------------------
# the free-word rewrite engine (independent route to the normal form)

_SWAPS = {
    ("b", "a"): ("a", "b", 1),
    ("c", "a"): ("a", "c", 1),
    ("d", "b"): ("b", "d", 1),
    ("d", "c"): ("c", "d", 1),
    ("c", "b"): ("b", "c", 0),
}


def _word_redexes(w):
    """All redex positions in a free word; each entry (pos, kind, extra)."""
    out = []
    for p in range(len(w) - 1):
        pair = (w[p], w[p + 1])
        if pair in _SWAPS:
            out.append((p, "swap", None))
        elif pair == ("d", "a"):
            out.append((p, "da", None))
        elif pair == ("a", "d"):
            out.append((p, "ad", 0))
    # a (b|c)^m d blocks, the non-adjacent straightening rule
    for p in range(len(w)):
        if w[p] != "a":
            continue
        r = p + 1
        while r < len(w) and w[r] in "bc":
            r += 1
        if r < len(w) and w[r] == "d" and r > p + 1:
            out.append((p, "ad", r - p - 1))
    return out


def _apply_redex(w, redex):
    """Rewrite one redex; returns [(word, Scalar), ...]."""
    p, kind, extra = redex
    if kind == "swap":
        x, y, e = _SWAPS[(w[p], w[p + 1])]
        return [(w[:p] + (x, y) + w[p + 2:], _q(e))]
    if kind == "da":
        # da = 1 + q bc
        return [
            (w[:p] + w[p + 2:], ONE),
            (w[:p] + ("b", "c") + w[p + 2:], _q(1)),
        ]
    # a (b|c)^m d = q^-m ( (b|c)^m + q^-1 b (b|c)^m c )
    m = extra
    mid = w[p + 1: p + 1 + m]
    rest = w[p + m + 2:]
    return [
        (w[:p] + mid + rest, _q(-m)),
        (w[:p] + ("b",) + mid + ("c",) + rest, _q(-m - 1)),
    ]


def _word_to_monomial(w):
    i = w.count("a")
    l = w.count("d")
    assert i == 0 or l == 0
    return Monomial(i, w.count("b"), w.count("c"), l)


def normalize(word, strategy="left"):
    """Normal form of a free word (iterable of generator names).

    strategy picks which redex fires first: "left" (leftmost) or
    "right" (rightmost).  Both must agree; the acceptance tests lean
    on that confluence.
    """
    work = {tuple(word): ONE}
    done = {}
    steps = 0
    while work:
        steps += 1
        assert steps < 200000, "rewrite did not terminate"
        w, coeff = work.popitem()
        redexes = _word_redexes(w)
        if not redexes:
            m = _word_to_monomial(w)
            v = done.get(m, ZERO) + coeff
            if v:
                done[m] = v
            elif m in done:
                del done[m]
            continue
        redex = min(redexes) if strategy == "left" else max(redexes)
        for w2, c2 in _apply_redex(w, redex):
            v = work.get(w2, ZERO) + coeff * c2
            if v:
                work[w2] = v
            elif w2 in work:
                del work[w2]
    return AlgebraElement(done)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


# ---------------------------------------------------------------------------
# Hopf structure


class TensorSquare:
    """An element of the algebra tensored with itself (over the scalars)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mm, c in terms.items():
                if c:
                    self.terms[mm] = c

    @staticmethod
    def of(x: AlgebraElement, y: AlgebraElement):
        t = TensorSquare()
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                t.terms[(m1, m2)] = c1 * c2
        return t

    def __eq__(self, other):
        return isinstance(other, TensorSquare) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for mm, c in other.terms.items():
            v = out.get(mm, ZERO) + c
            if v:
                out[mm] = v
            elif mm in out:
                del out[mm]
        t = TensorSquare()
        t.terms = out
        return t

    def __sub__(self, other):
        t = TensorSquare()
        t.terms = {mm: -c for mm, c in other.terms.items()}
        return self + t

    def __mul__(self, other):
        """Componentwise product (the tensor-product algebra structure)."""
        out = TensorSquare()
        acc = out.terms
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                c12 = c1 * c2
                xs = mono_mul(x1, x2)
                ys = mono_mul(y1, y2)
                for mx, cx in xs.items():
                    for my, cy in ys.items():
                        key = (mx, my)
                        v = acc.get(key, ZERO) + c12 * cx * cy
                        if v:
                            acc[key] = v
                        elif key in acc:
                            del acc[key]
        return out

    def items(self):
        return self.terms.items()

    def map_legs(self, fl, fr):
        """Sum of fl(x) * fr(y) over all x (x) y terms, as an element."""
        out = AlgebraElement()
        for (mx, my), co in self.terms.items():
            piece = fl(AlgebraElement({mx: ONE})) * fr(AlgebraElement({my: ONE}))
            out = out + piece.scale(co)
        return out

    def __repr__(self):
        bits = []
        for (mx, my), co in sorted(self.terms.items()):
            bits.append(f"({co!r})*{mx!r}(x){my!r}")
        return " + ".join(bits) if bits else "0"


_DELTA_GEN = None


def _delta_generators():
    global _DELTA_GEN
    if _DELTA_GEN is None:
        _DELTA_GEN = {
            "a": TensorSquare.of(a, a) + TensorSquare.of(b, c),
            "b": TensorSquare.of(a, b) + TensorSquare.of(b, d),
            "c": TensorSquare.of(c, a) + TensorSquare.of(d, c),
            "d": TensorSquare.of(c, b) + TensorSquare.of(d, d),
        }
    return _DELTA_GEN


@lru_cache(maxsize=None)
def _coproduct_mono(m: Monomial):
    dg = _delta_generators()
    out = TensorSquare.of(one, one)
    i, j, k, l = m
    for name, e in zip("abcd", (i, j, k, l)):
        for _ in range(e):
            out = out * dg[name]
    return out


def coproduct(x: AlgebraElement) -> TensorSquare:
    out = TensorSquare()
    for m, co in x.terms.items():
        piece = _coproduct_mono(m)
        for mm, c in piece.terms.items():
            v = out.terms.get(mm, ZERO) + co * c
            if v:
                out.terms[mm] = v
            elif mm in out.terms:
                del out.terms[mm]
    return out


def counit(x: AlgebraElement) -> Scalar:
    """The counit: a, d -> 1 and b, c -> 0."""
    out = ZERO
    for m, co in x.terms.items():
        if m.j == 0 and m.k == 0:
            out = out + co
    return out


def antipode(x: AlgebraElement) -> AlgebraElement:
    """The antipode: a <-> d, b -> -q b, c -> -q^-1 c, antimultiplicative."""
    out = AlgebraElement()
    for (i, j, k, l), co in x.terms.items():
        sign = ONE if (j + k) % 2 == 0 else -ONE
        factor = co * sign * _q(j - k)
        for m, c in _straighten(l, j, k, i):
            v = out.terms.get(m, ZERO) + factor * c
            if v:
                out.terms[m] = v
            elif m in out.terms:
                del out.terms[m]
    return out


def verify_hopf_axioms(sample_size=100, seed=42):
    """Check the Hopf axioms on the generators plus random words.

    Coassociativity and the counit/antipode axioms are exact identities
    here, so any failure raises immediately.
    """
    rng = random.Random(seed)
    words = [("a",), ("b",), ("c",), ("d",)]
    for _ in range(sample_size):
        n = rng.randint(1, 6)
        words.append(tuple(rng.choice("abcd") for _ in range(n)))

    for w in words:
        x = normalize(w)
        dx = coproduct(x)

        # coassociativity via a flat triple-tensor dict
        left, right = {}, {}
        for (m1, m2), co in dx.items():
            for (n1, n2), c2 in _coproduct_mono(m1).terms.items():
                key = (n1, n2, m2)
                left[key] = left.get(key, ZERO) + co * c2
            for (n1, n2), c2 in _coproduct_mono(m2).terms.items():
                key = (m1, n1, n2)
                right[key] = right.get(key, ZERO) + co * c2
        diff = {k: v for k in set(left) | set(right)
                if (v := left.get(k, ZERO) - right.get(k, ZERO))}
        assert not diff, f"coassociativity fails on {w}"

        # counit axiom
        lhs = dx.map_legs(lambda u: counit(u) * one, lambda u: u)
        rhs = dx.map_legs(lambda u: u, lambda u: counit(u) * one)
        assert lhs == x and rhs == x, f"counit axiom fails on {w}"

        # antipode axiom: m(S (x) id) Delta = unit . counit = m(id (x) S) Delta
        target = one.scale(counit(x))
        s_left = dx.map_legs(antipode, lambda u: u)
        s_right = dx.map_legs(lambda u: u, antipode)
        assert s_left == target and s_right == target, f"antipode axiom fails on {w}"

        # gradation behaves: S carries row degree to minus column degree
        # (it transposes the defining corepresentation) and vice versa
        by_row = {}
        for m, co in x.terms.items():
            by_row.setdefault(m.left_degree(), AlgebraElement()).terms[m] = co
        for g, piece in by_row.items():
            sp = antipode(piece)
            if sp:
                assert {m.degree() for m in sp.terms} == {-g}
        for g, piece in degree_split(x).items():
            sp = antipode(piece)
            if sp:
                assert {m.left_degree() for m in sp.terms} == {-g}
    return True


# ---------------------------------------------------------------------------
# rendering (grammar-compatible with the cli parser)


def _needs_parens(text):
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and pos > 0 and ch in "+-" and text[pos - 1] != "^":
            return True
    return False


def _mono_str(m: Monomial):
    return repr(m)


def render_element(x: AlgebraElement) -> str:
    from .scalars import render_scalar

    if not x.terms:
        return "0"
    pieces = []
    for m in sorted(x.terms):
        co = render_scalar(x.terms[m])
        neg = co.startswith("-") and not _needs_parens(co)
        if neg:
            co = co[1:]
        if _needs_parens(co):
            co = "(" + co + ")"
        ms = _mono_str(m)
        if ms == "1":
            body = co
        elif co == "1":
            body = ms
        else:
            body = co + "*" + ms
        pieces.append(("-" if neg else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += ("-" if sign == "-" else "+") + body
    return out
