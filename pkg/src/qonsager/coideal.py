"""The four boundary symmetry algebras.

For each algebra this module hard-codes, as data:

* the defining relations (q-deformed Dolan-Grady type presentations),
* the coaction into (quantum algebra) x (abstract algebra),
* the counit, and the induced homomorphism psi = (id x counit) o coaction
  into the quantum affine algebra,
* the six descendant generators in both the Chevalley expansion and the
  polynomial-in-fundamental-generators form, and
* the boundary-specialization identity tables and the classical (q -> 1)
  automorphisms.

Two printed-source ambiguities are *not* resolved editorially: the value of
the pt parameter and the ordering of the k- e-bracket inside the triangular
generator.  Both are exposed as options (``pt_symbolic``, ``e_order``) so the
verification harness can probe them and record which choice holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import ONE, Scalar, ZERO, qpow, rat, var
from .errors import NoSuchDescendant
from .qalgebra import (
    FreeElement,
    cartan,
    gen,
    qc,
    qcomm,
    register_alphabet,
    unit,
)

ALGEBRAS = ("qOnsager", "triangular", "augmented", "gl2inv")

GENERATORS = {
    "qOnsager": ("W0", "W1", "Gamma"),
    "triangular": ("T0", "T1", "Pt1", "Gamma"),
    "augmented": ("K0", "K1", "Z1", "Zt1", "Gamma"),
    "gl2inv": ("e", "f", "qh", "qhinv", "X", "Y", "Yt", "Gamma"),
}

for _name, _gens in GENERATORS.items():
    register_alphabet(_name, _gens)

# short-hands over the quantum alphabet
_Q = qpow
E0, E1, F0, F1 = gen("e0"), gen("e1"), gen("f0"), gen("f1")
T0, T1, T0I, T1I = gen("t0"), gen("t1"), gen("t0'"), gen("t1'")
QC = qc()

KP, KM, EP, EM, PT = var("kp"), var("km"), var("ep"), var("em"), var("pt")
QPLUS = _Q(1) + _Q(-1)
QMINUS = _Q(1) - _Q(-1)
Q2MINUS = _Q(2) - _Q(-2)

#: rho = (q + q^-1)^2 kp km
RHO = QPLUS * QPLUS * KP * KM
#: rho_t = km (q + q^-1)^2 and the twisted one -ep em (q - q^-1)
RHO_T = KM * QPLUS * QPLUS
RHO_T_TILDE = -(EP * EM * QMINUS)
#: rho_d = (q^3 - q^-3)(q^2 - q^-2)^3 / (q - q^-1), an exact division
RHO_D = ((_Q(3) - _Q(-3)) * Q2MINUS * Q2MINUS * Q2MINUS) / QMINUS


def _ag(algebra: str, name: str) -> FreeElement:
    return gen(name, algebra)


@dataclass(frozen=True)
class Presentation:
    algebra: str
    generators: tuple
    relations: tuple  # of (label, lhs, rhs) FreeElement pairs
    params: dict = field(default_factory=dict)


def _central_relations(algebra: str, names) -> list:
    g = _ag(algebra, "Gamma")
    return [(f"central.{n}", qcomm(_ag(algebra, n), g, 0), FreeElement.zero(algebra))
            for n in names]


def _presentation_qonsager() -> Presentation:
    a = "qOnsager"
    w0, w1 = _ag(a, "W0"), _ag(a, "W1")
    zero = FreeElement.zero(a)
    rels = [
        ("dolan-grady.0",
         qcomm(w0, qcomm(w0, qcomm(w0, w1, 1), -1), 0),
         qcomm(w0, w1, 0).scale(RHO)),
        ("dolan-grady.1",
         qcomm(w1, qcomm(w1, qcomm(w1, w0, 1), -1), 0),
         qcomm(w1, w0, 0).scale(RHO)),
    ]
    rels += _central_relations(a, ("W0", "W1"))
    return Presentation(a, GENERATORS[a], tuple(rels), {"rho": RHO})


def _presentation_triangular() -> Presentation:
    a = "triangular"
    t0, t1, p = _ag(a, "T0"), _ag(a, "T1"), _ag(a, "Pt1")
    g = _ag(a, "Gamma")
    rels = [
        ("mixed.0", qcomm(t0, qcomm(t0, p, -1), 0), qcomm(t0, t1, 0).scale(RHO_T)),
        ("mixed.1", qcomm(t1, qcomm(t1, p, 1), 0), qcomm(t0, t1, 0).scale(RHO_T)),
        ("twisted", qcomm(t1, t0, -1), g.scale(RHO_T_TILDE)),
    ]
    rels += _central_relations(a, ("T0", "T1", "Pt1"))
    return Presentation(a, GENERATORS[a], tuple(rels),
                        {"rho_t": RHO_T, "rho_t_tilde": RHO_T_TILDE})


def _presentation_augmented() -> Presentation:
    a = "augmented"
    k0, k1 = _ag(a, "K0"), _ag(a, "K1")
    z, zt = _ag(a, "Z1"), _ag(a, "Zt1")
    g = _ag(a, "Gamma")
    # The product relations are stored with Gamma itself on the right-hand
    # side: with the counit value E(Gamma) = em*ep this is the only reading
    # under which the counit is a character and the psi images satisfy the
    # relation (an ep*em prefactor would square the counit value).
    rels = [
        ("product.01", k0 * k1, g),
        ("product.10", k1 * k0, g),
        ("weight.K0Z1", k0 * z, (z * k0).scale(_Q(-2))),
        ("weight.K0Zt1", k0 * zt, (zt * k0).scale(_Q(2))),
        ("weight.K1Z1", k1 * z, (z * k1).scale(_Q(2))),
        ("weight.K1Zt1", k1 * zt, (zt * k1).scale(_Q(-2))),
        ("dolan-grady.Z",
         qcomm(z, qcomm(z, qcomm(z, zt, 1), -1), 0),
         (z * (k1 * k1 - k0 * k0) * z).scale(RHO_D)),
        ("dolan-grady.Zt",
         qcomm(zt, qcomm(zt, qcomm(zt, z, 1), -1), 0),
         (zt * (k0 * k0 - k1 * k1) * zt).scale(RHO_D)),
    ]
    rels += _central_relations(a, ("Z1", "Zt1", "K0", "K1"))
    return Presentation(a, GENERATORS[a], tuple(rels), {"rho_d": RHO_D})


def _presentation_gl2inv() -> Presentation:
    a = "gl2inv"
    e, f = _ag(a, "e"), _ag(a, "f")
    qh, qhi = _ag(a, "qh"), _ag(a, "qhinv")
    x, y, yt = _ag(a, "X"), _ag(a, "Y"), _ag(a, "Yt")
    one = unit(a)
    zero = FreeElement.zero(a)
    # The Y f coefficient in the middle line carries the extra q^-4 factor;
    # with the coefficient as printed in the source presentation the
    # right-hand side fails to vanish where the left-hand side does.  The
    # corrected coefficient is pinned uniquely by exact linear solving in
    # faithful-enough representations (all eight other coefficients solve
    # to exactly their printed values).
    cubic_rhs = (
        ((yt * f * e * e).scale(_Q(1)) - (y * e * f * f).scale(_Q(-1))
         + (x * e * f * qh).scale(QPLUS * QPLUS)) * qh
    ).scale(Q2MINUS * Q2MINUS * Q2MINUS) + (
        ((yt * e).scale(Q2MINUS - ONE)
         + (y * f).scale((Q2MINUS + ONE) * _Q(-4))
         - (x * qh).scale(QPLUS)) * qh * qh
    ).scale(_Q(2) * Q2MINUS * QPLUS * QPLUS) + (
        (yt * e).scale(_Q(-2)) - (y * f).scale(_Q(2)) + (x * qh).scale(_Q(2) * QPLUS)
    ).scale(Q2MINUS * QPLUS * QPLUS)
    rels = [
        ("ef", qcomm(e, f, 0), (qh - qhi).scale(QMINUS.inverse())),
        ("e-qh", qcomm(e, qh, 1), zero),
        ("qh-f", qcomm(qh, f, 1), zero),
        ("qh-X", qcomm(qh, x, 0), zero),
        ("X-e", qcomm(x, e, 0), y),
        ("f-X", qcomm(f, x, 0), yt),
        ("qh-Yt", qcomm(qh, yt, 1), zero),
        ("e-Y", qcomm(e, y, 1), zero),
        ("qh-Y", qcomm(qh, y, -1), zero),
        ("f-Yt", qcomm(f, yt, -1), zero),
        ("e-Yt", qcomm(e, yt, 0), (x * qh).scale(QPLUS)),
        ("Y-f", qcomm(y, f, 0), (x * qh).scale(QPLUS)),
        ("cubic", qcomm(x, qcomm(y, yt, 0), 0), cubic_rhs),
        ("qh-unit.01", qh * qhi, one),
        ("qh-unit.10", qhi * qh, one),
    ]
    rels += _central_relations(a, ("Y", "Yt", "X", "e", "f", "qh"))
    return Presentation(a, GENERATORS[a], tuple(rels), {})


_PRESENTATIONS = {
    "qOnsager": _presentation_qonsager,
    "triangular": _presentation_triangular,
    "augmented": _presentation_augmented,
    "gl2inv": _presentation_gl2inv,
}
_presentation_cache: dict = {}


def presentation(algebra: str) -> Presentation:
    if algebra not in _presentation_cache:
        _presentation_cache[algebra] = _PRESENTATIONS[algebra]()
    return _presentation_cache[algebra]


# -- mixed tensors (quantum slot x abstract slot) ------------------------


class MixedTensor:
    """Scalar-weighted sum of (quantum word, abstract word) pairs."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: str, terms=None):
        self.algebra = algebra
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero:
                    clean[(tuple(key[0]), tuple(key[1]))] = coeff
        self.terms = clean

    @staticmethod
    def unit(algebra: str) -> "MixedTensor":
        return MixedTensor(algebra, {((), ()): ONE})

    def __add__(self, other: "MixedTensor") -> "MixedTensor":
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key, ZERO) + coeff
            if acc.is_zero:
                out.pop(key, None)
            else:
                out[key] = acc
        return MixedTensor(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(rat(-1))

    def __mul__(self, other: "MixedTensor") -> "MixedTensor":
        out: dict = {}
        for (u1, a1), c1 in self.terms.items():
            for (u2, a2), c2 in other.terms.items():
                key = (u1 + u2, a1 + a2)
                acc = out.get(key, ZERO) + c1 * c2
                if acc.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return MixedTensor(self.algebra, out)

    def scale(self, coeff: Scalar) -> "MixedTensor":
        if coeff.is_zero:
            return MixedTensor(self.algebra)
        return MixedTensor(self.algebra, {k: c * coeff for k, c in self.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MixedTensor):
            return NotImplemented
        return self.algebra == other.algebra and (self - other).is_zero


def _mt(algebra: str, u_elem: FreeElement, aword) -> MixedTensor:
    """Lift (quantum element) x (abstract word) to a MixedTensor."""
    aword = tuple(aword)
    return MixedTensor(algebra, {(w, aword): c for w, c in u_elem.terms.items()})


# -- table construction ---------------------------------------------------

E_ORDERS = ("e1e0", "e0e1")
#: Resolved empirically by the harness: the [e1, e0]_q ordering satisfies
#: the defining relations and the specialization identities (the swapped
#: variant fails the relations); see the variant-probe checks.
DEFAULT_E_ORDER = "e1e0"


def _triangular_ebracket(e_order: str) -> FreeElement:
    if e_order == "e1e0":
        return qcomm(E1, E0, 1)
    if e_order == "e0e1":
        return qcomm(E0, E1, 1)
    raise ValueError(f"unknown e_order {e_order!r}")


def _coaction_tables(e_order: str) -> dict:
    t = {}
    # generic boundary: q-Onsager
    a = "qOnsager"
    t[(a, "W0")] = _mt(a, E1.scale(KP) + (F1 * T1).scale(KM * _Q(-1)), ()) \
        + _mt(a, T1, ("W0",))
    t[(a, "W1")] = _mt(a, E0.scale(KM) + (F0 * T0).scale(KP * _Q(-1)), ()) \
        + _mt(a, T0, ("W1",))
    t[(a, "Gamma")] = _mt(a, QC, ("Gamma",))
    # triangular boundary
    a = "triangular"
    t[(a, "T0")] = _mt(a, (F1 * T1).scale(KM * _Q(-1)), ()) + _mt(a, T1, ("T0",))
    t[(a, "T1")] = _mt(a, E0.scale(KM), ()) + _mt(a, T0, ("T1",))
    ebr = _triangular_ebracket(e_order)
    t[(a, "Pt1")] = (
        _mt(a, (ebr + QC * qcomm(F1, F0, 1)).scale(KM), ())
        + _mt(a, QC, ("Pt1",))
        + _mt(a, (E1 * T0).scale(_Q(-1)), ("T1",)).scale(Q2MINUS)
        + _mt(a, F0 * QC, ("T0",)).scale(Q2MINUS)
    )
    t[(a, "Gamma")] = _mt(a, QC, ("Gamma",))
    # diagonal boundary
    a = "augmented"
    t[(a, "K0")] = _mt(a, T1, ("K0",))
    t[(a, "K1")] = _mt(a, T0, ("K1",))
    t[(a, "Z1")] = (
        _mt(a, QC, ("Z1",))
        + _mt(a, (E0 * T1).scale(_Q(-1)), ("K0",)).scale(Q2MINUS)
        + _mt(a, F1 * QC, ("K1",)).scale(Q2MINUS)
    )
    t[(a, "Zt1")] = (
        _mt(a, QC, ("Zt1",))
        + _mt(a, F0 * QC, ("K0",)).scale(Q2MINUS)
        + _mt(a, (E1 * T0).scale(_Q(-1)), ("K1",)).scale(Q2MINUS)
    )
    t[(a, "Gamma")] = _mt(a, QC, ("Gamma",))
    # special boundary
    a = "gl2inv"
    t[(a, "e")] = _mt(a, E0, ()) + _mt(a, T0, ("e",))
    t[(a, "f")] = _mt(a, F0, ("qhinv",)) + _mt(a, unit(), ("f",))
    t[(a, "qh")] = _mt(a, T0, ("qh",))
    t[(a, "qhinv")] = _mt(a, T0I, ("qhinv",))
    # The dressed coefficients below are pinned uniquely by the
    # intertwining identity Delta o psi = (id x psi) o delta (full-rank
    # exact solve in representations); relative to the printed source
    # tables the f1 (x) f qh term of X and the last two Y terms and the
    # f-terms of Yt carry corrected signs/powers.
    t[(a, "X")] = (
        _mt(a, qcomm(E1, E0, 1) - qcomm(F1, F0, -1) * QC, ())
        + _mt(a, QC, ("X",))
        + _mt(a, (T0 * E1).scale(_Q(1)), ("e",)).scale(Q2MINUS)
        + _mt(a, (QC * F1).scale(_Q(-1)), ("f", "qh")).scale(Q2MINUS)
    )
    q2m1 = _Q(2) - ONE  # q^2 - 1
    t[(a, "Y")] = (
        _mt(a, qcomm(qcomm(E1, E0, 0), E0, 1)
            - (QC * F1 * T0).scale(_Q(1) * QPLUS), ())
        + _mt(a, T0 * QC, ("Y",))
        + _mt(a, T0 * qcomm(E1, E0, 1), ("e",)).scale(Q2MINUS)
        + _mt(a, (T0 * T0 * E1).scale(_Q(1) * q2m1), ("e", "e")).scale(Q2MINUS)
        - _mt(a, QC * T0 * F1, ("qh", "qh")).scale(Q2MINUS / q2m1)
        + _mt(a, QC * T0 * F1, ()).scale(Q2MINUS / q2m1)
    )
    # The printed row for the partner cubic generator does not admit any
    # exact decomposition sum(u x generator word) compatible with its psi
    # image; since that generator equals the bracket of f with X in the
    # presentation, its coaction row is defined as the bracket of the two
    # rows above.  The contraction of the bracket row agrees with the psi
    # table only up to relations of the quantum algebra, so the free-level
    # difference (zero in every representation) is re-added on the unit
    # slot to keep psi = (id x counit) o coaction exact term by term.
    bracket_row = t[(a, "f")] * t[(a, "X")] - t[(a, "X")] * t[(a, "f")]
    counit_a = {"e": ZERO, "f": ZERO, "qh": ONE, "qhinv": ONE,
                "X": ZERO, "Y": ZERO, "Yt": ZERO, "Gamma": ONE}
    contraction = FreeElement.zero("quantum")
    for (uword, aword), c in bracket_row.terms.items():
        val = c
        for letter in aword:
            val = val * counit_a[letter]
            if val.is_zero:
                break
        if not val.is_zero:
            contraction = contraction + FreeElement.word("quantum", uword, val)
    psi_yt = QC * (qcomm(qcomm(F1, F0, 0), F0, -1)
                   - (E1 * T0).scale(_Q(-1) * QPLUS))
    t[(a, "Yt")] = bracket_row + _mt(a, psi_yt - contraction, ())
    t[(a, "Gamma")] = _mt(a, QC, ("Gamma",))
    return t


_coaction_cache: dict = {}


def coaction_image(algebra: str, name: str,
                   e_order: str = DEFAULT_E_ORDER) -> MixedTensor:
    if e_order not in _coaction_cache:
        _coaction_cache[e_order] = _coaction_tables(e_order)
    return _coaction_cache[e_order][(algebra, name)]


def coaction_apply(algebra: str, x: FreeElement,
                   e_order: str = DEFAULT_E_ORDER) -> MixedTensor:
    """Multiplicative extension of the coaction to abstract elements."""
    out = MixedTensor(algebra)
    for word, coeff in x.terms.items():
        m = MixedTensor.unit(algebra)
        for letter in word:
            m = m * coaction_image(algebra, letter, e_order)
        out = out + m.scale(coeff)
    return out


_COUNITS = {
    ("qOnsager", "W0"): EP, ("qOnsager", "W1"): EM, ("qOnsager", "Gamma"): ONE,
    ("triangular", "T0"): EP, ("triangular", "T1"): EM,
    ("triangular", "Pt1"): PT, ("triangular", "Gamma"): ONE,
    ("augmented", "K0"): EP, ("augmented", "K1"): EM,
    ("augmented", "Z1"): ZERO, ("augmented", "Zt1"): ZERO,
    ("augmented", "Gamma"): EM * EP,
    ("gl2inv", "e"): ZERO, ("gl2inv", "f"): ZERO,
    ("gl2inv", "qh"): ONE, ("gl2inv", "qhinv"): ONE,
    ("gl2inv", "X"): ZERO, ("gl2inv", "Y"): ZERO, ("gl2inv", "Yt"): ZERO,
    ("gl2inv", "Gamma"): ONE,
}


def counit_value(algebra: str, name: str) -> Scalar:
    return _COUNITS[(algebra, name)]


def counit_apply(algebra: str, x: FreeElement) -> Scalar:
    """Character extension of the coideal counit."""
    total = ZERO
    for word, coeff in x.terms.items():
        val = coeff
        for letter in word:
            val = val * _COUNITS[(algebra, letter)]
            if val.is_zero:
                break
        total = total + val
    return total


def psi_from_coaction(algebra: str, name: str,
                      e_order: str = DEFAULT_E_ORDER) -> FreeElement:
    """(id x counit) applied to the coaction image."""
    out = FreeElement.zero("quantum")
    for (uword, aword), coeff in coaction_image(algebra, name, e_order).terms.items():
        val = coeff
        for letter in aword:
            val = val * _COUNITS[(algebra, letter)]
            if val.is_zero:
                break
        if not val.is_zero:
            out = out + FreeElement.word("quantum", uword, val)
    return out


def _psi_tables(e_order: str) -> dict:
    t = {}
    t[("qOnsager", "W0")] = E1.scale(KP) + (F1 * T1).scale(KM * _Q(-1)) + T1.scale(EP)
    t[("qOnsager", "W1")] = E0.scale(KM) + (F0 * T0).scale(KP * _Q(-1)) + T0.scale(EM)
    t[("qOnsager", "Gamma")] = QC
    t[("triangular", "T0")] = (F1 * T1).scale(KM * _Q(-1)) + T1.scale(EP)
    t[("triangular", "T1")] = E0.scale(KM) + T0.scale(EM)
    t[("triangular", "Pt1")] = (
        ((E1 * T0).scale(EM * _Q(-1)) + (F0 * T0 * T1).scale(EP)).scale(Q2MINUS)
        + (_triangular_ebracket(e_order) + QC * qcomm(F1, F0, 1)).scale(KM)
        + QC.scale(PT)
    )
    t[("triangular", "Gamma")] = QC
    t[("augmented", "K0")] = T1.scale(EP)
    t[("augmented", "K1")] = T0.scale(EM)
    t[("augmented", "Z1")] = (
        (E0 * T1).scale(EP * _Q(-1)) + (F1 * T0 * T1).scale(EM)
    ).scale(Q2MINUS)
    t[("augmented", "Zt1")] = (
        (E1 * T0).scale(EM * _Q(-1)) + (F0 * T0 * T1).scale(EP)
    ).scale(Q2MINUS)
    t[("augmented", "Gamma")] = QC.scale(EM * EP)
    t[("gl2inv", "e")] = E0
    t[("gl2inv", "f")] = F0
    t[("gl2inv", "qh")] = T0
    t[("gl2inv", "qhinv")] = T0I
    t[("gl2inv", "X")] = qcomm(E1, E0, 1) - qcomm(F1, F0, -1) * QC
    t[("gl2inv", "Y")] = qcomm(qcomm(E1, E0, 0), E0, 1) \
        - (QC * F1 * T0).scale(_Q(1) * QPLUS)
    t[("gl2inv", "Yt")] = QC * (qcomm(qcomm(F1, F0, 0), F0, -1)
                                - (E1 * T0).scale(_Q(-1) * QPLUS))
    t[("gl2inv", "Gamma")] = QC
    return t


_psi_cache: dict = {}


def psi_image(algebra: str, name: str,
              e_order: str = DEFAULT_E_ORDER) -> FreeElement:
    if e_order not in _psi_cache:
        _psi_cache[e_order] = _psi_tables(e_order)
    return _psi_cache[e_order][(algebra, name)]


def psi_apply(algebra: str, x: FreeElement,
              e_order: str = DEFAULT_E_ORDER) -> FreeElement:
    """Homomorphic extension of psi to abstract elements."""
    out = FreeElement.zero("quantum")
    for word, coeff in x.terms.items():
        m = unit()
        for letter in word:
            m = m * psi_image(algebra, letter, e_order)
        out = out + m.scale(coeff)
    return out


# -- descendant generators ------------------------------------------------

DESCENDANTS = ("G1", "Wm1", "G2", "Gt1", "W2", "Gt2")
_PARTNER = {"Gt1": "G1", "W2": "Wm1", "Gt2": "G2"}


@dataclass(frozen=True)
class Descendant:
    name: str
    form: str
    element: FreeElement
    clearing: Scalar  # element = clearing * (true descendant)
    exact: bool       # False: valid only modulo O(kp) + O(km) terms


_SWAP_LETTER = {"e0": "e1", "e1": "e0", "f0": "f1", "f1": "f0",
                "t0": "t1", "t1": "t0", "t0'": "t1'", "t1'": "t0'"}


def _swap_scalar(s: Scalar) -> Scalar:
    from .coeff import LaurentPoly

    def swap_poly(p):
        return LaurentPoly({
            (m[0], m[1], m[3], m[2], m[5], m[4], m[6]): c
            for m, c in p.terms.items()
        })

    return Scalar(swap_poly(s.num), swap_poly(s.den))


def swap_map(x: FreeElement) -> FreeElement:
    """The index-swap involution: x0 <-> x1 on letters, kp <-> km and
    ep <-> em on parameters."""
    out = {}
    for word, coeff in x.terms.items():
        out[tuple(_SWAP_LETTER[l] for l in word)] = _swap_scalar(coeff)
    return FreeElement("quantum", out)


def _chev_g1_over_km() -> FreeElement:
    # The e-bracket in the kp term is [e0, e1]_q; exact agreement with the
    # polynomial form forces this ordering (the reversed one fails).
    head = (QC * F1).scale(EM) + (E0 * T1).scale(EP * _Q(-1)) \
        + (F1 * T1 * E0).scale(KM)
    tail = qcomm(E0, E1, 1) + qcomm(F0, F1, 1) * QC
    return head.scale(Q2MINUS) + tail.scale(KP)


def _chev_wm1() -> FreeElement:
    qp2 = QPLUS * QPLUS
    efbr = qcomm(E1, E0, 1) + qcomm(F0, F1, 1) * QC
    line1 = ((T1.scale(_Q(1)) + T1I.scale(_Q(-1))
              + (F1 * E1).scale(QMINUS * QMINUS)) * QC).scale(EM / QPLUS)
    line2 = (efbr * T1).scale(EP * QMINUS / qp2)
    line3 = (
        (qcomm(F0, F1, 1) * QC * E1).scale(QMINUS)
        + (F0 * T0).scale(_Q(-2) * QPLUS)
        - E1 * E1 * E0 + (E1 * E0 * E1).scale(_Q(2) + _Q(-2)) - E0 * E1 * E1
    ).scale(KP / qp2)
    # the cubic f-block carries a trailing q^{h1}; forced by exact
    # agreement with the polynomial form
    line4 = (
        E0.scale(_Q(-1) * QPLUS)
        + (F1 * T1 * qcomm(E1, E0, 1)).scale(_Q(-1) * QMINUS)
        - (QC * (F1 * F1 * F0 - (F1 * F0 * F1).scale(_Q(2) + _Q(-2))
                 + F0 * F1 * F1) * T1).scale(_Q(-1))
    ).scale(KM / qp2)
    return line1 + line2 + line3 + line4


def _chev_g2_over_km() -> FreeElement:
    f_serre = F1 * F1 * F0 - (F1 * F0 * F1).scale(_Q(2) + _Q(-2)) + F0 * F1 * F1
    e_serre = E0 * E0 * E1 - (E0 * E1 * E0).scale(_Q(2) + _Q(-2)) + E1 * E0 * E0
    em_line = (
        (QC * E0 * T1).scale(QPLUS)
        + (QC * F1 * qcomm(E0, E1, 1)).scale(Q2MINUS / QPLUS)
        - QC * QC * f_serre
    ).scale(EM * QMINUS / QPLUS)
    # the cubic e-block carries a trailing q^{h1}; forced by exact
    # agreement with the polynomial form in the k -> 0 limit
    ep_line = (
        (QC * QC * F1).scale(_Q(1) * QPLUS)
        + (QC * qcomm(F0, F1, 1) * E0 * T1).scale(_Q(-1) * Q2MINUS / QPLUS)
        - (e_serre * T1).scale(_Q(-1))
    ).scale(EP * QMINUS / QPLUS)
    return em_line + ep_line


def _poly_g1(a: FreeElement, b: FreeElement) -> FreeElement:
    return qcomm(b, a, 1) - QC.scale(QMINUS * EP * EM)


def _poly_wm1_cleared(a: FreeElement, b: FreeElement) -> FreeElement:
    """rho * W_{-1} as a polynomial in the fundamental pair."""
    return (
        (a * b * a).scale(_Q(2) + _Q(-2)) - a * a * b - b * a * a
        + b.scale(RHO)
        - (QC * a).scale(QMINUS * QMINUS * EP * EM)
    )


def _poly_g2_cleared(a: FreeElement, b: FreeElement) -> FreeElement:
    """rho (q^2 + q^-2) * G_2 as a polynomial in the fundamental pair."""
    g2 = QC * QC
    bracket = (
        (a * a * b * b).scale(_Q(-3) + _Q(-1))
        - (b * b * a * a).scale(_Q(3) + _Q(1))
        + (a * b * b * a + b * a * a * b).scale(_Q(-3) - _Q(3))
        - (a * b * a * b).scale(_Q(-5) + _Q(-3) + _Q(-1) + _Q(-1))
        + (b * a * b * a).scale(_Q(5) + _Q(3) + _Q(1) + _Q(1))
        + (a * a + b * b).scale(RHO * QMINUS)
        - (QC * ((b * a).scale(_Q(1)) - (a * b).scale(_Q(-1))))
        .scale((_Q(2) + _Q(-2)) * QMINUS * QMINUS * EP * EM)
    )
    const = (
        - g2.scale(RHO * QMINUS * (EP * EP + EM * EM))
        + g2.scale(QMINUS * QMINUS * QMINUS * EP * EP * EM * EM)
        + (g2 - unit()).scale(_Q(2) * QPLUS * KP * KP * KM * KM)
    )
    return bracket + const


def descendant(name: str, form: str) -> Descendant:
    """One of the six descendant generators.

    ``element = clearing * descendant``; Chevalley G2 forms are exact only
    modulo O(kp) + O(km) (the omitted terms die in the k -> 0 limits).
    """
    if name not in DESCENDANTS:
        raise NoSuchDescendant(name)
    if form not in ("chevalley", "polynomial"):
        raise ValueError(f"unknown form {form!r}")
    if name in _PARTNER:
        base = descendant(_PARTNER[name], form)
        if form == "chevalley":
            return Descendant(name, form, swap_map(base.element),
                              _swap_scalar(base.clearing), base.exact)
        a = psi_image("qOnsager", "W0")
        b = psi_image("qOnsager", "W1")
        builder = {"W2": _poly_wm1_cleared, "Gt2": _poly_g2_cleared,
                   "Gt1": _poly_g1}[name]
        return Descendant(name, form, builder(b, a), base.clearing, True)
    a = psi_image("qOnsager", "W0")
    b = psi_image("qOnsager", "W1")
    if form == "polynomial":
        if name == "G1":
            return Descendant(name, form, _poly_g1(a, b), ONE, True)
        if name == "Wm1":
            return Descendant(name, form, _poly_wm1_cleared(a, b), RHO, True)
        return Descendant(name, form, _poly_g2_cleared(a, b),
                          RHO * (_Q(2) + _Q(-2)), True)
    if name == "G1":
        return Descendant(name, form, _chev_g1_over_km().scale(KM), ONE, True)
    if name == "Wm1":
        return Descendant(name, form, _chev_wm1(), ONE, True)
    return Descendant(name, form, _chev_g2_over_km(), ONE / KM, False)


# -- boundary specializations --------------------------------------------

SPECIALIZE_SUBS = {
    "triangular": {"kp": 0},
    "diagonal": {"kp": 0, "km": 0},
    "special": {"kp": 0, "km": 0, "ep": 1, "em": 0},
}


def specialize(x: FreeElement, case: str) -> FreeElement:
    """Substitute the boundary-case parameter values (idempotent)."""
    return x.substitute(SPECIALIZE_SUBS[case])


@dataclass(frozen=True)
class SpecIdentity:
    label: str
    lhs: FreeElement           # quantum element, already specialized
    algebra: str               # algebra of the abstract target
    target: FreeElement        # abstract element; rhs = psi(target)
    target_subs: dict = field(default_factory=dict)


def _agw(algebra: str, word, coeff: Scalar = ONE) -> FreeElement:
    return FreeElement.word(algebra, word, coeff)


def specialization_identities(case: str, pt_symbolic: bool = False,
                              e_order: str = DEFAULT_E_ORDER) -> list:
    """The identity table for one boundary case: each specialized
    descendant paired with its claimed psi-image target."""
    w0 = psi_image("qOnsager", "W0")
    w1 = psi_image("qOnsager", "W1")
    g1 = descendant("G1", "chevalley").element
    gt1 = descendant("Gt1", "chevalley").element
    if case == "triangular":
        subs_t = {} if pt_symbolic else {"pt": 0}
        return [
            SpecIdentity("W0", specialize(w0, case), "triangular",
                         _agw("triangular", ("T0",))),
            SpecIdentity("W1", specialize(w1, case), "triangular",
                         _agw("triangular", ("T1",))),
            SpecIdentity("Gt1/kp", gt1.limit_divide("kp", 1),
                         "triangular", _agw("triangular", ("Pt1",)), subs_t),
        ]
    if case == "diagonal":
        return [
            SpecIdentity("W0", specialize(w0, case), "augmented",
                         _agw("augmented", ("K0",))),
            SpecIdentity("W1", specialize(w1, case), "augmented",
                         _agw("augmented", ("K1",))),
            SpecIdentity("G1/km",
                         g1.substitute({"kp": 0}).limit_divide("km", 1),
                         "augmented", _agw("augmented", ("Z1",))),
            SpecIdentity("Gt1/kp",
                         gt1.substitute({"km": 0}).limit_divide("kp", 1),
                         "augmented", _agw("augmented", ("Zt1",))),
        ]
    if case == "special":
        subs = {"ep": 1, "em": 0}
        a = "gl2inv"
        wm1 = descendant("Wm1", "chevalley").element
        w2 = descendant("W2", "chevalley").element
        g2 = descendant("G2", "chevalley").element
        gt2 = descendant("Gt2", "chevalley").element
        q = _Q(1)
        return [
            SpecIdentity("W1", specialize(w1, case), a, FreeElement.zero(a)),
            SpecIdentity("W0", specialize(w0, case), a,
                         _agw(a, ("Gamma", "qhinv"))),
            SpecIdentity("G1/km",
                         g1.substitute({"kp": 0, **subs}).limit_divide("km", 1),
                         a, _agw(a, ("Gamma", "e", "qhinv"),
                                 Q2MINUS * _Q(-1))),
            SpecIdentity("Gt1/kp",
                         gt1.substitute({"km": 0, **subs}).limit_divide("kp", 1),
                         a, _agw(a, ("Gamma", "f"), Q2MINUS)),
            SpecIdentity("W2", specialize(w2, case), a,
                         _agw(a, ("Gamma", "qh"), _Q(1) / QPLUS)
                         + _agw(a, ("Gamma", "qhinv"), _Q(-1) / QPLUS)
                         + _agw(a, ("Gamma", "f", "e"),
                                QMINUS * QMINUS / QPLUS)),
            SpecIdentity("Wm1", specialize(wm1, case), a,
                         _agw(a, ("X", "qhinv", "Gamma"),
                              QMINUS / (QPLUS * QPLUS))),
            # the trailing Cartan factor of the e X term is q^{-h}; with
            # q^{h} the identity fails (coefficient solve pins the tail)
            SpecIdentity("G2/km", specialize(g2, case), a,
                         _agw(a, ("Gamma", "Y", "qhinv"),
                              -(_Q(-2) * QMINUS / QPLUS))
                         + _agw(a, ("Gamma", "e", "X", "qhinv"),
                                _Q(-1) * QMINUS * QMINUS / QPLUS)),
            SpecIdentity("Gt2/kp", specialize(gt2, case), a,
                         _agw(a, ("Gamma", "Yt"), -(_Q(1) * QMINUS / QPLUS))
                         + _agw(a, ("f", "X"), QMINUS * QMINUS / QPLUS)),
        ]
    raise ValueError(f"unknown case {case!r}")


# -- classical (q -> 1) automorphisms --------------------------------------


def _cl(letters, coeff: Scalar = ONE) -> FreeElement:
    return FreeElement.word("classical", letters, coeff)


E0C, E1C = _cl(("e0c",)), _cl(("e1c",))
F0C, F1C = _cl(("f0c",)), _cl(("f1c",))
H0C, H1C = _cl(("h0c",)), _cl(("h1c",))

CLASSICAL_AUTOMORPHISMS = {
    "theta": {
        "e0c": F0C, "e1c": F1C, "f0c": E0C, "f1c": E1C,
        "h0c": -H0C, "h1c": -H1C,
    },
    # composition with the outer (index-exchanging) automorphism; the
    # h1 image is forced by the involution property
    "theta_d": {
        "e0c": F1C, "e1c": F0C, "f0c": E1C, "f1c": E0C,
        "h0c": -H1C, "h1c": -H0C,
    },
    # composition with the degree-raising automorphism: fixes the 0-node,
    # sends the 1-node into cubic expressions
    "theta_i": {
        "e0c": E0C, "f0c": F0C, "h0c": H0C,
        "f1c": qcomm(qcomm(E1C, E0C, 0), E0C, 0).scale(rat(1, 2)),
        "e1c": qcomm(qcomm(F1C, F0C, 0), F0C, 0).scale(rat(1, 2)),
        "h1c": -H1C - H0C.scale(rat(2)),
    },
}


def classical_automorphism(name: str, letter: str) -> FreeElement:
    from .errors import AlphabetMismatch

    table = CLASSICAL_AUTOMORPHISMS[name]
    if letter not in table:
        raise AlphabetMismatch(f"{letter!r} is not a classical letter")
    return table[letter]


def automorphism_apply(name: str, x: FreeElement) -> FreeElement:
    table = CLASSICAL_AUTOMORPHISMS[name]
    out = FreeElement.zero("classical")
    for word, coeff in x.terms.items():
        m = FreeElement.unit("classical")
        for letter in word:
            m = m * table[letter]
        out = out + m.scale(coeff)
    return out


def classical_relations() -> list:
    """Defining relations of the classical affine Lie algebra (labelled
    lhs - rhs elements; Cartan matrix a_ii = 2, a_ij = -2)."""
    e = {0: E0C, 1: E1C}
    f = {0: F0C, 1: F1C}
    h = {0: H0C, 1: H1C}
    rels = []
    for i in (0, 1):
        for j in (0, 1):
            aij = rat(2 if i == j else -2)
            rels.append((f"hh.{i}{j}", qcomm(h[i], h[j], 0)))
            rels.append((f"he.{i}{j}", qcomm(h[i], e[j], 0) - e[j].scale(aij)))
            rels.append((f"hf.{i}{j}", qcomm(h[i], f[j], 0) + f[j].scale(aij)))
            if i == j:
                rels.append((f"ef.{i}{j}", qcomm(e[i], f[j], 0) - h[i]))
            else:
                rels.append((f"ef.{i}{j}", qcomm(e[i], f[j], 0)))
        j = 1 - i
        rels.append((f"serre.e.{i}",
                     qcomm(e[i], qcomm(e[i], qcomm(e[i], e[j], 0), 0), 0)))
        rels.append((f"serre.f.{i}",
                     qcomm(f[i], qcomm(f[i], qcomm(f[i], f[j], 0), 0), 0)))
    return rels
