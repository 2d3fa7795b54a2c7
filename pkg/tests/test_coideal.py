import pytest

from qonsager.coeff import ONE, ZERO, qpow, rat, var
from qonsager.errors import NoSuchDescendant, NotDivisible
from qonsager.qalgebra import FreeElement, gen, qcomm
from qonsager.repmat import SparseMatrix, chain_operator
from qonsager import coideal as co


def chain(elem, n):
    return chain_operator(elem, n).matrix


def abstract_chain(algebra, elem, n, subs=None, e_order=co.DEFAULT_E_ORDER):
    out = SparseMatrix.zero(2**n)
    cache = {}
    for word, coeff in elem.terms.items():
        m = SparseMatrix.identity(2**n)
        for letter in word:
            if letter not in cache:
                img = co.psi_image(algebra, letter, e_order)
                if subs:
                    img = img.substitute(subs)
                mm = chain_operator(img, n).matrix
                if subs:
                    mm = mm.substitute(subs)
                cache[letter] = mm
            m = m * cache[letter]
        if subs:
            coeff = coeff.substitute(subs)
        out = out + m.scale(coeff)
    return out


def test_presentation_qonsager():
    p = co.presentation("qOnsager")
    assert len(p.relations) == 4
    labels = [r[0] for r in p.relations]
    assert "dolan-grady.0" in labels and "central.W1" in labels
    assert p.params["rho"] == co.QPLUS * co.QPLUS * var("kp") * var("km")


def test_presentation_augmented():
    p = co.presentation("augmented")
    by_label = {r[0]: r for r in p.relations}
    assert len(p.relations) == 12
    _, lhs, rhs = by_label["weight.K0Z1"]
    assert lhs == gen("K0", "augmented") * gen("Z1", "augmented")
    assert rhs == (gen("Z1", "augmented") * gen("K0", "augmented")).scale(qpow(-2))


def test_presentation_gl2inv_ef_relation():
    p = co.presentation("gl2inv")
    by_label = {r[0]: r for r in p.relations}
    _, lhs, rhs = by_label["ef"]
    qh, qhi = gen("qh", "gl2inv"), gen("qhinv", "gl2inv")
    assert rhs == (qh - qhi).scale((qpow(1) - qpow(-1)).inverse())


@pytest.mark.parametrize("algebra", co.ALGEBRAS)
def test_relations_hold_in_representation(algebra):
    for label, lhs, rhs in co.presentation(algebra).relations:
        residual = abstract_chain(algebra, lhs - rhs, 2)
        assert residual.is_zero, f"{algebra}.{label}"


def test_swapped_e_order_fails_relations():
    bad = []
    for label, lhs, rhs in co.presentation("triangular").relations:
        if not abstract_chain("triangular", lhs - rhs, 2, e_order="e0e1").is_zero:
            bad.append(label)
    assert bad == ["mixed.0", "mixed.1"]


def test_counit_is_character_on_relations():
    for algebra in co.ALGEBRAS:
        for label, lhs, rhs in co.presentation(algebra).relations:
            diff = co.counit_apply(algebra, lhs) - co.counit_apply(algebra, rhs)
            assert diff.is_zero, f"{algebra}.{label}"


def test_coaction_gamma():
    for algebra in co.ALGEBRAS:
        img = co.coaction_image(algebra, "Gamma")
        assert img == co.MixedTensor(algebra, {(("t0", "t1"), ("Gamma",)): ONE})


def test_coaction_z1_table():
    img = co.coaction_image("augmented", "Z1")
    q2m = qpow(2) - qpow(-2)
    expect = co.MixedTensor("augmented", {
        (("t0", "t1"), ("Z1",)): ONE,
        (("e0", "t1"), ("K0",)): q2m * qpow(-1),
        (("f1", "t0", "t1"), ("K1",)): q2m,
    })
    assert img == expect


def test_coaction_qh():
    img = co.coaction_image("gl2inv", "qh")
    assert img == co.MixedTensor("gl2inv", {(("t0",), ("qh",)): ONE})


def test_psi_examples():
    assert co.psi_image("augmented", "K0") == gen("t1").scale(var("ep"))
    x = co.psi_image("gl2inv", "X")
    assert x == qcomm(gen("e1"), gen("e0"), 1) \
        - qcomm(gen("f1"), gen("f0"), -1) * (gen("t0") * gen("t1"))
    p = co.psi_image("triangular", "Pt1")
    q2m = qpow(2) - qpow(-2)
    expect = ((gen("e1") * gen("t0")).scale(var("em") * qpow(-1))
              + (gen("f0") * gen("t0") * gen("t1")).scale(var("ep"))).scale(q2m) \
        + (qcomm(gen("e1"), gen("e0"), 1)
           + (gen("t0") * gen("t1")) * qcomm(gen("f1"), gen("f0"), 1)).scale(var("km")) \
        + (gen("t0") * gen("t1")).scale(var("pt"))
    assert p == expect


def test_psi_equals_counit_contract_of_coaction():
    for algebra in co.ALGEBRAS:
        for g in co.GENERATORS[algebra]:
            for e_order in co.E_ORDERS:
                assert co.psi_from_coaction(algebra, g, e_order) == \
                    co.psi_image(algebra, g, e_order), (algebra, g, e_order)


def test_descendant_polynomial_g1():
    a = co.psi_image("qOnsager", "W0")
    b = co.psi_image("qOnsager", "W1")
    d = co.descendant("G1", "polynomial")
    gamma = gen("t0") * gen("t1")
    assert d.element == qcomm(b, a, 1) \
        - gamma.scale((qpow(1) - qpow(-1)) * var("ep") * var("em"))
    assert d.clearing == ONE and d.exact


def test_descendant_chevalley_g1_has_km_prefactor():
    d = co.descendant("G1", "chevalley")
    assert all(c.extract_order("km", 0).is_zero for c in d.element.terms.values())


def test_descendant_unknown():
    with pytest.raises(NoSuchDescendant):
        co.descendant("G3", "polynomial")
    with pytest.raises(ValueError):
        co.descendant("G1", "other")


@pytest.mark.parametrize("name", ("G1", "Gt1", "Wm1", "W2"))
def test_descendant_two_forms_agree(name):
    p = co.descendant(name, "polynomial")
    c = co.descendant(name, "chevalley")
    n = 2
    lhs = chain(p.element, n).scale(c.clearing)
    rhs = chain(c.element, n).scale(p.clearing)
    assert (lhs - rhs).is_zero


@pytest.mark.parametrize("name,v1,v2", (("G2", "kp", "km"), ("Gt2", "km", "kp")))
def test_descendant_g2_leading_order(name, v1, v2):
    p = co.descendant(name, "polynomial")
    c = co.descendant(name, "chevalley")
    assert not c.exact
    fac = co.QPLUS * co.QPLUS * (qpow(2) + qpow(-2))
    for n in (2,):
        lim = chain(p.element, n).extract_order(v1, 1).extract_order(v2, 2)
        assert (lim.scale(fac.inverse()) - chain(c.element, n)).is_zero


def test_swap_map_involution():
    for name in co.DESCENDANTS:
        el = co.descendant(name, "chevalley").element
        assert co.swap_map(co.swap_map(el)) == el


def test_specialize_idempotent():
    x = co.psi_image("qOnsager", "W0")
    once = co.specialize(x, "triangular")
    assert co.specialize(once, "triangular") == once
    assert co.specialize(co.specialize(x, "special"), "special") == \
        co.specialize(x, "special")


def test_specialize_triangular_w0_free_level():
    # W0 at kp -> 0 equals psi_t(T0) even before representing
    lhs = co.specialize(co.psi_image("qOnsager", "W0"), "triangular")
    assert lhs == co.psi_image("triangular", "T0")


def test_specialize_special_w1_vanishes():
    lhs = co.specialize(co.psi_image("qOnsager", "W1"), "special")
    assert lhs.is_zero


def test_limit_divide_not_divisible():
    with pytest.raises(NotDivisible):
        co.psi_image("qOnsager", "W0").limit_divide("kp", 1)


@pytest.mark.parametrize("case", ("triangular", "diagonal", "special"))
def test_specialization_identities(case):
    for si in co.specialization_identities(case):
        n = 2
        lhs = chain(si.lhs, n)
        rhs = abstract_chain(si.algebra, si.target, n, subs=si.target_subs)
        assert (lhs - rhs).is_zero, f"{case}.{si.label}"


def test_specialization_counts():
    assert len(co.specialization_identities("triangular")) == 3
    assert len(co.specialization_identities("diagonal")) == 4
    assert len(co.specialization_identities("special")) == 8


def test_triangular_pt_residual_is_minus_pt():
    si = [s for s in co.specialization_identities("triangular", pt_symbolic=True)
          if s.label == "Gt1/kp"][0]
    n = 2
    r = chain(si.lhs, n) - abstract_chain(si.algebra, si.target, n)
    assert r == SparseMatrix.identity(2**n).scale(-var("pt"))


def test_classical_automorphism_tables():
    assert co.classical_automorphism("theta", "e1c") == \
        FreeElement.word("classical", ("f1c",))
    assert co.classical_automorphism("theta_d", "h0c") == \
        FreeElement.word("classical", ("h1c",), rat(-1))
    img = co.classical_automorphism("theta_i", "f1c")
    expect = qcomm(qcomm(co.E1C, co.E0C, 0), co.E0C, 0).scale(rat(1, 2))
    assert img == expect


def test_classical_automorphism_rejects_quantum():
    from qonsager.errors import AlphabetMismatch
    with pytest.raises(AlphabetMismatch):
        co.classical_automorphism("theta", "e1")


@pytest.mark.parametrize("name", ("theta", "theta_d", "theta_i"))
def test_classical_relation_images_vanish(name):
    for label, rel in co.classical_relations():
        img = co.automorphism_apply(name, rel)
        for n in (1, 2):
            m = chain_operator(img, n).matrix.substitute({"q": 1})
            assert m.is_zero, f"{name}.{label} at N={n}"


@pytest.mark.parametrize("name", ("theta", "theta_d"))
def test_classical_involutions(name):
    for letter in ("e0c", "e1c", "f0c", "f1c", "h0c", "h1c"):
        twice = co.automorphism_apply(name, co.classical_automorphism(name, letter))
        assert twice == FreeElement.word("classical", (letter,))
