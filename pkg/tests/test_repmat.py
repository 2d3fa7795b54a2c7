from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qonsager.coeff import ONE, ZERO, qpow, rat, scalar_str, var
from qonsager.errors import (
    BoundarySingular, DimMismatch, InvalidEvaluationPoint,
)
from qonsager.qalgebra import FreeElement, coproduct, gen, qcomm, unit
from qonsager.repmat import (
    BoundaryParams, ChainOperator, ID2, Q_SIGMA3, QINV_SIGMA3, SIGMA_3,
    SIGMA_MINUS, SIGMA_PLUS, SparseMatrix, anisotropy, boundary_bracket_closed_form,
    boundary_field, bulk_density, chain_operator, commutator, embed_site,
    eval_rep, fundamental_chain, hamiltonian, local_gamma_identity,
    matrix_from_coords, matrix_to_coords, spin_reversal_conjugate, support,
    symbolic_params, total_residual_closed_form,
)

ZETA = var("zeta")


# -- independent dense oracles (no reuse of repmat assembly helpers) ------

def dense2(entries):
    """2x2 dict matrix over Scalar."""
    return {k: v for k, v in entries.items() if not v.is_zero}


def dense_mul(a, b, dim):
    out = {}
    for (r, k1), v in a.items():
        for (k2, c), w in b.items():
            if k1 == k2:
                out[(r, c)] = out.get((r, c), ZERO) + v * w
    return {k: v for k, v in out.items() if not v.is_zero}


def dense_kron(a, b, bdim):
    out = {}
    for (r1, c1), v in a.items():
        for (r2, c2), w in b.items():
            out[(r1 * bdim + r2, c1 * bdim + c2)] = v * w
    return out


SP = dense2({(0, 1): ONE})
SM = dense2({(1, 0): ONE})
S3 = dense2({(0, 0): ONE, (1, 1): rat(-1)})
I2 = dense2({(0, 0): ONE, (1, 1): ONE})
QS3 = dense2({(0, 0): qpow(1), (1, 1): qpow(-1)})


def test_eval_rep_table():
    assert eval_rep(gen("e1"), ZETA).entries == {(0, 1): ZETA}
    assert eval_rep(gen("e0"), ZETA).entries == {(1, 0): ZETA}
    m = eval_rep(gen("f1"), ZETA)
    assert m.entries == {(1, 0): ZETA.inverse()}
    assert eval_rep(gen("t1"), ZETA) == Q_SIGMA3
    assert eval_rep(gen("t0"), ZETA) == QINV_SIGMA3


def test_eval_rep_level_zero():
    assert eval_rep(gen("t0") * gen("t1"), ZETA) == SparseMatrix.identity(2)


def test_eval_rep_ef_relation():
    x = qcomm(gen("e1"), gen("f1"), 0) \
        - (gen("t1") - gen("t1'")).scale((qpow(1) - qpow(-1)).inverse())
    # oracle: direct 2x2 computation
    lhs = dense_mul(dense2({(0, 1): ZETA}), dense2({(1, 0): ZETA.inverse()}), 2)
    rhs = dense_mul(dense2({(1, 0): ZETA.inverse()}), dense2({(0, 1): ZETA}), 2)
    comm = {k: lhs.get(k, ZERO) - rhs.get(k, ZERO) for k in set(lhs) | set(rhs)}
    assert comm == {(0, 0): ONE, (1, 1): -ONE}
    assert eval_rep(x, ZETA).is_zero


def test_eval_rep_zeta_zero():
    with pytest.raises(InvalidEvaluationPoint):
        eval_rep(gen("e1"), ZERO)


def test_chain_grouplike():
    m = chain_operator(gen("t1"), 3).matrix
    expect = dense_kron(dense_kron(QS3, QS3, 2), QS3, 2)
    assert m.entries == expect


def test_chain_w0_matches_direct_construction():
    # oracle: N=2 truncation assembled by hand from the string form
    kp, km, ep = var("kp"), var("km"), var("ep")
    flip = {k: v * kp for k, v in SP.items()}
    for k, v in SM.items():
        flip[k] = flip.get(k, ZERO) + v * km
    t1 = dense_kron(flip, I2, 2)  # site-2 term
    t2 = dense_kron(QS3, flip, 2)  # site-1 term, dressed above
    t3 = {k: v * ep for k, v in dense_kron(QS3, QS3, 2).items()}
    expect = {}
    for t in (t1, t2, t3):
        for k, v in t.items():
            expect[k] = expect.get(k, ZERO) + v
    psi_w0 = gen("e1").scale(kp) \
        + (gen("f1") * gen("t1")).scale(km * qpow(-1)) + gen("t1").scale(ep)
    got = chain_operator(psi_w0, 2).matrix
    assert got.entries.keys() == {k for k, v in expect.items() if not v.is_zero}
    for k, v in got.entries.items():
        assert v == expect[k]
    # and the packaged direct construction agrees
    params = symbolic_params()
    assert got == fundamental_chain("W0", 2, params).matrix


def test_chain_psi_i_e_matches_direct():
    # psi_i(e) = e0: sum over sites of sigma_- with q^{-sigma3} dressing above
    got = chain_operator(gen("e0"), 3).matrix
    expect = {}
    terms = [
        dense_kron(dense_kron(SM, I2, 2), I2, 2),
        dense_kron(dense_kron(QINV_SIGMA3.entries, SM, 2), I2, 2),
        dense_kron(dense_kron(QINV_SIGMA3.entries, QINV_SIGMA3.entries, 2), SM, 2),
    ]
    for t in terms:
        for k, v in t.items():
            expect[k] = expect.get(k, ZERO) + v
    assert got.entries == {k: v for k, v in expect.items() if not v.is_zero}


def test_chain_against_literal_coproduct_path():
    # the per-letter product form equals coproduct-then-evaluate-then-kron
    x = (gen("e1") * gen("f0")).scale(rat(2)) + gen("t0").scale(var("kp")) \
        + qcomm(gen("f1"), gen("e0"), 1)
    N = 3
    lit = SparseMatrix.zero(2**N)
    for key, c in coproduct(x, N).terms.items():
        m = None
        for word in key:
            f = eval_rep(FreeElement.word("quantum", word), ONE)
            m = f if m is None else m.kron(f)
        lit = lit + m.scale(c)
    assert chain_operator(x, N).matrix == lit


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3))
def test_chain_multiplicative(n):
    a = gen("e1") + gen("t0").scale(rat(2))
    b = gen("f1") * gen("t1") - unit().scale(rat(3))
    lhs = chain_operator(a * b, n).matrix
    rhs = chain_operator(a, n).matrix * chain_operator(b, n).matrix
    assert lhs == rhs


def test_hamiltonian_n2_dense_oracle():
    # independent 4x4 assembly from the Pauli definitions
    params = symbolic_params()
    kp, km, ep, em = params.kp, params.km, params.ep, params.em
    d = anisotropy()
    bulk = {}
    hop1 = dense_kron(SP, SM, 2)
    hop2 = dense_kron(SM, SP, 2)
    zz = dense_kron(S3, S3, 2)
    for k in set(hop1) | set(hop2) | set(zz):
        bulk[k] = (hop1.get(k, ZERO) + hop2.get(k, ZERO)) * rat(2) \
            + zz.get(k, ZERO) * d
    esum = ep + em
    c3 = -(qpow(1) - qpow(-1)) * (ep - em) / (esum * rat(4))
    hb2 = {}
    for k, v in S3.items():
        hb2[k] = v * c3
    for k, v in SP.items():
        hb2[k] = hb2.get(k, ZERO) - v * kp / esum
    for k, v in SM.items():
        hb2[k] = hb2.get(k, ZERO) - v * km / esum
    hb = dense_kron(I2, hb2, 2)
    expect = {}
    for k in set(bulk) | set(hb):
        val = bulk.get(k, ZERO) * rat(-1, 2) + hb.get(k, ZERO)
        if not val.is_zero:
            expect[k] = val
    got = hamiltonian(2, params).matrix
    assert got.entries.keys() == expect.keys()
    for k, v in got.entries.items():
        assert v == expect[k]


def test_hamiltonian_boundary_cases():
    # diagonal: no off-diagonal boundary entries
    params = BoundaryParams(ZERO, ZERO, var("ep"), var("em"))
    hb = boundary_field(params)
    assert set(hb.entries) == {(0, 0), (1, 1)}
    # special: h_B = -(q - q^-1)/4 sigma_3
    params = BoundaryParams(ZERO, ZERO, ONE, ZERO)
    hb = boundary_field(params)
    c = (qpow(1) - qpow(-1)) * rat(-1, 4)
    assert hb == SIGMA_3.scale(c)


def test_boundary_singular():
    with pytest.raises(BoundarySingular):
        BoundaryParams(ONE, ONE, var("ep"), -var("ep"))


def test_commutator_basics():
    params = symbolic_params()
    H = hamiltonian(3, params)
    assert commutator(H, H).matrix.is_zero
    with pytest.raises(DimMismatch):
        commutator(H, hamiltonian(2, params))


def test_boundary_bracket_closed_form():
    params = symbolic_params()
    for n in (2, 3, 4):
        w0 = fundamental_chain("W0", n, params)
        hb = ChainOperator(embed_site(boundary_field(params), 1, n), n)
        assert commutator(hb, w0).matrix == boundary_bracket_closed_form(n, params)


def test_total_residual_closed_forms():
    params = symbolic_params()
    for n in (2, 3):
        H = hamiltonian(n, params)
        for kind in ("W0", "W1"):
            g = fundamental_chain(kind, n, params)
            assert commutator(H, g).matrix == \
                total_residual_closed_form(kind, n, params)


def test_diagonal_commutes_exactly():
    params = BoundaryParams(ZERO, ZERO, var("ep"), var("em"))
    for n in (2, 3):
        H = hamiltonian(n, params)
        k0 = ChainOperator(chain_operator(gen("t1"), n).matrix.scale(var("ep")), n)
        assert commutator(H, k0).matrix.is_zero


def test_support_basics():
    assert support(ChainOperator(SparseMatrix.identity(8), 3)) == ()
    params = symbolic_params()
    hb = ChainOperator(embed_site(boundary_field(params), 1, 3), 3)
    assert support(hb) == (1,)
    # residual of the generic symmetry: exactly the far site
    H = hamiltonian(4, params)
    w0 = fundamental_chain("W0", 4, params)
    r = commutator(H, w0)
    assert support(r) == (4,)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4))
def test_support_constructed_insertions(i, j):
    n = 4
    m = embed_site(SIGMA_PLUS, i, n) * embed_site(SIGMA_MINUS, j, n)
    op = ChainOperator(m, n)
    assert support(op) == tuple(sorted({i, j}))


def test_local_gamma_identity():
    params = symbolic_params()
    for n in (3, 4):
        results = local_gamma_identity(n, params)
        assert set(results) == set(range(1, n))
        assert all(results.values())


def test_gamma_simplification_lemmas():
    d = anisotropy()
    qm = qpow(1) - qpow(-1)
    left = (ID2.scale(d) - Q_SIGMA3) * SIGMA_3
    assert left == ID2.scale(qm * rat(-1, 2))
    right = (Q_SIGMA3.scale(d) - ID2) * SIGMA_3
    assert right == Q_SIGMA3.scale(qm * rat(1, 2))


def test_spin_reversal():
    for n in (2, 3):
        params = BoundaryParams(var("kp"), var("km"), var("ep"), var("em"))
        swapped = BoundaryParams(var("km"), var("kp"), var("em"), var("ep"))
        H = hamiltonian(n, params)
        assert spin_reversal_conjugate(H).matrix == hamiltonian(n, swapped).matrix
        assert spin_reversal_conjugate(spin_reversal_conjugate(H)).matrix == H.matrix


def test_spin_reversal_diagonal_special_case():
    params = BoundaryParams(ZERO, ZERO, var("ep"), var("em"))
    swapped = BoundaryParams(ZERO, ZERO, var("em"), var("ep"))
    H = hamiltonian(3, params)
    assert spin_reversal_conjugate(H).matrix == hamiltonian(3, swapped).matrix


def test_matrix_coords_roundtrip():
    params = symbolic_params()
    H = hamiltonian(2, params)
    doc = matrix_to_coords(H)
    back = matrix_from_coords(doc)
    assert back.matrix == H.matrix and back.n_sites == 2
